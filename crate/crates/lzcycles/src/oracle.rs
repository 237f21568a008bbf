//! Exhaustive reference solvers for small inputs.
//!
//! Every cycle sequence of an interval is the slot-wise restriction of the
//! boundary of some set of (p+1)-simplices of `K_(b-1, d+1)`. The restriction
//! is linear over Z2, so enumerating its image (through a basis) and keeping
//! the lightest valid element gives the optimum.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{Chain, SimplexId, SimplexSet};
use crate::exec::Exec;
use crate::mincut::{CutResult, FlowGraph, MinCutError};
use crate::optcycles::{sequence_with_cycles, verify_cycle_sequence, CycleSequence, Problem};
use crate::z2::BoundarySpace;
use crate::zigzag::LevelsetInterval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} free items exceed the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    MinCut(#[from] MinCutError),
}

/// Exhaustive minimum cut over all assignments of the non-terminal vertices,
/// visited in Gray-code order. Among minimum cuts the first one visited wins.
pub fn brute_min_cut(g: &FlowGraph, bound: usize) -> Result<CutResult, OracleError> {
    let side = g.terminal_sides()?;
    let n = g.num_vertices();
    let free: Vec<usize> = (0..n).filter(|&v| side[v].is_none()).collect();
    if free.len() > bound.min(40) {
        return Err(OracleError::TooLarge(free.len(), bound));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v, _)) in g.edges().iter().enumerate() {
        if u != v {
            incident[u].push(e);
            incident[v].push(e);
        }
    }
    let mut assign: Vec<bool> = side.iter().map(|s| s.unwrap_or(false)).collect();
    let mut w = g.cut_of(&assign).0;
    let mut best = (w, 0u64);
    for t in 1u64..(1u64 << free.len()) {
        let v = free[t.trailing_zeros() as usize];
        for &e in &incident[v] {
            let (a, b, x) = g.edges()[e];
            if assign[a] != assign[b] {
                w = w - x;
            } else {
                w += x;
            }
        }
        assign[v] = !assign[v];
        if w < best.0 {
            best = (w, t ^ (t >> 1));
        }
    }
    let mut source_side: Vec<bool> = side.iter().map(|s| s.unwrap_or(false)).collect();
    for (j, &v) in free.iter().enumerate() {
        source_side[v] = best.1 >> j & 1 == 1;
    }
    let (weight, crossing) = g.cut_of(&source_side);
    Ok(CutResult {
        source_side,
        weight,
        crossing,
        flow: weight,
    })
}

/// Number of (p+1)-simplices in the host of the exhaustive search over `iv`.
pub fn host_size(pb: &Problem, iv: &LevelsetInterval) -> usize {
    host_tops(pb, iv).len()
}

/// Dimension of the space the exhaustive search over `iv` enumerates, or
/// `None` when the host has too many p-simplices to pack.
pub fn search_size(pb: &Problem, iv: &LevelsetInterval) -> Option<usize> {
    pack(pb, iv).ok().flatten().map(|pk| pk.basis.len())
}

fn xor_basis(vs: impl IntoIterator<Item = u128>) -> Vec<u128> {
    let mut basis: Vec<u128> = Vec::new();
    for mut v in vs {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn host_tops(pb: &Problem, iv: &LevelsetInterval) -> Vec<SimplexId> {
    let ctx = &pb.ctx;
    let host = ctx.open(iv.b - 1, iv.d + 1);
    host.ids_of_dim(&ctx.cx, ctx.p + 1)
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// Bit-packed view of the search: p-simplices on the boundary of host
/// simplices, their own boundaries, and each slot's complex.
struct Packed {
    faces: Vec<SimplexId>,
    basis: Vec<u128>,
    slots: Vec<usize>,
    face_bd: Vec<u128>,
    face_w: Vec<f64>,
    slot_mask: Vec<u128>,
    must: Vec<u128>,
}

impl Packed {
    fn cycles(&self, bd: u128) -> Option<(Vec<u128>, f64)> {
        let mut out = Vec::with_capacity(self.slot_mask.len());
        let mut w = 0.0;
        for (k, &m) in self.slot_mask.iter().enumerate() {
            let z = bd & m;
            if z == 0 || z & self.must[k] != self.must[k] {
                return None;
            }
            if bits(z).fold(0u128, |a, e| a ^ self.face_bd[e]) != 0 {
                return None;
            }
            w += bits(z).map(|e| self.face_w[e]).sum::<f64>();
            out.push(z);
        }
        Some((out, w))
    }
}

fn pack(pb: &Problem, iv: &LevelsetInterval) -> Result<Option<Packed>, OracleError> {
    let ctx = &pb.ctx;
    let cx = &ctx.cx;
    let tops = host_tops(pb, iv);
    let mut faces: Vec<SimplexId> = tops
        .iter()
        .flat_map(|&t| cx.faces(t).iter().copied())
        .collect();
    faces.sort_unstable();
    faces.dedup();
    let mut lower: Vec<SimplexId> = faces
        .iter()
        .flat_map(|&e| cx.faces(e).iter().copied())
        .collect();
    lower.sort_unstable();
    lower.dedup();
    if faces.len() > 128 || lower.len() > 128 {
        return Err(OracleError::TooLarge(faces.len().max(lower.len()), 128));
    }
    let index = |list: &[SimplexId], s: SimplexId| list.binary_search(&s).unwrap();
    let mask_of = |list: &[SimplexId], ids: &[SimplexId]| {
        ids.iter().fold(0u128, |m, &s| m | 1u128 << index(list, s))
    };
    let kb = pb.prefix(iv.beta);
    let kd = pb.prefix(iv.delta);
    let slots: Vec<usize> = iv.slots().collect();
    let slot_mask: Vec<u128> = slots
        .iter()
        .map(|&i| {
            let set = if iv.kind.closed_birth() && i + 1 == iv.b {
                &kb
            } else if iv.kind.closed_death() && i == iv.d {
                &kd
            } else {
                &ctx.open(i, i + 1)
            };
            faces
                .iter()
                .enumerate()
                .filter(|(_, &e)| set.contains(e))
                .fold(0u128, |m, (k, _)| m | 1 << k)
        })
        .collect();
    let mut must = vec![0u128; slots.len()];
    if iv.kind.closed_birth() {
        match faces.binary_search(&iv.creator) {
            Ok(k) => must[0] |= 1 << k,
            Err(_) => return Ok(None),
        }
    }
    if let (true, Some(t)) = (iv.kind.closed_death(), iv.destroyer) {
        match faces.binary_search(&t) {
            Ok(k) => *must.last_mut().unwrap() |= 1 << k,
            Err(_) => return Ok(None),
        }
    }
    let relevant = slot_mask.iter().fold(0u128, |m, s| m | s);
    let basis = xor_basis(
        tops.iter()
            .map(|&t| mask_of(&faces, cx.faces(t)) & relevant),
    );
    Ok(Some(Packed {
        basis,
        slots,
        face_bd: faces
            .iter()
            .map(|&e| mask_of(&lower, cx.faces(e)))
            .collect(),
        face_w: faces.iter().map(|&e| cx.weight(e)).collect(),
        slot_mask,
        must,
        faces,
    }))
}

/// Minimum-weight valid cycle sequence for `iv` by exhaustive search, or
/// `None` when no valid sequence exists. Fails when the search space has
/// dimension above `bound`.
pub fn brute_optimal_sequence(
    pb: &Problem,
    iv: &LevelsetInterval,
    bound: usize,
    exec: Exec,
) -> Result<Option<CycleSequence>, OracleError> {
    let Some(packed) = pack(pb, iv)? else {
        return Ok(None);
    };
    let n = packed.basis.len();
    if n > bound.min(40) {
        return Err(OracleError::TooLarge(n, bound));
    }
    let (cx, p) = (&pb.ctx.cx, pb.ctx.p);
    let high = n.min(6);
    let low = n - high;
    let to_seq = |zs: &[u128]| {
        let cycles = packed
            .slots
            .iter()
            .zip(zs)
            .map(|(&i, &z)| (i, Chain::from_ids(p, bits(z).map(|k| packed.faces[k]))))
            .collect();
        sequence_with_cycles(cx, *iv, cycles)
    };
    let chunk = |c: usize| -> Option<(f64, Vec<u128>)> {
        let mut bd = (0..high)
            .filter(|j| c >> j & 1 == 1)
            .fold(0u128, |m, j| m ^ packed.basis[low + j]);
        let mut best: Option<(f64, Vec<u128>)> = None;
        let mut seen: HashMap<Vec<u128>, bool> = HashMap::new();
        for t in 0u64..(1u64 << low) {
            if t > 0 {
                bd ^= packed.basis[t.trailing_zeros() as usize];
            }
            let Some((zs, w)) = packed.cycles(bd) else {
                continue;
            };
            if best.as_ref().is_some_and(|(bw, _)| w >= *bw) {
                continue;
            }
            let ok = *seen
                .entry(zs.clone())
                .or_insert_with(|| verify_cycle_sequence(pb, &to_seq(&zs)).is_ok());
            if ok {
                best = Some((w, zs));
            }
        }
        best
    };
    let found = exec.map_range(1 << high, chunk);
    let best = found
        .into_iter()
        .flatten()
        .min_by(|a, b| a.0.total_cmp(&b.0));
    Ok(best.map(|(_, zs)| to_seq(&zs)))
}

/// Chains `A` whose boundaries connect the cycles of `seq`: the boundary of
/// each link is the sum of two consecutive cycles, and an open end links the
/// end cycle to the boundary of the creator or destroyer. `None` when some
/// link does not exist.
pub fn reconstruct_witness(pb: &Problem, seq: &CycleSequence) -> Option<Vec<Chain>> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let iv = seq.interval;
    let link =
        |set: &SimplexSet, z: &Chain| BoundarySpace::new(cx, set, p).witness(z).ok().flatten();
    let mut out = Vec::new();
    let (first, last) = (&seq.cycles.first()?.1, &seq.cycles.last()?.1);
    if !iv.kind.closed_birth() {
        let dz = Chain::from_ids(p, cx.faces(iv.creator).iter().copied());
        out.push(link(&pb.prefix(iv.beta), &first.add(&dz))?);
    }
    for w in seq.cycles.windows(2) {
        out.push(link(&ctx.open(w[0].0, w[0].0 + 2), &w[0].1.add(&w[1].1))?);
    }
    if !iv.kind.closed_death() {
        let t = iv.destroyer?;
        let dz = Chain::from_ids(p, cx.faces(t).iter().copied());
        out.push(link(&pb.prefix(iv.delta), &last.add(&dz))?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levelset::{LevelsetContext, PlFunction};
    use crate::mincut::{min_st_cut, ExtWeight};

    #[test]
    fn brute_cut_matches_dinic_on_a_square() {
        let mut g = FlowGraph::new(4);
        for (u, v, w) in [
            (0, 1, 3.0),
            (1, 3, 1.0),
            (0, 2, 2.0),
            (2, 3, 2.5),
            (1, 2, 0.5),
        ] {
            g.add_edge(u, v, ExtWeight::finite(w));
        }
        g.set_terminals(vec![0], vec![3]);
        assert_eq!(
            brute_min_cut(&g, 20).unwrap().weight,
            min_st_cut(&g).unwrap().weight
        );
        assert!(matches!(
            brute_min_cut(&g, 1),
            Err(OracleError::TooLarge(2, 1))
        ));
    }

    #[test]
    fn sphere_oracle_agrees() {
        let cx = crate::complex::tests::octahedron();
        let f = PlFunction::from_labels(
            &cx,
            &[(4, 0.0), (0, 1.0), (2, 1.1), (1, 1.2), (3, 1.3), (5, 2.0)],
        )
        .unwrap();
        let pb = Problem::new(LevelsetContext::new(cx, f, 1)).unwrap();
        let iv = pb.intervals()[0];
        let best = brute_optimal_sequence(&pb, &iv, 24, Exec::Sequential)
            .unwrap()
            .unwrap();
        assert_eq!(best.total_weight, pb.solve(&iv).unwrap().total_weight);
        let links = reconstruct_witness(&pb, &best).unwrap();
        assert_eq!(links.len(), 2);
    }
}

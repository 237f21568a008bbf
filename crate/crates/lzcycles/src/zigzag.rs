//! Zigzag persistence with representative cycles over simplex-wise
//! filtrations, and the translation of simplex-wise bars into levelset bars.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{sym_diff, Chain, SimplexId, SimplexSet, SimplicialComplex};
use crate::levelset::{IntervalKind, LevelsetContext};
use crate::z2::BoundarySpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("step {0} adds a simplex that is present or whose faces are missing")]
    BadAddition(usize),
    #[error("step {0} deletes a simplex that is absent or still has cofaces")]
    BadDeletion(usize),
    #[error("internal zigzag invariant failed at step {0}: {1}")]
    Internal(usize, &'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub simplex: SimplexId,
    pub add: bool,
}

impl Step {
    pub fn add(simplex: SimplexId) -> Self {
        Step { simplex, add: true }
    }

    pub fn delete(simplex: SimplexId) -> Self {
        Step {
            simplex,
            add: false,
        }
    }
}

/// Tags for filtration positions that equal named range complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Marker {
    /// The regular complex `(i, i+1)`.
    Regular(usize),
    /// The critical complex `(i-1, i+1)`.
    Critical(usize),
    /// `(i-1, i]`.
    UpperClosed(usize),
    /// `[i, i+1)`.
    LowerClosed(usize),
}

/// A sequence of single-simplex additions and deletions starting from the
/// empty complex. Position `j` denotes the complex after `j` steps.
#[derive(Clone, Debug)]
pub struct SimplexwiseFiltration {
    ambient: usize,
    p: usize,
    steps: Vec<Step>,
    markers: Vec<(usize, Marker)>,
    alive: Vec<Vec<(usize, usize)>>,
}

impl SimplexwiseFiltration {
    pub fn new(ambient: usize, p: usize, steps: Vec<Step>, markers: Vec<(usize, Marker)>) -> Self {
        let mut alive: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ambient];
        let mut open: HashMap<SimplexId, usize> = HashMap::new();
        for (i, st) in steps.iter().enumerate() {
            if st.add {
                open.insert(st.simplex, i + 1);
            } else if let Some(from) = open.remove(&st.simplex) {
                alive[st.simplex].push((from, i + 1));
            }
        }
        for (s, from) in open {
            alive[s].push((from, usize::MAX));
        }
        for a in alive.iter_mut() {
            a.sort_unstable();
        }
        SimplexwiseFiltration {
            ambient,
            p,
            steps,
            markers,
            alive,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of steps; the last complex is at position `len()`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn markers(&self) -> &[(usize, Marker)] {
        &self.markers
    }

    pub fn marker_position(&self, m: Marker) -> Option<usize> {
        self.markers.iter().find(|&&(_, t)| t == m).map(|&(p, _)| p)
    }

    pub fn contains_at(&self, pos: usize, s: SimplexId) -> bool {
        self.alive[s].iter().any(|&(a, b)| a <= pos && pos < b)
    }

    /// The complex at position `pos`.
    pub fn complex_at(&self, pos: usize) -> SimplexSet {
        SimplexSet::from_predicate(self.ambient, |s| self.contains_at(pos, s))
    }
}

/// One bar `[beta, delta]` of a simplex-wise filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexwiseInterval {
    pub beta: usize,
    pub delta: usize,
    /// Simplex of step `beta - 1`.
    pub creator: Option<SimplexId>,
    /// Simplex of step `delta`; `None` when the bar reaches the end.
    pub destroyer: Option<SimplexId>,
}

/// Representative cycles of one bar, piecewise constant in the index:
/// `segments[j] = (k, z)` means the cycle is `z` from index `k` until the next
/// segment starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSequence {
    pub segments: Vec<(usize, Chain)>,
}

impl RepresentativeSequence {
    /// Representative at index `k` (empty outside the bar's support).
    pub fn at(&self, k: usize) -> Chain {
        let j = self.segments.partition_point(|(start, _)| *start <= k);
        if j == 0 {
            Chain::empty(self.segments.first().map_or(0, |s| s.1.dim()))
        } else {
            self.segments[j - 1].1.clone()
        }
    }
}

/// Output of the zigzag engine: bars sorted by `(beta, delta)` with their
/// representatives in the same order.
#[derive(Clone, Debug)]
pub struct ZigzagBarcode {
    pub intervals: Vec<SimplexwiseInterval>,
    pub reps: Vec<RepresentativeSequence>,
}

struct Bar {
    birth: usize,
    forward_birth: bool,
    death: Option<usize>,
    segs: Vec<(usize, Chain)>,
}

impl Bar {
    fn current(&self) -> &Chain {
        &self.segs.last().unwrap().1
    }

    fn at(&self, k: usize) -> Option<&Chain> {
        if k < self.birth {
            return None;
        }
        let j = self.segs.partition_point(|(s, _)| *s <= k);
        Some(&self.segs[j - 1].1)
    }
}

/// Sum of the piecewise-constant sequences `bars` over `[from, to]`.
fn sum_segments(bars: &[&Bar], from: usize, to: usize, p: usize) -> Vec<(usize, Chain)> {
    let mut starts: Vec<usize> = vec![from];
    for b in bars {
        for &(s, _) in &b.segs {
            if s > from && s <= to {
                starts.push(s);
            }
        }
        if b.birth > from && b.birth <= to {
            starts.push(b.birth);
        }
    }
    starts.sort_unstable();
    starts.dedup();
    let mut out: Vec<(usize, Chain)> = Vec::new();
    for k in starts {
        let mut z = Chain::empty(p);
        for b in bars {
            if let Some(c) = b.at(k) {
                z.add_assign(c);
            }
        }
        if out.last().is_some_and(|(_, prev)| *prev == z) {
            continue;
        }
        out.push((k, z));
    }
    out
}

/// Column reduction maintained as a stack so the most recent column can be
/// removed. Columns are boundaries of simplices of one dimension.
#[derive(Default)]
struct StackReduction {
    entries: Vec<(SimplexId, Vec<usize>, Vec<SimplexId>)>,
    pivot: HashMap<usize, usize>,
}

impl StackReduction {
    fn reduce(&self, mut v: Vec<usize>) -> (Vec<usize>, Vec<SimplexId>) {
        let mut used = Vec::new();
        while let Some(&low) = v.last() {
            match self.pivot.get(&low) {
                Some(&e) => {
                    v = sym_diff(&v, &self.entries[e].1);
                    used = sym_diff(&used, &self.entries[e].2);
                }
                None => break,
            }
        }
        (v, used)
    }

    /// Pushes simplex `s`; returns true when its reduced column is nonzero,
    /// and the cycle it closes otherwise.
    fn push(&mut self, cx: &SimplicialComplex, s: SimplexId) -> (bool, Vec<SimplexId>) {
        let mut col = cx.faces(s).to_vec();
        col.sort_unstable();
        let (res, used) = self.reduce(col);
        let used = sym_diff(&used, &[s]);
        let nonzero = !res.is_empty();
        if let Some(&low) = res.last() {
            self.pivot.insert(low, self.entries.len());
        }
        self.entries.push((s, res, used.clone()));
        (nonzero, used)
    }

    /// Pops the top; returns whether its reduced column was nonzero.
    fn pop(&mut self, s: SimplexId) -> Option<bool> {
        let (top, res, _) = self.entries.pop()?;
        if top != s {
            return None;
        }
        if let Some(&low) = res.last() {
            self.pivot.remove(&low);
        }
        Some(!res.is_empty())
    }

    fn clear(&mut self) {
        self.entries.clear();
        self.pivot.clear();
    }
}

/// Runs the zigzag persistence algorithm in dimension `filt.p()`, keeping a
/// representative sequence for every bar.
pub fn zigzag_barcode(
    cx: &SimplicialComplex,
    filt: &SimplexwiseFiltration,
) -> Result<ZigzagBarcode, ZigzagError> {
    let p = filt.p();
    let steps = filt.steps();
    let mut present = SimplexSet::new(cx.len());
    let mut red_p = StackReduction::default();
    let mut red_q = StackReduction::default();
    let mut bars: Vec<Bar> = Vec::new();
    let mut live: Vec<usize> = Vec::new();

    for (i, st) in steps.iter().enumerate() {
        let s = st.simplex;
        let d = cx.dim_of(s);

        if st.add {
            if present.contains(s) || cx.faces(s).iter().any(|&f| !present.contains(f)) {
                return Err(ZigzagError::BadAddition(i));
            }
        } else if !present.contains(s) || cx.cofaces(s).iter().any(|&c| present.contains(c)) {
            return Err(ZigzagError::BadDeletion(i));
        }

        // A deletion run follows additions: rebuild the reductions so that the
        // run removes simplices from the top of each stack.
        if !st.add && (i == 0 || steps[i - 1].add) {
            let run: Vec<SimplexId> = steps[i..]
                .iter()
                .take_while(|t| !t.add)
                .map(|t| t.simplex)
                .collect();
            let doomed = SimplexSet::from_ids(cx.len(), run.iter().copied());
            red_p.clear();
            red_q.clear();
            let order = present
                .iter()
                .filter(|&t| !doomed.contains(t))
                .chain(run.iter().rev().copied());
            for t in order {
                let dt = cx.dim_of(t);
                if dt == p {
                    red_p.push(cx, t);
                } else if dt == p + 1 {
                    red_q.push(cx, t);
                }
            }
        }

        if st.add {
            present.insert(s);
        } else {
            present.remove(s);
        }

        if d == p && st.add {
            let (nonzero, cycle) = red_p.push(cx, s);
            if !nonzero {
                bars.push(Bar {
                    birth: i + 1,
                    forward_birth: true,
                    death: None,
                    segs: vec![(i + 1, Chain::from_sorted(p, cycle))],
                });
                live.push(bars.len() - 1);
            }
        } else if d == p + 1 && st.add {
            let mut col = cx.faces(s).to_vec();
            col.sort_unstable();
            let (res, _) = red_q.reduce(col.clone());
            if !res.is_empty() {
                let combo = express_in_reps(&red_q, &bars, &live, res).ok_or(
                    ZigzagError::Internal(i, "boundary outside the span of representatives"),
                )?;
                let mut group: Vec<usize> = combo;
                group.sort_by_key(|&a| bars[a].birth);
                let lambda = if group.iter().all(|&a| !bars[a].forward_birth) {
                    group[0]
                } else {
                    *group
                        .iter()
                        .rev()
                        .find(|&&a| bars[a].forward_birth)
                        .unwrap()
                };
                let from = bars[lambda].birth;
                let parts: Vec<&Bar> = group.iter().map(|&a| &bars[a]).collect();
                let segs = sum_segments(&parts, from, i, p);
                bars[lambda].segs = segs;
                bars[lambda].death = Some(i);
                live.retain(|&a| a != lambda);
            }
            red_q.push(cx, s);
        } else if d == p + 1 {
            let nonzero = red_q
                .pop(s)
                .ok_or(ZigzagError::Internal(i, "deletion not on top of stack"))?;
            if nonzero {
                let mut b = cx.faces(s).to_vec();
                b.sort_unstable();
                bars.push(Bar {
                    birth: i + 1,
                    forward_birth: false,
                    death: None,
                    segs: vec![(i + 1, Chain::from_sorted(p, b))],
                });
                live.push(bars.len() - 1);
            }
        } else if d == p {
            let nonzero = red_p
                .pop(s)
                .ok_or(ZigzagError::Internal(i, "deletion not on top of stack"))?;
            if !nonzero {
                let mut group: Vec<usize> = live
                    .iter()
                    .copied()
                    .filter(|&a| bars[a].current().contains(s))
                    .collect();
                if group.is_empty() {
                    return Err(ZigzagError::Internal(
                        i,
                        "no representative contains the deleted simplex",
                    ));
                }
                group.sort_by_key(|&a| bars[a].birth);
                let lambda = if group.iter().all(|&a| bars[a].forward_birth) {
                    group[0]
                } else {
                    *group
                        .iter()
                        .rev()
                        .find(|&&a| !bars[a].forward_birth)
                        .unwrap()
                };
                bars[lambda].death = Some(i);
                live.retain(|&a| a != lambda);
                for &a in &group {
                    if a == lambda {
                        continue;
                    }
                    let from = bars[a].birth;
                    let segs = {
                        let parts = [&bars[a], &bars[lambda]];
                        sum_segments(&parts, from, i, p)
                    };
                    bars[a].segs = segs;
                }
            }
        }
    }

    let end = steps.len();
    let mut out: Vec<(SimplexwiseInterval, RepresentativeSequence)> = bars
        .into_iter()
        .map(|b| {
            let delta = b.death.unwrap_or(end);
            let iv = SimplexwiseInterval {
                beta: b.birth,
                delta,
                creator: Some(steps[b.birth - 1].simplex),
                destroyer: b.death.map(|d| steps[d].simplex),
            };
            (iv, RepresentativeSequence { segments: b.segs })
        })
        .collect();
    out.sort_by_key(|a| a.0);
    let (intervals, reps) = out.into_iter().unzip();
    Ok(ZigzagBarcode { intervals, reps })
}

/// Finds live bars whose current representatives sum to `target` modulo the
/// boundaries held in `red_q`. `target` is already reduced by `red_q`.
fn express_in_reps(
    red_q: &StackReduction,
    bars: &[Bar],
    live: &[usize],
    target: Vec<usize>,
) -> Option<Vec<usize>> {
    let mut cols: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut pivot: HashMap<usize, usize> = HashMap::new();
    let reduce = |mut v: Vec<usize>,
                  mut tag: Vec<usize>,
                  cols: &Vec<(Vec<usize>, Vec<usize>)>,
                  pivot: &HashMap<usize, usize>| {
        while let Some(&low) = v.last() {
            if let Some(&e) = red_q.pivot.get(&low) {
                v = sym_diff(&v, &red_q.entries[e].1);
            } else if let Some(&c) = pivot.get(&low) {
                v = sym_diff(&v, &cols[c].0);
                tag = sym_diff(&tag, &cols[c].1);
            } else {
                break;
            }
        }
        (v, tag)
    };
    for &a in live {
        let (v, tag) = reduce(bars[a].current().ids().to_vec(), vec![a], &cols, &pivot);
        if let Some(&low) = v.last() {
            pivot.insert(low, cols.len());
            cols.push((v, tag));
        }
    }
    let (v, tag) = reduce(target, Vec::new(), &cols, &pivot);
    if v.is_empty() && !tag.is_empty() {
        Some(tag)
    } else {
        None
    }
}

/// A bar of the levelset barcode together with the simplex-wise bar that
/// produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelsetInterval {
    pub kind: IntervalKind,
    pub b: usize,
    pub d: usize,
    pub beta: usize,
    pub delta: usize,
    pub creator: SimplexId,
    pub destroyer: Option<SimplexId>,
}

impl LevelsetInterval {
    /// Number of cycles in a persistent-cycle sequence for this bar.
    pub fn cycle_count(&self) -> usize {
        match self.kind {
            IntervalKind::OpenOpen => self.d - self.b,
            IntervalKind::ClosedOpen | IntervalKind::OpenClosed => self.d - self.b + 1,
            IntervalKind::ClosedClosed => self.d - self.b + 2,
        }
    }

    /// Slot indices of the cycles, in order.
    pub fn slots(&self) -> std::ops::RangeInclusive<usize> {
        let first = if self.kind.closed_birth() {
            self.b - 1
        } else {
            self.b
        };
        let last = if self.kind.closed_death() {
            self.d
        } else {
            self.d - 1
        };
        first..=last
    }
}

/// Splits simplex-wise bars into levelset bars and trivial ones.
pub fn map_intervals(
    bars: &[SimplexwiseInterval],
    filt: &SimplexwiseFiltration,
) -> (Vec<(usize, LevelsetInterval)>, Vec<usize>) {
    let marks: Vec<(usize, Marker)> = filt
        .markers()
        .iter()
        .copied()
        .filter(|(_, m)| matches!(m, Marker::Regular(_) | Marker::Critical(_)))
        .collect();
    let mut out = Vec::new();
    let mut trivial = Vec::new();
    for (idx, bar) in bars.iter().enumerate() {
        let inside: Vec<Marker> = marks
            .iter()
            .filter(|(pos, _)| *pos >= bar.beta && *pos <= bar.delta)
            .map(|&(_, m)| m)
            .collect();
        let (Some(&first), Some(&last)) = (inside.first(), inside.last()) else {
            trivial.push(idx);
            continue;
        };
        let (closed_b, b) = match first {
            Marker::Critical(i) => (true, i),
            Marker::Regular(i) => (false, i),
            _ => unreachable!(),
        };
        let (closed_d, d) = match last {
            Marker::Critical(i) => (true, i),
            Marker::Regular(i) => (false, i + 1),
            _ => unreachable!(),
        };
        let kind = match (closed_b, closed_d) {
            (true, false) => IntervalKind::ClosedOpen,
            (false, true) => IntervalKind::OpenClosed,
            (true, true) => IntervalKind::ClosedClosed,
            (false, false) => IntervalKind::OpenOpen,
        };
        out.push((
            idx,
            LevelsetInterval {
                kind,
                b,
                d,
                beta: bar.beta,
                delta: bar.delta,
                creator: bar.creator.expect("bars start after the empty complex"),
                destroyer: bar.destroyer,
            },
        ));
    }
    (out, trivial)
}

/// A failed representative-cycle condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepViolation {
    pub bar: usize,
    pub index: usize,
    pub condition: &'static str,
}

/// Checks birth, death, consecutive-class and non-bounding conditions for
/// every bar's representatives.
pub fn validate_representatives(
    cx: &SimplicialComplex,
    filt: &SimplexwiseFiltration,
    zz: &ZigzagBarcode,
) -> Result<(), RepViolation> {
    let p = filt.p();
    let steps = filt.steps();
    let end = steps.len();
    let mut x = SimplexSet::new(cx.len());
    for k in 0..=end {
        if k > 0 {
            let st = steps[k - 1];
            if st.add {
                x.insert(st.simplex);
            } else {
                x.remove(st.simplex);
            }
        }
        let alive: Vec<usize> = (0..zz.intervals.len())
            .filter(|&a| zz.intervals[a].beta <= k && k <= zz.intervals[a].delta)
            .collect();
        if alive.is_empty() {
            continue;
        }
        let bs = BoundarySpace::new(cx, &x, p);
        let bounds = |z: &Chain| bs.is_boundary(z);
        for a in alive {
            let iv = zz.intervals[a];
            let fail = |condition| RepViolation {
                bar: a,
                index: k,
                condition,
            };
            let z = zz.reps[a].at(k);
            if !z.is_subset_of(&x) {
                return Err(fail("representative outside the complex"));
            }
            match bounds(&z) {
                Ok(false) => {}
                Ok(true) => return Err(fail("representative bounds")),
                Err(_) => return Err(fail("representative is not a cycle")),
            }
            if k > iv.beta && steps[k - 1].add {
                let prev = zz.reps[a].at(k - 1);
                if bounds(&z.add(&prev)) != Ok(true) {
                    return Err(fail("consecutive representatives not homologous"));
                }
            }
            if k < iv.delta && !steps[k].add {
                let next = zz.reps[a].at(k + 1);
                if !next.is_subset_of(&x) || bounds(&z.add(&next)) != Ok(true) {
                    return Err(fail("consecutive representatives not homologous"));
                }
            }
            if k == iv.beta && k > 0 {
                let st = steps[k - 1];
                let ok = if st.add {
                    z.contains(st.simplex)
                } else {
                    let b = Chain::from_ids(p, cx.faces(st.simplex).iter().copied());
                    bounds(&z.add(&b)) == Ok(true)
                };
                if !ok {
                    return Err(fail("birth condition"));
                }
            }
            if k == iv.delta && k < end {
                let st = steps[k];
                let ok = if st.add {
                    let b = Chain::from_ids(p, cx.faces(st.simplex).iter().copied());
                    bounds(&z.add(&b)) == Ok(true)
                } else {
                    z.contains(st.simplex)
                };
                if !ok {
                    return Err(fail("death condition"));
                }
            }
        }
    }
    Ok(())
}

/// Levelset bars in dimension `ctx.p` with the zigzag output they came from.
pub struct LevelsetBarcode {
    pub filtration: SimplexwiseFiltration,
    pub zigzag: ZigzagBarcode,
    /// Levelset bars sorted by `(b, d)`, each with its index into `zigzag`.
    pub intervals: Vec<(usize, LevelsetInterval)>,
}

pub fn levelset_barcode(ctx: &LevelsetContext) -> Result<LevelsetBarcode, ZigzagError> {
    let filtration = ctx.build_filtration();
    let zigzag = zigzag_barcode(&ctx.cx, &filtration)?;
    let (mut intervals, _) = map_intervals(&zigzag.intervals, &filtration);
    intervals.sort_by_key(|(_, iv)| (iv.b, iv.d, iv.beta));
    Ok(LevelsetBarcode {
        filtration,
        zigzag,
        intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levelset::{classical_levelset_barcode, PlFunction};

    fn octahedron_ctx() -> LevelsetContext {
        let cx = crate::complex::tests::octahedron();
        let f = PlFunction::from_labels(
            &cx,
            &[(4, 0.0), (0, 1.0), (2, 1.1), (1, 1.2), (3, 1.3), (5, 2.0)],
        )
        .unwrap();
        LevelsetContext::new(cx, f, 1)
    }

    #[test]
    fn sphere_yields_one_open_bar() {
        let ctx = octahedron_ctx();
        let lb = levelset_barcode(&ctx).unwrap();
        assert_eq!(lb.intervals.len(), 1);
        let iv = lb.intervals[0].1;
        assert_eq!((iv.kind, iv.b, iv.d), (IntervalKind::OpenOpen, 1, 2));
        assert_eq!(iv.cycle_count(), 1);
        validate_representatives(&ctx.cx, &lb.filtration, &lb.zigzag).unwrap();
    }

    #[test]
    fn agrees_with_extended_persistence() {
        let ctx = octahedron_ctx();
        for q in 0..=1 {
            let c = LevelsetContext::new(ctx.cx.clone(), ctx.f.clone(), q);
            let lb = levelset_barcode(&c).unwrap();
            let mut got: Vec<_> = lb
                .intervals
                .iter()
                .map(|(_, iv)| (iv.kind, c.crit.ranks[iv.b - 1], c.crit.ranks[iv.d - 1]))
                .collect();
            let mut want: Vec<_> = classical_levelset_barcode(&c.cx, &c.f)
                .into_iter()
                .filter(|b| b.dim == q)
                .map(|b| (b.kind, b.lo, b.hi))
                .collect();
            got.sort();
            want.sort();
            assert_eq!(got, want, "dimension {q}");
        }
    }

    #[test]
    fn rejects_invalid_steps() {
        let cx = crate::complex::tests::octahedron();
        let e = cx.id_of(&[0, 2]).unwrap();
        let filt = SimplexwiseFiltration::new(cx.len(), 1, vec![Step::add(e)], vec![]);
        assert_eq!(
            zigzag_barcode(&cx, &filt).unwrap_err(),
            ZigzagError::BadAddition(0)
        );
        let filt = SimplexwiseFiltration::new(cx.len(), 1, vec![Step::delete(0)], vec![]);
        assert_eq!(
            zigzag_barcode(&cx, &filt).unwrap_err(),
            ZigzagError::BadDeletion(0)
        );
    }

    #[test]
    fn add_then_remove_circle() {
        let cx = SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![0, 2]], &[]).unwrap();
        let mut steps: Vec<Step> = (0..cx.len()).map(Step::add).collect();
        steps.push(Step::delete(cx.id_of(&[1, 2]).unwrap()));
        let filt = SimplexwiseFiltration::new(cx.len(), 1, steps, vec![]);
        let zz = zigzag_barcode(&cx, &filt).unwrap();
        assert_eq!(zz.intervals.len(), 1);
        assert_eq!((zz.intervals[0].beta, zz.intervals[0].delta), (6, 6));
        assert_eq!(zz.reps[0].at(6).len(), 3);
        validate_representatives(&cx, &filt, &zz).unwrap();
        assert!(filt.contains_at(6, cx.id_of(&[1, 2]).unwrap()));
        assert!(!filt.contains_at(7, cx.id_of(&[1, 2]).unwrap()));
    }
}

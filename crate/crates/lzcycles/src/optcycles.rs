//! Minimum-weight levelset persistent cycles through dual-graph cuts, and a
//! checker for the defining conditions of a cycle sequence.

use std::sync::OnceLock;

use thiserror::Error;

use crate::complex::{Chain, SimplexId, SimplexSet, SimplicialComplex};
use crate::dualgraph::{
    dual_closed, dual_component_shared, dual_with_boundary, DualError, DualGraph, DualVertex,
};
use crate::exec::Exec;
use crate::levelset::{IntervalKind, LevelsetContext, LevelsetError};
use crate::mincut::{min_st_cut, ExtWeight, FlowGraph};
use crate::z2::BoundarySpace;
use crate::zigzag::{levelset_barcode, LevelsetBarcode, LevelsetInterval, ZigzagError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("complex is not a weak pseudomanifold; offending simplices {0:?}")]
    NotWeakPseudomanifold(Vec<SimplexId>),
    #[error(transparent)]
    Levelset(#[from] LevelsetError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
    #[error("assumption violated: {0}; simplices {1:?}")]
    AssumptionViolated(&'static str, Vec<SimplexId>),
}

fn violated<T>(what: &'static str, simplices: Vec<SimplexId>) -> Result<T, SolveError> {
    Err(SolveError::AssumptionViolated(what, simplices))
}

/// One cycle per slot of an interval, with their total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleSequence {
    pub interval: LevelsetInterval,
    pub cycles: Vec<(usize, Chain)>,
    pub total_weight: f64,
}

impl CycleSequence {
    pub fn cycle(&self, slot: usize) -> Option<&Chain> {
        self.cycles.iter().find(|(i, _)| *i == slot).map(|(_, z)| z)
    }

    fn from_slots(
        cx: &SimplicialComplex,
        interval: LevelsetInterval,
        cycles: Vec<(usize, Chain)>,
    ) -> Self {
        let total_weight = cycles.iter().map(|(_, z)| z.weight(cx)).sum();
        CycleSequence {
            interval,
            cycles,
            total_weight,
        }
    }
}

/// A complex with a function, its levelset barcode, and (on demand) the same
/// data for the negated function.
pub struct Problem {
    pub ctx: LevelsetContext,
    pub barcode: LevelsetBarcode,
    mirror: OnceLock<Result<Box<Problem>, SolveError>>,
}

impl Problem {
    /// Validates the input and computes the barcode.
    pub fn new(ctx: LevelsetContext) -> Result<Self, SolveError> {
        ctx.cx
            .check_weak_pseudomanifold(ctx.p)
            .map_err(SolveError::NotWeakPseudomanifold)?;
        ctx.check_compatibility()?;
        let barcode = levelset_barcode(&ctx)?;
        Ok(Problem {
            ctx,
            barcode,
            mirror: OnceLock::new(),
        })
    }

    pub fn intervals(&self) -> Vec<LevelsetInterval> {
        self.barcode.intervals.iter().map(|&(_, iv)| iv).collect()
    }

    /// Complex of the simplex-wise filtration at position `j`.
    pub fn prefix(&self, j: usize) -> SimplexSet {
        self.barcode.filtration.complex_at(j)
    }

    fn mirror(&self) -> Result<&Problem, SolveError> {
        self.mirror
            .get_or_init(|| Problem::new(self.ctx.negated()).map(Box::new))
            .as_ref()
            .map(|b| b.as_ref())
            .map_err(Clone::clone)
    }

    /// The cut problem whose optimum yields the optimal sequence.
    pub fn reduction(&self, iv: &LevelsetInterval) -> Result<Reduction, SolveError> {
        match iv.kind {
            IntervalKind::OpenOpen => open_open(self, iv),
            IntervalKind::ClosedOpen => closed_open(self, iv),
            IntervalKind::ClosedClosed => closed_closed(self, iv),
            IntervalKind::OpenClosed => {
                let g = self.mirror()?;
                let giv = g
                    .intervals()
                    .into_iter()
                    .find(|h| {
                        h.kind == IntervalKind::ClosedOpen
                            && h.creator == iv.destroyer.unwrap_or(usize::MAX)
                            && h.destroyer == Some(iv.creator)
                    })
                    .ok_or(SolveError::AssumptionViolated(
                        "no matching interval under the negated function",
                        vec![iv.creator],
                    ))?;
                let mut red = closed_open(g, &giv)?;
                red.interval = *iv;
                red.mirror_m = Some(self.ctx.m());
                Ok(red)
            }
        }
    }

    pub fn solve(&self, iv: &LevelsetInterval) -> Result<CycleSequence, SolveError> {
        self.reduction(iv)?.solve()
    }

    /// Solves every interval of the barcode, in barcode order.
    pub fn solve_all(&self, exec: Exec) -> Vec<Result<CycleSequence, SolveError>> {
        let ivs = self.intervals();
        if ivs.iter().any(|iv| iv.kind == IntervalKind::OpenClosed) {
            // build the mirror once before fanning out
            let _ = self.mirror();
        }
        exec.map(&ivs, |iv| self.solve(iv))
    }

    pub fn verify(&self, seq: &CycleSequence) -> Result<(), SequenceViolation> {
        verify_cycle_sequence(self, seq)
    }
}

pub fn solve_open_open(pb: &Problem, iv: &LevelsetInterval) -> Result<CycleSequence, SolveError> {
    expect_kind(iv, IntervalKind::OpenOpen)?;
    open_open(pb, iv)?.solve()
}

pub fn solve_closed_open(pb: &Problem, iv: &LevelsetInterval) -> Result<CycleSequence, SolveError> {
    expect_kind(iv, IntervalKind::ClosedOpen)?;
    closed_open(pb, iv)?.solve()
}

pub fn solve_closed_closed(
    pb: &Problem,
    iv: &LevelsetInterval,
) -> Result<CycleSequence, SolveError> {
    expect_kind(iv, IntervalKind::ClosedClosed)?;
    closed_closed(pb, iv)?.solve()
}

fn expect_kind(iv: &LevelsetInterval, kind: IntervalKind) -> Result<(), SolveError> {
    if iv.kind == kind {
        Ok(())
    } else {
        violated("interval has a different type", vec![iv.creator])
    }
}

enum Pull {
    Direct,
    Host {
        beta_set: SimplexSet,
        delta_set: Option<SimplexSet>,
        /// `zeta[j][i - b]`: minimum cycle of component `j` in regular slot `i`.
        zeta: Vec<Vec<Chain>>,
        dummies: Vec<usize>,
    },
}

/// A dual graph together with the alternative terminal choices whose best cut
/// gives the optimum, and the data to turn any cut back into cycles.
pub struct Reduction {
    pub interval: LevelsetInterval,
    pub graph: DualGraph,
    pub terminals: Vec<(Vec<usize>, Vec<usize>)>,
    /// The interval in the context the graph was built in.
    solved: LevelsetInterval,
    slot_of: Vec<Option<usize>>,
    weights: Vec<f64>,
    p: usize,
    pull: Pull,
    mirror_m: Option<usize>,
}

impl Reduction {
    /// The flow network for terminal choice `k`.
    pub fn network(&self, k: usize) -> FlowGraph {
        let mut g = self.graph.graph.clone();
        let (s, t) = self.terminals[k].clone();
        g.set_terminals(s, t);
        g
    }

    /// Cycle sequence read off a cut; `None` when the cut crosses an edge of
    /// infinite weight.
    pub fn sequence_from_cut(&self, source_side: &[bool]) -> Option<CycleSequence> {
        let iv = self.solved;
        let slots: Vec<usize> = iv.slots().collect();
        let first = slots[0];
        let mut z: Vec<Vec<SimplexId>> = vec![Vec::new(); slots.len()];
        for (s, _) in self.graph.pull_back(source_side) {
            let slot = match &self.pull {
                Pull::Direct => self.slot_of[s].filter(|&i| i >= iv.b && i < iv.d)?,
                Pull::Host {
                    beta_set,
                    delta_set,
                    ..
                } => {
                    if beta_set.contains(s) {
                        iv.b - 1
                    } else if delta_set.as_ref().is_some_and(|d| d.contains(s)) {
                        iv.d
                    } else {
                        return None;
                    }
                }
            };
            z[slot - first].push(s);
        }
        let mut cycles: Vec<(usize, Chain)> = slots
            .iter()
            .zip(z)
            .map(|(&i, ids)| (i, Chain::from_ids(self.p, ids)))
            .collect();
        if let Pull::Host { zeta, dummies, .. } = &self.pull {
            for (j, &phi) in dummies.iter().enumerate() {
                if !source_side[phi] {
                    continue;
                }
                for (k, c) in zeta[j].iter().enumerate() {
                    cycles[iv.b + k - first].1.add_assign(c);
                }
            }
        }
        if let Some(m) = self.mirror_m {
            cycles = cycles.into_iter().rev().map(|(i, c)| (m - i, c)).collect();
        }
        let total_weight = cycles
            .iter()
            .flat_map(|(_, c)| c.ids().iter().map(|&s| self.weights[s]))
            .sum();
        Some(CycleSequence {
            interval: self.interval,
            cycles,
            total_weight,
        })
    }

    /// Minimum cut over all terminal choices, pulled back to cycles.
    pub fn solve(&self) -> Result<CycleSequence, SolveError> {
        let mut best: Option<(ExtWeight, Vec<bool>)> = None;
        for k in 0..self.terminals.len() {
            let cut = min_st_cut(&self.network(k))
                .map_err(|_| SolveError::AssumptionViolated("empty terminal set", vec![]))?;
            if best.as_ref().is_none_or(|(w, _)| cut.weight < *w) {
                best = Some((cut.weight, cut.source_side));
            }
        }
        let Some((w, side)) = best else {
            return violated("no terminal choice", vec![]);
        };
        if w.is_infinite() {
            return violated(
                "every cut crosses an infinite edge",
                vec![self.interval.creator],
            );
        }
        self.sequence_from_cut(&side)
            .ok_or(SolveError::AssumptionViolated(
                "finite cut crosses an unexpected edge",
                vec![],
            ))
    }
}

fn slot_table(ctx: &LevelsetContext) -> Vec<Option<usize>> {
    (0..ctx.cx.len())
        .map(|s| {
            if ctx.cx.dim_of(s) == ctx.p {
                ctx.regular_index(s)
            } else {
                None
            }
        })
        .collect()
}

/// Finite weight for p-simplices of regular complexes strictly inside the
/// interval, infinite otherwise.
fn inside_weight<'a>(
    cx: &'a SimplicialComplex,
    slot_of: &'a [Option<usize>],
    b: usize,
    d: usize,
) -> impl Fn(SimplexId) -> ExtWeight + 'a {
    move |s| match slot_of[s] {
        Some(i) if i >= b && i < d => ExtWeight::finite(cx.weight(s)),
        _ => ExtWeight::INFINITE,
    }
}

fn check_dims(
    cx: &SimplicialComplex,
    iv: &LevelsetInterval,
    p: usize,
) -> Result<SimplexId, SolveError> {
    let Some(t) = iv.destroyer else {
        return violated("interval never dies", vec![iv.creator]);
    };
    let want = |closed: bool| if closed { p } else { p + 1 };
    if cx.dim_of(iv.creator) != want(iv.kind.closed_birth()) {
        return violated("creator has the wrong dimension", vec![iv.creator]);
    }
    if cx.dim_of(t) != want(iv.kind.closed_death()) {
        return violated("destroyer has the wrong dimension", vec![t]);
    }
    Ok(t)
}

fn open_open(pb: &Problem, iv: &LevelsetInterval) -> Result<Reduction, SolveError> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let t = check_dims(cx, iv, p)?;
    let tops: Vec<SimplexId> = cx.ids_of_dim(p + 1).collect();
    let comp = cx
        .q_connected_components(&tops, |_| true)
        .into_iter()
        .find(|g| g.binary_search(&iv.creator).is_ok())
        .expect("creator is a (p+1)-simplex");
    if comp.binary_search(&t).is_err() {
        return violated("destroyer outside the creator's component", vec![t]);
    }
    let slot_of = slot_table(ctx);
    let graph =
        dual_closed(cx, &comp, inside_weight(cx, &slot_of, iv.b, iv.d)).map_err(|e| match e {
            DualError::NotClosedPseudomanifold(v) => SolveError::AssumptionViolated(
                "creator's component is not a closed pseudomanifold",
                v,
            ),
            DualError::OverlappingBoundaries(s) => {
                SolveError::AssumptionViolated("overlapping boundaries", vec![s])
            }
        })?;
    let slabs: Vec<SimplexSet> = (iv.b..=iv.d).map(|i| ctx.slab(i)).collect();
    let (mut src, mut snk) = (Vec::new(), Vec::new());
    for &tau in &comp {
        if let Some(k) = slabs.iter().position(|s| s.contains(tau)) {
            let v = graph.index_of(DualVertex::Cofacet(tau)).unwrap();
            if k % 2 == 0 {
                src.push(v);
            } else {
                snk.push(v);
            }
        }
    }
    if src.is_empty() || snk.is_empty() {
        return violated("a terminal slab is empty", vec![iv.creator, t]);
    }
    Ok(Reduction {
        interval: *iv,
        graph,
        terminals: vec![(src, snk)],
        solved: *iv,
        slot_of,
        weights: (0..cx.len()).map(|s| cx.weight(s)).collect(),
        p,
        pull: Pull::Direct,
        mirror_m: None,
    })
}

/// `base` plus the (p+1)-simplices of the complex whose p-faces all lie in
/// `base`.
pub fn fill_cofacets(cx: &SimplicialComplex, p: usize, base: &SimplexSet) -> SimplexSet {
    let mut out = base.clone();
    for t in cx.ids_of_dim(p + 1) {
        if cx.faces(t).iter().all(|&f| base.contains(f)) {
            out.insert(t);
        }
    }
    out
}

/// A (p+1)-connected component outside the host, with its boundary.
#[derive(Clone, Debug)]
pub struct Component {
    pub simplices: Vec<SimplexId>,
    pub boundary: Chain,
}

/// Components of the (p+1)-simplices of `region` outside the filled `host`,
/// connected through p-faces in `region` but not in `host`, keeping those
/// whose boundary lies in `host`.
fn bounded_components(
    cx: &SimplicialComplex,
    p: usize,
    region: &SimplexSet,
    host: &SimplexSet,
) -> Vec<Component> {
    let filled = fill_cofacets(cx, p, host);
    let cand: Vec<SimplexId> = region
        .ids_of_dim(cx, p + 1)
        .into_iter()
        .filter(|&t| !filled.contains(t))
        .collect();
    cx.q_connected_components(&cand, |f| region.contains(f) && !host.contains(f))
        .into_iter()
        .filter_map(|simplices| {
            let boundary = cx.boundary(&Chain::from_ids(p + 1, simplices.iter().copied()));
            boundary.is_subset_of(host).then_some(Component {
                simplices,
                boundary,
            })
        })
        .collect()
}

/// Minimum cycles inside each component for the regular slots `b..d`, from
/// one cut shared by all components. Boundary faces attach to the dummy
/// `boundary_dummy(face)`, whose side is `dummy_side`.
pub fn component_min_cycles(
    ctx: &LevelsetContext,
    b: usize,
    d: usize,
    comps: &[Component],
    boundary_dummy: impl Fn(SimplexId) -> usize,
    dummy_side: &[bool],
) -> Result<Vec<Vec<Chain>>, SolveError> {
    let (cx, p) = (&ctx.cx, ctx.p);
    let mut zeta = vec![vec![Chain::empty(p); d - b]; comps.len()];
    if comps.is_empty() || b == d {
        return Ok(zeta);
    }
    let slot_of = slot_table(ctx);
    let slabs: Vec<SimplexSet> = (b..=d).map(|i| ctx.slab(i)).collect();
    let tops: Vec<Vec<SimplexId>> = comps.iter().map(|c| c.simplices.clone()).collect();
    let g = dual_component_shared(
        cx,
        &tops,
        boundary_dummy,
        dummy_side,
        |t| slabs.iter().position(|s| s.contains(t)).map(|k| k % 2 == 0),
        inside_weight(cx, &slot_of, b, d),
    );
    if g.graph.sinks().is_empty() {
        return Ok(zeta);
    }
    let cut = min_st_cut(&g.graph).expect("terminals are disjoint");
    if cut.weight.is_infinite() {
        return violated("component cut crosses an infinite edge", vec![]);
    }
    for (s, j) in g.pull_back(&cut.source_side) {
        let i = slot_of[s].expect("finite edges lie in regular complexes");
        zeta[j][i - b].add_assign(&Chain::from_ids(p, [s]));
    }
    Ok(zeta)
}

fn closed_birth_checks(
    pb: &Problem,
    iv: &LevelsetInterval,
) -> Result<(SimplexSet, SimplexSet), SolveError> {
    let ctx = &pb.ctx;
    let kb = pb.prefix(iv.beta);
    let allowed = ctx.range(iv.b - 1, false, iv.b, true);
    if !kb.is_subset_of(&allowed) {
        return violated(
            "birth complex leaves its half-open range",
            kb.difference(&allowed).iter().collect(),
        );
    }
    let kbar = fill_cofacets(&ctx.cx, ctx.p, &kb);
    let cof: Vec<SimplexId> = ctx
        .cx
        .cofaces(iv.creator)
        .iter()
        .copied()
        .filter(|&t| kbar.contains(t))
        .collect();
    if !cof.is_empty() {
        return violated("creator has a coface in the filled birth complex", cof);
    }
    Ok((kb, kbar))
}

#[allow(clippy::too_many_arguments)]
fn host_reduction(
    pb: &Problem,
    iv: &LevelsetInterval,
    host: &SimplexSet,
    comps: &[Component],
    zeta: Vec<Vec<Chain>>,
    augment: bool,
    terminal_dummies: usize,
    beta_set: SimplexSet,
    delta_set: Option<SimplexSet>,
) -> Result<Reduction, SolveError> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let bds: Vec<Vec<SimplexId>> = comps.iter().map(|c| c.boundary.ids().to_vec()).collect();
    let aug: Vec<ExtWeight> = if augment {
        zeta.iter()
            .map(|zs| ExtWeight::finite(zs.iter().map(|z| z.weight(cx)).sum()))
            .collect()
    } else {
        Vec::new()
    };
    let graph = dual_with_boundary(cx, p, host, &bds, &aug, |s| ExtWeight::finite(cx.weight(s)))
        .map_err(|e| match e {
            DualError::OverlappingBoundaries(s) => {
                SolveError::AssumptionViolated("p-simplex on three component boundaries", vec![s])
            }
            DualError::NotClosedPseudomanifold(v) => SolveError::AssumptionViolated("bad host", v),
        })?;
    let dummies: Vec<usize> = (0..comps.len())
        .map(|j| graph.index_of(DualVertex::Dummy(j)).unwrap())
        .collect();
    let outer = graph.index_of(DualVertex::Outer).unwrap();
    let terminals = (0..terminal_dummies)
        .map(|i| {
            let mut sinks = vec![outer];
            sinks.extend(
                (0..terminal_dummies)
                    .filter(|&k| k != i)
                    .map(|k| dummies[k]),
            );
            (vec![dummies[i]], sinks)
        })
        .collect();
    Ok(Reduction {
        interval: *iv,
        graph,
        terminals,
        solved: *iv,
        slot_of: slot_table(ctx),
        weights: (0..cx.len()).map(|s| cx.weight(s)).collect(),
        p,
        pull: Pull::Host {
            beta_set,
            delta_set,
            zeta,
            dummies,
        },
        mirror_m: None,
    })
}

fn co_components(
    pb: &Problem,
    iv: &LevelsetInterval,
    kb: &SimplexSet,
) -> Result<(Vec<Component>, usize), SolveError> {
    let ctx = &pb.ctx;
    let region = ctx.open(iv.b - 1, iv.d).union(&pb.prefix(iv.delta + 1));
    let mut comps = bounded_components(&ctx.cx, ctx.p, &region, kb);
    let with_creator: Vec<usize> = (0..comps.len())
        .filter(|&j| comps[j].boundary.contains(iv.creator))
        .collect();
    if with_creator.len() != 1 {
        return violated(
            "expected exactly one component bounded by the creator",
            vec![iv.creator],
        );
    }
    comps.swap(0, with_creator[0]);
    Ok((comps, 1))
}

fn cc_components(
    pb: &Problem,
    iv: &LevelsetInterval,
    kb: &SimplexSet,
    kd: &SimplexSet,
    t: SimplexId,
) -> Result<(Vec<Component>, usize), SolveError> {
    let ctx = &pb.ctx;
    let region = ctx.open(iv.b - 1, iv.d + 1);
    let comps = bounded_components(&ctx.cx, ctx.p, &region, &kb.union(kd));
    let (both, rest): (Vec<Component>, Vec<Component>) = comps
        .into_iter()
        .partition(|c| c.boundary.contains(iv.creator) && c.boundary.contains(t));
    if both.is_empty() {
        return violated(
            "no component bounded by both creator and destroyer",
            vec![iv.creator, t],
        );
    }
    let h = both.len();
    Ok((both.into_iter().chain(rest).collect(), h))
}

/// The bounded components of a closed-birth interval, and how many of them
/// lead: for closed-open the one bounded by the creator, for closed-closed
/// those bounded by both creator and destroyer. Leading components come
/// first.
pub fn candidate_components(
    pb: &Problem,
    iv: &LevelsetInterval,
) -> Result<(Vec<Component>, usize), SolveError> {
    let (cx, p) = (&pb.ctx.cx, pb.ctx.p);
    let t = check_dims(cx, iv, p)?;
    let (kb, _) = closed_birth_checks(pb, iv)?;
    match iv.kind {
        IntervalKind::ClosedOpen => co_components(pb, iv, &kb),
        IntervalKind::ClosedClosed => cc_components(pb, iv, &kb, &pb.prefix(iv.delta), t),
        _ => violated("interval has no closed birth", vec![iv.creator]),
    }
}

fn closed_open(pb: &Problem, iv: &LevelsetInterval) -> Result<Reduction, SolveError> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    check_dims(cx, iv, p)?;
    let (kb, kbar) = closed_birth_checks(pb, iv)?;
    let (comps, _) = co_components(pb, iv, &kb)?;
    let zeta = component_min_cycles(ctx, iv.b, iv.d, &comps, |_| 0, &[true])?;
    host_reduction(pb, iv, &kbar, &comps, zeta, true, 1, kb, None)
}

fn closed_closed(pb: &Problem, iv: &LevelsetInterval) -> Result<Reduction, SolveError> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let t = check_dims(cx, iv, p)?;
    let (kb, kbar_b) = closed_birth_checks(pb, iv)?;
    let kd = pb.prefix(iv.delta);
    let allowed = ctx.range(iv.d, true, iv.d + 1, false);
    if !kd.is_subset_of(&allowed) {
        return violated(
            "death complex leaves its half-open range",
            kd.difference(&allowed).iter().collect(),
        );
    }
    let kbar_d = fill_cofacets(cx, p, &kd);
    let host = kbar_b.union(&kbar_d);
    let (comps, h) = cc_components(pb, iv, &kb, &kd, t)?;
    let odd = (iv.d - iv.b) % 2 == 1;
    let dummy_side: &[bool] = if odd { &[true, false] } else { &[true] };
    let zeta = component_min_cycles(
        ctx,
        iv.b,
        iv.d,
        &comps,
        |f| usize::from(odd && !kb.contains(f)),
        dummy_side,
    )?;
    host_reduction(pb, iv, &host, &comps, zeta, iv.b != iv.d, h, kb, Some(kd))
}

/// A failed condition of a cycle sequence.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("slot {slot:?}: {condition}")]
pub struct SequenceViolation {
    pub slot: Option<usize>,
    pub condition: &'static str,
}

/// Checks every defining condition of a levelset persistent cycle sequence
/// for `seq.interval`.
pub fn verify_cycle_sequence(pb: &Problem, seq: &CycleSequence) -> Result<(), SequenceViolation> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let iv = seq.interval;
    let fail = |slot: Option<usize>, condition| Err(SequenceViolation { slot, condition });
    let slots: Vec<usize> = seq.cycles.iter().map(|c| c.0).collect();
    if slots != iv.slots().collect::<Vec<_>>() {
        return fail(None, "slots do not match the interval");
    }
    let bounds = |set: &SimplexSet, z: &Chain| -> Option<bool> {
        BoundarySpace::new(cx, set, p).is_boundary(z).ok()
    };
    let kb = pb.prefix(iv.beta);
    let kd = pb.prefix(iv.delta);
    for (i, z) in &seq.cycles {
        let i = *i;
        if !z.is_empty() && z.dim() != p {
            return fail(Some(i), "chain has the wrong dimension");
        }
        if !cx.boundary(z).is_empty() {
            return fail(Some(i), "chain is not a cycle");
        }
        let home = if iv.kind.closed_birth() && i + 1 == iv.b {
            &kb
        } else if iv.kind.closed_death() && i == iv.d {
            &kd
        } else {
            &ctx.open(i, i + 1)
        };
        if !z.is_subset_of(home) {
            return fail(Some(i), "cycle outside its complex");
        }
    }
    let first = &seq.cycles[0];
    if iv.kind.closed_birth() {
        if !first.1.contains(iv.creator) {
            return fail(Some(first.0), "birth cycle misses the creator");
        }
    } else {
        let dz = Chain::from_ids(p, cx.faces(iv.creator).iter().copied());
        if bounds(&kb, &first.1.add(&dz)) != Some(true) {
            return fail(
                Some(first.0),
                "birth cycle not homologous to the creator's boundary",
            );
        }
        if bounds(&kb, &first.1) != Some(false) {
            return fail(Some(first.0), "birth cycle bounds");
        }
    }
    let last = seq.cycles.last().unwrap();
    let Some(t) = iv.destroyer else {
        return fail(None, "interval never dies");
    };
    if iv.kind.closed_death() {
        if !last.1.contains(t) {
            return fail(Some(last.0), "death cycle misses the destroyer");
        }
    } else {
        let dz = Chain::from_ids(p, cx.faces(t).iter().copied());
        if bounds(&kd, &last.1.add(&dz)) != Some(true) {
            return fail(
                Some(last.0),
                "death cycle not homologous to the destroyer's boundary",
            );
        }
        if bounds(&kd, &last.1) != Some(false) {
            return fail(Some(last.0), "death cycle bounds");
        }
    }
    for w in seq.cycles.windows(2) {
        let (i, z0) = &w[0];
        let z1 = &w[1].1;
        if bounds(&ctx.open(*i, i + 2), &z0.add(z1)) != Some(true) {
            return fail(Some(*i), "consecutive cycles are not homologous");
        }
    }
    let total: f64 = seq.cycles.iter().map(|(_, z)| z.weight(cx)).sum();
    if (total - seq.total_weight).abs() > 1e-9 * total.abs().max(1.0) {
        return fail(None, "total weight does not match the cycles");
    }
    Ok(())
}

/// Re-labels a sequence's cycles and recomputes its weight.
pub fn sequence_with_cycles(
    cx: &SimplicialComplex,
    interval: LevelsetInterval,
    cycles: Vec<(usize, Chain)>,
) -> CycleSequence {
    CycleSequence::from_slots(cx, interval, cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levelset::PlFunction;

    fn sphere() -> Problem {
        let cx = crate::complex::tests::octahedron();
        let f = PlFunction::from_labels(
            &cx,
            &[(4, 0.0), (0, 1.0), (2, 1.1), (1, 1.2), (3, 1.3), (5, 2.0)],
        )
        .unwrap();
        Problem::new(LevelsetContext::new(cx, f, 1)).unwrap()
    }

    #[test]
    fn sphere_equator() {
        let pb = sphere();
        let ivs = pb.intervals();
        assert_eq!(ivs.len(), 1);
        let seq = solve_open_open(&pb, &ivs[0]).unwrap();
        assert_eq!(seq.cycles.len(), 1);
        assert_eq!(seq.total_weight, 4.0);
        pb.verify(&seq).unwrap();
    }

    #[test]
    fn corrupted_sequences_fail() {
        let pb = sphere();
        let seq = pb.solve(&pb.intervals()[0]).unwrap();
        let mut dropped = seq.clone();
        dropped.cycles.clear();
        assert_eq!(
            pb.verify(&dropped).unwrap_err().condition,
            "slots do not match the interval"
        );
        let mut empty = seq.clone();
        empty.cycles[0].1 = Chain::empty(1);
        empty.total_weight = 0.0;
        assert!(pb.verify(&empty).is_err());
        let mut heavy = seq;
        heavy.total_weight += 1.0;
        assert!(pb.verify(&heavy).is_err());
    }

    #[test]
    fn wrong_solver_is_rejected() {
        let pb = sphere();
        assert!(solve_closed_open(&pb, &pb.intervals()[0]).is_err());
    }
}

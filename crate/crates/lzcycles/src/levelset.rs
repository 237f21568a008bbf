//! PL functions on a complex, critical values, range complexes and the
//! simplex-wise levelset filtration.

use thiserror::Error;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::z2::Echelon;
use crate::zigzag::{Marker, SimplexwiseFiltration, Step};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LevelsetError {
    #[error("no function value for vertex {0}")]
    MissingValue(u32),
    #[error("value for vertex {0} is not finite")]
    NonFiniteValue(u32),
    #[error("value given for unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("{} simplices span more than one critical value", .0.len())]
    IncompatibleComplex(Vec<SimplexId>),
}

/// A PL function given by its vertex values. Ties are broken by vertex label,
/// so `rank` is a strict total order on vertices.
#[derive(Clone, Debug)]
pub struct PlFunction {
    values: Vec<f64>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl PlFunction {
    /// `values[v]` is the value at vertex index `v` of `cx`.
    pub fn new(cx: &SimplicialComplex, values: Vec<f64>) -> Result<Self, LevelsetError> {
        let n = cx.num_vertices();
        if values.len() != n {
            let missing = (values.len()..n).next().unwrap_or(0);
            return Err(LevelsetError::MissingValue(cx.vertex_label(missing)));
        }
        if let Some(v) = (0..n).find(|&v| !values[v].is_finite()) {
            return Err(LevelsetError::NonFiniteValue(cx.vertex_label(v)));
        }
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by(|&a, &b| {
            values[a]
                .total_cmp(&values[b])
                .then(cx.vertex_label(a).cmp(&cx.vertex_label(b)))
        });
        let mut rank = vec![0; n];
        for (r, &v) in by_rank.iter().enumerate() {
            rank[v] = r;
        }
        Ok(PlFunction {
            values,
            rank,
            by_rank,
        })
    }

    /// Builds from `(label, value)` pairs; every vertex needs a value.
    pub fn from_labels(
        cx: &SimplicialComplex,
        pairs: &[(u32, f64)],
    ) -> Result<Self, LevelsetError> {
        let mut vals: Vec<Option<f64>> = vec![None; cx.num_vertices()];
        for &(label, x) in pairs {
            let v = cx
                .vertex_index(label)
                .ok_or(LevelsetError::UnknownVertex(label))?;
            vals[v] = Some(x);
        }
        let mut out = Vec::with_capacity(vals.len());
        for (v, x) in vals.into_iter().enumerate() {
            out.push(x.ok_or(LevelsetError::MissingValue(cx.vertex_label(v)))?);
        }
        Self::new(cx, out)
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertex index with the given rank.
    pub fn vertex_at(&self, r: usize) -> usize {
        self.by_rank[r]
    }

    /// The function `-f` with the vertex order exactly reversed.
    pub fn negated(&self) -> PlFunction {
        let n = self.values.len();
        let rank: Vec<usize> = self.rank.iter().map(|&r| n - 1 - r).collect();
        let by_rank: Vec<usize> = self.by_rank.iter().rev().copied().collect();
        PlFunction {
            values: self.values.iter().map(|x| -x).collect(),
            rank,
            by_rank,
        }
    }

    /// Whether raw values are pairwise distinct (no tie-break needed).
    pub fn is_injective(&self) -> bool {
        self.by_rank
            .windows(2)
            .all(|w| self.values[w[0]] != self.values[w[1]])
    }
}

/// Interval type of a levelset barcode bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalKind {
    ClosedOpen,
    OpenClosed,
    ClosedClosed,
    OpenOpen,
}

impl IntervalKind {
    pub fn code(self) -> &'static str {
        match self {
            IntervalKind::ClosedOpen => "co",
            IntervalKind::OpenClosed => "oc",
            IntervalKind::ClosedClosed => "cc",
            IntervalKind::OpenOpen => "oo",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Some(match s {
            "co" => IntervalKind::ClosedOpen,
            "oc" => IntervalKind::OpenClosed,
            "cc" => IntervalKind::ClosedClosed,
            "oo" => IntervalKind::OpenOpen,
            _ => return None,
        })
    }

    pub fn closed_birth(self) -> bool {
        matches!(self, IntervalKind::ClosedOpen | IntervalKind::ClosedClosed)
    }

    pub fn closed_death(self) -> bool {
        matches!(self, IntervalKind::OpenClosed | IntervalKind::ClosedClosed)
    }

    /// The type seen under `-f`.
    pub fn mirrored(self) -> Self {
        match self {
            IntervalKind::ClosedOpen => IntervalKind::OpenClosed,
            IntervalKind::OpenClosed => IntervalKind::ClosedOpen,
            k => k,
        }
    }
}

/// A bar of the classical levelset barcode, with endpoints given as vertex
/// ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalBar {
    pub dim: usize,
    pub kind: IntervalKind,
    pub lo: usize,
    pub hi: usize,
}

/// Levelset barcode of `f` in every dimension, read off the extended
/// persistence of the lower-star filtration (coned off by an apex vertex that comes first).
pub fn classical_levelset_barcode(cx: &SimplicialComplex, f: &PlFunction) -> Vec<ClassicalBar> {
    let n = cx.len();
    let rank = f.ranks();
    let hi_rank = |s: SimplexId| {
        cx.vertex_ids(s)
            .iter()
            .map(|&v| rank[v as usize])
            .max()
            .unwrap()
    };
    let lo_rank = |s: SimplexId| {
        cx.vertex_ids(s)
            .iter()
            .map(|&v| rank[v as usize])
            .min()
            .unwrap()
    };

    // Cone complex ids: 0..n original, n apex, n+1+s apex joined with s.
    let apex = n;
    let mut lower: Vec<usize> = (0..n).collect();
    lower.sort_by_key(|&s| (hi_rank(s), cx.dim_of(s), s));
    let mut order = vec![apex];
    order.extend(lower);
    let mut cone: Vec<usize> = (0..n).collect();
    cone.sort_by_key(|&s| (std::cmp::Reverse(lo_rank(s)), cx.dim_of(s), s));
    order.extend(cone.iter().map(|&s| n + 1 + s));
    let mut pos = vec![0usize; 2 * n + 1];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }

    let boundary = |c: usize| -> Vec<usize> {
        let mut col: Vec<usize> = if c < n {
            cx.faces(c).iter().map(|&g| pos[g]).collect()
        } else if c == apex {
            Vec::new()
        } else {
            let s = c - n - 1;
            let mut v = vec![pos[s]];
            if cx.dim_of(s) == 0 {
                v.push(pos[apex]);
            } else {
                v.extend(cx.faces(s).iter().map(|&g| pos[n + 1 + g]));
            }
            v
        };
        col.sort_unstable();
        col
    };

    let mut ech = Echelon::new();
    let mut bars = Vec::new();
    for &c in &order {
        let (res, _) = ech.push(boundary(c));
        let Some(&low) = res.last() else { continue };
        let birth = order[low];
        let death = c;
        if birth == apex {
            continue;
        }
        if birth < n && death < n {
            let d = cx.dim_of(birth);
            let (a, b) = (hi_rank(birth), hi_rank(death));
            if a < b {
                bars.push(ClassicalBar {
                    dim: d,
                    kind: IntervalKind::ClosedOpen,
                    lo: a,
                    hi: b,
                });
            }
        } else if birth < n {
            let d = cx.dim_of(birth);
            let a = hi_rank(birth);
            let c2 = lo_rank(death - n - 1);
            if a <= c2 {
                bars.push(ClassicalBar {
                    dim: d,
                    kind: IntervalKind::ClosedClosed,
                    lo: a,
                    hi: c2,
                });
            } else if d >= 1 {
                bars.push(ClassicalBar {
                    dim: d - 1,
                    kind: IntervalKind::OpenOpen,
                    lo: c2,
                    hi: a,
                });
            }
        } else {
            let d = cx.dim_of(birth - n - 1) + 1;
            let b = lo_rank(birth - n - 1);
            let c2 = lo_rank(death - n - 1);
            if c2 < b && d >= 1 {
                bars.push(ClassicalBar {
                    dim: d - 1,
                    kind: IntervalKind::OpenClosed,
                    lo: c2,
                    hi: b,
                });
            }
        }
    }
    bars.sort();
    bars
}

/// Candidate and p-th critical values. Indices `1..=m` address the p-th
/// critical values; `0` and `m+1` are the infinite sentinels.
#[derive(Clone, Debug)]
pub struct CriticalInfo {
    pub all_values: Vec<f64>,
    /// Ranks of the p-th critical vertices, increasing.
    pub ranks: Vec<usize>,
    /// Vertex indices of the p-th critical vertices.
    pub vertices: Vec<usize>,
    pub values: Vec<f64>,
}

impl CriticalInfo {
    pub fn m(&self) -> usize {
        self.ranks.len()
    }

    /// Rank bound for index `i` in `0..=m+1`, with sentinels outside the
    /// vertex range: `-1` and `n`.
    pub fn bound(&self, i: usize, n: usize) -> i64 {
        if i == 0 {
            -1
        } else if i > self.ranks.len() {
            n as i64
        } else {
            self.ranks[i - 1] as i64
        }
    }

    /// Value for index `i`, with `-inf`/`+inf` sentinels.
    pub fn value(&self, i: usize) -> f64 {
        if i == 0 {
            f64::NEG_INFINITY
        } else if i > self.values.len() {
            f64::INFINITY
        } else {
            self.values[i - 1]
        }
    }
}

/// All vertex values in increasing order (a superset of the critical values).
pub fn candidate_critical_values(f: &PlFunction) -> Vec<f64> {
    (0..f.values().len())
        .map(|r| f.value(f.vertex_at(r)))
        .collect()
}

fn critical_from_ranks(f: &PlFunction, mut ranks: Vec<usize>) -> CriticalInfo {
    ranks.sort_unstable();
    ranks.dedup();
    let vertices: Vec<usize> = ranks.iter().map(|&r| f.vertex_at(r)).collect();
    CriticalInfo {
        all_values: candidate_critical_values(f),
        values: vertices.iter().map(|&v| f.value(v)).collect(),
        ranks,
        vertices,
    }
}

/// The p-th critical values: endpoints of dimension-p bars of the levelset
/// barcode taken over all vertex values.
pub fn detect_p_critical(cx: &SimplicialComplex, f: &PlFunction, p: usize) -> CriticalInfo {
    let ranks = classical_levelset_barcode(cx, f)
        .into_iter()
        .filter(|b| b.dim == p)
        .flat_map(|b| [b.lo, b.hi])
        .collect();
    critical_from_ranks(f, ranks)
}

/// A complex with a PL function, a dimension of interest and its p-th
/// critical values.
#[derive(Clone, Debug)]
pub struct LevelsetContext {
    pub cx: SimplicialComplex,
    pub f: PlFunction,
    pub p: usize,
    pub crit: CriticalInfo,
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl LevelsetContext {
    pub fn new(cx: SimplicialComplex, f: PlFunction, p: usize) -> Self {
        let crit = detect_p_critical(&cx, &f, p);
        Self::with_critical(cx, f, p, crit)
    }

    pub fn with_critical(
        cx: SimplicialComplex,
        f: PlFunction,
        p: usize,
        crit: CriticalInfo,
    ) -> Self {
        let lo = (0..cx.len())
            .map(|s| {
                cx.vertex_ids(s)
                    .iter()
                    .map(|&v| f.rank(v as usize))
                    .min()
                    .unwrap()
            })
            .collect();
        let hi = (0..cx.len())
            .map(|s| {
                cx.vertex_ids(s)
                    .iter()
                    .map(|&v| f.rank(v as usize))
                    .max()
                    .unwrap()
            })
            .collect();
        LevelsetContext {
            cx,
            f,
            p,
            crit,
            lo,
            hi,
        }
    }

    /// Same complex under `-f`.
    pub fn negated(&self) -> LevelsetContext {
        let g = self.f.negated();
        let n = self.cx.num_vertices();
        let ranks: Vec<usize> = self.crit.ranks.iter().map(|&r| n - 1 - r).collect();
        let crit = critical_from_ranks(&g, ranks);
        LevelsetContext::with_critical(self.cx.clone(), g, self.p, crit)
    }

    pub fn m(&self) -> usize {
        self.crit.m()
    }

    /// Lowest vertex rank of a simplex.
    pub fn lo_rank(&self, s: SimplexId) -> usize {
        self.lo[s]
    }

    pub fn hi_rank(&self, s: SimplexId) -> usize {
        self.hi[s]
    }

    fn bound(&self, i: usize) -> i64 {
        self.crit.bound(i, self.cx.num_vertices())
    }

    /// Simplices whose vertex values all lie in the range between critical
    /// indices `i` and `j`, with each end open or closed.
    pub fn range(&self, i: usize, i_closed: bool, j: usize, j_closed: bool) -> SimplexSet {
        let (a, b) = (self.bound(i), self.bound(j));
        SimplexSet::from_predicate(self.cx.len(), |s| {
            let (lo, hi) = (self.lo[s] as i64, self.hi[s] as i64);
            let lo_ok = if i_closed { lo >= a } else { lo > a };
            let hi_ok = if j_closed { hi <= b } else { hi < b };
            lo_ok && hi_ok
        })
    }

    /// Open range `(i, j)`.
    pub fn open(&self, i: usize, j: usize) -> SimplexSet {
        self.range(i, false, j, false)
    }

    /// Simplices of `(i-1, i+1)` lying in neither `(i-1, i)` nor `(i, i+1)`.
    pub fn slab(&self, i: usize) -> SimplexSet {
        let (a, c, b) = (self.bound(i - 1), self.bound(i), self.bound(i + 1));
        SimplexSet::from_predicate(self.cx.len(), |s| {
            let (lo, hi) = (self.lo[s] as i64, self.hi[s] as i64);
            lo > a && hi < b && lo <= c && hi >= c
        })
    }

    /// Index `i` with `s` in the regular complex `(i, i+1)`, if any.
    pub fn regular_index(&self, s: SimplexId) -> Option<usize> {
        let (lo, hi) = (self.lo[s] as i64, self.hi[s] as i64);
        let i = self.crit.ranks.partition_point(|&r| (r as i64) < lo);
        // bound(i) < lo, bound(i+1) >= lo
        if self.bound(i + 1) > hi && self.bound(i) < lo {
            Some(i)
        } else {
            None
        }
    }

    /// Simplices whose closed value hull contains two or more p-th critical
    /// values.
    pub fn compatibility_violations(&self) -> Vec<SimplexId> {
        (0..self.cx.len())
            .filter(|&s| {
                let (lo, hi) = (self.lo[s], self.hi[s]);
                let a = self.crit.ranks.partition_point(|&r| r < lo);
                let b = self.crit.ranks.partition_point(|&r| r <= hi);
                b - a >= 2
            })
            .collect()
    }

    pub fn check_compatibility(&self) -> Result<(), LevelsetError> {
        let bad = self.compatibility_violations();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(LevelsetError::IncompatibleComplex(bad))
        }
    }

    /// Builds the simplex-wise levelset filtration, starting from the empty
    /// complex (the first regular complex is assembled star by star).
    pub fn build_filtration(&self) -> SimplexwiseFiltration {
        let cx = &self.cx;
        let n = cx.num_vertices();
        let m = self.m();
        let rank = self.f.ranks();
        let mut steps: Vec<Step> = Vec::new();
        let mut markers: Vec<(usize, Marker)> = Vec::new();
        let bnd = |i: usize| self.bound(i);
        let vertices_in = |lo: i64, hi: i64| -> Vec<usize> {
            (0..n)
                .filter(|&r| (r as i64) >= lo && (r as i64) < hi)
                .map(|r| self.f.vertex_at(r))
                .collect()
        };

        // (0,1): lower stars of vertices below the first critical value.
        for v in vertices_in(0, bnd(1)) {
            for s in cx.lower_star(v, rank) {
                steps.push(Step::add(s));
            }
        }
        markers.push((steps.len(), Marker::Regular(0)));

        for i in 0..m {
            // (i, i+1) -> (i, i+2)
            let floor = bnd(i);
            for (k, v) in vertices_in(bnd(i + 1), bnd(i + 2)).into_iter().enumerate() {
                for s in cx.lower_star(v, rank) {
                    if self.lo[s] as i64 > floor {
                        steps.push(Step::add(s));
                    }
                }
                if k == 0 {
                    markers.push((steps.len(), Marker::UpperClosed(i + 1)));
                }
            }
            markers.push((steps.len(), Marker::Critical(i + 1)));

            // (i, i+2) <- (i+1, i+2)
            let ceil = bnd(i + 2);
            let vs = vertices_in(floor + 1, bnd(i + 1) + 1);
            let last = vs.len() - 1;
            for (k, v) in vs.into_iter().enumerate() {
                if k == last {
                    markers.push((steps.len(), Marker::LowerClosed(i + 1)));
                }
                for s in cx.upper_star(v, rank).into_iter().rev() {
                    if (self.hi[s] as i64) < ceil {
                        steps.push(Step::delete(s));
                    }
                }
            }
            markers.push((steps.len(), Marker::Regular(i + 1)));
        }
        SimplexwiseFiltration::new(cx.len(), self.p, steps, markers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron_ctx() -> LevelsetContext {
        let tris = vec![
            vec![0, 2, 4],
            vec![0, 3, 4],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![0, 2, 5],
            vec![0, 3, 5],
            vec![1, 2, 5],
            vec![1, 3, 5],
        ];
        let cx = SimplicialComplex::build(&tris, &[]).unwrap();
        // poles 4 (bottom) and 5 (top), equator tilted
        let f = PlFunction::from_labels(
            &cx,
            &[(4, 0.0), (0, 1.0), (2, 1.1), (1, 1.2), (3, 1.3), (5, 2.0)],
        )
        .unwrap();
        LevelsetContext::new(cx, f, 1)
    }

    #[test]
    fn sphere_has_two_first_critical_values() {
        let ctx = octahedron_ctx();
        assert_eq!(ctx.crit.values, vec![0.0, 2.0]);
        assert_eq!(ctx.crit.all_values.len(), 6);
        let bars: Vec<_> = classical_levelset_barcode(&ctx.cx, &ctx.f)
            .into_iter()
            .filter(|b| b.dim == 1)
            .collect();
        assert_eq!(bars.len(), 1);
        assert_eq!(bars[0].kind, IntervalKind::OpenOpen);
    }

    #[test]
    fn ranges_and_slabs() {
        let ctx = octahedron_ctx();
        assert_eq!(ctx.range(0, false, 3, false).len(), ctx.cx.len());
        assert!(ctx.open(1, 1).is_empty());
        let mid = ctx.open(1, 2);
        assert_eq!(mid.ids_of_dim(&ctx.cx, 1).len(), 4);
        let v1 = ctx.slab(1);
        assert!(v1.contains(ctx.cx.id_of(&[4]).unwrap()));
        assert!(!v1.contains(ctx.cx.id_of(&[0, 2]).unwrap()));
        assert!(ctx.compatibility_violations().is_empty());
    }

    #[test]
    fn single_edge_slab() {
        let cx = SimplicialComplex::build(&[vec![0, 1], vec![1, 2], vec![2, 3]], &[]).unwrap();
        let f = PlFunction::new(&cx, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let crit = critical_from_ranks(&f, vec![0, 3]);
        let ctx = LevelsetContext::with_critical(cx, f, 1, crit);
        // slab at index 1 (vertex 0) contains the vertex and the edge leaving it
        let s = ctx.slab(1);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn filtration_prefixes_are_complexes() {
        let ctx = octahedron_ctx();
        let filt = ctx.build_filtration();
        let mut cur = SimplexSet::new(ctx.cx.len());
        for st in filt.steps() {
            if st.add {
                cur.insert(st.simplex);
            } else {
                cur.remove(st.simplex);
            }
            assert!(cur.is_face_closed(&ctx.cx));
        }
        for &(pos, mk) in filt.markers() {
            let expect = match mk {
                Marker::Regular(i) => ctx.open(i, i + 1),
                Marker::Critical(i) => ctx.open(i - 1, i + 1),
                Marker::UpperClosed(i) => ctx.range(i - 1, false, i, true),
                Marker::LowerClosed(i) => ctx.range(i, true, i + 1, false),
            };
            assert_eq!(filt.complex_at(pos), expect, "{mk:?}");
        }
    }

    #[test]
    fn negation_reverses_order() {
        let ctx = octahedron_ctx();
        let g = ctx.negated();
        for v in 0..6 {
            assert_eq!(g.f.rank(v), 5 - ctx.f.rank(v));
        }
        assert_eq!(g.crit.values, vec![-2.0, 0.0]);
    }
}

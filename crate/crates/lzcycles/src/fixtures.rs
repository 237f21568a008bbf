//! Deterministic example complexes with height functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::levelset::{LevelsetContext, PlFunction};
use crate::optcycles::{Problem, SolveError};

/// A triangulated complex, a function on its vertices and a homology degree.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub cx: SimplicialComplex,
    pub f: PlFunction,
    pub p: usize,
}

impl Fixture {
    fn new(name: impl Into<String>, tris: &[Vec<u32>], values: &[(u32, f64)], p: usize) -> Self {
        let cx = SimplicialComplex::build(tris, &[]).expect("valid fixture");
        let f = PlFunction::from_labels(&cx, values).expect("values for every vertex");
        Fixture {
            name: name.into(),
            cx,
            f,
            p,
        }
    }

    pub fn context(&self) -> LevelsetContext {
        LevelsetContext::new(self.cx.clone(), self.f.clone(), self.p)
    }

    pub fn problem(&self) -> Result<Problem, SolveError> {
        Problem::new(self.context())
    }

    /// Replaces every p-simplex weight by an integer in `1..=max` drawn from
    /// `seed`.
    pub fn with_random_weights(mut self, seed: u64, max: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ws: Vec<_> = self
            .cx
            .ids_of_dim(self.p)
            .map(|s| (s, rng.random_range(1..=max) as f64))
            .collect();
        self.cx = self.cx.with_weights(&ws).expect("positive weights");
        self.name = format!("{}-w{seed}", self.name);
        self
    }

    /// Midpoint subdivision of a 2-complex: each triangle splits into four,
    /// new vertices take the mean value of their edge and weights reset to 1.
    pub fn subdivided(&self) -> Self {
        let cx = &self.cx;
        let label = |v: usize| cx.vertex_label(v);
        let first = (0..cx.num_vertices()).map(label).max().unwrap_or(0) + 1;
        let mut mid = std::collections::HashMap::new();
        let mut vals: Vec<(u32, f64)> = (0..cx.num_vertices())
            .map(|v| (label(v), self.f.value(v)))
            .collect();
        for (next, e) in (first..).zip(cx.ids_of_dim(1)) {
            let vs = cx.simplex(e).vertices();
            let avg = vs
                .iter()
                .map(|&l| self.f.value(cx.vertex_index(l).unwrap()))
                .sum::<f64>()
                / 2.0;
            mid.insert((vs[0], vs[1]), next);
            vals.push((next, avg));
        }
        let m = |a: u32, b: u32| mid[&(a.min(b), a.max(b))];
        let mut tris = Vec::new();
        for t in cx.ids_of_dim(2) {
            let [a, b, c] = [0, 1, 2].map(|i| cx.simplex(t).vertices()[i]);
            tris.push(tri(a, m(a, b), m(a, c)));
            tris.push(tri(b, m(a, b), m(b, c)));
            tris.push(tri(c, m(a, c), m(b, c)));
            tris.push(tri(m(a, b), m(b, c), m(a, c)));
        }
        Fixture::new(format!("{}-subdivided", self.name), &tris, &vals, self.p)
    }

    /// Replaces the function by distinct random values drawn from `seed`.
    pub fn with_random_values(mut self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.cx.num_vertices();
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut values = vec![0.0; n];
        for (r, v) in order.into_iter().enumerate() {
            values[v] = r as f64;
        }
        self.f = PlFunction::new(&self.cx, values).expect("finite values");
        self.name = format!("{}-seed{seed}", self.name);
        self
    }
}

fn tri(a: u32, b: u32, c: u32) -> Vec<u32> {
    vec![a, b, c]
}

/// Boundary of the octahedron, poles 4 (low) and 5 (high).
pub fn octahedron() -> Fixture {
    let eq = [0, 2, 1, 3];
    let mut tris = Vec::new();
    for k in 0..4 {
        let (a, b) = (eq[k], eq[(k + 1) % 4]);
        tris.push(tri(a, b, 4));
        tris.push(tri(a, b, 5));
    }
    let vals = [(4, 0.0), (0, 1.0), (2, 1.1), (1, 1.2), (3, 1.3), (5, 2.0)];
    Fixture::new("octahedron", &tris, &vals, 1)
}

/// Boundary of the icosahedron with heights along a generic axis.
pub fn icosahedron() -> Fixture {
    let mut tris = vec![];
    let top = 0;
    let bot = 11;
    for k in 0..5u32 {
        let (u, u2) = (1 + k, 1 + (k + 1) % 5);
        let (l, l2) = (6 + k, 6 + (k + 1) % 5);
        tris.push(tri(top, u, u2));
        tris.push(tri(bot, l, l2));
        tris.push(tri(u, u2, l));
        tris.push(tri(u2, l, l2));
    }
    let vals: Vec<(u32, f64)> = (0..12u32)
        .map(|v| {
            (
                v,
                [10.0, 8.0, 8.3, 8.1, 8.4, 8.2, 3.0, 3.3, 3.1, 3.4, 3.2, 0.0][v as usize],
            )
        })
        .collect();
    Fixture::new("icosahedron", &tris, &vals, 1)
}

/// An upright torus on an `nu x nv` grid: `u` runs around the vertical core
/// circle, `v` around the tube. Heights are `z + tilt.0 * x + tilt.1 * y`.
pub fn make_torus(nu: u32, nv: u32, tilt: (f64, f64)) -> Fixture {
    assert!(nu >= 3 && nv >= 3);
    let id = |i: u32, j: u32| (i % nu) * nv + j % nv;
    let mut tris = Vec::new();
    for i in 0..nu {
        for j in 0..nv {
            tris.push(tri(id(i, j), id(i + 1, j), id(i + 1, j + 1)));
            tris.push(tri(id(i, j), id(i + 1, j + 1), id(i, j + 1)));
        }
    }
    let (big, small) = (2.0, 1.0);
    let tau = std::f64::consts::TAU;
    let mut vals = Vec::new();
    for i in 0..nu {
        for j in 0..nv {
            let u = tau * i as f64 / nu as f64 - tau / 4.0;
            let v = tau * j as f64 / nv as f64;
            let rad = big + small * v.cos();
            let (x, y, z) = (rad * u.cos(), small * v.sin(), rad * u.sin());
            vals.push((id(i, j), z + tilt.0 * x + tilt.1 * y));
        }
    }
    Fixture::new(format!("torus-{nu}x{nv}"), &tris, &vals, 1)
}

/// A sphere with one monkey saddle: a minimum feeds a single circle that
/// splits at vertex 0 into three legs, each capped by its own maximum.
///
/// Labels: 0 the saddle, `d_k = 1 + 2k` and `u_k = 2 + 2k` its link, first
/// leg rings `u_k, 10 + 2k, 11 + 2k`, further rings from 40, tips `20 + k`,
/// minimum 30. Leg `k` gets one extra ring per lower tip so that no triangle
/// spans two tip heights.
pub fn make_monkey_saddle() -> Fixture {
    let (tris, vals) = monkey_parts(false);
    Fixture::new("monkey-saddle", &tris, &vals, 1)
}

/// The monkey saddle with the tips of the two highest legs identified.
pub fn make_pinched_monkey_saddle() -> Fixture {
    let (tris, vals) = monkey_parts(true);
    Fixture::new("monkey-saddle-pinched", &tris, &vals, 1)
}

fn monkey_parts(pinch: bool) -> (Vec<Vec<u32>>, Vec<(u32, f64)>) {
    let d = |k: u32| 1 + 2 * (k % 3);
    let u = |k: u32| 2 + 2 * (k % 3);
    let (s, bottom) = (0, 30);
    let tip_height = |k: u32| {
        if pinch {
            [1.0, 1.5, 1.5][k as usize]
        } else {
            1.0 + 0.5 * k as f64
        }
    };
    let mut tris = Vec::new();
    let mut vals = vec![(s, 0.0), (bottom, -2.0)];
    let mut next = 40;
    for k in 0..3 {
        let e = 0.01 * k as f64;
        let (a, b) = (10 + 2 * k, 11 + 2 * k);
        tris.push(tri(s, d(k), u(k)));
        tris.push(tri(s, u(k), d(k + 1)));
        tris.push(tri(d(k), u(k), a));
        tris.push(tri(u(k), d(k + 1), b));
        tris.push(tri(d(k), a, b));
        tris.push(tri(d(k), b, d(k + 1)));
        tris.push(tri(bottom, d(k), d(k + 1)));
        vals.extend([
            (d(k), -0.5 - e),
            (u(k), 0.4 + e),
            (a, 0.5 + e),
            (b, 0.6 + e),
        ]);
        let mut ring = [u(k), a, b];
        let top = tip_height(k);
        let mut lows: Vec<f64> = (0..k).map(tip_height).filter(|&h| h < top).collect();
        lows.dedup();
        for h in lows {
            let up = [next, next + 1, next + 2];
            next += 3;
            for j in 0..3 {
                tris.push(tri(ring[j], ring[(j + 1) % 3], up[j]));
                tris.push(tri(ring[(j + 1) % 3], up[j], up[(j + 1) % 3]));
                vals.push((up[j], h + 0.1 + 0.02 * j as f64 + e));
            }
            ring = up;
        }
        let tip = if pinch && k == 2 { 21 } else { 20 + k };
        for j in 0..3 {
            tris.push(tri(tip, ring[j], ring[(j + 1) % 3]));
        }
        if !(pinch && k == 2) {
            vals.push((tip, top));
        }
    }
    (tris, vals)
}

/// Triangles around a saddle `s` whose link alternates two low pairs `lo`
/// with the first vertices of two leg rings, closed below by a cone at
/// `apex`. Leg ring `k` is `legs[k]`, its first vertex adjacent to `s`.
fn split_piece(s: u32, lo: [[u32; 2]; 2], legs: [[u32; 3]; 2], apex: u32) -> Vec<Vec<u32>> {
    let mut tris = Vec::new();
    for k in 0..2 {
        let [d, e] = lo[k];
        let d_next = lo[(k + 1) % 2][0];
        let [u, a, b] = legs[k];
        tris.push(tri(s, d, e));
        tris.push(tri(s, e, u));
        tris.push(tri(s, u, d_next));
        tris.push(tri(e, u, a));
        tris.push(tri(u, d_next, b));
        tris.push(tri(e, a, b));
        tris.push(tri(e, b, d_next));
        tris.push(tri(apex, d, e));
        tris.push(tri(apex, e, d_next));
    }
    tris
}

/// A torus made of two tubes: a saddle at height 0 splits the circle around
/// the minimum into two legs, which merge again at a saddle at height 1.
/// The left leg (ring `10..13`) is three times heavier than the right one
/// (ring `13..16`).
pub fn make_double_tube() -> Fixture {
    let legs = [[10, 11, 12], [13, 14, 15]];
    let mut tris = split_piece(0, [[1, 2], [3, 4]], legs, 30);
    let flipped = legs.map(|[u, a, b]| [b, a, u]);
    tris.extend(split_piece(20, [[21, 22], [23, 24]], flipped, 31));
    let mut vals = vec![(0, 0.0), (20, 1.0), (30, -2.0), (31, 3.0)];
    for (k, v) in [1, 2, 3, 4].into_iter().enumerate() {
        vals.push((v, -0.5 - 0.05 * k as f64));
        vals.push((v + 20, 1.5 + 0.05 * k as f64));
    }
    for (k, [u, a, b]) in legs.into_iter().enumerate() {
        let e = 0.01 * k as f64;
        vals.extend([(u, 0.4 + e), (a, 0.5 + e), (b, 0.6 + e)]);
    }
    let mut fx = Fixture::new("double-tube", &tris, &vals, 1);
    let ws: Vec<_> = fx
        .cx
        .ids_of_dim(1)
        .map(|e| {
            let left = fx
                .cx
                .simplex(e)
                .vertices()
                .iter()
                .any(|v| (10..13).contains(v));
            (e, if left { 3.0 } else { 1.0 })
        })
        .collect();
    fx.cx = fx.cx.with_weights(&ws).expect("positive weights");
    fx
}

/// A torus whose two saddles coincide in one monkey saddle at vertex 0, so
/// one bar is born and dies at the same critical value. Down link `1..4`,
/// up link `4..7`, minimum 7, maximum 8.
pub fn make_merged_saddle_torus() -> Fixture {
    let d = |k: u32| 1 + k % 3;
    let u = |k: u32| 4 + k % 3;
    let mut tris = Vec::new();
    for k in 0..3 {
        tris.push(tri(0, d(k), u(k)));
        tris.push(tri(0, u(k), d(k + 1)));
        tris.push(tri(7, d(k), d(k + 1)));
        tris.push(tri(8, u(k), u(k + 1)));
        tris.push(tri(d(k), u(k + 1), u(k + 2)));
        tris.push(tri(d(k), u(k + 1), d(k + 1)));
    }
    let mut vals = vec![(0, 0.0), (7, -2.0), (8, 2.0)];
    for k in 0..3 {
        vals.push((d(k), -0.5 - 0.01 * k as f64));
        vals.push((u(k), 0.5 + 0.01 * k as f64));
    }
    Fixture::new("merged-saddle-torus", &tris, &vals, 1)
}

/// A triangle-ring tube open at the bottom and capped by a cone at the top.
/// Ring `r` has labels `3r..3r+3` at height `r`; the cone tip is 99. With
/// `flip` the heights are negated.
pub fn make_capped_tube(rings: u32, flip: bool) -> Fixture {
    let id = |r: u32, k: u32| 3 * r + k % 3;
    let mut tris = Vec::new();
    for r in 0..rings - 1 {
        for k in 0..3 {
            tris.push(tri(id(r, k), id(r, k + 1), id(r + 1, k)));
            tris.push(tri(id(r, k + 1), id(r + 1, k), id(r + 1, k + 1)));
        }
    }
    for k in 0..3 {
        tris.push(tri(id(rings - 1, k), id(rings - 1, k + 1), 99));
    }
    let sign = if flip { -1.0 } else { 1.0 };
    let mut vals = vec![(99, sign * rings as f64)];
    for r in 0..rings {
        for k in 0..3 {
            vals.push((id(r, k), sign * (r as f64 + 0.1 * k as f64)));
        }
    }
    let name = if flip { "hanging-tube" } else { "capped-tube" };
    Fixture::new(format!("{name}-{rings}"), &tris, &vals, 1)
}

/// A capped tube beside a separate sphere whose extrema fall between the
/// tube's ends, so the tube's bar spans two more critical values.
pub fn make_tube_with_sphere() -> Fixture {
    let tube = make_capped_tube(4, false);
    let mut tris: Vec<Vec<u32>> = tube
        .cx
        .ids_of_dim(2)
        .map(|t| tube.cx.simplex(t).vertices().to_vec())
        .collect();
    let mut vals: Vec<(u32, f64)> = (0..tube.cx.num_vertices())
        .map(|v| (tube.cx.vertex_label(v), tube.f.value(v)))
        .collect();
    // octahedron on 50..56 with poles at 1.5 and 2.5
    let eq = [50, 52, 51, 53];
    for k in 0..4 {
        let (a, b) = (eq[k], eq[(k + 1) % 4]);
        tris.push(tri(a, b, 54));
        tris.push(tri(a, b, 55));
    }
    vals.extend([
        (54, 1.5),
        (50, 1.9),
        (52, 2.0),
        (51, 2.1),
        (53, 2.2),
        (55, 2.5),
    ]);
    Fixture::new("tube-with-sphere", &tris, &vals, 1)
}

/// An octahedron whose minimum and maximum share an edge, so the two
/// triangles on that edge each span both critical values, and its midpoint
/// subdivision, which is compatible.
pub fn compatibility_pair() -> (Fixture, Fixture) {
    let mut coarse = octahedron();
    let vals = [(0, 4.0), (1, 0.0), (2, 5.0), (3, 1.0), (4, 3.0), (5, 2.0)];
    coarse.f = PlFunction::from_labels(&coarse.cx, &vals).expect("values for every vertex");
    coarse.name = "octahedron-adjacent-extrema".into();
    let fine = coarse.subdivided();
    (coarse, fine)
}

/// Every named fixture with its default function.
pub fn named() -> Vec<Fixture> {
    vec![
        octahedron(),
        icosahedron(),
        make_merged_saddle_torus(),
        make_torus(8, 8, (0.05, 0.02)),
        make_monkey_saddle(),
        make_pinched_monkey_saddle(),
        make_double_tube(),
        make_capped_tube(3, false),
        make_capped_tube(3, true),
        make_tube_with_sphere(),
        compatibility_pair().1,
    ]
}

/// Compatible fixtures small enough for the exhaustive oracle, including
/// seeded random functions and weights.
pub fn oracle_suite() -> Vec<Fixture> {
    let mut out: Vec<Fixture> = named()
        .into_iter()
        .filter(|f| !f.name.starts_with("torus-8x8") && !f.name.ends_with("subdivided"))
        .collect();
    out.push(
        icosahedron()
            .with_random_values(28)
            .with_random_weights(1, 5),
    );
    out.push(
        icosahedron()
            .with_random_values(42)
            .with_random_weights(2, 5),
    );
    out.push(
        make_capped_tube(3, false)
            .with_random_values(266)
            .with_random_weights(3, 5),
    );
    out.push(
        make_capped_tube(3, false)
            .with_random_values(174)
            .with_random_weights(4, 5),
    );
    out.push(make_double_tube().with_random_weights(5, 4));
    out.push(make_monkey_saddle().with_random_weights(6, 4));
    out.push(make_merged_saddle_torus().with_random_weights(7, 4));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(fx: &Fixture) -> Vec<String> {
        let pb = fx.problem().unwrap();
        let mut out: Vec<String> = pb
            .intervals()
            .iter()
            .map(|iv| format!("{}[{},{}]", iv.kind.code(), iv.b, iv.d))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn named_fixtures_are_valid_inputs() {
        for fx in named() {
            assert!(fx.cx.check_weak_pseudomanifold(fx.p).is_ok(), "{}", fx.name);
            assert!(fx.context().check_compatibility().is_ok(), "{}", fx.name);
        }
    }

    #[test]
    fn barcode_shapes() {
        assert_eq!(
            shape(&make_torus(8, 8, (0.05, 0.02))),
            ["cc[2,3]", "oo[1,4]"]
        );
        assert_eq!(
            shape(&make_monkey_saddle()),
            ["co[2,3]", "co[2,4]", "oo[1,5]"]
        );
        assert_eq!(
            shape(&make_pinched_monkey_saddle()),
            ["co[2,3]", "co[2,4]", "oo[1,4]"]
        );
        assert_eq!(shape(&make_double_tube()), ["cc[2,3]", "oo[1,4]"]);
        assert_eq!(
            shape(&make_merged_saddle_torus()),
            ["cc[2,2]", "cc[2,2]", "oo[1,3]"]
        );
        assert_eq!(shape(&make_capped_tube(3, false)), ["co[1,2]"]);
        assert_eq!(shape(&make_capped_tube(3, true)), ["oc[1,2]"]);
        assert_eq!(shape(&make_tube_with_sphere()), ["co[1,4]", "oo[2,3]"]);
    }

    #[test]
    fn coarse_extrema_violate_compatibility() {
        let (coarse, fine) = compatibility_pair();
        let ctx = coarse.context();
        let mut bad: Vec<Vec<u32>> = ctx
            .compatibility_violations()
            .into_iter()
            .filter(|&s| coarse.cx.dim_of(s) == 2)
            .map(|s| coarse.cx.simplex(s).vertices().to_vec())
            .collect();
        bad.sort();
        assert_eq!(bad, [vec![1, 2, 4], vec![1, 2, 5]]);
        assert!(fine.context().check_compatibility().is_ok());
        assert_eq!(fine.cx.count(2), 4 * coarse.cx.count(2));
    }

    #[test]
    fn seeded_fixtures_are_reproducible() {
        let a = icosahedron()
            .with_random_values(9)
            .with_random_weights(3, 5);
        let b = icosahedron()
            .with_random_values(9)
            .with_random_weights(3, 5);
        assert_eq!(a.f.values(), b.f.values());
        let w = |fx: &Fixture| {
            fx.cx
                .ids_of_dim(1)
                .map(|e| fx.cx.weight(e))
                .collect::<Vec<_>>()
        };
        assert_eq!(w(&a), w(&b));
    }
}

#![allow(dead_code)]

use lzcycles::complex::{Chain, SimplexSet};
use lzcycles::fixtures::Fixture;
use lzcycles::levelset::IntervalKind;
use lzcycles::mincut::{min_st_cut, ExtWeight, FlowGraph};
use lzcycles::optcycles::{candidate_components, fill_cofacets, Problem};
use lzcycles::zigzag::LevelsetInterval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Row = (&'static str, usize, usize, f64);

/// Optimal total weights computed by the exhaustive oracle, per fixture, as
/// `(type, b, d, weight)` sorted.
pub const FROZEN: &[(&str, &[Row])] = &[
    ("octahedron", &[("oo", 1, 2, 4.0)]),
    ("icosahedron", &[("oo", 1, 2, 5.0)]),
    (
        "merged-saddle-torus",
        &[("cc", 2, 2, 6.0), ("cc", 2, 2, 6.0), ("oo", 1, 3, 6.0)],
    ),
    (
        "monkey-saddle",
        &[("co", 2, 3, 6.0), ("co", 2, 4, 9.0), ("oo", 1, 5, 21.0)],
    ),
    (
        "monkey-saddle-pinched",
        &[("co", 2, 3, 6.0), ("co", 2, 4, 9.0), ("oo", 1, 4, 18.0)],
    ),
    ("double-tube", &[("cc", 2, 3, 11.0), ("oo", 1, 4, 20.0)]),
    ("capped-tube-3", &[("co", 1, 2, 6.0)]),
    ("hanging-tube-3", &[("oc", 1, 2, 6.0)]),
    ("tube-with-sphere", &[("co", 1, 4, 12.0), ("oo", 2, 3, 4.0)]),
    ("icosahedron-seed28-w1", &[("oo", 1, 2, 10.0)]),
    ("icosahedron-seed42-w2", &[("oo", 1, 2, 9.0)]),
    ("capped-tube-3-seed266-w3", &[("co", 1, 2, 17.0)]),
    ("capped-tube-3-seed174-w4", &[("oc", 1, 2, 22.0)]),
    ("double-tube-w5", &[("cc", 2, 3, 21.0), ("oo", 1, 4, 36.0)]),
    (
        "monkey-saddle-w6",
        &[("co", 2, 3, 15.0), ("co", 2, 4, 19.0), ("oo", 1, 5, 45.0)],
    ),
    (
        "merged-saddle-torus-w7",
        &[("cc", 2, 2, 9.0), ("cc", 2, 2, 11.0), ("oo", 1, 3, 12.0)],
    ),
];

pub fn frozen(name: &str) -> Option<&'static [(&'static str, usize, usize, f64)]> {
    FROZEN.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
}

pub fn key(iv: &LevelsetInterval, w: f64) -> (&'static str, usize, usize, f64) {
    (iv.kind.code(), iv.b, iv.d, w)
}

pub fn sorted(
    mut v: Vec<(&'static str, usize, usize, f64)>,
) -> Vec<(&'static str, usize, usize, f64)> {
    v.sort_by(|a, b| {
        (a.0, a.1, a.2)
            .cmp(&(b.0, b.1, b.2))
            .then(a.3.total_cmp(&b.3))
    });
    v
}

pub fn expected_cycles(iv: &LevelsetInterval) -> usize {
    match iv.kind {
        IntervalKind::OpenOpen => iv.d - iv.b,
        IntervalKind::ClosedOpen | IntervalKind::OpenClosed => iv.d - iv.b + 1,
        IntervalKind::ClosedClosed => iv.d - iv.b + 2,
    }
}

/// Draws `samples` finite cuts of the interval's networks by solving them
/// under random finite weights, and checks each pulled-back sequence.
/// Returns the number of cuts checked.
pub fn check_sampled_cuts(
    pb: &Problem,
    iv: &LevelsetInterval,
    samples: usize,
    seed: u64,
) -> Result<usize, String> {
    let red = pb.reduction(iv).map_err(|e| e.to_string())?;
    let opt = red.solve().map_err(|e| e.to_string())?.total_weight;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..samples {
        let g = red.network(r % red.terminals.len());
        let mut h = FlowGraph::new(g.num_vertices());
        for &(u, v, w) in g.edges() {
            let w = if w.is_infinite() {
                w
            } else {
                ExtWeight::finite(rng.random_range(1..=9) as f64)
            };
            h.add_edge(u, v, w);
        }
        h.set_terminals(g.sources().to_vec(), g.sinks().to_vec());
        let side = min_st_cut(&h).map_err(|e| e.to_string())?.source_side;
        let (w, _) = g.cut_of(&side);
        if w.is_infinite() {
            return Err(format!(
                "sample {r}: perturbed optimum crosses an infinite edge"
            ));
        }
        let seq = red
            .sequence_from_cut(&side)
            .ok_or_else(|| format!("sample {r}: finite cut not pulled back"))?;
        pb.verify(&seq).map_err(|e| format!("sample {r}: {e}"))?;
        if (seq.total_weight - w.fin).abs() > 1e-9 {
            return Err(format!(
                "sample {r}: weight {} vs cut {}",
                seq.total_weight, w.fin
            ));
        }
        if seq.total_weight < opt - 1e-9 {
            return Err(format!("sample {r}: beats the optimum"));
        }
    }
    Ok(samples)
}

/// Failed structural properties of one interval, by name.
pub fn structural_violations(pb: &Problem, iv: &LevelsetInterval) -> Vec<&'static str> {
    let ctx = &pb.ctx;
    let (cx, p) = (&ctx.cx, ctx.p);
    let mut out = Vec::new();
    if iv.kind.closed_birth() {
        let kb = pb.prefix(iv.beta);
        if !kb.is_subset_of(&ctx.range(iv.b - 1, false, iv.b, true)) {
            out.push("birth complex outside (b-1, b]");
        }
        let kbar = fill_cofacets(cx, p, &kb);
        if cx.cofaces(iv.creator).iter().any(|&t| kbar.contains(t)) {
            out.push("creator has a coface in the filled birth complex");
        }
        match candidate_components(pb, iv) {
            Ok((comps, h)) => {
                let with_creator = comps
                    .iter()
                    .filter(|c| c.boundary.contains(iv.creator))
                    .count();
                if iv.kind == IntervalKind::ClosedOpen && (h != 1 || with_creator != 1) {
                    out.push("closed-open needs exactly one creator component");
                }
                if h == 0 || !comps[..h].iter().all(|c| c.boundary.contains(iv.creator)) {
                    out.push("leading components miss the creator");
                }
            }
            Err(_) => out.push("components unavailable"),
        }
    }
    if iv.kind.closed_death() {
        let kd = pb.prefix(iv.delta);
        if !kd.is_subset_of(&ctx.range(iv.d, true, iv.d + 1, false)) {
            out.push("death complex outside [d, d+1)");
        }
    }
    if iv.kind == IntervalKind::OpenOpen {
        let tops: Vec<usize> = cx.ids_of_dim(p + 1).collect();
        let comp = cx
            .q_connected_components(&tops, |_| true)
            .into_iter()
            .find(|g| g.binary_search(&iv.creator).is_ok());
        match comp {
            None => out.push("creator outside every component"),
            Some(comp) => {
                let set = SimplexSet::from_ids(cx.len(), comp.iter().copied());
                let closed = Chain::from_ids(p + 1, comp.iter().copied());
                if !cx.boundary(&closed).is_empty() {
                    out.push("creator component is not closed");
                }
                if !iv.destroyer.is_some_and(|t| set.contains(t)) {
                    out.push("creator component misses the destroyer");
                }
            }
        }
    }
    out
}

pub fn named_problem(fx: &Fixture) -> Problem {
    fx.problem().unwrap_or_else(|e| panic!("{}: {e}", fx.name))
}

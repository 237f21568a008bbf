use lzcycles::complex::Chain;
use lzcycles::exec::Exec;
use lzcycles::fixtures::{self, Fixture};
use lzcycles::mincut::{min_st_cut, ExtWeight, FlowGraph};
use lzcycles::oracle::{brute_min_cut, brute_optimal_sequence};
use lzcycles::z2::homology_rank;
use lzcycles::zigzag::{levelset_barcode, validate_representatives};
use proptest::prelude::*;

fn base(k: usize) -> Fixture {
    match k % 4 {
        0 => fixtures::octahedron(),
        1 => fixtures::icosahedron(),
        2 => fixtures::make_capped_tube(3, false),
        _ => fixtures::make_torus(4, 4, (0.1, 0.05)),
    }
}

fn graph_strategy() -> impl Strategy<Value = FlowGraph> {
    (1usize..=10, 1usize..=3, 1usize..=3)
        .prop_flat_map(|(free, s, t)| {
            let n = free + s + t;
            let edge = (
                0..n,
                0..n,
                prop_oneof![9 => (0u32..10).prop_map(Some), 1 => Just(None)],
            );
            (Just((n, s, t)), proptest::collection::vec(edge, 0..3 * n))
        })
        .prop_map(|((n, s, t), edges)| {
            let mut g = FlowGraph::new(n);
            for (u, v, w) in edges {
                let w = w.map_or(ExtWeight::INFINITE, |w| ExtWeight::finite(w as f64));
                g.add_edge(u, v, w);
            }
            g.set_terminals((0..s).collect(), (s..s + t).collect());
            g
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(k in 0usize..4, picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        let fx = base(k);
        let tops: Vec<usize> = fx.cx.ids_of_dim(2).collect();
        let chain = Chain::from_ids(2, picks.iter().map(|i| tops[i.index(tops.len())]));
        let bd = fx.cx.boundary(&chain);
        prop_assert_eq!(bd.dim(), 1);
        prop_assert!(fx.cx.boundary(&bd).is_empty());
    }

    #[test]
    fn bar_multiplicity_matches_homology_rank(k in 0usize..4, seed in any::<u64>()) {
        let ctx = base(k).with_random_values(seed).context();
        let bc = levelset_barcode(&ctx).unwrap();
        let filt = &bc.filtration;
        validate_representatives(&ctx.cx, filt, &bc.zigzag).unwrap();
        for pos in 0..=filt.len() {
            let live = bc.zigzag.intervals.iter().filter(|b| b.beta <= pos && pos <= b.delta).count();
            prop_assert_eq!(live, homology_rank(&ctx.cx, &filt.complex_at(pos), ctx.p), "position {}", pos);
        }
    }

    #[test]
    fn dinic_matches_exhaustive_cut(g in graph_strategy()) {
        let fast = min_st_cut(&g).unwrap();
        let slow = brute_min_cut(&g, 20).unwrap();
        prop_assert_eq!(fast.weight.inf, slow.weight.inf);
        prop_assert!((fast.weight.fin - slow.weight.fin).abs() < 1e-9);
        prop_assert_eq!(g.cut_of(&fast.source_side).0, fast.weight);
    }

    #[test]
    fn solver_is_optimal_under_random_weights(k in 0usize..3, seed in any::<u64>(), max in 1u32..6) {
        let fx = base(k).with_random_weights(seed, max);
        let pb = fx.problem().unwrap();
        for (iv, res) in pb.intervals().iter().zip(pb.solve_all(Exec::Sequential)) {
            let seq = res.unwrap();
            prop_assert!(pb.verify(&seq).is_ok());
            prop_assert_eq!(seq.cycles.len(), iv.cycle_count());
            let best = brute_optimal_sequence(&pb, iv, 24, Exec::Sequential).unwrap().unwrap();
            prop_assert!((best.total_weight - seq.total_weight).abs() < 1e-9);
        }
    }
}

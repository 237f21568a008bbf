mod common;

use common::{expected_cycles, frozen, key, named_problem, sorted};
use lzcycles::exec::Exec;
use lzcycles::fixtures;
use lzcycles::levelset::IntervalKind;
use lzcycles::oracle::{brute_optimal_sequence, reconstruct_witness};

#[test]
fn solver_matches_frozen_optima() {
    for fx in fixtures::oracle_suite() {
        let pb = named_problem(&fx);
        let want = frozen(&fx.name).unwrap_or_else(|| panic!("{} has no frozen row", fx.name));
        let mut got = Vec::new();
        for (iv, res) in pb.intervals().iter().zip(pb.solve_all(Exec::Parallel)) {
            let seq = res.unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            pb.verify(&seq)
                .unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            assert_eq!(seq.cycles.len(), expected_cycles(iv), "{}", fx.name);
            got.push(key(iv, seq.total_weight));
        }
        assert_eq!(sorted(got), want.to_vec(), "{}", fx.name);
    }
}

#[test]
fn oracle_recomputes_frozen_optima() {
    for fx in fixtures::oracle_suite() {
        let pb = named_problem(&fx);
        let want = frozen(&fx.name).unwrap();
        let mut got = Vec::new();
        for iv in pb.intervals() {
            let seq = brute_optimal_sequence(&pb, &iv, 24, Exec::Parallel)
                .unwrap_or_else(|e| panic!("{}: {e}", fx.name))
                .unwrap_or_else(|| panic!("{}: no valid sequence", fx.name));
            got.push(key(&iv, seq.total_weight));
        }
        assert_eq!(sorted(got), want.to_vec(), "{}", fx.name);
    }
}

#[test]
fn solver_output_has_witness_chains() {
    for fx in fixtures::oracle_suite() {
        let pb = named_problem(&fx);
        for res in pb.solve_all(Exec::Sequential) {
            let seq = res.unwrap();
            let w = reconstruct_witness(&pb, &seq);
            assert!(
                w.is_some(),
                "{}: no witness for {:?}",
                fx.name,
                seq.interval
            );
        }
    }
}

#[test]
fn open_open_witness_chains_are_disjoint() {
    for fx in fixtures::oracle_suite() {
        let pb = named_problem(&fx);
        for res in pb.solve_all(Exec::Sequential) {
            let seq = res.unwrap();
            if seq.interval.kind != IntervalKind::OpenOpen {
                continue;
            }
            let chains = reconstruct_witness(&pb, &seq).unwrap();
            let mut all: Vec<usize> = chains
                .iter()
                .flat_map(|a| a.ids().iter().copied())
                .collect();
            let n = all.len();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), n, "{}: witness chains overlap", fx.name);
        }
    }
}

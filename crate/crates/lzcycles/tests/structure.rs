mod common;

use common::{check_sampled_cuts, named_problem, structural_violations};
use lzcycles::fixtures;
use lzcycles::levelset::IntervalKind;
use lzcycles::optcycles::candidate_components;

#[test]
fn named_fixtures_satisfy_structural_properties() {
    for fx in fixtures::named() {
        let pb = named_problem(&fx);
        for iv in pb.intervals() {
            let bad = structural_violations(&pb, &iv);
            assert!(
                bad.is_empty(),
                "{} {}[{},{}]: {bad:?}",
                fx.name,
                iv.kind.code(),
                iv.b,
                iv.d
            );
        }
    }
}

#[test]
fn component_counts() {
    let cases = [
        (
            fixtures::make_monkey_saddle(),
            IntervalKind::ClosedOpen,
            4,
            (2, 1),
        ),
        (
            fixtures::make_pinched_monkey_saddle(),
            IntervalKind::ClosedOpen,
            4,
            (2, 1),
        ),
        (
            fixtures::make_double_tube(),
            IntervalKind::ClosedClosed,
            3,
            (2, 2),
        ),
    ];
    for (fx, kind, d, want) in cases {
        let pb = named_problem(&fx);
        let iv = pb
            .intervals()
            .into_iter()
            .find(|iv| iv.kind == kind && iv.d == d)
            .unwrap();
        let (comps, h) = candidate_components(&pb, &iv).unwrap();
        assert_eq!((comps.len(), h), want, "{}", fx.name);
    }
    let pb = named_problem(&fixtures::make_merged_saddle_torus());
    for iv in pb
        .intervals()
        .into_iter()
        .filter(|iv| iv.kind == IntervalKind::ClosedClosed)
    {
        assert_eq!(candidate_components(&pb, &iv).unwrap().1, 2);
    }
}

#[test]
fn sampled_cuts_pull_back_to_valid_sequences() {
    for (i, fx) in fixtures::oracle_suite().into_iter().enumerate() {
        let pb = named_problem(&fx);
        for iv in pb.intervals() {
            check_sampled_cuts(&pb, &iv, 25, i as u64)
                .unwrap_or_else(|e| panic!("{}: {e}", fx.name));
        }
    }
}

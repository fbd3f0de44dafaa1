use dynds_cli::{random_trace, solve, structure_suite, OpTrace, Problem, SolveError, StructureId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn problem() -> impl Strategy<Value = Problem> {
    prop::sample::select(Problem::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_inverts_serialize(p in problem(), seed in any::<u64>(), size in 0usize..15) {
        let t = random_trace(p, &mut ChaCha8Rng::seed_from_u64(seed), size);
        let text = t.to_text();
        let back = OpTrace::parse(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn oracle_and_real_print_the_same(p in problem(), seed in any::<u64>(), size in 1usize..15) {
        let t = random_trace(p, &mut ChaCha8Rng::seed_from_u64(seed), size);
        let (a, b) = (solve(&t, StructureId::Oracle), solve(&t, StructureId::Real));
        prop_assert!(a.error.is_none(), "{:?}", a.error);
        prop_assert!(b.error.is_none(), "{:?}", b.error);
        prop_assert_eq!(a.lines, b.lines);
    }
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let a = OpTrace::parse("problem erickson\ncapacity 2\nEINC 1 1\nEMAX\n").unwrap();
    let b = OpTrace::parse("\n# header\nproblem erickson   # id\n\ncapacity 2\n  EINC 1 1\n# op\nEMAX\n").unwrap();
    assert_eq!(a, b);
}

#[test]
fn failing_op_keeps_earlier_answers() {
    let t = OpTrace::parse("problem color-count\nPINS 1 1 1\nPQRY 0 1 0 1\nPDEL 1 1 2\nPQRY 0 1 0 1\n").unwrap();
    for s in [StructureId::Oracle, StructureId::Real] {
        let r = solve(&t, s);
        assert_eq!(r.lines, vec!["1"]);
        assert!(matches!(r.error, Some(SolveError::Op { index: 2, .. })));
    }
}

#[test]
fn empty_ranges_are_rejected_by_both() {
    let t = OpTrace::parse("problem range-mode\nINS 1 0\nQRY 3 1\n").unwrap();
    for s in [StructureId::Oracle, StructureId::Real] {
        assert!(matches!(solve(&t, s).error, Some(SolveError::Op { index: 1, .. })));
    }
}

#[test]
fn structure_suite_is_clean() {
    let r = structure_suite(5, 100, &Problem::ALL);
    assert_eq!(r.mismatches, 0, "{:?}", r.repros);
    assert_eq!(r.lines.len(), Problem::ALL.len());
}

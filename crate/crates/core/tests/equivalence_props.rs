use cod_core::*;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn perm(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

fn op(p: usize, n: usize, k: u32, with_conj: bool) -> BoxedStrategy<EquivOp> {
    let mut choices = vec![
        perm(p).prop_map(EquivOp::RowPerm).boxed(),
        perm(n).prop_map(EquivOp::ColPerm).boxed(),
        (0..p).prop_map(EquivOp::RowNeg).boxed(),
        (0..n).prop_map(EquivOp::ColNeg).boxed(),
        (1..=k).prop_map(EquivOp::VarNeg).boxed(),
    ];
    if with_conj {
        choices.push((1..=k).prop_map(EquivOp::VarConj).boxed());
    }
    proptest::strategy::Union::new(choices).boxed()
}

fn ops(d: &Design, with_conj: bool) -> impl Strategy<Value = Vec<EquivOp>> {
    prop::collection::vec(op(d.rows(), d.cols(), d.vars(), with_conj), 1..12)
}

fn designs() -> Vec<Design> {
    vec![fixtures::d2(), construct_bcod(3).unwrap(), fixtures::alamouti()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn orthogonality_survives_every_op(
        (idx, seq) in (0usize..3).prop_flat_map(|idx| (Just(idx), ops(&designs()[idx], true)))
    ) {
        let out = apply_ops(&designs()[idx], &seq).unwrap();
        prop_assert!(is_cod(&out).is_cod(), "{}", format_ops(&seq));
    }

    #[test]
    fn balance_survives_ops_without_conjugation(seq in ops(&construct_bcod(3).unwrap(), false)) {
        let d = construct_bcod(3).unwrap();
        let out = apply_ops(&d, &seq).unwrap();
        let rep = is_bcod(&out).unwrap();
        prop_assert!(rep.holds(BcodCondition::ZeroCount));
        prop_assert!(rep.holds(BcodCondition::ConjugationSeparated));
        prop_assert!(rep.is_bcod(), "{}", format_ops(&seq));
    }

    #[test]
    fn inverse_ops_undo(seq in ops(&fixtures::d2(), true)) {
        let d = fixtures::d2();
        let out = apply_ops(&d, &seq).unwrap();
        let inverse: Vec<EquivOp> = seq.iter().rev().map(EquivOp::inverse).collect();
        prop_assert_eq!(apply_ops(&out, &inverse).unwrap(), d);
    }

    #[test]
    fn op_scripts_roundtrip(seq in ops(&construct_bcod(3).unwrap(), true)) {
        let text = format_ops(&seq);
        prop_assert_eq!(parse_ops(&text).unwrap(), seq);
    }

    #[test]
    fn standardize_reaches_standard_form(seq in ops(&construct_bcod(3).unwrap(), false)) {
        let d = apply_ops(&construct_bcod(3).unwrap(), &seq).unwrap();
        let (std_ops, out) = standardize(&d).unwrap();
        prop_assert_eq!(apply_ops(&d, &std_ops).unwrap(), out.clone());
        prop_assert!(is_standard_form(&out).unwrap().is_some());
        prop_assert!(verify_delay_bound(&d).unwrap().meets_with_equality());
    }

    #[test]
    fn column_restricted_detects_only_paired_swaps(cols in subsequence((0..3usize).collect::<Vec<_>>(), 0..=3)) {
        let seq: Vec<EquivOp> = cols.iter().map(|&i| EquivOp::col_swap(6, i, 3 + i)).collect();
        prop_assert!(is_column_restricted(&seq, 3));
        let mut bad = seq.clone();
        bad.push(EquivOp::col_swap(6, 0, 1));
        prop_assert!(!is_column_restricted(&bad, 3));
    }
}

#[test]
fn conjugating_one_variable_breaks_separation() {
    let d = fixtures::d2();
    let out = apply_op(&d, &EquivOp::VarConj(1)).unwrap();
    assert!(is_cod(&out).is_cod());
    let rep = is_bcod(&out).unwrap();
    assert!(!rep.holds(BcodCondition::ConjugationSeparated));
    assert!(rep.holds(BcodCondition::ZeroCount));
    // conjugating every variable restores separation
    let both = apply_op(&out, &EquivOp::VarConj(2)).unwrap();
    assert!(is_bcod(&both).unwrap().is_bcod());
}

use cod_core::*;

/// Proper nonempty row subsets that are CODs on their own.
fn cod_row_subsets(d: &Design) -> Vec<Vec<usize>> {
    let p = d.rows();
    (1u32..(1 << p) - 1)
        .map(|mask| (0..p).filter(|&r| mask >> r & 1 == 1).collect::<Vec<_>>())
        .filter(|rows| {
            let sub = d.select_rows(rows).unwrap();
            is_cod(&sub).is_cod()
        })
        .collect()
}

#[test]
fn connectivity_matches_row_subset_brute_force() {
    for m in 1..=3 {
        let d = construct_bcod(m).unwrap();
        assert!(is_atomic(&d).unwrap());
        assert!(cod_row_subsets(&d).is_empty(), "m={m}");
    }
    let d = fixtures::d2();
    assert!(is_atomic(&d).unwrap());
    assert!(cod_row_subsets(&d).is_empty());

    let d = fixtures::stacked_d2();
    assert!(!is_atomic(&d).unwrap());
    let subsets = cod_row_subsets(&d);
    assert_eq!(subsets, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
}

#[test]
fn larger_constructions_are_atomic() {
    for m in 4..=6 {
        assert!(is_atomic(&construct_bcod(m).unwrap()).unwrap(), "m={m}");
    }
}

#[test]
fn stacked_copies_split_into_cods() {
    let d = fixtures::stacked_d2();
    let comps = atomic_components(&d).unwrap();
    assert_eq!(comps.len(), 2);
    let mut rows: Vec<usize> = comps.iter().flat_map(|c| c.rows.clone()).collect();
    rows.sort_unstable();
    assert_eq!(rows, (0..8).collect::<Vec<_>>());
    for c in &comps {
        let sub = c.submatrix(&d).unwrap();
        assert!(is_cod(&sub).is_cod());
        assert!(is_bcod(&sub).unwrap().is_bcod());
        assert_eq!(sub, fixtures::d2());
    }
}

#[test]
fn non_balanced_designs_are_rejected() {
    for d in [fixtures::block_diagonal_d2(), fixtures::t_block(), fixtures::alamouti()] {
        assert_eq!(is_atomic(&d), Err(Error::NotBcod));
        assert_eq!(atomic_components(&d), Err(Error::NotBcod));
    }
}

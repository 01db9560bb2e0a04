//! Balanced-design axioms and the local 2×2 classification.

use std::fmt;

use crate::design::Design;
use crate::entry::Entry;
use crate::equivalence::{apply_op, bj_column_perm, find_bj_rows, EquivOp};
use crate::error::{Error, Result};
use crate::gram::is_cod;

/// Whether a row's nonzero entries are plain or conjugated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowClass {
    Plain,
    Conjugated,
}

impl RowClass {
    pub fn opposite(self) -> RowClass {
        match self {
            RowClass::Plain => RowClass::Conjugated,
            RowClass::Conjugated => RowClass::Plain,
        }
    }
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowClass::Plain => "non",
            RowClass::Conjugated => "conj",
        })
    }
}

pub fn row_class(d: &Design, row: usize) -> Result<RowClass> {
    d.check_row(row)?;
    let mut flags = d.row(row).iter().filter_map(|e| e.var_ref()).map(|v| v.conjugated);
    let first = flags.next().ok_or(Error::ZeroRow { row })?;
    if flags.any(|c| c != first) {
        return Err(Error::NotConjugationSeparated { row });
    }
    Ok(if first {
        RowClass::Conjugated
    } else {
        RowClass::Plain
    })
}

/// The four BCOD checks: the three defining conditions and the
/// occurrence balance they imply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcodCondition {
    /// Every row has exactly m zeros.
    ZeroCount,
    /// Every row is all-plain or all-conjugated.
    ConjugationSeparated,
    /// Every M_j block is skew-symmetric.
    SkewBlocks,
    /// `z_j` and `z_j*` each appear m times up to sign.
    OccurrenceBalance,
}

impl BcodCondition {
    pub const ALL: [BcodCondition; 4] = [
        BcodCondition::ZeroCount,
        BcodCondition::ConjugationSeparated,
        BcodCondition::SkewBlocks,
        BcodCondition::OccurrenceBalance,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BcodCondition::ZeroCount => "condition 1 (m zeros per row)",
            BcodCondition::ConjugationSeparated => "condition 2 (conjugation separated)",
            BcodCondition::SkewBlocks => "condition 3 (skew-symmetric M_j)",
            BcodCondition::OccurrenceBalance => "occurrence balance (z_j, z_j* each m times)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BcodViolation {
    RowZeroCount { row: usize, zeros: usize },
    MixedConjugation { row: usize },
    NoBjForm { var: u32, reason: String },
    NotSkew { var: u32 },
    OccurrenceCount { var: u32, conjugated: bool, count: usize },
}

impl BcodViolation {
    pub fn condition(&self) -> BcodCondition {
        match self {
            BcodViolation::RowZeroCount { .. } => BcodCondition::ZeroCount,
            BcodViolation::MixedConjugation { .. } => BcodCondition::ConjugationSeparated,
            BcodViolation::NoBjForm { .. } | BcodViolation::NotSkew { .. } => {
                BcodCondition::SkewBlocks
            }
            BcodViolation::OccurrenceCount { .. } => BcodCondition::OccurrenceBalance,
        }
    }
}

impl fmt::Display for BcodViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BcodViolation::RowZeroCount { row, zeros } => {
                write!(f, "row {} has {zeros} zeros", row + 1)
            }
            BcodViolation::MixedConjugation { row } => {
                write!(f, "row {} mixes plain and conjugated variables", row + 1)
            }
            BcodViolation::NoBjForm { var, reason } => write!(f, "no B_{var} form: {reason}"),
            BcodViolation::NotSkew { var } => write!(f, "M_{var} is not skew-symmetric"),
            BcodViolation::OccurrenceCount {
                var,
                conjugated,
                count,
            } => write!(
                f,
                "z{var}{} appears {count} times",
                if *conjugated { "*" } else { "" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcodReport {
    pub m: usize,
    pub violations: Vec<BcodViolation>,
}

impl BcodReport {
    pub fn is_bcod(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn holds(&self, condition: BcodCondition) -> bool {
        self.violations.iter().all(|v| v.condition() != condition)
    }

    pub fn violations_of(&self, condition: BcodCondition) -> impl Iterator<Item = &BcodViolation> {
        self.violations.iter().filter(move |v| v.condition() == condition)
    }
}

/// Check the balanced-design conditions on a COD `[2k, 2m, k]`.
///
/// Condition 3 is evaluated on the B_j form obtained by
/// [`bj_column_perm`], which pairs each plain column with its Diagonal 2×2
/// partner, and allows the row/column negations that keep the `z_j`
/// diagonal positive (so every equivalence operation except conjugating a
/// single variable preserves the verdict).
pub fn is_bcod(d: &Design) -> Result<BcodReport> {
    if !is_cod(d).is_cod() {
        return Err(Error::NotCod);
    }
    bcod_conditions(d)
}

/// [`is_bcod`] without the orthogonality precondition.
pub(crate) fn bcod_conditions(d: &Design) -> Result<BcodReport> {
    let (p, n, k) = (d.rows(), d.cols(), d.vars());
    if n % 2 != 0 || p != 2 * k as usize {
        return Err(Error::BcodShape { p, n, k });
    }
    let m = n / 2;
    let mut violations = Vec::new();

    for (r, row) in d.row_iter().enumerate() {
        let zeros = row.iter().filter(|e| e.is_zero()).count();
        if zeros != m {
            violations.push(BcodViolation::RowZeroCount { row: r, zeros });
        }
    }
    for r in 0..p {
        if let Err(Error::NotConjugationSeparated { .. }) = row_class(d, r) {
            violations.push(BcodViolation::MixedConjugation { row: r });
        }
    }
    for var in 1..=k {
        let skew = bj_column_perm(d, var)
            .and_then(|perm| apply_op(d, &EquivOp::ColPerm(perm)))
            .and_then(|moved| find_bj_rows(&moved, var));
        match skew {
            Ok(rep) if rep.skew_up_to_signs => {}
            Ok(_) => violations.push(BcodViolation::NotSkew { var }),
            Err(Error::NotBjCompatible { reason, .. }) => {
                violations.push(BcodViolation::NoBjForm { var, reason })
            }
            Err(e) => return Err(e),
        }
    }
    for var in 1..=k {
        let occ = d.variable_occurrences(var)?;
        for conjugated in [false, true] {
            let count = occ.iter().filter(|o| o.conjugated == conjugated).count();
            if count != m {
                violations.push(BcodViolation::OccurrenceCount {
                    var,
                    conjugated,
                    count,
                });
            }
        }
    }
    Ok(BcodReport { m, violations })
}

/// Shape of a 2×2 submatrix whose diagonal holds one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoByTwoClass {
    /// `(z_i z_j; -z_j* z_i*)` up to negation and conjugation.
    Alamouti,
    /// `(z_i 0; 0 z_i*)`.
    Diagonal,
    /// `(z_i 0; 0 z_i)`.
    Trivial,
    Other,
}

/// Classify rows `r1, r2` × columns `c1, c2`, where `(r1, c1)` and `(r2, c2)`
/// hold the same variable.
pub fn classify_2x2(d: &Design, r1: usize, r2: usize, c1: usize, c2: usize) -> Result<TwoByTwoClass> {
    d.check_row(r1)?;
    d.check_row(r2)?;
    d.check_col(c1)?;
    d.check_col(c2)?;
    let (x, w) = (d.get(r1, c1), d.get(r2, c2));
    let (y, u) = (d.get(r1, c2), d.get(r2, c1));
    let (xv, wv) = match (x.var_ref(), w.var_ref()) {
        (Some(a), Some(b)) if a.index == b.index && r1 != r2 && c1 != c2 => (a, b),
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "cells ({},{}) and ({},{}) do not hold a common variable",
                r1 + 1,
                c1 + 1,
                r2 + 1,
                c2 + 1
            )))
        }
    };
    Ok(match (y, u) {
        (Entry::Zero, Entry::Zero) if xv.conjugated != wv.conjugated => TwoByTwoClass::Diagonal,
        (Entry::Zero, Entry::Zero) => TwoByTwoClass::Trivial,
        (Entry::Var(yv), Entry::Var(uv)) if yv.index == uv.index && yv.index != xv.index => {
            // the two rows' contributions to gram(c1, c2) must cancel
            let mut g = crate::gram::GramEntry::default();
            g.add(crate::gram::QuadTerm::from_cells(x, y).expect("nonzero"));
            g.add(crate::gram::QuadTerm::from_cells(u, w).expect("nonzero"));
            if g.is_zero() {
                TwoByTwoClass::Alamouti
            } else {
                TwoByTwoClass::Other
            }
        }
        _ => TwoByTwoClass::Other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::parse_design;
    use crate::fixtures;

    #[test]
    fn positive_fixtures() {
        for d in [fixtures::base(), fixtures::d2(), fixtures::stacked_d2()] {
            let rep = is_bcod(&d).unwrap();
            assert!(rep.is_bcod(), "{d}\n{:?}", rep.violations);
        }
    }

    #[test]
    fn t_block_fails_skew_and_balance() {
        let rep = is_bcod(&fixtures::t_block()).unwrap();
        assert!(rep.holds(BcodCondition::ZeroCount));
        assert!(rep.holds(BcodCondition::ConjugationSeparated));
        assert!(!rep.holds(BcodCondition::SkewBlocks));
        assert!(!rep.holds(BcodCondition::OccurrenceBalance));
        assert!(rep.violations.contains(&BcodViolation::OccurrenceCount {
            var: 1,
            conjugated: true,
            count: 0
        }));
    }

    #[test]
    fn shape_and_precondition_errors() {
        assert!(matches!(is_bcod(&fixtures::alamouti()), Err(Error::BcodShape { p: 2, n: 2, k: 2 })));
        assert!(matches!(is_bcod(&fixtures::alamouti_sign_flipped()), Err(Error::NotCod)));
        let odd = parse_design("2 1 1\nz1\n0").unwrap();
        assert!(is_bcod(&odd).is_err());
    }

    #[test]
    fn separation_violation() {
        // conjugate z2 everywhere in D2: still a COD, rows now mix
        let d = crate::equivalence::apply_op(&fixtures::d2(), &crate::equivalence::EquivOp::VarConj(2)).unwrap();
        let rep = is_bcod(&d).unwrap();
        assert!(!rep.holds(BcodCondition::ConjugationSeparated));
        assert!(rep.holds(BcodCondition::ZeroCount));
    }

    #[test]
    fn row_classes() {
        let d2 = fixtures::d2();
        let classes: Vec<_> = (0..4).map(|r| row_class(&d2, r).unwrap()).collect();
        use RowClass::*;
        assert_eq!(classes, vec![Plain, Plain, Conjugated, Conjugated]);
        let zero = parse_design("2 2 1\nz1 z1\n0 0").unwrap();
        assert!(matches!(row_class(&zero, 1), Err(Error::ZeroRow { row: 1 })));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_2x2(&fixtures::alamouti(), 0, 1, 0, 1).unwrap(), TwoByTwoClass::Alamouti);
        assert_eq!(classify_2x2(&fixtures::base(), 0, 1, 0, 1).unwrap(), TwoByTwoClass::Diagonal);
        assert_eq!(classify_2x2(&fixtures::d2(), 0, 1, 0, 1).unwrap(), TwoByTwoClass::Trivial);
        assert_eq!(
            classify_2x2(&fixtures::alamouti_sign_flipped(), 0, 1, 0, 1).unwrap(),
            TwoByTwoClass::Other
        );
        // same block read on z2's diagonal
        assert_eq!(classify_2x2(&fixtures::alamouti(), 0, 1, 1, 0).unwrap(), TwoByTwoClass::Alamouti);
        // diagonal cells hold different variables
        assert!(classify_2x2(&fixtures::d2(), 0, 1, 0, 2).is_err());
        assert!(classify_2x2(&fixtures::d2(), 0, 0, 0, 1).is_err());
    }

    /// Brute force over row pairs: each occurrence of z_j sits in m-1 Trivial,
    /// m-1 Alamouti and one Diagonal 2x2.
    #[test]
    fn local_census_on_d2() {
        let d = fixtures::d2();
        let m = 2;
        for var in 1..=d.vars() {
            let occ = d.variable_occurrences(var).unwrap();
            for o in &occ {
                let mut counts = [0usize; 4];
                for q in occ.iter().filter(|q| q.row != o.row) {
                    let class = classify_2x2(&d, o.row, q.row, o.col, q.col).unwrap();
                    counts[class as usize] += 1;
                }
                assert_eq!(counts, [m - 1, 1, m - 1, 0], "z{var} at {:?}", (o.row, o.col));
            }
        }
    }
}

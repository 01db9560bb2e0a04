//! Zero patterns, left patterns, complements, the pattern-raising step and
//! the delay-bound census.
//!
//! Bit convention: bit `c` of a pattern is 1 iff the row's entry in column
//! `c` is **nonzero**. Patterns print leftmost column first.

use std::collections::BTreeMap;
use std::fmt;

use crate::bcod::{row_class, RowClass};
use crate::design::Design;
use crate::equivalence::{is_standard_form, standardize};
use crate::error::{Error, Result};

/// Support vector of length `len <= 64`; bit `c` is column `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    bits: u64,
    len: usize,
}

impl BitPattern {
    pub fn new(bits: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        BitPattern {
            bits: bits & mask,
            len,
        }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn flip(self, i: usize) -> Self {
        BitPattern::new(self.bits ^ (1 << i), self.len)
    }

    pub fn complement(self) -> Self {
        BitPattern::new(!self.bits, self.len)
    }

    /// Parse `"1001"` (leftmost character is bit 0).
    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > 64 {
            return None;
        }
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(BitPattern::new(bits, s.len()))
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub type ZeroPattern = BitPattern;
/// First `m` bits of a zero pattern; its weight is the left weight.
pub type LeftPattern = BitPattern;

pub fn zero_pattern(d: &Design, row: usize) -> Result<ZeroPattern> {
    d.check_row(row)?;
    if d.cols() > 64 {
        return Err(Error::PatternTooWide(d.cols()));
    }
    let bits = d
        .row(row)
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .fold(0u64, |acc, (c, _)| acc | 1 << c);
    Ok(BitPattern::new(bits, d.cols()))
}

pub fn left_pattern(d: &Design, row: usize) -> Result<LeftPattern> {
    let m = d.half_width().ok_or(Error::OddWidth(d.cols()))?;
    let full = zero_pattern(d, row)?;
    Ok(BitPattern::new(full.bits(), m))
}

fn variable_set(d: &Design, row: usize) -> Vec<u32> {
    let mut vars: Vec<u32> = d.row(row).iter().filter_map(|e| e.index()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// The row with complementary zero pattern, opposite conjugation and the
/// same variables.
pub fn find_complement(d: &Design, row: usize) -> Result<usize> {
    let pattern = zero_pattern(d, row)?;
    let class = row_class(d, row)?;
    let vars = variable_set(d, row);
    let candidates: Vec<usize> = (0..d.rows())
        .filter(|&r| {
            r != row
                && zero_pattern(d, r).is_ok_and(|p| p == pattern.complement())
                && row_class(d, r).is_ok_and(|c| c == class.opposite())
                && variable_set(d, r) == vars
        })
        .collect();
    match candidates[..] {
        [] => Err(Error::NoComplement { row }),
        [rc] => Ok(rc),
        _ => Err(Error::MultipleComplements { row, candidates }),
    }
}

/// From a row with left pattern `α` and columns `i != j` with
/// `α(i) = α(j) = 0`, find a row with left pattern `α ⊕ e_i ⊕ e_j` in the
/// same conjugation class. Columns are 0-based, both `< m`.
///
/// Reads the variable at column `m + i` of `row`, then returns the row
/// carrying that variable, in the same conjugation form, in column `j`.
pub fn induce_step(d: &Design, row: usize, i: usize, j: usize) -> Result<usize> {
    let m = d.half_width().ok_or(Error::OddWidth(d.cols()))?;
    d.check_row(row)?;
    let alpha = left_pattern(d, row)?;
    if i == j || i >= m || j >= m {
        return Err(Error::PreconditionViolated(format!(
            "columns {} and {} must be distinct and within 1..{m}",
            i + 1,
            j + 1
        )));
    }
    if alpha.weight() as usize + 2 > m {
        return Err(Error::PreconditionViolated(format!(
            "left weight {} exceeds m - 2 = {}",
            alpha.weight(),
            m as isize - 2
        )));
    }
    if alpha.get(i) || alpha.get(j) {
        return Err(Error::PreconditionViolated(format!(
            "left pattern {alpha} is not zero at columns {} and {}",
            i + 1,
            j + 1
        )));
    }
    match is_standard_form(d) {
        Ok(Some(_)) => {}
        Ok(None) | Err(Error::NotBcod) => return Err(Error::NotStandardForm),
        Err(e) => return Err(e),
    }
    let pivot = d.get(row, m + i).var_ref().ok_or_else(|| {
        Error::SearchFailed(format!("row {} is zero at column {}", row + 1, m + i + 1))
    })?;
    let target = (0..d.rows())
        .find(|&r| {
            d.get(r, j)
                .var_ref()
                .is_some_and(|v| v.index == pivot.index && v.conjugated == pivot.conjugated)
        })
        .ok_or_else(|| {
            Error::SearchFailed(format!("no row holds {} in column {}", pivot, j + 1))
        })?;
    let expected = alpha.flip(i).flip(j);
    if left_pattern(d, target)? != expected || row_class(d, target)? != row_class(d, row)? {
        return Err(Error::SearchFailed(format!(
            "row {} does not carry left pattern {expected}",
            target + 1
        )));
    }
    Ok(target)
}

/// Row counts per (left pattern, conjugation class).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub m: usize,
    pub counts: BTreeMap<(LeftPattern, RowClass), usize>,
}

impl Census {
    pub fn count(&self, pattern: LeftPattern, class: RowClass) -> usize {
        self.counts.get(&(pattern, class)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn has_pattern(&self, pattern: LeftPattern) -> bool {
        self.count(pattern, RowClass::Plain) + self.count(pattern, RowClass::Conjugated) > 0
    }
}

pub fn census(d: &Design) -> Result<Census> {
    let m = d.half_width().ok_or(Error::OddWidth(d.cols()))?;
    let mut out = Census {
        m,
        counts: BTreeMap::new(),
    };
    for r in 0..d.rows() {
        let key = (left_pattern(d, r)?, row_class(d, r)?);
        *out.counts.entry(key).or_default() += 1;
    }
    Ok(out)
}

/// One coverage requirement: a left pattern, optionally in a given class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageCheck {
    pub pattern: LeftPattern,
    pub class: Option<RowClass>,
    pub rows: usize,
}

impl CoverageCheck {
    pub fn holds(&self) -> bool {
        self.rows > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayBoundReport {
    pub m: usize,
    pub p: usize,
    /// `2^m`.
    pub bound: u64,
    /// Whether the design had to be brought into standard form first.
    pub standardized: bool,
    pub checks: Vec<CoverageCheck>,
}

impl DelayBoundReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CoverageCheck::holds) && self.p as u64 >= self.bound
    }

    pub fn meets_with_equality(&self) -> bool {
        self.passed() && self.p as u64 == self.bound
    }
}

/// Check the left-pattern coverage behind `2k >= 2^m`.
///
/// For odd `m` every one of the `2^m` left patterns must occur. For even
/// `m` every odd-weight left pattern must occur in both conjugation classes.
/// Left patterns depend on column order, so a design not already in
/// standard form is standardized before counting.
pub fn verify_delay_bound(d: &Design) -> Result<DelayBoundReport> {
    let standardized = is_standard_form(d)?.is_none();
    let std;
    let d = if standardized {
        std = standardize(d)?.1;
        &std
    } else {
        d
    };
    let c = census(d)?;
    let m = c.m;
    if m >= 64 {
        return Err(Error::PatternTooWide(d.cols()));
    }
    let all = (0..1u64 << m).map(|b| BitPattern::new(b, m));
    let checks = if m % 2 == 1 {
        all.map(|pattern| CoverageCheck {
            pattern,
            class: None,
            rows: c.count(pattern, RowClass::Plain) + c.count(pattern, RowClass::Conjugated),
        })
        .collect()
    } else {
        all.filter(|p| p.weight() % 2 == 1)
            .flat_map(|pattern| {
                [RowClass::Plain, RowClass::Conjugated].map(|class| CoverageCheck {
                    pattern,
                    class: Some(class),
                    rows: c.count(pattern, class),
                })
            })
            .collect()
    };
    Ok(DelayBoundReport {
        m,
        p: d.rows(),
        bound: 1 << m,
        standardized,
        checks,
    })
}

/// Radon–Hurwitz exponent: with `n = 8t + r`, `r ∈ 1..=8`,
/// `δ = 4t + {0, 1, 2, 2, 3, 3, 3, 3}[r - 1]`.
pub fn delta(n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::BoundDomain(n));
    }
    let t = (n - 1) / 8;
    let r = (n - 1) % 8 + 1;
    let offset = match r {
        1 => 0,
        2 => 1,
        3 | 4 => 2,
        _ => 3,
    };
    u32::try_from(4 * t + offset).map_err(|_| Error::Overflow)
}

/// `ν(n) = 2^δ(n)`, the real orthogonal design delay bound.
pub fn nu(n: usize) -> Result<u64> {
    1u64.checked_shl(delta(n)?).ok_or(Error::Overflow)
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow);
        }
    }
    Ok(acc as u64)
}

/// Minimum delay of a maximum-rate COD: with `m = ⌈n/2⌉`,
/// `C(2m, m+1)`, doubled when `n ≡ 2 (mod 4)`.
pub fn max_rate_delay_bound(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::BoundDomain(n));
    }
    let m = n.div_ceil(2) as u64;
    let base = binomial(2 * m, m + 1)?;
    if n % 4 == 2 {
        base.checked_mul(2).ok_or(Error::Overflow)
    } else {
        Ok(base)
    }
}

/// `2^m` for `n = 2m`; `None` for odd `n`.
pub fn bcod_delay_lower_bound(n: usize) -> Result<Option<u64>> {
    if n == 0 {
        return Err(Error::BoundDomain(n));
    }
    if n % 2 == 1 {
        return Ok(None);
    }
    1u64.checked_shl((n / 2) as u32).map(Some).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn bits(s: &str) -> BitPattern {
        BitPattern::parse(s).unwrap()
    }

    #[test]
    fn zero_patterns() {
        let d2 = fixtures::d2();
        assert_eq!(zero_pattern(&d2, 0).unwrap().to_string(), "1001");
        assert_eq!(zero_pattern(&d2, 2).unwrap().to_string(), "0110");
        assert_eq!(zero_pattern(&fixtures::base(), 0).unwrap().to_string(), "10");
        assert!(zero_pattern(&d2, 4).is_err());
    }

    #[test]
    fn left_patterns() {
        let d2 = fixtures::d2();
        let l = left_pattern(&d2, 0).unwrap();
        assert_eq!((l.to_string().as_str(), l.weight()), ("10", 1));
        let l = left_pattern(&d2, 2).unwrap();
        assert_eq!((l.to_string().as_str(), l.weight()), ("01", 1));
        let l = left_pattern(&fixtures::base(), 1).unwrap();
        assert_eq!((l.to_string().as_str(), l.weight()), ("0", 0));
        let odd = crate::design::parse_design("1 3 1\nz1 0 0").unwrap();
        assert!(matches!(left_pattern(&odd, 0), Err(Error::OddWidth(3))));
    }

    #[test]
    fn complements() {
        let d2 = fixtures::d2();
        assert_eq!(find_complement(&d2, 0).unwrap(), 2);
        assert_eq!(find_complement(&d2, 1).unwrap(), 3);
        assert_eq!(find_complement(&fixtures::base(), 0).unwrap(), 1);
        for r in 0..4 {
            assert_eq!(find_complement(&d2, find_complement(&d2, r).unwrap()).unwrap(), r);
        }
        assert!(matches!(
            find_complement(&fixtures::t_block(), 0),
            Err(Error::NoComplement { row: 0 })
        ));
        let doubled = crate::design::parse_design("3 2 1\nz1 0\n0 z1*\n0 -z1*").unwrap();
        assert!(matches!(
            find_complement(&doubled, 0),
            Err(Error::MultipleComplements { row: 0, .. })
        ));
    }

    #[test]
    fn induce_step_is_vacuous_on_d2() {
        let d2 = fixtures::d2();
        for r in 0..4 {
            assert!(matches!(induce_step(&d2, r, 0, 1), Err(Error::PreconditionViolated(_))));
        }
    }

    #[test]
    fn census_examples() {
        let c = census(&fixtures::d2()).unwrap();
        assert_eq!(c.total(), 4);
        for (p, class) in [
            ("10", RowClass::Plain),
            ("01", RowClass::Plain),
            ("01", RowClass::Conjugated),
            ("10", RowClass::Conjugated),
        ] {
            assert_eq!(c.count(bits(p), class), 1);
        }
        let c = census(&fixtures::base()).unwrap();
        assert_eq!(c.counts.len(), 2);
        assert_eq!(c.count(bits("1"), RowClass::Plain), 1);
        assert_eq!(c.count(bits("0"), RowClass::Conjugated), 1);
        let mixed = crate::equivalence::apply_op(&fixtures::d2(), &crate::equivalence::EquivOp::VarConj(2)).unwrap();
        assert!(matches!(census(&mixed), Err(Error::NotConjugationSeparated { .. })));
    }

    #[test]
    fn delay_bound_small() {
        let rep = verify_delay_bound(&fixtures::d2()).unwrap();
        assert!(rep.meets_with_equality());
        assert_eq!((rep.p, rep.bound, rep.checks.len()), (4, 4, 4));
        let rep = verify_delay_bound(&fixtures::base()).unwrap();
        assert!(rep.meets_with_equality());
        assert_eq!(rep.checks.len(), 2);
        assert!(matches!(verify_delay_bound(&fixtures::t_block()), Err(Error::NotBcod)));
        // the stacked copy has every pattern twice per class
        let rep = verify_delay_bound(&fixtures::stacked_d2()).unwrap();
        assert!(rep.passed() && !rep.meets_with_equality());
        assert!(!rep.standardized);
    }

    #[test]
    fn delay_bound_standardizes_first() {
        // a valid BCOD whose left patterns are 00 and 11 before standardizing
        let d: Design = "4 4 2\n0 0 z1 z2\n0 0 z2* -z1*\nz1 z2 0 0\nz2* -z1* 0 0".parse().unwrap();
        let raw = census(&d).unwrap();
        assert!(!raw.has_pattern(BitPattern::new(0b01, 2)));
        let rep = verify_delay_bound(&d).unwrap();
        assert!(rep.standardized);
        assert!(rep.meets_with_equality());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(2).unwrap(), 1);
        assert_eq!(delta(4).unwrap(), 2);
        assert_eq!(delta(8).unwrap(), 3);
        assert_eq!(nu(6).unwrap(), 8);
        assert!(delta(0).is_err());
    }

    #[test]
    fn delta_envelope() {
        let mut prev = 0;
        for n in 1..=64 {
            let d = delta(n).unwrap();
            assert!(d >= prev, "delta not monotone at {n}");
            // an orthogonal design needs at least as many rows as columns
            assert!(1u64 << d >= n as u64, "2^delta({n}) < n");
            prev = d;
        }
        for n in 1..=56 {
            assert_eq!(delta(n + 8).unwrap(), delta(n).unwrap() + 4);
        }
        // 2^delta(n) <= 2n does not hold in general
        assert_eq!(nu(10).unwrap(), 32);
    }

    #[test]
    fn max_rate_examples() {
        assert_eq!(max_rate_delay_bound(4).unwrap(), 4);
        assert_eq!(max_rate_delay_bound(6).unwrap(), 30);
        assert_eq!(max_rate_delay_bound(5).unwrap(), 15);
        assert_eq!(max_rate_delay_bound(2).unwrap(), 2);
        assert!(max_rate_delay_bound(1).is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![1u64];
        for n in 1..=40u64 {
            let mut next = vec![1u64; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64).unwrap(), v);
            }
        }
    }

    #[test]
    fn pattern_text() {
        let p = bits("1001");
        assert_eq!(p.complement().to_string(), "0110");
        assert_eq!(p.flip(1).to_string(), "1101");
        assert!(BitPattern::parse("102").is_none());
    }
}

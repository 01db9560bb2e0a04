//! Exact symbolic evaluation of `G^H G` and the orthogonality check.
//!
//! Each Gram entry `(a, b)` is the formal sum over rows of
//! `conj(G[r, a]) * G[r, b]`. Entries are ±monomials, so every product is a
//! signed quadratic term and cancellation is pairwise.

use std::cmp::Ordering;
use std::fmt;

use crate::design::Design;
use crate::entry::{Entry, Sign};

/// One factor of a quadratic term: `z_index` or `z_index*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub index: u32,
    pub conjugated: bool,
}

impl Factor {
    fn key(self) -> (u32, bool) {
        // conjugated sorts before plain
        (self.index, !self.conjugated)
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.index, if self.conjugated { "*" } else { "" })
    }
}

/// A signed product of two factors, stored with `left <= right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadTerm {
    pub left: Factor,
    pub right: Factor,
    pub sign: Sign,
}

impl QuadTerm {
    pub fn new(sign: Sign, a: Factor, b: Factor) -> Self {
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        QuadTerm { left, right, sign }
    }

    /// `|z_j|^2`, stored as `+ z_j* z_j`.
    pub fn square(index: u32) -> Self {
        QuadTerm::new(
            Sign::Plus,
            Factor {
                index,
                conjugated: true,
            },
            Factor {
                index,
                conjugated: false,
            },
        )
    }

    /// `conj(x) * y` for two nonzero cells.
    pub fn from_cells(x: Entry, y: Entry) -> Option<Self> {
        let (x, y) = (x.var_ref()?, y.var_ref()?);
        Some(QuadTerm::new(
            x.sign * y.sign,
            Factor {
                index: x.index,
                conjugated: !x.conjugated,
            },
            Factor {
                index: y.index,
                conjugated: y.conjugated,
            },
        ))
    }

    pub fn is_square(&self) -> bool {
        self.left.index == self.right.index && self.left.conjugated != self.right.conjugated
    }

    fn same_monomial(&self, other: &QuadTerm) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl fmt::Display for QuadTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} {}", self.sign.as_char(), self.left, self.right)
    }
}

/// A fully cancelled multiset of quadratic terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GramEntry {
    terms: Vec<QuadTerm>,
}

impl GramEntry {
    /// Add a term, cancelling it against an opposite-sign copy if one is stored.
    pub fn add(&mut self, term: QuadTerm) {
        if let Some(pos) = self
            .terms
            .iter()
            .position(|t| t.same_monomial(&term) && t.sign != term.sign)
        {
            self.terms.remove(pos);
        } else {
            let at = self.terms.partition_point(|t| *t <= term);
            self.terms.insert(at, term);
        }
    }

    pub fn terms(&self) -> &[QuadTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored copies of `term` (same sign and monomial).
    pub fn multiplicity(&self, term: &QuadTerm) -> usize {
        self.terms.iter().filter(|t| *t == term).count()
    }
}

impl fmt::Display for GramEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.terms.len() {
            let t = self.terms[i];
            let count = self.terms[i..].iter().take_while(|u| **u == t).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(if t.sign.is_negative() { "-" } else { "+" })?;
            if count > 1 {
                write!(f, "{count}·")?;
            }
            write!(f, "{} {}", t.left, t.right)?;
            i += count;
        }
        Ok(())
    }
}

/// The n×n symbolic Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<GramEntry>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> &GramEntry {
        &self.entries[a * self.n + b]
    }
}

pub fn gram(d: &Design) -> GramMatrix {
    let n = d.cols();
    let mut entries = vec![GramEntry::default(); n * n];
    for row in d.row_iter() {
        for (a, &x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, &y) in row.iter().enumerate() {
                if let Some(t) = QuadTerm::from_cells(x, y) {
                    entries[a * n + b].add(t);
                }
            }
        }
    }
    GramMatrix { n, entries }
}

/// A failure of `G^H G = I_n (|z_1|^2 + ... + |z_k|^2)`. Positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodViolation {
    /// Off-diagonal `(a, b)` with `a < b` does not cancel.
    OffDiagonal { a: usize, b: usize, residual: GramEntry },
    /// Column `col` lacks `|z_var|^2` on the diagonal.
    MissingSquare { col: usize, var: u32 },
    /// Column `col` carries `|z_var|^2` more than once.
    DuplicatedSquare { col: usize, var: u32, count: usize },
}

impl fmt::Display for CodViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodViolation::OffDiagonal { a, b, residual } => {
                write!(f, "off-diagonal ({},{}) = {residual}", a + 1, b + 1)
            }
            CodViolation::MissingSquare { col, var } => {
                write!(f, "column {} missing |z{var}|^2", col + 1)
            }
            CodViolation::DuplicatedSquare { col, var, count } => {
                write!(f, "column {} has |z{var}|^2 {count} times", col + 1)
            }
        }
    }
}

/// Findings that do not break orthogonality but are suspicious.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodWarning {
    ZeroRow { row: usize },
    RepeatedVariable { row: usize, var: u32 },
}

impl fmt::Display for CodWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodWarning::ZeroRow { row } => write!(f, "row {} is all zeros", row + 1),
            CodWarning::RepeatedVariable { row, var } => {
                write!(f, "row {} uses z{var} more than once", row + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodReport {
    pub violations: Vec<CodViolation>,
    pub warnings: Vec<CodWarning>,
}

impl CodReport {
    pub fn is_cod(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_cod(d: &Design) -> CodReport {
    let g = gram(d);
    let n = d.cols();
    let mut report = CodReport::default();
    for a in 0..n {
        for b in a + 1..n {
            let e = g.get(a, b);
            if !e.is_zero() {
                report.violations.push(CodViolation::OffDiagonal {
                    a,
                    b,
                    residual: e.clone(),
                });
            }
        }
    }
    for col in 0..n {
        let diag = g.get(col, col);
        for var in 1..=d.vars() {
            match diag.multiplicity(&QuadTerm::square(var)) {
                0 => report.violations.push(CodViolation::MissingSquare { col, var }),
                1 => {}
                count => report
                    .violations
                    .push(CodViolation::DuplicatedSquare { col, var, count }),
            }
        }
    }
    for (r, row) in d.row_iter().enumerate() {
        if row.iter().all(|e| e.is_zero()) {
            report.warnings.push(CodWarning::ZeroRow { row: r });
        }
        let mut seen = vec![false; d.vars() as usize + 1];
        for j in row.iter().filter_map(|e| e.index()) {
            if std::mem::replace(&mut seen[j as usize], true) {
                report.warnings.push(CodWarning::RepeatedVariable { row: r, var: j });
            }
        }
    }
    report
}

//! Equivalence operations on designs, B_j form detection and the
//! column-restricted reduction between B_j forms.

mod bj;
mod reduce;

use std::fmt;

use crate::design::Design;
use crate::entry::Entry;
use crate::error::{Error, Result};

pub use bj::{bj_column_perm, find_bj_rows, BjReport};
pub use reduce::{is_standard_form, standardize, to_bj_form};

/// One equivalence operation. Rows and columns are 0-based; variables are labels.
///
/// Permutations are given as "new position i takes old position perm[i]".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EquivOp {
    RowPerm(Vec<usize>),
    ColPerm(Vec<usize>),
    RowNeg(usize),
    ColNeg(usize),
    VarConj(u32),
    VarNeg(u32),
}

impl EquivOp {
    /// Column permutation exchanging `a` and `b`.
    pub fn col_swap(n: usize, a: usize, b: usize) -> EquivOp {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        EquivOp::ColPerm(perm)
    }

    pub fn inverse(&self) -> EquivOp {
        match self {
            EquivOp::RowPerm(p) => EquivOp::RowPerm(invert(p)),
            EquivOp::ColPerm(p) => EquivOp::ColPerm(invert(p)),
            other => other.clone(),
        }
    }
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn check_perm(perm: &[usize], len: usize, what: &str) -> Result<()> {
    if perm.len() != len {
        return Err(Error::InvalidOp(format!(
            "{what} permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidOp(format!("{what} permutation {perm:?} is not a bijection")));
        }
    }
    Ok(())
}

pub fn apply_op(d: &Design, op: &EquivOp) -> Result<Design> {
    let (p, n) = (d.rows(), d.cols());
    let mut out = d.clone();
    match op {
        EquivOp::RowPerm(perm) => {
            check_perm(perm, p, "row")?;
            let cells = out.cells_mut();
            for (i, &src) in perm.iter().enumerate() {
                cells[i * n..(i + 1) * n].copy_from_slice(d.row(src));
            }
        }
        EquivOp::ColPerm(perm) => {
            check_perm(perm, n, "column")?;
            let cells = out.cells_mut();
            for r in 0..p {
                for (i, &src) in perm.iter().enumerate() {
                    cells[r * n + i] = d.get(r, src);
                }
            }
        }
        EquivOp::RowNeg(r) => {
            d.check_row(*r)?;
            for e in &mut out.cells_mut()[r * n..(r + 1) * n] {
                *e = e.negated();
            }
        }
        EquivOp::ColNeg(c) => {
            d.check_col(*c)?;
            for r in 0..p {
                let e = &mut out.cells_mut()[r * n + c];
                *e = e.negated();
            }
        }
        EquivOp::VarConj(j) | EquivOp::VarNeg(j) => {
            d.check_var(*j)?;
            let conj = matches!(op, EquivOp::VarConj(_));
            for e in out.cells_mut() {
                if let Entry::Var(v) = e {
                    if v.index == *j {
                        *v = if conj { v.conjugate() } else { v.negated() };
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Left-to-right composition of [`apply_op`].
pub fn apply_ops<'a>(d: &Design, ops: impl IntoIterator<Item = &'a EquivOp>) -> Result<Design> {
    let mut cur = d.clone();
    for op in ops {
        cur = apply_op(&cur, op)?;
    }
    Ok(cur)
}

/// True iff every column permutation in `ops` is a single transposition
/// `(i, m + i)` with `i < m`.
pub fn is_column_restricted(ops: &[EquivOp], m: usize) -> bool {
    ops.iter().all(|op| match op {
        EquivOp::ColPerm(perm) => {
            let moved: Vec<usize> = (0..perm.len()).filter(|&i| perm[i] != i).collect();
            matches!(moved[..], [a, b] if a < m && b == a + m && perm[a] == b && perm[b] == a)
        }
        _ => true,
    })
}

impl fmt::Display for EquivOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm = |f: &mut fmt::Formatter<'_>, name: &str, p: &[usize]| {
            f.write_str(name)?;
            for i in p {
                write!(f, " {}", i + 1)?;
            }
            Ok(())
        };
        match self {
            EquivOp::RowPerm(p) => perm(f, "rowperm", p),
            EquivOp::ColPerm(p) => perm(f, "colperm", p),
            EquivOp::RowNeg(r) => write!(f, "rowneg {}", r + 1),
            EquivOp::ColNeg(c) => write!(f, "colneg {}", c + 1),
            EquivOp::VarConj(j) => write!(f, "varconj {j}"),
            EquivOp::VarNeg(j) => write!(f, "varneg {j}"),
        }
    }
}

/// One op per line, 1-based, e.g. `rowperm 2 1 3 4` or `varconj 1`.
pub fn format_ops(ops: &[EquivOp]) -> String {
    ops.iter().map(|op| format!("{op}\n")).collect()
}

/// Inverse of [`format_ops`]. Blank lines and `#` comments are skipped.
pub fn parse_ops(text: &str) -> Result<Vec<EquivOp>> {
    let mut ops = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::MalformedOp {
            line: i + 1,
            text: line.to_string(),
        };
        let mut words = line.split_whitespace();
        let name = words.next().ok_or_else(bad)?;
        let args: Vec<usize> = words
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if args.contains(&0) {
            return Err(bad());
        }
        let zero_based = || args.iter().map(|a| a - 1).collect::<Vec<_>>();
        let single = || match args[..] {
            [a] => Ok(a),
            _ => Err(bad()),
        };
        let op = match name {
            "rowperm" => EquivOp::RowPerm(zero_based()),
            "colperm" => EquivOp::ColPerm(zero_based()),
            "rowneg" => EquivOp::RowNeg(single()? - 1),
            "colneg" => EquivOp::ColNeg(single()? - 1),
            "varconj" => EquivOp::VarConj(u32::try_from(single()?).map_err(|_| bad())?),
            "varneg" => EquivOp::VarNeg(u32::try_from(single()?).map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        ops.push(op);
    }
    Ok(ops)
}

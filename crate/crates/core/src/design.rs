//! The design grid and its text format.
//!
//! Rows and columns are 0-based positions in the API; variables keep their
//! 1-based labels. The text format is
//!
//! ```text
//! # comment
//! p n k
//! <n tokens>   (p lines)
//! ```
//!
//! with tokens `0`, `z<i>`, `z<i>*`, `-z<i>`, `-z<i>*`.

use std::fmt;
use std::str::FromStr;

use crate::entry::{Entry, Sign};
use crate::error::{Error, Result};

/// A p×n grid over `{0, ±z_j, ±z_j*}` with `k` declared variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Design {
    p: usize,
    n: usize,
    k: u32,
    cells: Vec<Entry>,
}

/// One cell holding a given variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub row: usize,
    pub col: usize,
    pub sign: Sign,
    pub conjugated: bool,
}

impl Design {
    /// Build from row vectors, checking every design invariant.
    pub fn new(k: u32, rows: Vec<Vec<Entry>>) -> Result<Self> {
        let p = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {}",
                r + 1,
                row.len(),
                n
            )));
        }
        Design::from_cells(p, n, k, rows.into_iter().flatten().collect())
    }

    pub fn from_cells(p: usize, n: usize, k: u32, cells: Vec<Entry>) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(Error::DimensionMismatch(format!(
                "empty design ({p}x{n})"
            )));
        }
        if cells.len() != p * n {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {p}x{n} grid",
                cells.len()
            )));
        }
        let mut used = vec![false; k as usize + 1];
        for index in cells.iter().filter_map(|e| e.index()) {
            if index == 0 || index > k {
                return Err(Error::VarIndexOutOfRange { index, k });
            }
            used[index as usize] = true;
        }
        if let Some(index) = (1..=k).find(|&j| !used[j as usize]) {
            return Err(Error::UnusedVariable { index });
        }
        Ok(Design { p, n, k, cells })
    }

    /// Row count `p`.
    pub fn rows(&self) -> usize {
        self.p
    }

    /// Column count `n`.
    pub fn cols(&self) -> usize {
        self.n
    }

    /// Declared variable count `k`.
    pub fn vars(&self) -> u32 {
        self.k
    }

    /// `m = n / 2`, or `None` when `n` is odd.
    pub fn half_width(&self) -> Option<usize> {
        (self.n % 2 == 0).then_some(self.n / 2)
    }

    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Entry]> + '_ {
        self.cells.chunks(self.n)
    }

    pub fn cells(&self) -> &[Entry] {
        &self.cells
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [Entry] {
        &mut self.cells
    }

    pub(crate) fn check_row(&self, row: usize) -> Result<()> {
        if row >= self.p {
            return Err(Error::IndexOutOfRange {
                what: "row",
                index: row,
                bound: self.p,
            });
        }
        Ok(())
    }

    pub(crate) fn check_col(&self, col: usize) -> Result<()> {
        if col >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: col,
                bound: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_var(&self, var: u32) -> Result<()> {
        if var == 0 || var > self.k {
            return Err(Error::VarIndexOutOfRange {
                index: var,
                k: self.k,
            });
        }
        Ok(())
    }

    /// Every cell holding variable `var`, in row-major order.
    pub fn variable_occurrences(&self, var: u32) -> Result<Vec<Occurrence>> {
        self.check_var(var)?;
        Ok(self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e {
                Entry::Var(v) if v.index == var => Some(Occurrence {
                    row: i / self.n,
                    col: i % self.n,
                    sign: v.sign,
                    conjugated: v.conjugated,
                }),
                _ => None,
            })
            .collect())
    }

    /// Sub-design on the given rows and columns, with the surviving variables
    /// relabelled `1..k'` in order of their original index.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Result<Design> {
        for &r in rows {
            self.check_row(r)?;
        }
        for &c in cols {
            self.check_col(c)?;
        }
        let mut present = vec![false; self.k as usize + 1];
        for &r in rows {
            for &c in cols {
                if let Some(j) = self.get(r, c).index() {
                    present[j as usize] = true;
                }
            }
        }
        let mut relabel = vec![0u32; self.k as usize + 1];
        let mut next = 0;
        for j in 1..=self.k as usize {
            if present[j] {
                next += 1;
                relabel[j] = next;
            }
        }
        let cells = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| match self.get(r, c) {
                Entry::Zero => Entry::Zero,
                Entry::Var(v) => Entry::var(relabel[v.index as usize], v.sign, v.conjugated),
            })
            .collect();
        Design::from_cells(rows.len(), cols.len(), next, cells)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Design> {
        let cols: Vec<usize> = (0..self.n).collect();
        self.restrict(rows, &cols)
    }
}

/// Parse the text format. Checks syntax and the design invariants only;
/// orthogonality is left to [`crate::gram::is_cod`].
pub fn parse_design(text: &str) -> Result<Design> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::BadHeader { line: 1 })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::BadHeader { line: header_line })?;
    let [p, n, k] = dims[..] else {
        return Err(Error::BadHeader { line: header_line });
    };
    let k = u32::try_from(k).map_err(|_| Error::BadHeader { line: header_line })?;

    let mut cells = Vec::with_capacity(p * n);
    let mut row_count = 0;
    for (line, text) in lines {
        row_count += 1;
        if row_count > p {
            return Err(Error::DimensionMismatch(format!(
                "line {line}: more than the declared {p} rows"
            )));
        }
        let before = cells.len();
        for token in text.split_whitespace() {
            let entry: Entry = token.parse().map_err(|_| Error::MalformedToken {
                line,
                token: token.to_string(),
            })?;
            cells.push(entry);
        }
        if cells.len() - before != n {
            return Err(Error::DimensionMismatch(format!(
                "line {line}: {} tokens, expected {n}",
                cells.len() - before
            )));
        }
    }
    if row_count != p {
        return Err(Error::DimensionMismatch(format!(
            "{row_count} rows, header declares {p}"
        )));
    }
    Design::from_cells(p, n, k, cells)
}

/// Canonical text: header, then one line per row, single spaces, no trailing newline.
pub fn serialize_design(d: &Design) -> String {
    d.to_string()
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.p, self.n, self.k)?;
        for row in self.row_iter() {
            f.write_str("\n")?;
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_design(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_examples() {
        let base = parse_design("2 2 1\nz1 0\n0 z1*").unwrap();
        assert_eq!((base.rows(), base.cols(), base.vars()), (2, 2, 1));
        assert_eq!(base.get(1, 1), Entry::conj(1));

        let alamouti = parse_design("2 2 2\nz1 z2\n-z2* z1*").unwrap();
        assert_eq!(alamouti.get(1, 0), Entry::var(2, Sign::Minus, true));

        // syntax only: a zero row is fine here
        assert!(parse_design("2 2 1\nz1 z1\n0 0").is_ok());
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_design(&fixtures::base()), "2 2 1\nz1 0\n0 z1*");
        assert_eq!(serialize_design(&fixtures::alamouti()), "2 2 2\nz1 z2\n-z2* z1*");
        assert_eq!(
            serialize_design(&fixtures::d2()),
            "4 4 2\nz1 0 0 z2\n0 z1 -z2 0\n0 z2* z1* 0\n-z2* 0 0 z1*"
        );
    }

    #[test]
    fn comments_and_spacing() {
        let d = parse_design("# base design\n\n  2 2 1\n z1   0 \n# between\n0\tz1*\n").unwrap();
        assert_eq!(d, fixtures::base());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_design(""), Err(Error::BadHeader { .. })));
        assert!(matches!(parse_design("2 2\nz1 0\n0 z1*"), Err(Error::BadHeader { .. })));
        assert!(matches!(
            parse_design("2 2 1\nz1 x\n0 z1*"),
            Err(Error::MalformedToken { line: 2, .. })
        ));
        assert!(matches!(parse_design("2 2 1\nz1 0 0\n0 z1*"), Err(Error::DimensionMismatch(_))));
        assert!(matches!(parse_design("2 2 1\nz1 0"), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            parse_design("2 2 1\nz1 0\n0 z1*\nz1 0"),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            parse_design("2 2 1\nz0 0\n0 z1*"),
            Err(Error::VarIndexOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            parse_design("2 2 1\nz2 0\n0 z1*"),
            Err(Error::VarIndexOutOfRange { index: 2, k: 1 })
        ));
        assert!(matches!(
            parse_design("2 2 2\nz1 0\n0 z1*"),
            Err(Error::UnusedVariable { index: 2 })
        ));
    }

    #[test]
    fn occurrences() {
        let occ = |d: &Design, j| {
            d.variable_occurrences(j)
                .unwrap()
                .into_iter()
                .map(|o| (o.row + 1, o.col + 1, o.sign, o.conjugated))
                .collect::<Vec<_>>()
        };
        use Sign::*;
        assert_eq!(occ(&fixtures::base(), 1), vec![(1, 1, Plus, false), (2, 2, Plus, true)]);
        assert_eq!(
            occ(&fixtures::d2(), 2),
            vec![(1, 4, Plus, false), (2, 3, Minus, false), (3, 2, Plus, true), (4, 1, Minus, true)]
        );
        assert_eq!(occ(&fixtures::alamouti(), 2), vec![(1, 2, Plus, false), (2, 1, Minus, true)]);
        assert!(fixtures::base().variable_occurrences(2).is_err());
        assert!(fixtures::base().variable_occurrences(0).is_err());
    }

    #[test]
    fn restrict_relabels() {
        let stack = fixtures::stacked_d2();
        let lower = stack.select_rows(&[4, 5, 6, 7]).unwrap();
        assert_eq!(lower, fixtures::d2());
    }
}

use crate::design::Design;
use crate::entry::{Entry, Sign};
use crate::error::{Error, Result};

/// The rows of a design that exhibit the block structure
///
/// ```text
/// ( z_j I_n1    M_j      )
/// ( -M_j^H      z_j* I_n2 )
/// ```
///
/// up to a row permutation and row negations (reported, not applied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BjReport {
    pub var: u32,
    /// `top_rows[i]` holds `±z_j` in column `i`.
    pub top_rows: Vec<usize>,
    /// `bottom_rows[i]` holds `±z_j*` in column `n1 + i`.
    pub bottom_rows: Vec<usize>,
    pub n1: usize,
    pub n2: usize,
    /// `M_j`, read from the top rows after normalizing their diagonal to `+z_j`.
    pub mj: Vec<Vec<Entry>>,
    /// `M_j^T = -M_j`.
    pub skew: bool,
    /// `D M_j` is skew-symmetric for some ±1 diagonal `D`, i.e. the block
    /// becomes skew after negating some top rows together with their
    /// diagonal columns. Unlike `skew`, this survives column negations.
    pub skew_up_to_signs: bool,
    /// Signs on the `z_j` diagonal (top rows first, then bottom rows).
    pub diag_signs: Vec<Sign>,
    /// The identity blocks are clean and the lower-left block equals `-M_j^H`.
    pub block_form: bool,
}

impl BjReport {
    pub fn has_positive_diagonal(&self) -> bool {
        self.diag_signs.iter().all(|s| !s.is_negative())
    }
}

fn incompatible(var: u32, reason: impl Into<String>) -> Error {
    Error::NotBjCompatible {
        var,
        reason: reason.into(),
    }
}

/// Locate the B_j block of `d` without moving any column.
///
/// Succeeds iff the plain occurrences of `z_j` sit one per column in
/// `0..n1` and the conjugated ones one per column in `n1..n`.
pub fn find_bj_rows(d: &Design, var: u32) -> Result<BjReport> {
    let n = d.cols();
    let occ = d.variable_occurrences(var)?;
    if occ.len() != n {
        return Err(incompatible(
            var,
            format!("{} occurrences, expected one per column ({n})", occ.len()),
        ));
    }
    let n1 = occ.iter().filter(|o| !o.conjugated).count();
    let n2 = n - n1;
    let mut top: Vec<Option<(usize, Sign)>> = vec![None; n1];
    let mut bottom: Vec<Option<(usize, Sign)>> = vec![None; n2];
    let mut row_used = vec![false; d.rows()];
    for o in &occ {
        if std::mem::replace(&mut row_used[o.row], true) {
            return Err(incompatible(var, format!("row {} holds it twice", o.row + 1)));
        }
        let slot = match (o.conjugated, o.col < n1) {
            (false, true) => &mut top[o.col],
            (true, false) => &mut bottom[o.col - n1],
            (false, false) => {
                return Err(incompatible(
                    var,
                    format!("plain occurrence in column {}, outside 1..{n1}", o.col + 1),
                ))
            }
            (true, true) => {
                return Err(incompatible(
                    var,
                    format!("conjugated occurrence in column {}, inside 1..{n1}", o.col + 1),
                ))
            }
        };
        if slot.replace((o.row, o.sign)).is_some() {
            return Err(incompatible(var, format!("column {} holds it twice", o.col + 1)));
        }
    }
    // n occurrences, one per column: every slot is filled
    let top: Vec<(usize, Sign)> = top.into_iter().flatten().collect();
    let bottom: Vec<(usize, Sign)> = bottom.into_iter().flatten().collect();

    let mj: Vec<Vec<Entry>> = top
        .iter()
        .map(|&(r, s)| (0..n2).map(|y| d.get(r, n1 + y).signed(s)).collect())
        .collect();
    let skew = n1 == n2 && (0..n1).all(|x| (0..n2).all(|y| mj[x][y] == -mj[y][x]));
    let skew_up_to_signs = skew || skew_gauge(&mj).is_some();

    let clean_top = top.iter().enumerate().all(|(x, &(r, _))| {
        (0..n1).all(|c| c == x || d.get(r, c).is_zero())
    });
    let clean_bottom = bottom.iter().enumerate().all(|(y, &(r, _))| {
        (0..n2).all(|c| c == y || d.get(r, n1 + c).is_zero())
    });
    let lower_ok = bottom.iter().enumerate().all(|(y, &(r, s))| {
        (0..n1).all(|x| d.get(r, x).signed(s) == -mj[x][y].conjugate())
    });

    Ok(BjReport {
        var,
        top_rows: top.iter().map(|t| t.0).collect(),
        bottom_rows: bottom.iter().map(|b| b.0).collect(),
        n1,
        n2,
        mj,
        skew,
        skew_up_to_signs,
        diag_signs: top.iter().chain(&bottom).map(|t| t.1).collect(),
        block_form: clean_top && clean_bottom && lower_ok,
    })
}

/// Signs `e` with `M[a][b] = -e_a e_b M[b][a]` for all `a, b`, so that
/// `diag(e) M` is skew-symmetric; `None` if no such signs exist or `M` is
/// not square. Each connected group of indices starts from `+`.
pub(crate) fn skew_gauge(mj: &[Vec<Entry>]) -> Option<Vec<Sign>> {
    let n = mj.len();
    if mj.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut e: Vec<Option<Sign>> = vec![None; n];
    for start in 0..n {
        if e[start].is_some() {
            continue;
        }
        e[start] = Some(Sign::Plus);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            let ea = e[a].expect("assigned before push");
            for b in 0..n {
                if b == a || e[b].is_some() || mj[a][b].is_zero() {
                    continue;
                }
                let rel = if mj[a][b] == -mj[b][a] {
                    Sign::Plus
                } else if mj[a][b] == mj[b][a] {
                    Sign::Minus
                } else {
                    return None;
                };
                e[b] = Some(ea * rel);
                stack.push(b);
            }
        }
    }
    let e: Vec<Sign> = e.into_iter().map(|s| s.expect("all assigned")).collect();
    let ok = (0..n).all(|a| {
        (0..n).all(|b| mj[a][b] == -mj[b][a].signed(e[a] * e[b]))
    });
    ok.then_some(e)
}

/// Column permutation (new position → old column) that brings `z_j` into
/// B_j position: plain columns first in ascending order, each followed at
/// offset `n1` by its Diagonal 2×2 partner column.
///
/// The partner of a plain column `a` (row `r_a`) is the conjugated column `b`
/// (row `r_b`) with `G[r_a, b] = 0` and `G[r_b, a] = 0`; it must be unique.
pub fn bj_column_perm(d: &Design, var: u32) -> Result<Vec<usize>> {
    let n = d.cols();
    let occ = d.variable_occurrences(var)?;
    let mut by_col: Vec<Option<(usize, bool)>> = vec![None; n];
    for o in &occ {
        if by_col[o.col].replace((o.row, o.conjugated)).is_some() {
            return Err(incompatible(var, format!("column {} holds it twice", o.col + 1)));
        }
    }
    if let Some(c) = by_col.iter().position(Option::is_none) {
        return Err(incompatible(var, format!("column {} lacks it", c + 1)));
    }
    let cols: Vec<(usize, usize, bool)> = by_col
        .into_iter()
        .enumerate()
        .map(|(c, o)| {
            let (r, conj) = o.expect("checked above");
            (c, r, conj)
        })
        .collect();
    let plain: Vec<(usize, usize)> = cols.iter().filter(|c| !c.2).map(|c| (c.0, c.1)).collect();
    let conj: Vec<(usize, usize)> = cols.iter().filter(|c| c.2).map(|c| (c.0, c.1)).collect();
    if plain.len() != conj.len() {
        return Err(incompatible(
            var,
            format!("{} plain vs {} conjugated occurrences", plain.len(), conj.len()),
        ));
    }
    let mut taken = vec![false; n];
    let mut partners = Vec::with_capacity(conj.len());
    for &(a, ra) in &plain {
        let candidates: Vec<usize> = conj
            .iter()
            .filter(|&&(b, rb)| d.get(ra, b).is_zero() && d.get(rb, a).is_zero())
            .map(|&(b, _)| b)
            .collect();
        match candidates[..] {
            [b] if !taken[b] => {
                taken[b] = true;
                partners.push(b);
            }
            _ => {
                return Err(incompatible(
                    var,
                    format!(
                        "column {} has no unique Diagonal 2x2 partner (candidates {:?})",
                        a + 1,
                        candidates.iter().map(|b| b + 1).collect::<Vec<_>>()
                    ),
                ))
            }
        }
    }
    Ok(plain.iter().map(|p| p.0).chain(partners).collect())
}

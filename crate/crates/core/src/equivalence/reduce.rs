use crate::atomic::adjacency_graph;
use crate::bcod::is_bcod;
use crate::design::Design;
use crate::error::{Error, Result};

use super::bj::skew_gauge;
use super::{apply_op, bj_column_perm, find_bj_rows, BjReport, EquivOp};

fn is_standard_block(rep: &BjReport, m: usize) -> bool {
    rep.n1 == m && rep.n2 == m && rep.skew && rep.block_form
}

/// As [`is_standard_block`], but skew only up to row/column sign changes.
fn is_gauge_block(rep: &BjReport, m: usize) -> bool {
    rep.n1 == m && rep.n2 == m && rep.skew_up_to_signs && rep.block_form
}

/// Smallest `j` such that `d` is already in B_j form (no column moves needed),
/// or `None`.
pub fn is_standard_form(d: &Design) -> Result<Option<u32>> {
    match is_bcod(d) {
        Ok(rep) if rep.is_bcod() => {}
        Ok(_) | Err(Error::NotCod) | Err(Error::BcodShape { .. }) => return Err(Error::NotBcod),
        Err(e) => return Err(e),
    }
    let m = d.cols() / 2;
    Ok((1..=d.vars()).find(|&j| find_bj_rows(d, j).is_ok_and(|rep| is_standard_block(&rep, m))))
}

/// Row negations forcing `+z_j`, `+z_j*` on the diagonal; paired row and
/// column negations making `M_j` skew-symmetric; then a row permutation
/// putting top rows first, bottom rows next, the rest after.
fn normalize_rows(d: Design, var: u32, ops: &mut Vec<EquivOp>) -> Result<Design> {
    let rep = find_bj_rows(&d, var)?;
    let mut cur = d;
    let mut apply = |cur: &mut Design, op: EquivOp| -> Result<()> {
        *cur = apply_op(cur, &op)?;
        ops.push(op);
        Ok(())
    };
    let block_rows = rep.top_rows.iter().chain(&rep.bottom_rows);
    for (&r, s) in block_rows.zip(&rep.diag_signs) {
        if s.is_negative() {
            apply(&mut cur, EquivOp::RowNeg(r))?;
        }
    }
    if !rep.skew {
        if let Some(gauge) = skew_gauge(&rep.mj) {
            for (a, s) in gauge.iter().enumerate() {
                if s.is_negative() {
                    apply(&mut cur, EquivOp::RowNeg(rep.top_rows[a]))?;
                    apply(&mut cur, EquivOp::ColNeg(a))?;
                }
            }
        }
    }
    let mut perm: Vec<usize> = rep.top_rows.iter().chain(&rep.bottom_rows).copied().collect();
    let mut in_block = vec![false; cur.rows()];
    for &r in &perm {
        in_block[r] = true;
    }
    perm.extend((0..cur.rows()).filter(|&r| !in_block[r]));
    if perm.iter().enumerate().any(|(i, &r)| i != r) {
        apply(&mut cur, EquivOp::RowPerm(perm))?;
    }
    Ok(cur)
}

/// Move a standard-form design into B_j form using only column
/// transpositions `(i, m + i)` plus row negations and one row permutation.
///
/// Walks a breadth-first path in the co-occurrence graph from the standard
/// form witness to `j`. At each hop the next variable sits at some
/// position `(s, t)` of the current `M` block; swapping columns `(s, m+s)`
/// and `(t, m+t)` brings its plain occurrences into the left half.
pub fn to_bj_form(d: &Design, var: u32) -> Result<(Vec<EquivOp>, Design)> {
    d.check_var(var)?;
    let witness = match is_standard_form(d) {
        Ok(Some(w)) => w,
        Ok(None) | Err(Error::NotBcod) => return Err(Error::NotStandardForm),
        Err(e) => return Err(e),
    };
    let path = adjacency_graph(d)
        .path(witness, var)
        .ok_or(Error::UnreachableVariable {
            from: witness,
            to: var,
        })?;
    let (n, m) = (d.cols(), d.cols() / 2);
    let mut ops = Vec::new();
    let mut cur = d.clone();
    for hop in path.windows(2) {
        let (at, next) = (hop[0], hop[1]);
        let rep = find_bj_rows(&cur, at)?;
        let (s, t) = (0..m)
            .flat_map(|s| (0..m).map(move |t| (s, t)))
            .find(|&(s, t)| rep.mj[s][t].index() == Some(next))
            .ok_or_else(|| Error::SearchFailed(format!("z{next} not found in M_{at}")))?;
        for i in [s, t] {
            let op = EquivOp::col_swap(n, i, m + i);
            cur = apply_op(&cur, &op)?;
            ops.push(op);
        }
        let rep = find_bj_rows(&cur, next)?;
        if !is_gauge_block(&rep, m) {
            return Err(Error::SearchFailed(format!(
                "column swaps did not produce a skew B_{next} block"
            )));
        }
    }
    let cur = normalize_rows(cur, var, &mut ops)?;
    if !is_standard_block(&find_bj_rows(&cur, var)?, m) {
        return Err(Error::SearchFailed(format!("B_{var} block is not skew after normalizing")));
    }
    Ok((ops, cur))
}

/// Bring a BCOD into standard form (B_1 unless it already has a witness).
///
/// Uses one unrestricted column permutation plus row negations and a row
/// permutation; never touches variables.
pub fn standardize(d: &Design) -> Result<(Vec<EquivOp>, Design)> {
    if is_standard_form(d)?.is_some() {
        return Ok((Vec::new(), d.clone()));
    }
    let mut ops = Vec::new();
    let perm = bj_column_perm(d, 1)?;
    let mut cur = d.clone();
    if perm.iter().enumerate().any(|(i, &c)| i != c) {
        let op = EquivOp::ColPerm(perm);
        cur = apply_op(&cur, &op)?;
        ops.push(op);
    }
    let cur = normalize_rows(cur, 1, &mut ops)?;
    if is_standard_form(&cur)?.is_none() {
        return Err(Error::SearchFailed("B_1 block is not standard".into()));
    }
    Ok((ops, cur))
}

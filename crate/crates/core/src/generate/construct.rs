use std::collections::{BTreeMap, HashMap};

use crate::bcod::is_bcod;
use crate::design::Design;
use crate::entry::{Entry, Sign};
use crate::error::{Error, Result};

use super::gf2::Gf2System;

/// Largest supported half-width for [`construct_bcod`].
pub const MAX_HALF_WIDTH: usize = 8;

/// The [2, 2, 1] design `z1 0 / 0 z1*`.
pub fn base_bcod() -> Design {
    Design::new(1, vec![vec![Entry::plain(1), Entry::Zero], vec![Entry::Zero, Entry::conj(1)]])
        .expect("static design")
}

struct Skeleton {
    m: usize,
    /// (left pattern, conjugated) per output row
    rows: Vec<(u64, bool)>,
    row_of: HashMap<(u64, bool), usize>,
    /// even-weight vector → variable label
    label: BTreeMap<u64, u32>,
}

impl Skeleton {
    fn new(m: usize) -> Self {
        let full = (1u64 << m) - 1;
        let odd = |a: u64| a.count_ones() % 2 == 1;
        let plain = |a: u64| odd(a);
        let conj = |a: u64| odd(a ^ full);

        let mut rows: Vec<(u64, bool)> = (0..m).map(|i| (1 << i, false)).collect();
        rows.extend((0..m).map(|i| (full ^ 1 << i, true)));
        let mut extra_plain: Vec<u64> = (0..=full).filter(|&a| plain(a)).collect();
        let mut extra_conj: Vec<u64> = (0..=full).filter(|&a| conj(a)).collect();
        extra_plain.retain(|a| !rows.contains(&(*a, false)));
        extra_conj.retain(|a| !rows.contains(&(*a, true)));
        rows.extend(extra_plain.into_iter().map(|a| (a, false)));
        rows.extend(extra_conj.into_iter().map(|a| (a, true)));

        let row_of = rows.iter().enumerate().map(|(i, &key)| (key, i)).collect();
        let label = (0..=full)
            .filter(|g| g.count_ones() % 2 == 0)
            .enumerate()
            .map(|(i, g)| (g, i as u32 + 1))
            .collect();
        Skeleton {
            m,
            rows,
            row_of,
            label,
        }
    }

    fn full(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Even-weight vector naming the variable in `slot` of a row.
    fn gamma(&self, alpha: u64, conj: bool, slot: usize) -> u64 {
        let g = alpha ^ 1 << slot;
        if conj {
            g ^ self.full()
        } else {
            g
        }
    }

    fn unknown(&self, alpha: u64, conj: bool, slot: usize) -> usize {
        self.row_of[&(alpha, conj)] * self.m + slot
    }
}

/// A delay-optimal balanced design `[2^m, 2m, 2^(m-1)]`.
///
/// Rows are indexed by left pattern and conjugation class: plain rows carry
/// the odd-weight patterns, conjugated rows the patterns whose complement
/// has odd weight. In each row, slot `i` (the column pair `i`, `m+i`) holds
/// one variable, in column `i` when the pattern has bit `i` set and in column
/// `m+i` otherwise. Variables are the even-weight vectors `γ`; the plain row
/// `α` holds `α ⊕ e_i` in slot `i` and the conjugated row `α` holds
/// `α ⊕ 1 ⊕ e_i`. Signs come from a GF(2) system requiring every Gram
/// cross term to cancel against its Alamouti partner and every `M_γ` to be
/// skew-symmetric. The output starts with the B_1 block, diagonal positive.
pub fn construct_bcod(m: usize) -> Result<Design> {
    if !(1..=MAX_HALF_WIDTH).contains(&m) {
        return Err(Error::UnsupportedHalfWidth {
            m,
            max: MAX_HALF_WIDTH,
        });
    }
    let sk = Skeleton::new(m);
    let full = sk.full();
    let mut sys = Gf2System::new(sk.rows.len() * m);

    // Alamouti partners: plain row α, slots i < l, against the conjugated
    // row α ⊕ 1 ⊕ e_i ⊕ e_l, which holds the same two variables swapped
    for &(alpha, conj) in &sk.rows {
        if conj {
            continue;
        }
        for i in 0..m {
            for l in i + 1..m {
                let beta = alpha ^ full ^ 1 << i ^ 1 << l;
                sys.add_equation(
                    &[
                        sk.unknown(alpha, false, i),
                        sk.unknown(alpha, false, l),
                        sk.unknown(beta, true, i),
                        sk.unknown(beta, true, l),
                    ],
                    true,
                );
            }
        }
    }
    // skew M_γ: top rows γ ⊕ e_x, entry (x, y) sits in slot y
    for &gamma in sk.label.keys() {
        for x in 0..m {
            for y in x + 1..m {
                let (tx, ty) = (gamma ^ 1 << x, gamma ^ 1 << y);
                sys.add_equation(
                    &[
                        sk.unknown(tx, false, x),
                        sk.unknown(tx, false, y),
                        sk.unknown(ty, false, y),
                        sk.unknown(ty, false, x),
                    ],
                    true,
                );
            }
        }
    }
    let signs = sys
        .solve()
        .ok_or_else(|| Error::ConstructionFailed(format!("sign system inconsistent at m={m}")))?;

    let n = 2 * m;
    let mut grid = Vec::with_capacity(sk.rows.len());
    for (r, &(alpha, conj)) in sk.rows.iter().enumerate() {
        let mut row = vec![Entry::Zero; n];
        for slot in 0..m {
            let var = sk.label[&sk.gamma(alpha, conj, slot)];
            let col = if alpha >> slot & 1 == 1 { slot } else { m + slot };
            row[col] = Entry::var(var, Sign::from_negative(signs[r * m + slot]), conj);
        }
        // z1 positive where present, otherwise the first nonzero entry
        let lead = row
            .iter()
            .find(|e| e.index() == Some(1))
            .or_else(|| row.iter().find(|e| !e.is_zero()))
            .and_then(|e| e.var_ref())
            .expect("rows are never empty");
        if lead.sign.is_negative() {
            row.iter_mut().for_each(|e| *e = e.negated());
        }
        grid.push(row);
    }
    let d = Design::new(1 << (m - 1), grid)?;
    match is_bcod(&d) {
        Ok(rep) if rep.is_bcod() => Ok(d),
        Ok(rep) => Err(Error::ConstructionFailed(format!(
            "m={m}: {}",
            rep.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        ))),
        Err(e) => Err(Error::ConstructionFailed(format!("m={m}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn m1_is_base() {
        assert_eq!(construct_bcod(1).unwrap(), base_bcod());
        assert_eq!(base_bcod(), fixtures::base());
    }

    #[test]
    fn parameters() {
        for m in 1..=6 {
            let d = construct_bcod(m).unwrap();
            assert_eq!(d.rows(), 1 << m);
            assert_eq!(d.cols(), 2 * m);
            assert_eq!(d.vars(), 1 << (m - 1));
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(construct_bcod(4).unwrap(), construct_bcod(4).unwrap());
    }

    #[test]
    fn range() {
        assert!(construct_bcod(0).is_err());
        assert!(construct_bcod(MAX_HALF_WIDTH + 1).is_err());
    }
}

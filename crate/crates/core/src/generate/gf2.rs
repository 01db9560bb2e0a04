//! Dense linear systems over GF(2), used to solve for sign bits.

#[derive(Clone, Debug)]
pub(crate) struct Gf2System {
    unknowns: usize,
    words: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub(crate) fn new(unknowns: usize) -> Self {
        Gf2System {
            unknowns,
            words: unknowns.div_ceil(64),
            rows: Vec::new(),
        }
    }

    /// Add `x_{vars[0]} + x_{vars[1]} + ... = rhs`. Repeated unknowns cancel.
    pub(crate) fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut bits = vec![0u64; self.words];
        for &v in vars {
            debug_assert!(v < self.unknowns);
            bits[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((bits, rhs));
    }

    /// Gauss–Jordan elimination. Free unknowns are set to 0; `None` if the
    /// system is inconsistent.
    pub(crate) fn solve(mut self) -> Option<Vec<bool>> {
        let get = |bits: &[u64], v: usize| bits[v / 64] >> (v % 64) & 1 == 1;
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.unknowns {
            let Some(found) = (next..self.rows.len()).find(|&r| get(&self.rows[r].0, col)) else {
                continue;
            };
            self.rows.swap(next, found);
            let (pivot_bits, pivot_rhs) = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && get(&row.0, col) {
                    for (w, p) in row.0.iter_mut().zip(&pivot_bits) {
                        *w ^= p;
                    }
                    row.1 ^= pivot_rhs;
                }
            }
            pivots.push(col);
            next += 1;
        }
        if self.rows[next..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = vec![false; self.unknowns];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = self.rows[r].1;
        }
        Some(x)
    }
}

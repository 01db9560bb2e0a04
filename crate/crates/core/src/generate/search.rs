//! Exhaustive backtracking search for balanced designs of minimum delay.
//!
//! Cells are filled row-major with candidates in token order, so the first
//! complete design found is the lexicographically smallest one. Pruning:
//!
//! * exactly `m` zeros per row, rows conjugation-uniform;
//! * a variable at most once per row and per column, and every column must
//!   still be able to collect all `k` variables;
//! * `z_j` and `z_j*` at most `m` times each;
//! * after each row, every Gram cross term must still be cancellable by the
//!   rows left (each row adds at most one term per column pair, and a
//!   monomial can occur at most twice).
//!
//! With symmetry pruning the search also requires rows in strictly
//! increasing order, variables introduced in index order with a positive
//! first occurrence, a positive leading entry in every row, and the first
//! row equal to `0 … 0 z1 … zm`. The lexicographically smallest design
//! satisfies all of these (row/column permutations, row negations,
//! relabelling and negating variables, and conjugating every variable at
//! once can only make a smaller design otherwise), so pruning changes the
//! running time but not the answer.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bcod::is_bcod;
use crate::design::Design;
use crate::entry::{Entry, Sign};
use crate::error::{Error, Result};
use crate::gram::QuadTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Column count; even.
    pub n: usize,
    /// Largest row count to try. Only even counts `p = 2k` can succeed.
    pub p_max: usize,
    pub symmetry_pruning: bool,
    /// Worker threads.
    pub parallel_width: usize,
    /// Search nodes allowed, summed over all row counts tried, before giving
    /// up with [`Error::ResourceLimit`]. Counting is batched per worker, so a
    /// run that lands right at the limit may stop slightly early or late.
    pub node_limit: u64,
    /// Required for `n = 6`.
    pub allow_long_run: bool,
}

impl SearchConfig {
    pub fn new(n: usize, p_max: usize) -> Self {
        SearchConfig {
            n,
            p_max,
            symmetry_pruning: true,
            parallel_width: 1,
            node_limit: 200_000_000,
            allow_long_run: false,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidConfig(s));
        if self.n < 2 || self.n % 2 != 0 {
            return bad(format!("n={} must be even and at least 2", self.n));
        }
        if self.n == 6 && !self.allow_long_run {
            return bad("n=6 needs the long-run flag".into());
        }
        if self.n > 6 {
            return bad(format!("n={} is beyond exhaustive reach (max 6)", self.n));
        }
        if self.parallel_width == 0 {
            return bad("parallel_width must be positive".into());
        }
        Ok(())
    }
}

/// Smallest-delay BCOD with `n` columns and at most `p_max` rows.
///
/// `Ok(None)` certifies that no BCOD with `p <= p_max` exists. The result
/// does not depend on the worker count.
pub fn search_min_delay(cfg: &SearchConfig) -> Result<Option<Design>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel_width)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let nodes = AtomicU64::new(0);
    for p in (2..=cfg.p_max).step_by(2) {
        if let Some(d) = pool.install(|| search_rows(cfg, p, &nodes))? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

const CANDIDATES_PER_VAR: [(Sign, bool); 4] = [
    (Sign::Plus, false),
    (Sign::Plus, true),
    (Sign::Minus, false),
    (Sign::Minus, true),
];

struct Shared<'a> {
    best: AtomicUsize,
    nodes: &'a AtomicU64,
    limit_hit: AtomicBool,
    limit: u64,
    /// Nodes a worker counts locally before adding them to `nodes`.
    batch: u64,
}

impl Shared<'_> {
    fn charge(&self, local: u64) {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if total > self.limit {
            self.limit_hit.store(true, Ordering::Relaxed);
        }
    }
}

enum Outcome {
    Found(Vec<Entry>),
    Exhausted,
    Stopped,
}

#[derive(Clone)]
struct State {
    n: usize,
    m: usize,
    p: usize,
    k: u32,
    pruning: bool,
    cells: Vec<Entry>,
    col_mask: Vec<u64>,
    row_mask: u64,
    row_zeros: usize,
    row_class: Option<bool>,
    plain_count: Vec<usize>,
    conj_count: Vec<usize>,
    max_var: Vec<u32>,
    // pending Gram cross terms per column pair, one snapshot per completed row
    gram: Vec<Vec<Vec<QuadTerm>>>,
}

impl State {
    fn new(n: usize, p: usize, pruning: bool) -> Self {
        let k = (p / 2) as u32;
        State {
            n,
            m: n / 2,
            p,
            k,
            pruning,
            cells: Vec::with_capacity(p * n),
            col_mask: vec![0; n],
            row_mask: 0,
            row_zeros: 0,
            row_class: None,
            plain_count: vec![0; k as usize + 1],
            conj_count: vec![0; k as usize + 1],
            max_var: vec![0],
            gram: vec![vec![Vec::new(); n * n]],
        }
    }

    fn pos(&self) -> (usize, usize) {
        (self.cells.len() / self.n, self.cells.len() % self.n)
    }

    fn current_row(&self) -> &[Entry] {
        let (r, _) = self.pos();
        &self.cells[r * self.n..]
    }

    fn admissible(&self, e: Entry) -> bool {
        let (r, c) = self.pos();
        let row_nonzeros = c - self.row_zeros;
        let var = match e {
            Entry::Zero => {
                if self.row_zeros >= self.m {
                    return false;
                }
                None
            }
            Entry::Var(v) => {
                let j = v.index;
                if row_nonzeros >= self.m
                    || self.row_class.is_some_and(|cls| cls != v.conjugated)
                    || self.col_mask[c] >> j & 1 == 1
                    || self.row_mask >> j & 1 == 1
                {
                    return false;
                }
                let count = if v.conjugated { &self.conj_count } else { &self.plain_count };
                if count[j as usize] >= self.m {
                    return false;
                }
                Some(v)
            }
        };
        if self.pruning {
            if r == 0 {
                let want = if c < self.m { Entry::Zero } else { Entry::plain((c - self.m + 1) as u32) };
                return e == want;
            }
            if let Some(v) = var {
                let max = *self.max_var.last().expect("never empty");
                if v.index > max + 1 {
                    return false;
                }
                if (v.index == max + 1 || row_nonzeros == 0) && v.sign.is_negative() {
                    return false;
                }
            }
            // rows strictly increasing: the prefix may not drop below the previous row
            let prev = &self.cells[(r - 1) * self.n..r * self.n];
            let mut cur = self.current_row().to_vec();
            cur.push(e);
            if cur[..] < prev[..=c] {
                return false;
            }
        }
        true
    }

    /// Place `e`; returns false (with the state unchanged) if a row-level
    /// check fails once the row is complete.
    fn place(&mut self, e: Entry) -> bool {
        let (r, c) = self.pos();
        let max = *self.max_var.last().expect("never empty");
        match e {
            Entry::Zero => self.row_zeros += 1,
            Entry::Var(v) => {
                self.col_mask[c] |= 1 << v.index;
                self.row_mask |= 1 << v.index;
                self.row_class = Some(v.conjugated);
                let count = if v.conjugated { &mut self.conj_count } else { &mut self.plain_count };
                count[v.index as usize] += 1;
            }
        }
        self.max_var.push(max.max(e.index().unwrap_or(0)));
        self.cells.push(e);

        let missing = self.k - self.col_mask[c].count_ones();
        let ok = missing as usize <= self.p - r - 1;
        if !ok {
            self.unplace();
            return false;
        }
        if c + 1 == self.n {
            let prev_row_equal = self.pruning
                && r > 0
                && self.cells[(r - 1) * self.n..r * self.n] == self.cells[r * self.n..];
            if prev_row_equal || !self.close_row(r) {
                self.unplace();
                return false;
            }
        }
        true
    }

    fn close_row(&mut self, r: usize) -> bool {
        let n = self.n;
        let row = &self.cells[r * n..(r + 1) * n];
        let mut gram = self.gram.last().expect("never empty").clone();
        let remaining = self.p - r - 1;
        for a in 0..n {
            for b in a + 1..n {
                let Some(t) = QuadTerm::from_cells(row[a], row[b]) else {
                    continue;
                };
                let pending = &mut gram[a * n + b];
                if let Some(i) = pending
                    .iter()
                    .position(|u| u.left == t.left && u.right == t.right)
                {
                    if pending[i].sign == t.sign {
                        return false;
                    }
                    pending.swap_remove(i);
                } else {
                    pending.push(t);
                }
                if pending.len() > remaining {
                    return false;
                }
            }
        }
        if gram.iter().any(|g| g.len() > remaining) {
            return false;
        }
        self.gram.push(gram);
        self.row_mask = 0;
        self.row_zeros = 0;
        self.row_class = None;
        true
    }

    fn unplace(&mut self) {
        let e = self.cells.pop().expect("nothing to undo");
        self.max_var.pop();
        let (r, c) = self.pos();
        if c + 1 == self.n && self.gram.len() == r + 2 {
            // reopening a row that had been closed
            self.gram.pop();
        }
        if let Entry::Var(v) = e {
            self.col_mask[c] &= !(1 << v.index);
            let count = if v.conjugated { &mut self.conj_count } else { &mut self.plain_count };
            count[v.index as usize] -= 1;
        }
        let row = self.current_row();
        let zeros = row.iter().filter(|e| e.is_zero()).count();
        let mask = row.iter().filter_map(|e| e.index()).fold(0u64, |m, j| m | 1 << j);
        let class = row.iter().find_map(|e| e.var_ref()).map(|v| v.conjugated);
        self.row_zeros = zeros;
        self.row_mask = mask;
        self.row_class = class;
    }

    fn candidates(&self) -> impl Iterator<Item = Entry> + '_ {
        std::iter::once(Entry::Zero).chain((1..=self.k).flat_map(|j| {
            CANDIDATES_PER_VAR
                .iter()
                .map(move |&(s, conj)| Entry::var(j, s, conj))
        }))
    }

    fn dfs(&mut self, shared: &Shared, task: usize, local_nodes: &mut u64) -> Outcome {
        *local_nodes += 1;
        if *local_nodes == shared.batch {
            shared.charge(*local_nodes);
            *local_nodes = 0;
        }
        if shared.limit_hit.load(Ordering::Relaxed) || shared.best.load(Ordering::Relaxed) < task {
            return Outcome::Stopped;
        }
        if self.cells.len() == self.p * self.n {
            return match Design::from_cells(self.p, self.n, self.k, self.cells.clone()) {
                Ok(d) if is_bcod(&d).is_ok_and(|rep| rep.is_bcod()) => {
                    Outcome::Found(self.cells.clone())
                }
                _ => Outcome::Exhausted,
            };
        }
        let cands: Vec<Entry> = self.candidates().filter(|&e| self.admissible(e)).collect();
        for e in cands {
            if !self.place(e) {
                continue;
            }
            let out = self.dfs(shared, task, local_nodes);
            self.unplace();
            match out {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    /// All admissible prefixes of length `depth`, in candidate order.
    fn prefixes(&mut self, depth: usize, out: &mut Vec<Vec<Entry>>) {
        if self.cells.len() == depth {
            out.push(self.cells.clone());
            return;
        }
        let cands: Vec<Entry> = self.candidates().filter(|&e| self.admissible(e)).collect();
        for e in cands {
            if self.place(e) {
                self.prefixes(depth, out);
                self.unplace();
            }
        }
    }
}

fn search_rows(cfg: &SearchConfig, p: usize, nodes: &AtomicU64) -> Result<Option<Design>> {
    let n = cfg.n;
    let mut root = State::new(n, p, cfg.symmetry_pruning);
    let depth = (2 * n).min(p * n);
    let mut prefixes = Vec::new();
    root.prefixes(depth, &mut prefixes);

    let shared = Shared {
        best: AtomicUsize::new(usize::MAX),
        nodes,
        limit_hit: AtomicBool::new(false),
        limit: cfg.node_limit,
        batch: (cfg.node_limit / 8).clamp(1, 4096),
    };
    let results: Vec<Outcome> = prefixes
        .par_iter()
        .enumerate()
        .map(|(task, prefix)| {
            if shared.best.load(Ordering::Relaxed) < task {
                return Outcome::Stopped;
            }
            let mut st = State::new(n, p, cfg.symmetry_pruning);
            for &e in prefix {
                let placed = st.place(e);
                debug_assert!(placed, "prefix replays cleanly");
            }
            let mut local = 0;
            let out = st.dfs(&shared, task, &mut local);
            shared.charge(local);
            if let Outcome::Found(_) = out {
                shared.best.fetch_min(task, Ordering::Relaxed);
            }
            out
        })
        .collect();

    if shared.limit_hit.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit {
            limit: cfg.node_limit,
        });
    }
    for out in results {
        match out {
            Outcome::Found(cells) => return Design::from_cells(p, n, (p / 2) as u32, cells).map(Some),
            Outcome::Exhausted => {}
            Outcome::Stopped => {
                return Err(Error::SearchFailed(
                    "a branch stopped before any smaller branch succeeded".into(),
                ))
            }
        }
    }
    Ok(None)
}

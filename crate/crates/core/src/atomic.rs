//! Atomicity via the variable co-occurrence graph.
//!
//! Two variables are adjacent when some row holds both, which is the same
//! as their B blocks sharing a row. A design is atomic when this graph is
//! connected.

use std::collections::{BTreeSet, VecDeque};

use crate::bcod::is_bcod;
use crate::design::Design;
use crate::error::{Error, Result};

/// Undirected graph on variables `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarGraph {
    k: u32,
    // adj[j] for j in 1..=k; index 0 unused
    adj: Vec<BTreeSet<u32>>,
}

impl VarGraph {
    pub fn vertices(&self) -> u32 {
        self.k
    }

    pub fn neighbors(&self, var: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[var as usize].iter().copied()
    }

    pub fn has_edge(&self, s: u32, t: u32) -> bool {
        self.adj.get(s as usize).is_some_and(|a| a.contains(&t))
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        (1..=self.k)
            .flat_map(|s| self.neighbors(s).filter(move |&t| t > s).map(move |t| (s, t)))
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut label = vec![false; self.k as usize + 1];
        let mut out = Vec::new();
        for start in 1..=self.k {
            if label[start as usize] {
                continue;
            }
            label[start as usize] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !std::mem::replace(&mut label[w as usize], true) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Breadth-first path from `from` to `to` (both included), expanding
    /// neighbors in increasing index order.
    pub fn path(&self, from: u32, to: u32) -> Option<Vec<u32>> {
        let mut parent = vec![0u32; self.k as usize + 1];
        let mut seen = vec![false; self.k as usize + 1];
        seen[from as usize] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbors(v) {
                if !std::mem::replace(&mut seen[w as usize], true) {
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Edge `{s, t}` iff some row contains both `z_s` and `z_t`.
pub fn adjacency_graph(d: &Design) -> VarGraph {
    let k = d.vars();
    let mut adj = vec![BTreeSet::new(); k as usize + 1];
    for row in d.row_iter() {
        let vars: BTreeSet<u32> = row.iter().filter_map(|e| e.index()).collect();
        for &s in &vars {
            for &t in &vars {
                if s != t {
                    adj[s as usize].insert(t);
                }
            }
        }
    }
    VarGraph { k, adj }
}

/// True iff the variable graph of a balanced design is connected.
pub fn is_atomic(d: &Design) -> Result<bool> {
    require_bcod(d)?;
    Ok(adjacency_graph(d).components().len() <= 1)
}

fn require_bcod(d: &Design) -> Result<()> {
    match is_bcod(d) {
        Ok(report) if report.is_bcod() => Ok(()),
        _ => Err(Error::NotBcod),
    }
}

/// A connected set of variables with the rows that carry them. Rows and
/// columns are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vars: Vec<u32>,
    pub rows: Vec<usize>,
}

impl Component {
    /// The component's rows restricted to the columns they touch, with
    /// variables relabelled from 1.
    pub fn submatrix(&self, d: &Design) -> Result<Design> {
        let cols: Vec<usize> = (0..d.cols())
            .filter(|&c| self.rows.iter().any(|&r| !d.get(r, c).is_zero()))
            .collect();
        d.restrict(&self.rows, &cols)
    }
}

/// Components of the co-occurrence graph with their supporting rows.
/// All-zero rows belong to no component.
pub fn atomic_components(d: &Design) -> Result<Vec<Component>> {
    require_bcod(d)?;
    let comps = adjacency_graph(d).components();
    let mut owner = vec![0usize; d.vars() as usize + 1];
    for (c, vars) in comps.iter().enumerate() {
        for &v in vars {
            owner[v as usize] = c;
        }
    }
    let mut rows = vec![Vec::new(); comps.len()];
    for (r, row) in d.row_iter().enumerate() {
        if let Some(j) = row.iter().find_map(|e| e.index()) {
            rows[owner[j as usize]].push(r);
        }
    }
    Ok(comps
        .into_iter()
        .zip(rows)
        .map(|(vars, rows)| Component { vars, rows })
        .collect())
}

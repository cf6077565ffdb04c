//! Exhaustive exact maximizers, the ground truth at desk scale.
//!
//! The four hereditary kinds (`mu`, `muo`, `mut`, `gp`) use include-first
//! branch-and-bound: supersets of a failing set cannot pass, so a failed
//! inclusion prunes its subtree. `mud` is not known to be hereditary
//! (removing a vertex from `X` moves pairs into the complement side, where
//! they face different blockers), so it gets plain descending-cardinality
//! enumeration with early exit. Either way, ties resolve to the set whose
//! sorted id list is lexicographically smallest, and results are
//! deterministic.

use itertools::Itertools;

use crate::bitset::BitsetGraph;
use crate::dist::{all_pairs_distances, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::visibility::{self, SetKind};

/// Instances above the per-kind size limit are refused.
pub fn default_limit(kind: SetKind) -> usize {
    match kind {
        SetKind::MuD => 14,
        _ => 20,
    }
}

pub const DEFAULT_IS_LIMIT: usize = 24;

/// Every oracle works on single-word bitsets, so nothing above 64 vertices
/// runs regardless of the requested limit.
const HARD_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Lexicographically smallest maximum set.
    pub best_set: VertexSet,
    pub optimum: usize,
    /// Candidate sets tested, for diagnostics.
    pub explored: u64,
}

/// Maximum set of the given kind by exhaustive search. `limit` overrides the
/// per-kind default instance-size cutoff (never beyond 64).
pub fn max_set_exact(g: &Graph, kind: SetKind, limit: Option<usize>) -> Result<OracleResult> {
    let limit = limit.unwrap_or_else(|| default_limit(kind)).min(HARD_CAP);
    let n = g.n();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let dist = all_pairs_distances(g)?;
    let bg = BitsetGraph::build(g).expect("n <= 64 after limit check");
    let result = match kind {
        SetKind::MuD => enumerate_descending(&bg, &dist, kind),
        _ => {
            let mut search = Search {
                bg: &bg,
                dist: &dist,
                kind,
                n,
                best_mask: 0,
                best_size: 0,
                explored: 0,
                members: Vec::with_capacity(n),
            };
            search.dfs(0, 0, 0);
            OracleResult {
                best_set: mask_to_set(search.best_mask),
                optimum: search.best_size,
                explored: search.explored,
            }
        }
    };
    debug_assert_eq!(result.best_set.len(), result.optimum);
    Ok(result)
}

/// Maximum independent set by branch-and-bound; `limit` as above.
pub fn max_independent_set_exact(g: &Graph, limit: Option<usize>) -> Result<OracleResult> {
    let limit = limit.unwrap_or(DEFAULT_IS_LIMIT).min(HARD_CAP);
    let n = g.n();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let bg = BitsetGraph::build(g).expect("n <= 64 after limit check");
    let mut search = IsSearch { bg: &bg, n, best_mask: 0, best_size: 0, explored: 0 };
    search.dfs(0, 0, 0);
    Ok(OracleResult {
        best_set: mask_to_set(search.best_mask),
        optimum: search.best_size,
        explored: search.explored,
    })
}

fn mask_to_set(mask: u64) -> VertexSet {
    let mut ids = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        ids.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    VertexSet::new(ids)
}

struct Search<'a> {
    bg: &'a BitsetGraph,
    dist: &'a DistanceMatrix,
    kind: SetKind,
    n: usize,
    best_mask: u64,
    best_size: usize,
    explored: u64,
    members: Vec<usize>,
}

impl Search<'_> {
    /// Include-first depth-first search over ascending vertex ids. Strict
    /// improvement plus this visit order makes the recorded optimum the
    /// lexicographically smallest maximum set, and the `remaining` bound can
    /// never prune the branch leading to it before it is recorded.
    fn dfs(&mut self, v: usize, cur_mask: u64, cur_size: usize) {
        if v == self.n || cur_size + (self.n - v) <= self.best_size {
            return;
        }
        let cand = cur_mask | 1 << v;
        self.explored += 1;
        let ok = match self.kind {
            SetKind::Gp => visibility::gp_extends(self.dist, &self.members, v),
            _ => visibility::mask_ok(self.bg, self.dist, cand, self.kind),
        };
        if ok {
            if cur_size + 1 > self.best_size {
                self.best_size = cur_size + 1;
                self.best_mask = cand;
            }
            self.members.push(v);
            self.dfs(v + 1, cand, cur_size + 1);
            self.members.pop();
        }
        self.dfs(v + 1, cur_mask, cur_size);
    }
}

/// All subsets, largest cardinality first, lexicographic within a
/// cardinality; the first passing set is a lex-smallest maximum one. The
/// empty set always passes `mud` (complement pairs face no blockers), so
/// this terminates with a result.
fn enumerate_descending(bg: &BitsetGraph, dist: &DistanceMatrix, kind: SetKind) -> OracleResult {
    let n = bg.n;
    let mut explored = 0;
    for k in (0..=n).rev() {
        for combo in (0..n).combinations(k) {
            let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
            explored += 1;
            if visibility::mask_ok(bg, dist, mask, kind) {
                return OracleResult { best_set: VertexSet::new(combo), optimum: k, explored };
            }
        }
    }
    unreachable!("the empty set passes");
}

struct IsSearch<'a> {
    bg: &'a BitsetGraph,
    n: usize,
    best_mask: u64,
    best_size: usize,
    explored: u64,
}

impl IsSearch<'_> {
    fn dfs(&mut self, v: usize, cur_mask: u64, cur_size: usize) {
        if v == self.n || cur_size + (self.n - v) <= self.best_size {
            return;
        }
        self.explored += 1;
        if self.bg.adj(v) & cur_mask == 0 {
            let cand = cur_mask | 1 << v;
            if cur_size + 1 > self.best_size {
                self.best_size = cur_size + 1;
                self.best_mask = cand;
            }
            self.dfs(v + 1, cand, cur_size + 1);
        }
        self.dfs(v + 1, cur_mask, cur_size);
    }
}

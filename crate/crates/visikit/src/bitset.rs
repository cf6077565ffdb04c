//! Word-sized adjacency kernels for graphs with at most 64 vertices.
//!
//! The exhaustive oracles and the small-graph acceptance suites spend nearly
//! all their time deciding visibility for one pair under one blocker set, so
//! that decision is a masked frontier BFS on `u64` words here instead of a
//! heap-allocating traversal.

use crate::graph::Graph;

pub(crate) struct BitsetGraph {
    pub n: usize,
    adj: Vec<u64>,
}

impl BitsetGraph {
    /// `None` when the graph does not fit in one word.
    pub fn build(g: &Graph) -> Option<BitsetGraph> {
        let n = g.n();
        if n > 64 {
            return None;
        }
        let adj = (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        Some(BitsetGraph { n, adj })
    }

    #[inline]
    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Is there a `u,v`-path of length at most `budget` whose internal
    /// vertices avoid `blocked`? `blocked` must not contain `u` or `v`.
    pub fn visible(&self, blocked: u64, u: usize, v: usize, budget: usize) -> bool {
        if u == v {
            return true;
        }
        let target = 1u64 << v;
        let allowed = !blocked;
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        let mut step = 0;
        while frontier != 0 && step < budget {
            step += 1;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[i];
            }
            next &= allowed & !seen;
            if next & target != 0 {
                return true;
            }
            seen |= next;
            frontier = next;
        }
        false
    }

    /// Every connected component of the subgraph induced by `x` is a clique.
    pub fn is_independent_clique(&self, x: u64) -> bool {
        let mut rest = x;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            // Component of `start` within x.
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let i = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[i];
                }
                next &= x & !comp;
                comp |= next;
                frontier = next;
            }
            let mut c = comp;
            while c != 0 {
                let w = c.trailing_zeros() as usize;
                c &= c - 1;
                if self.adj[w] & comp != comp & !(1 << w) {
                    return false;
                }
            }
            rest &= !comp;
        }
        true
    }
}

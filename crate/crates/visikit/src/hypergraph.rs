//! The 3-uniform visibility hypergraph.
//!
//! For every vertex pair `{u, v}` at distance >= 2 one shortest path is
//! chosen deterministically; each internal vertex `x` of that path yields a
//! hyperedge `{u, v, x}`. An independent set of this hypergraph is a mu-set
//! of the source graph: if some pair in the set were blocked, its chosen
//! path's blocker would complete a fully-contained hyperedge.

#[cfg(feature = "rayon")]
use rayon::prelude::*;

use crate::dist::{all_pairs_distances, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::if_rayon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeUniformHypergraph {
    n: usize,
    edges: Vec<[VertexId; 3]>,
    degrees: Vec<usize>,
}

impl ThreeUniformHypergraph {
    /// Canonicalizes: sorts each triple, deduplicates the edge set.
    pub fn from_edges(n: usize, mut edges: Vec<[VertexId; 3]>) -> Result<ThreeUniformHypergraph> {
        for e in &mut edges {
            e.sort_unstable();
            if e[2] >= n {
                return Err(Error::InvalidVertex { id: e[2], n });
            }
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::InvalidParams(format!(
                    "hyperedge {{{}, {}, {}}} has repeated vertices",
                    e[0], e[1], e[2]
                )));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut degrees = vec![0; n];
        for e in &edges {
            for &v in e {
                degrees[v] += 1;
            }
        }
        Ok(ThreeUniformHypergraph { n, edges, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of hyperedges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[VertexId; 3]] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
}

/// Internal vertices of the chosen shortest `u,v`-path, ordered from `u`
/// towards `v`; empty when the pair is adjacent.
///
/// The choice is deterministic: walking back from the far endpoint, each
/// step moves to the lowest-id neighbor one level closer to `min(u, v)`.
/// This is the path BFS from `min(u, v)` finds with lowest-id parent
/// tie-breaking.
pub fn choose_path_interior(
    g: &Graph,
    dist: &DistanceMatrix,
    u: VertexId,
    v: VertexId,
) -> Vec<VertexId> {
    assert_ne!(u, v, "no path interior for a vertex with itself");
    let (s, t) = (u.min(v), u.max(v));
    let d = dist.get(s, t);
    let mut interior = Vec::with_capacity(d.saturating_sub(1));
    let mut cur = t;
    for level in (1..d).rev() {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist.get(s, w) == level)
            .expect("a shortest path descends one level per step");
        interior.push(cur);
    }
    if u == s {
        interior.reverse();
    }
    interior
}

/// One hyperedge per pair and chosen-path internal vertex, deduplicated.
pub fn build_visibility_hypergraph(g: &Graph) -> Result<ThreeUniformHypergraph> {
    let dist = all_pairs_distances(g)?;
    build_with_dist(g, &dist)
}

pub(crate) fn build_with_dist(g: &Graph, dist: &DistanceMatrix) -> Result<ThreeUniformHypergraph> {
    let n = g.n();
    let per_source = |u: usize| {
        let mut triples = Vec::new();
        for v in (u + 1)..n {
            if dist.get(u, v) < 2 {
                continue;
            }
            for x in choose_path_interior(g, dist, u, v) {
                let mut e = [u, v, x];
                e.sort_unstable();
                triples.push(e);
            }
        }
        triples
    };
    let groups: Vec<Vec<[VertexId; 3]>> = if_rayon!(
        (0..n).into_par_iter().map(per_source).collect(),
        (0..n).map(per_source).collect()
    );
    ThreeUniformHypergraph::from_edges(n, groups.concat())
}

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A set of vertex ids kept in canonical sorted order without duplicates.
///
/// Complements are always derived at the point of use, never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexSet {
    ids: Vec<VertexId>,
}

impl VertexSet {
    /// Canonicalizes: sorts and removes duplicates.
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    pub fn empty() -> Self {
        VertexSet { ids: Vec::new() }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.ids
    }

    /// All ids must be valid in a graph on `n` vertices.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.ids.last() {
            Some(&max) if max >= n => Err(Error::InvalidVertex { id: max, n }),
            _ => Ok(()),
        }
    }

    /// Membership bitmask, available only when all ids fit in one word.
    pub(crate) fn to_mask(&self) -> Option<u64> {
        if let Some(&max) = self.ids.last() {
            if max >= 64 {
                return None;
            }
        }
        Some(self.ids.iter().fold(0u64, |m, &v| m | (1 << v)))
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [VertexId];
    fn deref(&self) -> &[VertexId] {
        &self.ids
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(ids: Vec<VertexId>) -> Self {
        VertexSet::new(ids)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a VertexId;
    type IntoIter = std::slice::Iter<'a, VertexId>;
    fn into_iter(self) -> Self::IntoIter {
        self.ids.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.ids.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(VertexSet::new(Vec::<VertexId>::deserialize(de)?))
    }
}

/// A simple undirected graph on vertices `0..n`, immutable once built.
///
/// Neighbor lists are sorted ascending; equality is structural (labels are
/// provenance annotations and do not participate).
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}
impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Rejects out-of-range ids,
    /// self-loops, and duplicate edges (in either orientation).
    ///
    /// Connectivity is *not* required here; operations that need it check it
    /// themselves.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { id: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { id: v, n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop" });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge { u, v: w[0], reason: "duplicate edge" });
            }
        }
        Ok(Graph { adj, m: edges.len(), labels: None })
    }

    /// Attaches one label per vertex (provenance for gadget vertices).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParams(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    /// Errs with a concrete unreachable pair when the graph is disconnected.
    pub fn check_connected(&self) -> Result<()> {
        let n = self.n();
        if n <= 1 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        let mut queue = vec![0];
        seen[0] = true;
        while let Some(u) = queue.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            None => Ok(()),
            Some(v) => Err(Error::Disconnected { u: 0, v }),
        }
    }

    /// Cartesian product: `(a, b) ~ (a', b')` iff `a = a'` and `b ~ b'`, or
    /// `b = b'` and `a ~ a'`. Vertex `(a, b)` gets id `a * other.n() + b`
    /// (row-major), so row `a` is a copy of `other` and column `b` a copy of
    /// `self`. Labels record the pair.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let (na, nb) = (self.n(), other.n());
        let id = |a: usize, b: usize| a * nb + b;
        let mut adj = vec![Vec::new(); na * nb];
        let mut m = 0;
        for a in 0..na {
            for b in 0..nb {
                for &b2 in other.neighbors(b) {
                    adj[id(a, b)].push(id(a, b2));
                }
                for &a2 in self.neighbors(a) {
                    adj[id(a, b)].push(id(a2, b));
                }
                m += adj[id(a, b)].len();
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let name = |g: &Graph, v: usize| {
            g.label(v).map_or_else(|| v.to_string(), str::to_owned)
        };
        let labels = (0..na)
            .flat_map(|a| (0..nb).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", name(self, a), name(other, b)))
            .collect();
        Graph { adj, m: m / 2, labels: Some(labels) }
    }

    /// Adds a vertex adjacent to every existing vertex; returns its id.
    pub fn add_universal_vertex(&self) -> (Graph, VertexId) {
        let n = self.n();
        let mut adj = self.adj.clone();
        adj.push((0..n).collect());
        for v in 0..n {
            adj[v].push(n); // n is larger than every existing id: stays sorted
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push("z".to_owned());
            l
        });
        (Graph { adj, m: self.m + n, labels }, n)
    }

    /// Lowest-id vertex adjacent to all others, if any.
    pub fn universal_vertex(&self) -> Option<VertexId> {
        let n = self.n();
        (0..n).find(|&v| self.degree(v) == n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::InvalidVertex { id: 3, n: 3 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(Error::InvalidEdge { reason: "self-loop", .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::InvalidEdge { reason: "duplicate edge", .. })
        ));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(4, &[(2, 0), (3, 1), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(3, 1));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn product_of_k2_and_k2_is_a_square() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = k2.cartesian_product(&k2);
        assert_eq!(p.n(), 4);
        assert_eq!(p.m(), 4);
        // 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1): the four-cycle 0-1-3-2-0.
        assert!(p.has_edge(0, 1) && p.has_edge(1, 3) && p.has_edge(3, 2) && p.has_edge(2, 0));
        assert!(!p.has_edge(0, 3) && !p.has_edge(1, 2));
    }

    #[test]
    fn product_k3_k2_is_a_prism() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = k3.cartesian_product(&k2);
        assert_eq!((p.n(), p.m()), (6, 9));
    }

    #[test]
    fn product_size_multiplies() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(p3.cartesian_product(&c4).n(), 12);
    }

    #[test]
    fn universal_vertex_addition() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (g, z) = p3.add_universal_vertex();
        assert_eq!(z, 3);
        assert_eq!(g.degree(z), 3);
        assert_eq!(g.universal_vertex(), Some(1)); // 1 was already universal in P_3
        let two = Graph::from_edges(2, &[]).unwrap();
        let (star, z) = two.add_universal_vertex();
        assert_eq!(star.degree(z), 2);
        assert_eq!(star.m(), 2);
    }

    #[test]
    fn vertex_set_canonical_order() {
        let s = VertexSet::new(vec![4, 0, 2, 4]);
        assert_eq!(s.as_slice(), &[0, 2, 4]);
        assert!(s.contains(2) && !s.contains(3));
        assert_eq!(s.to_string(), "{0, 2, 4}");
        assert_eq!(s.to_mask(), Some(0b10101));
        assert!(s.validate(5).is_ok());
        assert!(s.validate(4).is_err());
    }

    #[test]
    fn connectivity_witness_pair() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(g.check_connected(), Err(Error::Disconnected { u: 0, v: 2 })));
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// How many whole-graph resamples the random generators are willing to make
/// before giving up on hitting a connected (or augmentable) sample.
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphKind {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    /// G(n, p) conditioned on connectivity by resampling.
    RandomConnected { n: usize, p: f64 },
    /// Connected graph with exactly `m` edges and maximum degree 3.
    RandomSubcubic { n: usize, m: usize },
}

/// Deterministic for a fixed `(kind, seed)`; all outputs are connected.
pub fn generate(kind: &GraphKind, seed: u64) -> Result<Graph> {
    match *kind {
        GraphKind::Path { n } => {
            require(n >= 1, "path needs n >= 1")?;
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphKind::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphKind::Complete { n } => {
            require(n >= 1, "complete graph needs n >= 1")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, &edges)
        }
        GraphKind::Grid { rows, cols } => {
            require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1")?;
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Graph::from_edges(rows * cols, &edges)
        }
        GraphKind::RandomConnected { n, p } => {
            require(n >= 1, "random graph needs n >= 1")?;
            require(p > 0.0 && p <= 1.0, "edge probability must be in (0, 1]")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..MAX_ATTEMPTS {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edges(n, &edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(Error::SamplingExhausted { attempts: MAX_ATTEMPTS })
        }
        GraphKind::RandomSubcubic { n, m } => {
            require(n >= 1, "subcubic graph needs n >= 1")?;
            require(m + 1 >= n, "subcubic graph needs m >= n-1 to be connected")?;
            require(2 * m <= 3 * n, "subcubic graph needs m <= 3n/2")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..MAX_ATTEMPTS {
                if let Some(edges) = try_subcubic(n, m, &mut rng) {
                    return Graph::from_edges(n, &edges);
                }
            }
            Err(Error::SamplingExhausted { attempts: MAX_ATTEMPTS })
        }
    }
}

/// One attempt: grow a degree-capped random tree, then add random extra
/// edges between under-capacity non-adjacent pairs until `m` is reached.
fn try_subcubic(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    struct Partial {
        deg: Vec<usize>,
        adj: Vec<Vec<usize>>,
        edges: Vec<(usize, usize)>,
    }
    impl Partial {
        fn add(&mut self, u: usize, v: usize) {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.edges.push((u.min(v), u.max(v)));
        }
    }
    let mut p = Partial { deg: vec![0; n], adj: vec![Vec::new(); n], edges: Vec::new() };
    for v in 1..n {
        // A tree on v vertices has total degree 2(v-1) < 3v, so a slot exists.
        let open: Vec<usize> = (0..v).filter(|&u| p.deg[u] < 3).collect();
        let u = open[rng.gen_range(0..open.len())];
        p.add(u, v);
    }
    while p.edges.len() < m {
        let mut candidates = Vec::new();
        for u in 0..n {
            if p.deg[u] >= 3 {
                continue;
            }
            for v in (u + 1)..n {
                if p.deg[v] < 3 && !p.adj[u].contains(&v) {
                    candidates.push((u, v));
                }
            }
        }
        if candidates.is_empty() {
            return None; // dead end under the degree cap; caller resamples
        }
        let (u, v) = candidates[rng.gen_range(0..candidates.len())];
        p.add(u, v);
    }
    Some(p.edges)
}

/// Every connected graph on `n <= 6` labeled vertices, by enumerating all
/// edge subsets of K_n and filtering. Order is deterministic (edge-mask
/// ascending, pairs in lexicographic bit order).
pub fn connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > 6 {
        return Err(Error::InvalidParams(format!(
            "exhaustive enumeration supported for n <= 6, got {n}"
        )));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let total: u64 = 1 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).expect("enumerated edges are valid");
        g.is_connected().then_some(g)
    }))
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.to_owned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_shapes() {
        let p4 = generate(&GraphKind::Path { n: 4 }, 0).unwrap();
        assert_eq!(p4.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        let k3 = generate(&GraphKind::Complete { n: 3 }, 0).unwrap();
        assert_eq!(k3.m(), 3);
        let c5 = generate(&GraphKind::Cycle { n: 5 }, 0).unwrap();
        assert_eq!(c5.m(), 5);
        assert!(c5.has_edge(0, 4));
        let g23 = generate(&GraphKind::Grid { rows: 2, cols: 3 }, 0).unwrap();
        assert_eq!((g23.n(), g23.m()), (6, 7));
    }

    #[test]
    fn random_generators_are_deterministic_and_connected() {
        for seed in 0..5 {
            let a = generate(&GraphKind::RandomSubcubic { n: 10, m: 12 }, seed).unwrap();
            let b = generate(&GraphKind::RandomSubcubic { n: 10, m: 12 }, seed).unwrap();
            assert_eq!(a, b);
            assert!(a.is_connected());
            assert_eq!(a.m(), 12);
            assert!((0..10).all(|v| a.degree(v) <= 3));

            let c = generate(&GraphKind::RandomConnected { n: 12, p: 0.3 }, seed).unwrap();
            let d = generate(&GraphKind::RandomConnected { n: 12, p: 0.3 }, seed).unwrap();
            assert_eq!(c, d);
            assert!(c.is_connected());
        }
    }

    #[test]
    fn dense_random_connected_is_complete() {
        let g = generate(&GraphKind::RandomConnected { n: 6, p: 1.0 }, 9).unwrap();
        assert_eq!(g.m(), 15);
    }

    #[test]
    fn infeasible_subcubic_params() {
        assert!(generate(&GraphKind::RandomSubcubic { n: 4, m: 7 }, 0).is_err());
        assert!(generate(&GraphKind::RandomSubcubic { n: 4, m: 2 }, 0).is_err());
    }

    #[test]
    fn exhaustive_counts() {
        // Known counts of connected labeled graphs.
        assert_eq!(connected_graphs(1).unwrap().count(), 1);
        assert_eq!(connected_graphs(2).unwrap().count(), 1);
        assert_eq!(connected_graphs(3).unwrap().count(), 4);
        assert_eq!(connected_graphs(4).unwrap().count(), 38);
        assert_eq!(connected_graphs(5).unwrap().count(), 728);
        assert!(connected_graphs(7).is_err());
    }
}

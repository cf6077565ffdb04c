use num::{BigInt, BigRational, ToPrimitive};
#[cfg(feature = "rayon")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::if_rayon;

const UNSEEN: u16 = u16::MAX;

/// All-pairs hop distances, stored as a flat row-major `n x n` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.d[u * self.n + v] as usize
    }

    pub fn diameter(&self) -> usize {
        self.d.iter().copied().max().unwrap_or(0) as usize
    }

    /// Mean distance over unordered pairs, exact and as a float.
    ///
    /// The float view is correctly rounded: numerator and denominator are far
    /// below 2^53, so the IEEE division introduces at most half an ulp.
    pub fn average(&self) -> Result<(BigRational, f64)> {
        if self.n < 2 {
            return Err(Error::AverageUndefined);
        }
        let mut sum: u64 = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                sum += self.get(u, v) as u64;
            }
        }
        let avg = BigRational::new(
            BigInt::from(2 * sum),
            BigInt::from(self.n as u64 * (self.n as u64 - 1)),
        );
        let float = avg.to_f64().expect("finite rational");
        Ok((avg, float))
    }
}

/// Formats a rational as `p/q` (always with the denominator, already reduced).
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn bfs_row(g: &Graph, s: usize) -> Vec<u16> {
    let n = g.n();
    let mut dist = vec![UNSEEN; n];
    let mut queue: Vec<u32> = Vec::with_capacity(n);
    dist[s] = 0;
    queue.push(s as u32);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        let du = dist[u];
        for &v in g.neighbors(u) {
            if dist[v] == UNSEEN {
                dist[v] = du + 1;
                queue.push(v as u32);
            }
        }
    }
    dist
}

/// BFS from every vertex. Errs on disconnected input, naming an unreachable
/// pair. Sources run in parallel under the `rayon` feature.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    if n >= UNSEEN as usize {
        return Err(Error::InvalidParams(format!(
            "distance matrix supports at most {} vertices, got {n}",
            UNSEEN - 1
        )));
    }
    if n == 0 {
        return Ok(DistanceMatrix { n, d: Vec::new() });
    }
    let row0 = bfs_row(g, 0);
    if let Some(v) = row0.iter().position(|&d| d == UNSEEN) {
        return Err(Error::Disconnected { u: 0, v });
    }
    let rest: Vec<Vec<u16>> = if_rayon!(
        (1..n).into_par_iter().map(|s| bfs_row(g, s)).collect(),
        (1..n).map(|s| bfs_row(g, s)).collect()
    );
    let mut d = Vec::with_capacity(n * n);
    d.extend_from_slice(&row0);
    for row in rest {
        d.extend_from_slice(&row);
    }
    Ok(DistanceMatrix { n, d })
}

/// Maximum distance over all pairs.
pub fn diameter(g: &Graph) -> Result<usize> {
    Ok(all_pairs_distances(g)?.diameter())
}

/// Mean distance over unordered pairs; see [`DistanceMatrix::average`].
pub fn average_distance(g: &Graph) -> Result<(BigRational, f64)> {
    all_pairs_distances(g)?.average()
}

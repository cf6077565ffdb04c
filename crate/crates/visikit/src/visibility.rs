//! Verifiers for the five set kinds.
//!
//! A pair `(u, v)` is *X-visible* when some `u,v`-path no longer than
//! `sigma * d(u, v)` has all internal vertices outside `X`; endpoints may lie
//! in `X`. Which pairs must be visible depends on the kind:
//!
//! * `mu`  — pairs inside `X`;
//! * `muo` — pairs with at least one endpoint in `X`;
//! * `mud` — pairs inside `X` and pairs inside the complement;
//! * `mut` — every pair of vertices;
//! * `gp`  — not a visibility condition: no three members of `X` may lie on a
//!   common shortest path (and no relaxation is defined, so `sigma` must be 1).

use std::fmt;
use std::str::FromStr;

use num::{BigRational, ToPrimitive};
#[cfg(feature = "rayon")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitsetGraph;
use crate::dist::{all_pairs_distances, DistanceMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::if_rayon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetKind {
    #[serde(rename = "mu")]
    Mu,
    #[serde(rename = "mud")]
    MuD,
    #[serde(rename = "muo")]
    MuO,
    #[serde(rename = "mut")]
    MuT,
    #[serde(rename = "gp")]
    Gp,
}

impl SetKind {
    pub const ALL: [SetKind; 5] = [SetKind::Mu, SetKind::MuD, SetKind::MuO, SetKind::MuT, SetKind::Gp];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Mu => "mu",
            SetKind::MuD => "mud",
            SetKind::MuO => "muo",
            SetKind::MuT => "mut",
            SetKind::Gp => "gp",
        }
    }

    /// Does the pair `(u, v)` fall under this kind's visibility requirement,
    /// given membership of the endpoints in `X`?
    #[inline]
    pub(crate) fn in_scope(self, u_in: bool, v_in: bool) -> bool {
        match self {
            SetKind::Mu => u_in && v_in,
            SetKind::MuO => u_in || v_in,
            SetKind::MuD => u_in == v_in,
            SetKind::MuT => true,
            SetKind::Gp => unreachable!("gp is not a pair-visibility kind"),
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<SetKind> {
        match s {
            "mu" => Ok(SetKind::Mu),
            "mud" => Ok(SetKind::MuD),
            "muo" => Ok(SetKind::MuO),
            "mut" => Ok(SetKind::MuT),
            "gp" => Ok(SetKind::Gp),
            _ => Err(Error::InvalidParams(format!(
                "unknown set kind {s:?}, expected mu|mud|muo|mut|gp"
            ))),
        }
    }
}

/// Relaxation factor as an exact rational `num/den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sigma {
    num: u64,
    den: u64,
}

impl Sigma {
    pub const ONE: Sigma = Sigma { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Sigma> {
        if den == 0 || num < den {
            return Err(Error::SigmaRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Sigma { num: num / g, den: den / g })
    }

    /// Exact rational value of a float (every finite float is a rational).
    pub fn from_f64(x: f64) -> Result<Sigma> {
        let r = BigRational::from_float(x).ok_or_else(|| Error::SigmaRange(x.to_string()))?;
        let (num, den) = (r.numer().to_u64(), r.denom().to_u64());
        match (num, den) {
            (Some(n), Some(d)) => Sigma::new(n, d),
            _ => Err(Error::SigmaRange(x.to_string())),
        }
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    /// Largest admissible path length for a pair at distance `d`:
    /// `floor(num * d / den)`. Exact, since lengths are integers.
    #[inline]
    pub fn budget(self, d: usize) -> usize {
        (self.num as u128 * d as u128 / self.den as u128) as usize
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Sigma {
    type Err = Error;
    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Sigma> {
        let bad = || Error::SigmaRange(s.to_owned());
        match s.split_once('/') {
            Some((p, q)) => {
                let num = p.trim().parse().map_err(|_| bad())?;
                let den = q.trim().parse().map_err(|_| bad())?;
                Sigma::new(num, den)
            }
            None => Sigma::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The first failing pair or triple, in lexicographic scan order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Pair(VertexId, VertexId),
    /// `(u, w, v)`: member `w` lies on a shortest `u,v`-path.
    Triple(VertexId, VertexId, VertexId),
}

impl Witness {
    pub fn ids(&self) -> Vec<VertexId> {
        match *self {
            Witness::Pair(u, v) => vec![u, v],
            Witness::Triple(u, w, v) => vec![u, w, v],
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::Pair(u, v) => write!(f, "({u}, {v})"),
            Witness::Triple(u, w, v) => write!(f, "({u}, {w}, {v})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    ok: bool,
    witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { ok: true, witness: None }
    }
    fn fail(w: Witness) -> Verdict {
        Verdict { ok: false, witness: Some(w) }
    }
    pub fn ok(&self) -> bool {
        self.ok
    }
    pub fn witness(&self) -> Option<Witness> {
        self.witness
    }
}

/// Is the pair `(u, v)` X-visible at relaxation `sigma`? `u == v` counts as
/// visible.
pub fn x_visible(
    g: &Graph,
    dist: &DistanceMatrix,
    x: &VertexSet,
    u: VertexId,
    v: VertexId,
    sigma: Sigma,
) -> Result<bool> {
    let n = g.n();
    for id in [u, v] {
        if id >= n {
            return Err(Error::InvalidVertex { id, n });
        }
    }
    x.validate(n)?;
    if u == v {
        return Ok(true);
    }
    let budget = sigma.budget(dist.get(u, v));
    if let Some(bg) = BitsetGraph::build(g) {
        let x_mask = x.to_mask().expect("ids validated");
        let blocked = x_mask & !(1 << u) & !(1 << v);
        return Ok(bg.visible(blocked, u, v, budget));
    }
    let mut blocked = vec![false; n];
    for &w in x {
        blocked[w] = true;
    }
    let mut scratch = Scratch::new(n);
    Ok(scratch.visible(g, &blocked, u, v, budget))
}

/// Checks whether `x` satisfies `kind` on `g`, scanning pairs in
/// lexicographic order and reporting the first failure as a witness.
pub fn verify_set(g: &Graph, x: &VertexSet, kind: SetKind, sigma: Sigma) -> Result<Verdict> {
    let dist = all_pairs_distances(g)?;
    verify_set_with(g, &dist, x, kind, sigma)
}

/// As [`verify_set`], reusing a precomputed distance matrix.
pub fn verify_set_with(
    g: &Graph,
    dist: &DistanceMatrix,
    x: &VertexSet,
    kind: SetKind,
    sigma: Sigma,
) -> Result<Verdict> {
    let n = g.n();
    x.validate(n)?;
    if kind == SetKind::Gp {
        if !sigma.is_one() {
            return Err(Error::SigmaForGp);
        }
        return Ok(gp_check(dist, x));
    }

    if let Some(bg) = BitsetGraph::build(g) {
        let x_mask = x.to_mask().expect("ids validated");
        for u in 0..n {
            let u_in = x_mask >> u & 1 == 1;
            for v in (u + 1)..n {
                let v_in = x_mask >> v & 1 == 1;
                if !kind.in_scope(u_in, v_in) {
                    continue;
                }
                let blocked = x_mask & !(1 << u) & !(1 << v);
                if !bg.visible(blocked, u, v, sigma.budget(dist.get(u, v))) {
                    return Ok(Verdict::fail(Witness::Pair(u, v)));
                }
            }
        }
        return Ok(Verdict::pass());
    }

    let mut in_x = vec![false; n];
    for &w in x {
        in_x[w] = true;
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if kind.in_scope(in_x[u], in_x[v]) {
                pairs.push((u as u32, v as u32));
            }
        }
    }
    let check = |scratch: &mut Scratch, u: usize, v: usize| {
        let mut blocked_uv = |w: usize| in_x[w] && w != u && w != v;
        scratch.visible_f(g, &mut blocked_uv, u, v, sigma.budget(dist.get(u, v)))
    };
    let failing: Option<(u32, u32)> = if_rayon!(
        pairs
            .par_iter()
            .copied()
            .map_init(
                || Scratch::new(n),
                |s, (u, v)| if check(s, u as usize, v as usize) { None } else { Some((u, v)) },
            )
            .find_first(Option::is_some)
            .flatten(),
        {
            let mut s = Scratch::new(n);
            pairs
                .iter()
                .copied()
                .find(|&(u, v)| !check(&mut s, u as usize, v as usize))
        }
    );
    Ok(match failing {
        Some((u, v)) => Verdict::fail(Witness::Pair(u as usize, v as usize)),
        None => Verdict::pass(),
    })
}

/// Witness-free sigma-1 mask check used by the exact search (n <= 64).
pub(crate) fn mask_ok(bg: &BitsetGraph, dist: &DistanceMatrix, x_mask: u64, kind: SetKind) -> bool {
    let n = bg.n;
    for u in 0..n {
        let u_in = x_mask >> u & 1 == 1;
        for v in (u + 1)..n {
            let v_in = x_mask >> v & 1 == 1;
            if !kind.in_scope(u_in, v_in) {
                continue;
            }
            let blocked = x_mask & !(1 << u) & !(1 << v);
            if !bg.visible(blocked, u, v, dist.get(u, v)) {
                return false;
            }
        }
    }
    true
}

/// May `c` join the general-position set `members`? Only triples involving
/// `c` can newly violate the condition, so this is O(|members|^2).
pub(crate) fn gp_extends(dist: &DistanceMatrix, members: &[VertexId], c: VertexId) -> bool {
    for (i, &a) in members.iter().enumerate() {
        // c as the middle of (a, b).
        for &b in &members[i + 1..] {
            if dist.get(a, c) + dist.get(c, b) <= dist.get(a, b) {
                return false;
            }
        }
        // a as the middle of (c, b).
        for &b in members {
            if b != a && dist.get(c, a) + dist.get(a, b) <= dist.get(c, b) {
                return false;
            }
        }
    }
    true
}

/// No three members on a common shortest path: for all `u < v` in `X` and
/// `w` in `X \ {u, v}`, require `d(u,w) + d(w,v) > d(u,v)`.
fn gp_check(dist: &DistanceMatrix, x: &VertexSet) -> Verdict {
    let ids = x.as_slice();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let duv = dist.get(u, v);
            for &w in ids {
                if w == u || w == v {
                    continue;
                }
                if dist.get(u, w) + dist.get(w, v) <= duv {
                    return Verdict::fail(Witness::Triple(u, w, v));
                }
            }
        }
    }
    Verdict::pass()
}

/// Every connected component of the induced subgraph `g[x]` is a clique.
/// Empty sets qualify. `x` must contain valid ids.
pub fn is_independent_clique(g: &Graph, x: &VertexSet) -> bool {
    debug_assert!(x.validate(g.n()).is_ok());
    if let Some(bg) = BitsetGraph::build(g) {
        return bg.is_independent_clique(x.to_mask().expect("valid ids"));
    }
    let ids = x.as_slice();
    let mut comp = vec![usize::MAX; ids.len()];
    for start in 0..ids.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..ids.len() {
                if comp[j] == usize::MAX && g.has_edge(ids[i], ids[j]) {
                    comp[j] = start;
                    stack.push(j);
                }
            }
        }
    }
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            if comp[i] == comp[j] && !g.has_edge(ids[i], ids[j]) {
                return false;
            }
        }
    }
    true
}

/// Reusable BFS state for the heap-based (n > 64) visibility check.
struct Scratch {
    stamp: u32,
    mark: Vec<u32>,
    cur: Vec<u32>,
    next: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch { stamp: 0, mark: vec![0; n], cur: Vec::new(), next: Vec::new() }
    }

    fn visible(&mut self, g: &Graph, blocked: &[bool], u: usize, v: usize, budget: usize) -> bool {
        let mut f = |w: usize| blocked[w] && w != u && w != v;
        self.visible_f(g, &mut f, u, v, budget)
    }

    /// Level-synchronous BFS from `u`, refusing to expand through vertices
    /// where `blocked` holds, stopping after `budget` levels.
    fn visible_f(
        &mut self,
        g: &Graph,
        blocked: &mut dyn FnMut(usize) -> bool,
        u: usize,
        v: usize,
        budget: usize,
    ) -> bool {
        if u == v {
            return true;
        }
        if self.stamp == u32::MAX {
            self.mark.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
        let st = self.stamp;
        self.cur.clear();
        self.cur.push(u as u32);
        self.mark[u] = st;
        let mut step = 0;
        while !self.cur.is_empty() && step < budget {
            step += 1;
            self.next.clear();
            for i in 0..self.cur.len() {
                let w = self.cur[i] as usize;
                for &t in g.neighbors(w) {
                    if self.mark[t] == st {
                        continue;
                    }
                    if t == v {
                        return true;
                    }
                    self.mark[t] = st;
                    if !blocked(t) {
                        self.next.push(t as u32);
                    }
                }
            }
            std::mem::swap(&mut self.cur, &mut self.next);
        }
        false
    }
}

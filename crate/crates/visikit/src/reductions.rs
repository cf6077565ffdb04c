//! Gadget constructions linking maximum visibility sets to maximum
//! independent sets, plus the embedding and extraction maps between them.
//!
//! Three gadget families are supported:
//!
//! * **DIAM2** — from a connected source graph `h` (n ≥ 3) and a copy count
//!   `L`, build a diameter-2 graph on `L·n(h) + m(h) + 2` vertices: one
//!   clique layer per copy of `V(h)`, one vertex per edge of `h` adjacent to
//!   the endpoint copies in every layer, a hub `y` adjacent to all copies,
//!   and a hub `z` adjacent to all edge vertices. Independent sets of `h`
//!   embed into total visibility sets of the gadget, and visibility sets of
//!   the gadget project back to independent sets of `h` with a bounded loss.
//! * **CLIQUE_PRODUCT** — the Cartesian product of a clique `K_L` with a
//!   source graph that has a universal vertex; diameter ≤ 3. Visibility sets
//!   here are layerwise almost-independent, which `prune_layer_conflicts`
//!   makes exact at a bounded cost.
//! * **GP_UNIVERSAL** — the source graph plus one universal vertex;
//!   diameter ≤ 2. On diameter-2 graphs the general-position sets are
//!   exactly the independent cliques, so a large gp-set yields a large
//!   clique or independent set via `extract_clique_or_is`.
//!
//! Every extraction re-verifies its input with the visibility verifier and
//! enforces its guaranteed size inequality at runtime; a violated guarantee
//! is reported as [`Error::GadgetInvariant`] rather than silently returned.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dist::all_pairs_distances;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::io;
use crate::visibility::{self, verify_set_with, SetKind, Sigma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    #[serde(rename = "DIAM2")]
    Diam2,
    #[serde(rename = "CLIQUE_PRODUCT")]
    CliqueProduct,
    #[serde(rename = "GP_UNIVERSAL")]
    GpUniversal,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Diam2 => "DIAM2",
            ReductionKind::CliqueProduct => "CLIQUE_PRODUCT",
            ReductionKind::GpUniversal => "GP_UNIVERSAL",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A built gadget together with its source graph and the id maps between
/// them. The maps are explicit (not recomputed from the layout formula) so
/// that instances loaded from files are validated, not trusted.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    kind: ReductionKind,
    l: usize,
    g: Graph,
    h: Graph,
    /// `copies[i][v]` = gadget id of the copy of source vertex `v` in layer
    /// `i + 1`.
    copies: Vec<Vec<VertexId>>,
    /// Gadget id per source edge, aligned with `h.edges()` order; empty for
    /// all kinds except DIAM2.
    edge_ids: Vec<VertexId>,
    /// The copy-hub vertex; DIAM2 only, and optional there.
    y: Option<VertexId>,
    /// DIAM2: the edge-hub gadget vertex. GP_UNIVERSAL: the added universal
    /// gadget vertex. CLIQUE_PRODUCT: the universal vertex *of the source
    /// graph* (it has L copies in the gadget, so no single gadget id).
    z: Option<VertexId>,
}

impl ReductionInstance {
    pub fn kind(&self) -> ReductionKind {
        self.kind
    }

    pub fn layer_count(&self) -> usize {
        self.l
    }

    /// The built gadget graph.
    pub fn gadget(&self) -> &Graph {
        &self.g
    }

    /// The source graph the gadget was built from.
    pub fn source(&self) -> &Graph {
        &self.h
    }

    /// Gadget id of the copy of source vertex `v` in `layer` (1-based).
    pub fn copy_id(&self, v: VertexId, layer: usize) -> Option<VertexId> {
        (1..=self.l).contains(&layer).then(|| self.copies.get(layer - 1)).flatten()?.get(v).copied()
    }

    /// Gadget ids of the edge vertices, in `source().edges()` order.
    pub fn edge_vertex_ids(&self) -> &[VertexId] {
        &self.edge_ids
    }

    pub fn y(&self) -> Option<VertexId> {
        self.y
    }

    /// See the field notes: a gadget id for DIAM2 / GP_UNIVERSAL, a source
    /// id for CLIQUE_PRODUCT.
    pub fn z(&self) -> Option<VertexId> {
        self.z
    }

    /// Source vertices whose copy in `layer` (0-based here) lies in `x`.
    fn layer_members(&self, x: &VertexSet, layer: usize) -> Vec<VertexId> {
        (0..self.h.n()).filter(|&v| x.contains(self.copies[layer][v])).collect()
    }

    fn expect_kind(&self, kind: ReductionKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "operation applies to {kind} instances, got {}",
                self.kind
            )))
        }
    }

    fn first_h_edge_inside(&self, s: &[VertexId]) -> Option<(VertexId, VertexId)> {
        let inside = |v: VertexId| s.binary_search(&v).is_ok();
        self.h.edges().find(|&(u, v)| inside(u) && inside(v))
    }

    fn check_independent_in_h(&self, s: &[VertexId]) -> Result<()> {
        match self.first_h_edge_inside(s) {
            Some((u, v)) => Err(Error::NotIndependent { u, v }),
            None => Ok(()),
        }
    }

    /// Central constructor: checks that the maps are injective and cover the
    /// gadget's vertex ids exactly, then stamps role labels onto the gadget.
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: ReductionKind,
        l: usize,
        g: Graph,
        h: Graph,
        copies: Vec<Vec<VertexId>>,
        edge_ids: Vec<VertexId>,
        y: Option<VertexId>,
        z: Option<VertexId>,
    ) -> Result<ReductionInstance> {
        if l == 0 {
            return Err(Error::InvalidParams("copy count L must be at least 1".into()));
        }
        if copies.len() != l || copies.iter().any(|layer| layer.len() != h.n()) {
            return Err(Error::GadgetInvariant(format!(
                "copy table must hold {l} layers of {} entries",
                h.n()
            )));
        }
        let n = g.n();
        let mut labels = vec![String::new(); n];
        let mut seen = vec![false; n];
        fn claim(seen: &mut [bool], labels: &mut [String], id: usize, label: String) -> Result<()> {
            if id >= seen.len() {
                return Err(Error::InvalidVertex { id, n: seen.len() });
            }
            if seen[id] {
                return Err(Error::GadgetInvariant(format!("gadget vertex {id} assigned two roles")));
            }
            seen[id] = true;
            labels[id] = label;
            Ok(())
        }
        for (i, layer) in copies.iter().enumerate() {
            for (v, &id) in layer.iter().enumerate() {
                claim(&mut seen, &mut labels, id, format!("v{v}_{}", i + 1))?;
            }
        }
        let hedges: Vec<(VertexId, VertexId)> = h.edges().collect();
        if kind == ReductionKind::Diam2 {
            if edge_ids.len() != hedges.len() {
                return Err(Error::GadgetInvariant(format!(
                    "edge-vertex table has {} entries for {} source edges",
                    edge_ids.len(),
                    hedges.len()
                )));
            }
            for (j, &id) in edge_ids.iter().enumerate() {
                let (u, v) = hedges[j];
                claim(&mut seen, &mut labels, id, format!("e{u}_{v}"))?;
            }
        } else if !edge_ids.is_empty() {
            return Err(Error::GadgetInvariant("edge vertices only exist in DIAM2 gadgets".into()));
        }
        match (kind, y) {
            (ReductionKind::Diam2, Some(yid)) => claim(&mut seen, &mut labels, yid, "y".into())?,
            (ReductionKind::Diam2, None) => {}
            (_, None) => {}
            (_, Some(_)) => {
                return Err(Error::GadgetInvariant("only DIAM2 gadgets have a y vertex".into()))
            }
        }
        match kind {
            ReductionKind::Diam2 | ReductionKind::GpUniversal => {
                let zid = z.ok_or_else(|| {
                    Error::GadgetInvariant("instance is missing its z vertex".into())
                })?;
                claim(&mut seen, &mut labels, zid, "z".into())?;
                if kind == ReductionKind::GpUniversal && g.degree(zid) != n - 1 {
                    return Err(Error::GadgetInvariant(format!(
                        "z = {zid} must be universal in the gadget"
                    )));
                }
            }
            ReductionKind::CliqueProduct => {
                let zh = z.ok_or_else(|| {
                    Error::GadgetInvariant("instance is missing its universal source vertex".into())
                })?;
                if zh >= h.n() || h.degree(zh) != h.n() - 1 {
                    return Err(Error::GadgetInvariant(format!(
                        "source vertex {zh} is not universal"
                    )));
                }
            }
        }
        if let Some(hole) = seen.iter().position(|&s| !s) {
            return Err(Error::GadgetInvariant(format!("gadget vertex {hole} has no role")));
        }
        let g = g.with_labels(labels)?;
        Ok(ReductionInstance { kind, l, g, h, copies, edge_ids, y, z })
    }

    /// The diameter bound each gadget kind promises; used after building and
    /// when loading instance files.
    fn check_diameter_contract(&self) -> Result<()> {
        let d = all_pairs_distances(&self.g)?.diameter();
        let ok = match self.kind {
            ReductionKind::Diam2 => self.y.is_none() || d == 2,
            ReductionKind::CliqueProduct => d <= 3,
            ReductionKind::GpUniversal => d <= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GadgetInvariant(format!(
                "{} gadget has diameter {d}, outside its contract",
                self.kind
            )))
        }
    }

    pub fn to_json(&self) -> String {
        let copies: BTreeMap<String, usize> = self
            .copies
            .iter()
            .enumerate()
            .flat_map(|(i, layer)| {
                layer.iter().enumerate().map(move |(v, &id)| (format!("{v}_{}", i + 1), id))
            })
            .collect();
        let edges: BTreeMap<String, usize> = self
            .h
            .edges()
            .zip(&self.edge_ids)
            .map(|((u, v), &id)| (format!("{u}_{v}"), id))
            .collect();
        let repr = InstanceRepr {
            kind: self.kind,
            l: self.l,
            graph: io::to_edge_list(&self.g),
            source: io::to_edge_list(&self.h),
            copies,
            edges,
            y: self.y,
            z: self.z,
        };
        serde_json::to_string(&repr).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<ReductionInstance> {
        let bad = |msg: String| Error::InvalidParams(format!("instance file: {msg}"));
        let repr: InstanceRepr =
            serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON ({e})")))?;
        let g = io::parse_edge_list(&repr.graph)?;
        let h = io::parse_edge_list(&repr.source)?;
        if repr.l == 0 {
            return Err(bad("L must be at least 1".into()));
        }
        match repr.kind {
            ReductionKind::Diam2 => {
                h.check_connected()?;
                if h.n() < 3 {
                    return Err(bad(format!("DIAM2 needs a source with n >= 3, got {}", h.n())));
                }
            }
            ReductionKind::CliqueProduct | ReductionKind::GpUniversal => {
                if h.n() < 2 {
                    return Err(bad(format!(
                        "{} needs a source with n >= 2, got {}",
                        repr.kind,
                        h.n()
                    )));
                }
            }
        }
        let mut copies = vec![vec![usize::MAX; h.n()]; repr.l];
        for (key, &id) in &repr.copies {
            let (v, i) = split_key(key).ok_or_else(|| bad(format!("bad copy key {key:?}")))?;
            if v >= h.n() || i == 0 || i > repr.l {
                return Err(bad(format!("copy key {key:?} out of range")));
            }
            copies[i - 1][v] = id;
        }
        for (i, layer) in copies.iter().enumerate() {
            if let Some(v) = layer.iter().position(|&id| id == usize::MAX) {
                return Err(bad(format!("missing copy entry {v}_{}", i + 1)));
            }
        }
        let mut edge_ids = Vec::new();
        if repr.kind == ReductionKind::Diam2 {
            let mut by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for (key, &id) in &repr.edges {
                let (u, v) = split_key(key).ok_or_else(|| bad(format!("bad edge key {key:?}")))?;
                by_pair.insert((u.min(v), u.max(v)), id);
            }
            for (u, v) in h.edges() {
                let id = by_pair
                    .remove(&(u, v))
                    .ok_or_else(|| bad(format!("missing edge-vertex entry {u}_{v}")))?;
                edge_ids.push(id);
            }
            if let Some((&(u, v), _)) = by_pair.iter().next() {
                return Err(bad(format!("edge-vertex entry {u}_{v} is not a source edge")));
            }
        } else if !repr.edges.is_empty() {
            return Err(bad(format!("{} instances have no edge vertices", repr.kind)));
        }
        let inst =
            ReductionInstance::assemble(repr.kind, repr.l, g, h, copies, edge_ids, repr.y, repr.z)?;
        inst.check_diameter_contract()?;
        Ok(inst)
    }
}

fn split_key(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    kind: ReductionKind,
    #[serde(rename = "L")]
    l: usize,
    graph: String,
    source: String,
    copies: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    edges: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z: Option<usize>,
}

/// Diameter-2 gadget over a connected source `h` with n(h) ≥ 3 and `l ≥ 1`
/// copy layers. With `include_y` the result has `l·n + m + 2` vertices and
/// diameter exactly 2 (checked); without it, `l·n + m + 1` vertices and no
/// diameter promise (the single-layer variant still comes out at diameter 2).
pub fn build_diam2_gadget(h: &Graph, l: usize, include_y: bool) -> Result<ReductionInstance> {
    h.check_connected()?;
    if h.n() < 3 {
        return Err(Error::InvalidParams(format!(
            "diameter-2 gadget needs a source with n >= 3, got {}",
            h.n()
        )));
    }
    if l == 0 {
        return Err(Error::InvalidParams("copy count L must be at least 1".into()));
    }
    let n = h.n();
    let hedges: Vec<(VertexId, VertexId)> = h.edges().collect();
    let m = hedges.len();
    let copy = |v: usize, i: usize| i * n + v;
    let edge_vx = |j: usize| l * n + j;
    let y = include_y.then(|| l * n + m);
    let z = l * n + m + usize::from(include_y);
    let total = l * n + m + 1 + usize::from(include_y);

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..l {
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((copy(u, i), copy(v, i)));
            }
        }
    }
    for (j, &(u, v)) in hedges.iter().enumerate() {
        for i in 0..l {
            edges.push((edge_vx(j), copy(u, i)));
            edges.push((edge_vx(j), copy(v, i)));
        }
    }
    if let Some(yid) = y {
        for i in 0..l {
            for v in 0..n {
                edges.push((yid, copy(v, i)));
            }
        }
        // The hub-hub edge keeps the diameter at 2 (otherwise y and z sit at
        // distance 3) and gives every copy a z-route that avoids all edge
        // vertices; the embedding guarantee depends on that route.
        edges.push((yid, z));
    }
    for j in 0..m {
        edges.push((z, edge_vx(j)));
    }

    let g = Graph::from_edges(total, &edges)?;
    let copies = (0..l).map(|i| (0..n).map(|v| copy(v, i)).collect()).collect();
    let edge_ids = (0..m).map(edge_vx).collect();
    let inst = ReductionInstance::assemble(
        ReductionKind::Diam2,
        l,
        g,
        h.clone(),
        copies,
        edge_ids,
        y,
        Some(z),
    )?;
    inst.check_diameter_contract()?;
    Ok(inst)
}

/// Cartesian product of `K_l` with a source graph carrying a universal
/// vertex; diameter ≤ 3 (checked). Layer `i` is the i-th copy of the source.
pub fn build_clique_product_gadget(h: &Graph, l: usize) -> Result<ReductionInstance> {
    if h.n() < 2 {
        return Err(Error::InvalidParams(format!(
            "product gadget needs a source with n >= 2, got {}",
            h.n()
        )));
    }
    if l == 0 {
        return Err(Error::InvalidParams("copy count L must be at least 1".into()));
    }
    let z = h.universal_vertex().ok_or_else(|| {
        Error::InvalidParams(
            "product gadget requires a universal vertex (degree n-1) in the source graph".into(),
        )
    })?;
    let mut clique_edges = Vec::new();
    for a in 0..l {
        for b in (a + 1)..l {
            clique_edges.push((a, b));
        }
    }
    let k_l = Graph::from_edges(l, &clique_edges)?;
    let g = k_l.cartesian_product(h);
    let copies = (0..l).map(|i| (0..h.n()).map(|v| i * h.n() + v).collect()).collect();
    let inst = ReductionInstance::assemble(
        ReductionKind::CliqueProduct,
        l,
        g,
        h.clone(),
        copies,
        Vec::new(),
        None,
        Some(z),
    )?;
    inst.check_diameter_contract()?;
    Ok(inst)
}

/// The source graph plus one new universal vertex; diameter ≤ 2. The source
/// may be disconnected — the new vertex connects everything.
pub fn build_gp_universal_gadget(h: &Graph) -> Result<ReductionInstance> {
    if h.n() < 2 {
        return Err(Error::InvalidParams(format!(
            "universal-vertex gadget needs a source with n >= 2, got {}",
            h.n()
        )));
    }
    let (g, z) = h.add_universal_vertex();
    let copies = vec![(0..h.n()).collect()];
    let inst = ReductionInstance::assemble(
        ReductionKind::GpUniversal,
        1,
        g,
        h.clone(),
        copies,
        Vec::new(),
        None,
        Some(z),
    )?;
    inst.check_diameter_contract()?;
    Ok(inst)
}

/// Lift an independent set `s` of the source into a total visibility set of
/// a DIAM2 gadget: all edge vertices plus every copy of `s`. The result has
/// exactly `L·|s| + m(h)` vertices.
pub fn embed_is_as_total_set(inst: &ReductionInstance, s: &VertexSet) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::Diam2)?;
    if inst.y.is_none() {
        return Err(Error::InvalidParams(
            "embedding requires the gadget variant with the y hub".into(),
        ));
    }
    s.validate(inst.h.n())?;
    inst.check_independent_in_h(s)?;
    let mut ids = inst.edge_ids.clone();
    for layer in &inst.copies {
        ids.extend(s.iter().map(|&v| layer[v]));
    }
    let x = VertexSet::new(ids);
    debug_assert_eq!(x.len(), inst.l * s.len() + inst.h.m());
    debug_assert!(verify_set_with(
        &inst.g,
        &all_pairs_distances(&inst.g).unwrap(),
        &x,
        SetKind::MuT,
        Sigma::ONE
    )
    .unwrap()
    .ok());
    Ok(x)
}

/// Project a verified `mu`-set of a single-layer DIAM2 gadget back to an
/// independent set of the source with at least `|m_set| − m(h) − 4`
/// vertices. Mirrors the guarantee's constructive proof: take the sources of
/// the copies in the set; with ≤ 2 of them return the empty set; otherwise
/// drop the lower endpoint of every source edge whose edge vertex is
/// missing from the set.
pub fn extract_is_from_mu_set(inst: &ReductionInstance, m_set: &VertexSet) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::Diam2)?;
    if inst.l != 1 {
        return Err(Error::InvalidParams(format!(
            "extraction from a mu-set is defined for single-layer gadgets, got L = {}",
            inst.l
        )));
    }
    if inst.y.is_none() {
        return Err(Error::InvalidParams(
            "extraction requires the gadget variant with the y hub".into(),
        ));
    }
    m_set.validate(inst.g.n())?;
    let dist = all_pairs_distances(&inst.g)?;
    let verdict = verify_set_with(&inst.g, &dist, m_set, SetKind::Mu, Sigma::ONE)?;
    if !verdict.ok() {
        return Err(Error::VerificationFailed { kind: SetKind::Mu, witness: verdict.witness() });
    }
    let s_prime = inst.layer_members(m_set, 0);
    let s = if s_prime.len() <= 2 {
        VertexSet::empty()
    } else {
        let mut dropped = vec![false; inst.h.n()];
        for (j, (u, v)) in inst.h.edges().enumerate() {
            if !m_set.contains(inst.edge_ids[j]) {
                dropped[u.min(v)] = true;
            }
        }
        VertexSet::new(s_prime.into_iter().filter(|&v| !dropped[v]).collect())
    };
    if let Some((u, v)) = inst.first_h_edge_inside(&s) {
        return Err(Error::GadgetInvariant(format!(
            "extracted set is not independent: source edge ({u}, {v}) survived"
        )));
    }
    let need = m_set.len() as i64 - inst.h.m() as i64 - 4;
    if (s.len() as i64) < need {
        return Err(Error::GadgetInvariant(format!(
            "extracted {} vertices, below the guaranteed {need}",
            s.len()
        )));
    }
    Ok(s)
}

/// Project a verified total visibility set of a DIAM2 gadget back to an
/// independent set of the source: the best single layer, which carries at
/// least `(|x| − m(h) − 2) / L` vertices.
pub fn extract_is_from_total_set(inst: &ReductionInstance, x: &VertexSet) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::Diam2)?;
    if inst.y.is_none() {
        return Err(Error::InvalidParams(
            "extraction requires the gadget variant with the y hub".into(),
        ));
    }
    x.validate(inst.g.n())?;
    let dist = all_pairs_distances(&inst.g)?;
    let verdict = verify_set_with(&inst.g, &dist, x, SetKind::MuT, Sigma::ONE)?;
    if !verdict.ok() {
        return Err(Error::VerificationFailed { kind: SetKind::MuT, witness: verdict.witness() });
    }
    let mut best: Option<Vec<VertexId>> = None;
    for i in 0..inst.l {
        let s_i = inst.layer_members(x, i);
        if let Some((u, v)) = inst.first_h_edge_inside(&s_i) {
            return Err(Error::GadgetInvariant(format!(
                "layer {} of a verified total set is not independent: edge ({u}, {v})",
                i + 1
            )));
        }
        if best.as_ref().is_none_or(|b| s_i.len() > b.len()) {
            best = Some(s_i);
        }
    }
    let s = VertexSet::new(best.expect("at least one layer"));
    if (s.len() * inst.l) as i64 + inst.h.m() as i64 + 2 < x.len() as i64 {
        return Err(Error::GadgetInvariant(format!(
            "best layer has {} vertices, below the guaranteed ({} - {} - 2) / {}",
            s.len(),
            x.len(),
            inst.h.m(),
            inst.l
        )));
    }
    Ok(s)
}

/// Lift an independent set `s` (avoiding the universal vertex) into a total
/// visibility set of a CLIQUE_PRODUCT gadget: all `L` copies of `s`.
pub fn embed_layered_total_set(inst: &ReductionInstance, s: &VertexSet) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::CliqueProduct)?;
    s.validate(inst.h.n())?;
    let z = inst.z.expect("product instances store their universal vertex");
    if s.contains(z) {
        return Err(Error::InvalidParams(format!(
            "embedded set must avoid the universal source vertex {z}"
        )));
    }
    inst.check_independent_in_h(s)?;
    let ids: Vec<VertexId> =
        inst.copies.iter().flat_map(|layer| s.iter().map(|&v| layer[v])).collect();
    let x = VertexSet::new(ids);
    debug_assert_eq!(x.len(), inst.l * s.len());
    debug_assert!(verify_set_with(
        &inst.g,
        &all_pairs_distances(&inst.g).unwrap(),
        &x,
        SetKind::MuT,
        Sigma::ONE
    )
    .unwrap()
    .ok());
    Ok(x)
}

/// Make a verified visibility set of a CLIQUE_PRODUCT gadget layerwise
/// independent by deleting both endpoint copies of every source edge that
/// shows up inside one layer. A verified set can lose at most `N²` vertices
/// this way (`N` for `muo`/`mut`, whose verified sets confine all conflicts
/// to a single layer); both facts are enforced, along with the structural
/// claims behind them: no source edge shows up in two layers, and for
/// `muo`/`mut` a conflicting edge's endpoints appear in no other layer.
pub fn prune_layer_conflicts(
    inst: &ReductionInstance,
    x: &VertexSet,
    kind: SetKind,
) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::CliqueProduct)?;
    if kind == SetKind::Gp {
        return Err(Error::InvalidParams(
            "pruning applies to the four visibility kinds, not gp".into(),
        ));
    }
    x.validate(inst.g.n())?;
    let dist = all_pairs_distances(&inst.g)?;
    let verdict = verify_set_with(&inst.g, &dist, x, kind, Sigma::ONE)?;
    if !verdict.ok() {
        return Err(Error::VerificationFailed { kind, witness: verdict.witness() });
    }
    let endpoint_exclusive = matches!(kind, SetKind::MuO | SetKind::MuT);
    let mut cut: Vec<VertexId> = Vec::new();
    for (u, v) in inst.h.edges() {
        let layers: Vec<usize> = (0..inst.l)
            .filter(|&i| x.contains(inst.copies[i][u]) && x.contains(inst.copies[i][v]))
            .collect();
        match layers[..] {
            [] => {}
            [i] => {
                if endpoint_exclusive {
                    for j in (0..inst.l).filter(|&j| j != i) {
                        if x.contains(inst.copies[j][u]) || x.contains(inst.copies[j][v]) {
                            return Err(Error::GadgetInvariant(format!(
                                "endpoint of layer-{}-exclusive source edge ({u}, {v}) \
                                 reappears in layer {}",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
                cut.push(inst.copies[i][u]);
                cut.push(inst.copies[i][v]);
            }
            _ => {
                return Err(Error::GadgetInvariant(format!(
                    "source edge ({u}, {v}) appears {} times across layers of a verified set",
                    layers.len()
                )))
            }
        }
    }
    let cut = VertexSet::new(cut);
    let x_prime = VertexSet::new(x.iter().copied().filter(|&w| !cut.contains(w)).collect());
    for i in 0..inst.l {
        let s_i = inst.layer_members(&x_prime, i);
        if let Some((u, v)) = inst.first_h_edge_inside(&s_i) {
            return Err(Error::GadgetInvariant(format!(
                "layer {} still holds source edge ({u}, {v}) after pruning",
                i + 1
            )));
        }
    }
    let beta: u32 = if endpoint_exclusive { 1 } else { 2 };
    let budget = (inst.h.n() as u64).pow(beta);
    let removed = (x.len() - x_prime.len()) as u64;
    if removed > budget {
        return Err(Error::GadgetInvariant(format!(
            "pruning removed {removed} vertices, above the guaranteed {budget}"
        )));
    }
    Ok(x_prime)
}

/// From a layerwise-independent set of a CLIQUE_PRODUCT gadget, return the
/// most populated layer as a source independent set — or a lowest-id
/// singleton when every layer is empty — guaranteeing
/// `|S| ≥ max(1, |x'| / L)`.
pub fn extract_best_layer_is(inst: &ReductionInstance, x_prime: &VertexSet) -> Result<VertexSet> {
    inst.expect_kind(ReductionKind::CliqueProduct)?;
    x_prime.validate(inst.g.n())?;
    let mut best: Option<Vec<VertexId>> = None;
    for i in 0..inst.l {
        let s_i = inst.layer_members(x_prime, i);
        if best.as_ref().is_none_or(|b| s_i.len() > b.len()) {
            best = Some(s_i);
        }
    }
    let mut s = best.expect("at least one layer");
    if s.is_empty() {
        s.push(0);
    }
    let s = VertexSet::new(s);
    debug_assert!(inst.check_independent_in_h(&s).is_ok());
    debug_assert!(s.len() * inst.l >= x_prime.len());
    Ok(s)
}

/// What [`extract_clique_or_is`] found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtractTag {
    #[serde(rename = "clique")]
    Clique,
    #[serde(rename = "independent_set")]
    IndependentSet,
}

impl fmt::Display for ExtractTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtractTag::Clique => "clique",
            ExtractTag::IndependentSet => "independent_set",
        })
    }
}

fn ceil_sqrt(x: usize) -> usize {
    let r = x.isqrt();
    r + usize::from(r * r < x)
}

/// On a diameter-2 graph, a verified general-position set induces a
/// disjoint union of cliques; pick one vertex per component when there are
/// at least `√|c|` components, otherwise the largest component. Either way
/// the result has at least `⌈√|c|⌉` vertices. Sets smaller than 2 fall back
/// to vertices {0, 1}, tagged by whether they are adjacent.
pub fn extract_clique_or_is(g: &Graph, c: &VertexSet) -> Result<(VertexSet, ExtractTag)> {
    c.validate(g.n())?;
    let dist = all_pairs_distances(g)?;
    let d = dist.diameter();
    if d != 2 {
        return Err(Error::InvalidParams(format!(
            "clique-or-independent-set extraction requires diameter exactly 2, got {d}"
        )));
    }
    let verdict = verify_set_with(g, &dist, c, SetKind::Gp, Sigma::ONE)?;
    if !verdict.ok() {
        return Err(Error::VerificationFailed { kind: SetKind::Gp, witness: verdict.witness() });
    }
    if c.len() < 2 {
        let tag = if g.has_edge(0, 1) { ExtractTag::Clique } else { ExtractTag::IndependentSet };
        return Ok((VertexSet::new(vec![0, 1]), tag));
    }
    if !visibility::is_independent_clique(g, c) {
        return Err(Error::GadgetInvariant(
            "verified gp set is not an independent clique on a diameter-2 graph".into(),
        ));
    }
    // Connected components of the induced subgraph, discovered in ascending
    // id order, so each component list starts with its minimum id.
    let ids = c.as_slice();
    let mut comp_of = vec![usize::MAX; ids.len()];
    let mut comps: Vec<Vec<VertexId>> = Vec::new();
    for start in 0..ids.len() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let label = comps.len();
        comp_of[start] = label;
        let mut members = vec![ids[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..ids.len() {
                if comp_of[j] == usize::MAX && g.has_edge(ids[i], ids[j]) {
                    comp_of[j] = label;
                    members.push(ids[j]);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let target = ceil_sqrt(c.len());
    if comps.len() * comps.len() >= c.len() {
        let picks: Vec<VertexId> = comps.iter().map(|comp| comp[0]).collect();
        debug_assert!(picks.len() >= target);
        Ok((VertexSet::new(picks), ExtractTag::IndependentSet))
    } else {
        let mut best = &comps[0];
        for comp in &comps[1..] {
            if comp.len() > best.len() {
                best = comp;
            }
        }
        debug_assert!(best.len() >= target);
        Ok((VertexSet::new(best.clone()), ExtractTag::Clique))
    }
}

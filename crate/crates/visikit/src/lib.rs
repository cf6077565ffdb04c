//! Mutual-visibility and general-position sets on unweighted graphs.
//!
//! A set `X ⊆ V(G)` leaves a pair of vertices *visible* when some shortest
//! path between them has no internal vertex in `X`. Depending on which pairs
//! must stay visible one gets the mu / mu_d / mu_o / mu_t set families; the
//! general-position family instead forbids three set members on a common
//! shortest path. This crate provides:
//!
//! * verifiers for all five set kinds, including a rational relaxation factor
//!   sigma that admits detours up to `sigma * d(u,v)` ([`visibility`]);
//! * a polynomial-time mu-set construction with a per-instance certified
//!   lower bound via a 3-uniform hypergraph ([`approx`], [`hypergraph`]);
//! * exhaustive oracles for ground truth on small graphs ([`oracle`]);
//! * gadget builders and embed/extract maps that realize the known
//!   reductions between independent sets and visibility sets ([`reductions`]);
//! * generators, metric helpers, and an edge-list format ([`generate`],
//!   [`dist`], [`io`]).
//!
//! The `rayon` feature (on by default) parallelizes APSP, hypergraph
//! construction, and pair verification on large instances; results are
//! identical with the feature disabled.

pub mod approx;
mod bitset;
pub mod dist;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod visibility;

pub use dist::{all_pairs_distances, average_distance, diameter, DistanceMatrix};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexSet};
pub use visibility::{SetKind, Sigma, Verdict, Witness};

/// Expands to the first expression when the `rayon` feature is enabled and to
/// the second one otherwise. Keeps parallel and sequential code paths side by
/// side where they diverge.
#[cfg(feature = "rayon")]
macro_rules! if_rayon {
    ($par:expr, $seq:expr $(,)?) => {
        $par
    };
}
#[cfg(not(feature = "rayon"))]
macro_rules! if_rayon {
    ($par:expr, $seq:expr $(,)?) => {
        $seq
    };
}
pub(crate) use if_rayon;

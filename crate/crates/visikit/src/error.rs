use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph not connected: no path between {u} and {v}")]
    Disconnected { u: usize, v: usize },

    #[error("invalid vertex id {id} (graph has {n} vertices)")]
    InvalidVertex { id: usize, n: usize },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("average distance undefined for n<2")]
    AverageUndefined,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no connected sample after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("sigma must be a rational >= 1, got {0}")]
    SigmaRange(String),

    #[error("relaxation undefined for gp")]
    SigmaForGp,

    #[error("instance too large for exact oracle: n={n} exceeds limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    /// The permutation greedy exhausted its restarts without meeting the
    /// certified bound. The largest set it did find is attached so callers
    /// can still inspect it; it is never returned as a success.
    #[error("independent set of {best} vertices after {restarts} restarts is below the certified bound {required}")]
    BoundNotMet {
        restarts: usize,
        best: usize,
        required: String,
        best_set: Vec<usize>,
    },

    #[error("set is not independent: contains edge ({u}, {v})")]
    NotIndependent { u: usize, v: usize },

    #[error("set fails {kind} verification{}", witness_suffix(.witness))]
    VerificationFailed {
        kind: crate::visibility::SetKind,
        witness: Option<crate::visibility::Witness>,
    },

    /// An extraction or pruning step observed a structural fact that the
    /// construction guarantees impossible for verified inputs. Reaching this
    /// indicates a bug in the verifier or the gadget builder, not bad input.
    #[error("gadget invariant violated: {0}")]
    GadgetInvariant(String),
}

fn witness_suffix(w: &Option<crate::visibility::Witness>) -> String {
    match w {
        Some(w) => format!(" (witness {w})"),
        None => String::new(),
    }
}

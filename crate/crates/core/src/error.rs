//! Error type shared by every module of the crate.

use crate::graph::{EdgeId, VertexId};

/// Everything that can go wrong in this crate.
///
/// Each variant has a stable machine-readable [`Error::code`]; the CLI and
/// the C interface report that code rather than the display text.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-positive or non-finite weight {value} on {item}")]
    NonPositiveWeight { item: String, value: f64 },
    #[error("non-finite potential on edge {0}")]
    NonFinitePotential(EdgeId),
    #[error("edge {edge} references unknown vertex {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertexId(VertexId),
    #[error("weight of {item} is {found}, but the {kind} weight kind requires {expected}")]
    WeightKindMismatch { item: String, kind: &'static str, found: f64, expected: f64 },
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(VertexId),
    #[error("a partition block is empty")]
    EmptyBlock,
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("vertex {0} carries a loop")]
    LoopAtVertex(VertexId),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("map is not total: {0}")]
    PartialMap(String),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("eigenvalue iteration did not converge")]
    ConvergenceFailure,
    #[error("shift must be non-negative, got {0}")]
    NegativeShift(i64),
    #[error("graph must carry combinatorial weights")]
    NotCombinatorial,
    #[error("graph must carry standard weights")]
    NotStandard,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("magnetic potential must vanish")]
    NonzeroPotential,
    #[error("potential is not in the requested range: edge {0}")]
    PotentialOutOfRange(EdgeId),
    #[error("vector is zero")]
    ZeroVector,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(VertexId),
    #[error("edge {0} is not simple")]
    MultiEdge(EdgeId),
    #[error("edge {0} is not a pendant edge")]
    NotPendant(EdgeId),
    #[error("graph is not simple")]
    NotSimple,
    #[error("minor step {step} is invalid: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("certificate violated: {0}")]
    CertificateViolation(String),
    #[error("map is not a magnetic weighted homomorphism")]
    NotAHomomorphism,
    #[error("Cheeger inequality only available for k = 1, or k = 2 with trivial potential; got k = {0}")]
    UnsupportedCheegerOrder(usize),
    #[error("every vertex would be virtualised")]
    AllVerticesVirtualised,
    #[error("spectrum depends on the Floquet parameter: {0}")]
    NotTIndependent(String),
    #[error("bracket violated: {0}")]
    BracketViolation(String),
    #[error("interval counts differ: {0} vs {1}")]
    IndexCountMismatch(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used on diagnostic streams.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            NonPositiveWeight { .. } => "non-positive-weight",
            NonFinitePotential(_) => "non-finite-potential",
            DanglingEndpoint { .. } => "dangling-endpoint",
            DuplicateEdgeId(_) => "duplicate-edge-id",
            DuplicateVertexId(_) => "duplicate-vertex-id",
            WeightKindMismatch { .. } => "weight-kind-mismatch",
            UnknownEdge(_) => "unknown-edge",
            UnknownVertex(_) => "unknown-vertex",
            OverlappingBlocks(_) => "overlapping-blocks",
            EmptyBlock => "empty-block",
            LoopContraction(_) => "loop-contraction",
            LoopAtVertex(_) => "loop-at-vertex",
            EmptyVertexSet => "empty-vertex-set",
            PartialMap(_) => "partial-map",
            SizeLimitExceeded(_) => "size-limit-exceeded",
            EmptyGraph => "empty-graph",
            NotHermitian(_) => "not-hermitian",
            ConvergenceFailure => "convergence-failure",
            NegativeShift(_) => "negative-shift",
            NotCombinatorial => "not-combinatorial",
            NotStandard => "not-standard",
            Disconnected => "disconnected",
            NonzeroPotential => "nonzero-potential",
            PotentialOutOfRange(_) => "potential-out-of-range",
            ZeroVector => "zero-vector",
            IndexOutOfRange { .. } => "index-out-of-range",
            SameVertex(_) => "same-vertex",
            MultiEdge(_) => "multi-edge",
            NotPendant(_) => "not-pendant",
            NotSimple => "not-simple",
            InvalidStep { .. } => "invalid-step",
            HypothesisNotSatisfied(_) => "hypothesis-not-satisfied",
            CertificateViolation(_) => "certificate-violation",
            NotAHomomorphism => "not-a-homomorphism",
            UnsupportedCheegerOrder(_) => "unsupported-cheeger-order",
            AllVerticesVirtualised => "all-vertices-virtualised",
            NotTIndependent(_) => "not-t-independent",
            BracketViolation(_) => "bracket-violation",
            IndexCountMismatch(..) => "index-count-mismatch",
            InvalidInput(_) => "invalid-input",
            Io(_) => "io",
            Parse(_) => "parse",
        }
    }

    /// True for failures of a numerically checked guarantee, as opposed to bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::CertificateViolation(_) | Error::BracketViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

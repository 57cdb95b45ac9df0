use thiserror::Error;

/// Errors produced by graph construction, metrics, transforms and enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(String),
    #[error("graph6 bitstream length mismatch: expected {expected} bytes, got {got}")]
    TruncatedBitstream { expected: usize, got: usize },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeListParse { line: usize, reason: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph too small: n = {n}, need n >= {min}")]
    TooSmall { n: usize, min: usize },
    #[error("degree sequence contains a zero degree")]
    ZeroDegree,
    #[error("degree sequence is not graphical")]
    NotGraphical,
    #[error("graph with n = {n}, m = {m} is not a tree")]
    NotATree { n: usize, m: usize },
    #[error("vertex {vertex} has degree {degree}, need at least {min}")]
    DegreeTooLow {
        vertex: usize,
        degree: usize,
        min: usize,
    },
    #[error("no eligible leaf available for reattachment")]
    NoEligibleLeaves,
    #[error("pivot vertices must be distinct")]
    SameVertex,
    #[error("edge count {m} out of range [{lo}, {hi}] for n = {n}")]
    EdgeCountOutOfRange {
        n: usize,
        m: usize,
        lo: usize,
        hi: usize,
    },
    #[error("graph already has the extremal degree profile")]
    AlreadyExtremal,
    #[error("no valid degree-concentration move found")]
    NoValidMove,
    #[error("n = {n} exceeds enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("start vertex {start} out of range for n = {n}")]
    BadStart { start: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

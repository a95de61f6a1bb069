use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("label {label} outside 0..{n}")]
    LabelOutOfRange { label: u32, n: u32 },
    #[error("chord ({a},{b}) needs two distinct endpoints of equal parity")]
    BadChord { a: u32, b: u32 },
    #[error("malformed rotation system: {0}")]
    Structure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("degree {0} unsupported")]
    Degree(usize),
    #[error("boundary label {0} must carry exactly one edge")]
    LooseEnd(u32),
    #[error("interior node {node} has valency {valency}")]
    Valency { node: usize, valency: usize },
    #[error("cycle found in the underlying graph")]
    Cycle,
    #[error("rotation system is not a planar disc map")]
    NonPlanar,
    #[error("strand starting at {from} ends at {to} of the other parity")]
    Parity { from: u32, to: u32 },
    #[error("chord {0} has endpoints of different parity")]
    ChordParity(String),
    #[error("{color} chords {a} and {b} cross without a declared pencil")]
    SameColorCrossing {
        color: &'static str,
        a: String,
        b: String,
    },
    #[error("node {0} mixes colours but is not a 4-valent crossing")]
    MixedVertex(usize),
    #[error("half-axis or orientation mismatch at node {0}")]
    Orientation(usize),
    #[error("found {found} crossings, expected {expected}")]
    CrossingCount { found: usize, expected: usize },
    #[error("crossing pairing is not perfect: {0}")]
    Pairing(String),
    #[error("chords do not form a perfect matching of the {0} labels")]
    NotPerfect(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("cannot parse notation {0:?}")]
    Notation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Invalid(#[from] SignatureError),
    #[error("need at least two sites, got {0}")]
    TooFewSites(usize),
    #[error("site {0} is not on the chosen face")]
    NotOnFace(String),
    #[error("sites belong to one tree; gluing them closes a cycle")]
    SameTree,
    #[error("face index {0} out of range")]
    NoFace(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("operation needs a generic signature")]
    NotGeneric,
    #[error("node {0} is not a pencil vertex")]
    NotPencil(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("polynomial is not usable: {0}")]
    BadPolynomial(String),
    #[error("near-degenerate: critical value {re}{im:+}i lies within {margin:e} of the axes")]
    NearDegenerate { re: f64, im: f64, margin: f64 },
    #[error("root finder did not converge after {0} iterations")]
    RootFinding(usize),
    #[error("tracing failed near {re}{im:+}i: {reason}")]
    Numeric { re: f64, im: f64, reason: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("path is empty")]
    EmptyPath,
    #[error("sample {0} has degree {1}, expected {2}")]
    DegreeMismatch(usize, usize, usize),
    #[error("root matching between samples {0} and {1} is ambiguous; sample more finely")]
    Ambiguous(usize, usize),
    #[error("strands {0} and {1} swap real-part order while not adjacent near sample {2}; perturb the path")]
    NonAdjacentSwap(usize, usize, usize),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {reason}")]
    Field { field: String, reason: String },
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Map(#[from] MapError),
}

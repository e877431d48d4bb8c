use thiserror::Error;

/// Errors raised by the classification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover order must be at least 2 (got {0})")]
    OrderTooSmall(u32),

    #[error("genus must be at least {min} (got {got})")]
    GenusTooSmall { got: u32, min: u32 },

    #[error("order {0} is not prime")]
    NotPrime(u32),

    #[error("branching sequence for d={d} must have {expected} entries (got {got})")]
    SequenceLength { d: u32, expected: usize, got: usize },

    #[error("branching data {seq:?} is not admissible for g={g}, d={d}: {reason}")]
    Inadmissible {
        g: u32,
        d: u32,
        seq: Vec<u32>,
        reason: String,
    },

    #[error("codimension formulas disagree for g={g}, d={d}: {difference} vs {closed}")]
    FormulaMismatch {
        g: u32,
        d: u32,
        difference: i64,
        closed: i64,
    },

    #[error("picard model: {0}")]
    Picard(String),

    #[error("branch assignment: {0}")]
    Assignment(String),

    #[error("character {chi} out of range for d={d}")]
    CharacterOutOfRange { chi: u32, d: u32 },

    #[error("graph: {0}")]
    Graph(String),

    #[error("vertex {vertex}: {reason}")]
    Vertex { vertex: u32, reason: String },

    #[error("edge {index} is not smoothable")]
    NotSmoothable { index: usize },

    #[error("enlargement precondition failed: {0}")]
    Enlargement(String),

    #[error("unstable summand (genus {genus}, {marks} marks) in stratum dimension")]
    UnstableSummand { genus: u32, marks: u32 },

    #[error("document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

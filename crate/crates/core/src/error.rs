use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bit string literal {0:?}")]
    BadBits(String),

    #[error("malformed ring literal {0:?}")]
    BadRingLiteral(String),

    #[error("invalid fidelity {0}: expected a value in [0, 1]")]
    InvalidFidelity(String),

    #[error("invalid probability {0}: expected a value in [0, 1]")]
    InvalidProbability(String),

    #[error("probabilities sum to {0}, which exceeds 1")]
    ProbabilityMass(String),

    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("repeated qubit index {0}")]
    RepeatedQubit(usize),

    #[error("gate {gate} acts on {expected} qubits, got {got}")]
    GateArity {
        gate: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("split point {k} out of range for {n} qubits")]
    SplitOutOfRange { k: usize, n: usize },

    #[error("state is not normalized")]
    NotNormalized,

    #[error("vectors are not orthonormal")]
    NotOrthonormal,

    #[error("{got} vectors exceed the dimension {dim}")]
    TooManyVectors { got: usize, dim: usize },

    #[error("state with {0} qubits exceeds the limit of {1}")]
    TooManyQubits(usize, usize),

    #[error("invalid machine configuration: {0}")]
    Config(String),

    #[error("resource refusal: {needed} candidates exceed the budget of {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("table error: {0}")]
    Table(String),

    #[error("digest mismatch: manifest says {expected}, content hashes to {actual}")]
    Digest { expected: String, actual: String },

    #[error("unsupported table version {0}")]
    Version(u32),

    #[error("target has {target} qubits but the table is for {table}")]
    TargetWidth { target: usize, table: usize },

    #[error("{0}")]
    Refused(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

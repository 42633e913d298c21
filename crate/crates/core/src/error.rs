use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("FCIDUMP parse error at line {line}: {msg}")]
    Fcidump { line: usize, msg: String },

    #[error("invalid integrals: {0}")]
    Integrals(String),

    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeOutOfRange { index: usize, n_modes: usize },

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("{n} qubits exceeds the dense limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },

    #[error("operator is not hermitian (max |Im c| = {0:e})")]
    NotHermitian(f64),

    #[error("no basis states in sector N={n_electrons}, 2Sz={spin_2s:?}")]
    EmptySector {
        n_electrons: usize,
        spin_2s: Option<i32>,
    },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("unsupported gate kind {0}")]
    UnsupportedGate(String),

    #[error("circuit parse error at line {line}: {msg}")]
    CircuitParse { line: usize, msg: String },

    #[error("state dimension mismatch: circuit has {circuit} qubits, state has {state}")]
    DimensionMismatch { circuit: usize, state: usize },

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("open-shell reference ({0} electrons) not supported for spin-adapted pools")]
    OpenShell(usize),

    #[error("occupation of {electrons} electrons exceeds {qubits} qubits")]
    Occupation { electrons: usize, qubits: usize },

    #[error("invalid noise model: {0}")]
    Noise(String),

    #[error("symmetry does not commute with the Hamiltonian: {0}")]
    SymmetryBreaking(String),

    #[error("post-selection discarded every shot")]
    TotalSymmetryViolation,

    #[error("missing counts for measurement group {0}")]
    MissingGroup(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("stage `{stage}` failed for state {state}: {source}")]
    Stage {
        stage: &'static str,
        state: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn at_stage(self, stage: &'static str, state: impl Into<String>) -> Error {
        Error::Stage {
            stage,
            state: state.into(),
            source: Box::new(self),
        }
    }
}

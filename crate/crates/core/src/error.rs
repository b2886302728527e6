use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("exponent overflow")]
    Overflow,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("S-pair budget of {cap} exhausted")]
    ResourceCap { cap: usize },

    #[error("chain did not stabilize within e_max = {e_max}")]
    NotStabilized {
        e_max: u32,
        /// Partial sums S_0, S_1, ... printed as canonical ideal strings.
        last_chain: Vec<String>,
    },
}

impl Error {
    /// Machine-readable error class, used in CLI reports and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring_mismatch",
            Error::Overflow => "overflow",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unsupported(_) => "unsupported",
            Error::ResourceCap { .. } => "resource_cap",
            Error::NotStabilized { .. } => "not_stabilized",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

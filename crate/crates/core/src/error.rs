use thiserror::Error;

/// Errors raised while building groups or evaluating set/subgroup operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {reason}{}", fmt_triple(.witness))]
    NotAGroup {
        reason: String,
        witness: Option<[usize; 3]>,
    },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("element sets belong to different groups")]
    AmbientMismatch,
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("set is not a union of conjugacy classes")]
    NotInvariant,
    #[error("not a permutation of 0..{degree}: {images:?}")]
    NotAPermutation { degree: usize, images: Vec<usize> },
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("action of element {element} is not an automorphism")]
    NotAnAutomorphism { element: usize },
    #[error("action is not a homomorphism at pair ({0}, {1})")]
    NotAnAction(usize, usize),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn fmt_triple(w: &Option<[usize; 3]>) -> String {
    match w {
        Some([a, b, c]) => format!(" (at {a}, {b}, {c})"),
        None => String::new(),
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

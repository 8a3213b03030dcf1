use thiserror::Error;

/// Failure while assembling an instance from agent names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown resident id {0:?}")]
    UnknownResident(String),
    #[error("unknown hospital id {0:?}")]
    UnknownHospital(String),
}

/// A matching that does not fit the instance it is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("pair ({resident}, {hospital}) is not mutually acceptable")]
    NotAcceptable { resident: String, hospital: String },
    #[error("resident {0} is assigned to more than one hospital")]
    ResidentReassigned(String),
    #[error("hospital {hospital} holds {assigned} residents but has capacity {capacity}")]
    CapacityExceeded {
        hospital: String,
        assigned: usize,
        capacity: u32,
    },
    #[error("matching references an agent index outside the instance")]
    IndexOutOfRange,
}

/// A solver was handed an instance outside its preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("hospital {0} has capacity {1}; this solver requires one-to-one instances")]
    NotUnitCapacity(String, u32),
    #[error("resident {0} lists {1} hospitals; this solver requires lists of length at most 2")]
    ListTooLong(String, usize),
    #[error(
        "{count} unacquainted pairs exceed the bound {bound}; \
         use the approximation solver for instances with many unacquainted pairs"
    )]
    TooManyUnacquainted { count: usize, bound: usize },
    #[error(
        "{count} acquainted pairs exceed the bound {bound}; \
         use the approximation solver for instances with many acquainted pairs"
    )]
    TooManyAcquainted { count: usize, bound: usize },
    #[error("search space of {space} assignments exceeds the limit {limit}")]
    SearchSpaceExceeded { space: u128, limit: u64 },
    #[error("graph has {0} vertices; the exhaustive search accepts at most {1}")]
    GraphTooLarge(usize, usize),
}

/// Syntax or reference error in a text input, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Rejected or unsatisfiable generator specification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("unsatisfiable generator constraints: {0}")]
    Unsatisfiable(String),
}

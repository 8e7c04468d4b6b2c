use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field of order {p}^{m} exceeds the table limit")]
    FieldTooLarge { p: u64, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{h} does not divide {n}")]
    NotDivisor { h: u64, n: u64 },
    #[error("no prime p with p = 1 (mod {h}) in [{lo}, {hi}]")]
    NoPrimeInRange { h: u64, lo: u64, hi: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("edge {0:?} meets a part more than once")]
    PartiteViolation(Vec<u32>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("shift values must be pairwise distinct")]
    DuplicateShift,
    #[error("work budget exceeded: {required} steps needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("no edges survive co-degree pruning (total weight is zero)")]
    EmptyAfterPrune,
    #[error("pattern needs {needed} vertices but host has {available}")]
    PatternTooLarge { needed: usize, available: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

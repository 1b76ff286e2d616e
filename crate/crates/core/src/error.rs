use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator {index} is not a permutation of 1..{degree}: {reason}")]
    NotAPermutation {
        index: usize,
        degree: usize,
        reason: String,
    },
    #[error("group closure exceeds the element cap of {cap}")]
    GroupTooLarge { cap: usize },
    #[error("table is not closed: entry ({row}, {col}) = {value} is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("table is not associative: witness ({a}, {b}, {c}) gives a(bc) = {left} but (ab)c = {right}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown builtin group `{0}`")]
    UnknownGroup(String),
    #[error("class-matrix diagonalization failed after {retries} retries")]
    DegenerateSpectrum { retries: usize },
    #[error("non-integer multiplicity {value} (residual {residual:e})")]
    NonIntegerMultiplicity { value: f64, residual: f64 },
    #[error("non-integer result {value} (residual {residual:e})")]
    NonIntegerResult { value: f64, residual: f64 },
    #[error("enumeration of {requested} tuples exceeds the cap of {cap}")]
    EnumerationCapExceeded { requested: u128, cap: u128 },
    #[error("oracle input of {requested} tuples exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("all multiplicities are zero")]
    AllZeroMultiplicities,
    #[error("unknown region descriptor `{0}`")]
    UnknownRegion(String),
    #[error("pairing matrix is not unitary: residual {residual:e}")]
    UnitarityViolation { residual: f64 },
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("expected a genus-{expected} sector, got genus {found}")]
    WrongGenus { expected: usize, found: usize },
    #[error("no unique conjugate for irrep {0}")]
    NoConjugate(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for the errors that signal a configured size cap was hit.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::EnumerationCapExceeded { .. } | Error::CapExceeded { .. }
        )
    }
}

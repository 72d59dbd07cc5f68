use crate::algebra::LeibnizWitness;
use crate::field::FieldSpec;

/// Errors produced by constructors and solvers.
///
/// Mathematical *negative* answers (an identity fails, no witness exists) are
/// not errors; they are reported through witnesses and `Option` results.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("field mismatch: expected {expected:?}, found {found:?}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("cannot parse scalar {text:?} over {field:?}: {reason}")]
    ScalarParse {
        text: String,
        field: FieldSpec,
        reason: String,
    },
    #[error("exhaustive enumeration is only defined over prime fields")]
    UnsupportedEnumeration,
    #[error("search space of size {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("bracket violates the Leibniz identity at ({},{},{})", witness.left, witness.middle, witness.right)]
    NotLeibniz { witness: LeibnizWitness },
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("the supplied map is not a projection onto the subalgebra")]
    NotProjection,
    #[error("the subspaces do not form a complement decomposition")]
    NotComplement,
    #[error("the linear map is not a deformation map of the matched pair")]
    NotDeformationMap,
    #[error("extending datum violates axiom {axiom}")]
    AxiomViolation { axiom: &'static str },
    #[error("the functional nu of a flag datum of the second kind must be nonzero")]
    ZeroNu,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("vector does not lie in the subspace")]
    NotInSubspace,
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

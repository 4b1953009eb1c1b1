use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mixed quadratic extensions Q(sqrt({0})) and Q(sqrt({1}))")]
    ExtensionMismatch(u64, u64),

    #[error("invalid extension tag {0}: must be a square-free positive integer")]
    InvalidExtension(u64),

    #[error("J^2 != -I at torus {0}")]
    NotComplexStructure(String),

    #[error("matrix does not intertwine the complex structures of {source_name} and {target}")]
    NotIntertwining { source_name: String, target: String },

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("not an isogeny: determinant is zero")]
    NotAnIsogeny,

    #[error("not an isomorphism over Q")]
    NotInvertible,

    #[error("not symplectic")]
    NotSymplectic,

    #[error("sublattice is not stable under the complex structure (not an abelian subvariety)")]
    NotJStable,

    #[error("sublattice columns are linearly dependent")]
    DependentColumns,

    #[error("symplectic oracles disagree: {0}")]
    OracleDisagreement(String),

    #[error("inconsistent structure constants: {0}")]
    InconsistentAlgebra(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

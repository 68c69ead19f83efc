use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors shared by all operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix/vector dimensions do not line up.
    DimensionMismatch(String),
    /// An element vector has the wrong number of coordinates.
    LengthMismatch { expected: usize, found: usize },
    /// `image_map` does not land in the subgroup generated by `kernel_map`.
    ContainmentViolation,
    /// A dense table would exceed the configured tuple limit.
    TableTooLarge { limit: usize },
    /// A cochain that was required to be a cocycle is not one; the offending
    /// tuple (element indices) is reported when known.
    NotACocycle { position: Option<Vec<usize>> },
    /// Two cochains do not live over the same module and degree.
    ModuleMismatch,
    /// A claimed group homomorphism fails the homomorphism or surjectivity
    /// check.
    NotAHomomorphism(String),
    /// An index list is not closed under multiplication.
    NotASubgroup,
    /// The group is not cyclic (or the chosen element does not generate it).
    NotCyclic,
    /// The inertia subgroup is not cyclic or elementary abelian.
    UnsupportedInertia(String),
    /// A multiplication table violates the group laws.
    InvalidGroup(String),
    /// Action matrices do not define a module structure.
    InvalidAction(String),
    /// A module map violates relations or equivariance.
    InvalidMap(String),
    /// A claimed short exact sequence fails injectivity, surjectivity or
    /// exactness at the middle.
    NotExact(String),
    /// A cochain fed to the residue operator is not normalized.
    NotNormalized { position: Vec<usize> },
    /// The residue invariance condition fails at the given tuple and slot.
    InvarianceFailure { position: Vec<usize>, slot: usize },
    /// The inertia subgroup is not central or has no complement.
    NoComplement(String),
    /// A stated precondition of the operation does not hold for the data.
    Precondition(String),
    /// A condition that follows mathematically from validated inputs failed;
    /// indicates a bug or corrupted data.
    Internal(String),
    /// Unknown case identifier.
    UnknownCase(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "vector length {found}, expected {expected}")
            }
            Error::ContainmentViolation => {
                write!(f, "image is not contained in the kernel subgroup")
            }
            Error::TableTooLarge { limit } => {
                write!(f, "dense table exceeds the limit of {limit} tuples")
            }
            Error::NotACocycle { position } => match position {
                Some(p) => write!(f, "not a cocycle (first failure at tuple {p:?})"),
                None => write!(f, "not a cocycle"),
            },
            Error::ModuleMismatch => write!(f, "cochains live over different modules or degrees"),
            Error::NotAHomomorphism(msg) => write!(f, "not a group homomorphism: {msg}"),
            Error::NotASubgroup => write!(f, "index list is not a subgroup"),
            Error::NotCyclic => write!(f, "group is not cyclic with the chosen generator"),
            Error::UnsupportedInertia(msg) => write!(f, "unsupported inertia structure: {msg}"),
            Error::InvalidGroup(msg) => write!(f, "invalid group table: {msg}"),
            Error::InvalidAction(msg) => write!(f, "invalid module action: {msg}"),
            Error::InvalidMap(msg) => write!(f, "invalid module map: {msg}"),
            Error::NotExact(msg) => write!(f, "sequence is not exact: {msg}"),
            Error::NotNormalized { position } => {
                write!(f, "cochain is not normalized at tuple {position:?}")
            }
            Error::InvarianceFailure { position, slot } => {
                write!(f, "inertia invariance fails at tuple {position:?}, slot {slot}")
            }
            Error::NoComplement(msg) => write!(f, "bad inertia decomposition: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
            Error::UnknownCase(msg) => write!(f, "unknown case id: {msg}"),
        }
    }
}

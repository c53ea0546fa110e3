use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ill-defined homomorphism: relation {relation} is not mapped into the target relations")]
    IllDefinedHom { relation: usize },

    #[error("vector is not in the lattice")]
    NotInLattice,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("table is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("element list is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("invalid local datum: {name}: {detail}")]
    LocalDatum { name: &'static str, detail: String },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("map is not equivariant for group element {0}")]
    NotEquivariant(usize),

    #[error("subgroup acts nontrivially (element {0})")]
    NontrivialAction(usize),

    #[error("coefficients must be finite or free")]
    MixedCoefficients,

    #[error("coefficient lattice must be free")]
    NotFree,

    #[error("not a 1-cocycle: failure at ({0}, {1})")]
    NotACocycle(usize, usize),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("subgroup chain conditions violated: {0}")]
    Chain(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("independent computations disagree: {0}")]
    Mismatch(String),

    #[error("finite-level computation did not stabilize: {0}")]
    NotStable(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),

    #[error("torus is not unramified")]
    NotUnramified,

    #[error("wild inertia acts nontrivially")]
    WildAction,

    #[error("invalid root datum: {0}")]
    RootDatum(String),

    #[error("invalid archimedean datum: {0}")]
    Archimedean(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

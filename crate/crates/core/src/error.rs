use thiserror::Error;

/// Errors shared by every layer of the library.
///
/// Most arithmetic is total; the variants here are the documented failure
/// modes of the checked entry points (division by zero, unsupported field
/// coercions, irregular singularities and so on).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: cannot coerce {0} and {1} into a supported cyclotomic field")]
    ConductorMismatch(u32, u32),
    #[error("order {order} does not divide the conductor {conductor}")]
    OrderNotSupported { order: u32, conductor: u32 },
    #[error("degenerate triple: points must be pairwise distinct")]
    DegenerateTriple,
    #[error("quadratic extension modulus mismatch")]
    ModulusMismatch,
    #[error("coefficient domains do not match: {0}")]
    DomainMismatch(String),
    #[error("rational map must be non-constant")]
    ConstantMap,
    #[error("irregular singularity at {0}")]
    IrregularSingularity(String),
    #[error("indicial root is not rational at {0}")]
    IrrationalExponent(String),
    #[error("operator does not rationalize: {0}")]
    NotRationalizable(String),
    #[error("base point is singular for the operator")]
    SingularBasePoint,
    #[error("resonance obstruction at exponent {0} (logarithmic solution required)")]
    ResonanceObstruction(String),
    #[error("series base points do not match")]
    BasePointMismatch,
    #[error("leading coefficient is not invertible for this operation")]
    NonUnitLeading,
    #[error("matrix series has a singular leading term")]
    SingularLeadingTerm,
    #[error("series order {have} is insufficient (need at least {need})")]
    InsufficientOrder { need: usize, have: usize },
    #[error("polynomial arity does not match the solution matrix")]
    ArityMismatch,
    #[error("antiderivative has a residue term: logarithm required")]
    LogarithmRequired,
    #[error("group closure exceeded the configured bound {0}")]
    BoundExceeded(usize),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("transformed generator exceeds the ideal-membership degree cap {0}")]
    DegreeOverflow(usize),
    #[error("inconsistent exact-sequence data: {0}")]
    InconsistentData(String),
    #[error("symmetry record carries no lift")]
    MissingLift,
    #[error("fixed point has resonant exponents; lift matching is ambiguous")]
    ResonantFixedPoint,
    #[error("witness degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("too few resolved singular points ({0})")]
    TooFewPoints(usize),
    #[error("internal closure violation: {0}")]
    ClosureViolation(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

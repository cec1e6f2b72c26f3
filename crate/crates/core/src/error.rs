use crate::gf::GfError;
use crate::poly::PolyError;

/// Errors raised above the field and polynomial layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("curve file line {line}: {msg}")]
    CurveFile { line: usize, msg: String },
    #[error("the defining form must have degree at least 1")]
    DegenerateForm,
    #[error("curve is reducible over F_{p}: {factor} divides the defining form")]
    Reducible { p: u64, factor: String },
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("places of degree {needed} are required but only degrees up to {max} are enumerated")]
    UnsupportedDegree { needed: u32, max: u32 },
    #[error("branches at {point} need an extension of degree above {limit}")]
    BranchClassUnsupported { point: String, limit: u32 },
    #[error("resolving the singularity at {point} needs more than {depth} blow-ups")]
    SingularResolutionDepthExceeded { point: String, depth: usize },
    #[error("unknown place '{0}'")]
    UnknownPlace(String),
    #[error("place {0} is not rational")]
    NotRationalPlace(String),
    #[error("series precision exhausted at place {0}")]
    PrecisionExhausted(String),
    #[error("conductor exponent at {0}: both derivative quotients degenerate and the point is not unibranch")]
    BothFormsDegenerate(String),
    #[error("degree and adjunction divisor give negative genus {0}")]
    NegativeGenus(i64),
    #[error("the form vanishes identically on the curve")]
    CurveComponent,
    #[error("no adjoint form of degree up to {0} satisfies the base conditions")]
    NoAdjointFound(u32),
    #[error("the denominator vanishes identically on the curve")]
    FunctionUndefinedOnCurve,
    #[error("divisor syntax error at offset {pos}: {msg}")]
    DivisorSyntax { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

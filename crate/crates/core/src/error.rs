use thiserror::Error;

use crate::poly::ProjPoint;
use crate::tower::FieldElement;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("degree {0} outside the supported range 3..=64")]
    UnsupportedDegree(u32),
    #[error("radicand {0} is not supported (must be an integer >= 2)")]
    UnsupportedRadicand(i64),
    #[error("operands live in different fields (d={left}, d={right})")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("cannot invert zero")]
    ZeroInput,
    #[error("zero divisor found: the defining relation shares the factor {factor}")]
    ZeroDivisor { factor: String },
    #[error("malformed serialized value: {0}")]
    Parse(String),

    #[error("point {0} is not on the curve")]
    NotOnCurve(ProjPoint),
    #[error("curve is singular at {0}")]
    SingularPoint(ProjPoint),
    #[error("all projective coordinates are zero")]
    ZeroPoint,
    #[error("valuation not determined below truncation order {cap}")]
    TruncationExhausted { cap: usize },
    #[error("no generic coordinate change found after {attempts} attempts (last seed {seed})")]
    GenericityFailure { attempts: u32, seed: u64 },
    #[error("resultant vanishes identically: the curves share a component")]
    ResultantZero,
    #[error("Hessian vanishes at {0}: the osculating conic formula degenerates")]
    HessianVanishes(ProjPoint),
    #[error("expected a {expected}, got degree {got}")]
    WrongDegree { expected: &'static str, got: u32 },
    #[error("operation needs the standard field with radicand 2")]
    NeedsStandardTower,

    #[error("singularity at {0} is not ordinary")]
    NonOrdinary(ProjPoint),
    #[error("unknown arrangement label `{0}`")]
    UnknownArrangement(String),
    #[error("could not account for every intersection of the curve with line {line}: found {found} of {expected}")]
    UnresolvedCurveIntersection { line: String, found: u32, expected: u32 },
    #[error("brute-force search is capped at d <= {cap}, got d = {d}")]
    SearchCap { d: u32, cap: u32 },

    #[error("automorphism fixes no line pointwise")]
    NoFixedLine,
    #[error("line carries {found} sextactic points, expected {expected}")]
    FewerPoints { found: usize, expected: usize },
    #[error("certification failed: {what} (value {value})")]
    CertificationFailure { what: String, value: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn cert(what: impl Into<String>, value: &FieldElement) -> Self {
        Error::CertificationFailure { what: what.into(), value: value.to_string() }
    }
}

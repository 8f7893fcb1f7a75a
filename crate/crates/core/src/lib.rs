//! Optimal-rate approximation of analytic functions on (−1,1) with
//! algebraic endpoint decay, built from generalized Blaschke products over
//! modified Ganelius sampling points, plus a single-exponential Sinc
//! baseline and a verification harness for the underlying inequalities.

pub mod approximant;
pub mod corpus;
pub mod kernel;
pub mod numerics;
pub mod sampling;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("N={n}, r={r}: split index N0={n0} below the supported minimum {min}")]
    InvalidSplitIndex { n: u32, r: f64, n0: i64, min: i64 },
    #[error("sampling points a_{i} and a_{j} coincide to within 4 ulp")]
    NodeCollision { i: usize, j: usize },
    #[error("arctanh is undefined at x = ±1")]
    AtanhAtUnit,
    #[error("opening angle d={0} outside (0, pi)")]
    InvalidAngle(f64),
    #[error("point lies outside the analyticity region")]
    OutsideRegion,
    #[error("nu={nu} outside the admissible interval ({lo}, {hi}) for mu={mu}")]
    NuOutOfRange { nu: f64, mu: f64, lo: f64, hi: f64 },
    #[error("unknown test function '{0}' (expected one of f1..f5)")]
    UnknownFunction(String),
    #[error("unknown precision '{0}' (expected binary64 or extended)")]
    UnknownPrecision(String),
    #[error("parameter {name}={value} must be positive")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("{0}")]
    InvalidParameter(&'static str),
    #[error("quadrature failed to reach the requested accuracy")]
    QuadratureAccuracy,
}

pub type Result<T> = std::result::Result<T, Error>;

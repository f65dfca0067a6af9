//! Edit distance functions of `Forb(K_{2,t})` through colored regularity
//! graphs: exact quadratic minimization, embedding checks, the constructions
//! that give upper bounds, the assembled bound envelope, and brute-force
//! oracles for cross-checking small cases.

pub mod bounds;
pub mod constructions;
pub mod crg;
pub mod error;
pub mod field;
pub mod forbid;
pub mod graph;
pub mod gsolve;
mod linalg;
pub mod oracle;
pub mod scalar;
pub mod verify;

#[cfg(test)]
mod test_support;

/// Arbitrary-precision rational; the exact scalar carrier.
pub type Rational = num_rational::BigRational;

pub use crg::{Crg, EdgeColor, VertexColor};
pub use error::{Error, Result};
pub use forbid::ForbParameter;
pub use graph::SimpleGraph;
pub use gsolve::GSolution;
pub use scalar::{Probability, Scalar};

/// Exact solution of the quadratic program.
pub type ExactSolution = GSolution<Rational>;
/// Floating-point solution of the quadratic program.
pub type FloatSolution = GSolution<f64>;

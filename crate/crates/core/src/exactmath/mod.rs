//! Exact arithmetic: integer linear algebra, rational polynomials, real root
//! isolation and computation in the number field ℚ(β).

pub mod interval;
pub mod linalg;
pub mod numfield;
pub mod perron;
pub mod poly;
pub mod realroot;
pub mod scalar;

use thiserror::Error;

pub use interval::RatInterval;
pub use linalg::{residue_decompose, solve_integer, IntMatrix, IntVector, IntegerSolver, RatMatrix};
pub use numfield::{nf_sign, NumberField, NumberFieldElement, Sign};
pub use perron::{perron_data, perron_data_in, PerronData};
pub use poly::RatPoly;
pub use realroot::RealIsolation;
pub use scalar::{LatticeScalar, RenderScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("digits are not a complete residue system: {0}")]
    NotResidueSystem(String),
    #[error("polynomial {0} is reducible over the rationals")]
    ReduciblePolynomial(String),
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("eigenvector has a vanishing last coordinate")]
    DegenerateEigenvector,
    #[error("division by zero in the number field")]
    DivisionByZero,
}

//! Exact arithmetic: rationals, Q(√3), prime fields, polynomials and linear
//! algebra.

pub mod field;
pub mod matrix;
pub mod minpoly;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod sparse;

pub use field::{Field, RealField};
pub use matrix::DenseMatrix;
pub use rational::Rational;
pub use scalar::QSqrt3;
pub use sparse::{SparseEchelon, SparseMatrix, SparseRow};

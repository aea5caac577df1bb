//! Exact computations for special Riemannian structures built from a
//! symmetric trace-free cubic form: the ternary tensors in dimensions 5, 8,
//! 14 and 26, their stabilizers, invariant decompositions, left-invariant
//! coframe models, and the sextic SU(2)×SU(2) structure in dimension 8.
//!
//! Everything is computed over Q(√3) with no floating point in any result.

pub mod coframe;
pub mod decomposition;
pub mod division;
pub mod error;
pub mod exact;
pub mod exterior;
pub mod lie;
pub mod su2su2;
pub mod tensor;
pub mod ternary;

pub use error::{GeomError, ParseError, Result};

/// Coefficient field of every tensor, form and polynomial.
pub type Scalar = exact::QSqrt3;
/// Dense matrix over [`Scalar`].
pub type Mat = exact::DenseMatrix<Scalar>;
/// Multivariate polynomial over [`Scalar`].
pub type MultiPoly = exact::poly::Polynomial<Scalar>;
/// Totally symmetric tensor over [`Scalar`].
pub type SymTensor = tensor::SymmetricTensor<Scalar>;
/// Alternating form over [`Scalar`].
pub type KForm = exterior::Form<Scalar>;

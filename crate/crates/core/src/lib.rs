//! Exact computation of moduli-space dimensions for jets of general affine
//! connections (with torsion) at the origin of `R^n`, under the action of
//! origin-preserving diffeomorphisms.
//!
//! The crate computes
//! - the infinitesimal action `V ↦ j^k(L_V Γ)` and its matrix ([`lie_action`]),
//! - normal-coordinate identities and the linear stabilizer systems
//!   ([`normal_coords`]),
//! - stabilizer and orbit dimensions of generic jets by exact rank
//!   ([`stabilizer`]),
//! - the Poincaré series of the moduli spaces and its closed rational form
//!   ([`poincare`]).
//!
//! Polynomials, jets and matrices are generic over a [`Scalar`]; the aliases
//! below fix the exact rational instantiation used for every rank decision.

pub mod cli;
pub mod error;
pub mod exact_core;
pub mod jets;
pub mod lie_action;
pub mod normal_coords;
pub mod poincare;
pub mod scalar;
pub mod stabilizer;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

pub use exact_core::{QMatrix, QVector};

/// Truncated multivariate polynomial with rational coefficients.
pub type TruncatedPolynomial = jets::Polynomial<Rational>;
/// Jet of a connection's Christoffel symbols `Γ^l_ij`.
pub type ConnectionJet = jets::Jet3<Rational, jets::Connection>;
/// Jet of a (1,2)-tensor, e.g. `L_V Γ`.
pub type TensorJet = jets::Jet3<Rational, jets::Tensor>;
/// Jet of a vector field vanishing at the origin.
pub type VectorFieldJet = jets::VectorField<Rational>;

pub type SeriesQ = poincare::Series<Rational>;

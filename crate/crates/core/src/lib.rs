//! Exact-rational machinery for the Mermin-square family of nonsignaling
//! polytopes.
//!
//! Everything in this crate computes over exact rational (or Gaussian
//! rational) scalars; there is no floating point anywhere. The linear
//! algebra and polytope layers are generic over the scalar type through
//! [`linalg::Scalar`]; the domain layers (scenario, mermin, symmetry, fine,
//! lambda2) use the concrete [`Rat`] alias.

pub mod fine;
pub mod lambda2;
pub mod linalg;
pub mod mermin;
pub mod polytope;
pub mod scenario;
pub mod serial;
pub mod symmetry;
pub mod verify;

/// Arbitrary-precision rational scalar used by all domain modules.
pub type Rat = num_rational::BigRational;

/// Exact complex scalar (Gaussian rational) used for operator arithmetic.
pub type CRat = num_complex::Complex<Rat>;

/// Dense exact matrix over [`Rat`].
pub type Matrix = linalg::Mat<Rat>;


/// H-polytope over [`Rat`].
pub type Polytope = polytope::HPolytope<Rat>;

/// Convenience constructor for a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience constructor for a rational fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

//! Exact computation of r = 0 Hermitian theta series on P¹ over F_q and
//! verification of their independence from the Lagrangian.
//!
//! The crate is layered bottom-up: [`gf`] (fields and the value ring),
//! [`linalg`] and [`polyalg`] (matrices, F_{q²}[t], torsion modules),
//! [`projline`] (split bundles and Čech cohomology on P¹), [`hermitian`],
//! [`quadspace`], [`fourier`] and [`theta`].

pub mod error;
pub mod gf;
pub mod linalg;
pub mod polyalg;
pub mod projline;
pub mod hermitian;
pub mod quadspace;
pub mod fourier;
pub mod theta;

pub use error::{Error, Result};
pub use gf::{field_make, Field, Psi, Scalar};

/// Exact values with integer coefficients: Z[ζ_p][√q].
pub type CharValue = gf::Cyc<i64>;
/// Values with rational coefficients: Q(ζ_p)(√q) restricted to what we need.
pub type RatValue = gf::Cyc<num_rational::Rational64>;
/// Integer-coefficient values without overflow concerns.
pub type BigCharValue = gf::Cyc<num_bigint::BigInt>;

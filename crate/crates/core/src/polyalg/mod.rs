//! Exact algebra over R = F_{q²}[t]: polynomials, rational functions, Smith
//! normal form, factorization and finite torsion modules.

mod factor;
mod poly;
mod smith;
mod torsion;

pub use factor::{factor, is_irreducible};
pub use poly::{Poly, Rat};
pub use smith::{smith_normal_form, smith_with, Pivot, Smith};
pub use torsion::{enumerate_vectors, PrimaryPart, TorsionDual, TorsionElement, TorsionModule, DEFAULT_ENUM_BOUND};

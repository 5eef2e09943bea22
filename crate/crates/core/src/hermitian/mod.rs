//! Hermitian and skew-Hermitian split bundles, Lagrangian subbundles, the
//! transverse completion of a pair of Lagrangians and the torsion sheaf Q
//! attached to a transverse pair.
//!
//! A skew-Hermitian 𝒢 carries h: 𝒢 → σ*𝒢* with h† = −h, where † is the
//! σ-conjugate dual ([`FormMatrix::dagger`]). A Hermitian ℱ carries
//! h: ℱ → σ*ℱ* ⊗ ω with h†(−2) = h.

mod bundles;
mod complete;
mod instances;
mod qdata;

pub use bundles::{
    b_map, extension_class, is_lagrangian, is_transverse, quotient_map, HermBundle, Lagrangian, SkewHermBundle,
};
pub use complete::{complete_transverse, complete_transverse_generic, saturate};
pub use instances::{
    coprime_real_forms, direct_sum, graph_lagrangian, hyperbolic, mix_unitary, random_herm_bundle, rational_curve, standard_plane,
    Unitary,
};
pub use qdata::{q_construction, DivisorQ, LemmaChecks, PointQ, QData};

#[cfg(doc)]
use crate::projline::FormMatrix;

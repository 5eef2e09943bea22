//! Sheaf linear algebra on X′ = P¹ over F_{q²}, viewed over F_q through the
//! constant-field double cover X′ → X = P¹_{F_q}.
//!
//! Degrees entering exponent formulas are measured over F_q, so O(1) has
//! degree 2 and ω = O(−2) has degree −4.

mod bundle;
mod cech;
mod form;
mod les;

pub use bundle::{
    ext1_space, h0_dim, h1_dim, hom_space, join_fq, split_fq, CohClass, CohKind, ExtClass, MonomialSpace, SheafMap,
    SplitBundle,
};
pub use cech::{
    chart_splittings, ext_class_of_quotient, extension_cocycle, h1_class_of_rational, is_fiberwise_surjective,
    is_subbundle, left_inverse, residue_trace, right_inverse, serre_pairing, to_rat, trace_to_h1_omega,
};
pub use form::{Form, FormMatrix};
pub use les::{matrix_of, FiveTerm};


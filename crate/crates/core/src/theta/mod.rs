//! The r = 0 theta series Z⁰ₘ(𝒢, ℰ)_ℱ and the comparison of its values at two
//! transverse Lagrangians.
//!
//! Z⁰ₘ(𝒢, ℰ)_ℱ = χ(det ℰ)·q^{n(deg ℰ − deg ω_X)/2}·Σ_{t ∈ Hom(ℰ, ℱ)} ψ⟨e_{𝒢,ℰ}, a(t)⟩
//! with a(t) = σ*t^∨ ∘ h_ℱ ∘ t. Degrees are measured over F_q, so deg ℰ is
//! twice the sum of the twists of ℰ and deg ω_X = −2.

mod generate;
mod modularity;
mod sequences;
mod svec;

pub use generate::{graph_instance, hyperbolic_instance, mixed_instance, rational_instance, InstanceKind, ThetaInstance};
pub use modularity::{modularity_check, ChainStep, ModularityReport, PipelineTrace};
pub use sequences::{duality, five_term, kernel_of_g, pushforward_identity, DualityCheck, FiveTermRow, PushforwardCheck};
pub use svec::{pairing_identity_check, s_of_t, s_of_t_mirror, PairingIdentityCheck};

use crate::error::{Error, Result};
use crate::gf::{sqrt_q_power, to_rational, Field, Psi, RingCtx, Scalar};
use crate::hermitian::{extension_class, HermBundle, Lagrangian, SkewHermBundle};
use crate::polyalg::{enumerate_vectors, DEFAULT_ENUM_BOUND};
use crate::projline::{hom_space, serre_pairing, FormMatrix, MonomialSpace};
use crate::quadspace::{chi, QuadSpace};
use crate::{CharValue, RatValue};

/// A value of the theta series; rational coefficients appear when the power
/// of q in the prefactor is negative.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaValue(pub RatValue);

/// a(t) = σ*t^∨ ∘ h_ℱ ∘ t: ℰ → σ*ℰ^∨.
pub fn a_of_t(f: &HermBundle, t: &FormMatrix) -> Result<FormMatrix> {
    t.dagger().twist(-2).compose(&f.h().compose(t)?)
}

/// ⟨e, a⟩ for e ∈ Ext¹(σ*ℰ*, ℰ) and a ∈ Hom(ℰ, σ*ℰ^∨), through Serre duality.
pub fn extension_pairing(fld: &'static Field, e: &FormMatrix, a: &FormMatrix) -> Result<Scalar> {
    serre_pairing(fld, a, &e.twist(-2))
}

/// How the character sum over Hom(ℰ, ℱ) is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMethod {
    /// ψ⟨e, a(t)⟩ for every t.
    Direct,
    /// The quadratic form t ↦ ⟨e, a(t)⟩ is polarized on a basis, then its
    /// values are tallied over all t.
    Polarized,
}

/// The theta sum Σ_t ψ⟨e_{𝒢,ℰ}, a(t)⟩ together with the data it came from.
#[derive(Clone, Debug)]
pub struct ThetaSum {
    pub hom: MonomialSpace,
    /// t ↦ ⟨e_{𝒢,ℰ}, a(t)⟩ on the F_q-coordinates of Hom(ℰ, ℱ).
    pub form: QuadSpace,
    pub sum: CharValue,
}

/// The F_q-quadratic form t ↦ ⟨e_{𝒢,ℰ}, a(t)⟩ on Hom(ℰ, ℱ).
pub fn theta_form(g: &SkewHermBundle, l: &Lagrangian, f: &HermBundle) -> Result<(MonomialSpace, FormMatrix, QuadSpace)> {
    let fld = g.field();
    let e = extension_class(g, l)?;
    let hom = hom_space(fld, &l.bundle(), f.bundle());
    let value = |x: &[Scalar]| -> Scalar {
        let t = hom.element_fq(x);
        let a = a_of_t(f, &t).expect("twists match");
        extension_pairing(fld, &e, &a).expect("twists match")
    };
    let form = QuadSpace::from_fn(fld, hom.dim_fq(), value)?;
    Ok((hom, e, form))
}

pub fn theta_sum(g: &SkewHermBundle, l: &Lagrangian, f: &HermBundle, psi: &Psi, method: SumMethod, bound: u128) -> Result<ThetaSum> {
    let fld = g.field();
    let (hom, e, form) = theta_form(g, l, f)?;
    let sum = match method {
        SumMethod::Polarized => psi.sum_histogram(&form.value_counts(bound)?),
        SumMethod::Direct => {
            let mut counts = vec![0i64; fld.q() as usize];
            for x in enumerate_vectors(fld, fld.q(), hom.dim_fq(), bound)? {
                let a = a_of_t(f, &hom.element_fq(&x))?;
                counts[extension_pairing(fld, &e, &a)?.index() as usize] += 1;
            }
            psi.sum_histogram(&counts)
        }
    };
    Ok(ThetaSum { hom, form, sum })
}

/// Which degree enters q^{n(deg ℰ − deg ω_X)/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeConvention {
    /// Degrees over F_q: deg ℰ = 2Σeᵢ, deg ω_X = −2.
    OverFq,
    /// Degrees over F_{q²} on X′: deg ℰ = Σeᵢ, deg ω_X = −2.
    OverFq2,
}

/// χ(det ℰ)·q^{n(deg ℰ − deg ω_X)/2}.
pub fn prefactor(ring: RingCtx, twists: &[i64], n: usize, conv: DegreeConvention) -> RatValue {
    let d: i64 = twists.iter().sum();
    let deg = match conv {
        DegreeConvention::OverFq => 2 * d,
        DegreeConvention::OverFq2 => d,
    };
    // q^{k/2} = √q^k
    let half_steps = n as i64 * (deg + 2);
    sqrt_q_power(ring, half_steps).scale(&num_rational::Rational64::from_integer(chi(d, n)))
}

/// Z⁰ₘ(𝒢, ℰ)_ℱ by its definition.
pub fn theta_value(g: &SkewHermBundle, l: &Lagrangian, f: &HermBundle, psi: &Psi) -> Result<ThetaValue> {
    theta_value_with(g, l, f, psi, SumMethod::Polarized, DegreeConvention::OverFq, DEFAULT_ENUM_BOUND)
}

pub fn theta_value_with(
    g: &SkewHermBundle,
    l: &Lagrangian,
    f: &HermBundle,
    psi: &Psi,
    method: SumMethod,
    conv: DegreeConvention,
    bound: u128,
) -> Result<ThetaValue> {
    if f.rank() < g.m() {
        return Err(Error::Precondition(format!("need n ≥ m, got n = {} and m = {}", f.rank(), g.m())));
    }
    let s = theta_sum(g, l, f, psi, method, bound)?;
    let pre = prefactor(g.field().ring(), &l.bundle().twists, f.rank(), conv);
    Ok(ThetaValue(&pre * &to_rational(&s.sum)))
}

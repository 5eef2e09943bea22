//! Exact arithmetic in F_q ⊂ F_{q²}, the cover involution σ, the additive
//! character ψ and the value ring Z[ζ_p][√q].

mod field;
mod value;

pub use field::{field_from_params, field_make, field_make_bounded, Field, FieldParams, Scalar, DEFAULT_FIELD_BOUND};
pub use value::{Coeff, Cyc, RingCtx};

use num_rational::Rational64;

use crate::{CharValue, RatValue};

impl Field {
    /// The value ring Z[ζ_p][√q] attached to this field.
    pub fn ring(&self) -> RingCtx {
        RingCtx { p: self.p(), q: self.q() }
    }
}

/// The additive character ψ_c(x) = ζ_p^{Tr_{F_q/F_p}(cx)} on F_q.
#[derive(Clone, Copy, Debug)]
pub struct Psi {
    fld: &'static Field,
    scale: Scalar,
}

impl Psi {
    /// The standard character ψ = ψ_1.
    pub fn standard(fld: &'static Field) -> Psi {
        Psi { fld, scale: fld.one() }
    }
    /// ψ_c for c ∈ F_q^×.
    pub fn scaled(c: Scalar) -> Psi {
        assert!(c.is_base() && !c.is_zero(), "ψ_c needs c ∈ F_q^×");
        Psi { fld: c.field(), scale: c }
    }
    pub fn scale(&self) -> Scalar {
        self.scale
    }
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    /// The exponent k with ψ(x) = ζ_p^k.
    pub fn exponent(&self, x: Scalar) -> u32 {
        (self.scale * x).trace_to_prime()
    }
    pub fn eval(&self, x: Scalar) -> CharValue {
        CharValue::zeta(self.fld.ring(), self.exponent(x) as i64)
    }
    /// Σ_x counts[x]·ψ(x) for a histogram indexed by F_q element index.
    pub fn sum_histogram(&self, counts: &[i64]) -> CharValue {
        let p = self.fld.p() as usize;
        let mut by_exp = vec![0i64; p];
        for (i, &n) in counts.iter().enumerate() {
            if n != 0 {
                by_exp[self.exponent(self.fld.base(i as u32)) as usize] += n;
            }
        }
        let ring = self.fld.ring();
        let mut acc = CharValue::zero(ring);
        for (k, &n) in by_exp.iter().enumerate() {
            if n != 0 {
                acc = &acc + &CharValue::zeta(ring, k as i64).scale(&n);
            }
        }
        acc
    }
}

/// An integer-coefficient value viewed with rational coefficients.
pub fn to_rational(v: &CharValue) -> RatValue {
    v.map(|x| Rational64::from_integer(*x))
}

/// √q^k for any integer k, with rational coefficients.
pub fn sqrt_q_power(ring: RingCtx, k: i64) -> RatValue {
    let pos = RatValue::sqrt_q_pow(ring, k.unsigned_abs() as u32);
    if k >= 0 {
        return pos;
    }
    // √q^{−k} = √q^{k}/q^{k}
    let denom = Rational64::from_integer(ring.q as i64).pow(k.unsigned_abs() as i32);
    pos.scale(&denom.recip())
}

/// ψ(x) = ζ_p^{Tr_{F_q/F_p}(x)}.
pub fn psi(x: Scalar) -> CharValue {
    Psi::standard(x.field()).eval(x)
}

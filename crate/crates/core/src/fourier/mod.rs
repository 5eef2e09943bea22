//! The finite Fourier transform FT_V(φ)(v̂) = (−1)^r Σ_v φ(v)·ψ⟨v, v̂⟩ on
//! F_q^r, and its relative version over a finite base set ([`arith`]).
//!
//! V̂ is identified with F_q^r through the standard pairing, so a function on
//! V̂ is again a [`FiniteFn`]. Points are indexed by [`FiniteVS::index_of`]:
//! coordinate 0 is the fastest digit, each digit the F_q element index.

pub mod arith;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, Psi, Scalar};
use crate::linalg::Mat;
use crate::polyalg::enumerate_vectors;
use crate::quadspace::{gauss_sum, QuadSpace};
use crate::CharValue;

/// Largest q^r for which function tables are built.
pub const FT_POINT_BOUND: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteVS {
    fld: &'static Field,
    dim: usize,
}

impl FiniteVS {
    pub fn new(fld: &'static Field, dim: usize) -> Result<FiniteVS> {
        let size = (fld.q() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > FT_POINT_BOUND {
            return Err(Error::TooLarge { size, bound: FT_POINT_BOUND });
        }
        Ok(FiniteVS { fld, dim })
    }
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn size(&self) -> usize {
        (self.fld.q() as usize).pow(self.dim as u32)
    }
    /// V̂, with the same coordinates.
    pub fn dual(&self) -> FiniteVS {
        *self
    }
    pub fn points(&self) -> impl Iterator<Item = Vec<Scalar>> {
        enumerate_vectors(self.fld, self.fld.q(), self.dim, FT_POINT_BOUND).expect("checked at construction")
    }
    pub fn index_of(&self, v: &[Scalar]) -> usize {
        let q = self.fld.q() as usize;
        v.iter().rev().fold(0, |acc, x| acc * q + x.index() as usize)
    }
    /// ⟨v, v̂⟩.
    pub fn pairing(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        v.iter().zip(w).fold(self.fld.zero(), |a, (x, y)| a + *x * *y)
    }
}

/// A dense table V → CharValue.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFn {
    vs: FiniteVS,
    values: Vec<CharValue>,
}

impl FiniteFn {
    pub fn from_fn(vs: FiniteVS, f: impl Fn(&[Scalar]) -> CharValue) -> FiniteFn {
        FiniteFn { vs, values: vs.points().map(|v| f(&v)).collect() }
    }
    pub fn constant(vs: FiniteVS, c: CharValue) -> FiniteFn {
        FiniteFn { vs, values: vec![c; vs.size()] }
    }
    /// 𝟙_V.
    pub fn one(vs: FiniteVS) -> FiniteFn {
        FiniteFn::constant(vs, CharValue::one(vs.fld.ring()))
    }
    /// δ_V.
    pub fn delta(vs: FiniteVS) -> FiniteFn {
        let ring = vs.fld.ring();
        let mut values = vec![CharValue::zero(ring); vs.size()];
        values[0] = CharValue::one(ring);
        FiniteFn { vs, values }
    }
    /// 𝔮*ψ.
    pub fn gaussian(v: &QuadSpace, psi: &Psi) -> Result<FiniteFn> {
        let vs = FiniteVS::new(v.field(), v.dim())?;
        Ok(FiniteFn::from_fn(vs, |x| psi.eval(v.eval(x))))
    }
    /// Values with small random integer coefficients on the Z-basis of the value
    /// ring.
    pub fn random<R: Rng>(vs: FiniteVS, rng: &mut R) -> FiniteFn {
        let ring = vs.fld.ring();
        let width = 2 * (ring.p as usize - 1);
        let values = (0..vs.size())
            .map(|_| CharValue::from_coeffs(ring, (0..width).map(|_| rng.gen_range(-3..=3)).collect()))
            .collect();
        FiniteFn { vs, values }
    }

    pub fn space(&self) -> FiniteVS {
        self.vs
    }
    pub fn values(&self) -> &[CharValue] {
        &self.values
    }
    pub fn at(&self, v: &[Scalar]) -> &CharValue {
        &self.values[self.vs.index_of(v)]
    }
    pub fn add(&self, o: &FiniteFn) -> FiniteFn {
        self.zip(o, |a, b| a + b)
    }
    /// Pointwise product.
    pub fn mul(&self, o: &FiniteFn) -> FiniteFn {
        self.zip(o, |a, b| a * b)
    }
    pub fn scale(&self, c: &CharValue) -> FiniteFn {
        FiniteFn { vs: self.vs, values: self.values.iter().map(|x| x * c).collect() }
    }
    pub fn scale_int(&self, c: i64) -> FiniteFn {
        FiniteFn { vs: self.vs, values: self.values.iter().map(|x| x.scale(&c)).collect() }
    }
    /// [−1]*φ.
    pub fn negate_argument(&self) -> FiniteFn {
        FiniteFn::from_fn(self.vs, |v| {
            let m: Vec<Scalar> = v.iter().map(|x| -*x).collect();
            self.at(&m).clone()
        })
    }
    pub fn sum(&self) -> CharValue {
        self.values.iter().fold(CharValue::zero(self.vs.fld.ring()), |a, b| &a + b)
    }
    fn zip(&self, o: &FiniteFn, f: impl Fn(&CharValue, &CharValue) -> CharValue) -> FiniteFn {
        assert_eq!(self.vs, o.vs, "functions on different spaces");
        FiniteFn { vs: self.vs, values: self.values.iter().zip(&o.values).map(|(a, b)| f(a, b)).collect() }
    }
}

fn sign(r: i64) -> i64 {
    if r.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Σ_v φ(v)·ψ(⟨v, w⟩), grouping terms by the exponent of ζ_p.
fn character_sum(phi: &FiniteFn, w: &[Scalar], psi: &Psi) -> CharValue {
    let vs = phi.vs;
    let ring = vs.fld.ring();
    let mut by_exp = vec![CharValue::zero(ring); ring.p as usize];
    for (v, x) in vs.points().zip(&phi.values) {
        let k = psi.exponent(vs.pairing(&v, w)) as usize;
        by_exp[k] = &by_exp[k] + x;
    }
    by_exp.iter().enumerate().fold(CharValue::zero(ring), |a, (k, s)| {
        if s.is_zero() {
            a
        } else {
            &a + &(s * &CharValue::zeta(ring, k as i64))
        }
    })
}

/// FT_V(φ), a function on V̂.
pub fn ft(phi: &FiniteFn, psi: &Psi) -> FiniteFn {
    let vs = phi.vs;
    let s = sign(vs.dim as i64);
    FiniteFn::from_fn(vs.dual(), |w| character_sum(phi, w, psi).scale(&s))
}

/// Both sides of q^r Σ φ₁φ₂ = Σ FT([−1]*φ₁)·FT(φ₂).
pub fn plancherel_pair(phi1: &FiniteFn, phi2: &FiniteFn, psi: &Psi) -> (CharValue, CharValue) {
    let q_r = (phi1.vs.fld.q() as i64).pow(phi1.vs.dim as u32);
    let lhs = phi1.mul(phi2).sum().scale(&q_r);
    let rhs = ft(&phi1.negate_argument(), psi).mul(&ft(phi2, psi)).sum();
    (lhs, rhs)
}

/// FT_V̂∘FT_V(φ) and q^r·[−1]*φ.
pub fn involutivity_pair(phi: &FiniteFn, psi: &Psi) -> (FiniteFn, FiniteFn) {
    let q_r = (phi.vs.fld.q() as i64).pow(phi.vs.dim as u32);
    (ft(&ft(phi, psi), psi), phi.negate_argument().scale_int(q_r))
}

/// FT(𝔮*ψ) by enumeration, and (−1)^r·G(V, 𝔮)·(−¼𝔮̂)*ψ with
/// 𝔮̂(v̂) = ⟨h⁻¹v̂, v̂⟩, where h is the Gram matrix of the form.
pub fn ft_gaussian(v: &QuadSpace, psi: &Psi) -> Result<(FiniteFn, FiniteFn)> {
    let h_inv = v
        .gram()
        .inverse()
        .ok_or(Error::Singular)?;
    let fld = v.field();
    let lhs = ft(&FiniteFn::gaussian(v, psi)?, psi);
    let g = gauss_sum(v, psi)?.sum.scale(&sign(v.dim() as i64));
    let half = fld.int(2).inv().expect("odd characteristic");
    let minus_quarter = -(half * half);
    let rhs = FiniteFn::from_fn(lhs.vs, |w| {
        let hw = h_inv.mul_vec(w);
        let dual_q = lhs.vs.pairing(&hw, w);
        &g * &psi.eval(minus_quarter * dual_q)
    });
    Ok((lhs, rhs))
}

/// f_!φ′ for f: V′ → V given as an r×r′ matrix.
pub fn push(f: &Mat<Scalar>, target: FiniteVS, phi: &FiniteFn) -> FiniteFn {
    assert_eq!((f.rows(), f.cols()), (target.dim, phi.vs.dim), "map shape");
    let mut values = vec![CharValue::zero(target.fld.ring()); target.size()];
    for (v, x) in phi.vs.points().zip(&phi.values) {
        let i = target.index_of(&f.mul_vec(&v));
        values[i] = &values[i] + x;
    }
    FiniteFn { vs: target, values }
}

/// f*φ for f: V′ → V.
pub fn pull(f: &Mat<Scalar>, source: FiniteVS, phi: &FiniteFn) -> FiniteFn {
    assert_eq!((f.rows(), f.cols()), (phi.vs.dim, source.dim), "map shape");
    FiniteFn::from_fn(source, |v| phi.at(&f.mul_vec(v)).clone())
}

/// FT_V(f_!φ′) and (−1)^{r−r′}·f̂*FT_{V′}(φ′).
pub fn ft_push_pair(f: &Mat<Scalar>, target: FiniteVS, phi: &FiniteFn, psi: &Psi) -> (FiniteFn, FiniteFn) {
    let lhs = ft(&push(f, target, phi), psi);
    let s = sign(target.dim as i64 - phi.vs.dim as i64);
    let rhs = pull(&f.transpose(), target.dual(), &ft(phi, psi)).scale_int(s);
    (lhs, rhs)
}

/// FT_{V′}(f*φ) and (−1)^{r′−r}·q^{r′−r}·f̂_!FT_V(φ); the power of q is
/// carried on the other side when r′ < r.
pub fn ft_pull_pair(f: &Mat<Scalar>, source: FiniteVS, phi: &FiniteFn, psi: &Psi) -> (FiniteFn, FiniteFn) {
    let (r, r1) = (phi.vs.dim as i64, source.dim as i64);
    let q = source.fld.q() as i64;
    let s = sign(r1 - r);
    let mut lhs = ft(&pull(f, source, phi), psi);
    let mut rhs = push(&f.transpose(), source.dual(), &ft(phi, psi)).scale_int(s);
    if r1 >= r {
        rhs = rhs.scale_int(q.pow((r1 - r) as u32));
    } else {
        lhs = lhs.scale_int(q.pow((r - r1) as u32));
    }
    (lhs, rhs)
}

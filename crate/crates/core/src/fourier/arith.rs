//! The arithmetic Fourier transform of a split F_q-vector space Y → T over a
//! finite set, decategorified: α ↦ (−1)^d·pr₁!(pr₀*α·ev*ψ) computed fiber by
//! fiber.

use crate::error::Result;
use crate::fourier::{FiniteFn, FiniteVS};
use crate::gf::{Field, Psi, Scalar};
use crate::linalg::Mat;
use crate::CharValue;

/// Y → T with fiber Y_t = F_q^{d_t} over t = 0, …, |T| − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RelVS {
    fibers: Vec<FiniteVS>,
}

impl RelVS {
    pub fn new(fld: &'static Field, ranks: &[usize]) -> Result<RelVS> {
        Ok(RelVS { fibers: ranks.iter().map(|&d| FiniteVS::new(fld, d)).collect::<Result<_>>()? })
    }
    pub fn base_size(&self) -> usize {
        self.fibers.len()
    }
    pub fn fiber(&self, t: usize) -> FiniteVS {
        self.fibers[t]
    }
    /// Ŷ with the fiberwise evaluation pairing.
    pub fn dual(&self) -> RelVS {
        self.clone()
    }
    /// h*Y over T′ for h: T′ → T.
    pub fn pullback(&self, h: &[usize]) -> RelVS {
        RelVS { fibers: h.iter().map(|&t| self.fibers[t]).collect() }
    }
}

/// A function on the total space of a [`RelVS`].
#[derive(Clone, Debug, PartialEq)]
pub struct RelFn {
    pub fibers: Vec<FiniteFn>,
}

impl RelFn {
    pub fn from_fibers(fibers: Vec<FiniteFn>) -> RelFn {
        RelFn { fibers }
    }
    pub fn random<R: rand::Rng>(y: &RelVS, rng: &mut R) -> RelFn {
        RelFn { fibers: y.fibers.iter().map(|&vs| FiniteFn::random(vs, rng)).collect() }
    }
    pub fn mul(&self, o: &RelFn) -> RelFn {
        RelFn { fibers: self.fibers.iter().zip(&o.fibers).map(|(a, b)| a.mul(b)).collect() }
    }
    pub fn negate_argument(&self) -> RelFn {
        RelFn { fibers: self.fibers.iter().map(|f| f.negate_argument()).collect() }
    }
    /// π_!: the function t ↦ Σ_{y ∈ Y_t} α(y).
    pub fn push_to_base(&self) -> Vec<CharValue> {
        self.fibers.iter().map(|f| f.sum()).collect()
    }
    /// Multiplication by q^{d_t} on each fiber.
    pub fn scale_by_fiber_size(&self) -> RelFn {
        RelFn { fibers: self.fibers.iter().map(|f| f.scale_int(f.space().size() as i64)).collect() }
    }
    /// Multiplication by the fiberwise integer c_t.
    pub fn scale_fiberwise(&self, c: impl Fn(usize) -> i64) -> RelFn {
        RelFn { fibers: self.fibers.iter().enumerate().map(|(t, f)| f.scale_int(c(t))).collect() }
    }
}

/// The transform on one fiber, written as the push along pr₁ of the kernel
/// α(y)·ψ⟨y, ŷ⟩ on Y_t × Ŷ_t.
fn fiber_transform(alpha: &FiniteFn, psi: &Psi) -> FiniteFn {
    let vs = alpha.space();
    let ring = vs.field().ring();
    let d = vs.dim();
    let mut out = vec![CharValue::zero(ring); vs.size()];
    let points: Vec<Vec<Scalar>> = vs.points().collect();
    for (y, a) in points.iter().zip(alpha.values()) {
        if a.is_zero() {
            continue;
        }
        for (j, yh) in points.iter().enumerate() {
            out[j] = &out[j] + &(a * &psi.eval(vs.pairing(y, yh)));
        }
    }
    let s: i64 = if d % 2 == 0 { 1 } else { -1 };
    FiniteFn::from_fn(vs.dual(), |w| out[vs.index_of(w)].scale(&s))
}

pub fn arith_ft(alpha: &RelFn, psi: &Psi) -> RelFn {
    RelFn { fibers: alpha.fibers.iter().map(|f| fiber_transform(f, psi)).collect() }
}

/// A map of vector spaces Y′ → Y over T, one matrix (d_t × d′_t) per fiber.
#[derive(Clone, Debug)]
pub struct RelMap {
    pub mats: Vec<Mat<Scalar>>,
}

impl RelMap {
    pub fn transpose(&self) -> RelMap {
        RelMap { mats: self.mats.iter().map(|m| m.transpose()).collect() }
    }
    pub fn push(&self, target: &RelVS, alpha: &RelFn) -> RelFn {
        RelFn {
            fibers: self.mats.iter().zip(&alpha.fibers).enumerate().map(|(t, (m, f))| super::push(m, target.fiber(t), f)).collect(),
        }
    }
    pub fn pull(&self, source: &RelVS, alpha: &RelFn) -> RelFn {
        RelFn {
            fibers: self.mats.iter().zip(&alpha.fibers).enumerate().map(|(t, (m, f))| super::pull(m, source.fiber(t), f)).collect(),
        }
    }
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// FT∘φ_!(α) and (−1)^{d−d′}·φ̂*∘FT(α) for φ: Y′ → Y.
pub fn arith_push_pair(phi: &RelMap, source: &RelVS, target: &RelVS, alpha: &RelFn, psi: &Psi) -> (RelFn, RelFn) {
    let lhs = arith_ft(&phi.push(target, alpha), psi);
    let rhs = phi
        .transpose()
        .pull(&target.dual(), &arith_ft(alpha, psi))
        .scale_fiberwise(|t| parity(target.fiber(t).dim() as i64 - source.fiber(t).dim() as i64));
    (lhs, rhs)
}

/// FT∘φ*(α) and (−1)^{d′−d}·q^{d′−d}·φ̂_!∘FT(α) for φ: Y′ → Y; on fibers
/// with d′ < d the power of q multiplies the left side instead.
pub fn arith_pull_pair(phi: &RelMap, source: &RelVS, target: &RelVS, alpha: &RelFn, psi: &Psi) -> (RelFn, RelFn) {
    let q = source.fiber(0).field().q() as i64;
    let diff = |t: usize| source.fiber(t).dim() as i64 - target.fiber(t).dim() as i64;
    let lhs = arith_ft(&phi.pull(source, alpha), psi).scale_fiberwise(|t| if diff(t) < 0 { q.pow((-diff(t)) as u32) } else { 1 });
    let rhs = phi
        .transpose()
        .push(&source.dual(), &arith_ft(alpha, psi))
        .scale_fiberwise(|t| parity(diff(t)) * if diff(t) > 0 { q.pow(diff(t) as u32) } else { 1 });
    (lhs, rhs)
}

/// h_! for h: T′ → T: sums the functions on the fibers over each t.
pub fn base_push(h: &[usize], y: &RelVS, alpha: &RelFn) -> RelFn {
    let fibers = (0..y.base_size())
        .map(|t| {
            let vs = y.fiber(t);
            let mut acc = FiniteFn::constant(vs, CharValue::zero(vs.field().ring()));
            for (tp, f) in alpha.fibers.iter().enumerate() {
                if h[tp] == t {
                    acc = acc.add(f);
                }
            }
            acc
        })
        .collect();
    RelFn { fibers }
}

/// h*: the function on h*Y restricting α along h.
pub fn base_pull(h: &[usize], alpha: &RelFn) -> RelFn {
    RelFn { fibers: h.iter().map(|&t| alpha.fibers[t].clone()).collect() }
}

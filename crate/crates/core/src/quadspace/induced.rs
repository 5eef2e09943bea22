//! (V, 𝔮₁₂) and (V, 𝔮₂₁) for V = Hom(ℱ*, σ*Q), and the Gauss-sum identity
//! γ(V, 𝔮₁₂) = γ(V, 𝔮₂₁) = η(D_Q)ⁿ.

use crate::error::{Error, Result};
use crate::gf::{Psi, Scalar};
use crate::hermitian::{HermBundle, QData};
use crate::linalg::Mat;
use crate::polyalg::{Poly, TorsionModule};
use crate::projline::{join_fq, split_fq};
use crate::quadspace::{gauss_sum_bounded, GaussData, QuadSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Twelve,
    TwentyOne,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Twelve => "12",
            Side::TwentyOne => "21",
        }
    }
}

/// V with one of its two forms. An F_q-vector x of V lists, for each column c
/// of ℱ* and each F_{q²}-basis vector k of σ*Q₁, the pair (re, im).
#[derive(Clone, Debug)]
pub struct InducedSpace {
    pub space: QuadSpace,
    module: TorsionModule,
    n: usize,
}

impl InducedSpace {
    pub fn module(&self) -> &TorsionModule {
        &self.module
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// The m×n matrix of σ*Q₁-representatives for x.
    pub fn element(&self, x: &[Scalar]) -> Mat<Poly> {
        let fld = self.space.field();
        let d = self.module.dim();
        let cols: Vec<Vec<Poly>> = (0..self.n)
            .map(|c| self.module.lift(&self.module.from_coords(&join_fq(fld, &x[2 * d * c..2 * d * (c + 1)]))))
            .collect();
        Mat::from_cols(fld, self.module.ambient_rank(), &cols)
    }
    /// Inverse of [`InducedSpace::element`] after reduction.
    pub fn coords(&self, w: &Mat<Poly>) -> Vec<Scalar> {
        (0..self.n).flat_map(|c| split_fq(&self.module.coords(&self.module.reduce(&w.col(c))))).collect()
    }
}

pub fn induced_quadratic_space(f: &HermBundle, q: &QData, side: Side) -> Result<InducedSpace> {
    if f.field() != q.field() {
        return Err(Error::Precondition("ℱ and Q over different fields".into()));
    }
    let fld = f.field();
    let module = q.sigma_q1();
    let n = f.rank();
    let hf = f.h_chart();
    let shell = InducedSpace { space: QuadSpace::zero(fld), module, n };
    let dim = 2 * shell.module.dim() * n;
    let twelve = side == Side::Twelve;
    let space = QuadSpace::from_fn(fld, dim, |x| q.hermitian_trace(twelve, &hf, &shell.element(x)))?;
    Ok(InducedSpace { space, ..shell })
}

#[derive(Clone, Debug)]
pub struct GaussIdentity {
    pub gamma12: GaussData,
    pub gamma21: GaussData,
    /// η(D_Q)ⁿ.
    pub expected: i64,
    /// 𝔮₁₂ = −𝔮₂₁.
    pub opposite: bool,
    /// The bilinear form of 𝔮₁₂ is perfect.
    pub perfect: bool,
}

impl GaussIdentity {
    pub fn holds(&self, side: Side) -> bool {
        let g = match side {
            Side::Twelve => &self.gamma12,
            Side::TwentyOne => &self.gamma21,
        };
        g.sign() == Some(self.expected)
    }
    pub fn all_hold(&self) -> bool {
        self.holds(Side::Twelve) && self.holds(Side::TwentyOne) && self.opposite && self.perfect
    }
    /// The first failing property as an error.
    pub fn into_result(self) -> Result<GaussIdentity> {
        let detail = if !self.opposite {
            "𝔮₁₂ ≠ −𝔮₂₁".to_string()
        } else if !self.perfect {
            "⟨−,−⟩₁₂ is degenerate".to_string()
        } else if let Some(s) = [Side::Twelve, Side::TwentyOne].into_iter().find(|&s| !self.holds(s)) {
            format!("γ(V, 𝔮{}) ≠ η(D_Q)ⁿ = {}", s.label(), self.expected)
        } else {
            return Ok(self);
        };
        Err(Error::Invariant { lemma: "Gauss sum identity", detail })
    }
}

pub fn gauss_identity_check(f: &HermBundle, q: &QData, psi: &Psi, bound: u128) -> Result<GaussIdentity> {
    let v12 = induced_quadratic_space(f, q, Side::Twelve)?;
    let v21 = induced_quadratic_space(f, q, Side::TwentyOne)?;
    let gamma12 = gauss_sum_bounded(&v12.space, psi, bound)?;
    let gamma21 = gauss_sum_bounded(&v21.space, psi, bound)?;
    let opposite = v12.space.gram() == &v21.space.gram().neg();
    let perfect = v12.space.is_nondegenerate();
    let expected = q.divisor().eta().pow(f.rank() as u32);
    Ok(GaussIdentity { gamma12, gamma21, expected, opposite, perfect })
}

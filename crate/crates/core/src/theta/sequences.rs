//! The two long exact sequences obtained by applying RHom(ℱ*, −) to
//! 0 → σ*ℰ₂ → ℰ₁* → σ*Q → 0 and 0 → σ*ℰ₁ → ℰ₂* → σ*Q → 0, their mutual
//! duality, and the pushforward identity f_!𝟙 = q^{hom}·g*δ.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::hermitian::{HermBundle, Lagrangian, QData};
use crate::linalg::Mat;
use crate::polyalg::{enumerate_vectors, Poly};
use crate::projline::{ext1_space, h1_class_of_rational, hom_space, to_rat, trace_to_h1_omega, FormMatrix, MonomialSpace};
use crate::quadspace::InducedSpace;

fn fq_matrix(fld: &'static Field, src_dim: usize, dst_dim: usize, f: impl Fn(&[Scalar]) -> Result<Vec<Scalar>>) -> Result<Mat<Scalar>> {
    let cols = (0..src_dim)
        .map(|k| {
            let e: Vec<Scalar> = (0..src_dim).map(|i| if i == k { fld.one() } else { fld.zero() }).collect();
            f(&e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_cols(fld, dst_dim, &cols))
}

/// Hom(ℱ*, A) → Hom(ℱ*, B) → V → Ext¹(ℱ*, A) → Ext¹(ℱ*, B) over F_q.
#[derive(Clone, Debug)]
pub struct FiveTermRow {
    /// Which Lagrangian supplies B = ℰᵢ*.
    pub side: usize,
    pub spaces: [MonomialSpace; 4],
    /// F_q-dimensions of the five terms.
    pub dims: [usize; 5],
    pub maps: [Mat<Scalar>; 4],
}

impl FiveTermRow {
    pub fn f(&self) -> &Mat<Scalar> {
        &self.maps[1]
    }
    pub fn g(&self) -> &Mat<Scalar> {
        &self.maps[2]
    }
    /// Exactness everywhere, or the first stage where it fails.
    pub fn check_exact(&self) -> Result<()> {
        const STAGE: [&str; 3] = ["Hom(ℱ*, ℰ*)", "V", "Ext¹(ℱ*, σ*ℰ)"];
        if self.dims[0] > 0 && (self.dims[1] == 0 || self.maps[0].rank() != self.dims[0]) {
            return Err(Error::Invariant { lemma: "five-term sequence", detail: "first map is not injective".into() });
        }
        for k in 0..3 {
            let (a, b) = (&self.maps[k], &self.maps[k + 1]);
            let composite_zero = a.cols() == 0 || b.rows() == 0 || b.mul(a).is_zero();
            if !composite_zero || a.rank() + b.rank() != self.dims[k + 1] {
                return Err(Error::Invariant {
                    lemma: "five-term sequence",
                    detail: format!("row {} not exact at {}", self.side, STAGE[k]),
                });
            }
        }
        // Ext¹(ℱ*, σ*Q) = 0 for torsion Q
        if self.dims[4] > 0 && (self.dims[3] == 0 || self.maps[3].rank() != self.dims[4]) {
            return Err(Error::Invariant { lemma: "five-term sequence", detail: "last map is not surjective".into() });
        }
        Ok(())
    }
}

/// The row for side 1 (B = ℰ₁*, A = σ*ℰ₂) or side 2 (B = ℰ₂*, A = σ*ℰ₁),
/// with V in the coordinates of `v`.
pub fn five_term(l1: &Lagrangian, l2: &Lagrangian, f: &HermBundle, q: &QData, v: &InducedSpace, side: usize) -> Result<FiveTermRow> {
    let fld = f.field();
    let fdual = f.bundle().dual();
    let (ea, eb, b) = match side {
        1 => (l2.bundle(), l1.bundle().dual(), q.b21.sigma()),
        2 => (l1.bundle(), l2.bundle().dual(), q.b12.sigma()),
        _ => return Err(Error::Precondition("side must be 1 or 2".into())),
    };
    let spaces = [
        hom_space(fld, &fdual, &ea),
        hom_space(fld, &fdual, &eb),
        ext1_space(fld, &fdual, &ea),
        ext1_space(fld, &fdual, &eb),
    ];
    let dv = v.space.dim();
    let dims = [spaces[0].dim_fq(), spaces[1].dim_fq(), dv, spaces[2].dim_fq(), spaces[3].dim_fq()];
    // B-representatives (chart y) → σ*Q₁-representatives
    let to_q1 = |w: &Mat<Poly>| -> Mat<Poly> {
        if side == 1 {
            w.clone()
        } else {
            q.psi().conj().mul(w)
        }
    };
    // σ*Q₁-representatives → B-representatives
    let from_q1 = |w: &Mat<Poly>| -> Mat<Poly> {
        if side == 1 {
            w.clone()
        } else {
            q.phi().conj().mul(w)
        }
    };
    let b_inv = to_rat(&b.on_chart_y(fld)?).inverse().ok_or(Error::Singular)?;
    let m0 = fq_matrix(fld, dims[0], dims[1], |x| spaces[1].coords_fq(&b.compose(&spaces[0].element_fq(x))?))?;
    let m1 = fq_matrix(fld, dims[1], dims[2], |x| Ok(v.coords(&to_q1(&spaces[1].element_fq(x).on_chart_y(fld)?))))?;
    let m2 = fq_matrix(fld, dims[2], dims[3], |x| {
        let w = to_rat(&from_q1(&v.element(x)));
        let class = h1_class_of_rational(&b_inv.mul(&w), &ea.twists, &fdual.twists);
        spaces[2].coords_fq(&class)
    })?;
    let m3 = fq_matrix(fld, dims[3], dims[4], |x| spaces[3].coords_fq(&b.compose(&spaces[2].element_fq(x))?))?;
    Ok(FiveTermRow { side, spaces, dims, maps: [m0, m1, m2, m3] })
}

/// Tr Res trace(σ*h_ℱ ∘ ξ† ∘ u) for u ∈ Hom(ℱ*, σ*A), ξ ∈ Ext¹(ℱ*, A*).
fn serre_hom_ext(f: &HermBundle, u: &FormMatrix, xi: &FormMatrix) -> Result<Scalar> {
    let c = f.h().sigma().compose(&xi.dagger().compose(u)?)?;
    trace_to_h1_omega(f.field(), &c)
}

/// Gram matrix with rows indexed by the F_q-basis of Hom(ℱ*, σ*A) and columns
/// by that of Ext¹(ℱ*, A*).
fn serre_gram(f: &HermBundle, hom: &MonomialSpace, ext: &MonomialSpace) -> Result<Mat<Scalar>> {
    let fld = f.field();
    let unit = |d: usize, k: usize| -> Vec<Scalar> { (0..d).map(|i| if i == k { fld.one() } else { fld.zero() }).collect() };
    let us: Vec<FormMatrix> = (0..hom.dim_fq()).map(|k| hom.element_fq(&unit(hom.dim_fq(), k))).collect();
    let xs: Vec<FormMatrix> = (0..ext.dim_fq()).map(|k| ext.element_fq(&unit(ext.dim_fq(), k))).collect();
    let mut out = Mat::zeros(fld, us.len(), xs.len());
    for (i, u) in us.iter().enumerate() {
        for (j, x) in xs.iter().enumerate() {
            out[(i, j)] = serre_hom_ext(f, u, x)?;
        }
    }
    Ok(out)
}

/// The realized signs εₖ in M₁ₖᵀ·Pₖ₊₁ = εₖ·Pₖ·M₂,₃₋ₖ, where Pₖ pairs the k-th
/// term of row 1 with the (4−k)-th term of row 2. `None` marks a position
/// where both sides vanish.
#[derive(Clone, Debug)]
pub struct DualityCheck {
    pub signs12: [Option<i64>; 4],
    pub signs21: [Option<i64>; 4],
    pub perfect: bool,
    pub holds: bool,
}

fn sign_between(lhs: &Mat<Scalar>, rhs: &Mat<Scalar>) -> Option<Option<i64>> {
    if lhs.is_zero() && rhs.is_zero() {
        Some(None)
    } else if *lhs == *rhs {
        Some(Some(1))
    } else if *lhs == rhs.neg() {
        Some(Some(-1))
    } else {
        None
    }
}

pub fn duality(row1: &FiveTermRow, row2: &FiveTermRow, f: &HermBundle, v: &InducedSpace) -> Result<DualityCheck> {
    let fld = f.field();
    let p0 = serre_gram(f, &row1.spaces[0], &row2.spaces[3])?;
    let p1 = serre_gram(f, &row1.spaces[1], &row2.spaces[2])?;
    let p3 = serre_gram(f, &row2.spaces[1], &row1.spaces[2])?.transpose();
    let p4 = serre_gram(f, &row2.spaces[0], &row1.spaces[3])?.transpose();
    let invertible = |p: &Mat<Scalar>| p.rows() == p.cols() && (p.rows() == 0 || p.inverse().is_some());
    let perfect = [&p0, &p1, &p3, &p4].iter().all(|p| invertible(p)) && v.space.is_nondegenerate();
    let mut out = DualityCheck { signs12: [None; 4], signs21: [None; 4], perfect, holds: perfect };
    for (signs, pv) in [(&mut out.signs12, v.space.gram().clone()), (&mut out.signs21, v.space.gram().neg())] {
        let p = [&p0, &p1, &pv, &p3, &p4];
        for k in 0..4 {
            let lhs = if row1.maps[k].rows() == 0 || row1.maps[k].cols() == 0 {
                Mat::zeros(fld, row1.dims[k], row2.dims[3 - k])
            } else {
                row1.maps[k].transpose().mul(p[k + 1])
            };
            let rhs = if p[k].cols() == 0 || row2.maps[3 - k].cols() == 0 {
                Mat::zeros(fld, row1.dims[k], row2.dims[3 - k])
            } else {
                p[k].mul(&row2.maps[3 - k])
            };
            match sign_between(&lhs, &rhs) {
                Some(s) => signs[k] = s,
                None => out.holds = false,
            }
        }
    }
    Ok(out)
}

/// f_!𝟙_{Hom(ℱ*, ℰᵢ*)} against q^{hom(ℱ*, A)}·g*δ.
#[derive(Clone, Debug)]
pub struct PushforwardCheck {
    pub side: usize,
    /// F_q-dimension of Hom(ℱ*, A), the kernel of f.
    pub hom_dim: usize,
    pub kernel_g_dim: usize,
    /// Number of points of Hom(ℱ*, ℰᵢ*) enumerated.
    pub enumerated: u128,
    pub holds: bool,
}

/// Every fiber of f is counted; the identity holds when each point of the
/// image has q^{hom} preimages, lies in ker g, and the image fills ker g.
pub fn pushforward_identity(row: &FiveTermRow, bound: u128) -> Result<PushforwardCheck> {
    let fld = row.maps[1].ctx();
    let (f, g) = (row.f(), row.g());
    let mut counts: HashMap<Vec<u32>, u128> = HashMap::new();
    let mut enumerated = 0u128;
    for x in enumerate_vectors(fld, fld.q(), row.dims[1], bound)? {
        let y = if f.rows() == 0 { Vec::new() } else { f.mul_vec(&x) };
        *counts.entry(y.iter().map(|s| s.index()).collect()).or_default() += 1;
        enumerated += 1;
    }
    let q = fld.q() as u128;
    let fiber = q.pow(row.dims[0] as u32);
    let rank_g = if g.rows() == 0 || g.cols() == 0 { 0 } else { g.rank() };
    let kernel_g_dim = row.dims[2] - rank_g;
    let mut holds = counts.len() as u128 == q.pow(kernel_g_dim as u32);
    for (y, c) in &counts {
        let v: Vec<Scalar> = y.iter().map(|&i| fld.base(i)).collect();
        let in_kernel = g.rows() == 0 || g.mul_vec(&v).iter().all(|s| s.is_zero());
        holds &= *c == fiber && in_kernel;
    }
    Ok(PushforwardCheck { side: row.side, hom_dim: row.dims[0], kernel_g_dim, enumerated, holds })
}

/// ker g as columns over F_q.
pub fn kernel_of_g(row: &FiveTermRow) -> Mat<Scalar> {
    let fld = row.maps[2].ctx();
    if row.maps[2].rows() == 0 {
        return Mat::identity(fld, row.dims[2]);
    }
    row.maps[2].kernel()
}

//! The element s(t) ∈ V = Hom(ℱ*, σ*Q) attached to t ∈ Hom(ℰᵢ, ℱ), and the
//! identities ⟨e_{𝒢,ℰ₁}, a(t)⟩ = −𝔮₂₁(s) and ⟨e_{𝒢,ℰ₂}, a(t)⟩ = 𝔮₂₁(s).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gf::Scalar;
use crate::hermitian::{extension_class, HermBundle, Lagrangian, QData, SkewHermBundle};
use crate::linalg::Mat;
use crate::polyalg::{enumerate_vectors, Poly, TorsionModule};
use crate::projline::{hom_space, FormMatrix};
use crate::theta::{a_of_t, extension_pairing};

fn reduce_columns(module: &TorsionModule, w: &Mat<Poly>) -> Mat<Poly> {
    let cols: Vec<Vec<Poly>> = (0..w.cols()).map(|c| module.lift(&module.reduce(&w.col(c)))).collect();
    Mat::from_cols(w.ctx(), w.rows(), &cols)
}

/// s = σ*ι₁ ∘ (ℰ₁* ↠ σ*Q₁) ∘ t^∨ for t ∈ Hom(ℰ₁, ℱ), as the m×n matrix of
/// reduced σ*Q₁-representatives.
pub fn s_of_t(q: &QData, t: &FormMatrix) -> Result<Mat<Poly>> {
    let ty = t.on_chart_y(q.field())?;
    Ok(reduce_columns(&q.sigma_q1(), &ty.transpose()))
}

/// s = σ*ι₂ ∘ (ℰ₂* ↠ σ*Q₂) ∘ t^∨ for t ∈ Hom(ℰ₂, ℱ), rewritten in σ*Q₁
/// coordinates through σ(Ψ).
pub fn s_of_t_mirror(q: &QData, t: &FormMatrix) -> Result<Mat<Poly>> {
    let ty = t.on_chart_y(q.field())?;
    let w1 = q.psi().conj().mul(&ty.transpose());
    Ok(reduce_columns(&q.sigma_q1(), &w1))
}

#[derive(Clone, Debug, Default)]
pub struct PairingIdentityCheck {
    /// Number of t ∈ Hom(ℰ₁, ℱ) and t ∈ Hom(ℰ₂, ℱ) compared.
    pub checked: [usize; 2],
    /// ⟨e_{𝒢,ℰ₁}, a(t)⟩ = −𝔮₂₁(s) every time.
    pub first: bool,
    /// ⟨e_{𝒢,ℰ₂}, a(t)⟩ = 𝔮₂₁(s) every time.
    pub second: bool,
}

impl PairingIdentityCheck {
    pub fn holds(&self) -> bool {
        self.first && self.second
    }
}

/// The F_q-points of Hom(ℰ, ℱ) visited: all of them if there are at most
/// `limit`, otherwise `limit` seeded random ones.
fn sample_points(dim: usize, q: u32, limit: usize, fld: &'static crate::Field) -> Vec<Vec<Scalar>> {
    let total = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total <= limit as u128 {
        return enumerate_vectors(fld, q, dim, total).expect("within bound").collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..limit).map(|_| (0..dim).map(|_| fld.base(rng.gen_range(0..q))).collect()).collect()
}

/// Both sides of both identities on up to `limit` maps t for each Lagrangian.
pub fn pairing_identity_check(
    g: &SkewHermBundle,
    l1: &Lagrangian,
    l2: &Lagrangian,
    f: &HermBundle,
    q: &QData,
    limit: usize,
) -> Result<PairingIdentityCheck> {
    let fld = g.field();
    let hf = f.h_chart();
    let mut out = PairingIdentityCheck { first: true, second: true, ..Default::default() };
    for (k, l) in [l1, l2].into_iter().enumerate() {
        let e = extension_class(g, l)?;
        let hom = hom_space(fld, &l.bundle(), f.bundle());
        for x in sample_points(hom.dim_fq(), fld.q(), limit, fld) {
            let t = hom.element_fq(&x);
            let lhs = extension_pairing(fld, &e, &a_of_t(f, &t)?)?;
            let expected = if k == 0 {
                -q.hermitian_trace(false, &hf, &s_of_t(q, &t)?)
            } else {
                q.hermitian_trace(false, &hf, &s_of_t_mirror(q, &t)?)
            };
            if lhs != expected {
                if k == 0 {
                    out.first = false;
                } else {
                    out.second = false;
                }
            }
            out.checked[k] += 1;
        }
    }
    Ok(out)
}

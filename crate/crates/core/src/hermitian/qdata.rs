//! The torsion sheaf Q = 𝒢♯/𝒢 of a transverse pair, with its two Hermitian
//! structures, computed on the chart y ≠ 0.
//!
//! With J = (p₂; p₁): 𝒢 → 𝒢♯ = σ*ℰ₂* ⊕ σ*ℰ₁*, the form of 𝒢 extends to 𝒢♯
//! as σ(y)ᵀ·H♯·x with H♯ = σ(J⁻¹)ᵀ·H·J⁻¹. Its off-diagonal blocks
//! A: σ*ℰ₁* × σ*ℰ₂* and B: σ*ℰ₂* × σ*ℰ₁* give
//!
//!   γ₁₂(w₁, σ*w₂) = σ(w₂)ᵀ·A·w₁,   γ₂₁(w₂, σ*w₁) = σ(w₁)ᵀ·B·w₂   (mod R).
//!
//! Elements of Q are carried in Q₁-coordinates (via ι₁); Φ = ι₂⁻¹ι₁ sends
//! Q₁-coordinates to Q₂-coordinates.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::hermitian::{quotient_map, Lagrangian, SkewHermBundle};
use crate::linalg::{Mat, Ring};
use crate::polyalg::{Poly, Rat, TorsionModule};
use crate::projline::{right_inverse, to_rat, FormMatrix};

/// Element enumerations inside the construction stay below this size.
pub const CHECK_ENUM_BOUND: u128 = 10_000;

/// One closed point of X′ in the support of Q.
#[derive(Clone, Debug, PartialEq)]
pub struct PointQ {
    /// Monic irreducible over F_{q²}.
    pub point: Poly,
    /// Degree of the point over F_{q²}.
    pub residue_degree: usize,
    /// Length of Q at the point.
    pub length: usize,
    /// σ-stable point, i.e. the point of X below is inert.
    pub inert: bool,
}

/// D_Q on X, through its pullback to X′.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorQ {
    pub points: Vec<PointQ>,
}

impl DivisorQ {
    /// deg_X D_Q: an inert point of F_{q²}-degree e lies over a point of degree
    /// e, a split pair of F_{q²}-degree e over one point of degree 2e.
    pub fn degree(&self) -> i64 {
        // a split pair of degree 2e is counted once per member
        self.points.iter().map(|p| (p.length * p.residue_degree) as i64).sum()
    }
    /// η(D_Q) = (−1)^{deg_X D_Q}.
    pub fn eta(&self) -> i64 {
        if self.degree() % 2 == 0 {
            1
        } else {
            -1
        }
    }
    pub fn is_split_only(&self) -> bool {
        self.points.iter().all(|p| !p.inert)
    }
}

/// What the construction verified.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaChecks {
    /// ι₁, ι₂ have full rank.
    pub iota_bijective: bool,
    /// γ₁₂ + σ*γ₂₁ ≡ 0 on generators, and the residue Gram matrices agree.
    pub beta_skew: bool,
    /// c₁₂ + c₂₁ ≡ 0.
    pub h_opposite: bool,
    /// c₁₂(s, s′) ≡ σ c₁₂(s′, s).
    pub h_hermitian: bool,
    /// The residue pairing of c₁₂ is perfect.
    pub perfect: bool,
    /// Lengths at σ-conjugate points agree.
    pub divisor_descends: bool,
    /// Number of elements of Q visited by the enumeration checks (0 if Q is
    /// too large).
    pub elements_checked: u64,
}

#[derive(Clone, Debug)]
pub struct QData {
    fld: &'static Field,
    m: usize,
    pub b12: FormMatrix,
    pub b21: FormMatrix,
    b12_y: Mat<Poly>,
    b21_y: Mat<Poly>,
    q: TorsionModule,
    q1: TorsionModule,
    q2: TorsionModule,
    iota1: Mat<Scalar>,
    iota2: Mat<Scalar>,
    a: Mat<Rat>,
    b: Mat<Rat>,
    phi: Mat<Poly>,
    psi: Mat<Poly>,
    divisor: DivisorQ,
    checks: LemmaChecks,
}

fn rvec(v: &[Poly]) -> Vec<Rat> {
    v.iter().map(|p| Rat::from_poly(p.clone())).collect()
}

/// σ(right)ᵀ·M·left modulo R.
fn sesq(m: &Mat<Rat>, left: &[Poly], right: &[Poly]) -> Rat {
    let fld = m.ctx();
    let ml = m.mul_vec(&rvec(left));
    right
        .iter()
        .zip(&ml)
        .fold(Rat::zero(fld), |acc, (r, x)| acc.radd(&Rat::from_poly(r.sigma()).rmul(x)))
        .proper()
}

fn integral(m: &Mat<Rat>) -> bool {
    m.entries().iter().all(|x| x.is_polynomial())
}

fn fail(lemma: &'static str, detail: &str) -> Error {
    Error::Invariant { lemma, detail: detail.into() }
}

impl QData {
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn q(&self) -> &TorsionModule {
        &self.q
    }
    pub fn q1(&self) -> &TorsionModule {
        &self.q1
    }
    pub fn q2(&self) -> &TorsionModule {
        &self.q2
    }
    /// dim_{F_{q²}} Q.
    pub fn dim(&self) -> usize {
        self.q.dim()
    }
    /// ι₁: Q₁ → Q on the F_{q²}-bases.
    pub fn iota1(&self) -> &Mat<Scalar> {
        &self.iota1
    }
    pub fn iota2(&self) -> &Mat<Scalar> {
        &self.iota2
    }
    pub fn a(&self) -> &Mat<Rat> {
        &self.a
    }
    pub fn b(&self) -> &Mat<Rat> {
        &self.b
    }
    /// ι₂⁻¹ι₁ on representatives: σ*ℰ₁* → σ*ℰ₂*.
    pub fn phi(&self) -> &Mat<Poly> {
        &self.phi
    }
    /// ι₁⁻¹ι₂ on representatives.
    pub fn psi(&self) -> &Mat<Poly> {
        &self.psi
    }
    pub fn b12_chart(&self) -> &Mat<Poly> {
        &self.b12_y
    }
    pub fn b21_chart(&self) -> &Mat<Poly> {
        &self.b21_y
    }
    pub fn divisor(&self) -> &DivisorQ {
        &self.divisor
    }
    pub fn checks(&self) -> &LemmaChecks {
        &self.checks
    }

    /// γ₁₂(w₁, σ*w₂) for representatives of Q₁ and Q₂.
    pub fn gamma12(&self, w1: &[Poly], w2: &[Poly]) -> Rat {
        sesq(&self.a, w1, w2)
    }
    /// γ₂₁(w₂, σ*w₁).
    pub fn gamma21(&self, w2: &[Poly], w1: &[Poly]) -> Rat {
        sesq(&self.b, w2, w1)
    }
    /// c₁₂(s, σ*s′) with s, s′ given by Q₁-representatives.
    pub fn c12(&self, w: &[Poly], w2: &[Poly]) -> Rat {
        self.gamma12(w, &self.phi.mul_vec(w2))
    }
    /// c₂₁(s, σ*s′) with s, s′ given by Q₁-representatives.
    pub fn c21(&self, w: &[Poly], w2: &[Poly]) -> Rat {
        self.gamma21(&self.phi.mul_vec(w), w2)
    }

    fn gram(&self, rows: &TorsionModule, cols: &TorsionModule, f: impl Fn(&[Poly], &[Poly]) -> Rat) -> Mat<Scalar> {
        let br: Vec<Vec<Poly>> = rows.basis().iter().map(|e| rows.lift(e)).collect();
        let bc: Vec<Vec<Poly>> = cols.basis().iter().map(|e| cols.lift(e)).collect();
        Mat::from_fn(self.fld, br.len(), bc.len(), |i, j| f(&br[i], &bc[j]).residue_sum())
    }
    /// Residue Gram matrix of β₁₂: entry (i, j) = Res γ₁₂(basis Q₁ i, basis Q₂ j).
    pub fn beta12_gram(&self) -> Mat<Scalar> {
        self.gram(&self.q1, &self.q2, |x, y| self.gamma12(x, y))
    }
    /// Entry (j, i) = Res γ₂₁(basis Q₂ j, basis Q₁ i).
    pub fn beta21_gram(&self) -> Mat<Scalar> {
        self.gram(&self.q2, &self.q1, |x, y| self.gamma21(x, y))
    }
    /// Residue Gram matrix of h₁₂ on the Q₁-basis.
    pub fn h12_gram(&self) -> Mat<Scalar> {
        self.gram(&self.q1, &self.q1, |x, y| self.c12(x, y))
    }
    pub fn h21_gram(&self) -> Mat<Scalar> {
        self.gram(&self.q1, &self.q1, |x, y| self.c21(x, y))
    }

    /// The module σ*Q in σ*Q₁-coordinates, R^m / σ(b₂₁)·R^m.
    pub fn sigma_q1(&self) -> TorsionModule {
        TorsionModule::cokernel(&self.b21_y.conj()).expect("σ of a nonsingular matrix")
    }
    /// The module σ*Q in σ*Q₂-coordinates.
    pub fn sigma_q2(&self) -> TorsionModule {
        TorsionModule::cokernel(&self.b12_y.conj()).expect("σ of a nonsingular matrix")
    }

    /// Tr Σ Res of the trace of ℱ⊗ω⁻¹ → σ*ℱ* → Q → σ*Q* → ℱ[1] for
    /// s: ℱ* → σ*Q given by the m×n matrix W of σ*Q₁-representatives, using
    /// h₁₂ (`twelve`) or h₂₁; `hf` is h_ℱ on the chart.
    pub fn hermitian_trace(&self, twelve: bool, hf: &Mat<Poly>, w: &Mat<Poly>) -> Scalar {
        let sw = to_rat(&w.conj());
        let wt = to_rat(&w.transpose());
        let hf = to_rat(hf);
        let middle = if twelve {
            to_rat(&self.phi.conj().transpose()).mul(&self.a)
        } else {
            self.b.mul(&to_rat(&self.phi))
        };
        let prod = wt.mul(&middle).mul(&sw).mul(&hf);
        let fld = self.fld;
        let tr = (0..prod.rows()).fold(Rat::zero(fld), |acc, i| acc.radd(&prod[(i, i)]));
        tr.residue_sum().trace()
    }
}

/// Builds the diagram of Q for transverse Lagrangians and verifies its
/// identities; any failure is reported as an invariant error.
pub fn q_construction(g: &SkewHermBundle, l1: &Lagrangian, l2: &Lagrangian) -> Result<QData> {
    let fld = g.field();
    let m = g.m();
    let p1 = quotient_map(g, l1);
    let p2 = quotient_map(g, l2);
    let b12 = p2.compose(l1.iota())?;
    let b21 = p1.compose(l2.iota())?;
    let b12_y = b12.on_chart_y(fld)?;
    let b21_y = b21.on_chart_y(fld)?;
    if b12_y.det().is_zero() {
        return Err(Error::Precondition("Lagrangians are not transverse".into()));
    }
    let p1_y = p1.on_chart_y(fld)?;
    let p2_y = p2.on_chart_y(fld)?;
    let j_y = p2_y.vstack(&p1_y);
    let q2 = TorsionModule::cokernel(&b12_y)?;
    let q1 = TorsionModule::cokernel(&b21_y)?;
    let q = TorsionModule::cokernel(&j_y)?;
    let expected = -(l1.bundle().degree() + l2.bundle().degree());
    for (name, t) in [("Q", &q), ("Q₁", &q1), ("Q₂", &q2)] {
        if t.dim() as i64 != expected {
            return Err(Error::Precondition(format!(
                "{name} has length {} on the affine chart but {expected} in total: torsion at t = ∞",
                t.dim()
            )));
        }
    }

    // ι₂ from [I; 0], ι₁ from [0; I]
    let eye = Mat::identity(fld, m);
    let zero = Mat::zeros(fld, m, m);
    let iota2 = q2.induced_map(&eye.vstack(&zero), &q)?;
    let iota1 = q1.induced_map(&zero.vstack(&eye), &q)?;
    let d = q.dim();
    if iota1.rank() != d || iota2.rank() != d {
        return Err(fail("iota bijective", "ι₁ or ι₂ is not injective"));
    }

    let h = to_rat(&g.h().on_chart_y(fld)?);
    let jinv = to_rat(&j_y).inverse().ok_or(Error::Singular)?;
    let hs = jinv.conj().transpose().mul(&h).mul(&jinv);
    if !hs.block(0, m, 0, m).is_zero() || !hs.block(m, 2 * m, m, 2 * m).is_zero() {
        return Err(fail("extended pairing", "σ*ℰᵢ* is not isotropic in 𝒢♯"));
    }
    let a = hs.block(0, m, m, 2 * m);
    let b = hs.block(m, 2 * m, 0, m);
    let (b12r, b21r) = (to_rat(&b12_y), to_rat(&b21_y));
    if !integral(&a.mul(&b21r))
        || !integral(&b12r.conj().transpose().mul(&a))
        || !integral(&b.mul(&b12r))
        || !integral(&b21r.conj().transpose().mul(&b))
    {
        return Err(fail("extended pairing", "γ does not descend to the quotients"));
    }

    let r1 = right_inverse(&p1_y)?;
    let r2 = right_inverse(&p2_y)?;
    let phi = p2_y.mul(&r1).map(|x| x.neg());
    let psi = p1_y.mul(&r2).map(|x| x.neg());
    let phi_ind = q1.induced_map(&phi, &q2)?;
    if iota2.mul(&phi_ind) != iota1 {
        return Err(fail("iota bijective", "ι₂∘Φ ≠ ι₁"));
    }
    let psi_ind = q2.induced_map(&psi, &q1)?;
    if iota1.mul(&psi_ind) != iota2 {
        return Err(fail("iota bijective", "ι₁∘Ψ ≠ ι₂"));
    }

    let divisor = divisor_of(&q)?;
    let mut data = QData {
        fld,
        m,
        b12,
        b21,
        b12_y,
        b21_y,
        q,
        q1,
        q2,
        iota1,
        iota2,
        a,
        b,
        phi,
        psi,
        divisor,
        checks: LemmaChecks { iota_bijective: true, divisor_descends: true, ..Default::default() },
    };
    data.checks = verify(&data)?;
    Ok(data)
}

fn lifts(t: &TorsionModule) -> Vec<Vec<Poly>> {
    t.basis().iter().map(|e| t.lift(e)).collect()
}

fn verify(d: &QData) -> Result<LemmaChecks> {
    let mut checks = d.checks.clone();
    let b1 = lifts(&d.q1);
    let b2 = lifts(&d.q2);

    // β₁₂ against β₂₁
    for w1 in &b1 {
        for w2 in &b2 {
            if !d.gamma12(w1, w2).radd(&d.gamma21(w2, w1).sigma()).proper().is_zero() {
                return Err(fail("beta skew", "γ₁₂ + σ*γ₂₁ ≠ 0 on generators"));
            }
        }
    }
    let g12 = d.beta12_gram();
    let g21 = d.beta21_gram();
    if g12 != g21.transpose().conj().neg() {
        return Err(fail("beta skew", "σ*β₁₂^∨ ≠ −β₂₁ as residue matrices"));
    }
    checks.beta_skew = true;

    // h₁₂ = −h₂₁ and Hermitian symmetry
    for w in &b1 {
        for w2 in &b1 {
            if !d.c12(w, w2).radd(&d.c21(w, w2)).proper().is_zero() {
                return Err(fail("h opposite", "c₁₂ + c₂₁ ≠ 0 on a basis pair"));
            }
            if !d.c12(w, w2).rsub(&d.c12(w2, w).sigma()).proper().is_zero() {
                return Err(fail("h hermitian", "c₁₂ is not Hermitian"));
            }
        }
    }
    let h12 = d.h12_gram();
    if h12 != d.h21_gram().neg() {
        return Err(fail("h opposite", "h₁₂ ≠ −h₂₁ as residue matrices"));
    }
    checks.h_opposite = true;
    checks.h_hermitian = true;
    if h12.rows() > 0 && h12.inverse().is_none() {
        return Err(fail("perfect pairing", "residue Gram matrix of c₁₂ is singular"));
    }
    checks.perfect = true;

    // element-level checks on small Q
    if d.q.cardinality() <= CHECK_ENUM_BOUND {
        let mut image1: HashSet<Vec<Scalar>> = HashSet::new();
        let mut image2: HashSet<Vec<Scalar>> = HashSet::new();
        let mut count = 0u64;
        for e in d.q1.enumerate(CHECK_ENUM_BOUND)? {
            let c = d.q1.coords(&e);
            image1.insert(d.iota1.mul_vec(&c));
            let w = d.q1.lift(&e);
            for w2 in &b1 {
                if !d.c12(&w, w2).radd(&d.c21(&w, w2)).proper().is_zero()
                    || !d.c12(w2, &w).radd(&d.c21(w2, &w)).proper().is_zero()
                {
                    return Err(fail("h opposite", "c₁₂ + c₂₁ ≠ 0 on an element pair"));
                }
            }
            count += 1;
        }
        for e in d.q2.enumerate(CHECK_ENUM_BOUND)? {
            image2.insert(d.iota2.mul_vec(&d.q2.coords(&e)));
        }
        let card = d.q.cardinality() as usize;
        if image1.len() != card || image2.len() != card {
            return Err(fail("iota bijective", "an induced map is not a bijection on elements"));
        }
        checks.elements_checked = count;
    }
    Ok(checks)
}

fn divisor_of(q: &TorsionModule) -> Result<DivisorQ> {
    let parts = q.primary();
    let mut points = Vec::new();
    for p in &parts {
        let conj = p.point.sigma();
        let inert = conj == p.point;
        if !inert {
            let other = parts.iter().find(|o| o.point == conj);
            if other.map(|o| o.exponents != p.exponents).unwrap_or(true) {
                return Err(fail("divisor descends", "Q differs at σ-conjugate points"));
            }
        }
        points.push(PointQ { point: p.point.clone(), residue_degree: p.residue_degree, length: p.length() / p.residue_degree, inert });
    }
    Ok(DivisorQ { points })
}

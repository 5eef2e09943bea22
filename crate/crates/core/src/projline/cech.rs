//! Čech computations on the standard cover: chartwise splittings, extension
//! classes of subbundles, connecting maps and the Serre duality pairing.
//!
//! A cocycle on U₀₁ is always (section over U₁) − (section over U₀). With this
//! convention the class x^{−1}y^{−1} ∈ H¹(O(−2)) = H¹(ω) corresponds to t^{−1}dt,
//! whose residue at t = 0 is 1.

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::Mat;
use crate::polyalg::{smith_normal_form, Poly, Rat};
use crate::projline::{Form, FormMatrix};

fn units_on_diagonal(d: &[Poly], n: usize) -> bool {
    d.len() >= n && d[..n].iter().all(|x| x.is_constant() && !x.is_zero())
}

/// A right inverse over F_{q²}[t] of a matrix that is surjective on every fiber.
pub fn right_inverse(p: &Mat<Poly>) -> Result<Mat<Poly>> {
    let fld = p.ctx();
    let (r, c) = (p.rows(), p.cols());
    let s = smith_normal_form(p);
    if r > c || !units_on_diagonal(&s.diagonal(), r) {
        return Err(Error::NotSaturated("map is not surjective on every fiber".into()));
    }
    // p = U⁻¹·[I 0]·W⁻¹, so W·[I; 0]·U is a right inverse
    let ins = Mat::from_fn(fld, c, r, |i, j| if i == j { Poly::one(fld) } else { Poly::zero(fld) });
    Ok(s.w.mul(&ins).mul(&s.u))
}

/// A left inverse over F_{q²}[t] of a matrix that is injective on every fiber.
pub fn left_inverse(i: &Mat<Poly>) -> Result<Mat<Poly>> {
    let fld = i.ctx();
    let (g, m) = (i.rows(), i.cols());
    let s = smith_normal_form(i);
    if m > g || !units_on_diagonal(&s.diagonal(), m) {
        return Err(Error::NotSaturated("inclusion has torsion cokernel".into()));
    }
    let proj = Mat::from_fn(fld, m, g, |a, b| if a == b { Poly::one(fld) } else { Poly::zero(fld) });
    Ok(s.w.mul(&proj).mul(&s.u))
}

/// Whether a map of split bundles is injective on every fiber (a subbundle).
pub fn is_subbundle(fld: &'static Field, iota: &FormMatrix) -> bool {
    let ok = |m: Result<Mat<Poly>>| m.map(|m| left_inverse(&m).is_ok()).unwrap_or(false);
    iota.is_regular() && ok(iota.on_chart_y(fld)) && ok(iota.on_chart_x(fld))
}

/// Whether a map of split bundles is surjective on every fiber.
pub fn is_fiberwise_surjective(fld: &'static Field, p: &FormMatrix) -> bool {
    let ok = |m: Result<Mat<Poly>>| m.map(|m| right_inverse(&m).is_ok()).unwrap_or(false);
    p.is_regular() && ok(p.on_chart_y(fld)) && ok(p.on_chart_x(fld))
}

/// Chartwise splittings s₁ (over U₁) and s₀ (over U₀) of a surjection p: G → C.
pub fn chart_splittings(fld: &'static Field, p: &FormMatrix) -> Result<(FormMatrix, FormMatrix)> {
    let r1 = right_inverse(&p.on_chart_y(fld)?)?;
    let r0 = right_inverse(&p.on_chart_x(fld)?)?;
    Ok((
        FormMatrix::from_chart_y(&r1, p.cols(), p.rows()),
        FormMatrix::from_chart_x(&r0, p.cols(), p.rows()),
    ))
}

/// The Čech cocycle (C → E on U₀₁) of 0 → E →ι G →p C → 0, unreduced.
pub fn extension_cocycle(fld: &'static Field, iota: &FormMatrix, p: &FormMatrix) -> Result<FormMatrix> {
    if iota.rows() != p.cols() {
        return Err(Error::Shape("ι and p do not share the middle bundle".into()));
    }
    if !p.compose(iota)?.is_zero() {
        return Err(Error::Precondition("p∘ι ≠ 0".into()));
    }
    if !is_subbundle(fld, iota) {
        return Err(Error::NotSaturated("ι is not a subbundle inclusion".into()));
    }
    if iota.nrows() != iota.ncols() + p.nrows() {
        return Err(Error::Shape("ranks do not add up".into()));
    }
    let (s1, s0) = chart_splittings(fld, p)?;
    let diff = s1.sub(&s0)?;
    let lambda = FormMatrix::from_chart_y(&left_inverse(&iota.on_chart_y(fld)?)?, iota.cols(), iota.rows());
    let c = lambda.compose(&diff)?;
    if iota.compose(&c)? != diff {
        return Err(Error::Invariant {
            lemma: "extension cocycle",
            detail: "difference of splittings does not lie in the subbundle".into(),
        });
    }
    Ok(c)
}

/// The class in Ext¹(C, E) of the extension 0 → E →ι G →p C → 0.
pub fn ext_class_of_quotient(fld: &'static Field, iota: &FormMatrix, p: &FormMatrix) -> Result<FormMatrix> {
    Ok(extension_cocycle(fld, iota, p)?.h1_reduce())
}

/// Tr_{F_{q²}/F_q} of the x^{−1}y^{−1} coefficient of the trace of an
/// endomorphism-valued class F ⊗ ω^{−1} → F[1].
pub fn trace_to_h1_omega(fld: &'static Field, xi: &FormMatrix) -> Result<Scalar> {
    if xi.nrows() != xi.ncols() || xi.rows().iter().zip(xi.cols()).any(|(r, c)| r - c != -2) {
        return Err(Error::Shape(format!("{:?} <- {:?} is not of the form F <- F(2)", xi.rows(), xi.cols())));
    }
    Ok(residue_trace(fld, &xi.trace()?))
}

/// The F_q-valued Serre pairing of φ ∈ Hom(A, B) and ξ ∈ Ext¹(B, A ⊗ ω).
pub fn serre_pairing(fld: &'static Field, phi: &FormMatrix, xi: &FormMatrix) -> Result<Scalar> {
    if xi.cols() != phi.rows() {
        return Err(Error::Shape("Ext class does not start at the target of the map".into()));
    }
    if xi.nrows() != phi.ncols() || xi.rows().iter().zip(phi.cols()).any(|(r, c)| r - c != -2) {
        return Err(Error::Shape("Ext class does not end at source ⊗ ω".into()));
    }
    trace_to_h1_omega(fld, &xi.compose(phi)?)
}

/// Tr of the x^{−1}y^{−1} coefficient of a degree −2 form.
pub fn residue_trace(fld: &'static Field, f: &Form) -> Scalar {
    assert_eq!(f.deg(), -2, "residues are taken in degree −2");
    f.coeff(-1).map(|c| c.trace()).unwrap_or_else(|| fld.zero())
}

/// The reduced Čech class of a matrix of rational sections on U₁ whose poles
/// lie at finite points: only the expansion at t = ∞ matters.
pub fn h1_class_of_rational(m: &Mat<Rat>, rows: &[i64], cols: &[i64]) -> FormMatrix {
    let mut out = FormMatrix::zero(rows, cols);
    for j in 0..rows.len() {
        for i in 0..cols.len() {
            let d = rows[j] - cols[i];
            let k = (-d - 1).max(0) as usize;
            if k == 0 {
                continue;
            }
            let exp = m[(j, i)].expansion_at_infinity(k);
            out.set(j, i, Form::from_terms(d, exp.into_iter().enumerate().map(|(a, c)| (-(a as i64) - 1, c))));
        }
    }
    out
}

/// Convert a polynomial matrix to rational functions.
pub fn to_rat(m: &Mat<Poly>) -> Mat<Rat> {
    m.map_into(m.ctx(), |p| Rat::from_poly(p.clone()))
}


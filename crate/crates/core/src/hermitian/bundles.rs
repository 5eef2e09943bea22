use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Mat;
use crate::polyalg::Poly;
use crate::projline::{ext_class_of_quotient, is_fiberwise_surjective, is_subbundle, FormMatrix, SplitBundle};

fn check_iso(fld: &'static Field, h: &FormMatrix, what: &str) -> Result<()> {
    if h.nrows() != h.ncols() || !h.is_regular() || !is_fiberwise_surjective(fld, h) {
        return Err(Error::Hermitian(format!("{what} form is not an isomorphism")));
    }
    Ok(())
}

/// (ℱ, h_ℱ) with h_ℱ: ℱ ⋍ σ*ℱ* ⊗ ω Hermitian.
#[derive(Clone, Debug)]
pub struct HermBundle {
    fld: &'static Field,
    bundle: SplitBundle,
    h: FormMatrix,
}

impl HermBundle {
    pub fn new(fld: &'static Field, bundle: SplitBundle, h: FormMatrix) -> Result<HermBundle> {
        let f = &bundle.twists;
        let want_rows: Vec<i64> = f.iter().map(|d| -d - 2).collect();
        if h.cols() != f.as_slice() || h.rows() != want_rows.as_slice() {
            return Err(Error::Shape(format!("h_F must map {f:?} to {want_rows:?}")));
        }
        if h.dagger().twist(-2) != h {
            return Err(Error::Hermitian("h_F is not Hermitian".into()));
        }
        check_iso(fld, &h, "Hermitian")?;
        Ok(HermBundle { fld, bundle, h })
    }
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }
    pub fn h(&self) -> &FormMatrix {
        &self.h
    }
    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }
    /// h_ℱ on the chart y ≠ 0, with ω trivialized by dt.
    pub fn h_chart(&self) -> Mat<Poly> {
        self.h.on_chart_y(self.fld).expect("h_F is regular")
    }
}

/// (𝒢, h) with h: 𝒢 ⋍ σ*𝒢* skew-Hermitian.
#[derive(Clone, Debug)]
pub struct SkewHermBundle {
    fld: &'static Field,
    bundle: SplitBundle,
    h: FormMatrix,
}

impl SkewHermBundle {
    pub fn new(fld: &'static Field, bundle: SplitBundle, h: FormMatrix) -> Result<SkewHermBundle> {
        let g = &bundle.twists;
        if g.len() % 2 != 0 {
            return Err(Error::Shape("skew-Hermitian bundle of odd rank".into()));
        }
        if h.cols() != g.as_slice() || h.rows() != bundle.dual().twists.as_slice() {
            return Err(Error::Shape(format!("h must map {g:?} to its dual")));
        }
        if h.dagger() != h.neg() {
            return Err(Error::Hermitian("h is not skew-Hermitian".into()));
        }
        check_iso(fld, &h, "skew-Hermitian")?;
        Ok(SkewHermBundle { fld, bundle, h })
    }
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn bundle(&self) -> &SplitBundle {
        &self.bundle
    }
    pub fn h(&self) -> &FormMatrix {
        &self.h
    }
    /// Half the rank.
    pub fn m(&self) -> usize {
        self.bundle.rank() / 2
    }
}

/// A Lagrangian subbundle ι: ℰ ↪ 𝒢.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    iota: FormMatrix,
}

impl Lagrangian {
    pub fn new(g: &SkewHermBundle, iota: FormMatrix) -> Result<Lagrangian> {
        if !is_lagrangian(g, &iota)? {
            return Err(Error::Precondition("subbundle is not isotropic".into()));
        }
        Ok(Lagrangian { iota })
    }
    pub fn iota(&self) -> &FormMatrix {
        &self.iota
    }
    pub fn bundle(&self) -> SplitBundle {
        SplitBundle::new(self.iota.cols().to_vec())
    }
    pub fn rank(&self) -> usize {
        self.iota.ncols()
    }
}

/// Whether ι: ℰ → 𝒢 is isotropic; rank and saturation failures are errors.
pub fn is_lagrangian(g: &SkewHermBundle, iota: &FormMatrix) -> Result<bool> {
    if iota.rows() != g.bundle().twists.as_slice() {
        return Err(Error::Shape("inclusion does not land in 𝒢".into()));
    }
    if iota.ncols() != g.m() {
        return Err(Error::Shape(format!("rank {} subbundle of a rank {} bundle", iota.ncols(), 2 * g.m())));
    }
    if !is_subbundle(g.field(), iota) {
        return Err(Error::NotSaturated("ℰ is not saturated in 𝒢".into()));
    }
    Ok(iota.dagger().compose(g.h())?.compose(iota)?.is_zero())
}

/// The quotient map 𝒢 → σ*ℰ*, s ↦ −(ι(−), s)_h; its kernel is ℰ.
pub fn quotient_map(g: &SkewHermBundle, l: &Lagrangian) -> FormMatrix {
    l.iota.dagger().compose(g.h()).expect("twists match").neg()
}

/// e_{𝒢,ℰ} ∈ Ext¹(σ*ℰ*, ℰ).
pub fn extension_class(g: &SkewHermBundle, l: &Lagrangian) -> Result<FormMatrix> {
    ext_class_of_quotient(g.field(), &l.iota, &quotient_map(g, l))
}

/// b: ℰ₁ → 𝒢 → σ*ℰ₂*.
pub fn b_map(g: &SkewHermBundle, l1: &Lagrangian, l2: &Lagrangian) -> FormMatrix {
    quotient_map(g, l2).compose(&l1.iota).expect("twists match")
}

/// Whether ℰ₁ ∩ ℰ₂ = 0, i.e. det b₁₂ ≠ 0.
pub fn is_transverse(g: &SkewHermBundle, l1: &Lagrangian, l2: &Lagrangian) -> bool {
    let b = b_map(g, l1, l2);
    b.nrows() == b.ncols() && !b.on_chart_y(g.field()).expect("regular").det().is_zero()
}

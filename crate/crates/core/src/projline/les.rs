//! The long exact sequence obtained by applying Hom(S, −) to a short exact
//! sequence of split bundles, as explicit F_{q²}-linear maps.

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::Mat;
use crate::projline::{ext1_space, extension_cocycle, hom_space, FormMatrix, MonomialSpace, SplitBundle};

/// Hom(S,E) → Hom(S,G) → Hom(S,C) → Ext¹(S,E) → Ext¹(S,G) for 0 → E → G → C → 0.
#[derive(Clone, Debug)]
pub struct FiveTerm {
    pub spaces: [MonomialSpace; 5],
    pub maps: [Mat<Scalar>; 4],
}

/// Matrix of m ↦ f(m) from `src` to `dst` on their monomial bases.
pub fn matrix_of(src: &MonomialSpace, dst: &MonomialSpace, f: impl Fn(&FormMatrix) -> Result<FormMatrix>) -> Result<Mat<Scalar>> {
    let cols = src.basis().iter().map(|b| dst.coords(&f(b)?)).collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_cols(src.field(), dst.dim(), &cols))
}

impl FiveTerm {
    pub fn new(fld: &'static Field, s: &SplitBundle, iota: &FormMatrix, p: &FormMatrix) -> Result<FiveTerm> {
        let c = extension_cocycle(fld, iota, p)?;
        let e = SplitBundle::new(iota.cols().to_vec());
        let g = SplitBundle::new(iota.rows().to_vec());
        let q = SplitBundle::new(p.rows().to_vec());
        let spaces = [
            hom_space(fld, s, &e),
            hom_space(fld, s, &g),
            hom_space(fld, s, &q),
            ext1_space(fld, s, &e),
            ext1_space(fld, s, &g),
        ];
        let maps = [
            matrix_of(&spaces[0], &spaces[1], |m| iota.compose(m))?,
            matrix_of(&spaces[1], &spaces[2], |m| p.compose(m))?,
            matrix_of(&spaces[2], &spaces[3], |m| c.compose(m))?,
            matrix_of(&spaces[3], &spaces[4], |m| iota.compose(m))?,
        ];
        Ok(FiveTerm { spaces, maps })
    }

    pub fn dims(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|k| self.spaces[k].dim())
    }

    /// Exactness at the three inner terms and injectivity on the left.
    pub fn check_exact(&self) -> Result<()> {
        const STAGE: [&str; 3] = ["Hom(S,G)", "Hom(S,C)", "Ext¹(S,E)"];
        let d = self.dims();
        if self.maps[0].rank() != d[0] {
            return Err(Error::Invariant { lemma: "long exact sequence", detail: "Hom(S,E) → Hom(S,G) not injective".into() });
        }
        for k in 0..3 {
            let (a, b) = (&self.maps[k], &self.maps[k + 1]);
            let zero = b.rows() == 0 || a.cols() == 0 || b.mul(a).is_zero();
            if !zero || a.rank() + b.rank() != d[k + 1] {
                return Err(Error::Invariant { lemma: "long exact sequence", detail: format!("not exact at {}", STAGE[k]) });
            }
        }
        Ok(())
    }
}

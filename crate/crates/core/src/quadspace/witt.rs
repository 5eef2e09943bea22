//! The Witt-group properties of the normalized Gauss sum, checked on concrete
//! spaces.

use crate::error::Result;
use crate::gf::{Psi, Scalar};
use crate::linalg::Mat;
use crate::quadspace::{gauss_sum_bounded, ExtQuadSpace, GaussData, QuadSpace};

/// Optional inputs for the properties that need extra structure.
#[derive(Clone, Debug, Default)]
pub struct WittInputs {
    /// A Lagrangian of V₁ (columns), for the split-form property.
    pub lagrangian: Option<Mat<Scalar>>,
    /// A Hermitian matrix over F_{q²} whose induced form is tested.
    pub hermitian: Option<Mat<Scalar>>,
    /// A form over F_{q²}, compared with its trace form.
    pub extension: Option<ExtQuadSpace>,
}

/// `None` for a property whose input was not supplied.
#[derive(Clone, Debug)]
pub struct WittReport {
    pub gamma1: GaussData,
    pub gamma2: GaussData,
    pub gamma_sum: GaussData,
    pub fourth_roots: bool,
    pub additive: bool,
    pub split: Option<bool>,
    pub hermitian: Option<bool>,
    pub field_change: Option<bool>,
}

impl WittReport {
    pub fn all_pass(&self) -> bool {
        self.fourth_roots
            && self.additive
            && self.split != Some(false)
            && self.hermitian != Some(false)
            && self.field_change != Some(false)
    }
}

pub fn witt_property_suite(
    v1: &QuadSpace,
    v2: &QuadSpace,
    inputs: &WittInputs,
    psi: &Psi,
    bound: u128,
) -> Result<WittReport> {
    let gamma1 = gauss_sum_bounded(v1, psi, bound)?;
    let gamma2 = gauss_sum_bounded(v2, psi, bound)?;
    let gamma_sum = gauss_sum_bounded(&v1.direct_sum(v2), psi, bound)?;
    let additive = gamma_sum.gamma == &gamma1.gamma * &gamma2.gamma;
    let fourth_roots = [&gamma1, &gamma2, &gamma_sum].iter().all(|g| g.is_fourth_root_of_unity());

    let split = match &inputs.lagrangian {
        Some(l) => Some(v1.is_lagrangian(l) && gamma1.sign() == Some(1)),
        None => None,
    };
    let hermitian = match &inputs.hermitian {
        Some(h) => {
            let v = QuadSpace::hermitian_induced(h)?;
            let expected = if h.rows() % 2 == 0 { 1 } else { -1 };
            Some(gauss_sum_bounded(&v, psi, bound)?.sign() == Some(expected))
        }
        None => None,
    };
    let field_change = match &inputs.extension {
        Some(e) => Some(e.gauss_sum(psi, bound)?.gamma == gauss_sum_bounded(&e.trace_form(), psi, bound)?.gamma),
        None => None,
    };
    Ok(WittReport { gamma1, gamma2, gamma_sum, fourth_roots, additive, split, hermitian, field_change })
}

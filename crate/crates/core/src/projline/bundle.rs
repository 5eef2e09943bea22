//! Split bundles ⊕O(dᵢ) on P¹ over F_{q²}, their Hom and Ext¹ spaces with
//! monomial bases, and single cohomology classes of line bundles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::projline::{Form, FormMatrix};

/// ⊕ᵢ O(dᵢ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitBundle {
    pub twists: Vec<i64>,
}

impl SplitBundle {
    pub fn new(twists: Vec<i64>) -> SplitBundle {
        SplitBundle { twists }
    }
    pub fn rank(&self) -> usize {
        self.twists.len()
    }
    /// Σdᵢ, the degree over F_{q²}.
    pub fn degree(&self) -> i64 {
        self.twists.iter().sum()
    }
    /// Degree measured over F_q: O(1) on P¹_{F_{q²}} has F_q-degree 2.
    pub fn degree_fq(&self) -> i64 {
        2 * self.degree()
    }
    pub fn dual(&self) -> SplitBundle {
        SplitBundle { twists: self.twists.iter().map(|d| -d).collect() }
    }
    pub fn twist(&self, k: i64) -> SplitBundle {
        SplitBundle { twists: self.twists.iter().map(|d| d + k).collect() }
    }
    /// σ* fixes every O(d).
    pub fn sigma(&self) -> SplitBundle {
        self.clone()
    }
    pub fn direct_sum(&self, o: &SplitBundle) -> SplitBundle {
        SplitBundle { twists: self.twists.iter().chain(&o.twists).copied().collect() }
    }
}

/// A morphism of split bundles; entries are regular forms.
pub type SheafMap = FormMatrix;
/// An Ext¹ class stored as its reduced Čech cocycle.
pub type ExtClass = FormMatrix;

pub fn h0_dim(d: i64) -> usize {
    (d + 1).max(0) as usize
}
pub fn h1_dim(d: i64) -> usize {
    (-d - 1).max(0) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CohKind {
    H0,
    H1,
}

/// A class in H⁰(O(d)) or H¹(O(d)) on the monomial basis
/// {x^a y^{d−a} : 0 ≤ a ≤ d} or {x^{−a} y^{d+a} : 1 ≤ a ≤ −d−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub kind: CohKind,
    pub twist: i64,
    pub coeffs: Vec<Scalar>,
}

impl CohClass {
    pub fn dim(kind: CohKind, d: i64) -> usize {
        match kind {
            CohKind::H0 => h0_dim(d),
            CohKind::H1 => h1_dim(d),
        }
    }
    /// x-exponent of the k-th basis monomial.
    fn exponent(kind: CohKind, k: usize) -> i64 {
        match kind {
            CohKind::H0 => k as i64,
            CohKind::H1 => -(k as i64) - 1,
        }
    }
    pub fn from_form(kind: CohKind, f: &Form, fld: &'static Field) -> Result<CohClass> {
        let d = f.deg();
        if kind == CohKind::H0 && !f.is_regular() {
            return Err(Error::Shape("H⁰ class from a form with poles".into()));
        }
        let coeffs = (0..CohClass::dim(kind, d))
            .map(|k| f.coeff(CohClass::exponent(kind, k)).unwrap_or_else(|| fld.zero()))
            .collect();
        Ok(CohClass { kind, twist: d, coeffs })
    }
    pub fn to_form(&self) -> Form {
        Form::from_terms(self.twist, self.coeffs.iter().enumerate().map(|(k, &c)| (CohClass::exponent(self.kind, k), c)))
    }
    pub fn sigma(&self) -> CohClass {
        CohClass { kind: self.kind, twist: self.twist, coeffs: self.coeffs.iter().map(|c| c.sigma()).collect() }
    }
}

/// Hom(E, F) (kind H⁰) or Ext¹(E, F) (kind H¹) between split bundles, with the
/// basis of single-monomial matrices ordered by (row, column, monomial).
#[derive(Clone, Debug)]
pub struct MonomialSpace {
    fld: &'static Field,
    kind: CohKind,
    rows: Vec<i64>,
    cols: Vec<i64>,
    basis: Vec<(usize, usize, i64)>,
}

impl MonomialSpace {
    pub fn new(fld: &'static Field, kind: CohKind, source: &SplitBundle, target: &SplitBundle) -> MonomialSpace {
        let mut basis = Vec::new();
        for (j, &r) in target.twists.iter().enumerate() {
            for (i, &c) in source.twists.iter().enumerate() {
                for k in 0..CohClass::dim(kind, r - c) {
                    basis.push((j, i, CohClass::exponent(kind, k)));
                }
            }
        }
        MonomialSpace { fld, kind, rows: target.twists.clone(), cols: source.twists.clone(), basis }
    }
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn kind(&self) -> CohKind {
        self.kind
    }
    pub fn rows(&self) -> &[i64] {
        &self.rows
    }
    pub fn cols(&self) -> &[i64] {
        &self.cols
    }
    /// Dimension over F_{q²}.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Dimension over F_q.
    pub fn dim_fq(&self) -> usize {
        2 * self.basis.len()
    }
    pub fn zero(&self) -> FormMatrix {
        FormMatrix::zero(&self.rows, &self.cols)
    }
    pub fn element(&self, c: &[Scalar]) -> FormMatrix {
        assert_eq!(c.len(), self.dim(), "coordinate length");
        let mut m = self.zero();
        for (&(j, i, a), &v) in self.basis.iter().zip(c) {
            if !v.is_zero() {
                let d = self.rows[j] - self.cols[i];
                let e = m.get(j, i).add(&Form::monomial(v, a, d));
                m.set(j, i, e);
            }
        }
        m
    }
    pub fn basis(&self) -> Vec<FormMatrix> {
        (0..self.dim())
            .map(|k| {
                let mut c = vec![self.fld.zero(); self.dim()];
                c[k] = self.fld.one();
                self.element(&c)
            })
            .collect()
    }
    /// Coordinates of a matrix; for H¹ the matrix is reduced first, for H⁰ it
    /// must be regular.
    pub fn coords(&self, m: &FormMatrix) -> Result<Vec<Scalar>> {
        if m.rows() != self.rows.as_slice() || m.cols() != self.cols.as_slice() {
            return Err(Error::Shape(format!(
                "map {:?} <- {:?} is not in the space {:?} <- {:?}",
                m.rows(),
                m.cols(),
                self.rows,
                self.cols
            )));
        }
        let m = match self.kind {
            CohKind::H0 => {
                if !m.is_regular() {
                    return Err(Error::Shape("global map with poles".into()));
                }
                m.clone()
            }
            CohKind::H1 => m.h1_reduce(),
        };
        Ok(self.basis.iter().map(|&(j, i, a)| m.get(j, i).coeff(a).unwrap_or_else(|| self.fld.zero())).collect())
    }
    /// F_q-coordinates: (re, im) of each F_{q²}-coordinate in turn.
    pub fn coords_fq(&self, m: &FormMatrix) -> Result<Vec<Scalar>> {
        Ok(split_fq(&self.coords(m)?))
    }
    pub fn element_fq(&self, c: &[Scalar]) -> FormMatrix {
        self.element(&join_fq(self.fld, c))
    }
}

/// (c₀, c₁, …) ↦ (re c₀, im c₀, re c₁, im c₁, …).
pub fn split_fq(c: &[Scalar]) -> Vec<Scalar> {
    c.iter().flat_map(|x| [x.re(), x.im()]).collect()
}

/// Inverse of [`split_fq`].
pub fn join_fq(fld: &'static Field, c: &[Scalar]) -> Vec<Scalar> {
    assert!(c.len() % 2 == 0, "F_q coordinate vector of odd length");
    let a = fld.alpha();
    c.chunks(2).map(|w| w[0] + a * w[1]).collect()
}

/// Hom(E, F) with its monomial basis.
pub fn hom_space(fld: &'static Field, e: &SplitBundle, f: &SplitBundle) -> MonomialSpace {
    MonomialSpace::new(fld, CohKind::H0, e, f)
}

/// Ext¹(E, F) = H¹(E* ⊗ F) with its Čech monomial basis.
pub fn ext1_space(fld: &'static Field, e: &SplitBundle, f: &SplitBundle) -> MonomialSpace {
    MonomialSpace::new(fld, CohKind::H1, e, f)
}

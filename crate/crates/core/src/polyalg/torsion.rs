//! Finite torsion modules R^k / M·R^k over R = F_{q²}[t].
//!
//! Elements are stored in Smith coordinates: with U·M·W = diag(d_i), the class
//! of v ∈ R^k is the vector of remainders (U·v)_i mod d_i. This makes equality a
//! plain data comparison.

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::{Mat, Ring};
use crate::polyalg::{factor, smith_normal_form, Poly, Rat, Smith};

/// Default cap on the number of elements an enumeration may visit.
pub const DEFAULT_ENUM_BOUND: u128 = 1_000_000;

/// An element of a [`TorsionModule`] in canonical Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionElement(pub Vec<Poly>);

/// The local part of a torsion module at one closed point of A¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryPart {
    /// Monic irreducible π cutting out the point.
    pub point: Poly,
    /// Residue degree [F_{q²}[t]/π : F_{q²}].
    pub residue_degree: usize,
    /// Exponents e with summands R/(π^e), decreasing.
    pub exponents: Vec<u32>,
}

impl PrimaryPart {
    /// F_{q²}-length of this part.
    pub fn length(&self) -> usize {
        self.residue_degree * self.exponents.iter().sum::<u32>() as usize
    }
}

#[derive(Clone, Debug)]
pub struct TorsionModule {
    fld: &'static Field,
    lattice: Mat<Poly>,
    smith: Smith,
    diag: Vec<Poly>,
    offsets: Vec<usize>,
    dim: usize,
}

impl TorsionModule {
    /// The cokernel of a nonsingular square matrix.
    pub fn cokernel(m: &Mat<Poly>) -> Result<TorsionModule> {
        if !m.is_square() {
            return Err(Error::Shape("cokernel of a non-square matrix".into()));
        }
        let smith = smith_normal_form(m);
        let diag = smith.diagonal();
        if diag.iter().any(|d| d.is_zero()) {
            return Err(Error::Singular);
        }
        let mut offsets = Vec::with_capacity(diag.len());
        let mut dim = 0;
        for d in &diag {
            offsets.push(dim);
            dim += d.deg().unwrap();
        }
        Ok(TorsionModule { fld: m.ctx(), lattice: m.clone(), smith, diag, offsets, dim })
    }

    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn lattice(&self) -> &Mat<Poly> {
        &self.lattice
    }
    /// Rank k of the ambient free module.
    pub fn ambient_rank(&self) -> usize {
        self.diag.len()
    }
    /// Dimension over F_{q²}.
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Dimension over F_q.
    pub fn dim_fq(&self) -> usize {
        2 * self.dim
    }
    pub fn cardinality(&self) -> u128 {
        (self.fld.q2() as u128).pow(self.dim as u32)
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    /// The nonunit invariant factors d_1 | d_2 | ….
    pub fn invariant_factors(&self) -> Vec<Poly> {
        self.diag.iter().filter(|d| !d.is_constant()).cloned().collect()
    }

    /// Primary decomposition, grouped by closed point.
    pub fn primary(&self) -> Vec<PrimaryPart> {
        let mut parts: Vec<PrimaryPart> = Vec::new();
        for d in self.invariant_factors() {
            for (pi, e) in factor(&d) {
                match parts.iter_mut().find(|p| p.point == pi) {
                    Some(p) => p.exponents.push(e),
                    None => parts.push(PrimaryPart {
                        residue_degree: pi.deg().unwrap(),
                        point: pi,
                        exponents: vec![e],
                    }),
                }
            }
        }
        for p in &mut parts {
            p.exponents.sort_unstable_by(|a, b| b.cmp(a));
        }
        parts
    }

    pub fn zero(&self) -> TorsionElement {
        TorsionElement(vec![Poly::zero(self.fld); self.diag.len()])
    }

    /// Class of a vector of R^k.
    pub fn reduce(&self, v: &[Poly]) -> TorsionElement {
        assert_eq!(v.len(), self.diag.len(), "vector length");
        let y = self.smith.u.mul_vec(v);
        TorsionElement(y.iter().zip(&self.diag).map(|(a, d)| a.rem(d)).collect())
    }

    /// A representative in R^k.
    pub fn lift(&self, e: &TorsionElement) -> Vec<Poly> {
        self.smith.u_inv.mul_vec(&e.0)
    }

    pub fn add(&self, a: &TorsionElement, b: &TorsionElement) -> TorsionElement {
        TorsionElement(a.0.iter().zip(&b.0).zip(&self.diag).map(|((x, y), d)| x.add(y).rem(d)).collect())
    }
    pub fn neg(&self, a: &TorsionElement) -> TorsionElement {
        TorsionElement(a.0.iter().map(|x| x.neg()).collect())
    }
    pub fn scale(&self, a: &TorsionElement, r: &Poly) -> TorsionElement {
        TorsionElement(a.0.iter().zip(&self.diag).map(|(x, d)| x.mul(r).rem(d)).collect())
    }
    pub fn is_zero_elem(&self, a: &TorsionElement) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// F_{q²}-coordinates on the basis {t^j·e_i}.
    pub fn coords(&self, e: &TorsionElement) -> Vec<Scalar> {
        let mut out = vec![self.fld.zero(); self.dim];
        for (i, d) in self.diag.iter().enumerate() {
            for j in 0..d.deg().unwrap() {
                out[self.offsets[i] + j] = e.0[i].coeff(j);
            }
        }
        out
    }
    pub fn from_coords(&self, c: &[Scalar]) -> TorsionElement {
        assert_eq!(c.len(), self.dim, "coordinate length");
        TorsionElement(
            self.diag
                .iter()
                .enumerate()
                .map(|(i, d)| Poly::from_coeffs(self.fld, c[self.offsets[i]..self.offsets[i] + d.deg().unwrap()].to_vec()))
                .collect(),
        )
    }
    /// The F_{q²}-basis {t^j·e_i}.
    pub fn basis(&self) -> Vec<TorsionElement> {
        (0..self.dim)
            .map(|k| {
                let mut c = vec![self.fld.zero(); self.dim];
                c[k] = self.fld.one();
                self.from_coords(&c)
            })
            .collect()
    }

    /// Every element exactly once, after checking the size bound.
    pub fn enumerate(&self, bound: u128) -> Result<impl Iterator<Item = TorsionElement> + '_> {
        let it = enumerate_vectors(self.fld, self.fld.q2(), self.dim, bound)?;
        Ok(it.map(move |c| self.from_coords(&c)))
    }

    /// Matrix over F_{q²} of the map induced by a: R^k → R^{k'} into `target`.
    pub fn induced_map(&self, a: &Mat<Poly>, target: &TorsionModule) -> Result<Mat<Scalar>> {
        // well defined iff a·M ⊂ M'·R^{k'}
        let am = a.mul(&self.lattice);
        for j in 0..am.cols() {
            if !target.is_zero_elem(&target.reduce(&am.col(j))) {
                return Err(Error::Precondition("map does not preserve the lattices".into()));
            }
        }
        let cols: Vec<Vec<Scalar>> =
            self.basis().iter().map(|b| target.coords(&target.reduce(&a.mul_vec(&self.lift(b))))).collect();
        Ok(Mat::from_cols(self.fld, target.dim, &cols))
    }

    /// The dual Hom(Q, K/R) presented as R^k / Mᵀ·R^k.
    pub fn dual(&self) -> TorsionDual {
        let module = TorsionModule::cokernel(&self.lattice.transpose()).expect("transpose is nonsingular");
        let m_rat = self.lattice.map_into(self.fld, |p| Rat::from_poly(p.clone()));
        let m_inv = m_rat.inverse().expect("lattice is nonsingular");
        TorsionDual { module, m_inv }
    }
}

/// The dual module together with the evaluation pairing into K/R.
#[derive(Clone, Debug)]
pub struct TorsionDual {
    pub module: TorsionModule,
    m_inv: Mat<Rat>,
}

impl TorsionDual {
    /// ⟨x, w⟩ = wᵀ·M⁻¹·x mod R, as a proper fraction.
    pub fn pair(&self, q: &TorsionModule, x: &TorsionElement, w: &TorsionElement) -> Rat {
        let fld = q.field();
        let xl: Vec<Rat> = q.lift(x).into_iter().map(Rat::from_poly).collect();
        let wl: Vec<Rat> = self.module.lift(w).into_iter().map(Rat::from_poly).collect();
        let mx = self.m_inv.mul_vec(&xl);
        wl.iter().zip(&mx).fold(Rat::zero(fld), |acc, (a, b)| acc.radd(&a.rmul(b))).proper()
    }

    /// Gram matrix of the F_{q²}-valued pairing (x, w) ↦ Σ Res⟨x, w⟩ on bases.
    pub fn residue_gram(&self, q: &TorsionModule) -> Mat<Scalar> {
        let bq = q.basis();
        let bd = self.module.basis();
        Mat::from_fn(q.field(), bq.len(), bd.len(), |i, j| self.pair(q, &bq[i], &bd[j]).residue_sum())
    }

    /// Perfectness via invertibility of the residue Gram matrix.
    pub fn is_perfect(&self, q: &TorsionModule) -> bool {
        let g = self.residue_gram(q);
        g.is_square() && (g.rows() == 0 || g.inverse().is_some())
    }
}

/// All vectors in F^dim for F the first `size` elements of the index order
/// (q for F_q, q² for F_{q²}), odometer order with coordinate 0 fastest.
pub fn enumerate_vectors(
    fld: &'static Field,
    size: u32,
    dim: usize,
    bound: u128,
) -> Result<impl Iterator<Item = Vec<Scalar>>> {
    let total = (size as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::TooLarge { size: total, bound });
    }
    let mut idx = vec![0u32; dim];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let v: Vec<Scalar> = idx.iter().map(|&i| fld.from_index(i)).collect();
        let mut k = 0;
        loop {
            if k == dim {
                done = true;
                break;
            }
            idx[k] += 1;
            if idx[k] < size {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        Some(v)
    }))
}

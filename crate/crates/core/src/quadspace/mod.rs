//! Quadratic spaces over F_q, their Gauss sums and the characters η and χ.
//!
//! A form is stored through the Gram matrix G of ⟨v, w⟩ = (q(v+w) − q(v) − q(w))/2,
//! so q(v) = vᵀ·G·v. Spaces over F_{q²} ([`ExtQuadSpace`]) are only used to
//! compare Gauss sums across the field change.

mod induced;
mod witt;

pub use induced::{gauss_identity_check, induced_quadratic_space, GaussIdentity, InducedSpace, Side};
pub use witt::{witt_property_suite, WittInputs, WittReport};

use crate::error::{Error, Result};
use crate::gf::{sqrt_q_power, to_rational, Field, Psi, Scalar};
use crate::linalg::Mat;
use crate::polyalg::{enumerate_vectors, DEFAULT_ENUM_BOUND};
use crate::projline::split_fq;
use crate::{CharValue, RatValue};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadSpace {
    fld: &'static Field,
    gram: Mat<Scalar>,
}

fn half(fld: &'static Field) -> Scalar {
    fld.int(2).inv().expect("odd characteristic")
}

impl QuadSpace {
    /// The form vᵀ·G·v for a symmetric G with entries in F_q.
    pub fn new(gram: Mat<Scalar>) -> Result<QuadSpace> {
        if !gram.is_square() || gram.transpose() != gram {
            return Err(Error::Shape("Gram matrix is not symmetric".into()));
        }
        if gram.entries().iter().any(|x| !x.is_base()) {
            return Err(Error::Field("Gram matrix has entries outside F_q".into()));
        }
        Ok(QuadSpace { fld: gram.ctx(), gram })
    }

    /// Polarization of an arbitrary function on F_q^r, which is then checked
    /// to be quadratic on the basis: q(cv) = c²q(v) and q(u+v+w) by
    /// inclusion–exclusion for basis triples.
    pub fn from_fn(fld: &'static Field, dim: usize, f: impl Fn(&[Scalar]) -> Scalar) -> Result<QuadSpace> {
        let e = |i: usize| -> Vec<Scalar> { (0..dim).map(|k| if k == i { fld.one() } else { fld.zero() }).collect() };
        let sum = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().zip(b).map(|(x, y)| *x + *y).collect() };
        let diag: Vec<Scalar> = (0..dim).map(|i| f(&e(i))).collect();
        let h = half(fld);
        let mut gram = Mat::zeros(fld, dim, dim);
        for i in 0..dim {
            gram[(i, i)] = diag[i];
            for j in i + 1..dim {
                let b = (f(&sum(&e(i), &e(j))) - diag[i] - diag[j]) * h;
                gram[(i, j)] = b;
                gram[(j, i)] = b;
            }
        }
        let v = QuadSpace::new(gram)?;
        let two = fld.int(2);
        for i in 0..dim {
            let c: Vec<Scalar> = e(i).iter().map(|x| *x * two).collect();
            if f(&c) != two * two * diag[i] {
                return Err(Error::Invariant { lemma: "quadratic form", detail: "q(2v) ≠ 4q(v)".into() });
            }
        }
        if dim >= 3 {
            let (a, b, c) = (e(0), e(1), e(2));
            let abc = sum(&sum(&a, &b), &c);
            if f(&abc) != v.eval(&abc) {
                return Err(Error::Invariant { lemma: "quadratic form", detail: "function is not quadratic".into() });
            }
        }
        Ok(v)
    }

    pub fn zero(fld: &'static Field) -> QuadSpace {
        QuadSpace { fld, gram: Mat::zeros(fld, 0, 0) }
    }
    /// H₊ = F_q² with q(x, y) = xy.
    pub fn hyperbolic_plane(fld: &'static Field) -> QuadSpace {
        let h = half(fld);
        QuadSpace::new(Mat::from_rows(fld, vec![vec![fld.zero(), h], vec![h, fld.zero()]])).expect("symmetric")
    }
    /// H₋ = F_{q²} with the norm form, in the coordinates a + bα.
    pub fn norm_form(fld: &'static Field) -> QuadSpace {
        let nu = (fld.alpha() * fld.alpha()).re();
        QuadSpace::new(Mat::from_rows(fld, vec![vec![fld.one(), fld.zero()], vec![fld.zero(), -nu]])).expect("symmetric")
    }
    /// Σ cᵢxᵢ².
    pub fn diagonal(fld: &'static Field, c: &[Scalar]) -> Result<QuadSpace> {
        QuadSpace::new(Mat::from_fn(fld, c.len(), c.len(), |i, j| if i == j { c[i] } else { fld.zero() }))
    }
    /// x ↦ σ(x)ᵀ·H·x on F_{q²}^r for Hermitian H, on F_q^{2r} with coordinates
    /// (re x₁, im x₁, …).
    pub fn hermitian_induced(h: &Mat<Scalar>) -> Result<QuadSpace> {
        if h.dagger() != *h {
            return Err(Error::Hermitian("matrix is not Hermitian".into()));
        }
        let fld = h.ctx();
        let r = h.rows();
        QuadSpace::from_fn(fld, 2 * r, |x| {
            let v = crate::projline::join_fq(fld, x);
            let hv = h.mul_vec(&v);
            v.iter().zip(&hv).fold(fld.zero(), |a, (s, t)| a + s.sigma() * *t)
        })
    }

    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &Mat<Scalar> {
        &self.gram
    }
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let gx = self.gram.mul_vec(x);
        x.iter().zip(&gx).fold(self.fld.zero(), |a, (s, t)| a + *s * *t)
    }
    /// ⟨x, y⟩.
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(self.fld.zero(), |a, (s, t)| a + *s * *t)
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == 0 || !self.gram.det().is_zero()
    }
    pub fn direct_sum(&self, o: &QuadSpace) -> QuadSpace {
        let (a, b) = (self.dim(), o.dim());
        let gram = Mat::from_fn(self.fld, a + b, a + b, |i, j| {
            if i < a && j < a {
                self.gram[(i, j)]
            } else if i >= a && j >= a {
                o.gram[(i - a, j - a)]
            } else {
                self.fld.zero()
            }
        });
        QuadSpace { fld: self.fld, gram }
    }
    /// c·q.
    pub fn scaled(&self, c: Scalar) -> QuadSpace {
        QuadSpace { fld: self.fld, gram: self.gram.scale(&c) }
    }
    /// Whether the columns of `l` span a Lagrangian: totally isotropic of half
    /// the dimension.
    pub fn is_lagrangian(&self, l: &Mat<Scalar>) -> bool {
        2 * l.rank() == self.dim() && l.transpose().mul(&self.gram).mul(l).is_zero()
    }

    /// Number of v with q(v) = c for each c ∈ F_q (indexed by element index).
    pub fn value_counts(&self, bound: u128) -> Result<Vec<i64>> {
        let mut counts = vec![0i64; self.fld.q() as usize];
        for v in enumerate_vectors(self.fld, self.fld.q(), self.dim(), bound)? {
            counts[self.eval(&v).index() as usize] += 1;
        }
        Ok(counts)
    }
}

/// G(V, q) = Σ ψ(q(v)) and γ = G/√q^{dim V}.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussData {
    pub dim: usize,
    pub sum: CharValue,
    pub gamma: RatValue,
}

impl GaussData {
    fn new(sum: CharValue, dim: usize, sqrt_steps: i64) -> GaussData {
        let ring = sum.ctx();
        let gamma = &to_rational(&sum) * &sqrt_q_power(ring, -sqrt_steps);
        GaussData { dim, sum, gamma }
    }
    /// ±1 if γ is a sign.
    pub fn sign(&self) -> Option<i64> {
        let ring = self.gamma.ctx();
        [1, -1].into_iter().find(|&s| self.gamma == RatValue::from_int(ring, s))
    }
    pub fn is_fourth_root_of_unity(&self) -> bool {
        self.gamma.pow(4).is_one()
    }
}

/// The Gauss sum by full enumeration.
pub fn gauss_sum(v: &QuadSpace, psi: &Psi) -> Result<GaussData> {
    gauss_sum_bounded(v, psi, DEFAULT_ENUM_BOUND)
}

pub fn gauss_sum_bounded(v: &QuadSpace, psi: &Psi, bound: u128) -> Result<GaussData> {
    let counts = v.value_counts(bound)?;
    Ok(GaussData::new(psi.sum_histogram(&counts), v.dim(), v.dim() as i64))
}

/// A quadratic space over F_{q²}, q(v) = vᵀ·G·v with G symmetric over F_{q²}.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtQuadSpace {
    gram: Mat<Scalar>,
}

impl ExtQuadSpace {
    pub fn new(gram: Mat<Scalar>) -> Result<ExtQuadSpace> {
        if !gram.is_square() || gram.transpose() != gram {
            return Err(Error::Shape("Gram matrix is not symmetric".into()));
        }
        Ok(ExtQuadSpace { gram })
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let gx = self.gram.mul_vec(x);
        x.iter().zip(&gx).fold(self.gram.ctx().zero(), |a, (s, t)| a + *s * *t)
    }
    /// γ_{F_{q²}} with the character ψ∘Tr, normalized by √(q²)^{dim}.
    pub fn gauss_sum(&self, psi: &Psi, bound: u128) -> Result<GaussData> {
        let fld = self.gram.ctx();
        let mut counts = vec![0i64; fld.q() as usize];
        for v in enumerate_vectors(fld, fld.q2(), self.dim(), bound)? {
            counts[self.eval(&v).trace().index() as usize] += 1;
        }
        Ok(GaussData::new(psi.sum_histogram(&counts), self.dim(), 2 * self.dim() as i64))
    }
    /// Tr∘q on the underlying F_q-space.
    pub fn trace_form(&self) -> QuadSpace {
        let fld = self.gram.ctx();
        QuadSpace::from_fn(fld, 2 * self.dim(), |x| self.eval(&crate::projline::join_fq(fld, x)).trace())
            .expect("trace of a quadratic form is quadratic")
    }
}

/// Coordinates of an F_{q²}-vector as an F_q-vector.
pub fn restrict_coords(v: &[Scalar]) -> Vec<Scalar> {
    split_fq(v)
}

/// η(D) = (−1)^{deg_X D}.
pub fn eta(deg_x: i64) -> i64 {
    if deg_x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// χ(O(d)) = (−1)^{nd} for the rank n unitary character; d is the degree of
/// the line bundle over F_{q²}.
pub fn chi(deg: i64, n: usize) -> i64 {
    eta(deg * n as i64)
}

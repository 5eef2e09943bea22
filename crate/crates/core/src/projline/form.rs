//! Homogeneous Laurent forms in (x:y) and matrices of them.
//!
//! A form of degree d is Σ c_a x^a y^{d−a}; negative exponents are allowed so
//! that Čech cochains on the cover U₀ = {x ≠ 0}, U₁ = {y ≠ 0} live in the same
//! type. On U₁ the affine coordinate is t = x/y and O(d) is trivialized by
//! y^d; on U₀ the coordinate is u = y/x and O(d) is trivialized by x^d.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::linalg::Mat;
use crate::polyalg::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    deg: i64,
    terms: BTreeMap<i64, Scalar>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[{}]", self.deg);
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(a, c)| format!("({c})x^{a}y^{}", self.deg - a)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Form {
    pub fn zero(deg: i64) -> Form {
        Form { deg, terms: BTreeMap::new() }
    }
    /// c·x^a·y^{deg−a}.
    pub fn monomial(c: Scalar, a: i64, deg: i64) -> Form {
        let mut f = Form::zero(deg);
        if !c.is_zero() {
            f.terms.insert(a, c);
        }
        f
    }
    /// From coefficients of x^0 y^d, x^1 y^{d−1}, …, x^d y^0.
    pub fn from_dense(deg: i64, coeffs: &[Scalar]) -> Form {
        let mut f = Form::zero(deg);
        for (a, &c) in coeffs.iter().enumerate() {
            f.add_term(a as i64, c);
        }
        f
    }
    /// Sum of the given terms (x-exponent, coefficient).
    pub fn from_terms(deg: i64, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Form {
        let mut f = Form::zero(deg);
        for (a, c) in terms {
            f.add_term(a, c);
        }
        f
    }
    pub fn deg(&self) -> i64 {
        self.deg
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, Scalar)> + '_ {
        self.terms.iter().map(|(&a, &c)| (a, c))
    }
    /// Coefficient of x^a y^{deg−a}, if nonzero.
    pub fn coeff(&self, a: i64) -> Option<Scalar> {
        self.terms.get(&a).copied()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Dense coefficients for a regular form of degree ≥ 0.
    pub fn dense(&self, fld: &'static Field) -> Vec<Scalar> {
        (0..=self.deg).map(|a| self.coeff(a).unwrap_or_else(|| fld.zero())).collect()
    }
    fn add_term(&mut self, a: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(a).or_insert_with(|| c.zero_like());
        *e += c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }
    /// A global section: all exponents nonnegative.
    pub fn is_regular(&self) -> bool {
        self.terms.keys().all(|&a| a >= 0 && self.deg - a >= 0)
    }
    /// Projection to the Čech H¹ basis: keep x^{−a}y^{d+a} with both exponents negative.
    pub fn h1_part(&self) -> Form {
        Form {
            deg: self.deg,
            terms: self.terms.iter().filter(|(&a, _)| a < 0 && self.deg - a < 0).map(|(&a, &c)| (a, c)).collect(),
        }
    }

    pub fn add(&self, o: &Form) -> Form {
        assert!(self.deg == o.deg, "adding forms of degrees {} and {}", self.deg, o.deg);
        let mut r = self.clone();
        for (a, c) in o.terms() {
            r.add_term(a, c);
        }
        r
    }
    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Form {
        Form { deg: self.deg, terms: self.terms.iter().map(|(&a, &c)| (a, -c)).collect() }
    }
    pub fn scale(&self, s: Scalar) -> Form {
        let mut r = Form::zero(self.deg);
        for (a, c) in self.terms() {
            r.add_term(a, c * s);
        }
        r
    }
    pub fn mul(&self, o: &Form) -> Form {
        let mut r = Form::zero(self.deg + o.deg);
        for (a, c) in self.terms() {
            for (b, d) in o.terms() {
                r.add_term(a + b, c * d);
            }
        }
        r
    }
    /// Coefficientwise σ.
    pub fn sigma(&self) -> Form {
        Form { deg: self.deg, terms: self.terms.iter().map(|(&a, &c)| (a, c.sigma())).collect() }
    }

    /// Restriction to U₁ in the coordinate t; needs x-exponents ≥ 0.
    pub fn on_chart_y(&self, fld: &'static Field) -> Result<Poly> {
        let mut c = Vec::new();
        for (a, v) in self.terms() {
            if a < 0 {
                return Err(Error::Shape("form has a pole along x = 0".into()));
            }
            let a = a as usize;
            if c.len() <= a {
                c.resize(a + 1, fld.zero());
            }
            c[a] = v;
        }
        Ok(Poly::from_coeffs(fld, c))
    }
    /// Restriction to U₀ in the coordinate u = y/x; needs y-exponents ≥ 0.
    pub fn on_chart_x(&self, fld: &'static Field) -> Result<Poly> {
        let mut c = Vec::new();
        for (a, v) in self.terms() {
            let b = self.deg - a;
            if b < 0 {
                return Err(Error::Shape("form has a pole along y = 0".into()));
            }
            let b = b as usize;
            if c.len() <= b {
                c.resize(b + 1, fld.zero());
            }
            c[b] = v;
        }
        Ok(Poly::from_coeffs(fld, c))
    }
    /// The form of degree `deg` whose U₁ restriction is p(t).
    pub fn from_chart_y(p: &Poly, deg: i64) -> Form {
        let mut f = Form::zero(deg);
        for (a, &c) in p.coeffs().iter().enumerate() {
            f.add_term(a as i64, c);
        }
        f
    }
    /// The form of degree `deg` whose U₀ restriction is p(u).
    pub fn from_chart_x(p: &Poly, deg: i64) -> Form {
        let mut f = Form::zero(deg);
        for (b, &c) in p.coeffs().iter().enumerate() {
            f.add_term(deg - b as i64, c);
        }
        f
    }
}

/// A matrix of forms for a map ⊕O(cols_i) → ⊕O(rows_j); entry (j, i) has
/// degree rows_j − cols_i.
#[derive(Clone, PartialEq, Eq)]
pub struct FormMatrix {
    rows: Vec<i64>,
    cols: Vec<i64>,
    e: Vec<Form>,
}

impl fmt::Debug for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FormMatrix {:?} <- {:?}", self.rows, self.cols)?;
        for j in 0..self.rows.len() {
            let row: Vec<String> = (0..self.cols.len()).map(|i| format!("{:?}", self.get(j, i))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl FormMatrix {
    pub fn zero(rows: &[i64], cols: &[i64]) -> FormMatrix {
        let e = rows.iter().flat_map(|&r| cols.iter().map(move |&c| Form::zero(r - c))).collect();
        FormMatrix { rows: rows.to_vec(), cols: cols.to_vec(), e }
    }
    pub fn identity(fld: &'static Field, twists: &[i64]) -> FormMatrix {
        let mut m = FormMatrix::zero(twists, twists);
        for j in 0..twists.len() {
            m.set(j, j, Form::monomial(fld.one(), 0, 0));
        }
        m
    }
    /// Build from entries, checking every degree.
    pub fn from_entries(rows: &[i64], cols: &[i64], e: Vec<Form>) -> Result<FormMatrix> {
        if e.len() != rows.len() * cols.len() {
            return Err(Error::Shape("entry count".into()));
        }
        for (k, f) in e.iter().enumerate() {
            let (j, i) = (k / cols.len(), k % cols.len());
            if f.deg() != rows[j] - cols[i] {
                return Err(Error::Shape(format!(
                    "entry ({j},{i}) has degree {} but twists need {}",
                    f.deg(),
                    rows[j] - cols[i]
                )));
            }
        }
        Ok(FormMatrix { rows: rows.to_vec(), cols: cols.to_vec(), e })
    }
    pub fn rows(&self) -> &[i64] {
        &self.rows
    }
    pub fn cols(&self) -> &[i64] {
        &self.cols
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn get(&self, j: usize, i: usize) -> &Form {
        &self.e[j * self.cols.len() + i]
    }
    pub fn set(&mut self, j: usize, i: usize, f: Form) {
        assert_eq!(f.deg(), self.rows[j] - self.cols[i], "entry degree");
        let n = self.cols.len();
        self.e[j * n + i] = f;
    }
    pub fn entries(&self) -> &[Form] {
        &self.e
    }
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|f| f.is_zero())
    }
    pub fn is_regular(&self) -> bool {
        self.e.iter().all(|f| f.is_regular())
    }
    pub fn h1_reduce(&self) -> FormMatrix {
        FormMatrix { rows: self.rows.clone(), cols: self.cols.clone(), e: self.e.iter().map(|f| f.h1_part()).collect() }
    }

    /// self ∘ rhs.
    pub fn compose(&self, rhs: &FormMatrix) -> Result<FormMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!("composing {:?} after {:?}", self.cols, rhs.rows)));
        }
        let mut out = FormMatrix::zero(&self.rows, &rhs.cols);
        for j in 0..self.rows.len() {
            for i in 0..rhs.cols.len() {
                let mut acc = Form::zero(self.rows[j] - rhs.cols[i]);
                for k in 0..self.cols.len() {
                    let a = self.get(j, k);
                    let b = rhs.get(k, i);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(j, i, acc);
            }
        }
        Ok(out)
    }
    pub fn add(&self, o: &FormMatrix) -> Result<FormMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("adding maps between different bundles".into()));
        }
        Ok(FormMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect(),
        })
    }
    pub fn sub(&self, o: &FormMatrix) -> Result<FormMatrix> {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> FormMatrix {
        self.map(|f| f.neg())
    }
    pub fn scale(&self, s: Scalar) -> FormMatrix {
        self.map(|f| f.scale(s))
    }
    pub fn sigma(&self) -> FormMatrix {
        self.map(|f| f.sigma())
    }
    fn map(&self, g: impl Fn(&Form) -> Form) -> FormMatrix {
        FormMatrix { rows: self.rows.clone(), cols: self.cols.clone(), e: self.e.iter().map(g).collect() }
    }
    /// The dual map B* → A* of A → B: transposed entries, negated twists.
    pub fn dual(&self) -> FormMatrix {
        let rows: Vec<i64> = self.cols.iter().map(|c| -c).collect();
        let cols: Vec<i64> = self.rows.iter().map(|r| -r).collect();
        let mut e = Vec::with_capacity(self.e.len());
        for i in 0..self.cols.len() {
            for j in 0..self.rows.len() {
                e.push(self.get(j, i).clone());
            }
        }
        FormMatrix { rows, cols, e }
    }
    /// σ* of the dual: σ(M)ᵀ on negated twists.
    pub fn dagger(&self) -> FormMatrix {
        self.dual().sigma()
    }
    /// Twist source and target by O(k).
    pub fn twist(&self, k: i64) -> FormMatrix {
        FormMatrix {
            rows: self.rows.iter().map(|r| r + k).collect(),
            cols: self.cols.iter().map(|c| c + k).collect(),
            e: self.e.clone(),
        }
    }
    /// Reinterpret with new twists of the same differences (e.g. after tensoring
    /// only one side with a line bundle whose degree is absorbed elsewhere).
    pub fn with_twists(&self, rows: &[i64], cols: &[i64]) -> Result<FormMatrix> {
        FormMatrix::from_entries(rows, cols, self.e.clone())
    }
    /// The block-diagonal map A ⊕ B.
    pub fn block_diag(&self, o: &FormMatrix) -> FormMatrix {
        let rows: Vec<i64> = self.rows.iter().chain(&o.rows).copied().collect();
        let cols: Vec<i64> = self.cols.iter().chain(&o.cols).copied().collect();
        let mut out = FormMatrix::zero(&rows, &cols);
        for j in 0..self.nrows() {
            for i in 0..self.ncols() {
                out.set(j, i, self.get(j, i).clone());
            }
        }
        for j in 0..o.nrows() {
            for i in 0..o.ncols() {
                out.set(self.nrows() + j, self.ncols() + i, o.get(j, i).clone());
            }
        }
        out
    }
    /// Columns of `self` followed by those of `o` (same target).
    pub fn hstack(&self, o: &FormMatrix) -> Result<FormMatrix> {
        if self.rows != o.rows {
            return Err(Error::Shape("stacking maps with different targets".into()));
        }
        let cols: Vec<i64> = self.cols.iter().chain(&o.cols).copied().collect();
        let mut out = FormMatrix::zero(&self.rows, &cols);
        for j in 0..self.nrows() {
            for i in 0..cols.len() {
                let f = if i < self.ncols() { self.get(j, i) } else { o.get(j, i - self.ncols()) };
                out.set(j, i, f.clone());
            }
        }
        Ok(out)
    }
    /// Rows of `self` followed by those of `o` (same source).
    pub fn vstack(&self, o: &FormMatrix) -> Result<FormMatrix> {
        Ok(self.dual().hstack(&o.dual())?.dual())
    }
    /// Sum of the diagonal entries of a square matrix whose diagonal has a
    /// common degree.
    pub fn trace(&self) -> Result<Form> {
        if self.rows.len() != self.cols.len() {
            return Err(Error::Shape("trace of a non-square map".into()));
        }
        let d: Vec<i64> = self.rows.iter().zip(&self.cols).map(|(r, c)| r - c).collect();
        if d.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Shape("diagonal degrees differ".into()));
        }
        let mut acc = Form::zero(d.first().copied().unwrap_or(0));
        for j in 0..self.rows.len() {
            acc = acc.add(self.get(j, j));
        }
        Ok(acc)
    }

    pub fn on_chart_y(&self, fld: &'static Field) -> Result<Mat<Poly>> {
        let mut m = Mat::zeros(fld, self.nrows(), self.ncols());
        for j in 0..self.nrows() {
            for i in 0..self.ncols() {
                m[(j, i)] = self.get(j, i).on_chart_y(fld)?;
            }
        }
        Ok(m)
    }
    pub fn on_chart_x(&self, fld: &'static Field) -> Result<Mat<Poly>> {
        let mut m = Mat::zeros(fld, self.nrows(), self.ncols());
        for j in 0..self.nrows() {
            for i in 0..self.ncols() {
                m[(j, i)] = self.get(j, i).on_chart_x(fld)?;
            }
        }
        Ok(m)
    }
    pub fn from_chart_y(m: &Mat<Poly>, rows: &[i64], cols: &[i64]) -> FormMatrix {
        let mut out = FormMatrix::zero(rows, cols);
        for j in 0..rows.len() {
            for i in 0..cols.len() {
                out.set(j, i, Form::from_chart_y(&m[(j, i)], rows[j] - cols[i]));
            }
        }
        out
    }
    pub fn from_chart_x(m: &Mat<Poly>, rows: &[i64], cols: &[i64]) -> FormMatrix {
        let mut out = FormMatrix::zero(rows, cols);
        for j in 0..rows.len() {
            for i in 0..cols.len() {
                out.set(j, i, Form::from_chart_x(&m[(j, i)], rows[j] - cols[i]));
            }
        }
        out
    }
}

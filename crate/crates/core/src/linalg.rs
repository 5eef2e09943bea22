//! Dense matrices over the commutative rings used in the crate.
//!
//! Elements of F_{q²}, F_{q²}[t] and F_{q²}(t) all need a field context to
//! produce zero and one, so [`Ring`] carries an associated context type and a
//! [`Mat`] stores it alongside the entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::gf::{Field, Scalar};

/// A commutative ring whose constants are produced from a context.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Ctx: Copy + fmt::Debug;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
}

/// A ring in which every nonzero element is invertible.
pub trait FieldElem: Ring {
    fn rinv(&self) -> Option<Self>;
}

/// The coefficientwise action of σ.
pub trait Conj {
    fn conj(&self) -> Self;
}

impl Ring for Scalar {
    type Ctx = &'static Field;
    fn zero(ctx: Self::Ctx) -> Self {
        ctx.zero()
    }
    fn one(ctx: Self::Ctx) -> Self {
        ctx.one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        *self + *o
    }
    fn rsub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn rmul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn rneg(&self) -> Self {
        -*self
    }
}

impl FieldElem for Scalar {
    fn rinv(&self) -> Option<Self> {
        self.inv()
    }
}

impl Conj for Scalar {
    fn conj(&self) -> Self {
        self.sigma()
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T: Ring> {
    ctx: T::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mat<T> {
    pub fn zeros(ctx: T::Ctx, rows: usize, cols: usize) -> Self {
        Mat { ctx, rows, cols, data: vec![T::zero(ctx); rows * cols] }
    }
    pub fn identity(ctx: T::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = T::one(ctx);
        }
        m
    }
    pub fn from_fn(ctx: T::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ctx, rows, cols, data }
    }
    pub fn from_rows(ctx: T::Ctx, rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { ctx, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(ctx: T::Ctx, rows: usize, cols: &[Vec<T>]) -> Self {
        Self::from_fn(ctx, rows, cols.len(), |i, j| cols[j][i].clone())
    }
    pub fn column_vector(ctx: T::Ctx, v: Vec<T>) -> Self {
        let n = v.len();
        Mat { ctx, rows: n, cols: 1, data: v }
    }

    pub fn ctx(&self) -> T::Ctx {
        self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn entries(&self) -> &[T] {
        &self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat { ctx: self.ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
    pub fn map_into<U: Ring>(&self, ctx: U::Ctx, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].radd(&a.rmul(b));
                    }
                }
            }
        }
        out
    }
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(self.ctx), |acc, k| acc.radd(&self[(i, k)].rmul(&v[k])))
            })
            .collect()
    }
    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.radd(b)).collect();
        Mat { ctx: self.ctx, rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix difference shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.rsub(b)).collect();
        Mat { ctx: self.ctx, rows: self.rows, cols: self.cols, data }
    }
    pub fn neg(&self) -> Self {
        self.map(|x| x.rneg())
    }
    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.rmul(s))
    }
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "hstack shape");
        Self::from_fn(self.ctx, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "vstack shape");
        Self::from_fn(self.ctx, self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                o[(i - self.rows, j)].clone()
            }
        })
    }
    /// Rows r0..r1 and columns c0..c1.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.ctx, r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ctx, self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
    /// row[dst] += c·row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].rmul(c);
            self[(dst, j)] = self[(dst, j)].radd(&v);
        }
    }
    /// col[dst] += c·col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].rmul(c);
            self[(i, dst)] = self[(i, dst)].radd(&v);
        }
    }
    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].rmul(c);
        }
    }
    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)].rmul(c);
        }
    }

    /// Determinant by cofactor expansion; intended for the small sizes used here.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one(self.ctx);
        }
        let idx: Vec<usize> = (0..n).collect();
        self.det_minor(0, &idx)
    }

    fn det_minor(&self, row: usize, cols: &[usize]) -> T {
        if cols.len() == 1 {
            return self[(row, cols[0])].clone();
        }
        let mut acc = T::zero(self.ctx);
        for (k, &c) in cols.iter().enumerate() {
            let a = &self[(row, c)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.rmul(&self.det_minor(row + 1, &rest));
            acc = if k % 2 == 0 { acc.radd(&term) } else { acc.rsub(&term) };
        }
        acc
    }
}

impl<T: Ring + Conj> Mat<T> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }
    /// σ applied entrywise, then transposed.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }
}

/// Result of Gauss–Jordan elimination.
pub struct Rref<T: Ring> {
    pub reduced: Mat<T>,
    pub pivots: Vec<usize>,
}

impl<T: FieldElem> Mat<T> {
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].rinv().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].rneg();
                    m.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.ctx, n));
        let rr = aug.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rr.reduced.block(0, n, n, 2 * n))
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut k = Self::zeros(self.ctx, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k[(fc, j)] = T::one(self.ctx);
            for (r, &pc) in rr.pivots.iter().enumerate() {
                k[(pc, j)] = rr.reduced[(r, fc)].rneg();
            }
        }
        k
    }

    /// Some X with self·X = b, if one exists.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve shape");
        let aug = self.hstack(b);
        let rr = aug.rref();
        if rr.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.ctx, self.cols, b.cols);
        for (r, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = rr.reduced[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// A basis of the column space, as columns.
    pub fn column_basis(&self) -> Self {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// Determinant by elimination.
    pub fn det_field(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut d = T::one(self.ctx);
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero(self.ctx);
            };
            if pr != c {
                m.swap_rows(pr, c);
                d = d.rneg();
            }
            let piv = m[(c, c)].clone();
            d = d.rmul(&piv);
            let inv = piv.rinv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].rmul(&inv).rneg();
                    m.add_row_multiple(i, c, &f);
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn inverse_kernel_solve() {
        let k = field_make(5, 1).unwrap();
        let a = Mat::from_rows(k, vec![vec![k.int(1), k.int(2)], vec![k.int(3), k.alpha()]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Mat::identity(k, 2));
        assert_eq!(a.det(), a.det_field());
        let s = Mat::from_rows(k, vec![vec![k.int(1), k.int(2), k.int(3)], vec![k.int(2), k.int(4), k.int(0)]]);
        let ker = s.kernel();
        assert_eq!(ker.cols(), 1);
        assert!(s.mul(&ker).is_zero());
        let b = Mat::column_vector(k, vec![k.int(1), k.int(0)]);
        let x = s.solve(&b).unwrap();
        assert_eq!(s.mul(&x), b);
        assert_eq!(s.rank(), 2);
    }
}

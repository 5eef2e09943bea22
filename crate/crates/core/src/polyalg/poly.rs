//! Polynomials over F_{q²} in the affine coordinate t, and rational functions.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::gf::{Field, Scalar};
use crate::linalg::{Conj, FieldElem, Ring};

/// A polynomial in t over F_{q²}, coefficients low degree first, trimmed.
#[derive(Clone)]
pub struct Poly {
    fld: &'static Field,
    c: Vec<Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for x in &self.c {
            x.index().hash(state);
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = if a.is_one() && i > 0 { String::new() } else { format!("({a})") };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly {
    pub fn zero(fld: &'static Field) -> Poly {
        Poly { fld, c: Vec::new() }
    }
    pub fn one(fld: &'static Field) -> Poly {
        Poly::constant(fld.one())
    }
    pub fn constant(c: Scalar) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }
    /// The coordinate t.
    pub fn t(fld: &'static Field) -> Poly {
        Poly::monomial(fld.one(), 1)
    }
    /// c·t^k.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let fld = c.field();
        let mut v = vec![fld.zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(fld, v)
    }
    pub fn from_coeffs(fld: &'static Field, mut c: Vec<Scalar>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { fld, c }
    }
    /// t − a.
    pub fn linear(a: Scalar) -> Poly {
        Poly::from_coeffs(a.field(), vec![-a, a.one_like()])
    }

    pub fn field(&self) -> &'static Field {
        self.fld
    }
    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }
    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).copied().unwrap_or_else(|| self.fld.zero())
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with deg 0 = −1, convenient for comparisons.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lc(&self) -> Scalar {
        self.c.last().copied().unwrap_or_else(|| self.fld.zero())
    }
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(inv)
    }
    pub fn scale(&self, s: Scalar) -> Poly {
        Poly::from_coeffs(self.fld, self.c.iter().map(|&x| x * s).collect())
    }
    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.fld.zero(); k];
        v.extend_from_slice(&self.c);
        Poly { fld: self.fld, c: v }
    }
    pub fn eval(&self, x: Scalar) -> Scalar {
        self.c.iter().rev().fold(self.fld.zero(), |acc, &a| acc * x + a)
    }
    /// Coefficientwise σ.
    pub fn sigma(&self) -> Poly {
        Poly { fld: self.fld, c: self.c.iter().map(|x| x.sigma()).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::from_coeffs(self.fld, v)
    }
    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::from_coeffs(self.fld, v)
    }
    pub fn neg(&self) -> Poly {
        Poly { fld: self.fld, c: self.c.iter().map(|&x| -x).collect() }
    }
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.fld);
        }
        let mut v = vec![self.fld.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(self.fld, v)
    }
    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.fld), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(self.fld), self.clone());
        }
        let inv = d.lc().inv().unwrap();
        let mut r = self.c.clone();
        let mut qv = vec![self.fld.zero(); self.c.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = r[k + dd] * inv;
            qv[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &di) in d.c.iter().enumerate() {
                r[k + i] -= c * di;
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(self.fld, qv), Poly::from_coeffs(self.fld, r))
    }
    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }
    pub fn divides(&self, o: &Poly) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, u) with s·self + u·o = g monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.fld;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut u0, mut u1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let u = u0.sub(&q.mul(&u1));
            u0 = u1;
            u1 = u;
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(inv), s0.scale(inv), u0.scale(inv))
    }

    /// self^e mod m for a large exponent.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut r = Poly::one(self.fld).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }
}

impl Ring for Poly {
    type Ctx = &'static Field;
    fn zero(ctx: Self::Ctx) -> Self {
        Poly::zero(ctx)
    }
    fn one(ctx: Self::Ctx) -> Self {
        Poly::one(ctx)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
}

impl Conj for Poly {
    fn conj(&self) -> Self {
        self.sigma()
    }
}

/// A rational function num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Rat {
    pub fn new(num: Poly, den: Poly) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        let fld = den.field();
        if num.is_zero() {
            return Rat { num, den: Poly::one(fld) };
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let inv = d.lc().inv().unwrap();
        Rat { num: n.scale(inv), den: d.scale(inv) }
    }
    pub fn from_poly(p: Poly) -> Rat {
        let fld = p.field();
        Rat { num: p, den: Poly::one(fld) }
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> &'static Field {
        self.den.field()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    /// The class modulo F_{q²}[t]: the proper part num mod den over den.
    pub fn proper(&self) -> Rat {
        Rat { num: self.num.rem(&self.den), den: self.den.clone() }
    }
    pub fn sigma(&self) -> Rat {
        Rat { num: self.num.sigma(), den: self.den.sigma() }
    }
    /// Coefficients c_1..c_k of t^{−1}..t^{−k} in the expansion at t = ∞ of the
    /// proper part.
    pub fn expansion_at_infinity(&self, k: usize) -> Vec<Scalar> {
        let p = self.num.rem(&self.den).shift(k);
        let (quot, _) = p.divrem(&self.den);
        (1..=k).map(|j| quot.coeff(k - j)).collect()
    }
    /// Sum of the residues at all finite points of self·dt, i.e. the
    /// t^{−1}-coefficient of the expansion at infinity.
    pub fn residue_sum(&self) -> Scalar {
        self.expansion_at_infinity(1)[0]
    }
}

impl Ring for Rat {
    type Ctx = &'static Field;
    fn zero(ctx: Self::Ctx) -> Self {
        Rat::from_poly(Poly::zero(ctx))
    }
    fn one(ctx: Self::Ctx) -> Self {
        Rat::from_poly(Poly::one(ctx))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Rat::new(self.num.add(&o.num), self.den.clone());
        }
        Rat::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn rsub(&self, o: &Self) -> Self {
        self.radd(&o.rneg())
    }
    fn rmul(&self, o: &Self) -> Self {
        Rat::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn rneg(&self) -> Self {
        Rat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl FieldElem for Rat {
    fn rinv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Rat::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl Conj for Rat {
    fn conj(&self) -> Self {
        self.sigma()
    }
}

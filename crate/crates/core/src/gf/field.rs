//! Finite fields F_q = F_p[β]/(m(β)) and their quadratic extension
//! F_{q²} = F_q[α]/(α² − ν).
//!
//! A [`Field`] owns the full addition and multiplication tables of F_q and is
//! interned for the lifetime of the process, so [`Scalar`] values can carry a
//! `&'static Field` and implement the arithmetic operator traits directly.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on q accepted by [`field_make`].
pub const DEFAULT_FIELD_BOUND: u32 = 121;

/// Serializable description of the tower F_p ⊂ F_q ⊂ F_{q²}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub f: u32,
    /// Monic modulus of F_q over F_p, low degree first.
    pub base_modulus: Vec<u32>,
    /// Monic modulus α² − ν of F_{q²} over F_q, low degree first, entries
    /// are F_q element indices.
    pub ext_modulus: Vec<u32>,
}

/// Interned arithmetic context for F_q and F_{q²}.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    base_modulus: Vec<u32>,
    nu: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    tr_p: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^2 (p={}, f={})", self.q, self.p, self.f)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}
impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p used only while building the tables.
fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lc = fp_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * inv_lc % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_pow(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut bb = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % p as u64;
        }
        bb = bb * bb % p as u64;
        e >>= 1;
    }
    b = r as u32;
    b
}

fn digits(mut x: u32, p: u32, f: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(f as usize);
    for _ in 0..f {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// First monic irreducible polynomial of degree `f` over F_p in the order of
/// the integer encoding of its lower coefficients.
fn find_irreducible(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    let count = p.pow(f);
    'outer: for code in 0..count {
        let mut cand = digits(code, p, f);
        cand.push(1);
        for d in 1..=f / 2 {
            for low in 0..p.pow(d) {
                let mut div = digits(low, p, d);
                div.push(1);
                if fp_rem(&cand, &div, p).is_empty() {
                    continue 'outer;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d) {
            let mut div = digits(low, p, d);
            div.push(1);
            if fp_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), &'static Field>>> = OnceLock::new();

/// Builds (or fetches the interned copy of) the tower F_p ⊂ F_{p^f} ⊂ F_{p^{2f}}
/// with the default bound q ≤ 121.
pub fn field_make(p: u32, f: u32) -> Result<&'static Field> {
    field_make_bounded(p, f, DEFAULT_FIELD_BOUND)
}

/// As [`field_make`] with an explicit bound on q.
pub fn field_make_bounded(p: u32, f: u32, bound: u32) -> Result<&'static Field> {
    if p == 2 {
        return Err(Error::Field("characteristic 2 is not supported".into()));
    }
    if !is_prime(p) {
        return Err(Error::Field(format!("{p} is not prime")));
    }
    if f == 0 {
        return Err(Error::Field("extension degree must be positive".into()));
    }
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= bound)
        .ok_or_else(|| Error::Field(format!("q = {p}^{f} exceeds the bound {bound}")))?;
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = reg.lock().expect("field registry poisoned");
    if let Some(&fld) = guard.get(&(p, f)) {
        return Ok(fld);
    }
    let modulus = find_irreducible(p, f);
    let fld = build(p, f, q, modulus)?;
    let leaked: &'static Field = Box::leak(Box::new(fld));
    guard.insert((p, f), leaked);
    Ok(leaked)
}

/// Rebuilds a field from serialized parameters, checking the moduli.
pub fn field_from_params(params: &FieldParams) -> Result<&'static Field> {
    let fld = field_make(params.p, params.f)?;
    if params.base_modulus != fld.base_modulus {
        if params.base_modulus.len() != params.f as usize + 1
            || params.base_modulus.last() != Some(&1)
            || !is_irreducible(&params.base_modulus, params.p)
        {
            return Err(Error::Field("base modulus is not monic irreducible".into()));
        }
        return Err(Error::Field(
            "only the canonical base modulus is supported for this (p, f)".into(),
        ));
    }
    if params.ext_modulus != fld.params().ext_modulus {
        return Err(Error::Field("extension modulus differs from the canonical one".into()));
    }
    Ok(fld)
}

fn build(p: u32, f: u32, q: u32, modulus: Vec<u32>) -> Result<Field> {
    if !is_irreducible(&modulus, p) {
        return Err(Error::Field("reducible base modulus".into()));
    }
    let qs = q as usize;
    let mut add = vec![0u16; qs * qs];
    let mut mul = vec![0u16; qs * qs];
    for x in 0..q {
        let dx = digits(x, p, f);
        for y in 0..q {
            let dy = digits(y, p, f);
            let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
            add[(x * q + y) as usize] = undigits(&s, p) as u16;
            let mut prod = vec![0u32; 2 * f as usize];
            for (i, a) in dx.iter().enumerate() {
                for (j, b) in dy.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + a * b) % p;
                }
            }
            let mut r = fp_rem(&prod, &modulus, p);
            r.resize(f as usize, 0);
            mul[(x * q + y) as usize] = undigits(&r, p) as u16;
        }
    }
    let mut neg = vec![0u16; qs];
    let mut inv = vec![0u16; qs];
    for x in 0..q {
        for y in 0..q {
            if add[(x * q + y) as usize] == 0 {
                neg[x as usize] = y as u16;
            }
            if mul[(x * q + y) as usize] == 1 {
                inv[x as usize] = y as u16;
            }
        }
    }
    // Tr_{F_q/F_p}(x) = x + x^p + ... + x^{p^{f-1}}
    let mut tr_p = vec![0u16; qs];
    for x in 0..q {
        let mut acc = 0u16;
        let mut cur = x as u16;
        for _ in 0..f {
            acc = add[acc as usize * qs + cur as usize];
            let mut pw = 1u16;
            for _ in 0..p {
                pw = mul[pw as usize * qs + cur as usize];
            }
            cur = pw;
        }
        debug_assert!((acc as u32) < p);
        tr_p[x as usize] = acc;
    }
    // smallest non-square ν: ν^{(q-1)/2} = -1
    let minus_one = neg[1];
    let nu = (1..q as u16)
        .find(|&x| {
            let mut r = 1u16;
            for _ in 0..(q - 1) / 2 {
                r = mul[r as usize * qs + x as usize];
            }
            r == minus_one
        })
        .ok_or_else(|| Error::Field("no non-square found".into()))?;
    // α² − ν irreducible over F_q iff ν has no square root
    if (0..q as usize).any(|x| mul[x * qs + x] == nu) {
        return Err(Error::Field("extension modulus is reducible".into()));
    }
    Ok(Field { p, f, q, base_modulus: modulus, nu, add, mul, neg, inv, tr_p })
}

impl Field {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    /// Size of the base field F_q.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Size of the extension F_{q²}.
    pub fn q2(&self) -> u32 {
        self.q * self.q
    }
    /// The non-square ν ∈ F_q with α² = ν.
    pub fn nu(&'static self) -> Scalar {
        self.base(self.nu as u32)
    }

    pub fn params(&self) -> FieldParams {
        FieldParams {
            p: self.p,
            f: self.f,
            base_modulus: self.base_modulus.clone(),
            ext_modulus: vec![self.neg[self.nu as usize] as u32, 0, 1],
        }
    }

    #[inline]
    fn fadd(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q as usize + y as usize]
    }
    #[inline]
    fn fmul(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.q as usize + y as usize]
    }
    #[inline]
    fn fneg(&self, x: u16) -> u16 {
        self.neg[x as usize]
    }

    pub fn zero(&'static self) -> Scalar {
        Scalar { fld: self, a: 0, b: 0 }
    }
    pub fn one(&'static self) -> Scalar {
        Scalar { fld: self, a: 1, b: 0 }
    }
    /// The generator α of F_{q²} over F_q.
    pub fn alpha(&'static self) -> Scalar {
        Scalar { fld: self, a: 0, b: 1 }
    }
    /// Element of F_q with the given index (base-p digits of the β-coordinates).
    pub fn base(&'static self, idx: u32) -> Scalar {
        assert!(idx < self.q, "F_q index out of range");
        Scalar { fld: self, a: idx as u16, b: 0 }
    }
    /// a + bα from F_q indices.
    pub fn pair(&'static self, a: u32, b: u32) -> Scalar {
        assert!(a < self.q && b < self.q, "F_q index out of range");
        Scalar { fld: self, a: a as u16, b: b as u16 }
    }
    /// The image of an integer in F_p ⊂ F_q.
    pub fn int(&'static self, n: i64) -> Scalar {
        let r = n.rem_euclid(self.p as i64) as u32;
        // the F_p element r has digit vector (r, 0, ..., 0), i.e. index r
        self.base(r)
    }
    /// Element of F_{q²} by global index a + q·b.
    pub fn from_index(&'static self, idx: u32) -> Scalar {
        self.pair(idx % self.q, idx / self.q)
    }
    /// All q elements of F_q in index order.
    pub fn base_elements(&'static self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(move |i| self.base(i))
    }
    /// All q² elements of F_{q²} in index order.
    pub fn elements(&'static self) -> impl Iterator<Item = Scalar> {
        (0..self.q2()).map(move |i| self.from_index(i))
    }
    /// A fixed trace-zero unit δ₀ (σ(δ₀) = −δ₀); we use α.
    pub fn trace_zero_unit(&'static self) -> Scalar {
        self.alpha()
    }
}

/// An element a + bα of F_{q²}; F_q is the subset with b = 0.
#[derive(Clone, Copy)]
pub struct Scalar {
    fld: &'static Field,
    a: u16,
    b: u16,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(std::ptr::eq(self.fld, other.fld), "mixed fields");
        self.a == other.a && self.b == other.b
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "α"),
            (0, b) => write!(f, "{b}α"),
            (a, 1) => write!(f, "{a}+α"),
            (a, b) => write!(f, "{a}+{b}α"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> &'static Field {
        self.fld
    }
    /// F_q-coordinates (a, b) of a + bα as indices.
    pub fn coords(&self) -> (u32, u32) {
        (self.a as u32, self.b as u32)
    }
    /// Global index a + q·b, inverse of [`Field::from_index`].
    pub fn index(&self) -> u32 {
        self.a as u32 + self.fld.q * self.b as u32
    }
    /// Real part a as an element of F_q.
    pub fn re(&self) -> Scalar {
        Scalar { fld: self.fld, a: self.a, b: 0 }
    }
    /// α-coordinate b as an element of F_q.
    pub fn im(&self) -> Scalar {
        Scalar { fld: self.fld, a: self.b, b: 0 }
    }
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }
    /// Whether the element lies in F_q.
    pub fn is_base(&self) -> bool {
        self.b == 0
    }
    pub fn zero_like(&self) -> Scalar {
        self.fld.zero()
    }
    pub fn one_like(&self) -> Scalar {
        self.fld.one()
    }

    /// The cover involution x ↦ x^q, i.e. a + bα ↦ a − bα.
    pub fn sigma(&self) -> Scalar {
        Scalar { fld: self.fld, a: self.a, b: self.fld.fneg(self.b) }
    }
    /// Tr_{F_{q²}/F_q}(x) = x + σ(x).
    pub fn trace(&self) -> Scalar {
        let two_a = self.fld.fadd(self.a, self.a);
        Scalar { fld: self.fld, a: two_a, b: 0 }
    }
    /// Nm_{F_{q²}/F_q}(x) = x·σ(x).
    pub fn norm(&self) -> Scalar {
        let fl = self.fld;
        let aa = fl.fmul(self.a, self.a);
        let bb = fl.fmul(self.b, self.b);
        let nbb = fl.fmul(fl.nu, bb);
        Scalar { fld: fl, a: fl.fadd(aa, fl.fneg(nbb)), b: 0 }
    }
    /// Tr_{F_q/F_p} of an element of F_q, as an integer in [0, p).
    pub fn trace_to_prime(&self) -> u32 {
        assert!(self.is_base(), "absolute trace is taken on F_q elements");
        self.fld.tr_p[self.a as usize] as u32
    }
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let ninv = self.fld.inv[n.a as usize];
        let s = self.sigma();
        Some(Scalar {
            fld: self.fld,
            a: self.fld.fmul(s.a, ninv),
            b: self.fld.fmul(s.b, ninv),
        })
    }
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut r = self.one_like();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        let fl = self.fld;
        Scalar { fld: fl, a: fl.fadd(self.a, o.a), b: fl.fadd(self.b, o.b) }
    }
}
impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let fl = self.fld;
        Scalar { fld: fl, a: fl.fneg(self.a), b: fl.fneg(self.b) }
    }
}
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        let fl = self.fld;
        // (a + bα)(c + dα) = (ac + ν bd) + (ad + bc)α
        let ac = fl.fmul(self.a, o.a);
        let bd = fl.fmul(self.b, o.b);
        let ad = fl.fmul(self.a, o.b);
        let bc = fl.fmul(self.b, o.a);
        Scalar { fld: fl, a: fl.fadd(ac, fl.fmul(fl.nu, bd)), b: fl.fadd(ad, bc) }
    }
}
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        self * o.inv().expect("division by zero in F_{q^2}")
    }
}
impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = *self + o;
    }
}
impl SubAssign for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = *self - o;
    }
}
impl MulAssign for Scalar {
    fn mul_assign(&mut self, o: Scalar) {
        *self = *self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_is_f3_adjoin_i() {
        let k = field_make(3, 1).unwrap();
        assert_eq!(k.nu(), k.int(-1));
        let a = k.alpha();
        assert_eq!(a * a, k.int(-1));
        assert_eq!(a.sigma(), -a);
        assert_eq!(a.pow(3), -a);
        assert_eq!(a.trace(), k.zero());
        assert_eq!(k.one().trace(), k.int(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(field_make(2, 1).is_err());
        assert!(field_make(9, 1).is_err());
        assert!(field_make(3, 5).is_err());
        assert!(field_make(11, 2).is_ok());
    }

    #[test]
    fn sigma_is_frobenius() {
        for (p, f) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
            let k = field_make(p, f).unwrap();
            let q = k.q() as u64;
            let mut fixed = 0;
            for x in k.elements() {
                assert_eq!(x.sigma(), x.pow(q));
                assert_eq!(x.sigma().sigma(), x);
                assert_eq!(x * x.sigma(), x.norm());
                assert_eq!(x + x.sigma(), x.trace());
                if x.sigma() == x {
                    fixed += 1;
                    assert!(x.is_base());
                }
                if let Some(xi) = x.inv() {
                    assert!((x * xi).is_one());
                }
            }
            assert_eq!(fixed, k.q());
        }
    }

    #[test]
    fn norm_is_surjective() {
        let k = field_make(3, 2).unwrap();
        let mut hit = vec![false; k.q() as usize];
        for x in k.elements() {
            hit[x.norm().coords().0 as usize] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn base_field_tables_are_a_field() {
        let k = field_make(3, 2).unwrap();
        for x in k.base_elements() {
            for y in k.base_elements() {
                assert!((x * y).is_base());
                assert_eq!(x * y, y * x);
            }
            if !x.is_zero() {
                assert!((x * x.inv().unwrap()).is_one());
            }
        }
        // multiplicative group of F_81 is cyclic of order 80
        let order = |x: Scalar| (1..=80u64).find(|&e| x.pow(e).is_one()).unwrap();
        assert!(k.elements().any(|x| !x.is_zero() && order(x) == 80));
    }
}

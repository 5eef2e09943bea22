//! The value ring Z[ζ_p][√q], generic over the coefficient type.
//!
//! Elements are stored on the basis {ζ^i, ζ^i·√q : 0 ≤ i ≤ p − 2}, which is a
//! Z-basis because 1 + ζ + … + ζ^{p−1} = 0. Integer coefficients give the ring
//! itself; rational coefficients give its fraction-closed extension used for
//! normalized Gauss sums and theta values with negative q-exponents.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Coefficient types the value ring can be built over.
pub trait Coeff: Clone + fmt::Debug + fmt::Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Coeff for T where
    T: Clone + fmt::Debug + fmt::Display + PartialEq + Num + Neg<Output = T> + FromPrimitive
{
}

/// The pair (p, q) fixing a value ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    pub p: u32,
    pub q: u32,
}

/// An element of Z[ζ_p][√q] (or its coefficient extension).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc<T> {
    ctx: RingCtx,
    c: Vec<T>,
}

impl<T: Coeff> Cyc<T> {
    fn width(ctx: RingCtx) -> usize {
        ctx.p as usize - 1
    }

    pub fn zero(ctx: RingCtx) -> Self {
        Cyc { ctx, c: vec![T::zero(); 2 * Self::width(ctx)] }
    }
    pub fn one(ctx: RingCtx) -> Self {
        Self::from_coeff(ctx, T::one())
    }
    pub fn from_coeff(ctx: RingCtx, v: T) -> Self {
        let mut z = Self::zero(ctx);
        z.c[0] = v;
        z
    }
    pub fn from_int(ctx: RingCtx, n: i64) -> Self {
        Self::from_coeff(ctx, T::from_i64(n).expect("integer fits coefficient type"))
    }
    /// ζ_p^k.
    pub fn zeta(ctx: RingCtx, k: i64) -> Self {
        let p = ctx.p as i64;
        let k = k.rem_euclid(p) as usize;
        let mut z = Self::zero(ctx);
        if k == ctx.p as usize - 1 {
            for i in 0..Self::width(ctx) {
                z.c[i] = -T::one();
            }
        } else {
            z.c[k] = T::one();
        }
        z
    }
    /// The formal generator √q.
    pub fn sqrt_q(ctx: RingCtx) -> Self {
        let mut z = Self::zero(ctx);
        z.c[Self::width(ctx)] = T::one();
        z
    }
    /// √q^k for k ≥ 0.
    pub fn sqrt_q_pow(ctx: RingCtx, k: u32) -> Self {
        let q = T::from_u32(ctx.q).expect("q fits coefficient type");
        let mut r = Self::one(ctx);
        for _ in 0..k / 2 {
            r = r.scale(&q);
        }
        if k % 2 == 1 {
            r = &r * &Self::sqrt_q(ctx);
        }
        r
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }
    /// Coefficients on {ζ^i} followed by coefficients on {ζ^i√q}.
    pub fn coeffs(&self) -> &[T] {
        &self.c
    }
    pub fn from_coeffs(ctx: RingCtx, c: Vec<T>) -> Self {
        assert_eq!(c.len(), 2 * Self::width(ctx), "coefficient vector length");
        Cyc { ctx, c }
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ctx)
    }
    /// The rational integer n if the element is n·1.
    pub fn as_rational(&self) -> Option<T> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Cyc { ctx: self.ctx, c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Cyc<U> {
        Cyc { ctx: self.ctx, c: self.c.iter().map(f).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut r = Self::one(self.ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// The Galois automorphism ζ ↦ ζ^k (k prime to p), fixing √q.
    pub fn galois(&self, k: i64) -> Self {
        let p = self.ctx.p as i64;
        assert!(k.rem_euclid(p) != 0, "galois exponent must be prime to p");
        let w = Self::width(self.ctx);
        let mut out = Self::zero(self.ctx);
        for half in 0..2 {
            for i in 0..w {
                let v = &self.c[half * w + i];
                if v.is_zero() {
                    continue;
                }
                let img = Self::zeta(self.ctx, k * i as i64);
                for j in 0..w {
                    let t = img.c[j].clone() * v.clone();
                    out.c[half * w + j] = out.c[half * w + j].clone() + t;
                }
            }
        }
        out
    }

    // product of two elements of Z[ζ] given on the reduced basis
    fn cyclo_mul(ctx: RingCtx, a: &[T], b: &[T]) -> Vec<T> {
        let p = ctx.p as usize;
        let mut full = vec![T::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                full[k] = full[k].clone() + x.clone() * y.clone();
            }
        }
        let top = full[p - 1].clone();
        full.truncate(p - 1);
        for v in full.iter_mut() {
            *v = v.clone() - top.clone();
        }
        full
    }

    /// Complex embedding with ζ ↦ e^{2πi/p} and √q the positive root.
    pub fn to_complex<F: Float + FromPrimitive>(&self) -> (F, F)
    where
        T: ToPrimitive,
    {
        let w = Self::width(self.ctx);
        let two_pi = F::from_f64(std::f64::consts::TAU).unwrap();
        let p = F::from_u32(self.ctx.p).unwrap();
        let sq = F::from_u32(self.ctx.q).unwrap().sqrt();
        let (mut re, mut im) = (F::zero(), F::zero());
        for i in 0..w {
            let ang = two_pi * F::from_usize(i).unwrap() / p;
            let v = F::from(self.c[i].clone()).unwrap() + F::from(self.c[w + i].clone()).unwrap() * sq;
            re = re + v * ang.cos();
            im = im + v * ang.sin();
        }
        (re, im)
    }

    /// Coefficients rendered with `Display`, for reports.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.c.iter().map(|x| x.to_string()).collect()
    }
}

impl<T: Coeff> fmt::Debug for Cyc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Coeff> fmt::Display for Cyc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = Self::width(self.ctx);
        let mut parts = Vec::new();
        for (i, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let e = i % w;
            let mut term = match e {
                0 => format!("{v}"),
                1 => format!("{v}ζ"),
                _ => format!("{v}ζ^{e}"),
            };
            if i >= w {
                term.push_str("√q");
            }
            parts.push(term);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<'a, T: Coeff> Add<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn add(self, o: &Cyc<T>) -> Cyc<T> {
        assert_eq!(self.ctx, o.ctx, "mixed value rings");
        Cyc {
            ctx: self.ctx,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}
impl<'a, T: Coeff> Sub<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn sub(self, o: &Cyc<T>) -> Cyc<T> {
        assert_eq!(self.ctx, o.ctx, "mixed value rings");
        Cyc {
            ctx: self.ctx,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}
impl<T: Coeff> Neg for &Cyc<T> {
    type Output = Cyc<T>;
    fn neg(self) -> Cyc<T> {
        Cyc { ctx: self.ctx, c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}
impl<'a, T: Coeff> Mul<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn mul(self, o: &Cyc<T>) -> Cyc<T> {
        assert_eq!(self.ctx, o.ctx, "mixed value rings");
        let w = Cyc::<T>::width(self.ctx);
        let (r1, s1) = self.c.split_at(w);
        let (r2, s2) = o.c.split_at(w);
        let q = T::from_u32(self.ctx.q).expect("q fits coefficient type");
        let rr = Cyc::cyclo_mul(self.ctx, r1, r2);
        let ss = Cyc::cyclo_mul(self.ctx, s1, s2);
        let rs = Cyc::cyclo_mul(self.ctx, r1, s2);
        let sr = Cyc::cyclo_mul(self.ctx, s1, r2);
        let mut c = Vec::with_capacity(2 * w);
        for i in 0..w {
            c.push(rr[i].clone() + q.clone() * ss[i].clone());
        }
        for i in 0..w {
            c.push(rs[i].clone() + sr[i].clone());
        }
        Cyc { ctx: self.ctx, c }
    }
}

macro_rules! by_value_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Coeff> $tr for Cyc<T> {
            type Output = Cyc<T>;
            fn $m(self, o: Cyc<T>) -> Cyc<T> {
                (&self).$m(&o)
            }
        }
    )*};
}
by_value_ops!(Add add, Sub sub, Mul mul);

impl<T: Coeff> Neg for Cyc<T> {
    type Output = Cyc<T>;
    fn neg(self) -> Cyc<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type V = Cyc<i64>;

    #[test]
    fn zeta_relations() {
        let ctx = RingCtx { p: 5, q: 5 };
        let z = V::zeta(ctx, 1);
        assert!(z.pow(5).is_one());
        assert!(!z.is_one());
        let s = (0..5).fold(V::zero(ctx), |acc, k| &acc + &V::zeta(ctx, k));
        assert!(s.is_zero());
        let r = V::sqrt_q(ctx);
        assert_eq!(&r * &r, V::from_int(ctx, 5));
    }

    #[test]
    fn galois_is_a_ring_map() {
        let ctx = RingCtx { p: 7, q: 49 };
        let a = &V::zeta(ctx, 2) + &V::sqrt_q(ctx);
        let b = &V::zeta(ctx, 3) - &V::from_int(ctx, 4);
        assert_eq!((&a * &b).galois(3), &a.galois(3) * &b.galois(3));
        assert_eq!(V::zeta(ctx, 1).galois(3), V::zeta(ctx, 3));
    }

    #[test]
    fn rational_coefficients() {
        let ctx = RingCtx { p: 3, q: 3 };
        // (1 + 2ζ)√3 / 3 is a square root of −1
        let g = (&V::from_int(ctx, 1) + &V::zeta(ctx, 1).scale(&2)) * V::sqrt_q(ctx);
        let i = g.map(|x| Rational64::from_integer(*x)).scale(&Rational64::new(1, 3));
        assert_eq!(&i * &i, Cyc::from_int(ctx, -1));
        let (re, im) = i.to_complex::<f64>();
        assert!(re.abs() < 1e-12 && (im.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn float_embedding_f32_and_f64_agree() {
        let ctx = RingCtx { p: 5, q: 25 };
        let a = &V::zeta(ctx, 2) + &V::sqrt_q(ctx).scale(&3);
        let (r64, i64_) = a.to_complex::<f64>();
        let (r32, i32_) = a.to_complex::<f32>();
        assert!((r64 as f32 - r32).abs() < 1e-4 && (i64_ as f32 - i32_).abs() < 1e-4);
        assert!((r64 - (15.0 + (4.0 * std::f64::consts::PI / 5.0).cos())).abs() < 1e-9);
    }
}

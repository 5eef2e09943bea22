//! A Lagrangian transverse to two given ones, built on the generic fiber and
//! then saturated to a subbundle.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::hermitian::{is_transverse, Lagrangian, SkewHermBundle};
use crate::linalg::{Conj, FieldElem, Mat};
use crate::polyalg::{smith_normal_form, Poly, Rat};
use crate::projline::FormMatrix;

/// ⟨v, w⟩ = σ(w)ᵀ·M·v.
fn herm<T: FieldElem + Conj>(m: &Mat<T>, v: &[T], w: &[T]) -> T {
    let mv = m.mul_vec(v);
    w.iter().zip(&mv).fold(T::zero(m.ctx()), |acc, (a, b)| acc.radd(&a.conj().rmul(b)))
}

fn cols<T: FieldElem>(m: &Mat<T>) -> Vec<Vec<T>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

fn from_cols<T: FieldElem>(ctx: T::Ctx, rows: usize, c: &[Vec<T>]) -> Mat<T> {
    Mat::from_cols(ctx, rows, c)
}

fn combo<T: FieldElem>(ctx: T::Ctx, vs: &[Vec<T>], coef: &[T], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(ctx); len];
    for (v, c) in vs.iter().zip(coef) {
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.radd(&c.rmul(x));
        }
    }
    out
}

/// Random vectors from `span` extending the columns of `base` to a basis of
/// base + span.
fn random_complement<T: FieldElem>(
    ctx: T::Ctx,
    base: &[Vec<T>],
    span: &[Vec<T>],
    len: usize,
    rand: &mut dyn FnMut() -> T,
) -> Vec<Vec<T>> {
    let target = from_cols(ctx, len, &[base, span].concat()).rank();
    let mut out: Vec<Vec<T>> = Vec::new();
    let mut tries = 0;
    while base.len() + out.len() < target {
        let coef: Vec<T> = if tries < 64 { (0..span.len()).map(|_| rand()).collect() } else {
            // deterministic fallback: the next span vector that raises the rank
            let k = tries - 64;
            (0..span.len()).map(|i| if i == k % span.len() { T::one(ctx) } else { T::zero(ctx) }).collect()
        };
        tries += 1;
        let v = combo(ctx, span, &coef, len);
        let mut all = [base, &out[..]].concat();
        all.push(v.clone());
        if from_cols(ctx, len, &all).rank() == all.len() {
            out.push(v);
        }
    }
    out
}

/// A Lagrangian L with L ∩ L₁ = L ∩ L₂ = 0 in the Hermitian space (T^{2m}, M),
/// ⟨v,w⟩ = σ(w)ᵀMv, for Lagrangians spanned by the columns of `l1`, `l2`.
///
/// `delta` is a trace-zero unit and `rand` draws random scalars; the result is
/// checked before it is returned.
pub fn complete_transverse_generic<T: FieldElem + Conj>(
    m: &Mat<T>,
    l1: &Mat<T>,
    l2: &Mat<T>,
    delta: &T,
    rand: &mut dyn FnMut() -> T,
) -> Result<Mat<T>> {
    let ctx = m.ctx();
    let n = m.rows();
    let half_m = n / 2;
    if l1.cols() != half_m || l2.cols() != half_m || l1.rank() != half_m || l2.rank() != half_m {
        return Err(Error::Shape("Lagrangians must have half the dimension".into()));
    }
    let two = T::one(ctx).radd(&T::one(ctx));
    let half = two.rinv().ok_or_else(|| Error::Field("characteristic 2".into()))?;

    // I = L₁ ∩ L₂ from the kernel of [L₁ | −L₂]
    let ker = l1.hstack(&l2.neg()).kernel();
    let inter: Vec<Vec<T>> = cols(&l1.mul(&ker.block(0, half_m, 0, ker.cols())));
    let inter = cols(&from_cols(ctx, n, &inter).column_basis());
    let k = inter.len();

    let l1p = random_complement(ctx, &inter, &cols(l1), n, rand);
    let l2p = random_complement(ctx, &inter, &cols(l2), n, rand);

    // I* inside V'^⊥, dual to I and isotropic
    let mut istar: Vec<Vec<T>> = Vec::new();
    if k > 0 {
        let vprime: Vec<Vec<T>> = [l1p.clone(), l2p.clone()].concat();
        let mut w: Vec<Vec<T>> = vec![];
        if vprime.is_empty() {
            w = cols(&Mat::identity(ctx, n));
        } else {
            let mv = m.mul(&from_cols(ctx, n, &vprime));
            for c in cols(&mv.transpose().kernel()) {
                w.push(c.iter().map(|x| x.conj()).collect());
            }
        }
        let p = Mat::from_fn(ctx, k, w.len(), |l, q| herm(m, &inter[l], &w[q]));
        let x = p.solve(&Mat::identity(ctx, k)).ok_or_else(|| Error::Invariant {
            lemma: "transverse completion",
            detail: "complement of the intersection is degenerate".into(),
        })?;
        let c: Vec<Vec<T>> = (0..k).map(|j| {
            let y: Vec<T> = x.col(j).iter().map(|v| v.conj()).collect();
            combo(ctx, &w, &y, n)
        }).collect();
        for j in 0..k {
            let mut v = c[j].clone();
            for (l, il) in inter.iter().enumerate() {
                let a = herm(m, &c[j], &c[l]).rmul(&half).rneg();
                for (o, x) in v.iter_mut().zip(il) {
                    *o = o.radd(&a.rmul(x));
                }
            }
            istar.push(v);
        }
    }

    // L' = span(l_j + Σ_k C_kj l'_k) with ⟨l_j, l'_k⟩ = δ_jk and C skew-Hermitian
    let r = l1p.len();
    let mut lprime: Vec<Vec<T>> = Vec::new();
    if r > 0 {
        let p = Mat::from_fn(ctx, r, r, |j, q| herm(m, &l1p[j], &l2p[q]));
        let pinv = p.inverse().ok_or_else(|| Error::Invariant {
            lemma: "transverse completion",
            detail: "L₁' and L₂' are not in duality".into(),
        })?;
        let dual: Vec<Vec<T>> = (0..r).map(|kk| {
            let x: Vec<T> = pinv.col(kk).iter().map(|v| v.conj()).collect();
            combo(ctx, &l2p, &x, n)
        }).collect();
        let c = loop {
            let mut h = Mat::zeros(ctx, r, r);
            for i in 0..r {
                let a = rand();
                h[(i, i)] = a.radd(&a.conj());
                for j in i + 1..r {
                    let b = rand();
                    h[(j, i)] = b.conj();
                    h[(i, j)] = b;
                }
            }
            let c = h.scale(delta);
            if c.inverse().is_some() {
                break c;
            }
        };
        for j in 0..r {
            let mut v = l1p[j].clone();
            let add = combo(ctx, &dual, &c.col(j), n);
            for (o, x) in v.iter_mut().zip(&add) {
                *o = o.radd(x);
            }
            lprime.push(v);
        }
    }

    let l = from_cols(ctx, n, &[istar, lprime].concat());
    let iso = l.dagger().mul(m).mul(&l);
    if l.cols() != half_m
        || !iso.is_zero()
        || l.hstack(l1).rank() != n
        || l.hstack(l2).rank() != n
    {
        return Err(Error::Invariant { lemma: "transverse completion", detail: "output is not a transverse Lagrangian".into() });
    }
    Ok(l)
}

/// The subbundle of ⊕O(g_j) generated by the columns of a polynomial matrix on
/// the chart y ≠ 0: saturated there by Smith form and at t = ∞ by column
/// reduction.
pub fn saturate(fld: &'static Field, g: &[i64], v: &Mat<Poly>) -> Result<FormMatrix> {
    let (n, k) = (v.rows(), v.cols());
    if n != g.len() {
        return Err(Error::Shape("generator rows do not match the bundle".into()));
    }
    let s = smith_normal_form(v);
    let d = s.diagonal();
    if d.len() < k || d[..k].iter().any(|x| x.is_zero()) {
        return Err(Error::Singular);
    }
    let mut b = s.u_inv.block(0, n, 0, k);
    // column degrees δ_k = max_j (deg b_jk − g_j); leading matrix at ∞
    let delta = |b: &Mat<Poly>, c: usize| {
        (0..n).filter(|&j| !b[(j, c)].is_zero()).map(|j| b[(j, c)].deg_i() - g[j]).max().expect("nonzero column")
    };
    loop {
        let dl: Vec<i64> = (0..k).map(|c| delta(&b, c)).collect();
        let lead = Mat::from_fn(fld, n, k, |j, c| {
            let e = g[j] + dl[c];
            if e < 0 { fld.zero() } else { b[(j, c)].coeff(e as usize) }
        });
        let ker = lead.kernel();
        if ker.cols() == 0 {
            let twists: Vec<i64> = dl.iter().map(|x| -x).collect();
            return Ok(FormMatrix::from_chart_y(&b, g, &twists));
        }
        let c = ker.col(0);
        let top = (0..k).filter(|&i| !c[i].is_zero()).max_by_key(|&i| (dl[i], i)).expect("nonzero kernel vector");
        let mut col = vec![Poly::zero(fld); n];
        for i in 0..k {
            if c[i].is_zero() {
                continue;
            }
            let sh = Poly::monomial(c[i], (dl[top] - dl[i]) as usize);
            for j in 0..n {
                col[j] = col[j].add(&b[(j, i)].mul(&sh));
            }
        }
        for j in 0..n {
            b[(j, top)] = col[j].clone();
        }
    }
}

fn to_rat(m: &Mat<Poly>) -> Mat<Rat> {
    m.map_into(m.ctx(), |p| Rat::from_poly(p.clone()))
}

fn clear_denominators(m: &Mat<Rat>) -> Mat<Poly> {
    let fld = m.ctx();
    let mut out = Mat::zeros(fld, m.rows(), m.cols());
    for c in 0..m.cols() {
        let mut den = Poly::one(fld);
        for j in 0..m.rows() {
            let d = m[(j, c)].den();
            den = den.mul(&d.div_exact(&den.gcd(d)).expect("gcd divides"));
        }
        for j in 0..m.rows() {
            let e = &m[(j, c)];
            out[(j, c)] = e.num().mul(&den.div_exact(e.den()).expect("lcm"));
        }
    }
    out
}

/// A Lagrangian subbundle transverse to ℰ₁ and ℰ₂; among `tries` random
/// completions the one whose twists are largest (cheapest Hom spaces) wins.
pub fn complete_transverse<R: Rng>(
    g: &SkewHermBundle,
    l1: &Lagrangian,
    l2: &Lagrangian,
    rng: &mut R,
    tries: usize,
) -> Result<Lagrangian> {
    let fld = g.field();
    let gt = &g.bundle().twists;
    let h = to_rat(&g.h().on_chart_y(fld)?);
    let m = h.scale(&Rat::from_poly(Poly::constant(fld.trace_zero_unit())));
    let delta = Rat::from_poly(Poly::constant(fld.trace_zero_unit()));
    let a = to_rat(&l1.iota().on_chart_y(fld)?);
    let b = to_rat(&l2.iota().on_chart_y(fld)?);
    let mut best: Option<Lagrangian> = None;
    for _ in 0..tries.max(1) {
        let mut draw = || Rat::from_poly(Poly::constant(fld.from_index(rng.gen_range(0..fld.q2()))));
        let l = complete_transverse_generic(&m, &a, &b, &delta, &mut draw)?;
        let sat = saturate(fld, gt, &clear_denominators(&l))?;
        let lag = Lagrangian::new(g, sat)?;
        if !is_transverse(g, &lag, l1) || !is_transverse(g, &lag, l2) {
            return Err(Error::Invariant { lemma: "transverse completion", detail: "saturation broke transversality".into() });
        }
        let score: i64 = lag.bundle().twists.iter().sum();
        if best.as_ref().map_or(true, |b| b.bundle().twists.iter().sum::<i64>() < score) {
            best = Some(lag);
        }
    }
    Ok(best.expect("at least one try"))
}

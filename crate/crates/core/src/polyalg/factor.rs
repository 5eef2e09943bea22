//! Factorization of polynomials over F_{q²} into monic irreducibles
//! (distinct-degree then Cantor–Zassenhaus equal-degree splitting).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyalg::Poly;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficient indices.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let fld = f.field();
    let big_q = fld.q2() as u128;
    let t = Poly::t(fld);
    let mut rest = f.monic();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0DDF);
    let mut h = t.clone();
    let mut i = 1u32;
    while rest.deg().unwrap_or(0) > 0 {
        if 2 * i as usize > rest.deg().unwrap() {
            // what remains is a power of one irreducible or squarefree of degree < 2i:
            // every factor has degree ≥ i, so rest is irreducible up to multiplicity
            let r = rest.clone();
            push_with_multiplicity(&mut out, r, &mut rest);
            break;
        }
        h = h.pow_mod(big_q, &rest);
        let g = rest.gcd(&h.sub(&t));
        if g.deg().unwrap_or(0) > 0 {
            let mut pieces = Vec::new();
            equal_degree(&g, i as usize, big_q, &mut rng, &mut pieces);
            for pi in pieces {
                push_with_multiplicity(&mut out, pi, &mut rest);
            }
            h = h.rem(&rest);
        }
        i += 1;
    }
    out.sort_by(|a, b| {
        let ka: Vec<u32> = a.0.coeffs().iter().map(|x| x.index()).collect();
        let kb: Vec<u32> = b.0.coeffs().iter().map(|x| x.index()).collect();
        (a.0.deg(), ka).cmp(&(b.0.deg(), kb))
    });
    debug_assert_eq!(
        out.iter().fold(Poly::one(fld), |acc, (p, e)| acc.mul(&p.pow(*e))),
        f.monic()
    );
    out
}

fn push_with_multiplicity(out: &mut Vec<(Poly, u32)>, pi: Poly, rest: &mut Poly) {
    let mut e = 0;
    while let Some(q) = rest.div_exact(&pi) {
        *rest = q;
        e += 1;
        if rest.is_constant() {
            break;
        }
    }
    if e > 0 {
        out.push((pi, e));
    }
}

fn equal_degree(g: &Poly, d: usize, big_q: u128, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.deg().unwrap();
    if n == d {
        out.push(g.monic());
        return;
    }
    let fld = g.field();
    let exp = (big_q.pow(d as u32) - 1) / 2;
    loop {
        let a = Poly::from_coeffs(fld, (0..n).map(|_| fld.from_index(rng.gen_range(0..fld.q2()))).collect());
        if a.is_constant() {
            continue;
        }
        let b = a.pow_mod(exp, g).sub(&Poly::one(fld));
        let u = g.gcd(&b);
        let du = u.deg().unwrap_or(0);
        if du > 0 && du < n {
            let (v, _) = g.divrem(&u);
            equal_degree(&u, d, big_q, rng, out);
            equal_degree(&v, d, big_q, rng, out);
            return;
        }
    }
}

/// Whether f is irreducible over F_{q²}.
pub fn is_irreducible(f: &Poly) -> bool {
    match f.deg() {
        None | Some(0) => false,
        _ => {
            let fs = factor(f);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn factors_products_of_known_irreducibles() {
        let k = field_make(3, 1).unwrap();
        let t = Poly::t(k);
        let a = k.alpha();
        // (t − α)²(t + α)(t³ − t + 1)
        let cubic = t.pow(3).sub(&t).add(&Poly::one(k));
        let f = Poly::linear(a).pow(2).mul(&Poly::linear(-a)).mul(&cubic);
        let fs = factor(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(Poly::linear(a), 2)));
        assert!(fs.contains(&(Poly::linear(-a), 1)));
        assert!(fs.contains(&(cubic.clone(), 1)));
        assert!(is_irreducible(&cubic));
        // t² + 1 splits over F_9
        assert!(!is_irreducible(&t.pow(2).add(&Poly::one(k))));
    }

    #[test]
    fn counts_irreducible_quadratics() {
        // there are (Q² − Q)/2 monic irreducible quadratics over F_Q, Q = 9
        let k = field_make(3, 1).unwrap();
        let mut n = 0;
        for a in k.elements() {
            for b in k.elements() {
                let f = Poly::from_coeffs(k, vec![b, a, k.one()]);
                if is_irreducible(&f) {
                    n += 1;
                }
            }
        }
        assert_eq!(n, (81 - 9) / 2);
    }
}

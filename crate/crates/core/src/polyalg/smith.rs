//! Smith normal form over F_{q²}[t] with transformation matrices.

use crate::linalg::Mat;
use crate::polyalg::Poly;

/// How the next pivot is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    /// Lowest-degree nonzero entry of the remaining block.
    LowestDegree,
    /// First nonzero entry in column-major order.
    FirstNonzero,
}

/// U·M·W = D with U, W unimodular; inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat<Poly>,
    pub u_inv: Mat<Poly>,
    pub w: Mat<Poly>,
    pub w_inv: Mat<Poly>,
    pub d: Mat<Poly>,
}

impl Smith {
    /// Diagonal entries d_1 | d_2 | … (monic or zero).
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &Mat<Poly>) -> Smith {
    smith_with(m, Pivot::LowestDegree)
}

pub fn smith_with(m: &Mat<Poly>, pivot: Pivot) -> Smith {
    let fld = m.ctx();
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Mat::identity(fld, r);
    let mut u_inv = Mat::identity(fld, r);
    let mut w = Mat::identity(fld, c);
    let mut w_inv = Mat::identity(fld, c);

    for k in 0..r.min(c) {
        let mut forced: Option<(usize, usize)> = None;
        loop {
            let Some((pi, pj)) = forced.take().or_else(|| choose_pivot(&a, k, pivot)) else {
                break;
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            a.swap_cols(k, pj);
            w.swap_cols(k, pj);
            w_inv.swap_rows(k, pj);

            let piv = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..r {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(i, k)].divrem(&piv);
                let f = q.neg();
                a.add_row_multiple(i, k, &f);
                u.add_row_multiple(i, k, &f);
                u_inv.add_col_multiple(k, i, &q);
                dirty |= !rem.is_zero();
            }
            for j in k + 1..c {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(k, j)].divrem(&piv);
                let f = q.neg();
                a.add_col_multiple(j, k, &f);
                w.add_col_multiple(j, k, &f);
                w_inv.add_row_multiple(k, j, &q);
                dirty |= !rem.is_zero();
            }
            if dirty {
                // Euclid step: a remainder of smaller degree becomes the pivot
                forced = lowest_in_cross(&a, k);
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !piv.divides(&a[(i, j)])));
            match bad {
                Some(i) => {
                    let one = Poly::one(fld);
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                    u_inv.add_col_multiple(i, k, &one.neg());
                }
                None => break,
            }
        }
        if !a[(k, k)].is_zero() {
            let lc = a[(k, k)].lc();
            let inv = lc.inv().unwrap();
            a.scale_row(k, &Poly::constant(inv));
            u.scale_row(k, &Poly::constant(inv));
            u_inv.scale_col(k, &Poly::constant(lc));
        }
    }

    let s = Smith { u, u_inv, w, w_inv, d: a };
    verify(m, &s);
    s
}

fn lowest_in_cross(a: &Mat<Poly>, k: usize) -> Option<(usize, usize)> {
    let cells = (k..a.rows()).map(|i| (i, k)).chain((k + 1..a.cols()).map(|j| (k, j)));
    cells
        .filter_map(|(i, j)| a[(i, j)].deg().map(|d| (d, i, j)))
        .min()
        .map(|(_, i, j)| (i, j))
}

fn choose_pivot(a: &Mat<Poly>, k: usize, pivot: Pivot) -> Option<(usize, usize)> {
    let (r, c) = (a.rows(), a.cols());
    match pivot {
        Pivot::LowestDegree => {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if let Some(d) = a[(i, j)].deg() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            best.map(|(i, j, _)| (i, j))
        }
        Pivot::FirstNonzero => {
            for j in k..c {
                for i in k..r {
                    if !a[(i, j)].is_zero() {
                        return Some((i, j));
                    }
                }
            }
            None
        }
    }
}

fn verify(m: &Mat<Poly>, s: &Smith) {
    let fld = m.ctx();
    assert_eq!(s.u.mul(m).mul(&s.w), s.d, "Smith form: U·M·W ≠ D");
    assert_eq!(s.u.mul(&s.u_inv), Mat::identity(fld, m.rows()), "Smith form: U not inverted");
    assert_eq!(s.w.mul(&s.w_inv), Mat::identity(fld, m.cols()), "Smith form: W not inverted");
    let n = m.rows().min(m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            assert!(i == j || s.d[(i, j)].is_zero(), "Smith form: off-diagonal entry");
        }
    }
    for i in 1..n {
        assert!(s.d[(i - 1, i - 1)].divides(&s.d[(i, i)]), "Smith form: divisibility chain");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn reorders_by_divisibility() {
        let k = field_make(3, 1).unwrap();
        let t = Poly::t(k);
        let z = Poly::zero(k);
        let m = Mat::from_rows(k, vec![vec![t.mul(&t), z.clone()], vec![z, t.clone()]]);
        assert_eq!(smith_normal_form(&m).diagonal(), vec![t.clone(), t.mul(&t)]);
    }

    #[test]
    fn jordan_block() {
        let k = field_make(3, 1).unwrap();
        let t = Poly::t(k);
        let m = Mat::from_rows(k, vec![vec![t.clone(), Poly::one(k)], vec![Poly::zero(k), t.clone()]]);
        assert_eq!(smith_normal_form(&m).diagonal(), vec![Poly::one(k), t.mul(&t)]);
        let id = Mat::<Poly>::identity(k, 3);
        assert_eq!(smith_normal_form(&id).diagonal(), vec![Poly::one(k); 3]);
    }
}

//! Constructors for test and sweep instances: hyperbolic bundles, graph
//! Lagrangians, rational curves in the standard plane, direct sums, unitary
//! mixing and small Hermitian bundles ℱ.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, Scalar};
use crate::hermitian::{HermBundle, Lagrangian, SkewHermBundle};
use crate::linalg::Mat;
use crate::projline::{Form, FormMatrix, SplitBundle};

fn constant_matrix(m: &Mat<Scalar>, rows: &[i64], cols: &[i64]) -> FormMatrix {
    let mut out = FormMatrix::zero(rows, cols);
    for j in 0..m.rows() {
        for i in 0..m.cols() {
            out.set(j, i, Form::monomial(m[(j, i)], 0, rows[j] - cols[i]));
        }
    }
    out
}

/// 𝒢 = ℰ ⊕ σ*ℰ* with h = [[0, −1], [1, 0]], together with the Lagrangians ℰ
/// and σ*ℰ*.
pub fn hyperbolic(fld: &'static Field, e: &SplitBundle) -> Result<(SkewHermBundle, Lagrangian, Lagrangian)> {
    let m = e.rank();
    let g = e.direct_sum(&e.dual());
    let h = Mat::from_fn(fld, 2 * m, 2 * m, |j, i| {
        if j < m && i == j + m {
            -fld.one()
        } else if j >= m && i + m == j {
            fld.one()
        } else {
            fld.zero()
        }
    });
    let g = SkewHermBundle::new(fld, g.clone(), constant_matrix(&h, &g.dual().twists, &g.twists))?;
    let eye = Mat::identity(fld, m);
    let z = Mat::zeros(fld, m, m);
    let gt = &g.bundle().twists;
    let l = Lagrangian::new(&g, constant_matrix(&eye.vstack(&z), gt, &e.twists))?;
    let l_dual = Lagrangian::new(&g, constant_matrix(&z.vstack(&eye), gt, &e.dual().twists))?;
    Ok((g, l, l_dual))
}

/// The graph {(u(s), s)} ⊂ ℰ ⊕ σ*ℰ* of u: σ*ℰ* → ℰ in a hyperbolic bundle;
/// Lagrangian exactly when u is Hermitian.
pub fn graph_lagrangian(g: &SkewHermBundle, u: &FormMatrix) -> Result<Lagrangian> {
    let m = g.m();
    let e = &g.bundle().twists[..m];
    let ed: Vec<i64> = e.iter().map(|d| -d).collect();
    if u.rows() != e || u.cols() != ed.as_slice() {
        return Err(Error::Shape("u must map σ*ℰ* to ℰ".into()));
    }
    Lagrangian::new(g, u.vstack(&FormMatrix::identity(g.field(), &ed))?)
}

/// The standard plane O ⊕ O with h = [[0, 1], [−1, 0]].
pub fn standard_plane(fld: &'static Field) -> SkewHermBundle {
    let h = Mat::from_rows(fld, vec![vec![fld.zero(), fld.one()], vec![-fld.one(), fld.zero()]]);
    SkewHermBundle::new(fld, SplitBundle::new(vec![0, 0]), constant_matrix(&h, &[0, 0], &[0, 0])).expect("standard plane")
}

/// The line O(−d) ↪ O ⊕ O spanned by (g₁, g₂); isotropic in the standard plane
/// when both forms have coefficients in F_q.
pub fn rational_curve(g: &SkewHermBundle, g1: &Form, g2: &Form) -> Result<Lagrangian> {
    if g1.deg() != g2.deg() {
        return Err(Error::Shape("forms of different degree".into()));
    }
    let d = g1.deg();
    Lagrangian::new(g, FormMatrix::from_entries(&[0, 0], &[-d], vec![g1.clone(), g2.clone()])?)
}

/// Two random forms of degree d with F_q coefficients and no common zero on P¹.
pub fn coprime_real_forms<R: Rng>(fld: &'static Field, d: i64, rng: &mut R) -> (Form, Form) {
    let q = fld.q();
    loop {
        let mut draw = || -> Vec<Scalar> { (0..=d).map(|_| fld.base(rng.gen_range(0..q))).collect() };
        let (a, b) = (draw(), draw());
        let (fa, fb) = (Form::from_dense(d, &a), Form::from_dense(d, &b));
        let at_inf = !a[d as usize].is_zero() || !b[d as usize].is_zero();
        let pa = fa.on_chart_y(fld).expect("regular");
        let pb = fb.on_chart_y(fld).expect("regular");
        if at_inf && !(pa.is_zero() && pb.is_zero()) && pa.gcd(&pb).is_constant() {
            return (fa, fb);
        }
    }
}

/// (𝒢₁ ⊕ 𝒢₂, h₁ ⊕ h₂).
pub fn direct_sum(a: &SkewHermBundle, b: &SkewHermBundle) -> Result<SkewHermBundle> {
    let g = SplitBundle::new(a.bundle().twists.iter().chain(&b.bundle().twists).copied().collect());
    let h = a.h().block_diag(b.h());
    SkewHermBundle::new(a.field(), g, h)
}

impl Lagrangian {
    /// ℰ ⊕ ℰ′ ⊂ 𝒢 ⊕ 𝒢′.
    pub fn direct_sum(&self, o: &Lagrangian, g: &SkewHermBundle) -> Result<Lagrangian> {
        Lagrangian::new(g, self.iota().block_diag(o.iota()))
    }
}

/// A constant unitary automorphism of a bundle with all twists equal.
#[derive(Clone, Debug)]
pub struct Unitary(pub Mat<Scalar>);

impl Unitary {
    /// A product of `k` random unitary transvections x ↦ x + c⟨x,v⟩v with v
    /// isotropic and Tr c = 0, for the Hermitian form δ₀·h.
    pub fn random<R: Rng>(g: &SkewHermBundle, k: usize, rng: &mut R) -> Result<Unitary> {
        let fld = g.field();
        let tw = &g.bundle().twists;
        if tw.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Precondition("constant unitaries need equal twists".into()));
        }
        let n = tw.len();
        let h = g.h().on_chart_y(fld)?.map_into(fld, |p| p.coeff(0));
        let m = h.scale(&fld.trace_zero_unit());
        let mut u = Mat::identity(fld, n);
        for _ in 0..k {
            let v = loop {
                let v: Vec<Scalar> = (0..n).map(|_| fld.from_index(rng.gen_range(0..fld.q2()))).collect();
                let mv = m.mul_vec(&v);
                let norm = v.iter().zip(&mv).fold(fld.zero(), |a, (x, y)| a + x.sigma() * *y);
                if norm.is_zero() && v.iter().any(|x| !x.is_zero()) {
                    break v;
                }
            };
            let c = fld.trace_zero_unit() * fld.base(rng.gen_range(1..fld.q()));
            let row = Mat::from_rows(fld, vec![v.iter().map(|x| x.sigma()).collect()]).mul(&m);
            let t = Mat::identity(fld, n).add(&Mat::column_vector(fld, v).mul(&row).scale(&c));
            u = t.mul(&u);
        }
        let un = Unitary(u);
        if un.0.dagger().mul(&h).mul(&un.0) != h {
            return Err(Error::Invariant { lemma: "unitary", detail: "transvection does not preserve h".into() });
        }
        Ok(un)
    }
}

/// U·ℰ for a constant unitary U of 𝒢.
pub fn mix_unitary(g: &SkewHermBundle, u: &Unitary, l: &Lagrangian) -> Result<Lagrangian> {
    let tw = &g.bundle().twists;
    let um = constant_matrix(&u.0, tw, tw);
    Lagrangian::new(g, um.compose(l.iota())?)
}

/// A random Hermitian ℱ of rank 1 (O(−1)) or 2 (O(−1)² or O ⊕ O(−2)).
pub fn random_herm_bundle<R: Rng>(fld: &'static Field, n: usize, rng: &mut R) -> Result<HermBundle> {
    let q = fld.q();
    let real_unit = |rng: &mut R| fld.base(rng.gen_range(1..q));
    match n {
        1 => {
            let h = FormMatrix::from_entries(&[-1], &[-1], vec![Form::monomial(real_unit(rng), 0, 0)])?;
            HermBundle::new(fld, SplitBundle::new(vec![-1]), h)
        }
        2 if rng.gen_bool(0.5) => loop {
            let a = real_unit(rng);
            let d = fld.base(rng.gen_range(0..q));
            let b = fld.from_index(rng.gen_range(0..fld.q2()));
            let m = Mat::from_rows(fld, vec![vec![a, b], vec![b.sigma(), d]]);
            if m.det().is_zero() {
                continue;
            }
            return HermBundle::new(fld, SplitBundle::new(vec![-1, -1]), constant_matrix(&m, &[-1, -1], &[-1, -1]));
        },
        2 => {
            let c = loop {
                let c = fld.from_index(rng.gen_range(0..fld.q2()));
                if !c.is_zero() {
                    break c;
                }
            };
            let quad: Vec<Scalar> = (0..3).map(|_| fld.base(rng.gen_range(0..q))).collect();
            let h = FormMatrix::from_entries(
                &[-2, 0],
                &[0, -2],
                vec![Form::zero(-2), Form::monomial(c, 0, 0), Form::monomial(c.sigma(), 0, 0), Form::from_dense(2, &quad)],
            )?;
            HermBundle::new(fld, SplitBundle::new(vec![0, -2]), h)
        }
        _ => Err(Error::Precondition(format!("no generator for rank {n} Hermitian bundles"))),
    }
}

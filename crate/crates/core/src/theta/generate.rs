//! Random transverse pairs (ℰ₁, ℰ₂) in a skew-Hermitian 𝒢 together with a
//! Hermitian ℱ, with Q already constructed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::hermitian::{
    coprime_real_forms, direct_sum, graph_lagrangian, hyperbolic, is_transverse, mix_unitary, q_construction, random_herm_bundle,
    rational_curve, standard_plane, HermBundle, Lagrangian, QData, SkewHermBundle, Unitary,
};
use crate::projline::{Form, FormMatrix, SplitBundle};

/// Rejected draws (torsion at ∞, non-transverse pairs) before giving up.
const MAX_TRIES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    /// ℰ and σ*ℰ* in ℰ ⊕ σ*ℰ*.
    Hyperbolic,
    /// Graphs of two Hermitian maps σ*ℰ* → ℰ.
    Graph,
    /// Two rational curves in the standard plane.
    Rational,
    /// Sums of rational curves in two standard planes, one side mixed by a
    /// constant unitary.
    Mixed,
    /// Read from explicit gluing data.
    Explicit,
}

#[derive(Clone, Debug)]
pub struct ThetaInstance {
    pub kind: InstanceKind,
    pub g: SkewHermBundle,
    pub l1: Lagrangian,
    pub l2: Lagrangian,
    pub f: HermBundle,
    pub q: QData,
}

impl ThetaInstance {
    /// Checks transversality and builds Q.
    pub fn new(kind: InstanceKind, g: SkewHermBundle, l1: Lagrangian, l2: Lagrangian, f: HermBundle) -> Result<ThetaInstance> {
        if f.field() != g.field() {
            return Err(Error::Precondition("𝒢 and ℱ over different fields".into()));
        }
        if f.rank() < g.m() {
            return Err(Error::Precondition(format!("need n ≥ m, got n = {} and m = {}", f.rank(), g.m())));
        }
        if !is_transverse(&g, &l1, &l2) {
            return Err(Error::Precondition("Lagrangians are not transverse".into()));
        }
        let q = q_construction(&g, &l1, &l2)?;
        Ok(ThetaInstance { kind, g, l1, l2, f, q })
    }
    pub fn field(&self) -> &'static Field {
        self.g.field()
    }
    /// The same data with ℰ₁ and ℰ₂ exchanged.
    pub fn swapped(&self) -> Result<ThetaInstance> {
        ThetaInstance::new(self.kind, self.g.clone(), self.l2.clone(), self.l1.clone(), self.f.clone())
    }
}

fn retry<R: Rng>(rng: &mut R, mut draw: impl FnMut(&mut R) -> Result<ThetaInstance>) -> Result<ThetaInstance> {
    for _ in 0..MAX_TRIES {
        match draw(rng) {
            Ok(inst) => return Ok(inst),
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition(format!("no admissible instance in {MAX_TRIES} draws")))
}

/// Hyperbolic 𝒢 = ℰ ⊕ σ*ℰ* with its two standard halves; Q = 0.
pub fn hyperbolic_instance<R: Rng>(fld: &'static Field, e: &SplitBundle, n: usize, rng: &mut R) -> Result<ThetaInstance> {
    let (g, l, ld) = hyperbolic(fld, e)?;
    let f = random_herm_bundle(fld, n, rng)?;
    ThetaInstance::new(InstanceKind::Hyperbolic, g, l, ld, f)
}

/// A random Hermitian u: σ*ℰ* → ℰ.
fn random_hermitian_map<R: Rng>(fld: &'static Field, e: &[i64], rng: &mut R) -> Result<FormMatrix> {
    let ed: Vec<i64> = e.iter().map(|d| -d).collect();
    let m = e.len();
    let mut u = FormMatrix::zero(e, &ed);
    for j in 0..m {
        for i in j..m {
            let d = e[j] + e[i];
            if d < 0 {
                continue;
            }
            let c: Vec<_> = (0..=d)
                .map(|_| if i == j { fld.base(rng.gen_range(0..fld.q())) } else { fld.from_index(rng.gen_range(0..fld.q2())) })
                .collect();
            let form = Form::from_dense(d, &c);
            u.set(i, j, form.sigma());
            u.set(j, i, form);
        }
    }
    Ok(u)
}

/// Graphs of two random Hermitian maps in ℰ ⊕ σ*ℰ*; Q is the cokernel of
/// their difference.
pub fn graph_instance<R: Rng>(fld: &'static Field, e: &SplitBundle, n: usize, rng: &mut R) -> Result<ThetaInstance> {
    retry(rng, |rng| {
        let (g, _, _) = hyperbolic(fld, e)?;
        let l1 = graph_lagrangian(&g, &random_hermitian_map(fld, &e.twists, rng)?)?;
        let l2 = graph_lagrangian(&g, &random_hermitian_map(fld, &e.twists, rng)?)?;
        let f = random_herm_bundle(fld, n, rng)?;
        ThetaInstance::new(InstanceKind::Graph, g, l1, l2, f)
    })
}

/// Rational curves of degrees d₁, d₂ in the standard plane.
pub fn rational_instance<R: Rng>(fld: &'static Field, d1: i64, d2: i64, n: usize, rng: &mut R) -> Result<ThetaInstance> {
    retry(rng, |rng| {
        let g = standard_plane(fld);
        let (a1, a2) = coprime_real_forms(fld, d1, rng);
        let (b1, b2) = coprime_real_forms(fld, d2, rng);
        let l1 = rational_curve(&g, &a1, &a2)?;
        let l2 = rational_curve(&g, &b1, &b2)?;
        let f = random_herm_bundle(fld, n, rng)?;
        ThetaInstance::new(InstanceKind::Rational, g, l1, l2, f)
    })
}

/// m = 2: sums of rational curves of degrees `d1` and `d2` in two copies of
/// the standard plane, the second pair moved by a random unitary.
pub fn mixed_instance<R: Rng>(fld: &'static Field, d1: [i64; 2], d2: [i64; 2], n: usize, rng: &mut R) -> Result<ThetaInstance> {
    retry(rng, |rng| {
        let p = standard_plane(fld);
        let g = direct_sum(&p, &p)?;
        let curve = |d: i64, rng: &mut R| -> Result<Lagrangian> {
            let (a, b) = coprime_real_forms(fld, d, rng);
            rational_curve(&p, &a, &b)
        };
        let l1 = curve(d1[0], rng)?.direct_sum(&curve(d1[1], rng)?, &g)?;
        let l2 = curve(d2[0], rng)?.direct_sum(&curve(d2[1], rng)?, &g)?;
        let u = Unitary::random(&g, 3, rng)?;
        let l2 = mix_unitary(&g, &u, &l2)?;
        let f = random_herm_bundle(fld, n, rng)?;
        ThetaInstance::new(InstanceKind::Mixed, g, l1, l2, f)
    })
}

//! The three subcommands. Every report is a plain serializable value; the
//! binary decides between JSON and CSV.

use std::time::Instant;

use anyhow::Result;
use herm_theta::fourier::arith::{arith_ft, arith_pull_pair, arith_push_pair, base_pull, base_push, RelFn, RelMap, RelVS};
use herm_theta::fourier::{ft_gaussian, ft_pull_pair, ft_push_pair, involutivity_pair, plancherel_pair, FiniteFn, FiniteVS};
use herm_theta::gf::field_make;
use herm_theta::linalg::Mat;
use herm_theta::projline::hom_space;
use herm_theta::quadspace::{gauss_sum_bounded, QuadSpace};
use herm_theta::theta::{graph_instance, hyperbolic_instance, mixed_instance, modularity_check, rational_instance, ThetaInstance};
use herm_theta::{Error, Field, Psi, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::instance::instance_hash;

#[derive(Clone, Debug, Serialize)]
pub struct GaussRow {
    pub q: u32,
    pub form: String,
    pub dim: usize,
    pub gamma: String,
}

fn named_forms(fld: &'static Field, dim_max: usize) -> Vec<(String, QuadSpace)> {
    let hp = QuadSpace::hyperbolic_plane(fld);
    let hm = QuadSpace::norm_form(fld);
    let nu = (fld.alpha() * fld.alpha()).re();
    let mut out = vec![
        ("<1>".to_string(), QuadSpace::diagonal(fld, &[fld.one()]).expect("diagonal")),
        ("<nu>".to_string(), QuadSpace::diagonal(fld, &[nu]).expect("diagonal")),
        ("H+".to_string(), hp.clone()),
        ("H-".to_string(), hm.clone()),
        ("H+ + H-".to_string(), hp.direct_sum(&hm)),
        ("H- + H-".to_string(), hm.direct_sum(&hm)),
        ("<1> + <nu>".to_string(), QuadSpace::diagonal(fld, &[fld.one(), nu]).expect("diagonal")),
    ];
    let mut split = hp.clone();
    for k in 2..=dim_max / 2 {
        split = split.direct_sum(&hp);
        out.push((format!("H+^{k}"), split.clone()));
    }
    out.retain(|(_, v)| v.dim() <= dim_max);
    out
}

/// γ of the standard forms for each q.
pub fn gauss_table(qs: &[u32], dim_max: usize, bound: u128, psi_scale: i64) -> Result<Vec<GaussRow>> {
    let mut rows = Vec::new();
    for &q in qs {
        let fld = field_for_q(q)?;
        let psi = Psi::scaled(fld.int(psi_scale));
        for (name, v) in named_forms(fld, dim_max) {
            let g = gauss_sum_bounded(&v, &psi, bound)?;
            rows.push(GaussRow { q, form: name, dim: v.dim(), gamma: g.gamma.to_string() });
        }
    }
    Ok(rows)
}

/// F_q for q = p or p^f.
pub fn field_for_q(q: u32) -> Result<&'static Field> {
    for p in 3..=q {
        if q % p == 0 {
            let mut f = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                f += 1;
            }
            if r == 1 {
                return Ok(field_make(p, f)?);
            }
            break;
        }
    }
    Err(Error::Field(format!("{q} is not an odd prime power")).into())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub identity: String,
    pub dim: usize,
    pub checks: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourierReport {
    pub q: u32,
    pub r_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub psi_scale: i64,
    pub identities: Vec<IdentityResult>,
    pub all_pass: bool,
}

fn random_matrix<R: Rng>(fld: &'static Field, r: usize, c: usize, rng: &mut R) -> Mat<Scalar> {
    Mat::from_fn(fld, r, c, |_, _| fld.base(rng.gen_range(0..fld.q())))
}

fn tally(out: &mut Vec<IdentityResult>, identity: &str, dim: usize, results: impl IntoIterator<Item = bool>) {
    let (mut checks, mut passed) = (0, 0);
    for ok in results {
        checks += 1;
        passed += ok as usize;
    }
    out.push(IdentityResult { identity: identity.to_string(), dim, checks, passed });
}

/// The finite and arithmetic Fourier identities on random functions.
pub fn fourier_selftest(q: u32, r_max: usize, trials: usize, seed: u64, psi_scale: i64) -> Result<FourierReport> {
    let fld = field_for_q(q)?;
    let psi = Psi::scaled(fld.int(psi_scale));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // fail before any work if the largest space is out of reach
    FiniteVS::new(fld, r_max)?;
    let mut out = Vec::new();
    for r in 0..=r_max {
        let vs = FiniteVS::new(fld, r)?;
        tally(&mut out, "involutivity", r, (0..trials).map(|_| {
            let (a, b) = involutivity_pair(&FiniteFn::random(vs, &mut rng), &psi);
            a == b
        }));
        tally(&mut out, "plancherel", r, (0..trials).map(|_| {
            let (a, b) = plancherel_pair(&FiniteFn::random(vs, &mut rng), &FiniteFn::random(vs, &mut rng), &psi);
            a == b
        }));
        if r > 0 {
            let mut results = Vec::new();
            for _ in 0..trials.min(8) {
                let c: Vec<Scalar> = (0..r).map(|_| fld.base(rng.gen_range(1..fld.q()))).collect();
                let (a, b) = ft_gaussian(&QuadSpace::diagonal(fld, &c)?, &psi)?;
                results.push(a == b);
            }
            tally(&mut out, "gaussian", r, results);
        }
        for s in [r.saturating_sub(1), r] {
            let small = FiniteVS::new(fld, s)?;
            tally(&mut out, &format!("push from dim {s}"), r, (0..trials).map(|_| {
                let f = random_matrix(fld, r, s, &mut rng);
                let (a, b) = ft_push_pair(&f, vs, &FiniteFn::random(small, &mut rng), &psi);
                a == b
            }));
            tally(&mut out, &format!("pull to dim {s}"), r, (0..trials).map(|_| {
                let f = random_matrix(fld, r, s, &mut rng);
                let (a, b) = ft_pull_pair(&f, small, &FiniteFn::random(vs, &mut rng), &psi);
                a == b
            }));
        }
        if r <= 3 {
            arithmetic_suite(fld, r, trials.min(10), &psi, &mut rng, &mut out)?;
        }
    }
    let all_pass = out.iter().all(|i| i.checks == i.passed);
    Ok(FourierReport { q, r_max, trials, seed, psi_scale, identities: out, all_pass })
}

fn arithmetic_suite<R: Rng>(fld: &'static Field, r: usize, trials: usize, psi: &Psi, rng: &mut R, out: &mut Vec<IdentityResult>) -> Result<()> {
    let mut res: [Vec<bool>; 6] = Default::default();
    for _ in 0..trials {
        let base = rng.gen_range(1..=5);
        let ranks: Vec<usize> = (0..base).map(|_| rng.gen_range(0..=r)).collect();
        let y = RelVS::new(fld, &ranks)?;
        let alpha = RelFn::random(&y, rng);
        let beta = RelFn::random(&y, rng);
        res[0].push(arith_ft(&arith_ft(&alpha, psi), psi) == alpha.negate_argument().scale_by_fiber_size());
        res[1].push(alpha.mul(&arith_ft(&beta, psi)).push_to_base() == arith_ft(&alpha, psi).mul(&beta).push_to_base());
        let src_ranks: Vec<usize> = ranks.iter().map(|&d| rng.gen_range(0..=d)).collect();
        let y1 = RelVS::new(fld, &src_ranks)?;
        let phi = RelMap { mats: ranks.iter().zip(&src_ranks).map(|(&d, &s)| random_matrix(fld, d, s, rng)).collect() };
        let (a, b) = arith_push_pair(&phi, &y1, &y, &RelFn::random(&y1, rng), psi);
        res[2].push(a == b);
        let (a, b) = arith_pull_pair(&phi, &y1, &y, &alpha, psi);
        res[3].push(a == b);
        let h: Vec<usize> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..base)).collect();
        let gamma = RelFn::random(&y.pullback(&h), rng);
        res[4].push(arith_ft(&base_push(&h, &y, &gamma), psi) == base_push(&h, &y, &arith_ft(&gamma, psi)));
        res[5].push(arith_ft(&base_pull(&h, &beta), psi) == base_pull(&h, &arith_ft(&beta, psi)));
    }
    let names = [
        "arithmetic involutivity",
        "arithmetic plancherel",
        "arithmetic push",
        "arithmetic pull",
        "base change (push)",
        "base change (pull)",
    ];
    for (name, r_) in names.iter().zip(res) {
        tally(out, name, r, r_);
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct StepResult {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub kind: herm_theta::theta::InstanceKind,
    pub instance_hash: String,
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub length_q: usize,
    pub z1: String,
    pub z2: String,
    pub z1_coeffs: Vec<String>,
    pub z2_coeffs: Vec<String>,
    pub equal: bool,
    pub chain_holds: bool,
    pub steps: Vec<StepResult>,
    pub duality_signs_12: Vec<Option<i64>>,
    pub duality_signs_21: Vec<Option<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularitySummary {
    pub instances: usize,
    pub equal: usize,
    pub chain_holds: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularityRun {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub psi_scale: i64,
    pub bound: u128,
    pub results: Vec<InstanceReport>,
    pub summary: ModularitySummary,
}

impl ModularityRun {
    pub fn new(q: u32, seed: Option<u64>, psi_scale: i64, bound: u128, results: Vec<InstanceReport>) -> ModularityRun {
        let summary = ModularitySummary {
            instances: results.len(),
            equal: results.iter().filter(|r| r.equal).count(),
            chain_holds: results.iter().filter(|r| r.chain_holds).count(),
        };
        ModularityRun { q, seed, psi_scale, bound, results, summary }
    }
    pub fn all_equal(&self) -> bool {
        self.summary.equal == self.summary.instances
    }
}

/// The largest enumeration the check will start: Hom(ℰᵢ, ℱ) and V.
pub fn estimate_size(inst: &ThetaInstance) -> u128 {
    let fld = inst.field();
    let q = fld.q() as u128;
    let homs = [&inst.l1, &inst.l2].map(|l| hom_space(fld, &l.bundle(), inst.f.bundle()).dim_fq());
    let dim_v = 2 * inst.q.dim() * inst.f.rank();
    homs.into_iter().chain([dim_v]).map(|d| q.checked_pow(d as u32).unwrap_or(u128::MAX)).max().unwrap_or(1)
}

pub fn run_modularity(index: usize, seed: Option<u64>, inst: &ThetaInstance, psi_scale: i64, bound: u128, timings: bool) -> Result<InstanceReport> {
    let size = estimate_size(inst);
    if size > bound {
        return Err(Error::TooLarge { size, bound }.into());
    }
    let fld = inst.field();
    let psi = Psi::scaled(fld.int(psi_scale));
    let start = Instant::now();
    let r = modularity_check(inst, &psi, bound)?;
    let millis = timings.then(|| start.elapsed().as_millis());
    log::info!("instance {index}: equal = {}", r.equal());
    Ok(InstanceReport {
        index,
        seed,
        kind: inst.kind,
        instance_hash: instance_hash(inst),
        q: fld.q(),
        m: inst.g.m(),
        n: inst.f.rank(),
        length_q: inst.q.dim(),
        z1: r.z1.0.to_string(),
        z2: r.z2.0.to_string(),
        z1_coeffs: r.z1.0.coeff_strings(),
        z2_coeffs: r.z2.0.coeff_strings(),
        equal: r.equal(),
        chain_holds: r.chain_holds(),
        steps: r.steps.iter().map(|s| StepResult { name: s.name.to_string(), holds: s.holds, detail: s.detail.clone() }).collect(),
        duality_signs_12: r.trace.duality.signs12.to_vec(),
        duality_signs_21: r.trace.duality.signs21.to_vec(),
        millis,
    })
}

/// The instance drawn for sweep position `index`: rational curves, graphs
/// and hyperbolic pairs in turn for m = 1, sums of rational curves for m = 2.
pub fn random_instance(fld: &'static Field, m: usize, n: usize, seed: u64) -> Result<ThetaInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = match (m, rng.gen_range(0..5)) {
        (1, 0..=2) => {
            let d1 = rng.gen_range(0..=2 / n as i64);
            let d2 = rng.gen_range(0..=(4 / n as i64 - d1).clamp(0, 2));
            rational_instance(fld, d1, d2, n, &mut rng)?
        }
        (1, 3) => graph_instance(fld, &herm_theta::projline::SplitBundle::new(vec![rng.gen_range(0..=1)]), n, &mut rng)?,
        (1, _) => hyperbolic_instance(fld, &herm_theta::projline::SplitBundle::new(vec![rng.gen_range(-1..=1)]), n, &mut rng)?,
        (2, _) => {
            // length Q = Σd₁ + Σd₂ ≤ 3 keeps |V| = q^{4·length} within reach
            let d1 = [rng.gen_range(0..=1), rng.gen_range(0..=1)];
            let room = 3 - d1[0] - d1[1];
            let a = rng.gen_range(0..=room.min(1));
            let d2 = [a, rng.gen_range(0..=(room - a).min(1))];
            mixed_instance(fld, d1, d2, n.max(2), &mut rng)?
        }
        _ => return Err(Error::Precondition(format!("no generator for m = {m}")).into()),
    };
    Ok(inst)
}

/// A deterministic sweep; instance i uses seed + i and runs in parallel.
pub fn modularity_sweep(q: u32, m: usize, n: usize, seed: u64, count: usize, psi_scale: i64, bound: u128, timings: bool) -> Result<ModularityRun> {
    let fld = field_for_q(q)?;
    let results = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let inst = random_instance(fld, m, n, s)?;
            run_modularity(i, Some(s), &inst, psi_scale, bound, timings)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModularityRun::new(q, Some(seed), psi_scale, bound, results))
}

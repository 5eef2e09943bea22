//! The acceptance gate: one line per criterion with its measured runtime
//! against the budget. Every comparison is exact equality in the value ring
//! or over F_q; the only tolerances are the time budgets.

use std::time::{Duration, Instant};

use herm_theta::fourier::arith::{arith_ft, arith_pull_pair, arith_push_pair, base_pull, base_push, RelFn, RelMap, RelVS};
use herm_theta::fourier::{ft_gaussian, ft_pull_pair, ft_push_pair, involutivity_pair, plancherel_pair, FiniteFn, FiniteVS};
use herm_theta::gf::field_make;
use herm_theta::hermitian::complete_transverse;
use herm_theta::linalg::Mat;
use herm_theta::polyalg::DEFAULT_ENUM_BOUND;
use herm_theta::projline::{hom_space, SplitBundle};
use herm_theta::quadspace::{
    gauss_identity_check, gauss_sum, induced_quadratic_space, witt_property_suite, ExtQuadSpace, QuadSpace, Side, WittInputs,
};
use herm_theta::theta::*;
use herm_theta::{CharValue, Field, Psi, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUM_BOUND: u128 = 100_000;
/// |V| ≤ 10⁵.
const V_BOUND: u128 = 100_000;
/// |Hom(ℰ₁, ℱ)| ≤ 10⁴.
const HOM_BOUND: u128 = 10_000;
/// Every instance is also built with Q well inside |Q| ≤ 10⁴.
const Q_BOUND: u128 = 10_000;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
}

fn f(q: u32) -> &'static Field {
    match q {
        3 => field_make(3, 1),
        5 => field_make(5, 1),
        7 => field_make(7, 1),
        _ => unreachable!(),
    }
    .unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn size(fld: &'static Field, dim: usize) -> u128 {
    (fld.q() as u128).pow(dim as u32)
}

/// Transverse instances at q = 3 with Q, V and Hom(ℰᵢ, ℱ) inside the bounds.
fn instances(count_rank_one: usize, count_rank_two: usize, seed: u64) -> Vec<ThetaInstance> {
    let fld = f(3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count_rank_one {
        let k = out.len();
        let n = 1 + k % 2;
        let inst = match k % 5 {
            0..=2 => {
                let d1 = rng.gen_range(0..=2 / n as i64);
                let d2 = rng.gen_range(0..=(4 / n as i64 - d1).min(2));
                rational_instance(fld, d1, d2, n, &mut rng)
            }
            3 => graph_instance(fld, &SplitBundle::new(vec![rng.gen_range(0..=1)]), n, &mut rng),
            _ => hyperbolic_instance(fld, &SplitBundle::new(vec![rng.gen_range(-1..=1)]), n, &mut rng),
        }
        .expect("generator");
        out.push(inst);
    }
    let pairs = [([0, 1], [1, 0]), ([1, 1], [0, 1]), ([0, 0], [1, 1]), ([1, 0], [0, 1])];
    for k in 0..count_rank_two {
        let (d1, d2) = pairs[k % pairs.len()];
        out.push(mixed_instance(fld, d1, d2, 2, &mut rng).expect("generator"));
    }
    for inst in &out {
        let q_size = size(fld, 2 * inst.q.dim());
        let v_size = size(fld, 2 * inst.q.dim() * inst.f.rank());
        assert!(q_size <= Q_BOUND && v_size <= 1 << 24, "instance outside the bounds");
    }
    out
}

fn gauss_anchors() -> Outcome {
    for q in [3, 5, 7] {
        let psi = Psi::standard(f(q));
        let hp = gauss_sum(&QuadSpace::hyperbolic_plane(f(q)), &psi).map_err(|e| e.to_string())?;
        let nm = gauss_sum(&QuadSpace::norm_form(f(q)), &psi).map_err(|e| e.to_string())?;
        ensure(hp.gamma.is_one(), || format!("γ(H₊) = {} at q = {q}", hp.gamma))?;
        ensure(nm.sign() == Some(-1), || format!("γ(H₋) = {} at q = {q}", nm.gamma))?;
    }
    Ok("q ∈ {3, 5, 7}".into())
}

fn witt_suite() -> Outcome {
    let fld = f(3);
    let psi = Psi::standard(fld);
    let (o, z, a) = (fld.one(), fld.zero(), fld.alpha());
    let nu = (a * a).re();
    let forms = [
        QuadSpace::diagonal(fld, &[o]).unwrap(),
        QuadSpace::diagonal(fld, &[nu]).unwrap(),
        QuadSpace::hyperbolic_plane(fld),
        QuadSpace::norm_form(fld),
        QuadSpace::diagonal(fld, &[o, o, nu]).unwrap(),
    ];
    let mut checks = 0;
    for v1 in &forms {
        for v2 in &forms {
            if v1.dim() + v2.dim() > 4 {
                continue;
            }
            let r = witt_property_suite(v1, v2, &WittInputs::default(), &psi, DEFAULT_ENUM_BOUND).map_err(|e| e.to_string())?;
            ensure(r.additive && r.fourth_roots, || format!("additivity fails for dims {} + {}", v1.dim(), v2.dim()))?;
            checks += 1;
        }
    }
    let hp = QuadSpace::hyperbolic_plane(fld);
    let col = |v: [Scalar; 4]| v.to_vec();
    let split_cases = [
        (hp.clone(), Mat::from_cols(fld, 2, &[vec![o, z]])),
        (hp.direct_sum(&hp), Mat::from_cols(fld, 4, &[col([o, z, z, z]), col([z, z, o, z])])),
    ];
    let hermitian = [
        Mat::from_rows(fld, vec![vec![o]]),
        Mat::from_rows(fld, vec![vec![nu]]),
        Mat::from_rows(fld, vec![vec![o, a], vec![-a, fld.int(2)]]),
        Mat::from_rows(fld, vec![vec![o, z], vec![z, o]]),
    ];
    let extensions = [vec![vec![o]], vec![vec![a]], vec![vec![o, a], vec![a, fld.int(2)]], vec![vec![a, z], vec![z, o + a]]];
    for (v, l) in &split_cases {
        for h in &hermitian {
            for e in &extensions {
                let inputs = WittInputs {
                    lagrangian: Some(l.clone()),
                    hermitian: Some(h.clone()),
                    extension: Some(ExtQuadSpace::new(Mat::from_rows(fld, e.clone())).unwrap()),
                };
                let r = witt_property_suite(v, &QuadSpace::norm_form(fld), &inputs, &psi, DEFAULT_ENUM_BOUND).map_err(|e| e.to_string())?;
                ensure(r.split == Some(true), || "split form with γ ≠ 1".into())?;
                ensure(r.hermitian == Some(true), || format!("Hermitian form of rank {} with γ ≠ (−1)^rank", h.rows()))?;
                ensure(r.field_change == Some(true), || "γ over F_{q²} differs from γ of the trace form".into())?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} suites, q = 3, dims ≤ 4"))
}

fn basis_functions(vs: FiniteVS) -> Vec<FiniteFn> {
    let ring = vs.field().ring();
    (0..vs.size())
        .map(|k| {
            let pts: Vec<Vec<Scalar>> = vs.points().collect();
            let target = pts[k].clone();
            FiniteFn::from_fn(vs, |x| if x == target.as_slice() { CharValue::one(ring) } else { CharValue::zero(ring) })
        })
        .collect()
}

fn finite_ft(c: u32) -> Outcome {
    let mut checks = 0usize;
    for q in [3, 5] {
        let fld = f(q);
        let psi = Psi::scaled(fld.int(c as i64));
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        let matrix = |r: usize, s: usize, rng: &mut ChaCha8Rng| Mat::from_fn(fld, r, s, |_, _| fld.base(rng.gen_range(0..q)));
        // every function on dim ≤ 1 is a combination of point masses; all
        // identities are linear (Plancherel bilinear) in them
        for r in 0..=1 {
            let vs = FiniteVS::new(fld, r).unwrap();
            let basis = basis_functions(vs);
            for phi in &basis {
                let (a, b) = involutivity_pair(phi, &psi);
                ensure(a == b, || format!("involutivity, q = {q}, dim {r}"))?;
                for phi2 in &basis {
                    let (a, b) = plancherel_pair(phi, phi2, &psi);
                    ensure(a == b, || format!("Plancherel, q = {q}, dim {r}"))?;
                }
                for s in 0..=1 {
                    let other = FiniteVS::new(fld, s).unwrap();
                    for _ in 0..3 {
                        let m = matrix(s, r, &mut rng);
                        let (a, b) = ft_push_pair(&m, other, phi, &psi);
                        ensure(a == b, || format!("push, q = {q}, {r} → {s}"))?;
                        let m = matrix(r, s, &mut rng);
                        let (a, b) = ft_pull_pair(&m, other, phi, &psi);
                        ensure(a == b, || format!("pull, q = {q}, {s} → {r}"))?;
                    }
                }
                checks += 1;
            }
            if r == 1 {
                for x in fld.base_elements().filter(|x| !x.is_zero()) {
                    let (a, b) = ft_gaussian(&QuadSpace::diagonal(fld, &[x]).unwrap(), &psi).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("Gaussian ⟨{x}⟩, q = {q}"))?;
                }
            }
        }
        for r in 2..=3 {
            let vs = FiniteVS::new(fld, r).unwrap();
            for _ in 0..50 {
                let phi = FiniteFn::random(vs, &mut rng);
                let (a, b) = involutivity_pair(&phi, &psi);
                ensure(a == b, || format!("involutivity, q = {q}, dim {r}"))?;
                let (a, b) = plancherel_pair(&phi, &FiniteFn::random(vs, &mut rng), &psi);
                ensure(a == b, || format!("Plancherel, q = {q}, dim {r}"))?;
                let s = rng.gen_range(0..=r);
                let small = FiniteVS::new(fld, s).unwrap();
                let m = matrix(r, s, &mut rng);
                let (a, b) = ft_push_pair(&m, vs, &FiniteFn::random(small, &mut rng), &psi);
                ensure(a == b, || format!("push, q = {q}, {s} → {r}"))?;
                let (a, b) = ft_pull_pair(&m, small, &phi, &psi);
                ensure(a == b, || format!("pull, q = {q}, {s} → {r}"))?;
                checks += 1;
            }
            for _ in 0..4 {
                let d: Vec<Scalar> = (0..r).map(|_| fld.base(rng.gen_range(1..q))).collect();
                let (a, b) = ft_gaussian(&QuadSpace::diagonal(fld, &d).unwrap(), &psi).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("Gaussian, q = {q}, dim {r}"))?;
            }
        }
    }
    Ok(format!("{checks} functions, q ∈ {{3, 5}}, ψ_{c}"))
}

fn arithmetic_ft() -> Outcome {
    let fld = f(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checks = 0;
    for _ in 0..25 {
        let base = rng.gen_range(1..=5);
        let ranks: Vec<usize> = (0..base).map(|_| rng.gen_range(0..=3)).collect();
        let y = RelVS::new(fld, &ranks).unwrap();
        let alpha = RelFn::random(&y, &mut rng);
        let beta = RelFn::random(&y, &mut rng);
        ensure(arith_ft(&arith_ft(&alpha, &psi), &psi) == alpha.negate_argument().scale_by_fiber_size(), || {
            format!("involutivity on ranks {ranks:?}")
        })?;
        ensure(
            alpha.mul(&arith_ft(&beta, &psi)).push_to_base() == arith_ft(&alpha, &psi).mul(&beta).push_to_base(),
            || format!("Plancherel on ranks {ranks:?}"),
        )?;
        let src: Vec<usize> = ranks.iter().map(|&d| rng.gen_range(0..=d)).collect();
        let y1 = RelVS::new(fld, &src).unwrap();
        let phi = RelMap {
            mats: ranks.iter().zip(&src).map(|(&d, &s)| Mat::from_fn(fld, d, s, |_, _| fld.base(rng.gen_range(0..3)))).collect(),
        };
        let (a, b) = arith_push_pair(&phi, &y1, &y, &RelFn::random(&y1, &mut rng), &psi);
        ensure(a == b, || format!("functoriality (push) {src:?} → {ranks:?}"))?;
        let (a, b) = arith_pull_pair(&phi, &y1, &y, &alpha, &psi);
        ensure(a == b, || format!("functoriality (pull) {src:?} → {ranks:?}"))?;
        let h: Vec<usize> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..base)).collect();
        let gamma = RelFn::random(&y.pullback(&h), &mut rng);
        ensure(arith_ft(&base_push(&h, &y, &gamma), &psi) == base_push(&h, &y, &arith_ft(&gamma, &psi)), || {
            format!("base change (push) along {h:?}")
        })?;
        ensure(arith_ft(&base_pull(&h, &beta), &psi) == base_pull(&h, &arith_ft(&beta, &psi)), || {
            format!("base change (pull) along {h:?}")
        })?;
        checks += 1;
    }
    Ok(format!("{checks} relative spaces, |T| ≤ 5, fiber dim ≤ 3"))
}

fn structural(c: u32) -> Outcome {
    let fld = f(3);
    let psi = Psi::scaled(fld.int(c as i64));
    let all = instances(26, 6, 500);
    let mut gauss_checked = 0;
    for (k, inst) in all.iter().enumerate() {
        let ch = inst.q.checks();
        ensure(ch.iota_bijective, || format!("instance {k}: ι not bijective"))?;
        ensure(ch.beta_skew, || format!("instance {k}: σ*β₁₂^∨ ≠ −β₂₁"))?;
        ensure(ch.h_opposite && ch.h_hermitian, || format!("instance {k}: h₁₂ ≠ −h₂₁"))?;
        ensure(ch.perfect, || format!("instance {k}: ⟨,⟩₁₂ degenerate"))?;
        if size(fld, 2 * inst.q.dim() * inst.f.rank()) <= V_BOUND {
            let g = gauss_identity_check(&inst.f, &inst.q, &psi, V_BOUND).map_err(|e| e.to_string())?;
            ensure(g.all_hold(), || format!("instance {k}: {:?}", g.into_result().err()))?;
            gauss_checked += 1;
        }
    }
    Ok(format!("{} instances, Gauss identity on {gauss_checked}, ψ_{c}", all.len()))
}

fn pairing_route() -> Outcome {
    let mut n = 0;
    for (k, inst) in instances(12, 0, 600).iter().enumerate() {
        let fld = inst.field();
        let hom = hom_space(fld, &inst.l1.bundle(), inst.f.bundle());
        if size(fld, hom.dim_fq()) > HOM_BOUND {
            continue;
        }
        let check = pairing_identity_check(&inst.g, &inst.l1, &inst.l2, &inst.f, &inst.q, HOM_BOUND as usize).map_err(|e| e.to_string())?;
        ensure(check.first, || format!("instance {k}: ⟨e₁, a(t)⟩ ≠ −𝔮₂₁(s(t))"))?;
        ensure(check.second, || format!("instance {k}: ⟨e₂, a(t)⟩ ≠ 𝔮₂₁(s(t))"))?;
        n += 1;
    }
    ensure(n >= 10, || format!("only {n} instances within the bound"))?;
    Ok(format!("every t on {n} instances"))
}

fn five_term_and_duality() -> Outcome {
    let all = instances(12, 2, 600);
    for (k, inst) in all.iter().enumerate() {
        let v = induced_quadratic_space(&inst.f, &inst.q, Side::Twelve).map_err(|e| e.to_string())?;
        let rows: Vec<FiveTermRow> = (1..=2)
            .map(|side| five_term(&inst.l1, &inst.l2, &inst.f, &inst.q, &v, side))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for row in &rows {
            row.check_exact().map_err(|e| format!("instance {k}: {e}"))?;
        }
        let d = duality(&rows[0], &rows[1], &inst.f, &v).map_err(|e| e.to_string())?;
        ensure(d.holds && d.perfect, || format!("instance {k}: rows not dual, signs {:?}", d.signs12))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn pushforward() -> Outcome {
    let all = instances(12, 2, 700);
    for (k, inst) in all.iter().enumerate() {
        let v = induced_quadratic_space(&inst.f, &inst.q, Side::Twelve).map_err(|e| e.to_string())?;
        for side in 1..=2 {
            let row = five_term(&inst.l1, &inst.l2, &inst.f, &inst.q, &v, side).map_err(|e| e.to_string())?;
            let p = pushforward_identity(&row, SUM_BOUND).map_err(|e| e.to_string())?;
            ensure(p.holds, || format!("instance {k}, side {side}: {p:?}"))?;
        }
    }
    Ok(format!("{} instances, both sides", all.len()))
}

fn modularity(c: u32) -> Outcome {
    let fld = f(3);
    let psi = Psi::scaled(fld.int(c as i64));
    let mut slowest = Duration::ZERO;
    let all = instances(22, 3, 800);
    for (k, inst) in all.iter().enumerate() {
        for l in [&inst.l1, &inst.l2] {
            let terms = size(fld, hom_space(fld, &l.bundle(), inst.f.bundle()).dim_fq());
            ensure(terms <= SUM_BOUND, || format!("instance {k}: {terms} terms in one theta sum"))?;
        }
        let start = Instant::now();
        let r = modularity_check(inst, &psi, 1 << 22).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        ensure(r.equal(), || format!("instance {k}: Z₁ = {} but Z₂ = {}", r.z1.0, r.z2.0))?;
        ensure(r.chain_holds(), || format!("instance {k}: failed steps {:?}", r.failed_steps()))?;
    }
    ensure(slowest < Duration::from_secs(60), || format!("slowest instance took {slowest:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for k in 0..3 {
        let inst = rational_instance(fld, 1, 2, 1, &mut rng).map_err(|e| e.to_string())?;
        let l3 = complete_transverse(&inst.g, &inst.l1, &inst.l2, &mut rng, 50).map_err(|e| e.to_string())?;
        let z: Vec<ThetaValue> = [&inst.l1, &inst.l2, &l3]
            .iter()
            .map(|l| theta_value(&inst.g, l, &inst.f, &psi))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(z[0] == z[1] && z[1] == z[2], || format!("transitivity instance {k}: {z:?}"))?;
    }
    Ok(format!("{} instances (3 with m = 2) + 3 triples, slowest {:.2} s, ψ_{c}", all.len(), slowest.as_secs_f64()))
}

fn uniformity() -> Outcome {
    let mut lines = Vec::new();
    for c in [1, 2] {
        let status = [finite_ft(c).is_ok(), structural(c).is_ok(), modularity(c).is_ok()];
        lines.push(status);
    }
    ensure(lines.iter().all(|s| *s == [true, true, true]), || format!("pass status per ψ_c: {lines:?}"))?;
    Ok("criteria 3, 5, 9 pass for c = 1, 2".into())
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let criteria: Vec<(Criterion, fn() -> Outcome)> = vec![
        (Criterion { id: 1, name: "Gauss-sum anchors", budget: s(1) }, gauss_anchors),
        (Criterion { id: 2, name: "Witt suite", budget: s(5) }, witt_suite),
        (Criterion { id: 3, name: "finite Fourier identities", budget: s(10) }, || finite_ft(1)),
        (Criterion { id: 4, name: "arithmetic Fourier identities", budget: s(10) }, arithmetic_ft),
        (Criterion { id: 5, name: "structure of Q and the Gauss identity", budget: s(60) }, || structural(1)),
        (Criterion { id: 6, name: "pairing computed two ways", budget: s(60) }, pairing_route),
        (Criterion { id: 7, name: "five-term exactness and duality", budget: s(30) }, five_term_and_duality),
        (Criterion { id: 8, name: "pushforward identity", budget: s(60) }, pushforward),
        (Criterion { id: 9, name: "modularity Z(E1) = Z(E2)", budget: s(25 * 60) }, || modularity(1)),
        (Criterion { id: 10, name: "every nontrivial character", budget: s(3 * 25 * 60) }, uniformity),
    ];
    let mut failed = Vec::new();
    for (c, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = outcome.is_ok() && in_time;
        let detail = match &outcome {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        let timing = format!("{:.2} s of {} s", elapsed.as_secs_f64(), c.budget.as_secs());
        println!("criterion {:>2} {} {:<40} {detail} ({timing})", c.id, if pass { "PASS" } else { "FAIL" }, c.name);
        if !pass {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

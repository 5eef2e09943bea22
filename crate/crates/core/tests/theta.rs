use herm_theta::gf::field_make;
use herm_theta::hermitian::{complete_transverse, extension_class};
use herm_theta::projline::{hom_space, SplitBundle};
use herm_theta::quadspace::{induced_quadratic_space, Side};
use herm_theta::theta::*;
use herm_theta::{Error, Field, Psi};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND: u128 = 1 << 22;

fn f9() -> &'static Field {
    field_make(3, 1).unwrap()
}

/// A mix of rational, graph and hyperbolic instances with m = 1.
fn rank_one_instances(fld: &'static Field, count: usize, seed: u64) -> Vec<ThetaInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = 1 + k % 2;
            match k % 5 {
                0 | 1 | 2 => {
                    // |V| = q^{2n(d₁ + d₂)} stays below 3⁸
                    let d1 = rng.gen_range(0..=2 / n as i64);
                    let d2 = rng.gen_range(0..=(4 / n as i64 - d1).min(2));
                    rational_instance(fld, d1, d2, n, &mut rng).unwrap()
                }
                3 => graph_instance(fld, &SplitBundle::new(vec![rng.gen_range(0..=1)]), n, &mut rng).unwrap(),
                _ => hyperbolic_instance(fld, &SplitBundle::new(vec![rng.gen_range(-1..=1)]), n, &mut rng).unwrap(),
            }
        })
        .collect()
}

fn assert_report(r: &ModularityReport) {
    assert!(r.equal(), "Z1 = {:?}, Z2 = {:?}", r.z1, r.z2);
    assert!(r.chain_holds(), "failed steps {:?}", r.failed_steps());
}

#[test]
fn a_of_t_is_hermitian_and_sesquilinear() {
    let fld = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let inst = rational_instance(fld, 1, 2, 2, &mut rng).unwrap();
    let hom = hom_space(fld, &inst.l1.bundle(), inst.f.bundle());
    assert!(a_of_t(&inst.f, &hom.zero()).unwrap().is_zero());
    for _ in 0..20 {
        let x: Vec<_> = (0..hom.dim()).map(|_| fld.from_index(rng.gen_range(0..9))).collect();
        let t = hom.element(&x);
        let a = a_of_t(&inst.f, &t).unwrap();
        assert_eq!(a.dagger().twist(-2), a);
        let c = fld.from_index(rng.gen_range(1..9));
        assert_eq!(a_of_t(&inst.f, &t.scale(c)).unwrap(), a.scale(c.norm()));
    }
}

#[test]
fn split_extension_gives_a_plain_count() {
    let fld = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for e in [-1, 0, 1] {
        let inst = hyperbolic_instance(fld, &SplitBundle::new(vec![e]), 1, &mut rng).unwrap();
        assert!(extension_class(&inst.g, &inst.l1).unwrap().h1_reduce().is_zero());
        let s = theta_sum(&inst.g, &inst.l1, &inst.f, &Psi::standard(fld), SumMethod::Direct, BOUND).unwrap();
        assert!(s.form.gram().is_zero());
        let z = theta_value(&inst.g, &inst.l1, &inst.f, &Psi::standard(fld)).unwrap();
        // χ(O(e)) q^{(2e + 2)/2} · q^{dim Hom}
        let expected = prefactor(fld.ring(), &[e], 1, DegreeConvention::OverFq)
            .scale(&num_rational::Rational64::from_integer(3i64.pow(s.hom.dim_fq() as u32)));
        assert_eq!(z.0, expected);
    }
}

#[test]
fn pairing_matches_torsion_route_on_every_map() {
    let fld = f9();
    for inst in rank_one_instances(fld, 12, 10) {
        let check = pairing_identity_check(&inst.g, &inst.l1, &inst.l2, &inst.f, &inst.q, 1 << 14).unwrap();
        assert!(check.holds(), "{:?} {check:?}", inst.kind);
    }
}

#[test]
fn s_of_t_vanishes_on_zero_and_when_q_is_zero() {
    let fld = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let inst = rational_instance(fld, 1, 1, 1, &mut rng).unwrap();
    let hom = hom_space(fld, &inst.l1.bundle(), inst.f.bundle());
    assert!(s_of_t(&inst.q, &hom.zero()).unwrap().is_zero());
    let hyp = hyperbolic_instance(fld, &SplitBundle::new(vec![1]), 1, &mut rng).unwrap();
    assert_eq!(hyp.q.dim(), 0);
    let hom = hom_space(fld, &hyp.l1.bundle(), hyp.f.bundle());
    for t in hom.basis() {
        let s = s_of_t(&hyp.q, &t).unwrap();
        assert!(s.is_zero() || s.rows() == 0);
    }
}

#[test]
fn five_term_rows_are_exact_and_dual() {
    let fld = f9();
    for inst in rank_one_instances(fld, 10, 20) {
        let v = induced_quadratic_space(&inst.f, &inst.q, Side::Twelve).unwrap();
        let rows: Vec<FiveTermRow> =
            (1..=2).map(|side| five_term(&inst.l1, &inst.l2, &inst.f, &inst.q, &v, side).unwrap()).collect();
        for row in &rows {
            row.check_exact().unwrap();
            let alternating: i64 = row.dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
            assert_eq!(alternating, 0, "{:?}", row.dims);
        }
        let d = duality(&rows[0], &rows[1], &inst.f, &v).unwrap();
        assert!(d.holds && d.perfect, "{d:?}");
        // the middle squares are the ones with a definite sign on every instance
        assert!(matches!(d.signs12[1], Some(-1) | None));
        assert!(matches!(d.signs12[2], Some(1) | None));
    }
}

#[test]
fn pushforward_identity_by_enumeration() {
    let fld = f9();
    for inst in rank_one_instances(fld, 10, 30) {
        let v = induced_quadratic_space(&inst.f, &inst.q, Side::Twelve).unwrap();
        for side in 1..=2 {
            let row = five_term(&inst.l1, &inst.l2, &inst.f, &inst.q, &v, side).unwrap();
            let p = pushforward_identity(&row, BOUND).unwrap();
            assert!(p.holds, "{p:?}");
        }
    }
}

#[test]
fn modularity_rank_one() {
    let fld = f9();
    let psi = Psi::standard(fld);
    for inst in rank_one_instances(fld, 20, 40) {
        assert_report(&modularity_check(&inst, &psi, BOUND).unwrap());
    }
}

#[test]
fn modularity_with_q_of_degree_one() {
    // Graphs of Hermitian maps on O(e) cut Q out by a real form of degree 2e,
    // so deg Q is odd only with support at ∞; a line against a conic is used.
    let fld = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..5 {
        let inst = rational_instance(fld, 0, 1, 1, &mut rng).unwrap();
        assert_eq!(inst.q.divisor().degree(), 1);
        let r = modularity_check(&inst, &Psi::standard(fld), BOUND).unwrap();
        assert_report(&r);
        if let Some(ratio) = r.ratio() {
            assert!(ratio.is_one());
        }
    }
    for _ in 0..5 {
        let inst = graph_instance(fld, &SplitBundle::new(vec![1]), 1, &mut rng).unwrap();
        assert_eq!(inst.q.divisor().degree(), 2);
        assert_report(&modularity_check(&inst, &Psi::standard(fld), BOUND).unwrap());
    }
}

#[test]
fn modularity_rank_two() {
    let fld = f9();
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for (d1, d2) in [([0, 1], [1, 0]), ([1, 1], [0, 1]), ([0, 0], [1, 1])] {
        let inst = mixed_instance(fld, d1, d2, 2, &mut rng).unwrap();
        assert_report(&modularity_check(&inst, &psi, 1 << 24).unwrap());
    }
}

#[test]
fn swapping_the_lagrangians_swaps_the_values() {
    let fld = f9();
    let psi = Psi::standard(fld);
    for inst in rank_one_instances(fld, 6, 60) {
        let r = modularity_check(&inst, &psi, BOUND).unwrap();
        let s = modularity_check(&inst.swapped().unwrap(), &psi, BOUND).unwrap();
        assert_report(&s);
        assert_eq!((r.z1, r.z2), (s.z2, s.z1));
    }
}

#[test]
fn three_lagrangians_give_one_value() {
    let fld = f9();
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    for _ in 0..4 {
        let inst = rational_instance(fld, 1, 2, 1, &mut rng).unwrap();
        let l3 = complete_transverse(&inst.g, &inst.l1, &inst.l2, &mut rng, 50).unwrap();
        let z: Vec<ThetaValue> =
            [&inst.l1, &inst.l2, &l3].iter().map(|l| theta_value(&inst.g, l, &inst.f, &psi).unwrap()).collect();
        assert_eq!(z[0], z[1]);
        assert_eq!(z[1], z[2]);
        // the chain needs Q supported away from ∞
        match ThetaInstance::new(inst.kind, inst.g.clone(), inst.l1.clone(), l3, inst.f.clone()) {
            Ok(third) => assert_report(&modularity_check(&third, &psi, BOUND).unwrap()),
            Err(Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn every_nontrivial_character_and_galois_equivariance() {
    for (p, seed) in [(3, 80), (5, 81)] {
        let fld = field_make(p, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = rational_instance(fld, 1, 2, 1, &mut rng).unwrap();
        let base = theta_value(&inst.g, &inst.l1, &inst.f, &Psi::standard(fld)).unwrap();
        for c in 1..p {
            let psi = Psi::scaled(fld.int(c as i64));
            assert_report(&modularity_check(&inst, &psi, BOUND).unwrap());
            let z = theta_value(&inst.g, &inst.l1, &inst.f, &psi).unwrap();
            assert_eq!(z.0, base.0.galois(c as i64));
        }
    }
}

#[test]
fn direct_and_polarized_sums_agree() {
    let fld = f9();
    let psi = Psi::standard(fld);
    for inst in rank_one_instances(fld, 5, 90) {
        for l in [&inst.l1, &inst.l2] {
            let a = theta_sum(&inst.g, l, &inst.f, &psi, SumMethod::Direct, BOUND).unwrap();
            let b = theta_sum(&inst.g, l, &inst.f, &psi, SumMethod::Polarized, BOUND).unwrap();
            assert_eq!(a.sum, b.sum);
        }
    }
}

#[test]
fn degrees_over_the_quadratic_extension_break_equality() {
    let fld = f9();
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let inst = rational_instance(fld, 0, 2, 1, &mut rng).unwrap();
    let z = |l, conv| theta_value_with(&inst.g, l, &inst.f, &psi, SumMethod::Polarized, conv, BOUND).unwrap();
    assert_eq!(z(&inst.l1, DegreeConvention::OverFq), z(&inst.l2, DegreeConvention::OverFq));
    assert_ne!(z(&inst.l1, DegreeConvention::OverFq2), z(&inst.l2, DegreeConvention::OverFq2));
}

#[test]
fn rank_of_f_below_m_is_rejected() {
    let fld = f9();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let inst = mixed_instance(fld, [0, 1], [1, 0], 2, &mut rng).unwrap();
    let f1 = herm_theta::hermitian::random_herm_bundle(fld, 1, &mut rng).unwrap();
    assert!(matches!(theta_value(&inst.g, &inst.l1, &f1, &Psi::standard(fld)), Err(Error::Precondition(_))));
    assert!(matches!(
        ThetaInstance::new(inst.kind, inst.g.clone(), inst.l1.clone(), inst.l2.clone(), f1),
        Err(Error::Precondition(_))
    ));
}

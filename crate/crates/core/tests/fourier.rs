use herm_theta::fourier::arith::*;
use herm_theta::fourier::*;
use herm_theta::gf::{field_make, Psi};
use herm_theta::linalg::Mat;
use herm_theta::quadspace::QuadSpace;
use herm_theta::{CharValue, Field, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> &'static Field {
    field_make(q, 1).unwrap()
}

fn int(fld: &'static Field, n: i64) -> CharValue {
    CharValue::from_int(fld.ring(), n)
}

fn random_matrix(fld: &'static Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Mat<Scalar> {
    Mat::from_fn(fld, r, c, |_, _| fld.base(rng.gen_range(0..fld.q())))
}

/// Direct double sum, independent of the exponent grouping in `ft`.
fn naive_ft(phi: &FiniteFn, psi: &Psi) -> Vec<CharValue> {
    let vs = phi.space();
    let s = if vs.dim() % 2 == 0 { 1 } else { -1 };
    vs.points()
        .map(|w| {
            vs.points()
                .fold(CharValue::zero(vs.field().ring()), |a, v| &a + &(phi.at(&v) * &psi.eval(vs.pairing(&v, &w))))
                .scale(&s)
        })
        .collect()
}

#[test]
fn constant_and_delta() {
    for q in [3, 5] {
        let fld = field(q);
        let psi = Psi::standard(fld);
        for r in 0..=3 {
            let vs = FiniteVS::new(fld, r).unwrap();
            let s = if r % 2 == 0 { 1 } else { -1 };
            let q_r = (q as i64).pow(r as u32);
            assert_eq!(ft(&FiniteFn::one(vs), &psi), FiniteFn::delta(vs).scale_int(s * q_r));
            assert_eq!(ft(&FiniteFn::delta(vs), &psi), FiniteFn::one(vs).scale_int(s));
        }
    }
}

#[test]
fn exhaustive_small_identities() {
    // every 0/1-valued function on F_3^1 and F_3^0
    let fld = field(3);
    let psi = Psi::standard(fld);
    for r in 0..=1 {
        let vs = FiniteVS::new(fld, r).unwrap();
        for mask in 0..(1u32 << vs.size()) {
            let phi = FiniteFn::from_fn(vs, |v| int(fld, ((mask >> vs.index_of(v)) & 1) as i64));
            assert_eq!(ft(&phi, &psi).values(), naive_ft(&phi, &psi).as_slice());
            let (a, b) = involutivity_pair(&phi, &psi);
            assert_eq!(a, b);
            let (l, r) = plancherel_pair(&phi, &FiniteFn::one(vs), &psi);
            assert_eq!(l, r);
        }
    }
}

#[test]
fn plancherel_examples() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    for r in 0..=2 {
        let vs = FiniteVS::new(fld, r).unwrap();
        let q_r = 3i64.pow(r as u32);
        let (l, rr) = plancherel_pair(&FiniteFn::delta(vs), &FiniteFn::one(vs), &psi);
        assert_eq!(l, int(fld, q_r));
        assert_eq!(rr, int(fld, q_r));
        let (l, rr) = plancherel_pair(&FiniteFn::one(vs), &FiniteFn::one(vs), &psi);
        assert_eq!(l, int(fld, q_r * q_r));
        assert_eq!(l, rr);
    }
}

#[test]
fn gaussian_examples() {
    for q in [3, 5] {
        let fld = field(q);
        let psi = Psi::standard(fld);
        let spaces = [
            QuadSpace::diagonal(fld, &[fld.one()]).unwrap(),
            QuadSpace::hyperbolic_plane(fld),
            QuadSpace::norm_form(fld),
            QuadSpace::diagonal(fld, &[fld.one(), fld.int(2), fld.int(2)]).unwrap(),
        ];
        for v in &spaces {
            for c in [fld.one(), fld.int(2)] {
                let (l, r) = ft_gaussian(&v.scaled(c), &psi).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn degenerate_gaussian_is_rejected() {
    let fld = field(3);
    let v = QuadSpace::diagonal(fld, &[fld.one(), fld.zero()]).unwrap();
    assert!(ft_gaussian(&v, &Psi::standard(fld)).is_err());
}

#[test]
fn push_pull_examples() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v1 = FiniteVS::new(fld, 1).unwrap();
    let v2 = FiniteVS::new(fld, 2).unwrap();
    let zero = Mat::zeros(fld, 2, 1);
    assert_eq!(push(&zero, v2, &FiniteFn::one(v1)), FiniteFn::delta(v2).scale_int(3));
    let incl = Mat::from_rows(fld, vec![vec![fld.one()], vec![fld.zero()]]);
    for f in [zero, incl, Mat::identity(fld, 2).block(0, 2, 0, 1)] {
        let phi1 = FiniteFn::random(v1, &mut rng);
        let (l, r) = ft_push_pair(&f, v2, &phi1, &psi);
        assert_eq!(l, r);
        let phi = FiniteFn::random(v2, &mut rng);
        let (l, r) = ft_pull_pair(&f, v1, &phi, &psi);
        assert_eq!(l, r);
    }
    let id = Mat::identity(fld, 2);
    let phi = FiniteFn::random(v2, &mut rng);
    assert_eq!(push(&id, v2, &phi), phi);
    assert_eq!(pull(&id, v2, &phi), phi);
}

#[test]
fn single_point_base_matches_ft() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for d in 0..=2 {
        let y = RelVS::new(fld, &[d]).unwrap();
        let alpha = RelFn::random(&y, &mut rng);
        assert_eq!(arith_ft(&alpha, &psi).fibers[0], ft(&alpha.fibers[0], &psi));
    }
}

#[test]
fn arith_involutivity_and_plancherel() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let y = RelVS::new(fld, &[2, 2, 2]).unwrap();
    let alpha = RelFn::random(&y, &mut rng);
    assert_eq!(arith_ft(&arith_ft(&alpha, &psi), &psi), alpha.negate_argument().scale_by_fiber_size());
    let beta = RelFn::random(&y.dual(), &mut rng);
    let lhs = alpha.mul(&arith_ft(&beta, &psi)).push_to_base();
    let rhs = arith_ft(&alpha, &psi).mul(&beta).push_to_base();
    assert_eq!(lhs, rhs);
}

#[test]
fn arith_ft_respects_disjoint_union() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let y = RelVS::new(fld, &[1, 2, 0]).unwrap();
    let alpha = RelFn::random(&y, &mut rng);
    let whole = arith_ft(&alpha, &psi);
    let first = arith_ft(&RelFn::from_fibers(alpha.fibers[..1].to_vec()), &psi);
    let rest = arith_ft(&RelFn::from_fibers(alpha.fibers[1..].to_vec()), &psi);
    assert_eq!(whole.fibers[..1], first.fibers[..]);
    assert_eq!(whole.fibers[1..], rest.fibers[..]);
}

#[test]
fn arith_functoriality() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let y1 = RelVS::new(fld, &[1, 1]).unwrap();
    let y = RelVS::new(fld, &[2, 2]).unwrap();
    for _ in 0..5 {
        let phi = RelMap { mats: (0..2).map(|_| random_matrix(fld, 2, 1, &mut rng)).collect() };
        let alpha1 = RelFn::random(&y1, &mut rng);
        let (l, r) = arith_push_pair(&phi, &y1, &y, &alpha1, &psi);
        assert_eq!(l, r);
        let alpha = RelFn::random(&y, &mut rng);
        let (l, r) = arith_pull_pair(&phi, &y1, &y, &alpha, &psi);
        assert_eq!(l, r);
    }
    // zero section of the rank-0 space
    let y0 = RelVS::new(fld, &[0, 0]).unwrap();
    let zero = RelMap { mats: vec![Mat::zeros(fld, 2, 0); 2] };
    let alpha0 = RelFn::random(&y0, &mut rng);
    let (l, r) = arith_push_pair(&zero, &y0, &y, &alpha0, &psi);
    assert_eq!(l, r);
    let id = RelMap { mats: vec![Mat::identity(fld, 2); 2] };
    let alpha = RelFn::random(&y, &mut rng);
    let (l, r) = arith_pull_pair(&id, &y, &y, &alpha, &psi);
    assert_eq!(l, r);
}

#[test]
fn arith_base_change() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let y = RelVS::new(fld, &[2, 1]).unwrap();
    for h in [vec![0usize, 1], vec![1, 0], vec![0, 0], vec![1]] {
        let yp = y.pullback(&h);
        let alpha = RelFn::random(&yp, &mut rng);
        assert_eq!(arith_ft(&base_push(&h, &y, &alpha), &psi), base_push(&h, &y, &arith_ft(&alpha, &psi)));
        let beta = RelFn::random(&y, &mut rng);
        assert_eq!(arith_ft(&base_pull(&h, &beta), &psi), base_pull(&h, &arith_ft(&beta, &psi)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn random_identities(q in prop::sample::select(vec![3u32, 5]), r in 2usize..=3, c in 1u32..5, seed in any::<u64>()) {
        let fld = field(q);
        let psi = Psi::scaled(fld.base(c % (q - 1) + 1));
        let vs = FiniteVS::new(fld, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = FiniteFn::random(vs, &mut rng);
        let phi2 = FiniteFn::random(vs, &mut rng);
        let (a, b) = involutivity_pair(&phi, &psi);
        prop_assert_eq!(a, b);
        let (a, b) = plancherel_pair(&phi, &phi2, &psi);
        prop_assert_eq!(a, b);
        let f = random_matrix(fld, r, r - 1, &mut rng);
        let small = FiniteVS::new(fld, r - 1).unwrap();
        let (a, b) = ft_push_pair(&f, vs, &FiniteFn::random(small, &mut rng), &psi);
        prop_assert_eq!(a, b);
        let (a, b) = ft_pull_pair(&f, small, &phi, &psi);
        prop_assert_eq!(a, b);
    }
}

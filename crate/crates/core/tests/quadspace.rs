use herm_theta::gf::{field_make, to_rational, Psi};
use herm_theta::hermitian::*;
use herm_theta::linalg::Mat;
use herm_theta::polyalg::{Poly, DEFAULT_ENUM_BOUND};
use herm_theta::projline::{Form, FormMatrix, SplitBundle};
use herm_theta::quadspace::*;
use herm_theta::{CharValue, Error, Field, RatValue, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> &'static Field {
    field_make(q, 1).unwrap()
}

fn gamma(v: &QuadSpace) -> GaussData {
    gauss_sum(v, &Psi::standard(v.field())).unwrap()
}

fn unit_line(fld: &'static Field, c: Scalar) -> HermBundle {
    let h = FormMatrix::from_entries(&[-1], &[-1], vec![Form::monomial(c, 0, 0)]).unwrap();
    HermBundle::new(fld, SplitBundle::new(vec![-1]), h).unwrap()
}

fn lin(fld: &'static Field, a: i64, b: i64) -> Form {
    Form::from_dense(1, &[fld.int(b), fld.int(a)])
}

/// Q = F_{q²}[t]/(t) from the lines (1, 0) and (y, x) in the standard plane.
fn length_one_q(fld: &'static Field) -> QData {
    let g = standard_plane(fld);
    let one = Form::monomial(fld.one(), 0, 0);
    let l1 = rational_curve(&g, &one, &Form::zero(0)).unwrap();
    let l2 = rational_curve(&g, &lin(fld, 0, 1), &lin(fld, 1, 0)).unwrap();
    q_construction(&g, &l1, &l2).unwrap()
}

fn random_q(fld: &'static Field, d1: i64, d2: i64, rng: &mut ChaCha8Rng) -> QData {
    let g = standard_plane(fld);
    loop {
        let (a1, a2) = coprime_real_forms(fld, d1, rng);
        let (b1, b2) = coprime_real_forms(fld, d2, rng);
        let l1 = rational_curve(&g, &a1, &a2).unwrap();
        let l2 = rational_curve(&g, &b1, &b2).unwrap();
        match q_construction(&g, &l1, &l2) {
            Ok(q) => return q,
            Err(Error::Precondition(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn hyperbolic_and_norm_anchors() {
    for q in [3, 5, 7] {
        let fld = field(q);
        let h = gamma(&QuadSpace::hyperbolic_plane(fld));
        assert_eq!(h.sum, CharValue::from_int(fld.ring(), q as i64));
        assert_eq!(h.sign(), Some(1));
        assert_eq!(gamma(&QuadSpace::norm_form(fld)).sign(), Some(-1));
        let z = gamma(&QuadSpace::zero(fld));
        assert!(z.sum.is_one() && z.gamma.is_one());
    }
}

#[test]
fn one_dimensional_gauss_sums_square_to_eps_q() {
    // (Σψ(x²))² = (−1/q)·q
    for q in [3, 5, 7] {
        let fld = field(q);
        let g = gamma(&QuadSpace::diagonal(fld, &[fld.one()]).unwrap());
        let eps = if q % 4 == 1 { 1 } else { -1 };
        assert_eq!(&g.sum * &g.sum, CharValue::from_int(fld.ring(), eps * q as i64));
    }
}

#[test]
fn witt_suite_examples() {
    let fld = field(3);
    let psi = Psi::standard(fld);
    let hp = QuadSpace::hyperbolic_plane(fld);
    let nm = QuadSpace::norm_form(fld);
    let r = witt_property_suite(&hp, &nm, &WittInputs::default(), &psi, DEFAULT_ENUM_BOUND).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.gamma_sum.sign(), Some(-1));

    let split = hp.direct_sum(&hp);
    let l = Mat::from_cols(fld, 4, &[vec![fld.one(), fld.zero(), fld.zero(), fld.zero()], vec![
        fld.zero(),
        fld.zero(),
        fld.one(),
        fld.zero(),
    ]]);
    let h = Mat::from_rows(fld, vec![vec![fld.one(), fld.alpha()], vec![-fld.alpha(), fld.int(2)]]);
    let ext = ExtQuadSpace::new(Mat::from_rows(fld, vec![vec![fld.alpha()]])).unwrap();
    let inputs = WittInputs { lagrangian: Some(l), hermitian: Some(h), extension: Some(ext) };
    let r = witt_property_suite(&split, &nm, &inputs, &psi, DEFAULT_ENUM_BOUND).unwrap();
    assert_eq!(r.split, Some(true));
    assert_eq!(r.hermitian, Some(true));
    assert_eq!(r.field_change, Some(true));
    assert_eq!(r.gamma1.sign(), Some(1));
}

#[test]
fn field_change_on_norm_coordinates() {
    for q in [3, 5] {
        let fld = field(q);
        let psi = Psi::standard(fld);
        for c in fld.elements().filter(|c| !c.is_zero()).take(6) {
            let e = ExtQuadSpace::new(Mat::from_rows(fld, vec![vec![c]])).unwrap();
            let over_ext = e.gauss_sum(&psi, DEFAULT_ENUM_BOUND).unwrap();
            assert_eq!(over_ext.gamma, gamma(&e.trace_form()).gamma);
        }
    }
}

#[test]
fn eta_and_chi() {
    assert_eq!(eta(0), 1);
    assert_eq!(eta(3), -1);
    for n in 1..4 {
        // ν*O_X(1) = O(1) on X′
        assert_eq!(chi(1, n), eta(1).pow(n as u32));
        for d in -3..3 {
            assert_eq!(chi(d, n) * chi(d, n), 1);
        }
    }
}

#[test]
fn zero_q_gives_zero_space() {
    let fld = field(3);
    let (g, l, ld) = hyperbolic(fld, &SplitBundle::new(vec![0])).unwrap();
    let q = q_construction(&g, &l, &ld).unwrap();
    let f = unit_line(fld, fld.one());
    let v = induced_quadratic_space(&f, &q, Side::Twelve).unwrap();
    assert_eq!(v.space.dim(), 0);
    let r = gauss_identity_check(&f, &q, &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap();
    assert!(r.all_hold());
    assert_eq!(r.expected, 1);
}

#[test]
fn inert_point_of_length_one() {
    let fld = field(3);
    let q = length_one_q(fld);
    for c in [fld.one(), fld.int(2)] {
        let f = unit_line(fld, c);
        let v12 = induced_quadratic_space(&f, &q, Side::Twelve).unwrap();
        let v21 = induced_quadratic_space(&f, &q, Side::TwentyOne).unwrap();
        assert_eq!(v12.space.dim(), 2);
        for x in herm_theta::polyalg::enumerate_vectors(fld, 3, 2, 100).unwrap() {
            assert_eq!(v12.space.eval(&x), -v21.space.eval(&x));
        }
        assert_eq!(gamma(&v12.space).sign(), Some(-1));
        let r = gauss_identity_check(&f, &q, &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(r.expected, -1);
    }
}

#[test]
fn rank_two_over_inert_point_is_split() {
    let fld = field(3);
    let q = length_one_q(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let f = random_herm_bundle(fld, 2, &mut rng).unwrap();
        let r = gauss_identity_check(&f, &q, &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(r.expected, 1);
        assert!(r.all_hold(), "{r:?}");
    }
}

#[test]
fn split_and_mixed_support() {
    let fld = field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut split_seen = 0;
    for _ in 0..20 {
        let q = random_q(fld, 1, 1, &mut rng);
        if q.divisor().is_split_only() {
            split_seen += 1;
        }
        let f = unit_line(fld, fld.one());
        let r = gauss_identity_check(&f, &q, &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(r.expected, q.divisor().eta());
        assert!(r.all_hold(), "{r:?}");
        if q.divisor().is_split_only() {
            assert_eq!(r.gamma12.sign(), Some(1));
        }
    }
    assert!(split_seen > 0);
}

#[test]
fn larger_q_modules() {
    let fld = field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..4 {
        let q = random_q(fld, 1, 2, &mut rng);
        let f = random_herm_bundle(fld, 1, &mut rng).unwrap();
        gauss_identity_check(&f, &q, &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap().into_result().unwrap();
    }
}

#[test]
fn form_depends_only_on_the_class_in_sigma_q() {
    let fld = field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let q = random_q(fld, 1, 2, &mut rng);
    let f = unit_line(fld, fld.int(2));
    let hf = f.h_chart();
    let v = induced_quadratic_space(&f, &q, Side::Twelve).unwrap();
    let lattice = v.module().lattice().clone();
    for x in herm_theta::polyalg::enumerate_vectors(fld, 3, v.space.dim(), 1 << 20).unwrap().step_by(37) {
        let w = v.element(&x);
        let shift = Mat::from_cols(fld, 1, &[vec![Poly::from_coeffs(fld, vec![fld.alpha(), fld.one()])]]);
        let w2 = w.add(&lattice.mul(&Mat::from_fn(fld, lattice.cols(), 1, |i, _| shift[(0, 0)].scale(fld.int(i as i64 + 1)))));
        assert_eq!(q.hermitian_trace(true, &hf, &w), q.hermitian_trace(true, &hf, &w2));
        assert_eq!(v.coords(&w2), x);
        assert_eq!(v.space.eval(&x), q.hermitian_trace(true, &hf, &w));
    }
}

fn base_scalar(fld: &'static Field) -> impl Strategy<Value = Scalar> {
    (1..fld.q()).prop_map(move |i| fld.base(i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn nondegenerate_gammas_are_fourth_roots(
        q in prop::sample::select(vec![3u32, 5]),
        coeffs in prop::collection::vec(1u32..5, 1..=4),
    ) {
        let fld = field(q);
        let c: Vec<Scalar> = coeffs.iter().map(|&i| fld.base(i % (q - 1) + 1)).collect();
        let v = QuadSpace::diagonal(fld, &c).unwrap();
        prop_assert!(v.is_nondegenerate());
        prop_assert!(gamma(&v).is_fourth_root_of_unity());
    }

    #[test]
    fn gamma_is_additive(a in 0usize..4, b in 0usize..4, c in base_scalar(field(5))) {
        let fld = field(5);
        let pool = [
            QuadSpace::hyperbolic_plane(fld),
            QuadSpace::norm_form(fld),
            QuadSpace::diagonal(fld, &[c]).unwrap(),
            QuadSpace::diagonal(fld, &[fld.one(), c]).unwrap(),
        ];
        let (x, y) = (&pool[a], &pool[b]);
        let r = witt_property_suite(x, y, &WittInputs::default(), &Psi::standard(fld), DEFAULT_ENUM_BOUND).unwrap();
        prop_assert!(r.additive && r.fourth_roots);
    }
}

#[test]
fn normalization_divides_by_root_q() {
    let fld = field(5);
    let g = gamma(&QuadSpace::hyperbolic_plane(fld));
    let back = &g.gamma * &RatValue::sqrt_q_pow(fld.ring(), 2);
    assert_eq!(back, to_rational(&g.sum));
}

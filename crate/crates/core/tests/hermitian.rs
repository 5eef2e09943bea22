use herm_theta::gf::field_make;
use herm_theta::hermitian::*;
use herm_theta::linalg::Mat;
use herm_theta::projline::*;
use herm_theta::{Error, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f9() -> &'static Field {
    field_make(3, 1).unwrap()
}

fn lin(fld: &'static Field, a: i64, b: i64) -> Form {
    Form::from_dense(1, &[fld.int(b), fld.int(a)])
}

#[test]
fn hyperbolic_halves_are_lagrangian_and_transverse() {
    let fld = f9();
    let (g, l, ld) = hyperbolic(fld, &SplitBundle::new(vec![0, 1])).unwrap();
    assert!(is_lagrangian(&g, l.iota()).unwrap());
    assert!(is_lagrangian(&g, ld.iota()).unwrap());
    assert!(is_transverse(&g, &l, &ld));
    assert!(!is_transverse(&g, &l, &l));
    let q = q_construction(&g, &l, &ld).unwrap();
    assert_eq!(q.dim(), 0);
    assert_eq!(q.divisor().eta(), 1);
}

#[test]
fn line_against_tautological_line_gives_q_of_length_one() {
    let fld = f9();
    let g = standard_plane(fld);
    let one = Form::monomial(fld.one(), 0, 0);
    let l1 = rational_curve(&g, &one, &Form::zero(0)).unwrap();
    let l2 = rational_curve(&g, &lin(fld, 0, 1), &lin(fld, 1, 0)).unwrap();
    let q = q_construction(&g, &l1, &l2).unwrap();
    assert_eq!(q.dim(), 1);
    assert_eq!(q.checks().elements_checked, 9);
    assert_eq!(q.divisor().eta(), -1);
    assert!(q.divisor().points[0].inert);
    let h12 = q.h12_gram();
    assert_eq!(h12, q.h21_gram().neg());
    assert!(h12[(0, 0)].is_base() && !h12[(0, 0)].is_zero());
}

#[test]
fn random_rational_curves() {
    let fld = f9();
    let g = standard_plane(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut built = 0;
    for _ in 0..40 {
        let (a1, a2) = coprime_real_forms(fld, 1, &mut rng);
        let (k1, k2) = coprime_real_forms(fld, 2, &mut rng);
        let l1 = rational_curve(&g, &a1, &a2).unwrap();
        let l2 = rational_curve(&g, &k1, &k2).unwrap();
        match q_construction(&g, &l1, &l2) {
            Ok(q) => {
                assert_eq!(q.dim(), 3);
                built += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(built > 10);
}

#[test]
fn mixed_rank_four() {
    let fld = f9();
    let g1 = standard_plane(fld);
    let g = direct_sum(&g1, &g1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut built = 0;
    for _ in 0..10 {
        let (a1, a2) = coprime_real_forms(fld, 1, &mut rng);
        let (b1, b2) = coprime_real_forms(fld, 0, &mut rng);
        let (k1, k2) = coprime_real_forms(fld, 1, &mut rng);
        let (c1, c2) = coprime_real_forms(fld, 1, &mut rng);
        let l1 = rational_curve(&g1, &a1, &a2).unwrap().direct_sum(&rational_curve(&g1, &b1, &b2).unwrap(), &g).unwrap();
        let l2 = rational_curve(&g1, &k1, &k2).unwrap().direct_sum(&rational_curve(&g1, &c1, &c2).unwrap(), &g).unwrap();
        let u = Unitary::random(&g, 3, &mut rng).unwrap();
        let l2 = mix_unitary(&g, &u, &l2).unwrap();
        match q_construction(&g, &l1, &l2) {
            Ok(q) => {
                assert_eq!(q.dim(), 3);
                built += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(built > 2, "{built}");
}

#[test]
fn completion_is_transverse() {
    let fld = f9();
    let g = standard_plane(fld);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (a1, a2) = coprime_real_forms(fld, 1, &mut rng);
    let l1 = rational_curve(&g, &a1, &a2).unwrap();
    let l = complete_transverse(&g, &l1, &l1, &mut rng, 4).unwrap();
    assert!(is_transverse(&g, &l, &l1));
    let _ = Mat::<herm_theta::Scalar>::identity(fld, 1);
}

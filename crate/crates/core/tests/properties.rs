use g2homog::catalog::{build_entry, build_from_entry, case_ids, catalog, find_entry};
use g2homog::homogeneous::{ce_differential_raw, trivial_module};
use g2homog::liealg::{build_algebra, invariant_dims, irreducible_dims};
use g2homog::linalg::{q, QMatrix, Q};
use g2homog::multilinear::{FormBasis, KForm, Vector};
use g2homog::octonion::{chi_embedding, OctonionAlgebra, UnitQuaternion};
use g2homog::stable_forms::{classify3, phi, phi_tilde, Orbit3Class};
use proptest::prelude::*;

fn form(dim: usize, degree: usize, coeffs: &[i64]) -> KForm {
    let dense: Vec<Q> = coeffs.iter().map(|&c| q(c)).collect();
    KForm::from_dense(dim, degree, &dense).unwrap()
}

fn arb_form(dim: usize, degree: usize) -> impl Strategy<Value = KForm> {
    let len = FormBasis::get(dim, degree).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |c| form(dim, degree, &c))
}

fn arb_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |e| QMatrix::from_fn(n, n, |r, c| q(e[r * n + c])))
}

fn arb_invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    arb_matrix(n, -2, 2).prop_filter("invertible", |m| !m.det().is_zero())
}

fn arb_unit_quaternion() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-4i64..=4)
        .prop_filter("nonzero", |p| p.iter().any(|&x| x != 0))
        .prop_map(|p| UnitQuaternion::from_integers(p).unwrap())
}

use num_traits::Zero;

fn sign(p: usize, r: usize) -> Q {
    if p * r % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(p in 0usize..=4, r in 0usize..=3, seed in any::<u64>()) {
        let (a, b) = forms_from_seed(6, p, r, seed);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign(p, r)));
    }

    #[test]
    fn wedge_is_associative(a in arb_form(6, 1), b in arb_form(6, 2), c in arb_form(6, 2)) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn interior_is_an_antiderivation(a in arb_form(7, 2), b in arb_form(7, 3), v in prop::collection::vec(-3i64..=3, 7)) {
        let v = Vector::from_i64(&v);
        let lhs = a.wedge(&b).unwrap().interior(&v).unwrap();
        let rhs = &a.interior(&v).unwrap().wedge(&b).unwrap() + &a.wedge(&b.interior(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.interior(&v).unwrap().interior(&v).unwrap().is_zero());
    }

    #[test]
    fn pullback_is_functorial_and_multiplicative(a in arb_form(5, 2), b in arb_form(5, 1), m in arb_matrix(5, -2, 2), n in arb_matrix(5, -2, 2)) {
        prop_assert_eq!(a.pullback(&m).unwrap().pullback(&n).unwrap(), a.pullback(&m.mul(&n)).unwrap());
        prop_assert_eq!(a.wedge(&b).unwrap().pullback(&m).unwrap(), a.pullback(&m).unwrap().wedge(&b.pullback(&m).unwrap()).unwrap());
        prop_assert_eq!(a.pullback(&QMatrix::identity(5)).unwrap(), a);
    }

    #[test]
    fn algebra_action_is_the_derivative_of_pullback(a in arb_form(6, 3), x in arb_matrix(6, -2, 2)) {
        // P(t) = (1 + tX)* a has degree ≤ 3 in t, so the five-point stencil is exact
        let p = |t: i64| a.pullback(&QMatrix::identity(6).add(&x.scale(&q(t)))).unwrap();
        let d1 = &p(1) - &p(-1);
        let d2 = &p(2) - &p(-2);
        let c1 = (&d1.scale(&q(8)) - &d2).scale(&Q::new(1.into(), 12.into()));
        prop_assert_eq!(c1, a.algebra_action(&x).unwrap().scale(&q(-1)));
    }

    #[test]
    fn chi_is_a_homomorphism(q1 in arb_unit_quaternion(), q2 in arb_unit_quaternion(), r1 in arb_unit_quaternion(), r2 in arb_unit_quaternion()) {
        let lhs = chi_embedding(&q1.mul(&r1), &q2.mul(&r2));
        let rhs = chi_embedding(&q1, &q2).mul(&chi_embedding(&r1, &r2));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(OctonionAlgebra::split().is_automorphism(&chi_embedding(&q1, &q2)));
    }

    #[test]
    fn ce_differential_squares_to_zero(a in arb_form(7, 2), b in arb_form(7, 3)) {
        let m = trivial_module(&build_algebra("su(2)+u(1)^4").unwrap()).unwrap();
        for f in [a, b] {
            let df = ce_differential_raw(&m, &f).unwrap();
            prop_assert!(ce_differential_raw(&m, &df).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classification_is_gl_invariant(m in arb_invertible(7)) {
        prop_assert_eq!(classify3(&phi().pullback(&m).unwrap()).unwrap(), Orbit3Class::Definite);
        prop_assert_eq!(classify3(&phi_tilde().pullback(&m).unwrap()).unwrap(), Orbit3Class::Indefinite);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn case_5ii_is_symmetric_in_k_and_l(k in -4i64..=4, l in -4i64..=4) {
        let p = [k, l, -k - l];
        let swapped = [l, k, -k - l];
        prop_assume!(g2homog::catalog::check_params("5ii", &["k".into(), "l".into(), "m".into()], &p).is_ok());
        prop_assume!(g2homog::catalog::check_params("5ii", &["k".into(), "l".into(), "m".into()], &swapped).is_ok());
        let a = build_entry("5ii", Some(&p)).unwrap();
        let b = build_entry("5ii", Some(&swapped)).unwrap();
        prop_assert_eq!(invariant_dims(&a.module), invariant_dims(&b.module));
        prop_assert_eq!(irreducible_dims(&a.module).unwrap(), irreducible_dims(&b.module).unwrap());
    }

    #[test]
    fn case_4ii_mirror_has_the_same_dims(k in -3i64..=3, m in -3i64..=3) {
        let a = build_entry("4ii", Some(&[k, m])).unwrap();
        let mut mirror = find_entry("4ii-mirror").unwrap().clone();
        mirror.params = vec![-k, -m];
        let b = build_from_entry(mirror).unwrap();
        prop_assert_eq!(invariant_dims(&a.module), invariant_dims(&b.module));
    }
}

fn forms_from_seed(dim: usize, p: usize, r: usize, seed: u64) -> (KForm, KForm) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut make = |k: usize| {
        let c: Vec<i64> = (0..FormBasis::get(dim, k).len()).map(|_| rng.gen_range(-3..=3)).collect();
        form(dim, k, &c)
    };
    let a = make(p);
    (a, make(r))
}

#[test]
fn jacobi_and_closure_hold_on_every_catalog_algebra() {
    for e in &catalog().entries {
        let built = build_from_entry(e.clone()).unwrap();
        if let Some(g) = &built.algebra {
            assert!(g.jacobi_holds(), "{}", e.id);
            assert!(g.closure_holds(), "{}", e.id);
            assert!(g.form_is_invariant(), "{}", e.id);
        }
        assert!(built.module.is_representation(), "{}", e.id);
    }
}

#[test]
fn case_list_is_closed() {
    let ids = case_ids();
    for id in &ids {
        assert_eq!(&find_entry(id).unwrap().case, id);
    }
    for e in &catalog().entries {
        assert!(ids.contains(&e.case), "{}", e.case);
        assert_eq!(find_entry(&e.id).unwrap().id, e.id);
    }
    assert!(find_entry("9z").is_err());
}

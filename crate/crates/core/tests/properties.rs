use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realforms_core::arith::{GaussianRational, NumLaurent, Rational};
use realforms_core::classifier::{are_isomorphic, moduli_invariant};
use realforms_core::family::{embed_n_matrix, fiber_element, fiber_matrices, family_m_matrix, FamilySpec};
use realforms_core::groups::{
    galois_act, is_cocycle, j_matrix, sd_mul, twisted_conj, LMat2, SemidirectElem,
};
use realforms_core::p1::{
    has_real_points, lorentz_of, mat4_apply, mat4_mul, orbit_classify, preserves_q0, QForm,
    SL2C,
};
use realforms_core::sample;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn laurent() -> impl Strategy<Value = NumLaurent> {
    any::<u64>().prop_map(|s| sample::laurent(&mut rng(s), -3, 4, 4))
}

fn sd() -> impl Strategy<Value = SemidirectElem> {
    any::<u64>().prop_map(|s| sample::semidirect(&mut rng(s), 3))
}

fn sl2c() -> impl Strategy<Value = SL2C> {
    any::<u64>().prop_map(|s| {
        let mut r = rng(s);
        let a = sample::nonzero_gaussian(&mut r, 4, 3);
        let b = sample::gaussian(&mut r, 4, 3);
        let c = sample::gaussian(&mut r, 4, 3);
        let d = &(&GaussianRational::one() + &(&b * &c)) * &a.inv().unwrap();
        SL2C::new([[a, b], [c, d]]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rationals_are_canonical(x in rational(), y in rational()) {
        let z = &x * &y + &x;
        prop_assert!(z.denom() > &0.into());
        prop_assert_eq!(z.to_string().parse::<Rational>().unwrap(), z);
    }

    #[test]
    fn conjugation_is_a_ring_involution(p in laurent(), q in laurent()) {
        prop_assert_eq!((&p * &q).conjugate(), &p.conjugate() * &q.conjugate());
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn ord_is_additive(p in laurent(), q in laurent()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!((&p * &q).ord(), Some(p.ord().unwrap() + q.ord().unwrap()));
    }

    #[test]
    fn scale_substitution_is_a_homomorphism(p in laurent(), q in laurent(), c in rational()) {
        prop_assume!(!c.is_zero());
        let c = GaussianRational::real(c);
        let s = |x: &NumLaurent| x.substitute_scale(&c).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn units_are_monomials(p in laurent()) {
        prop_assert_eq!(p.is_unit(), p.terms().count() == 1);
    }

    #[test]
    fn sd_mul_is_associative(x in sd(), y in sd(), z in sd()) {
        prop_assert!(sd_mul(&x, &sd_mul(&y, &z)).proj_eq(&sd_mul(&sd_mul(&x, &y), &z)));
    }

    #[test]
    fn inverses(x in sd()) {
        prop_assert!(sd_mul(&x, &x.inverse()).is_identity());
        prop_assert!(sd_mul(&x.inverse(), &x).is_identity());
    }

    #[test]
    fn galois_is_an_involutive_automorphism(x in sd(), y in sd()) {
        prop_assert!(galois_act(&galois_act(&x)).proj_eq(&x));
        prop_assert!(galois_act(&sd_mul(&x, &y)).proj_eq(&sd_mul(&galois_act(&x), &galois_act(&y))));
    }

    #[test]
    fn twisting_preserves_cocycles(phi in sd(), seed in any::<u64>(), n in 1u32..=3) {
        let s = sample::fiber_point(&mut rng(seed), n as usize + 1, 5, 3);
        let psi = fiber_element(FamilySpec::new(n, n), &s).unwrap();
        prop_assert!(is_cocycle(&twisted_conj(&phi, &psi).unwrap()));
        let cob = twisted_conj(&phi, &SemidirectElem::identity()).unwrap();
        prop_assert!(is_cocycle(&cob));
    }

    #[test]
    fn cocycle_bridge_for_real_matrices(seed in any::<u64>(), family in any::<bool>(), n in 0u32..=2) {
        let mut r = rng(seed);
        let m = if family {
            fiber_matrices(FamilySpec::new(n, 1), &sample::fiber_point(&mut r, 2, 5, 3)).unwrap().0
        } else {
            sample::real_invertible_matrix(&mut r, 4)
        };
        let j: LMat2 = j_matrix();
        let bridge = (&(&m * &j) * &m).proj_eq(&j);
        let x = SemidirectElem::new(&m, GaussianRational::one()).unwrap();
        prop_assert_eq!(is_cocycle(&x), bridge);
        if family {
            prop_assert!(bridge);
        }
    }

    #[test]
    fn embedding_is_multiplicative(seed in any::<u64>(), n in 0u32..=3) {
        let mut r = rng(seed);
        let a = sample::invertible_matrix(&mut r, 3);
        let b = sample::invertible_matrix(&mut r, 3);
        let lhs = embed_n_matrix(&(&a * &b), n);
        let rhs = &embed_n_matrix(&a, n) * &embed_n_matrix(&b, n);
        prop_assert!(lhs.proj_eq(&rhs));
    }

    #[test]
    fn parametric_evaluation_matches_numeric(seed in any::<u64>(), n in 0u32..=3, m in 0u32..=3) {
        let spec = FamilySpec::new(n, m);
        let s = sample::fiber_point(&mut rng(seed), spec.nparams(), 6, 4);
        let sym = family_m_matrix(spec).evaluate_params(spec.nparams(), &s).unwrap();
        prop_assert_eq!(sym, fiber_matrices(spec, &s).unwrap().0);
    }

    #[test]
    fn invariant_equality_decides_isomorphism(
        n in 1u32..=4,
        s in prop::collection::vec(-2i64..=2, 4),
        t in prop::collection::vec(-2i64..=2, 4),
    ) {
        let (s, t): (Vec<Rational>, Vec<Rational>) =
            (s.into_iter().map(Rational::from).collect(), t.into_iter().map(Rational::from).collect());
        let iso = are_isomorphic(n, &s, &t).unwrap();
        prop_assert_eq!(iso, are_isomorphic(n, &t, &s).unwrap());
        prop_assert_eq!(moduli_invariant(n, &s).unwrap() == moduli_invariant(n, &t).unwrap(), iso);
    }

    #[test]
    fn rescaled_points_are_isomorphic(n in 1u32..=4, s in prop::collection::vec(rational(), 4), e in rational()) {
        prop_assume!(!e.is_zero());
        let t: Vec<Rational> = s.iter().enumerate().map(|(i, x)| x * &e.pow(2 * i as i64 + 1).unwrap()).collect();
        prop_assert!(are_isomorphic(n, &s, &t).unwrap());
        prop_assert_eq!(moduli_invariant(n, &s).unwrap(), moduli_invariant(n, &t).unwrap());
    }

    #[test]
    fn lorentz_is_a_homomorphism(a in sl2c(), b in sl2c()) {
        let (la, lb) = (lorentz_of(&a).unwrap(), lorentz_of(&b).unwrap());
        prop_assert!(preserves_q0(&la));
        prop_assert_eq!(lorentz_of(&a.mul(&b)).unwrap(), mat4_mul(&la, &lb));
        prop_assert_eq!(lorentz_of(&a.neg()).unwrap(), la);
    }

    #[test]
    fn orbits_are_lorentz_invariant(a in sl2c(), p in prop::array::uniform4(rational())) {
        prop_assume!(p.iter().any(|x| !x.is_zero()));
        let o = orbit_classify(&p).unwrap();
        prop_assert_eq!(orbit_classify(&mat4_apply(&lorentz_of(&a).unwrap(), &p)).unwrap(), o);
    }

    #[test]
    fn real_points_survive_congruence(
        d in prop::array::uniform3(rational()),
        off in prop::array::uniform3(rational()),
        p in prop::collection::vec(prop::collection::vec(rational(), 3), 3),
    ) {
        let m = vec![
            vec![d[0].clone(), off[0].clone(), off[1].clone()],
            vec![off[0].clone(), d[1].clone(), off[2].clone()],
            vec![off[1].clone(), off[2].clone(), d[2].clone()],
        ];
        let q = QForm::new(m).unwrap();
        let det3 = |a: &[Vec<Rational>]| {
            &a[0][0] * &(&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
                - &a[0][1] * &(&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
                + &a[0][2] * &(&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
        };
        prop_assume!(!det3(&p).is_zero());
        prop_assert_eq!(has_real_points(&q.congruent(&p)), has_real_points(&q));
    }
}

//! Randomized invariants of the algebra, the engine and the constructions.

use proptest::prelude::*;
use virmod_core::algebra::{bracket, bracket_elements, VirasoroElement};
use virmod_core::cm_compat::{cm_act, EParams, TBasisElement};
use virmod_core::loopmod::{l_act, n_act, weight_of, LParams, LoopAction, LoopElement, LoopModule, NParams};
use virmod_core::pbw::{PbwMonomial, VacuumSpec};
use virmod_core::structure::{phi, tau, ParitySplitter};
use virmod_core::Scalar;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn small() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn lambda() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(s(2)),
        Just(s(-1)),
        Just(Scalar::ratio(1, 2)),
        Just(Scalar::i()),
        Just(s(1))
    ]
}

fn spec() -> impl Strategy<Value = VacuumSpec> {
    prop_oneof![
        small().prop_map(VacuumSpec::verma),
        (small(), small()).prop_map(|(a, b)| VacuumSpec::new(1, vec![a, b]).unwrap()),
        (small(), small(), small()).prop_map(|(a, b, c)| VacuumSpec::new(2, vec![a, b, c]).unwrap()),
    ]
}

fn element(r: u32) -> impl Strategy<Value = LoopElement> {
    let mono = (0u32..=2, proptest::collection::vec(0u32..=1, r as usize)).prop_map(|(d, bs)| {
        let mut pairs = vec![(-1i64, d)];
        pairs.extend(bs.into_iter().enumerate().map(|(i, e)| (i as i64, e)));
        PbwMonomial::from_pairs(&pairs)
    });
    proptest::collection::vec((mono, -2i64..=2, small()), 1..=3)
        .prop_map(|ts| LoopElement::from_terms(ts.into_iter().map(|(m, n, c)| ((n, m), c))))
}

fn with_element() -> impl Strategy<Value = (VacuumSpec, LoopElement)> {
    spec().prop_flat_map(|sp| {
        let r = sp.r();
        (Just(sp), element(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_and_antisymmetry(m in -8i64..=8, n in -8i64..=8, k in -8i64..=8, c in small()) {
        let (x, y, z) = (VirasoroElement::d(m), VirasoroElement::d(n).add(&VirasoroElement::z()), VirasoroElement::d(k).scale(&c));
        prop_assert_eq!(bracket(m, n), bracket(n, m).scale(&-Scalar::ONE));
        let j = bracket_elements(&x, &bracket_elements(&y, &z))
            .add(&bracket_elements(&y, &bracket_elements(&z, &x)))
            .add(&bracket_elements(&z, &bracket_elements(&x, &y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn loop_module_axiom((sp, v) in with_element(), lam in lambda(), a in small(), b in small(), m in -4i64..=4, n in -4i64..=4) {
        let p = LParams::induced(sp, lam, a, b).unwrap();
        let module = LoopModule::new(p);
        let mn = module.act(m, &module.act(n, &v).unwrap()).unwrap();
        let nm = module.act(n, &module.act(m, &v).unwrap()).unwrap();
        let rhs = module.act(m + n, &v).unwrap().scale(&s(n - m));
        prop_assert_eq!(mn.sub(&nm), rhs);
    }

    #[test]
    fn weight_shifts_by_k((sp, v) in with_element(), lam in lambda(), a in small(), k in -4i64..=4, j in -3i64..=3) {
        let p = LParams::induced(sp, lam, a.clone(), s(0)).unwrap();
        let hom = LoopElement::from_terms(v.terms().iter().map(|((_, m), c)| ((j, m.clone()), c.clone())));
        prop_assume!(!hom.is_zero());
        let img = l_act(&p, k, &hom).unwrap();
        if !img.is_zero() {
            prop_assert_eq!(weight_of(&a, &img).unwrap(), &weight_of(&a, &hom).unwrap() + &s(k));
        }
    }

    #[test]
    fn n_module_axiom(sp in spec(), a in small(), twist in small(), m in -4i64..=4, n in -4i64..=4, j in -2i64..=2) {
        let r = sp.r();
        let np = NParams { spec: sp, a, twist };
        let beta = PbwMonomial::from_pairs(&(0..r as i64).map(|i| (i, 1)).collect::<Vec<_>>());
        let v = LoopElement::term(beta, j, s(1));
        let mn = n_act(&np, m, &n_act(&np, n, &v).unwrap()).unwrap();
        let nm = n_act(&np, n, &n_act(&np, m, &v).unwrap()).unwrap();
        prop_assert_eq!(mn.sub(&nm), n_act(&np, m + n, &v).unwrap().scale(&s(n - m)));
    }

    #[test]
    fn tau_is_injective_on_slices((sp, v) in with_element(), a in small()) {
        prop_assume!(!v.is_zero());
        let p = LParams::induced(sp, s(2), a, s(1)).unwrap();
        prop_assert!(!tau(&p, &v).is_zero());
        // the top d(-1) layer of tau(v) is v's top layer raised once
        let top = v.max_d_minus_one_degree();
        prop_assert_eq!(tau(&p, &v).max_d_minus_one_degree(), top + 1);
    }

    #[test]
    fn parity_split_is_exact_and_idempotent(bp in prop_oneof![Just(1i64), Just(-2)], a in small(), coeffs in proptest::collection::vec(small(), 1..=5), n in -4i64..=4) {
        let p = LParams::induced(VacuumSpec::verma(s(bp)), s(-1), a, s(bp + 1)).unwrap();
        let split = ParitySplitter::new(&p).unwrap();
        let v = LoopElement::from_terms(coeffs.iter().enumerate().map(|(k, c)| ((n, PbwMonomial::d_minus_one_power(k as u32)), c.clone())));
        let (e, o) = split.split(&v).unwrap();
        prop_assert_eq!(e.add(&o), v);
        let (ee, eo) = split.split(&e).unwrap();
        prop_assert_eq!(ee, e);
        prop_assert!(eo.is_zero());
        let (oe, oo) = split.split(&o).unwrap();
        prop_assert!(oe.is_zero());
        prop_assert_eq!(oo, o);
    }

    #[test]
    fn duality_on_the_oracle(lam in prop_oneof![Just(s(2)), Just(Scalar::ratio(1, 2)), Just(s(-3))], b in small(), g in small(), p in small(), k in 0u32..=3, i in -2i64..=2, n in -3i64..=3) {
        // E(λ, b, γ, p) ≅ E(λ^{-1}, b, 1 - γ - p, p) via phi, with T_i^k = (-1)^k d(-1)^k w0 ⊗ t^i
        let e = EParams::new(lam.clone(), b.clone(), g, p).unwrap();
        let dual = e.dual();
        let t = TBasisElement::term(k, i, s(1));
        let lhs = phi(&lam, &b, &cm_act(&e, n, &t).unwrap().to_loop()).unwrap();
        let mapped = TBasisElement::from_loop(&phi(&lam, &b, &t.to_loop()).unwrap()).unwrap();
        let rhs = cm_act(&dual, n, &mapped).unwrap().to_loop();
        prop_assert_eq!(lhs, rhs);
    }
}

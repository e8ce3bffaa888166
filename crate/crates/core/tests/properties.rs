use dertorus::exact::{frac, in_jk, jet_at_one, multisets, p_k, LaurentPoly, Lattice, QVec, Rational};
use dertorus::fields::{act_a_field, act_ader, FieldVector, ModuleParams};
use dertorus::gl::DominantWeight;
use dertorus::sample::Sampler;
use dertorus::tcalc::{in_ik, t_mod_i2_reduce, TElement, TkSpec};
use dertorus::witt::{DerElement, SimpleAlgebra, TauElement};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const D: usize = 2;

fn lattice() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(-3i64..=3, D).prop_map(Lattice::new)
}

fn nonzero_lattice() -> impl Strategy<Value = Lattice> {
    lattice().prop_filter("nonzero", |l| !l.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn qvec() -> impl Strategy<Value = QVec> {
    prop::collection::vec(rational(), D).prop_map(QVec::new)
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((lattice(), rational()), 0..4).prop_map(|terms| {
        let mut f = LaurentPoly::zero(D);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    })
}

fn der() -> impl Strategy<Value = DerElement> {
    prop::collection::vec((qvec(), lattice()), 0..3).prop_map(|terms| {
        let mut x = DerElement::zero(D);
        for (u, r) in terms {
            x.add_term(u, r);
        }
        x
    })
}

fn telement() -> impl Strategy<Value = TElement> {
    prop::collection::vec((qvec(), lattice()), 0..3).prop_map(|terms| {
        let mut x = TElement::zero(D);
        for (u, r) in terms {
            x.add_term(u, r);
        }
        x
    })
}

fn tk_spec(k: usize) -> impl Strategy<Value = TkSpec> {
    (qvec().prop_filter("nonzero", |u| !u.is_zero()), lattice(), prop::collection::vec(nonzero_lattice(), k))
        .prop_map(|(u, r, ms)| TkSpec::new(u, r, ms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(D), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_roundtrip(a in poly()) {
        let parsed = LaurentPoly::parse_in(D, &a.to_string()).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn euler_derivations_commute_and_obey_leibniz(a in poly(), b in poly()) {
        for i in 0..D {
            for j in 0..D {
                let ij = a.euler_derive(i).unwrap().euler_derive(j).unwrap();
                let ji = a.euler_derive(j).unwrap().euler_derive(i).unwrap();
                prop_assert_eq!(ij, ji);
            }
            let lhs = (&a * &b).euler_derive(i).unwrap();
            let rhs = &(&a.euler_derive(i).unwrap() * &b) + &(&a * &b.euler_derive(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivations_act_as_derivations(x in der(), a in poly(), b in poly()) {
        let lhs = x.act(&(&a * &b)).unwrap();
        let rhs = &(&x.act(&a).unwrap() * &b) + &(&a * &x.act(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn der_action_is_a_representation(x in der(), y in der(), f in poly()) {
        let lhs = x.bracket(&y).unwrap().act(&f).unwrap();
        let rhs = &x.act(&y.act(&f).unwrap()).unwrap() - &y.act(&x.act(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn center_canonical_form_is_idempotent(u in qvec(), r in lattice(), c in rational()) {
        let k = TauElement::center_term(3, u.clone(), r.clone()).unwrap();
        prop_assert_eq!(&k.canonicalize(), &k);
        // adding an exact form r ⊗ t^r changes nothing
        let exact = TauElement::center_term(3, r.to_qvec().scale(&c), r.clone()).unwrap();
        prop_assert_eq!(&(&k + &exact), &k);
    }

    #[test]
    fn t_bracket_is_a_lie_bracket(x in telement(), y in telement(), z in telement()) {
        prop_assert!((&x.bracket(&y).unwrap() + &y.bracket(&x).unwrap()).is_zero());
        let j = &(&x.bracket(&y.bracket(&z).unwrap()).unwrap() + &y.bracket(&z.bracket(&x).unwrap()).unwrap())
            + &z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn generators_sit_exactly_at_their_level(spec in (1usize..=4).prop_flat_map(tk_spec)) {
        let x = spec.expand();
        let k = spec.k();
        prop_assert!(in_ik(&x, k));
        prop_assert!(!in_ik(&x, k + 1));
    }

    #[test]
    fn jets_of_products_of_k_factors_vanish_below_k(ms in prop::collection::vec(nonzero_lattice(), 1..=4)) {
        let f = p_k(D, &ms).unwrap();
        let k = ms.len();
        prop_assert!(in_jk(&f, k, false));
        let jets = jet_at_one(&f, k);
        let top = multisets(D, k).into_iter().any(|key| !jets[&key].is_zero());
        prop_assert!(top);
    }

    #[test]
    fn reduction_is_linear_and_kills_i2(x in telement(), y in telement(), spec in tk_spec(2)) {
        let sum = t_mod_i2_reduce(&(&x + &y));
        let (mx, my) = (t_mod_i2_reduce(&x), t_mod_i2_reduce(&y));
        for i in 0..D {
            for j in 0..D {
                prop_assert_eq!(&sum[i][j], &(&mx[i][j] + &my[i][j]));
            }
        }
        prop_assert!(t_mod_i2_reduce(&spec.expand()).iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn translation_is_associative(m in lattice(), n in lattice(), v in lattice(), i in 0usize..2) {
        let field = FieldVector::basis(v, i);
        let tm = LaurentPoly::monomial(m, frac(1, 1));
        let tn = LaurentPoly::monomial(n, frac(1, 1));
        let lhs = act_a_field(&(&tm * &tn), &field).unwrap();
        let rhs = act_a_field(&tm, &act_a_field(&tn, &field).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_field_module_axiom(seed in any::<u64>()) {
        let p = ModuleParams::new(DominantWeight::new(vec![1], frac(5, 7)).unwrap(), QVec::new(vec![frac(1, 3), frac(-2, 5)])).unwrap();
        let s = Sampler::new(D, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (s.ader(&mut rng), s.ader(&mut rng));
        let v = FieldVector::from_dense(s.lattice(&mut rng), &s.coords(&mut rng, p.n()));
        let lhs = act_ader(&x.bracket(&y).unwrap(), &v, &p).unwrap();
        let rhs = act_ader(&x, &act_ader(&y, &v, &p).unwrap(), &p).unwrap()
            .sub(&act_ader(&y, &act_ader(&x, &v, &p).unwrap(), &p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn toroidal_jacobi(seed in any::<u64>()) {
        let g = SimpleAlgebra::sl2();
        let s = Sampler::new(D, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (s.tau(&mut rng, 3), s.tau(&mut rng, 3), s.tau(&mut rng, 3));
        let b = |a: &TauElement, c: &TauElement| a.bracket(c, &g).unwrap();
        let j = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
        prop_assert!(j.is_zero(), "{}", j);
    }
}

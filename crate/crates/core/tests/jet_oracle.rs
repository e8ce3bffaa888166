mod common;

use dertorus::exact::{frac, LaurentPoly, Lattice};
use dertorus::sample::Sampler;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn samples(k: usize) -> Vec<LaurentPoly> {
    let s = Sampler::new(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
    let mut out: Vec<LaurentPoly> = (0..200).map(|_| s.poly(&mut rng)).collect();
    // elements that are in the ideal, or in it up to a constant
    let one = LaurentPoly::one(2);
    let e1 = LaurentPoly::monomial(Lattice::new(vec![1, 0]), frac(1, 1));
    let e2 = LaurentPoly::monomial(Lattice::new(vec![0, 1]), frac(1, 1));
    let a = &one - &e1;
    let b = &one - &e2;
    out.push(&(&a * &b) * &a);
    out.push(&(&a * &b) + &one);
    out.push(&(&a * &a) - &(&b * &b));
    out
}

#[test]
fn jet_oracle_matches_brute_force_spans() {
    for k in 1..=3 {
        let check = common::check_box(k, 2, &samples(k));
        assert!(check.generators > 0);
        assert!(check.generators_vanish, "k={k}: a generator has a nonzero low jet");
        assert_eq!(check.span_dim, check.kernel_dim, "k={k}");
        assert_eq!(check.with_constants_dim, check.kernel_dim_mod_constants, "k={k}");
        assert!(check.random_agree, "k={k}: oracle and span membership disagree");
    }
}

#[test]
fn box_dimensions() {
    // codimension of J_k in a large enough box is the number of jets of order < k
    let check = common::check_box(2, 2, &[]);
    assert_eq!(check.kernel_dim, 25 - 3);
    assert_eq!(check.kernel_dim_mod_constants, 25 - 2);
}

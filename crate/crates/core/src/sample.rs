//! Random elements for property checks. Exponents are drawn uniformly from
//! the box `[-radius, radius]^d`, coefficients from small integers with an
//! occasional small denominator.

use rand::Rng;

use crate::exact::{frac, LaurentPoly, Lattice, QVec, Rational};
use crate::tcalc::TElement;
use crate::witt::{ADerElement, DerElement, TauElement};

#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    pub dim: usize,
    pub radius: i64,
    pub coeff: i64,
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(dim: usize, radius: i64) -> Self {
        Sampler { dim, radius, coeff: 3, max_terms: 3 }
    }

    pub fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        let num = rng.gen_range(-self.coeff..=self.coeff);
        let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
        frac(num, den)
    }

    pub fn nonzero_rational<R: Rng>(&self, rng: &mut R) -> Rational {
        loop {
            let c = self.rational(rng);
            if c != Rational::from_integer(0.into()) {
                return c;
            }
        }
    }

    pub fn lattice<R: Rng>(&self, rng: &mut R) -> Lattice {
        Lattice::new((0..self.dim).map(|_| rng.gen_range(-self.radius..=self.radius)).collect())
    }

    pub fn nonzero_lattice<R: Rng>(&self, rng: &mut R) -> Lattice {
        loop {
            let r = self.lattice(rng);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn qvec<R: Rng>(&self, rng: &mut R) -> QVec {
        QVec::new((0..self.dim).map(|_| self.rational(rng)).collect())
    }

    fn num_terms<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(1..=self.max_terms.max(1))
    }

    pub fn der<R: Rng>(&self, rng: &mut R) -> DerElement {
        let mut x = DerElement::zero(self.dim);
        for _ in 0..self.num_terms(rng) {
            x.add_term(self.qvec(rng), self.lattice(rng));
        }
        x
    }

    pub fn poly<R: Rng>(&self, rng: &mut R) -> LaurentPoly {
        let mut f = LaurentPoly::zero(self.dim);
        for _ in 0..self.num_terms(rng) {
            f.add_term(self.lattice(rng), self.rational(rng));
        }
        f
    }

    pub fn ader<R: Rng>(&self, rng: &mut R) -> ADerElement {
        ADerElement { poly: self.poly(rng), der: self.der(rng) }
    }

    pub fn tau<R: Rng>(&self, rng: &mut R, g_dim: usize) -> TauElement {
        let mut x = TauElement::from_der(g_dim, self.der(rng));
        for _ in 0..self.num_terms(rng) {
            let a = rng.gen_range(0..g_dim);
            let t = TauElement::loop_term(g_dim, a, self.lattice(rng), self.rational(rng))
                .expect("index in range");
            x = &x + &t;
        }
        if rng.gen_bool(0.5) {
            let k = TauElement::center_term(g_dim, self.qvec(rng), self.lattice(rng))
                .expect("dimensions agree");
            x = &x + &k;
        }
        x
    }

    pub fn telement<R: Rng>(&self, rng: &mut R) -> TElement {
        let mut x = TElement::zero(self.dim);
        for _ in 0..self.num_terms(rng) {
            x.add_term(self.qvec(rng), self.lattice(rng));
        }
        x
    }

    /// `count` nonzero shifts.
    pub fn shifts<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<Lattice> {
        (0..count).map(|_| self.nonzero_lattice(rng)).collect()
    }

    pub fn coords<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational(rng)).collect()
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::lie::LieAlgebra;
use crate::error::{check_dim, Result};
use crate::exact::{LaurentPoly, Lattice, QVec, Rational};

/// A finite sum `sum_r D(u_r, r)` where `D(u, r) = sum_i u_i t^r t_i d/dt_i`.
///
/// `D(u, r)` is linear in `u`, so one vector is kept per exponent `r`; zero
/// vectors are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerElement {
    dim: usize,
    terms: BTreeMap<Lattice, QVec>,
}

impl DerElement {
    pub fn zero(dim: usize) -> Self {
        DerElement { dim, terms: BTreeMap::new() }
    }

    /// The single term `D(u, r)`.
    pub fn term(u: QVec, r: Lattice) -> Result<Self> {
        check_dim(u.dim(), r.dim())?;
        let mut x = Self::zero(u.dim());
        x.add_term(u, r);
        Ok(x)
    }

    /// The basis element `D^i(r) = D(e_i, r)`.
    pub fn basis(axis: usize, r: Lattice) -> Self {
        let dim = r.dim();
        Self::term(QVec::unit(dim, axis), r).expect("dimensions agree")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Lattice, &QVec)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, u: QVec, r: Lattice) {
        debug_assert_eq!(u.dim(), self.dim);
        debug_assert_eq!(r.dim(), self.dim);
        if u.is_zero() {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(v) => {
                v.add_scaled(&u, &Rational::from_integer(1.into()));
                if v.is_zero() {
                    self.terms.remove(&r);
                }
            }
            None => {
                self.terms.insert(r, u);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        if !c.is_zero() {
            for (r, u) in &self.terms {
                out.add_term(u.scale(c), r.clone());
            }
        }
        out
    }

    /// `[D(u,r), D(v,s)] = D((u,s)v - (v,r)u, r+s)`, extended bilinearly.
    pub fn bracket(&self, other: &DerElement) -> Result<DerElement> {
        check_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (r, u) in &self.terms {
            for (s, v) in &other.terms {
                let mut w = v.scale(&u.pair(s));
                w.add_scaled(u, &-v.pair(r));
                out.add_term(w, r + s);
            }
        }
        Ok(out)
    }

    /// The derivation action `D(u,r) t^s = (u,s) t^{r+s}` on `A`.
    pub fn act(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        check_dim(self.dim, f.dim())?;
        let mut out = LaurentPoly::zero(self.dim);
        for (r, u) in &self.terms {
            for (s, c) in f.terms() {
                let k = u.pair(s);
                if !k.is_zero() {
                    out.add_term(r + s, k * c);
                }
            }
        }
        Ok(out)
    }
}

impl Add for &DerElement {
    type Output = DerElement;
    fn add(self, rhs: &DerElement) -> DerElement {
        assert_eq!(self.dim, rhs.dim, "derivation dimension mismatch");
        let mut out = self.clone();
        for (r, u) in &rhs.terms {
            out.add_term(u.clone(), r.clone());
        }
        out
    }
}

impl Sub for &DerElement {
    type Output = DerElement;
    fn sub(self, rhs: &DerElement) -> DerElement {
        self + &-rhs
    }
}

impl Neg for &DerElement {
    type Output = DerElement;
    fn neg(self) -> DerElement {
        DerElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(r, u)| (r.clone(), -u)).collect(),
        }
    }
}

impl fmt::Display for DerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, u)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "D({u},{r})")?;
        }
        Ok(())
    }
}

/// An element `f + X` of the Lie algebra `A ⊕ Der A`, where `A` is abelian
/// and `[X, f] = X(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ADerElement {
    pub poly: LaurentPoly,
    pub der: DerElement,
}

impl ADerElement {
    pub fn zero(dim: usize) -> Self {
        ADerElement { poly: LaurentPoly::zero(dim), der: DerElement::zero(dim) }
    }

    pub fn from_poly(poly: LaurentPoly) -> Self {
        let dim = poly.dim();
        ADerElement { poly, der: DerElement::zero(dim) }
    }

    pub fn from_der(der: DerElement) -> Self {
        let dim = der.dim();
        ADerElement { poly: LaurentPoly::zero(dim), der }
    }

    pub fn dim(&self) -> usize {
        self.der.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.der.is_zero()
    }

    /// `[f + X, g + Y] = X(g) - Y(f) + [X, Y]`.
    pub fn bracket(&self, other: &ADerElement) -> Result<ADerElement> {
        check_dim(self.dim(), other.dim())?;
        let poly = &self.der.act(&other.poly)? - &other.der.act(&self.poly)?;
        Ok(ADerElement { poly, der: self.der.bracket(&other.der)? })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ADerElement { poly: self.poly.scale(c), der: self.der.scale(c) }
    }
}

impl Add for &ADerElement {
    type Output = ADerElement;
    fn add(self, rhs: &ADerElement) -> ADerElement {
        ADerElement { poly: &self.poly + &rhs.poly, der: &self.der + &rhs.der }
    }
}

impl fmt::Display for ADerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]", self.poly, self.der)
    }
}

/// `Der A` in a fixed dimension.
#[derive(Clone, Copy, Debug)]
pub struct DerAlgebra {
    pub dim: usize,
}

impl LieAlgebra for DerAlgebra {
    type Elem = DerElement;

    fn name(&self) -> String {
        format!("Der A (d={})", self.dim)
    }
    fn bracket(&self, x: &DerElement, y: &DerElement) -> Result<DerElement> {
        check_dim(self.dim, x.dim())?;
        x.bracket(y)
    }
    fn add(&self, x: &DerElement, y: &DerElement) -> DerElement {
        x + y
    }
    fn is_zero(&self, x: &DerElement) -> bool {
        x.is_zero()
    }
}

/// `A ⊕ Der A` in a fixed dimension.
#[derive(Clone, Copy, Debug)]
pub struct ADerAlgebra {
    pub dim: usize,
}

impl LieAlgebra for ADerAlgebra {
    type Elem = ADerElement;

    fn name(&self) -> String {
        format!("A + Der A (d={})", self.dim)
    }
    fn bracket(&self, x: &ADerElement, y: &ADerElement) -> Result<ADerElement> {
        check_dim(self.dim, x.dim())?;
        x.bracket(y)
    }
    fn add(&self, x: &ADerElement, y: &ADerElement) -> ADerElement {
        x + y
    }
    fn is_zero(&self, x: &ADerElement) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn l(c: &[i64]) -> Lattice {
        Lattice::new(c.to_vec())
    }

    fn d(u: &[i64], r: &[i64]) -> DerElement {
        DerElement::term(QVec::from_ints(u), l(r)).unwrap()
    }

    #[test]
    fn bracket_example() {
        // [D(e1,e2), D(e2,e1)] = D(e2 - e1, e1 + e2)
        assert_eq!(d(&[1, 0], &[0, 1]).bracket(&d(&[0, 1], &[1, 0])).unwrap(), d(&[-1, 1], &[1, 1]));
    }

    #[test]
    fn cartan_is_abelian() {
        assert!(d(&[1, 0], &[0, 0]).bracket(&d(&[0, 1], &[0, 0])).unwrap().is_zero());
        let x = &d(&[2, 3], &[0, 0]) + &d(&[-1, 5], &[0, 0]);
        assert!(x.bracket(&d(&[7, 1], &[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn self_bracket_vanishes() {
        let x = &d(&[1, 2], &[3, -1]) + &d(&[0, 4], &[-2, 2]);
        assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn action_examples() {
        let t20 = LaurentPoly::monomial(l(&[2, 0]), q(1));
        assert_eq!(
            d(&[1, 0], &[1, 1]).act(&t20).unwrap(),
            LaurentPoly::monomial(l(&[3, 1]), q(2))
        );
        assert!(d(&[4, -3], &[2, 5]).act(&LaurentPoly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn mixed_brackets() {
        let a = ADerElement::from_poly(LaurentPoly::monomial(l(&[1, 0]), q(1)));
        let b = ADerElement::from_poly(LaurentPoly::monomial(l(&[0, 1]), q(1)));
        assert!(a.bracket(&b).unwrap().is_zero());

        let x = ADerElement::from_der(d(&[1, 0], &[0, 1]));
        let t20 = ADerElement::from_poly(LaurentPoly::monomial(l(&[2, 0]), q(1)));
        assert_eq!(
            x.bracket(&t20).unwrap(),
            ADerElement::from_poly(LaurentPoly::monomial(l(&[2, 1]), q(2)))
        );

        // [D(u,0), t^m] = (u,m) t^m
        let h = ADerElement::from_der(d(&[3, -2], &[0, 0]));
        let tm = ADerElement::from_poly(LaurentPoly::monomial(l(&[1, 4]), q(1)));
        assert_eq!(h.bracket(&tm).unwrap(), tm.scale(&q(-5)));
    }

    #[test]
    fn dimension_mismatch() {
        let x = DerElement::basis(0, l(&[1, 0]));
        let y = DerElement::basis(0, l(&[1, 0, 0]));
        assert!(x.bracket(&y).is_err());
        assert!(x.act(&LaurentPoly::one(3)).is_err());
    }
}

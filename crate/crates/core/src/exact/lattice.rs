use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::rational::{q, Rational};

/// A point of the lattice `Z^d`: an exponent vector, a shift, or a weight
/// label. The derived ordering is lexicographic on the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lattice(Vec<i64>);

impl Lattice {
    pub fn new(coords: Vec<i64>) -> Self {
        Lattice(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Lattice(vec![0; dim])
    }

    /// The standard basis vector `e_axis` (0-based).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        Lattice(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn to_qvec(&self) -> QVec {
        QVec(self.0.iter().map(|&c| q(c)).collect())
    }

    pub fn scaled(&self, k: i64) -> Lattice {
        Lattice(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Lattice {
    type Output = Lattice;
    fn add(self, rhs: &Lattice) -> Lattice {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        Lattice(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Lattice {
    type Output = Lattice;
    fn sub(self, rhs: &Lattice) -> Lattice {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        Lattice(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Lattice {
    type Output = Lattice;
    fn neg(self) -> Lattice {
        Lattice(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A vector in `Q^d` paired with itself and with lattice points through the
/// standard dot product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVec(Vec<Rational>);

impl QVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVec(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVec(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        QVec(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[axis] = q(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVec) -> Rational {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// The pairing `(u, r)` of a rational vector with a lattice point.
    pub fn pair(&self, r: &Lattice) -> Rational {
        assert_eq!(self.dim(), r.dim(), "vector dimension mismatch");
        self.0
            .iter()
            .zip(r.coords())
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| a * q(c))
            .sum()
    }

    pub fn scale(&self, c: &Rational) -> QVec {
        QVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_scaled(&mut self, other: &QVec, c: &Rational) {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }
}

impl Add for &QVec {
    type Output = QVec;
    fn add(self, rhs: &QVec) -> QVec {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        QVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVec {
    type Output = QVec;
    fn sub(self, rhs: &QVec) -> QVec {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        QVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for QVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn lattice_ops() {
        let a = Lattice::new(vec![1, -2]);
        let b = Lattice::new(vec![0, 5]);
        assert_eq!(&a + &b, Lattice::new(vec![1, 3]));
        assert_eq!(&a - &b, Lattice::new(vec![1, -7]));
        assert_eq!(-&a, Lattice::new(vec![-1, 2]));
        assert!(Lattice::zero(3).is_zero());
        assert_eq!(a.to_string(), "(1,-2)");
        assert!(Lattice::new(vec![0, 9]) < Lattice::new(vec![1, -9]));
    }

    #[test]
    fn pairings() {
        let u = QVec::new(vec![frac(1, 2), q(3)]);
        assert_eq!(u.pair(&Lattice::new(vec![2, -1])), q(-2));
        assert_eq!(u.dot(&QVec::from_ints(&[2, 0])), q(1));
        assert_eq!(u.to_string(), "(1/2,3)");
    }
}

//! Exact Gaussian elimination over the rationals.
//!
//! Vectors are sparse maps from an ordered coordinate key to a nonzero
//! rational. [`SpanBasis`] keeps its rows in reduced row echelon form, so
//! membership, rank and coordinates all come from a single reduction pass.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `acc += c * v`, removing entries that cancel.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Rational, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let entry = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c * x;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

/// A linear span stored as reduced row echelon rows keyed by pivot.
#[derive(Clone, Debug)]
pub struct SpanBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SpanBasis<K> {
    fn default() -> Self {
        SpanBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in pivot order; each has coefficient 1 at its pivot and 0 at
    /// every other pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter()
    }

    /// The remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(K, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut out = v.clone();
        for (k, c) in hits {
            axpy(&mut out, &-c, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the reduced, pivot-normalised new row
    /// when `v` was independent, `None` otherwise.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<K>> {
        let mut r = self.reduce(v);
        let (pivot, lead) = match r.iter().next() {
            Some((k, c)) => (k.clone(), c.clone()),
            None => return None,
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(pivot, r.clone());
        Some(r)
    }

    /// Coefficients of `v` against the rows (keyed by pivot), if `v` lies in
    /// the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<BTreeMap<K, Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        )
    }
}

/// Rank of a family of dense rows.
pub fn rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut basis = SpanBasis::new();
    for row in rows {
        basis.insert(&dense_to_sparse(&row));
    }
    basis.rank()
}

pub fn dense_to_sparse(row: &[Rational]) -> SparseVec<usize> {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Square sparse matrix; rows hold only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<SparseVec<usize>>,
}

impl SparseMatrix {
    pub fn zero(n: usize) -> Self {
        SparseMatrix { n, rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        if c.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, c);
        }
    }

    pub fn row(&self, i: usize) -> &SparseVec<usize> {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn add_scaled(&mut self, other: &SparseMatrix, c: &Rational) {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            axpy(a, c, b);
        }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let mut out = Self::zero(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                axpy(&mut out.rows[i], a, &other.rows[*k]);
            }
        }
        out
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &-Rational::one());
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.n, v.len(), "vector length mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            let s: Rational = row
                .iter()
                .filter_map(|(j, a)| v.get(j).map(|x| a * x))
                .sum();
            if !s.is_zero() {
                out.insert(i, s);
            }
        }
        out
    }

    /// First position where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        for (i, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a != b {
                let j = a
                    .keys()
                    .chain(b.keys())
                    .copied()
                    .filter(|j| a.get(j) != b.get(j))
                    .min()
                    .expect("rows differ");
                return Some((i, j));
            }
        }
        None
    }
}

/// Dense row-major dump, one row per line, exact fractions.
impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, q};

    fn sv(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn span_membership_and_coordinates() {
        let mut b = SpanBasis::new();
        assert!(b.insert(&sv(&[(0, 1), (1, 1)])).is_some());
        assert!(b.insert(&sv(&[(1, 2), (2, 2)])).is_some());
        assert!(b.insert(&sv(&[(0, 1), (1, 3), (2, 2)])).is_none());
        assert_eq!(b.rank(), 2);
        let target = sv(&[(0, 2), (1, 4), (2, 2)]);
        let coords = b.coordinates(&target).unwrap();
        // RREF rows: (1,0,-1), (0,1,1)
        assert_eq!(coords[&0], q(2));
        assert_eq!(coords[&1], q(4));
        assert!(b.coordinates(&sv(&[(2, 1)])).is_none());
        assert!(!SpanBasis::<usize>::new().contains(&sv(&[(5, 1)])));
    }

    #[test]
    fn dense_rank() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![frac(1, 2), q(0), q(1)],
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn matrix_commutator() {
        // E_12 and E_21 in gl_2
        let mut e12 = SparseMatrix::zero(2);
        e12.set(0, 1, q(1));
        let mut e21 = SparseMatrix::zero(2);
        e21.set(1, 0, q(1));
        let h = e12.commutator(&e21);
        assert_eq!(h.get(0, 0), q(1));
        assert_eq!(h.get(1, 1), q(-1));
        assert_eq!(h.nnz(), 2);
        assert_eq!(h.apply(&[q(3), q(5)]), vec![q(3), q(-5)]);
        assert_eq!(h.first_difference(&SparseMatrix::identity(2)), Some((1, 1)));
        assert_eq!(h.to_string(), "1 0\n0 -1\n");
    }
}

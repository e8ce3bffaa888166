use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;

use super::lattice::Lattice;
use super::rational::{parse_rational, q, Rational};
use crate::error::{check_dim, Error, Result};

/// A Laurent polynomial in `d` commuting variables with exact rational
/// coefficients, stored sparsely. Equivalently an element of the group
/// algebra of `Z^d`, where `t^r * t^s = t^(r+s)`.
///
/// Zero coefficients are never stored and terms iterate in lexicographic
/// exponent order, so equality and the text form are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Lattice, Rational>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(Lattice::zero(dim), q(1))
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(Lattice::zero(dim), c)
    }

    /// `c * t^exp`.
    pub fn monomial(exp: Lattice, c: Rational) -> Self {
        let mut p = Self::zero(exp.dim());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Lattice, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            check_dim(dim, e.dim())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Lattice, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Lattice) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Lattice::zero(self.dim))
    }

    /// Adds `c * t^exp` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: Lattice, c: Rational) {
        debug_assert_eq!(exp.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &Lattice) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    /// The group-algebra product; supports are Minkowski-summed.
    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// The Euler derivation `t_axis d/dt_axis`: `c t^m -> c m_axis t^m`.
    pub fn euler_derive(&self, axis: usize) -> Result<Self> {
        if axis >= self.dim {
            return Err(Error::AxisOutOfRange { axis, dim: self.dim });
        }
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let m = e.coords()[axis];
            if m != 0 {
                out.add_term(e.clone(), c * q(m));
            }
        }
        Ok(out)
    }

    /// Value at the point `t = (1, ..., 1)`.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Drops the constant term: the canonical representative modulo
    /// constant polynomials.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Lattice::zero(self.dim));
        out
    }

    /// Applies the product of Euler derivations indexed by `axes` and
    /// evaluates at `t = 1`, i.e. `sum_m c_m prod_{i in axes} m_i`.
    pub fn jet_value(&self, axes: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let exact = axes
                .iter()
                .try_fold(1i128, |acc, &a| acc.checked_mul(e.coords()[a] as i128));
            let factor = match exact {
                Some(p) => Rational::from_integer(p.into()),
                None => axes.iter().map(|&a| q(e.coords()[a])).product(),
            };
            if !factor.is_zero() {
                total += c * factor;
            }
        }
        total
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(&-rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

/// Canonical text form: `c*t^(a1,...,ad)` terms joined by ` + ` in
/// lexicographic exponent order; the zero polynomial prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the `Display` form in a known dimension; unlike `from_str`
    /// this accepts `0`.
    pub fn parse_in(dim: usize, s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero(dim));
        }
        let f: LaurentPoly = s.parse()?;
        check_dim(dim, f.dim())?;
        Ok(f)
    }
}

/// Parses `c*t^(a,b) + ...`; the dimension is read off the exponents, so the
/// zero polynomial needs [`LaurentPoly::parse_in`].
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Err(Error::Parse("the zero polynomial carries no dimension; use parse_in".into()));
        }
        let mut terms = Vec::new();
        for chunk in s.split(" + ") {
            let (c, e) = chunk
                .trim()
                .split_once("*t^")
                .ok_or_else(|| Error::Parse(format!("bad term {chunk:?}")))?;
            let inner = e
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad exponent {e:?}")))?;
            let coords = inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {e:?}"))))
                .collect::<Result<Vec<_>>>()?;
            terms.push((Lattice::new(coords), parse_rational(c)?));
        }
        let dim = terms[0].0.dim();
        LaurentPoly::from_terms(dim, terms)
    }
}

/// `prod_i (1 - t^{m_i})`. Every shift must be nonzero.
pub fn p_k(dim: usize, ms: &[Lattice]) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::one(dim);
    for (index, m) in ms.iter().enumerate() {
        check_dim(dim, m.dim())?;
        if m.is_zero() {
            return Err(Error::ZeroShift { index });
        }
        let mut factor = LaurentPoly::one(dim);
        factor.add_term(m.clone(), q(-1));
        out = out.checked_mul(&factor)?;
    }
    Ok(out)
}

/// A multiset of axes, stored as a nondecreasing list of 0-based indices.
pub type JetKey = Vec<usize>;

/// All multisets of `size` axes drawn from `0..dim`, in lexicographic order.
pub fn multisets(dim: usize, size: usize) -> Vec<JetKey> {
    fn rec(dim: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<JetKey>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for a in start..dim {
            cur.push(a);
            rec(dim, size, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// The jet of `f` at `t = (1,...,1)` up to `order`: for every multiset of
/// at most `order` axes, the value of the corresponding product of Euler
/// derivations. Euler derivations commute, so multisets suffice.
pub fn jet_at_one(f: &LaurentPoly, order: usize) -> BTreeMap<JetKey, Rational> {
    let mut out = BTreeMap::new();
    for size in 0..=order {
        for key in multisets(f.dim(), size) {
            let v = f.jet_value(&key);
            out.insert(key, v);
        }
    }
    out
}

/// First nonzero jet entry of order `< k` (order `>= 1` when
/// `ignore_constant`), which certifies that `f` lies outside `J_k`
/// (respectively `J_k + constants`).
pub fn jk_witness(f: &LaurentPoly, k: usize, ignore_constant: bool) -> Option<(JetKey, Rational)> {
    let start = usize::from(ignore_constant);
    for size in start..k {
        for key in multisets(f.dim(), size) {
            let v = f.jet_value(&key);
            if !v.is_zero() {
                return Some((key, v));
            }
        }
    }
    None
}

/// Membership in the `k`-th power `J_k` of the augmentation ideal, decided
/// by vanishing of every jet of order `< k` at `t = 1`. With
/// `ignore_constant` the order-0 jet is skipped, deciding membership in
/// `J_k + constants`.
pub fn in_jk(f: &LaurentPoly, k: usize, ignore_constant: bool) -> bool {
    jk_witness(f, k, ignore_constant).is_none()
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use super::der::DerElement;
use super::lie::LieAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::exact::{linalg, parse_rational, Lattice, QVec, Rational};

/// The shipped default: `sl_2` with basis `(e, h, f)` and the trace form.
pub const SL2_DATA: &str = include_str!("../../data/sl2.txt");

/// A finite-dimensional Lie algebra given by structure constants
/// `[x_a, x_b] = sum_c c_ab^c x_c`, together with a symmetric invariant
/// bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleAlgebra {
    n: usize,
    constants: Vec<Rational>,
    form: Vec<Rational>,
}

impl SimpleAlgebra {
    /// The default `sl_2` data.
    pub fn sl2() -> Self {
        Self::parse(SL2_DATA).expect("shipped sl2 data is valid")
    }

    /// Parses and validates the text format: `a b c value` lines are
    /// structure constants, `a b value` lines are form entries, an optional
    /// `dim n` line fixes the dimension, and `#` starts a comment. Indices
    /// are 0-based; missing entries are zero.
    pub fn parse(text: &str) -> Result<Self> {
        let alg = Self::parse_unchecked(text)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Parses without checking the Lie and form axioms.
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut consts: Vec<(usize, usize, usize, Rational)> = Vec::new();
        let mut forms: Vec<(usize, usize, Rational)> = Vec::new();
        let bad = |line: &str| Error::InvalidAlgebra(format!("cannot parse line {line:?}"));
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let idx = |t: &str| t.parse::<usize>().map_err(|_| bad(line));
            match toks.as_slice() {
                ["dim", n] => dim = Some(idx(n)?),
                [a, b, c, v] => consts.push((idx(a)?, idx(b)?, idx(c)?, parse_rational(v)?)),
                [a, b, v] => forms.push((idx(a)?, idx(b)?, parse_rational(v)?)),
                _ => return Err(bad(line)),
            }
        }
        let max_index = consts
            .iter()
            .flat_map(|&(a, b, c, _)| [a, b, c])
            .chain(forms.iter().flat_map(|&(a, b, _)| [a, b]))
            .max();
        let n = match (dim, max_index) {
            (Some(n), Some(m)) if m >= n => {
                return Err(Error::InvalidAlgebra(format!("index {m} out of range for dim {n}")))
            }
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => return Err(Error::InvalidAlgebra("empty algebra".into())),
        };
        let mut alg = SimpleAlgebra {
            n,
            constants: vec![Rational::zero(); n * n * n],
            form: vec![Rational::zero(); n * n],
        };
        for (a, b, c, v) in consts {
            let slot = &mut alg.constants[(a * n + b) * n + c];
            if !slot.is_zero() {
                return Err(Error::InvalidAlgebra(format!("duplicate constant {a} {b} {c}")));
            }
            *slot = v;
        }
        for (a, b, v) in forms {
            let slot = &mut alg.form[a * n + b];
            if !slot.is_zero() {
                return Err(Error::InvalidAlgebra(format!("duplicate form entry {a} {b}")));
            }
            *slot = v;
        }
        Ok(alg)
    }

    /// Serialises to the text format accepted by [`SimpleAlgebra::parse`].
    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut out = format!("dim {n}\n");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.constant(a, b, c);
                    if !v.is_zero() {
                        out.push_str(&format!("{a} {b} {c} {v}\n"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let v = self.form(a, b);
                if !v.is_zero() {
                    out.push_str(&format!("{a} {b} {v}\n"));
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn constant(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.constants[(a * self.n + b) * self.n + c]
    }

    pub fn form(&self, a: usize, b: usize) -> &Rational {
        &self.form[a * self.n + b]
    }

    /// A copy with one structure constant replaced, bypassing validation.
    pub fn with_constant(&self, a: usize, b: usize, c: usize, v: Rational) -> Self {
        let mut out = self.clone();
        out.constants[(a * self.n + b) * self.n + c] = v;
        out
    }

    /// A copy with one form entry replaced, bypassing validation.
    pub fn with_form_entry(&self, a: usize, b: usize, v: Rational) -> Self {
        let mut out = self.clone();
        out.form[a * self.n + b] = v;
        out
    }

    /// `[x_a, x_b]` as a coordinate vector.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Rational] {
        let start = (a * self.n + b) * self.n;
        &self.constants[start..start + self.n]
    }

    fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coef = xa * yb;
                for (o, c) in out.iter_mut().zip(self.bracket_basis(a, b)) {
                    if !c.is_zero() {
                        *o += &coef * c;
                    }
                }
            }
        }
        out
    }

    fn form_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                total += xa * yb * self.form(a, b);
            }
        }
        total
    }

    fn unit(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[a] = Rational::from_integer(1.into());
        v
    }

    /// First violated axiom among antisymmetry, Jacobi, form symmetry, form
    /// invariance and nondegeneracy, checked on basis triples.
    pub fn validation_failure(&self) -> Option<String> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.constant(a, b, c) != &-self.constant(b, a, c) {
                        return Some(format!("antisymmetry fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (xa, xb, xc) = (self.unit(a), self.unit(b), self.unit(c));
                    let j1 = self.bracket_vec(&xa, &self.bracket_vec(&xb, &xc));
                    let j2 = self.bracket_vec(&xb, &self.bracket_vec(&xc, &xa));
                    let j3 = self.bracket_vec(&xc, &self.bracket_vec(&xa, &xb));
                    if j1.iter().zip(&j2).zip(&j3).any(|((p, q), r)| !(p + q + r).is_zero()) {
                        return Some(format!("jacobi fails at ({a},{b},{c})"));
                    }
                    let lhs = self.form_vec(&self.bracket_vec(&xa, &xb), &xc);
                    let rhs = self.form_vec(&xa, &self.bracket_vec(&xb, &xc));
                    if lhs != rhs {
                        return Some(format!("form invariance fails at ({a},{b},{c})"));
                    }
                }
                if self.form(a, b) != self.form(b, a) {
                    return Some(format!("form symmetry fails at ({a},{b})"));
                }
            }
        }
        let rows = (0..n).map(|a| (0..n).map(|b| self.form(a, b).clone()).collect());
        if linalg::rank(rows) != n {
            return Some("form is degenerate".into());
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        match self.validation_failure() {
            None => Ok(()),
            Some(msg) => Err(Error::InvalidAlgebra(msg)),
        }
    }
}

/// An element of the toroidal algebra `G⊗A ⊕ Omega_A/d_A ⊕ Der A`.
///
/// The loop part maps `(basis index a, r)` to the coefficient of
/// `x_a ⊗ t^r`; the center part maps `r` to `u` for `K(u, r) = sum_i u_i t^r K_i`.
/// The center is kept in a normal form modulo `d_A`: for `r != 0` the
/// coordinate at the first nonzero position `p` of `r` is eliminated,
/// `K(u, r) -> K(u - (u_p / r_p) r, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauElement {
    dim: usize,
    g_dim: usize,
    loops: BTreeMap<(usize, Lattice), Rational>,
    center: BTreeMap<Lattice, QVec>,
    der: DerElement,
}

impl TauElement {
    pub fn zero(dim: usize, g_dim: usize) -> Self {
        TauElement {
            dim,
            g_dim,
            loops: BTreeMap::new(),
            center: BTreeMap::new(),
            der: DerElement::zero(dim),
        }
    }

    /// `c * x_a ⊗ t^r`.
    pub fn loop_term(g_dim: usize, a: usize, r: Lattice, c: Rational) -> Result<Self> {
        if a >= g_dim {
            return Err(Error::IncompatibleAlgebra(format!("basis index {a} >= {g_dim}")));
        }
        let mut x = Self::zero(r.dim(), g_dim);
        x.add_loop(a, r, c);
        Ok(x)
    }

    /// `K(u, r)`, reduced to normal form.
    pub fn center_term(g_dim: usize, u: QVec, r: Lattice) -> Result<Self> {
        check_dim(u.dim(), r.dim())?;
        let mut x = Self::zero(r.dim(), g_dim);
        x.add_center(u, r);
        Ok(x)
    }

    pub fn from_der(g_dim: usize, der: DerElement) -> Self {
        let mut x = Self::zero(der.dim(), g_dim);
        x.der = der;
        x
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn der(&self) -> &DerElement {
        &self.der
    }

    pub fn loops(&self) -> impl Iterator<Item = (&(usize, Lattice), &Rational)> {
        self.loops.iter()
    }

    pub fn center(&self) -> impl Iterator<Item = (&Lattice, &QVec)> {
        self.center.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.loops.is_empty() && self.center.is_empty() && self.der.is_zero()
    }

    fn add_loop(&mut self, a: usize, r: Lattice, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (a, r);
        let entry = self.loops.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.loops.remove(&key);
        }
    }

    fn add_center(&mut self, u: QVec, r: Lattice) {
        let u = canonical_center(u, &r);
        if u.is_zero() {
            return;
        }
        match self.center.get_mut(&r) {
            Some(v) => {
                v.add_scaled(&u, &Rational::from_integer(1.into()));
                if v.is_zero() {
                    self.center.remove(&r);
                }
            }
            None => {
                self.center.insert(r, u);
            }
        }
    }

    /// Re-applies the `d_A` normal form to every center term. Elements built
    /// through the public API are already canonical, so this is idempotent.
    pub fn canonicalize(&self) -> Self {
        let mut out = Self::zero(self.dim, self.g_dim);
        out.loops = self.loops.clone();
        out.der = self.der.clone();
        for (r, u) in &self.center {
            out.add_center(u.clone(), r.clone());
        }
        out
    }

    /// Inserts a center term without reduction. Only for exercising
    /// [`TauElement::canonicalize`].
    pub fn with_raw_center(mut self, u: QVec, r: Lattice) -> Self {
        self.center.insert(r, u);
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.g_dim);
        if c.is_zero() {
            return out;
        }
        for ((a, r), v) in &self.loops {
            out.add_loop(*a, r.clone(), v * c);
        }
        for (r, u) in &self.center {
            out.add_center(u.scale(c), r.clone());
        }
        out.der = self.der.scale(c);
        out
    }

    /// The toroidal bracket:
    ///
    /// * `[x⊗t^r, y⊗t^s] = [x,y]⊗t^{r+s} + <x,y> K(r, r+s)`
    /// * `[D(u,r), D(v,s)] = D((u,s)v - (v,r)u, r+s) - (u,s)(v,r) K(r, r+s)`
    /// * `[D(u,r), K(v,s)] = (u,s) K(v, r+s) + (u,v) K(r, r+s)`
    /// * `[D(u,r), x⊗t^s] = (u,s) x⊗t^{r+s}`
    /// * the center commutes with `G⊗A` and with itself.
    pub fn bracket(&self, other: &TauElement, g: &SimpleAlgebra) -> Result<TauElement> {
        check_dim(self.dim, other.dim)?;
        for g_dim in [self.g_dim, other.g_dim] {
            if g_dim != g.dim() {
                return Err(Error::IncompatibleAlgebra(format!(
                    "element built over a {g_dim}-dimensional algebra, bracket uses {}",
                    g.dim()
                )));
            }
        }
        let mut out = Self::zero(self.dim, self.g_dim);

        for ((a, r), x) in &self.loops {
            for ((b, s), y) in &other.loops {
                let coef = x * y;
                let rs = r + s;
                for (c, k) in g.bracket_basis(*a, *b).iter().enumerate() {
                    if !k.is_zero() {
                        out.add_loop(c, rs.clone(), &coef * k);
                    }
                }
                let f = g.form(*a, *b);
                if !f.is_zero() {
                    out.add_center(r.to_qvec().scale(&(&coef * f)), rs);
                }
            }
        }

        out.der = self.der.bracket(&other.der)?;
        for (r, u) in self.der.terms() {
            for (s, v) in other.der.terms() {
                let k = u.pair(s) * v.pair(r);
                if !k.is_zero() {
                    out.add_center(r.to_qvec().scale(&-k), r + s);
                }
            }
        }

        // Der acting on the loop and center parts, in both orders.
        Self::der_on_rest(&mut out, &self.der, other, &Rational::from_integer(1.into()));
        Self::der_on_rest(&mut out, &other.der, self, &Rational::from_integer((-1).into()));
        Ok(out)
    }

    fn der_on_rest(out: &mut TauElement, der: &DerElement, target: &TauElement, sign: &Rational) {
        for (r, u) in der.terms() {
            for ((b, s), y) in &target.loops {
                let k = u.pair(s);
                if !k.is_zero() {
                    out.add_loop(*b, r + s, k * y * sign);
                }
            }
            for (s, v) in &target.center {
                let rs = r + s;
                out.add_center(v.scale(&(u.pair(s) * sign)), rs.clone());
                out.add_center(r.to_qvec().scale(&(u.dot(v) * sign)), rs);
            }
        }
    }
}

fn canonical_center(mut u: QVec, r: &Lattice) -> QVec {
    if let Some(p) = r.coords().iter().position(|&c| c != 0) {
        let ratio = &u.coords()[p] / Rational::from_integer(r.coords()[p].into());
        if !ratio.is_zero() {
            u.add_scaled(&r.to_qvec(), &-ratio);
        }
        // exact by construction; keep the eliminated slot literally zero
        u.coords_mut()[p] = Rational::zero();
    }
    u
}

impl Add for &TauElement {
    type Output = TauElement;
    fn add(self, rhs: &TauElement) -> TauElement {
        assert_eq!(self.dim, rhs.dim, "toroidal dimension mismatch");
        assert_eq!(self.g_dim, rhs.g_dim, "toroidal algebra mismatch");
        let mut out = self.clone();
        for ((a, r), c) in &rhs.loops {
            out.add_loop(*a, r.clone(), c.clone());
        }
        for (r, u) in &rhs.center {
            out.add_center(u.clone(), r.clone());
        }
        out.der = &out.der + &rhs.der;
        out
    }
}

impl fmt::Display for TauElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .loops
            .iter()
            .map(|((a, r), c)| format!("{c}*x{a}⊗t^{r}"))
            .collect();
        parts.extend(self.center.iter().map(|(r, u)| format!("K({u},{r})")));
        if !self.der.is_zero() {
            parts.push(self.der.to_string());
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The toroidal algebra over a fixed simple algebra and dimension.
#[derive(Clone, Debug)]
pub struct ToroidalAlgebra {
    pub dim: usize,
    pub g: SimpleAlgebra,
}

impl LieAlgebra for ToroidalAlgebra {
    type Elem = TauElement;

    fn name(&self) -> String {
        format!("toroidal algebra (d={}, dim G={})", self.dim, self.g.dim())
    }
    fn bracket(&self, x: &TauElement, y: &TauElement) -> Result<TauElement> {
        check_dim(self.dim, x.dim())?;
        x.bracket(y, &self.g)
    }
    fn add(&self, x: &TauElement, y: &TauElement) -> TauElement {
        x + y
    }
    fn is_zero(&self, x: &TauElement) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, q};

    fn l(c: &[i64]) -> Lattice {
        Lattice::new(c.to_vec())
    }

    #[test]
    fn sl2_loads_and_validates() {
        let g = SimpleAlgebra::sl2();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.bracket_basis(0, 2), &[q(0), q(1), q(0)]);
        assert_eq!(SimpleAlgebra::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_data() {
        let g = SimpleAlgebra::sl2();
        assert!(g.with_constant(0, 2, 1, q(2)).validate().is_err());
        assert!(g.with_form_entry(1, 1, q(3)).validate().is_err());
        assert!(g.with_form_entry(0, 2, q(0)).with_form_entry(2, 0, q(0)).validate().is_err());
        assert!(SimpleAlgebra::parse("dim 2\n0 5 1 1\n").is_err());
        assert!(SimpleAlgebra::parse("0 1 x\n").is_err());
        assert!(SimpleAlgebra::parse("0 1 1 1\n0 1 1 2\n").is_err());
        assert!(SimpleAlgebra::parse("").is_err());
    }

    #[test]
    fn der_on_center_reduces_to_zero() {
        let g_dim = 3;
        let d = TauElement::from_der(g_dim, DerElement::term(QVec::from_ints(&[1, 0]), l(&[0, 1])).unwrap());
        let k = TauElement::center_term(g_dim, QVec::from_ints(&[1, 0]), l(&[1, 0])).unwrap();
        // K(e1,(1,0)) is itself K(r,r) for r = e1, i.e. zero modulo d_A
        assert!(k.is_zero());
        let k_raw = TauElement::zero(2, g_dim).with_raw_center(QVec::from_ints(&[1, 0]), l(&[1, 0]));
        let out = d.bracket(&k_raw, &SimpleAlgebra::sl2()).unwrap();
        assert!(out.is_zero(), "got {out}");
    }

    #[test]
    fn center_commutes() {
        let g = SimpleAlgebra::sl2();
        let a = TauElement::center_term(3, QVec::from_ints(&[2, 1]), l(&[1, -1])).unwrap();
        let b = TauElement::center_term(3, QVec::from_ints(&[0, 5]), l(&[2, 3])).unwrap();
        assert!(a.bracket(&b, &g).unwrap().is_zero());
    }

    #[test]
    fn loop_bracket_without_cocycle() {
        let g = SimpleAlgebra::sl2();
        // <h, e> = 0, [h, e] = 2e
        let h = TauElement::loop_term(3, 1, l(&[1, 2]), q(1)).unwrap();
        let e = TauElement::loop_term(3, 0, l(&[0, -1]), q(1)).unwrap();
        assert_eq!(h.bracket(&e, &g).unwrap(), TauElement::loop_term(3, 0, l(&[1, 1]), q(2)).unwrap());
        // <e, f> = 1 gives K(r, r+s) = K((1,0),(1,1))
        let e = TauElement::loop_term(3, 0, l(&[1, 0]), q(1)).unwrap();
        let f = TauElement::loop_term(3, 2, l(&[0, 1]), q(1)).unwrap();
        let expected = &TauElement::loop_term(3, 1, l(&[1, 1]), q(1)).unwrap()
            + &TauElement::center_term(3, QVec::from_ints(&[1, 0]), l(&[1, 1])).unwrap();
        assert_eq!(e.bracket(&f, &g).unwrap(), expected);
    }

    #[test]
    fn canonical_form() {
        let r = l(&[2, 3]);
        let x = TauElement::center_term(3, QVec::new(vec![frac(1, 2), q(1)]), r.clone()).unwrap();
        let (_, u) = x.center().next().unwrap();
        assert_eq!(u, &QVec::new(vec![q(0), frac(1, 4)]));
        assert_eq!(x.canonicalize(), x);
        assert!(TauElement::center_term(3, r.to_qvec().scale(&q(7)), r).unwrap().is_zero());
        // r = 0 is never reduced
        let z = TauElement::center_term(3, QVec::from_ints(&[1, 1]), l(&[0, 0])).unwrap();
        assert!(!z.is_zero());
    }

    #[test]
    fn incompatible_algebra() {
        let x = TauElement::loop_term(4, 3, l(&[1, 0]), q(1)).unwrap();
        assert!(matches!(
            x.bracket(&x, &SimpleAlgebra::sl2()),
            Err(Error::IncompatibleAlgebra(_))
        ));
        assert!(TauElement::loop_term(3, 3, l(&[1, 0]), q(1)).is_err());
    }
}

//! Tensor-field modules `F^α(ψ, b) = V(ψ, b) ⊗ A` with the Der A action
//! `D(u,r)·v(m) = (u, m+α) v(m+r) + (Σ u_i r_j E_ji v)(m+r)`, the A action
//! by translation, the induced action of `T` on weight spaces, and a
//! bounded submodule scanner.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::exact::linalg::{axpy, SparseMatrix, SparseVec, SpanBasis};
use crate::exact::{q, LaurentPoly, Lattice, QVec, Rational};
use crate::gl::{build_irrep, DominantWeight, GlRep};
use crate::report::IdentityReport;
use crate::sample::Sampler;
use crate::tcalc::{TElement, TkSpec};
use crate::witt::{ADerElement, DerElement};

/// `(ψ, b, α)` together with the matrices of `V(ψ, b)`.
#[derive(Clone, Debug)]
pub struct ModuleParams {
    psi: DominantWeight,
    alpha: QVec,
    rep: Arc<GlRep>,
}

impl ModuleParams {
    pub fn new(psi: DominantWeight, alpha: QVec) -> Result<Self> {
        check_dim(psi.dim(), alpha.dim())?;
        let rep = Arc::new(build_irrep(&psi));
        Ok(ModuleParams { psi, alpha, rep })
    }

    /// Uses a prebuilt (possibly altered) module in place of `V(ψ, b)`.
    pub fn with_rep(psi: DominantWeight, alpha: QVec, rep: GlRep) -> Result<Self> {
        check_dim(psi.dim(), alpha.dim())?;
        check_dim(psi.dim(), rep.d())?;
        Ok(ModuleParams { psi, alpha, rep: Arc::new(rep) })
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    /// Dimension `N` of `V(ψ, b)`.
    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn psi(&self) -> &DominantWeight {
        &self.psi
    }

    pub fn alpha(&self) -> &QVec {
        &self.alpha
    }

    pub fn rep(&self) -> &GlRep {
        &self.rep
    }
}

impl fmt::Display for ModuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi={:?}, b={}, alpha={}", self.psi.coeffs(), self.psi.b(), self.alpha)
    }
}

/// A finitely supported element `Σ v_m(m)` of `F^α(ψ, b)`; `v_m` are
/// coordinate vectors in `V(ψ, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldVector {
    dim: usize,
    support: BTreeMap<Lattice, SparseVec<usize>>,
}

impl FieldVector {
    pub fn zero(dim: usize) -> Self {
        FieldVector { dim, support: BTreeMap::new() }
    }

    /// `w(m)` for a coordinate vector `w`.
    pub fn single(m: Lattice, w: SparseVec<usize>) -> Self {
        let mut v = Self::zero(m.dim());
        v.add_at(m, &w, &q(1));
        v
    }

    /// The basis vector `e_index(m)`.
    pub fn basis(m: Lattice, index: usize) -> Self {
        Self::single(m, [(index, q(1))].into_iter().collect())
    }

    pub fn from_dense(m: Lattice, coords: &[Rational]) -> Self {
        Self::single(m, crate::exact::linalg::dense_to_sparse(coords))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Lattice, &SparseVec<usize>)> {
        self.support.iter()
    }

    pub fn at(&self, m: &Lattice) -> Option<&SparseVec<usize>> {
        self.support.get(m)
    }

    pub fn add_at(&mut self, m: Lattice, w: &SparseVec<usize>, c: &Rational) {
        if c.is_zero() || w.is_empty() {
            return;
        }
        let slot = self.support.entry(m.clone()).or_default();
        axpy(slot, c, w);
        if slot.is_empty() {
            self.support.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &FieldVector, c: &Rational) {
        for (m, w) in &other.support {
            self.add_at(m.clone(), w, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &FieldVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, w)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coords: Vec<String> = w.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            write!(f, "[{}]{m}", coords.join(","))?;
        }
        Ok(())
    }
}

/// `Σ u_i r_j E_ji`, the matrix part of `D(u, r)` and the action of `T(u, r)`.
pub fn t_matrix(u: &QVec, r: &Lattice, rep: &GlRep) -> SparseMatrix {
    let d = rep.d();
    let mut m = vec![vec![Rational::zero(); d]; d];
    for (i, ui) in u.coords().iter().enumerate() {
        for (j, &rj) in r.coords().iter().enumerate() {
            if !ui.is_zero() && rj != 0 {
                m[j][i] += ui * q(rj);
            }
        }
    }
    rep.act_matrix(&m)
}

pub fn act_der_field(x: &DerElement, v: &FieldVector, p: &ModuleParams) -> Result<FieldVector> {
    check_dim(p.dim(), x.dim())?;
    check_dim(p.dim(), v.dim())?;
    let mut out = FieldVector::zero(p.dim());
    for (r, u) in x.terms() {
        let mat = t_matrix(u, r, p.rep());
        for (m, w) in v.support() {
            let target = m + r;
            let scalar = u.dot(&(&m.to_qvec() + p.alpha()));
            out.add_at(target.clone(), w, &scalar);
            out.add_at(target, &mat.apply_sparse(w), &q(1));
        }
    }
    Ok(out)
}

pub fn act_a_field(f: &LaurentPoly, v: &FieldVector) -> Result<FieldVector> {
    check_dim(f.dim(), v.dim())?;
    let mut out = FieldVector::zero(v.dim());
    for (s, c) in f.terms() {
        for (m, w) in v.support() {
            out.add_at(m + s, w, c);
        }
    }
    Ok(out)
}

/// Action of `A ⊕ Der A`.
pub fn act_ader(x: &ADerElement, v: &FieldVector, p: &ModuleParams) -> Result<FieldVector> {
    let mut out = act_a_field(&x.poly, v)?;
    out.add_scaled(&act_der_field(&x.der, v, p)?, &q(1));
    Ok(out)
}

/// `T(u, r)` on a weight-space vector: `(Σ u_i r_j E_ji) w`, the same in every weight space.
pub fn act_t_weightspace(u: &QVec, r: &Lattice, w: &SparseVec<usize>, p: &ModuleParams) -> SparseVec<usize> {
    t_matrix(u, r, p.rep()).apply_sparse(w)
}

pub fn act_t_element(x: &TElement, w: &SparseVec<usize>, p: &ModuleParams) -> SparseVec<usize> {
    let mut out = SparseVec::new();
    for (r, u) in x.terms() {
        axpy(&mut out, &q(1), &act_t_weightspace(u, r, w, p));
    }
    out
}

/// `T(u, r) = t^{-r} D(u, r) − D(u, 0)` computed through the module action
/// on `w(m)`; returns the resulting coordinates at weight `m`.
pub fn t_via_module(u: &QVec, r: &Lattice, m: &Lattice, w: &SparseVec<usize>, p: &ModuleParams) -> Result<SparseVec<usize>> {
    let v = FieldVector::single(m.clone(), w.clone());
    let moved = act_der_field(&DerElement::term(u.clone(), r.clone())?, &v, p)?;
    let back = act_a_field(&LaurentPoly::monomial(-r, q(1)), &moved)?;
    let diag = act_der_field(&DerElement::term(u.clone(), Lattice::zero(p.dim()))?, &v, p)?;
    let res = back.sub(&diag);
    let mut support = res.support();
    match support.next() {
        None => Ok(SparseVec::new()),
        Some((at, coords)) if at == m && support.next().is_none() => Ok(coords.clone()),
        Some(_) => Err(Error::Construction("T(u,r) left the weight space".into())),
    }
}

fn random_field<R: Rng>(s: &Sampler, rng: &mut R, n: usize) -> FieldVector {
    let mut v = FieldVector::zero(s.dim);
    for _ in 0..rng.gen_range(1..=s.max_terms) {
        let coords = s.coords(rng, n);
        v.add_scaled(&FieldVector::from_dense(s.lattice(rng), &coords), &q(1));
    }
    v
}

/// `[x, y]·v = x·(y·v) − y·(x·v)` for random `x, y ∈ A ⊕ Der A` (or Der A alone).
pub fn check_module_axiom<R: Rng>(p: &ModuleParams, s: &Sampler, rng: &mut R, trials: usize, with_a: bool) -> IdentityReport {
    let algebra = if with_a { "A + Der A" } else { "Der A" };
    let mut rep = IdentityReport::new(format!("{algebra} acts on F^alpha({p})"), "tensor-field module action");
    for _ in 0..trials {
        let (x, y) = if with_a { (s.ader(rng), s.ader(rng)) } else { (ADerElement::from_der(s.der(rng)), ADerElement::from_der(s.der(rng))) };
        let v = random_field(s, rng, p.n());
        let outcome = (|| -> Result<bool> {
            let lhs = act_ader(&x.bracket(&y)?, &v, p)?;
            let xy = act_ader(&x, &act_ader(&y, &v, p)?, p)?;
            let yx = act_ader(&y, &act_ader(&x, &v, p)?, p)?;
            Ok(lhs == xy.sub(&yx))
        })();
        let ok = matches!(outcome, Ok(true));
        rep.record(ok, || format!("x={x}; y={y}; v={v}"));
        if !ok {
            break;
        }
    }
    rep
}

/// `D(u,0)·v(m) = (u, m+α) v(m)` on basis vectors.
pub fn check_weight_consistency<R: Rng>(p: &ModuleParams, s: &Sampler, rng: &mut R, trials: usize) -> IdentityReport {
    let mut rep = IdentityReport::new(format!("weight spaces of F^alpha({p})"), "D(u,0) acts by (u, m+alpha)");
    for _ in 0..trials {
        let u = s.qvec(rng);
        let m = s.lattice(rng);
        let idx = rng.gen_range(0..p.n());
        let v = FieldVector::basis(m.clone(), idx);
        let got = act_der_field(&DerElement::term(u.clone(), Lattice::zero(p.dim())).expect("dims"), &v, p).expect("dims");
        let expected = v.scale(&u.dot(&(&m.to_qvec() + p.alpha())));
        rep.record(got == expected, || format!("u={u}, m={m}, basis {idx}"));
    }
    rep
}

/// `D(u,r)·(t^m·v) − t^m·(D(u,r)·v) = (u,m) t^{r+m}·v`.
pub fn check_leibniz<R: Rng>(p: &ModuleParams, s: &Sampler, rng: &mut R, trials: usize) -> IdentityReport {
    let mut rep = IdentityReport::new(format!("Leibniz rule on F^alpha({p})"), "[D(u,r), t^m] = (u,m) t^{r+m}");
    for _ in 0..trials {
        let (u, r, m) = (s.qvec(rng), s.lattice(rng), s.lattice(rng));
        let v = random_field(s, rng, p.n());
        let x = DerElement::term(u.clone(), r.clone()).expect("dims");
        let tm = LaurentPoly::monomial(m.clone(), q(1));
        let lhs = act_der_field(&x, &act_a_field(&tm, &v).expect("dims"), p)
            .expect("dims")
            .sub(&act_a_field(&tm, &act_der_field(&x, &v, p).expect("dims")).expect("dims"));
        let rhs = act_a_field(&LaurentPoly::monomial(&r + &m, u.pair(&m)), &v).expect("dims");
        rep.record(lhs == rhs, || format!("u={u}, r={r}, m={m}, v={v}"));
    }
    rep
}

/// The action of `T` on weight spaces: computed through the module it is
/// independent of the weight and equals `Σ u_i r_j E_ji`; it respects the
/// bracket of `T`; and `T_2` generators act by zero.
pub fn check_t_action<R: Rng>(p: &ModuleParams, s: &Sampler, rng: &mut R, trials: usize) -> IdentityReport {
    let mut rep = IdentityReport::new(format!("T acts on weight spaces of F^alpha({p})"), "T(u,r) = t^{-r}D(u,r) - D(u,0)");
    let n = p.n();
    for _ in 0..trials {
        let (u, r) = (s.qvec(rng), s.lattice(rng));
        let w = crate::exact::linalg::dense_to_sparse(&s.coords(rng, n));
        let direct = act_t_weightspace(&u, &r, &w, p);
        let (m1, m2) = (s.lattice(rng), s.lattice(rng));
        let ok = [m1.clone(), m2.clone()]
            .iter()
            .all(|m| t_via_module(&u, &r, m, &w, p).map(|x| x == direct).unwrap_or(false));
        rep.record(ok, || format!("u={u}, r={r}, weights {m1} and {m2}"));

        let (x, y) = (s.telement(rng), s.telement(rng));
        let lhs = act_t_element(&x.bracket(&y).expect("dims"), &w, p);
        let mut rhs = act_t_element(&x, &act_t_element(&y, &w, p), p);
        axpy(&mut rhs, &q(-1), &act_t_element(&y, &act_t_element(&x, &w, p), p));
        rep.record(lhs == rhs, || format!("bracket x={x}, y={y}"));

        let mut su = s.qvec(rng);
        while su.is_zero() {
            su = s.qvec(rng);
        }
        let spec = TkSpec::new(su, s.lattice(rng), s.shifts(rng, 2)).expect("valid");
        let image = act_t_element(&spec.expand(), &w, p);
        rep.record(image.is_empty(), || format!("{spec} acts nontrivially"));
    }
    rep
}

/// Which algebra a scan closes under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Der,
    Ader,
}

impl FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "der" => Ok(ScanMode::Der),
            "ader" => Ok(ScanMode::Ader),
            _ => Err(Error::Parse(format!("mode must be `der` or `ader`, got {s:?}"))),
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanMode::Der => "der",
            ScanMode::Ader => "ader",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanParams {
    pub d: usize,
    pub weights: Vec<u32>,
    pub b: String,
    pub alpha: QVec,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightDim {
    pub weight: Lattice,
    pub dim: usize,
}

/// Outcome of a bounded closure. `window` is the radius of the L1 ball
/// `|m|_1 <= window` around the origin.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub params: ScanParams,
    pub mode: ScanMode,
    pub window: usize,
    pub word_length: usize,
    pub per_weight_dims: Vec<WeightDim>,
    pub proper_submodule: bool,
    pub witness: Option<String>,
    /// No word of the final length produced anything new.
    pub closed: bool,
    /// Every window weight reached the full dimension `N`.
    pub saturated: bool,
    pub summary: String,
}

impl ScanReport {
    pub fn dim_at(&self, m: &Lattice) -> usize {
        self.per_weight_dims.iter().find(|w| &w.weight == m).map_or(0, |w| w.dim)
    }
}

fn window_weights(d: usize, w: i64) -> Vec<Lattice> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                let used: i64 = prefix.iter().map(|x| x.abs()).sum();
                (-(w - used)..=(w - used)).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let mut lat: Vec<Lattice> = out.into_iter().map(Lattice::new).collect();
    lat.sort();
    lat
}

/// Closes `start` under `D(e_i, ±e_j)`, `D(e_i, 0)` (and `t^{±e_i}` in
/// `ader` mode) for words of length at most `word_length`, tracking the
/// exact span in every weight space reached.
///
/// A proper submodule is flagged when the closure stopped growing everywhere
/// (a finite-dimensional submodule), or when the last word length left the
/// window unchanged while some window weight holds a nonzero span smaller
/// than `N`. Saturation is evidence only: the scan cannot see beyond its budget.
pub fn submodule_scan(p: &ModuleParams, start: &FieldVector, mode: ScanMode, word_length: usize, window: usize) -> Result<ScanReport> {
    check_dim(p.dim(), start.dim())?;
    if start.is_zero() {
        return Err(Error::EmptyStart);
    }
    let d = p.dim();
    let n = p.n();
    let rep = p.rep();
    // (shift, u-index, matrix) for D(e_i, r), r in {0, ±e_j}
    let mut gens: Vec<(Lattice, usize, SparseMatrix)> = Vec::new();
    for i in 0..d {
        gens.push((Lattice::zero(d), i, SparseMatrix::zero(n)));
        for j in 0..d {
            for sign in [1i64, -1] {
                let r = Lattice::unit(d, j).scaled(sign);
                gens.push((r, i, rep.e(j, i).scale(&q(sign))));
            }
        }
    }
    let mut spaces: BTreeMap<Lattice, SpanBasis<usize>> = BTreeMap::new();
    let mut frontier: VecDeque<(Lattice, SparseVec<usize>)> = VecDeque::new();
    for (m, w) in start.support() {
        if let Some(row) = spaces.entry(m.clone()).or_default().insert(w) {
            frontier.push_back((m.clone(), row));
        }
    }
    let window_set = window_weights(d, window as i64);
    let snapshot = |spaces: &BTreeMap<Lattice, SpanBasis<usize>>| -> Vec<usize> {
        window_set.iter().map(|m| spaces.get(m).map_or(0, SpanBasis::rank)).collect()
    };
    let mut previous = snapshot(&spaces);
    let mut window_frozen = false;
    let mut closed = false;
    for _ in 0..word_length {
        let mut next = VecDeque::new();
        let mut push = |spaces: &mut BTreeMap<Lattice, SpanBasis<usize>>, m: Lattice, w: SparseVec<usize>| {
            if w.is_empty() {
                return;
            }
            if let Some(row) = spaces.entry(m.clone()).or_default().insert(&w) {
                next.push_back((m, row));
            }
        };
        for (m, w) in &frontier {
            let shifted = &m.to_qvec() + p.alpha();
            for (r, i, mat) in &gens {
                let mut image = mat.apply_sparse(w);
                axpy(&mut image, &shifted.coords()[*i], w);
                push(&mut spaces, m + r, image);
            }
            if mode == ScanMode::Ader {
                for j in 0..d {
                    for sign in [1i64, -1] {
                        push(&mut spaces, m + &Lattice::unit(d, j).scaled(sign), w.clone());
                    }
                }
            }
        }
        frontier = next;
        let current = snapshot(&spaces);
        window_frozen = current == previous;
        previous = current;
        if frontier.is_empty() {
            closed = true;
            break;
        }
    }

    let per_weight_dims: Vec<WeightDim> =
        window_set.iter().zip(&previous).map(|(m, &dim)| WeightDim { weight: m.clone(), dim }).collect();
    let saturated = previous.iter().all(|&x| x == n);
    let partial = per_weight_dims.iter().find(|w| w.dim > 0 && w.dim < n);
    let (proper_submodule, witness) = if closed {
        let occupied: Vec<String> = spaces
            .iter()
            .filter(|(_, s)| s.rank() > 0)
            .map(|(m, s)| format!("dimension {} at weight {m}", s.rank()))
            .collect();
        (true, Some(format!("closure is finite-dimensional: {}", occupied.join(", "))))
    } else if let (true, Some(w)) = (window_frozen, partial) {
        (true, Some(format!("weight {} holds dimension {} of {n} and stopped growing", w.weight, w.dim)))
    } else {
        (false, None)
    };
    let summary = if proper_submodule {
        format!("proper submodule found at (L={word_length}, window={window})")
    } else {
        format!("no proper submodule found at (L={word_length}, window={window})")
    };
    let psi = p.psi();
    Ok(ScanReport {
        params: ScanParams { d, weights: psi.coeffs().to_vec(), b: psi.b().to_string(), alpha: p.alpha().clone(), n },
        mode,
        window,
        word_length,
        per_weight_dims,
        proper_submodule,
        witness,
        closed,
        saturated,
        summary,
    })
}

//! Finite-dimensional irreducible `gl_d`-modules `V(ψ, b)` as explicit
//! matrices over the rationals.
//!
//! `V(ψ)` is built inside a tensor product of exterior powers of the natural
//! module, one `Λ^h` per column of height `h` in the Young diagram of `λ`.
//! The tensor of the wedges `e_1∧…∧e_h` is a highest-weight vector of weight
//! `λ`; closing it under the lowering operators gives the irreducible
//! submodule. Each `E_ii` is then shifted by `(b − |λ|)/d` so the identity
//! matrix acts by `b`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::linalg::{SparseMatrix, SparseVec, SpanBasis};
use crate::exact::{parse_rational, q, QVec, Rational};
use crate::report::IdentityReport;

/// `ψ = Σ a_k δ_k` together with the scalar `b` by which the identity acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantWeight {
    coeffs: Vec<u32>,
    b: Rational,
}

impl DominantWeight {
    /// Coefficients `a_1..a_{d-1}`; the rank `d` is one more than their count.
    pub fn new(coeffs: Vec<u32>, b: Rational) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Config("gl_d needs d >= 2, i.e. at least one coefficient".into()));
        }
        Ok(DominantWeight { coeffs, b })
    }

    pub fn zero(dim: usize, b: Rational) -> Result<Self> {
        Self::new(vec![0; dim.saturating_sub(1)], b)
    }

    /// Parses `a1,a2,...` (non-negative integers).
    pub fn parse(weights: &str, b: Rational) -> Result<Self> {
        let coeffs = weights
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("weight coefficient {s:?} is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs, b)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn with_b(&self, b: Rational) -> Self {
        DominantWeight { coeffs: self.coeffs.clone(), b }
    }

    /// `λ_i = a_i + … + a_{d−1}`, `λ_d = 0`.
    pub fn lambda(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for i in (0..self.coeffs.len()).rev() {
            out[i] = out[i + 1] + self.coeffs[i] as i64;
        }
        out
    }

    fn columns(&self) -> Vec<usize> {
        let mut cols = Vec::new();
        for (k, &a) in self.coeffs.iter().enumerate().rev() {
            cols.extend(std::iter::repeat_n(k + 1, a as usize));
        }
        cols
    }
}

/// Weyl's dimension formula `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
pub fn weyl_dim(psi: &DominantWeight) -> u64 {
    let lam = psi.lambda();
    let d = lam.len();
    let mut prod = Rational::one();
    for i in 0..d {
        for j in i + 1..d {
            let gap = (j - i) as i64;
            prod *= q(lam[i] - lam[j] + gap) / q(gap);
        }
    }
    debug_assert!(prod.is_integer());
    u64::try_from(prod.to_integer()).expect("dimension fits in u64")
}

/// A `gl_d`-module given by the matrices of the `E_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlRep {
    d: usize,
    b: Rational,
    matrices: Vec<SparseMatrix>,
    weights: Vec<QVec>,
}

/// First violated relation found by [`GlRep::first_failure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepFailure {
    /// `[E_ij, E_kl] ≠ δ_jk E_il − δ_li E_kj`, indices 0-based.
    Bracket { i: usize, j: usize, k: usize, l: usize, entry: (usize, usize) },
    Trace { entry: (usize, usize) },
    Weight { basis: usize, axis: usize },
}

impl std::fmt::Display for RepFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepFailure::Bracket { i, j, k, l, entry } => write!(
                f,
                "[E_{}{}, E_{}{}] relation fails at entry {:?}",
                i + 1,
                j + 1,
                k + 1,
                l + 1,
                entry
            ),
            RepFailure::Trace { entry } => write!(f, "sum of E_ii differs from b*id at entry {entry:?}"),
            RepFailure::Weight { basis, axis } => {
                write!(f, "basis vector {basis} is not an E_{0}{0} eigenvector with its label", axis + 1)
            }
        }
    }
}

impl GlRep {
    /// Assembles a module from raw data after checking shapes. The relations
    /// are not checked here; see [`GlRep::first_failure`].
    pub fn from_parts(d: usize, b: Rational, matrices: Vec<SparseMatrix>, weights: Vec<QVec>) -> Result<Self> {
        if matrices.len() != d * d {
            return Err(Error::Construction(format!("expected {} matrices, found {}", d * d, matrices.len())));
        }
        let n = weights.len();
        if matrices.iter().any(|m| m.size() != n) || weights.iter().any(|w| w.dim() != d) {
            return Err(Error::Construction("matrix or weight shape mismatch".into()));
        }
        Ok(GlRep { d, b, matrices, weights })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Matrix of `E_ij` (0-based).
    pub fn e(&self, i: usize, j: usize) -> &SparseMatrix {
        &self.matrices[i * self.d + j]
    }

    pub fn weight(&self, basis: usize) -> &QVec {
        &self.weights[basis]
    }

    pub fn weights(&self) -> &[QVec] {
        &self.weights
    }

    /// Copy with one matrix entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, row: usize, col: usize, value: Rational) -> Self {
        let mut out = self.clone();
        out.matrices[i * self.d + j].set(row, col, value);
        out
    }

    /// `Σ_{ij} M_ij E_ij`, the action of a matrix `M ∈ gl_d`.
    pub fn act_matrix(&self, m: &[Vec<Rational>]) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.n());
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.add_scaled(self.e(i, j), c);
            }
        }
        out
    }

    pub fn first_failure(&self) -> Option<RepFailure> {
        let d = self.d;
        let n = self.n();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let lhs = self.e(i, j).commutator(self.e(k, l));
                        let mut rhs = SparseMatrix::zero(n);
                        if j == k {
                            rhs.add_scaled(self.e(i, l), &q(1));
                        }
                        if l == i {
                            rhs.add_scaled(self.e(k, j), &q(-1));
                        }
                        if let Some(entry) = lhs.first_difference(&rhs) {
                            return Some(RepFailure::Bracket { i, j, k, l, entry });
                        }
                    }
                }
            }
        }
        let mut trace = SparseMatrix::zero(n);
        for i in 0..d {
            trace.add_scaled(self.e(i, i), &q(1));
        }
        if let Some(entry) = trace.first_difference(&SparseMatrix::scalar(n, &self.b)) {
            return Some(RepFailure::Trace { entry });
        }
        for basis in 0..n {
            for axis in 0..d {
                let col: SparseVec<usize> = [(basis, q(1))].into_iter().collect();
                let image = self.e(axis, axis).apply_sparse(&col);
                let label = &self.weights[basis].coords()[axis];
                let expected: SparseVec<usize> =
                    if label.is_zero() { SparseVec::new() } else { [(basis, label.clone())].into_iter().collect() };
                if image != expected {
                    return Some(RepFailure::Weight { basis, axis });
                }
            }
        }
        None
    }

    /// Dimension of the joint kernel of the raising operators `E_ij`, `i < j`.
    pub fn singular_dim(&self) -> usize {
        let mut rows = SpanBasis::new();
        for i in 0..self.d {
            for j in i + 1..self.d {
                for r in 0..self.n() {
                    rows.insert(self.e(i, j).row(r));
                }
            }
        }
        self.n() - rows.rank()
    }

    /// Dimension of the submodule generated by `v`.
    pub fn cyclic_span_dim(&self, v: &SparseVec<usize>) -> usize {
        let mut span = SpanBasis::new();
        let mut queue = VecDeque::new();
        if let Some(row) = span.insert(v) {
            queue.push_back(row);
        }
        while let Some(w) = queue.pop_front() {
            for m in &self.matrices {
                if let Some(row) = span.insert(&m.apply_sparse(&w)) {
                    queue.push_back(row);
                }
            }
            if span.rank() == self.n() {
                break;
            }
        }
        span.rank()
    }

    /// Plain-text dump: a header, the weight labels, then each `E_ij`
    /// (1-based in the text) as a dense row-major matrix of exact fractions.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "gl {} {}", self.d, self.n()).unwrap();
        writeln!(out, "b {}", self.b).unwrap();
        for w in &self.weights {
            let labels: Vec<String> = w.coords().iter().map(ToString::to_string).collect();
            writeln!(out, "weight {}", labels.join(" ")).unwrap();
        }
        for i in 0..self.d {
            for j in 0..self.d {
                writeln!(out, "E {} {}", i + 1, j + 1).unwrap();
                write!(out, "{}", self.e(i, j)).unwrap();
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("gl module text: {msg}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
        let (d, n) = match header.as_slice() {
            ["gl", d, n] => (d.parse::<usize>().map_err(|_| bad("rank"))?, n.parse::<usize>().map_err(|_| bad("size"))?),
            _ => return Err(bad("header must be `gl d N`")),
        };
        let b = match lines.next().and_then(|l| l.strip_prefix("b ")) {
            Some(b) => parse_rational(b.trim())?,
            None => return Err(bad("missing `b` line")),
        };
        let row_of = |line: &str, len: usize| -> Result<Vec<Rational>> {
            let vals = line.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?;
            if vals.len() != len {
                return Err(bad("row length"));
            }
            Ok(vals)
        };
        let mut weights = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines.next().and_then(|l| l.strip_prefix("weight")).ok_or_else(|| bad("missing weight line"))?;
            weights.push(QVec::new(row_of(line, d)?));
        }
        let mut matrices = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let label = lines.next().ok_or_else(|| bad("missing matrix"))?;
                if label != format!("E {} {}", i + 1, j + 1) {
                    return Err(bad(&format!("expected `E {} {}`, found {label:?}", i + 1, j + 1)));
                }
                let mut m = SparseMatrix::zero(n);
                for r in 0..n {
                    let row = row_of(lines.next().ok_or_else(|| bad("missing row"))?, n)?;
                    for (c, v) in row.into_iter().enumerate() {
                        m.set(r, c, v);
                    }
                }
                matrices.push(m);
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing content"));
        }
        Self::from_parts(d, b, matrices, weights)
    }
}

/// Reports every violated relation class, naming the first failing indices.
pub fn check_rep(rep: &GlRep) -> IdentityReport {
    let report = IdentityReport::new(format!("gl_{} relations on a module of dimension {}", rep.d(), rep.n()), "gl_d bracket relations");
    match rep.first_failure() {
        None => {
            let mut r = report;
            r.pass_instance();
            r
        }
        Some(f) => report.fail(f.to_string()),
    }
}

// Basis of one exterior-power factor: a sorted subset, as a bitmask.
type Tensor = Vec<u32>;

fn apply_e(i: usize, j: usize, v: &SparseVec<Tensor>) -> SparseVec<Tensor> {
    let mut out: SparseVec<Tensor> = BTreeMap::new();
    let (bi, bj) = (1u32 << i, 1u32 << j);
    for (key, c) in v {
        for (slot, &set) in key.iter().enumerate() {
            if set & bj == 0 {
                continue;
            }
            if i == j {
                *out.entry(key.clone()).or_insert_with(Rational::zero) += c;
                continue;
            }
            if set & bi != 0 {
                continue;
            }
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            let between = (set >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
            let sign = if between.count_ones().is_multiple_of(2) { q(1) } else { q(-1) };
            let mut k = key.clone();
            k[slot] = (set & !bj) | bi;
            *out.entry(k).or_insert_with(Rational::zero) += c * sign;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Builds `V(ψ, b)`. The basis is graded by weight (weights in decreasing
/// lexicographic order, highest weight first).
pub fn build_irrep(psi: &DominantWeight) -> GlRep {
    let d = psi.dim();
    let lam = psi.lambda();
    let highest: Tensor = psi.columns().iter().map(|&h| (1u32 << h) - 1).collect();
    let mut spaces: BTreeMap<Vec<i64>, SpanBasis<Tensor>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let hw: SparseVec<Tensor> = [(highest, q(1))].into_iter().collect();
    spaces.entry(lam.clone()).or_default().insert(&hw);
    queue.push_back((lam.clone(), hw));
    while let Some((w, v)) = queue.pop_front() {
        for i in 0..d {
            for j in i + 1..d {
                let image = apply_e(j, i, &v);
                if image.is_empty() {
                    continue;
                }
                let mut target = w.clone();
                target[i] -= 1;
                target[j] += 1;
                if let Some(row) = spaces.entry(target.clone()).or_default().insert(&image) {
                    queue.push_back((target, row));
                }
            }
        }
    }

    // Index the final rows: weights in decreasing order, pivots ascending.
    let mut offsets: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut basis: Vec<(Vec<i64>, SparseVec<Tensor>)> = Vec::new();
    for (w, span) in spaces.iter().rev() {
        offsets.insert(w.clone(), basis.len());
        basis.extend(span.rows().map(|(_, row)| (w.clone(), row.clone())));
    }
    let n = basis.len();
    let size: i64 = lam.iter().sum();
    let shift = (psi.b() - q(size)) / q(d as i64);

    let mut matrices = Vec::with_capacity(d * d);
    for a in 0..d {
        for c in 0..d {
            let mut m = SparseMatrix::zero(n);
            for (col, (w, v)) in basis.iter().enumerate() {
                let image = apply_e(a, c, v);
                if image.is_empty() {
                    continue;
                }
                let mut target = w.clone();
                target[a] += 1;
                target[c] -= 1;
                let span = &spaces[&target];
                let coords = span.coordinates(&image).expect("closure is a submodule");
                let base = offsets[&target];
                for (pos, (pivot, _)) in span.rows().enumerate() {
                    if let Some(x) = coords.get(pivot) {
                        m.set(base + pos, col, x.clone());
                    }
                }
            }
            if a == c {
                for k in 0..n {
                    let x = m.get(k, k) + &shift;
                    m.set(k, k, x);
                }
            }
            matrices.push(m);
        }
    }
    let weights = basis
        .iter()
        .map(|(w, _)| QVec::new(w.iter().map(|&x| q(x) + &shift).collect()))
        .collect();
    GlRep { d, b: psi.b().clone(), matrices, weights }
}

/// Irreducibility evidence: a one-dimensional space of singular vectors and
/// every basis vector (plus `random` random vectors) generating the whole module.
pub fn check_irreducible<R: Rng>(rep: &GlRep, rng: &mut R, random: usize) -> IdentityReport {
    let mut report = IdentityReport::new(format!("gl_{} module of dimension {} is cyclic from every vector", rep.d(), rep.n()), "irreducibility");
    let singular = rep.singular_dim();
    report.record(singular == 1, || format!("singular space has dimension {singular}"));
    let n = rep.n();
    let mut seeds: Vec<SparseVec<usize>> = (0..n).map(|i| [(i, q(1))].into_iter().collect()).collect();
    for _ in 0..random {
        let v: SparseVec<usize> = (0..n)
            .map(|i| (i, q(rng.gen_range(-3..=3))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !v.is_empty() {
            seeds.push(v);
        }
    }
    for v in seeds {
        let span = rep.cyclic_span_dim(&v);
        report.record(span == n, || format!("vector {v:?} generates dimension {span} of {n}"));
        if !report.passed() {
            break;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn weight(a: &[u32], b: Rational) -> DominantWeight {
        DominantWeight::new(a.to_vec(), b).unwrap()
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&weight(&[0], q(0))), 1);
        for n in 0..6 {
            assert_eq!(weyl_dim(&weight(&[n], q(0))), n as u64 + 1);
        }
        assert_eq!(weyl_dim(&weight(&[1, 1], q(0))), 8);
        assert_eq!(weyl_dim(&weight(&[1, 0, 0], q(0))), 4);
        assert_eq!(weyl_dim(&weight(&[0, 1, 0], q(0))), 6);
    }

    #[test]
    fn trivial_module() {
        let rep = build_irrep(&weight(&[0, 0], frac(5, 7)));
        assert_eq!(rep.n(), 1);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { frac(5, 21) } else { q(0) };
                assert_eq!(rep.e(i, j).get(0, 0), expected);
            }
        }
        assert!(rep.first_failure().is_none());
    }

    #[test]
    fn natural_and_adjoint() {
        let nat = build_irrep(&weight(&[1], q(1)));
        assert_eq!(nat.n(), 2);
        assert!(nat.first_failure().is_none());
        assert_eq!(nat.weight(0), &QVec::from_ints(&[1, 0]));
        let adj = build_irrep(&weight(&[1, 1], q(0)));
        assert_eq!(adj.n(), 8);
        assert!(adj.first_failure().is_none());
        assert_eq!(adj.singular_dim(), 1);
    }

    #[test]
    fn dimensions_on_small_grid() {
        for coeffs in [vec![2], vec![0, 2], vec![2, 1], vec![0, 1, 0], vec![1, 0, 1]] {
            let psi = weight(&coeffs, frac(-1, 3));
            let rep = build_irrep(&psi);
            assert_eq!(rep.n() as u64, weyl_dim(&psi), "{coeffs:?}");
            assert_eq!(rep.first_failure(), None, "{coeffs:?}");
        }
    }

    #[test]
    fn perturbation_detected() {
        let rep = build_irrep(&weight(&[1], q(0)));
        let bad = rep.with_entry(0, 1, 0, 1, q(2));
        match bad.first_failure() {
            Some(RepFailure::Bracket { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(!check_rep(&bad).passed());
        let trivial = build_irrep(&weight(&[0], q(0)));
        assert!(check_rep(&trivial).passed());
    }

    #[test]
    fn text_roundtrip() {
        let rep = build_irrep(&weight(&[1, 1], frac(2, 3)));
        let parsed = GlRep::parse_text(&rep.to_text()).unwrap();
        assert_eq!(parsed, rep);
        assert!(GlRep::parse_text("gl 2 1\nb 0\n").is_err());
    }

    #[test]
    fn parse_weights() {
        let psi = DominantWeight::parse("1, 0,2", q(1)).unwrap();
        assert_eq!(psi.dim(), 4);
        assert_eq!(psi.lambda(), vec![3, 2, 2, 0]);
        assert!(DominantWeight::parse("1,-1", q(0)).is_err());
        assert!(DominantWeight::new(vec![], q(0)).is_err());
    }
}

//! Brute-force description of the augmentation-ideal powers `J_k` inside a
//! finite exponent box, used to validate the jet oracle.

#![allow(dead_code)]

use dertorus::exact::linalg::{SparseVec, SpanBasis};
use dertorus::exact::{in_jk, multisets, p_k, q, LaurentPoly, Lattice};

pub struct BoxCheck {
    pub k: usize,
    pub generators: usize,
    pub span_dim: usize,
    pub kernel_dim: usize,
    pub with_constants_dim: usize,
    pub kernel_dim_mod_constants: usize,
    pub generators_vanish: bool,
    pub random_agree: bool,
}

impl BoxCheck {
    pub fn passed(&self) -> bool {
        self.generators_vanish
            && self.random_agree
            && self.span_dim == self.kernel_dim
            && self.with_constants_dim == self.kernel_dim_mod_constants
    }
}

fn next_multiset(choose: &mut [usize], len: usize) -> bool {
    for i in (0..choose.len()).rev() {
        if choose[i] + 1 < len {
            choose[i] += 1;
            let v = choose[i];
            choose[i + 1..].iter_mut().for_each(|c| *c = v);
            return true;
        }
    }
    false
}

fn box_points(radius: i64) -> Vec<Lattice> {
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            out.push(Lattice::new(vec![a, b]));
        }
    }
    out
}

fn as_row(f: &LaurentPoly) -> SparseVec<Lattice> {
    f.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn inside(f: &LaurentPoly, radius: i64) -> bool {
    f.terms().all(|(e, _)| e.coords().iter().all(|c| c.abs() <= radius))
}

fn jet_rank(points: &[Lattice], orders: std::ops::RangeInclusive<usize>) -> usize {
    let mut rows = SpanBasis::new();
    for order in orders {
        for key in multisets(2, order) {
            let row: SparseVec<usize> = points
                .iter()
                .enumerate()
                .map(|(i, p)| (i, LaurentPoly::monomial(p.clone(), q(1)).jet_value(&key)))
                .filter(|(_, c)| *c != q(0))
                .collect();
            rows.insert(&row);
        }
    }
    rows.rank()
}

/// For `d = 2`: every `t^r prod (1 - t^{m_i})` with `r, m_i` in `[-radius, radius]^2`
/// and support inside the box. Their span must equal the common kernel of
/// the jet functionals of orders `< k` on the box (and likewise modulo
/// constants), which pins `J_k ∩ box` to what the oracle decides.
pub fn check_box(k: usize, radius: i64, samples: &[LaurentPoly]) -> BoxCheck {
    let points = box_points(radius);
    let shifts: Vec<Lattice> = points.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut span = SpanBasis::new();
    let mut generators = 0;
    let mut generators_vanish = true;
    let mut choose = vec![0usize; k];
    loop {
        let ms: Vec<Lattice> = choose.iter().map(|&i| shifts[i].clone()).collect();
        let base = p_k(2, &ms).expect("nonzero shifts");
        for r in &points {
            let g = base.shift(r);
            if !inside(&g, radius) {
                continue;
            }
            generators += 1;
            generators_vanish &= in_jk(&g, k, false);
            span.insert(&as_row(&g));
        }
        if !next_multiset(&mut choose, shifts.len()) {
            break;
        }
    }
    let n = points.len();
    let kernel_dim = n - if k == 0 { 0 } else { jet_rank(&points, 0..=k - 1) };
    let kernel_dim_mod_constants = n - if k <= 1 { 0 } else { jet_rank(&points, 1..=k - 1) };
    let mut with_constants = span.clone();
    with_constants.insert(&as_row(&LaurentPoly::one(2)));
    let random_agree = samples
        .iter()
        .filter(|f| inside(f, radius))
        .all(|f| span.contains(&as_row(f)) == in_jk(f, k, false) && with_constants.contains(&as_row(f)) == in_jk(f, k, true));
    BoxCheck {
        k,
        generators,
        span_dim: span.rank(),
        kernel_dim,
        with_constants_dim: with_constants.rank(),
        kernel_dim_mod_constants,
        generators_vanish,
        random_agree,
    }
}

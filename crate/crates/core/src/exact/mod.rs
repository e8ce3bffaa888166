//! Exact scalars, lattice vectors, sparse Laurent polynomials and the
//! linear algebra needed to decide span membership over the rationals.

mod lattice;
mod laurent;
pub mod linalg;
mod rational;

pub use lattice::{Lattice, QVec};
pub use laurent::{in_jk, jet_at_one, jk_witness, multisets, p_k, JetKey, LaurentPoly};
pub use rational::{frac, parse_rational, parse_rational_list, q, Rational};

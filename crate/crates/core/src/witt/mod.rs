//! Vector fields on the torus: the derivation algebra `Der A`, its
//! semidirect sum with `A`, and the toroidal algebra built on a simple Lie
//! algebra with center `Omega_A / d_A`.

mod der;
mod lie;
mod toroidal;

pub use der::{ADerAlgebra, ADerElement, DerAlgebra, DerElement};
pub use lie::{check_antisymmetry_jacobi, check_jacobi, LieAlgebra};
pub use toroidal::{SimpleAlgebra, TauElement, ToroidalAlgebra, SL2_DATA};

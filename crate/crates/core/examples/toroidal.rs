//! The toroidal algebra sl_2 ⊗ A + Ω_A/dA + Der A: loop brackets pick up a
//! central term, and vector fields act on both loops and the center.

use dertorus::exact::{q, Lattice, QVec};
use dertorus::witt::{DerElement, SimpleAlgebra, TauElement};

fn main() -> dertorus::Result<()> {
    let g = SimpleAlgebra::sl2();
    println!("structure data:\n{}", g.to_text());

    let (e, f) = (0, 2);
    let x = TauElement::loop_term(3, e, Lattice::new(vec![1, 0]), q(1))?;
    let y = TauElement::loop_term(3, f, Lattice::new(vec![-1, 2]), q(1))?;
    println!("[{x}, {y}] = {}", x.bracket(&y, &g)?);

    let k = TauElement::center_term(3, QVec::from_ints(&[1, 1]), Lattice::new(vec![1, -1]))?;
    let d = TauElement::from_der(3, DerElement::term(QVec::from_ints(&[0, 1]), Lattice::new(vec![0, 1]))?);
    println!("canonical center term: {k}");
    println!("[{d}, {k}] = {}", d.bracket(&k, &g)?);
    Ok(())
}

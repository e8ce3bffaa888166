//! Brackets of vector fields D(u, r) = t^r sum u_i t_i d/dt_i, their action
//! on Laurent polynomials, and the semidirect product A + Der A.

use dertorus::exact::{q, LaurentPoly, Lattice, QVec};
use dertorus::witt::{ADerElement, DerElement};

fn main() -> dertorus::Result<()> {
    let x = DerElement::term(QVec::from_ints(&[1, 0]), Lattice::new(vec![0, 1]))?;
    let y = DerElement::term(QVec::from_ints(&[0, 1]), Lattice::new(vec![1, 0]))?;
    println!("[{x}, {y}] = {}", x.bracket(&y)?);

    let f = LaurentPoly::monomial(Lattice::new(vec![2, -1]), q(3));
    println!("{x} . {f} = {}", x.act(&f)?);

    let a = ADerElement::from_poly(f.clone());
    let b = ADerElement::from_der(x.clone());
    println!("[{b}, {a}] = {}", b.bracket(&a)?);
    Ok(())
}

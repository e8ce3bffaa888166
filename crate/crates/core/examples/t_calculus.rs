//! The operators T(u, r), the alternating sums T_k, the filtration I_k and
//! its first quotient gl_d.

use dertorus::exact::{Lattice, QVec};
use dertorus::tcalc::{filtration_dims, identity_element, ik_witness, in_ik, t_mod_i2_reduce, TElement, TkSpec};

fn main() -> dertorus::Result<()> {
    let a = TElement::unit(2, 0, 1);
    let b = TElement::unit(2, 1, 0);
    let ab = a.bracket(&b)?;
    println!("[{a}, {b}] = {ab}");
    println!("coefficients of T(e_i, e_j) modulo I_2:");
    for row in t_mod_i2_reduce(&ab) {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  {}", row.join(" "));
    }

    let spec = TkSpec::new(QVec::from_ints(&[1, 0]), Lattice::new(vec![1, 0]), vec![Lattice::unit(2, 0), Lattice::unit(2, 1)])?;
    let t2 = spec.expand();
    println!("{spec} = {t2}");
    println!("in I_2: {}, in I_3: {}", in_ik(&t2, 2), in_ik(&t2, 3));
    if let Some(w) = ik_witness(&t2, 3) {
        println!("certificate: {w}");
    }

    let rem = &identity_element(2).bracket(&t2)? - &t2;
    println!("[I, T_2] - T_2 in I_3: {}", in_ik(&rem, 3));

    for layer in filtration_dims(2, 4) {
        println!("dim I_{}/I_{} = {} (bound {})", layer.k, layer.k + 1, layer.total, layer.bound);
    }
    Ok(())
}

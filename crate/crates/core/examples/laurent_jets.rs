//! Laurent polynomials, Euler derivations and membership in powers of the
//! augmentation ideal decided by jets at t = (1, ..., 1).

use dertorus::exact::{in_jk, jet_at_one, jk_witness, p_k, LaurentPoly, Lattice};

fn main() -> dertorus::Result<()> {
    let e1 = Lattice::unit(2, 0);
    let e2 = Lattice::unit(2, 1);

    let f: LaurentPoly = "1*t^(0,0) + -2*t^(1,0) + 1*t^(2,0)".parse()?;
    println!("f = {f}");
    println!("t1 d/dt1 f = {}", f.euler_derive(0)?);
    for (jet, value) in jet_at_one(&f, 2) {
        println!("  jet {jet:?} = {value}");
    }

    let g = p_k(2, &[e1.clone(), e2.clone()])?;
    println!("(1 - t1)(1 - t2) = {g}");
    for k in 1..=3 {
        println!("  in J_{k}: {}", in_jk(&g, k, false));
    }
    if let Some((jet, value)) = jk_witness(&p_k(2, &[e1.clone(), e1])?, 3, false) {
        println!("(1 - t1)^2 is not in J_3: jet {jet:?} = {value}");
    }
    Ok(())
}

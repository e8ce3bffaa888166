//! Builds irreducible gl_d modules V(psi, b), compares with Weyl's formula and
//! checks every commutation relation.

use dertorus::exact::frac;
use dertorus::gl::{build_irrep, check_rep, weyl_dim, DominantWeight};

fn main() -> dertorus::Result<()> {
    for (coeffs, b) in [(vec![1], frac(1, 1)), (vec![2], frac(3, 1)), (vec![1, 1], frac(0, 1)), (vec![0, 1, 0], frac(5, 7))] {
        let psi = DominantWeight::new(coeffs.clone(), b)?;
        let rep = build_irrep(&psi);
        let report = check_rep(&rep);
        println!(
            "d={} a={coeffs:?} b={}: dim {} (Weyl {}), relations {:?}, singular vectors {}",
            psi.dim(),
            psi.b(),
            rep.n(),
            weyl_dim(&psi),
            report.status,
            rep.singular_dim()
        );
    }
    let nat = build_irrep(&DominantWeight::new(vec![1], frac(1, 1))?);
    print!("{}", nat.to_text());
    Ok(())
}

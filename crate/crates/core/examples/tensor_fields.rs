//! Tensor-field modules F^alpha(psi, b): the vector-field action, the
//! induced gl_d action of T on a weight space, and submodule scans.

use dertorus::exact::{frac, q, Lattice, QVec};
use dertorus::fields::{act_der_field, act_t_weightspace, submodule_scan, FieldVector, ModuleParams, ScanMode};
use dertorus::gl::DominantWeight;
use dertorus::witt::DerElement;

fn main() -> dertorus::Result<()> {
    let p = ModuleParams::new(DominantWeight::new(vec![1], frac(5, 7))?, QVec::new(vec![frac(1, 3), q(0)]))?;
    let v = FieldVector::basis(Lattice::new(vec![1, 0]), 0);
    let x = DerElement::term(QVec::from_ints(&[0, 1]), Lattice::new(vec![1, 1]))?;
    println!("{x} . {v} = {}", act_der_field(&x, &v, &p)?);

    let w = [(0, q(1))].into_iter().collect();
    let image = act_t_weightspace(&QVec::unit(2, 0), &Lattice::unit(2, 1), &w, &p);
    let coords: Vec<String> = image.iter().map(|(i, c)| format!("{c} e_{i}")).collect();
    println!("T(e_1, e_2) . e_0 = {}", coords.join(" + "));

    let generic = submodule_scan(&p, &FieldVector::from_dense(Lattice::zero(2), &[q(2), q(-1)]), ScanMode::Der, 6, 3)?;
    println!("generic parameters: {}", generic.summary);

    let trivial = ModuleParams::new(DominantWeight::zero(2, q(0))?, QVec::zero(2))?;
    let line = submodule_scan(&trivial, &FieldVector::basis(Lattice::zero(2), 0), ScanMode::Der, 6, 3)?;
    println!("psi=0, b=0, alpha=0: {} ({})", line.summary, line.witness.unwrap_or_default());
    let with_a = submodule_scan(&trivial, &FieldVector::basis(Lattice::zero(2), 0), ScanMode::Ader, 6, 3)?;
    println!("same with A acting: {}", with_a.summary);
    Ok(())
}

use std::fmt::Display;

use rand::Rng;

use crate::error::Result;
use crate::report::IdentityReport;

/// A Lie algebra given by a bracket on some element type. Implementors carry
/// whatever context the bracket needs (dimension, structure constants).
pub trait LieAlgebra {
    type Elem: Clone + Display;

    fn name(&self) -> String;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
}

/// Checks `[x,y] + [y,x] = 0` and the Jacobi identity on one triple.
/// Returns a description of the violated identity, if any.
pub fn check_antisymmetry_jacobi<L: LieAlgebra>(
    alg: &L,
    x: &L::Elem,
    y: &L::Elem,
    z: &L::Elem,
) -> Result<Option<String>> {
    let xy = alg.bracket(x, y)?;
    let yx = alg.bracket(y, x)?;
    let sym = alg.add(&xy, &yx);
    if !alg.is_zero(&sym) {
        return Ok(Some(format!("antisymmetry fails: x={x}; y={y}; [x,y]+[y,x]={sym}")));
    }
    let a = alg.bracket(x, &alg.bracket(y, z)?)?;
    let b = alg.bracket(y, &alg.bracket(z, x)?)?;
    let c = alg.bracket(z, &xy)?;
    let total = alg.add(&alg.add(&a, &b), &c);
    if !alg.is_zero(&total) {
        return Ok(Some(format!("jacobi fails: x={x}; y={y}; z={z}; sum={total}")));
    }
    Ok(None)
}

/// Samples `trials` triples and checks antisymmetry and Jacobi exactly on
/// each. Stops at the first counterexample, which is reported verbatim.
pub fn check_jacobi<L, R, F>(alg: &L, rng: &mut R, mut sample: F, trials: usize) -> IdentityReport
where
    L: LieAlgebra,
    R: Rng,
    F: FnMut(&mut R) -> L::Elem,
{
    let mut report = IdentityReport::new(
        format!("{}: antisymmetry and Jacobi", alg.name()),
        "Lie bracket axioms",
    );
    for _ in 0..trials {
        let x = sample(rng);
        let y = sample(rng);
        let z = sample(rng);
        match check_antisymmetry_jacobi(alg, &x, &y, &z) {
            Ok(None) => report.pass_instance(),
            Ok(Some(w)) => return report.fail(w),
            Err(e) => return report.fail(format!("bracket error: {e}")),
        }
    }
    report
}

use crate::exterior::{Form, GenVector, Multivector};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Subspace};

fn vector_bracket(m: &LieModel, x: &[Cq], y: &[Cq]) -> Vec<Cq> {
    let xy = Multivector::from_vec(x).wedge(&Multivector::from_vec(y));
    (1..=m.n()).map(|k| -xy.contract(m.de(k)).expect("same size").coeff(0)).collect()
}

fn one_form_coords(n: usize, a: &Form) -> Vec<Cq> {
    (0..n).map(|i| a.coeff(1 << i)).collect()
}

/// Twisted Courant bracket of invariant sections:
/// `[X+ξ, Y+η] = [X,Y] + X⌟dη − Y⌟dξ + X⌟Y⌟H`, the derived bracket of `d_H = d + H∧`.
pub fn courant(m: &LieModel, a: &GenVector, b: &GenVector) -> GenVector {
    let n = m.n();
    let x = vector_bracket(m, &a.x, &b.x);
    let deta = m.d(&b.covector_form()).contract_vec(&a.x);
    let dxi = m.d(&a.covector_form()).contract_vec(&b.x);
    let h = m.h().contract_vec(&b.x).contract_vec(&a.x);
    let xi = one_form_coords(n, &(deta - dxi + h));
    GenVector::new(x, xi)
}

/// Whether the span of `basis` is closed under the Courant bracket; returns a failing pair otherwise.
pub fn involutive(m: &LieModel, basis: &[Vec<Cq>]) -> Result<(), (usize, usize)> {
    let space = Subspace::span(2 * m.n(), basis.to_vec());
    let gens: Vec<GenVector> = basis.iter().map(|v| GenVector::from_coords(v)).collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !space.contains(&courant(m, &gens[i], &gens[j]).to_coords()) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// `2⟨[a, b], c⟩`, the Courant tensor evaluated on three sections.
pub fn courant_tensor(m: &LieModel, a: &GenVector, b: &GenVector, c: &GenVector) -> Cq {
    courant(m, a, b).pairing(c) * Cq::from_int(2)
}

use serde::Serialize;

use crate::exterior::{mukai, Basis, Form, GenVector};
use crate::liealg::LieModel;
use crate::linalg::{Field, Matrix, Subspace};
use crate::{Error, Result};

/// Matrix whose column `j` is `v_j·ρ` for the standard basis `v_j` of `V ⊕ V*`.
pub fn clifford_matrix<F: Field>(rho: &Form<F>) -> Matrix<F> {
    let n = rho.n();
    let full = Basis::full(n);
    let cols: Vec<Vec<F>> = GenVector::<F>::standard_basis(n).iter().map(|v| full.coords(&v.act(rho))).collect();
    Matrix::from_cols(full.len(), &cols)
}

/// Annihilator of `ρ` in `(V ⊕ V*)⊗C`, in coordinates `(X, ξ)`.
pub fn annihilator<F: Field>(rho: &Form<F>) -> Subspace<F> {
    clifford_matrix(rho).rank_kernel().1
}

/// The line of spinors annihilated by a maximal isotropic subspace, as a representative.
pub fn spinor_of<F: Field>(n: usize, isotropic: &[GenVector<F>]) -> Result<Form<F>> {
    if isotropic.len() != n {
        return Err(Error::Dimension(format!("need {} spanning vectors, got {}", n, isotropic.len())));
    }
    for a in isotropic {
        for b in isotropic {
            if !a.pairing(b).is_zero() {
                return Err(Error::Invalid("subspace is not isotropic".into()));
            }
        }
    }
    let full = Basis::full(n);
    let blocks: Vec<Matrix<F>> = isotropic.iter().map(|v| full.matrix_of(&full, |a| v.act(a))).collect();
    let mut stacked = blocks[0].clone();
    for b in &blocks[1..] {
        stacked = stacked.vstack(b);
    }
    let ker = stacked.kernel_basis();
    match ker.len() {
        1 => Ok(full.form(&ker[0])),
        0 => Err(Error::Invalid("no spinor is annihilated by the subspace".into())),
        _ => Err(Error::Invalid("subspace is not maximal".into())),
    }
}

/// Verification booleans for a candidate spinor.
#[derive(Clone, Debug, Serialize)]
pub struct SpinorReport {
    pub pure: bool,
    pub nondegenerate: bool,
    pub integrable: bool,
    pub closed: bool,
    #[serde(rename = "type")]
    pub kind: usize,
    #[serde(rename = "twist-class")]
    pub twist: String,
    pub witnesses: Vec<String>,
    /// Polynomial whose zero set makes the pairing degenerate (symbolic coefficients only).
    pub degeneracy_locus: Option<String>,
}

impl SpinorReport {
    pub fn is_gcs(&self) -> bool {
        self.pure && self.nondegenerate && self.integrable
    }
}

/// Solves `d_Hρ = (X+ξ)·ρ`; `None` when `ρ` is not integrable.
pub fn integrability_solution<F: Field>(m: &LieModel, rho: &Form<F>) -> Option<GenVector<F>> {
    let full = Basis::full(rho.n());
    let rhs = full.coords(&m.d_h(rho));
    clifford_matrix(rho).solve(&rhs).map(|v| GenVector::from_coords(&v))
}

/// Checks purity, nondegeneracy, integrability and closedness of `ρ` over `m`.
///
/// `show` renders forms for witnesses; `locus` renders a nonconstant pairing coefficient.
pub fn verify_spinor<F: Field>(
    m: &LieModel,
    rho: &Form<F>,
    show: impl Fn(&Form<F>) -> String,
    locus: impl Fn(&F) -> Option<String>,
) -> Result<SpinorReport> {
    if rho.is_zero() {
        return Err(Error::Invalid("spinor is zero".into()));
    }
    if rho.n() != m.n() {
        return Err(Error::Dimension(format!("spinor on {} generators, model on {}", rho.n(), m.n())));
    }
    let n = m.n();
    let mut witnesses = Vec::new();
    let ann = annihilator(rho);
    let pure = ann.dim() == n;
    if !pure {
        witnesses.push(format!("annihilator has dimension {} instead of {}", ann.dim(), n));
    }
    let pairing = mukai(rho, &rho.conj())?.top_coeff();
    let nondegenerate = !pairing.is_zero();
    let degeneracy_locus = if nondegenerate { locus(&pairing) } else { None };
    if !nondegenerate {
        witnesses.push("Mukai pairing of the spinor with its conjugate vanishes".into());
    }
    let dh = m.d_h(rho);
    let closed = dh.is_zero();
    let integrable = closed || integrability_solution(m, rho).is_some();
    if !integrable {
        witnesses.push(format!("d_H rho = {} is not a Clifford multiple of rho", show(&dh)));
    }
    Ok(SpinorReport {
        pure,
        nondegenerate,
        integrable,
        closed,
        kind: rho.lowest_degree().unwrap_or(0),
        twist: show(&m.h().lift()),
        witnesses,
        degeneracy_locus,
    })
}

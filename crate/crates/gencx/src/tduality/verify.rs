use serde::Serialize;

use super::DualityPair;
use crate::exterior::{format_form, mukai, Basis, Form, GenVector};
use crate::gcs::courant;
use crate::linalg::{Cq, Matrix, Subspace};
use crate::Result;

/// Identities of a T-dual pair, checked on bases of invariant forms and generalized vectors.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub invariant_forms: usize,
    pub invariant_vectors: usize,
    /// `τ∘d_H = −d_H̃∘τ`.
    pub chain_map: bool,
    /// `τ(v·ρ) = φ(v)·τ(ρ)`.
    pub clifford: bool,
    /// `φ([v,w]_H) = −[φv, φw]_H̃`.
    pub bracket: bool,
    /// `⟨φv, φw⟩ = ⟨v, w⟩`.
    pub orthogonal: bool,
    /// `(τα, τβ) = −θ̃∧γ` whenever `(α, β) = θ∧γ`.
    pub mukai: bool,
    /// `τ̃∘τ = −Id` with `θ̃̃ = θ`.
    pub involution: bool,
    /// Dualizing the dual returns the original model and twist.
    pub double_dual: bool,
    pub witnesses: Vec<String>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.chain_map && self.clifford && self.bracket && self.orthogonal && self.mukai && self.involution && self.double_dual
    }
}

impl DualityPair {
    /// Circle-invariant forms, as a subspace of the full basis.
    pub fn invariant_forms(&self) -> Subspace {
        let b = Basis::full(self.source.n());
        b.matrix_of(&b, |a| self.source.lie_derivative(a)).rank_kernel().1
    }

    pub fn invariant_vectors(&self) -> Subspace {
        let n = self.source.n();
        let cols: Vec<Vec<Cq>> = GenVector::standard_basis(n)
            .iter()
            .map(|v| self.source.lie_derivative_vector(v).to_coords())
            .collect();
        Matrix::from_cols(2 * n, &cols).rank_kernel().1
    }

    pub fn verify(&self) -> Result<DualityReport> {
        let n = self.source.n();
        let full = Basis::full(n);
        let forms: Vec<Form> = self.invariant_forms().basis().iter().map(|v| full.form(v)).collect();
        let vectors: Vec<GenVector> = self.invariant_vectors().basis().iter().map(|v| GenVector::from_coords(v)).collect();
        let (m, mt) = (&self.source.model, &self.dual.model);
        let back = self.reversed();
        let mut w = Vec::new();
        let mut chain_map = true;
        let mut involution = true;
        let mut mukai_ok = true;
        for a in &forms {
            let ta = self.tau(a)?;
            if self.tau(&m.d_h(a))? != -mt.d_h(&ta) {
                chain_map = false;
                w.push(format!("τ d_H ≠ −d_H̃ τ on {}", format_form(a)));
            }
            if back.tau(&ta)? != -a.clone() {
                involution = false;
                w.push(format!("τ² ≠ −1 on {}", format_form(a)));
            }
        }
        for a in &forms {
            for b in &forms {
                let pair = mukai(a, b)?;
                let gamma = pair.contract_gen(self.fiber());
                let rhs = -Form::gen(n, self.fiber()).wedge(&gamma);
                if mukai(&self.tau(a)?, &self.tau(b)?)? != rhs {
                    mukai_ok = false;
                    w.push(format!("Mukai transform fails on ({}, {})", format_form(a), format_form(b)));
                }
            }
        }
        let mut clifford = true;
        for v in &vectors {
            for a in &forms {
                if self.tau(&v.act(a))? != self.phi(v).act(&self.tau(a)?) {
                    clifford = false;
                    w.push(format!("τ(v·ρ) ≠ φ(v)·τ(ρ) on {}", format_form(a)));
                }
            }
        }
        let (mut bracket, mut orthogonal) = (true, true);
        for (i, v) in vectors.iter().enumerate() {
            for u in &vectors[i..] {
                if self.phi(&courant(m, v, u)) != -courant(mt, &self.phi(v), &self.phi(u)) {
                    bracket = false;
                    w.push("φ is not a bracket anti-homomorphism".into());
                }
                if self.phi(v).pairing(&self.phi(u)) != v.pairing(u) {
                    orthogonal = false;
                    w.push("φ is not orthogonal".into());
                }
            }
        }
        let double_dual = super::dualize_along(mt, self.fiber()).map(|p| p.dual.model == *m).unwrap_or(false);
        Ok(DualityReport {
            invariant_forms: forms.len(),
            invariant_vectors: vectors.len(),
            chain_map,
            clifford,
            bracket,
            orthogonal,
            mukai: mukai_ok,
            involution,
            double_dual,
            witnesses: w,
        })
    }
}

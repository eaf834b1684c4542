use serde::Serialize;

use super::LieModel;
use crate::exterior::{degree_masks, Basis, Form, Multivector};
use crate::linalg::{Cq, Matrix, Subspace};
use crate::{Error, Result};

/// The filtration `V_1 ⊂ V_2 ⊂ … ⊂ V_nil = g*` with `V_i = {v : dv ∈ Λ²V_{i−1}}`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub n: usize,
    /// `spaces[i]` is `V_{i+1}` as a subspace of Λ¹ (coordinates in `e_1, …, e_n`).
    pub spaces: Vec<Subspace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub dims: Vec<usize>,
    pub nil_index: usize,
    /// Smallest `j > 0` with `dim V_{i+1}/V_i = 1` for all `i ≥ j`, when one exists.
    pub jump_from: Option<usize>,
    /// Types ruled out by the filtration bound.
    pub excluded_types: Vec<usize>,
    /// Nilpotent degree of each generator.
    pub generator_degrees: Vec<usize>,
}

/// Span of all `k`-fold wedges of vectors in `v` (a subspace of Λ¹), inside Λ^k.
pub fn wedge_power_span(n: usize, v: &Subspace, k: usize) -> Subspace {
    let target = Basis::degree(n, k);
    let forms: Vec<Form> = v.basis().iter().map(|b| Basis::degree(n, 1).form(b)).collect();
    let mut out = Vec::new();
    for idx in degree_masks(forms.len(), k) {
        let mut w = Form::one(n);
        for (i, f) in forms.iter().enumerate() {
            if idx & (1 << i) != 0 {
                w = w.wedge(f);
            }
        }
        out.push(target.coords(&w));
    }
    Subspace::span(target.len(), out)
}

impl Filtration {
    pub fn nil_index(&self) -> usize {
        self.spaces.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// Smallest `i` with `a ∈ Λ^p V_i`; `a` must be homogeneous. Zero has degree 0.
    pub fn nil_degree(&self, a: &Form) -> Option<usize> {
        if a.is_zero() {
            return Some(0);
        }
        let p = a.degree()?;
        let coords = Basis::degree(self.n, p).coords(a);
        self.spaces.iter().position(|v| wedge_power_span(self.n, v, p).contains(&coords)).map(|i| i + 1)
    }

    pub fn report(&self) -> FiltrationReport {
        let dims = self.dims();
        let nil = self.nil_index();
        // steps[i] = dim V_{i+1}/V_i for i = 1..nil−1
        let jump_from = (1..=nil).find(|&j| (j..nil).all(|i| dims[i] - dims[i - 1] == 1));
        let mut excluded = Vec::new();
        if let Some(j) = jump_from {
            let bound = (self.n + j).saturating_sub(nil);
            excluded = (bound..=self.n / 2).collect();
        }
        let generator_degrees =
            (1..=self.n).map(|k| self.nil_degree(&Form::gen(self.n, k)).expect("homogeneous")).collect();
        FiltrationReport { dims, nil_index: nil, jump_from, excluded_types: excluded, generator_degrees }
    }
}

impl LieModel {
    /// The nilpotency filtration; fails when the algebra is not nilpotent.
    pub fn filtration(&self) -> Result<Filtration> {
        let n = self.n();
        let d1 = self.d_matrix(1);
        let mut spaces: Vec<Subspace> = Vec::new();
        let mut prev = Subspace::zero(n);
        loop {
            let target = wedge_power_span(n, &prev, 2);
            let next = target.preimage(&d1);
            if next.dim() == prev.dim() {
                if next.dim() == n {
                    break;
                }
                return Err(Error::NotNilpotent(format!(
                    "the filtration stops at dimension {} of {}",
                    next.dim(),
                    n
                )));
            }
            spaces.push(next.clone());
            if next.dim() == n {
                break;
            }
            prev = next;
        }
        Ok(Filtration { n, spaces })
    }

    pub fn filtration_report(&self) -> Result<FiltrationReport> {
        Ok(self.filtration()?.report())
    }

    /// Pullback of `a` to the span of the given tangent vectors, in the dual frame.
    pub fn restrict_to_subalgebra(&self, tangent: &[Vec<Cq>], a: &Form) -> Result<Form> {
        restrict(tangent, a)
    }

    /// Model of the subalgebra spanned by `tangent`, with generators dual to the given frame.
    /// Fails unless restriction commutes with `d`, i.e. unless the span is closed under brackets.
    pub fn subalgebra(&self, tangent: &[Vec<Cq>]) -> Result<LieModel> {
        let m = tangent.len();
        let n = self.n();
        let pulled: Vec<Form> = (1..=n).map(|i| restrict(tangent, &Form::gen(n, i))).collect::<Result<_>>()?;
        // y^a = Σ_i L_ai i*(e_i) with L a left inverse of T_ia = e_i(t_a)
        let t = Matrix::from_rows(pulled.iter().map(|f| Basis::degree(m, 1).coords(f)).collect());
        let rows = t.transpose().rref().1;
        let square = Matrix::from_rows(rows.iter().map(|&r| t.row(r).to_vec()).collect());
        let inv = square.inverse().ok_or_else(|| Error::Invalid("tangent vectors are linearly dependent".into()))?;
        let mut de = Vec::with_capacity(m);
        for a in 0..m {
            let mut f = Form::zero(m);
            for (col, &r) in rows.iter().enumerate() {
                f = f + restrict(tangent, &self.de(r + 1))?.scale(&inv[(a, col)]);
            }
            de.push(f);
        }
        let sub = LieModel::new(de, Form::zero(m))?;
        for i in 1..=n {
            if restrict(tangent, &self.de(i))? != sub.d(&pulled[i - 1]) {
                return Err(Error::Invalid("the span is not a subalgebra".into()));
            }
        }
        Ok(sub)
    }
}

/// Pullback of `a` to the span of `tangent`, written in the frame dual to `tangent`.
pub fn restrict(tangent: &[Vec<Cq>], a: &Form) -> Result<Form> {
    let m = tangent.len();
    for t in tangent {
        if t.len() != a.n() {
            return Err(Error::Dimension(format!("tangent vector of length {} for {} generators", t.len(), a.n())));
        }
    }
    if m > 0 && Matrix::from_rows(tangent.to_vec()).rank() < m {
        return Err(Error::Invalid("tangent vectors are linearly dependent".into()));
    }
    let mut out = Form::zero(m);
    for mask in crate::exterior::all_masks(m) {
        let mut mv = Multivector(Form::one(a.n()));
        for (i, t) in tangent.iter().enumerate() {
            if mask & (1 << i) != 0 {
                mv = mv.wedge(&Multivector::from_vec(t));
            }
        }
        let val = mv.contract(a)?.coeff(0);
        out.add_term(mask, val);
    }
    Ok(out)
}

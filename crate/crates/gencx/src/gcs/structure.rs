use serde::Serialize;

use super::courant;
use super::spinor::{annihilator, verify_spinor, SpinorReport};
use crate::cohomology::{lemma_check, spot_cohomology, Cohomology, LemmaVerdict};
use crate::exterior::{exp_act, exp_form, format_form, Basis, ExpKind, Form, GenVector, Multivector};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// A generalized almost complex structure given by a pure spinor on a Lie model.
#[derive(Clone, Debug)]
pub struct GCStructure {
    pub model: LieModel,
    pub rho: Form,
    /// `+i`-eigenspace of `J` in `(V ⊕ V*)⊗C`, coordinates `(X, ξ)`.
    pub l: Subspace,
    pub lbar: Subspace,
    /// Real `2n×2n` matrix acting on `(X, ξ)` coordinates.
    pub j: Matrix,
    pub kind: usize,
    pub report: SpinorReport,
    /// `u[k + half]` is `U^k` inside Λ•, in full-basis coordinates.
    pub u: Vec<Subspace>,
    change: Matrix,
    change_inv: Matrix,
    offsets: Vec<usize>,
}

fn show(a: &Form) -> String {
    format_form(a)
}

/// Clifford product of a list of generalized vectors, rightmost applied first.
fn clifford_word(word: &[GenVector], a: &Form) -> Form {
    word.iter().rev().fold(a.clone(), |acc, v| v.act(&acc))
}

impl GCStructure {
    /// Builds the structure of a pure, nondegenerate spinor; integrability is only reported.
    pub fn from_spinor(m: &LieModel, rho: &Form) -> Result<Self> {
        let report = verify_spinor(m, rho, show, |_| None)?;
        if !report.pure {
            return Err(Error::Invalid("spinor is not pure".into()));
        }
        if !report.nondegenerate {
            return Err(Error::Invalid("L meets its conjugate: spinor is degenerate".into()));
        }
        let n = m.n();
        let l = annihilator(rho);
        let lbar = Subspace::span(2 * n, l.basis().iter().map(|v| v.iter().map(|c| c.conj()).collect()).collect());
        let mut cols: Vec<Vec<Cq>> = l.basis().to_vec();
        cols.extend(lbar.basis().iter().cloned());
        let p = Matrix::from_cols(2 * n, &cols);
        let p_inv = p.inverse().ok_or_else(|| Error::Invalid("L meets its conjugate".into()))?;
        let mut diag = Matrix::zeros(2 * n, 2 * n);
        for i in 0..2 * n {
            diag[(i, i)] = if i < n { Cq::i() } else { -Cq::i() };
        }
        let j = p.mul(&diag).mul(&p_inv);
        // U^{half − r} = Λ^r L̄ · ρ
        let full = Basis::full(n);
        let lbar_vecs: Vec<GenVector> = lbar.basis().iter().map(|v| GenVector::from_coords(v)).collect();
        let mut u = vec![Subspace::zero(full.len()); n + 1];
        for r in 0..=n {
            let spans: Vec<Vec<Cq>> = crate::exterior::degree_masks(n, r)
                .into_iter()
                .map(|mask| {
                    let word: Vec<GenVector> =
                        (0..n).filter(|b| mask & (1 << b) != 0).map(|b| lbar_vecs[b].clone()).collect();
                    full.coords(&clifford_word(&word, rho))
                })
                .collect();
            u[n - r] = Subspace::span(full.len(), spans);
        }
        let mut ucols = Vec::new();
        let mut offsets = Vec::new();
        for s in &u {
            offsets.push(ucols.len());
            ucols.extend(s.basis().iter().cloned());
        }
        offsets.push(ucols.len());
        let change = Matrix::from_cols(full.len(), &ucols);
        let change_inv = change.inverse().ok_or_else(|| Error::Invalid("U^k do not span the forms".into()))?;
        Ok(GCStructure { model: m.clone(), rho: rho.clone(), l, lbar, j, kind: report.kind, report, u, change, change_inv, offsets })
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    /// Half the dimension; `U^k` runs over `k = −half, …, half`.
    pub fn half(&self) -> usize {
        self.n() / 2
    }

    pub fn is_integrable(&self) -> bool {
        self.report.integrable
    }

    /// `U^k` for `−half ≤ k ≤ half`.
    pub fn uk(&self, k: i64) -> &Subspace {
        &self.u[(k + self.half() as i64) as usize]
    }

    /// Courant involutivity of `L`, an independent integrability check.
    pub fn involutive(&self) -> bool {
        courant::involutive(&self.model, self.l.basis()).is_ok()
    }

    /// Spin action of `J`: `¼ Σ (J f_a)·(f^a)·` over a basis and its dual for `⟨·,·⟩`.
    pub fn jay_action(&self, a: &Form) -> Form {
        let n = self.n();
        let mut out = Form::zero(n);
        for i in 0..n {
            let jd = GenVector::from_coords(&self.j.col(i));
            let je = GenVector::from_coords(&self.j.col(n + i));
            out = out + jd.act(&GenVector::covector(n, i + 1).act(a));
            out = out + je.act(&GenVector::vector(n, i + 1).act(a));
        }
        out.scale(&Cq::from_frac(1, 2))
    }

    /// U-grading components of `a`, indexed by `k + half`.
    pub fn components(&self, a: &Form) -> Vec<Form> {
        let full = Basis::full(self.n());
        let x = self.change_inv.mul_vec(&full.coords(a));
        (0..self.u.len())
            .map(|b| {
                let mut v = vec![Cq::zero(); full.len()];
                for c in self.offsets[b]..self.offsets[b + 1] {
                    for (r, vr) in v.iter_mut().enumerate() {
                        *vr = vr.clone() + self.change[(r, c)].clone() * x[c].clone();
                    }
                }
                full.form(&v)
            })
            .collect()
    }

    /// The `k` with `a ∈ U^k`, if `a` is homogeneous and nonzero.
    pub fn grading_of(&self, a: &Form) -> Option<i64> {
        let comps = self.components(a);
        let nz: Vec<usize> = (0..comps.len()).filter(|&i| !comps[i].is_zero()).collect();
        if nz.len() == 1 {
            Some(nz[0] as i64 - self.half() as i64)
        } else {
            None
        }
    }

    /// Splits `d_H a = ∂a + ∂̄a` for `a ∈ U^k`; fails with the stray components otherwise.
    pub fn del_split(&self, a: &Form) -> Result<(Form, Form)> {
        let half = self.half() as i64;
        if a.is_zero() {
            return Ok((Form::zero(self.n()), Form::zero(self.n())));
        }
        let k = self.grading_of(a).ok_or_else(|| Error::Invalid("form is not homogeneous in the U-grading".into()))?;
        let comps = self.components(&self.model.d_h(a));
        let mut stray = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            let kk = i as i64 - half;
            if kk != k + 1 && kk != k - 1 && !c.is_zero() {
                stray.push(format!("U^{}: {}", kk, format_form(c)));
            }
        }
        if !stray.is_empty() {
            return Err(Error::Invalid(format!("d_H leaves U^{{k±1}}: {}", stray.join(", "))));
        }
        let pick = |kk: i64| {
            if kk < -half || kk > half {
                Form::zero(self.n())
            } else {
                comps[(kk + half) as usize].clone()
            }
        };
        Ok((pick(k + 1), pick(k - 1)))
    }

    /// `d_H` in the basis adapted to the U-grading.
    fn d_adapted(&self) -> Matrix {
        self.change_inv.mul(&self.model.d_h_matrix()).mul(&self.change)
    }

    fn block(&self, m: &Matrix, to: usize, from: usize) -> Matrix {
        let (r0, r1) = (self.offsets[to], self.offsets[to + 1]);
        let (c0, c1) = (self.offsets[from], self.offsets[from + 1]);
        let mut out = Matrix::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out[(r - r0, c - c0)] = m[(r, c)].clone();
            }
        }
        out
    }

    /// Matrices of `∂ : U^k → U^{k+1}` for `k = −half, …, half − 1`.
    pub fn del_matrices(&self) -> Result<Vec<Matrix>> {
        if !self.is_integrable() {
            return Err(Error::Invalid("structure is not integrable".into()));
        }
        let d = self.d_adapted();
        Ok((0..self.u.len() - 1).map(|b| self.block(&d, b + 1, b)).collect())
    }

    /// `dim H_∂^k` for `k = −half, …, half`.
    pub fn canonical_e1(&self) -> Result<Vec<usize>> {
        let del = self.del_matrices()?;
        let len = self.u.len();
        Ok((0..len)
            .map(|b| {
                let d_in = if b == 0 { None } else { Some(&del[b - 1]) };
                let d_out = if b + 1 == len { None } else { Some(&del[b]) };
                spot_cohomology(self.u[b].dim(), d_in, d_out).dim()
            })
            .collect())
    }

    /// `dim H_∂̄^k` for `k = −half, …, half`, with `∂̄ : U^k → U^{k−1}`.
    pub fn conjugate_e1(&self) -> Result<Vec<usize>> {
        if !self.is_integrable() {
            return Err(Error::Invalid("structure is not integrable".into()));
        }
        let d = self.d_adapted();
        let len = self.u.len();
        let delbar: Vec<Matrix> = (0..len - 1).map(|b| self.block(&d, b, b + 1)).collect();
        Ok((0..len)
            .map(|b| {
                let d_in = if b + 1 == len { None } else { Some(&delbar[b]) };
                let d_out = if b == 0 { None } else { Some(&delbar[b - 1]) };
                spot_cohomology(self.u[b].dim(), d_in, d_out).dim()
            })
            .collect())
    }

    pub fn euler_check(&self) -> Result<EulerCheck> {
        let e1 = self.canonical_e1()?;
        let alternating: i64 =
            e1.iter().enumerate().map(|(b, &h)| if b % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
        // sign of (−1)^k at k = −half is (−1)^half
        let alternating = if self.half() % 2 == 0 { alternating } else { -alternating };
        let u0 = self.uk(0).basis()[0].clone();
        let u0_even = Basis::full(self.n()).form(&u0).parity_part(true).is_zero();
        let sign = if u0_even { 1 } else { -1 };
        let chi = Cohomology::of(&self.model).euler_characteristic();
        Ok(EulerCheck { e1, alternating_sum: alternating, euler_characteristic: chi, sign, holds: chi == sign * alternating })
    }

    /// `J` acting on forms through the grading: multiplication by `i^k` on `U^k`.
    pub fn group_action_matrix(&self, inverse: bool) -> Matrix {
        let half = self.half() as i64;
        let mut diag = Matrix::zeros(self.change.rows(), self.change.rows());
        for b in 0..self.u.len() {
            let k = b as i64 - half;
            let e = if inverse { -k } else { k };
            let c = Cq::i().pow(e.rem_euclid(4) as u32);
            for i in self.offsets[b]..self.offsets[b + 1] {
                diag[(i, i)] = c.clone();
            }
        }
        self.change.mul(&diag).mul(&self.change_inv)
    }

    /// Matrix of `d^J = J^{−1} d_H J` on the full basis.
    pub fn d_jay_matrix(&self) -> Matrix {
        self.group_action_matrix(true).mul(&self.model.d_h_matrix()).mul(&self.group_action_matrix(false))
    }

    /// The `dd^J`-lemma on invariant forms.
    pub fn ddj_lemma(&self) -> Result<LemmaVerdict> {
        if !self.is_integrable() {
            return Err(Error::Invalid("structure is not integrable".into()));
        }
        lemma_check(&Basis::full(self.n()), &self.model.d_h_matrix(), &self.d_jay_matrix())
    }

    /// B-field transform; a non-closed `B` needs `shift_twist`, which replaces `H` by `H − dB`.
    pub fn transform_b(&self, b: &Form, shift_twist: bool) -> Result<GCStructure> {
        let db = self.model.d(b);
        let model = if db.is_zero() {
            self.model.clone()
        } else if shift_twist {
            self.model.with_twist(self.model.h().clone() - db)?
        } else {
            return Err(Error::Invalid("B is not closed".into()));
        };
        let rho = exp_act(&ExpKind::BWedge(b.clone()), &self.rho)?;
        GCStructure::from_spinor(&model, &rho)
    }

    /// β-field transform `e^{β⌟}ρ`; integrability is re-verified, not assumed.
    pub fn transform_beta(&self, beta: &Multivector) -> Result<GCStructure> {
        let rho = exp_act(&ExpKind::BetaContract(beta.clone()), &self.rho)?;
        GCStructure::from_spinor(&self.model, &rho)
    }

    /// `e^B ∧ U^k` for every `k`, for comparison with a transformed structure.
    pub fn b_transported_grading(&self, b: &Form) -> Vec<Subspace> {
        let full = Basis::full(self.n());
        let eb = exp_form(b);
        self.u
            .iter()
            .map(|s| {
                let v = s.basis().iter().map(|x| full.coords(&eb.wedge(&full.form(x)))).collect();
                Subspace::span(full.len(), v)
            })
            .collect()
    }

    /// Ranks of the Mukai pairing `U^k × U^l` for all pairs, indexed by `k + half`, `l + half`.
    pub fn mukai_ranks(&self) -> Vec<Vec<usize>> {
        let full = Basis::full(self.n());
        let top = (1u32 << self.n()) - 1;
        let mut pairing = Matrix::zeros(full.len(), full.len());
        for (a, &ma) in full.masks.iter().enumerate() {
            if let Some(b) = full.index_of(top ^ ma) {
                let x = Form::<Cq>::basis(self.n(), ma);
                let y = Form::<Cq>::basis(self.n(), top ^ ma);
                pairing[(a, b)] = crate::exterior::mukai(&x, &y).expect("same size").coeff(top);
            }
        }
        let mats: Vec<Matrix> = self
            .u
            .iter()
            .map(|s| if s.dim() == 0 { Matrix::zeros(full.len(), 0) } else { Matrix::from_cols(full.len(), s.basis()) })
            .collect();
        mats.iter()
            .map(|a| mats.iter().map(|b| a.transpose().mul(&pairing).mul(b).rank()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerCheck {
    /// `dim H_∂^k` for `k = −half, …, half`.
    pub e1: Vec<usize>,
    pub alternating_sum: i64,
    pub euler_characteristic: i64,
    /// `+1` when `U^0` consists of even forms.
    pub sign: i64,
    pub holds: bool,
}

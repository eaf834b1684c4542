use serde::Serialize;

use crate::exterior::{all_masks, format_form, wedge_sign, Basis, Form, Multivector};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Field, Matrix};
use crate::{Error, Result};

/// A symplectic Lie model with its operators as matrices on the full basis of Λ•.
#[derive(Clone, Debug)]
pub struct SymplecticData {
    pub model: LieModel,
    pub omega: Form,
    /// `ω^n/n!`.
    pub volume: Form,
    /// `ω(∂_i, ∂_j)`.
    pub omega_matrix: Matrix,
    /// `ω^{−1}` as a bivector; `Λ` is contraction by it.
    pub poisson: Multivector,
    pub basis: Basis,
    pub l: Matrix,
    pub lambda: Matrix,
    pub hop: Matrix,
    pub star: Matrix,
    pub d: Matrix,
    pub delta: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relations: Vec<Relation>,
    pub all_hold: bool,
}

impl RelationReport {
    pub fn get(&self, name: &str) -> Option<bool> {
        self.relations.iter().find(|r| r.name == name).map(|r| r.holds)
    }
}

fn factorial(k: usize) -> Cq {
    Cq::from_int((1..=k as i64).product())
}

impl SymplecticData {
    pub fn new(m: &LieModel, omega: &Form) -> Result<Self> {
        let n2 = m.n();
        if omega.n() != n2 {
            return Err(Error::Dimension(format!("ω has {} generators, model has {}", omega.n(), n2)));
        }
        if !m.h().is_zero() {
            return Err(Error::Invalid("symplectic operators need an untwisted model".into()));
        }
        if n2 % 2 != 0 {
            return Err(Error::Invalid("odd-dimensional model".into()));
        }
        if !omega.is_zero() && omega.degree() != Some(2) {
            return Err(Error::Invalid("ω must be a 2-form".into()));
        }
        let n = n2 / 2;
        if omega.wedge_pow(n).is_zero() {
            return Err(Error::Invalid(format!("{} is degenerate", format_form(omega))));
        }
        if !m.d(omega).is_zero() {
            return Err(Error::Invalid(format!("{} is not closed", format_form(omega))));
        }
        let volume = omega.wedge_pow(n).scale(&(Cq::one() / factorial(n)));
        let mut om = Matrix::zeros(n2, n2);
        for (&mask, c) in omega.terms() {
            let i = mask.trailing_zeros() as usize;
            let j = (mask & (mask - 1)).trailing_zeros() as usize;
            om[(i, j)] = c.clone();
            om[(j, i)] = -c.clone();
        }
        let inv = om.inverse().expect("nondegenerate");
        let mut poisson = Form::zero(n2);
        for i in 0..n2 {
            for j in i + 1..n2 {
                poisson.add_term((1 << i) | (1 << j), inv[(i, j)].clone());
            }
        }
        let poisson = Multivector(poisson);
        let basis = Basis::full(n2);
        let l = basis.matrix_of(&basis, |a| omega.wedge(a));
        let lambda = basis.matrix_of(&basis, |a| poisson.contract(a).expect("same size"));
        let hop = l.commutator(&lambda);
        let d = basis.matrix_of(&basis, |a| m.d(a));
        let delta = lambda.commutator(&d);
        let top = volume.top_coeff();
        let full = (1u32 << n2) - 1;
        // ⟨e_I, e_J⟩ = det ω^{−1}(e_i, e_j); *e_J = Σ_I ⟨e_I, e_J⟩ c s_I e_{I^c}
        let pairing = |a: u32, b: u32| -> Cq {
            let ia: Vec<usize> = (0..n2).filter(|i| a & (1 << i) != 0).collect();
            let ib: Vec<usize> = (0..n2).filter(|i| b & (1 << i) != 0).collect();
            if ia.is_empty() {
                return Cq::one();
            }
            let rows = ia.iter().map(|&i| ib.iter().map(|&j| inv[(i, j)].clone()).collect()).collect();
            Matrix::from_rows(rows).det()
        };
        let star = basis.matrix_of(&basis, |b: &Form| {
            let mut out = Form::zero(n2);
            for (&bm, bc) in b.terms() {
                let k = bm.count_ones();
                for am in all_masks(n2).into_iter().filter(|x| x.count_ones() == k) {
                    let g = pairing(am, bm);
                    if g.is_zero() {
                        continue;
                    }
                    let s = Cq::from_int(wedge_sign(am, full & !am) as i64);
                    out.add_term(full & !am, g * top.clone() * s * bc.clone());
                }
            }
            out
        });
        Ok(SymplecticData { model: m.clone(), omega: omega.clone(), volume, omega_matrix: om, poisson, basis, l, lambda, hop, star, d, delta })
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.model.n() / 2
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, m: &Matrix, a: &Form) -> Form {
        self.basis.form(&m.mul_vec(&self.basis.coords(a)))
    }

    pub fn lambda_of(&self, a: &Form) -> Form {
        self.poisson.contract(a).expect("same size")
    }

    pub fn delta_of(&self, a: &Form) -> Form {
        self.apply(&self.delta, a)
    }

    pub fn star_of(&self, a: &Form) -> Form {
        self.apply(&self.star, a)
    }

    /// Projector onto Λ^k.
    pub fn projector(&self, k: usize) -> Matrix {
        let mut p = Matrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            if self.basis.masks[i].count_ones() as usize == k {
                p[(i, i)] = Cq::one();
            }
        }
        p
    }

    /// Checks every sl(2) relation, the star identities and `δ = (−1)^{k+1}*d*` degree by degree.
    pub fn relations(&self) -> RelationReport {
        let (l, lam, h, s, d, dl) = (&self.l, &self.lambda, &self.hop, &self.star, &self.d, &self.delta);
        let zero = Matrix::zeros(self.dim(), self.dim());
        let two = Cq::from_int(2);
        let n = self.n() as i64;
        let mut graded = zero.clone();
        for k in 0..=2 * self.n() {
            graded = graded.add(&self.projector(k).scale(&Cq::from_int(n - k as i64)));
        }
        let delta_by_star = (0..=2 * self.n()).all(|k| {
            let sign = if k % 2 == 0 { -Cq::one() } else { Cq::one() };
            let p = self.projector(k);
            dl.mul(&p) == s.mul(d).mul(s).mul(&p).scale(&sign)
        });
        let checks = vec![
            ("[L,d]=0", l.commutator(d) == zero),
            ("[L,δ]=−d", l.commutator(dl) == d.scale(&-Cq::one())),
            ("[Λ,d]=δ", lam.commutator(d) == *dl),
            ("[Λ,δ]=0", lam.commutator(dl) == zero),
            ("Λ=−*L*", *lam == s.mul(l).mul(s).scale(&-Cq::one())),
            ("L=−*Λ*", *l == s.mul(lam).mul(s).scale(&-Cq::one())),
            ("H=Σ(n−k)Π_k", *h == graded),
            ("[L,H]=2L", l.commutator(h) == l.scale(&two)),
            ("[Λ,H]=−2Λ", lam.commutator(h) == lam.scale(&-two)),
            ("**=Id", s.mul(s) == Matrix::identity(self.dim())),
            ("δ=(−1)^{k+1}*d*", delta_by_star),
            ("δ²=0", dl.mul(dl) == zero),
        ];
        let relations: Vec<Relation> = checks.into_iter().map(|(name, holds)| Relation { name: name.into(), holds }).collect();
        let all_hold = relations.iter().all(|r| r.holds);
        RelationReport { relations, all_hold }
    }
}

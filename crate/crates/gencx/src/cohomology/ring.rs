use serde::Serialize;

use super::complex::{coords_form, form_coords, spot_cohomology, CochainAlgebra, Cohomology};
use crate::exterior::{format_form, Basis, Form};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// Cohomology of a Lie model with its cup product.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    pub model: LieModel,
    pub coh: Cohomology,
}

/// Structure constants `[r_i]·[r_j] = Σ c_l [r_l]` for one pair of degrees.
#[derive(Clone, Debug, Serialize)]
pub struct CupBlock {
    pub p: usize,
    pub q: usize,
    /// `products[i][j]` are the class coordinates of `r_i ∧ r_j` in degree `p + q`.
    pub products: Vec<Vec<Vec<String>>>,
}

impl CohomologyRing {
    pub fn new(m: &LieModel) -> Self {
        CohomologyRing { model: m.clone(), coh: Cohomology::of(m) }
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.coh.betti()
    }

    /// Representatives of degree `k` as forms.
    pub fn rep_forms(&self, k: usize) -> Vec<Form> {
        self.coh.reps(k).iter().map(|v| coords_form(self.n(), k, v)).collect()
    }

    /// Class coordinates of a closed homogeneous form.
    pub fn class_of(&self, a: &Form) -> Result<Vec<Cq>> {
        let k = match a.degree() {
            Some(k) => k,
            None if a.is_zero() => return Err(Error::Invalid("zero form has no degree".into())),
            None => return Err(Error::Invalid("form is not homogeneous".into())),
        };
        self.coh
            .class_coords(k, &form_coords(self.n(), k, a))
            .ok_or_else(|| Error::Invalid(format!("{} is not closed", format_form(a))))
    }

    pub fn class_of_degree(&self, k: usize, a: &Form) -> Result<Vec<Cq>> {
        if a.is_zero() {
            return Ok(vec![Cq::zero(); self.coh.betti_at(k)]);
        }
        if a.degree() != Some(k) {
            return Err(Error::Invalid(format!("expected a {}-form", k)));
        }
        self.class_of(a)
    }

    pub fn is_exact(&self, a: &Form) -> bool {
        match a.degree() {
            None => a.is_zero(),
            Some(k) => self.coh.is_exact(k, &form_coords(self.n(), k, a)),
        }
    }

    /// Cup product of representative classes, in class coordinates.
    pub fn cup_coords(&self, p: usize, a: &[Cq], q: usize, b: &[Cq]) -> Vec<Cq> {
        if p + q > self.n() {
            return Vec::new();
        }
        let x = self.coh.rep_of(p, a);
        let y = self.coh.rep_of(q, b);
        let prod = self.model.mul(p, &x, q, &y);
        self.coh.class_coords(p + q, &prod).expect("products of cocycles are closed")
    }

    pub fn cup_table(&self) -> Vec<CupBlock> {
        let mut out = Vec::new();
        for p in 1..=self.n() {
            for q in p..=self.n() - p {
                let bp = self.coh.betti_at(p);
                let bq = self.coh.betti_at(q);
                if bp == 0 || bq == 0 {
                    continue;
                }
                let unit = |k: usize, i: usize| {
                    let mut v = vec![Cq::zero(); k];
                    v[i] = Cq::one();
                    v
                };
                let products = (0..bp)
                    .map(|i| {
                        (0..bq)
                            .map(|j| {
                                self.cup_coords(p, &unit(bp, i), q, &unit(bq, j))
                                    .iter()
                                    .map(|c| c.to_string())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                out.push(CupBlock { p, q, products });
            }
        }
        out
    }

    /// Matrix of `[a]∧ : H^k → H^{k+deg a}` in class coordinates.
    pub fn multiplication_matrix(&self, a: &Form, k: usize) -> Result<Matrix> {
        let p = a.degree().ok_or_else(|| Error::Invalid("multiplier must be homogeneous".into()))?;
        if !self.coh.is_closed(p, &form_coords(self.n(), p, a)) {
            return Err(Error::Invalid(format!("{} is not closed", format_form(a))));
        }
        let target_dim = self.coh.betti_at(k + p);
        let cols: Vec<Vec<Cq>> = self
            .rep_forms(k)
            .iter()
            .map(|r| {
                let prod = a.wedge(r);
                if k + p > self.n() {
                    Vec::new()
                } else {
                    self.coh.class_coords(k + p, &form_coords(self.n(), k + p, &prod)).expect("closed")
                }
            })
            .collect();
        Ok(if cols.is_empty() { Matrix::zeros(target_dim, 0) } else { Matrix::from_cols(target_dim, &cols) })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzLevel {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    /// Representatives spanning the kernel.
    pub kernel: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub levels: Vec<LefschetzLevel>,
    pub passes: bool,
}

impl LefschetzReport {
    pub fn level(&self, k: usize) -> &LefschetzLevel {
        &self.levels[k]
    }
}

impl CohomologyRing {
    /// Kernel of `[ω^{m−k}] : H^k → H^{2m−k}` as a subspace of class coordinates.
    pub fn lefschetz_kernel(&self, omega: &Form, k: usize) -> Result<Subspace> {
        let m = self.n() / 2;
        let mat = self.multiplication_matrix(&omega.wedge_pow(m - k), k)?;
        Ok(mat.rank_kernel().1)
    }

    /// Kernel dimensions and ranks of `[ω^{m−k}]` for `k = 0, …, m − 1`, where `2m` is the dimension.
    pub fn lefschetz_report(&self, omega: &Form) -> Result<LefschetzReport> {
        let n = self.n();
        if n % 2 != 0 {
            return Err(Error::Invalid("odd-dimensional model".into()));
        }
        let m = n / 2;
        if omega.degree() != Some(2) || omega.wedge_pow(m).is_zero() {
            return Err(Error::Invalid("ω is not a nondegenerate 2-form".into()));
        }
        if !self.model.d(omega).is_zero() {
            return Err(Error::Invalid("ω is not closed".into()));
        }
        let mut levels = Vec::new();
        for k in 0..m {
            let mat = self.multiplication_matrix(&omega.wedge_pow(m - k), k)?;
            let (rank, ker) = mat.rank_kernel();
            let kernel = ker
                .basis()
                .iter()
                .map(|c| format_form(&coords_form(n, k, &self.coh.rep_of(k, c))))
                .collect();
            levels.push(LefschetzLevel {
                k,
                source_dim: mat.cols(),
                target_dim: mat.rows(),
                rank,
                kernel_dim: mat.cols() - rank,
                surjective: rank == mat.rows(),
                kernel,
            });
        }
        let passes = levels.iter().all(|l| l.surjective && l.kernel_dim == 0);
        Ok(LefschetzReport { levels, passes })
    }
}

/// Even and odd dimensions of a Z2-graded cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityDims {
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedReport {
    pub twisted: ParityDims,
    pub h_cohomology: ParityDims,
    pub agree: bool,
}

fn parity_masks(n: usize, odd: bool) -> Basis {
    let masks = crate::exterior::all_masks(n).into_iter().filter(|m| (m.count_ones() % 2 == 1) == odd).collect();
    Basis::new(n, masks)
}

impl CohomologyRing {
    /// `d_H`-cohomology dimensions in each parity.
    pub fn twisted_cohomology(&self) -> ParityDims {
        let n = self.n();
        let even = parity_masks(n, false);
        let odd = parity_masks(n, true);
        let d_even = even.matrix_of(&odd, |a| self.model.d_h(a));
        let d_odd = odd.matrix_of(&even, |a| self.model.d_h(a));
        let he = spot_cohomology(even.len(), Some(&d_odd), Some(&d_even)).dim();
        let ho = spot_cohomology(odd.len(), Some(&d_even), Some(&d_odd)).dim();
        ParityDims { even: he, odd: ho }
    }

    /// Cohomology of `[H]∧` acting on ordinary cohomology, regrouped by parity.
    pub fn h_cohomology(&self) -> ParityDims {
        let n = self.n();
        let h = self.model.h();
        let betti = self.betti();
        let offs: Vec<usize> = betti.iter().scan(0, |s, &b| {
            let o = *s;
            *s += b;
            Some(o)
        }).collect();
        let total: usize = betti.iter().sum();
        let mut full = Matrix::zeros(total, total);
        if !h.is_zero() {
            for k in 0..=n {
                if k + 3 > n {
                    break;
                }
                let m = self.multiplication_matrix(h, k).expect("H is closed");
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        full[(offs[k + 3] + i, offs[k] + j)] = m[(i, j)].clone();
                    }
                }
            }
        }
        let idx = |odd: bool| -> Vec<usize> {
            (0..=n).filter(|k| (k % 2 == 1) == odd).flat_map(|k| offs[k]..offs[k] + betti[k]).collect()
        };
        let (ie, io) = (idx(false), idx(true));
        let sub = |rows: &[usize], cols: &[usize]| {
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    m[(a, b)] = full[(r, c)].clone();
                }
            }
            m
        };
        let e_to_o = sub(&io, &ie);
        let o_to_e = sub(&ie, &io);
        let even = spot_cohomology(ie.len(), Some(&o_to_e), Some(&e_to_o)).dim();
        let odd = spot_cohomology(io.len(), Some(&e_to_o), Some(&o_to_e)).dim();
        ParityDims { even, odd }
    }

    pub fn twisted_report(&self) -> TwistedReport {
        let t = self.twisted_cohomology();
        let h = self.h_cohomology();
        TwistedReport { agree: t == h, twisted: t, h_cohomology: h }
    }
}

/// Convenience: cohomology ring of a model.
pub fn cohomology(m: &LieModel) -> CohomologyRing {
    CohomologyRing::new(m)
}

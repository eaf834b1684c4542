use serde::Deserialize;

use crate::cohomology::{CochainAlgebra, Cohomology, CohomologyRing};
use crate::exterior::{format_form, Basis, Form};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// Finite-dimensional connected commutative differential graded algebra, given by a basis
/// in each degree `0..=top`, a product table and the differential.
///
/// Basis element 0 of degree 0 is the unit. A truncated algebra is only known through
/// `top`: products landing above it are dropped and `d` out of degree `top` is not
/// recorded, so its cohomology is meaningful through `top − 1`.
#[derive(Clone, Debug)]
pub struct Cdga {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    // products[p][q][i * dims[q] + j] = coordinates of e_i·e_j in degree p + q
    products: Vec<Vec<Vec<Vec<Cq>>>>,
    d: Vec<Matrix>,
    truncated: bool,
}

impl Cdga {
    /// Assembles an algebra from a product rule on basis elements and checks the axioms.
    pub fn build(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        product: impl Fn(usize, usize, usize, usize) -> Vec<Cq>,
        d: Vec<Matrix>,
        truncated: bool,
    ) -> Result<Cdga> {
        let a = Cdga::assemble(dims, labels, product, d, truncated)?;
        a.check()?;
        Ok(a)
    }

    /// Like [`Cdga::build`] without verifying the axioms; for constructions that hold by design.
    pub(crate) fn assemble(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        product: impl Fn(usize, usize, usize, usize) -> Vec<Cq>,
        d: Vec<Matrix>,
        truncated: bool,
    ) -> Result<Cdga> {
        if dims.first() != Some(&1) {
            return Err(Error::Invalid("degree 0 must be spanned by the unit".into()));
        }
        let top = dims.len() - 1;
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &n)| l.len() != n) {
            return Err(Error::Dimension("one label per basis element".into()));
        }
        if d.len() != dims.len() {
            return Err(Error::Dimension("one differential matrix per degree".into()));
        }
        for (k, m) in d.iter().enumerate() {
            let target = if k == top { 0 } else { dims[k + 1] };
            if m.rows() != target || m.cols() != dims[k] {
                return Err(Error::Dimension(format!("d in degree {} has the wrong shape", k)));
            }
        }
        let mut products = vec![vec![Vec::new(); top + 1]; top + 1];
        for p in 0..=top {
            for q in 0..=top - p {
                let mut tab = Vec::with_capacity(dims[p] * dims[q]);
                for i in 0..dims[p] {
                    for j in 0..dims[q] {
                        let v = product(p, i, q, j);
                        if v.len() != dims[p + q] {
                            return Err(Error::Dimension(format!("product of degrees {} and {} has the wrong length", p, q)));
                        }
                        tab.push(v);
                    }
                }
                products[p][q] = tab;
            }
        }
        Ok(Cdga { dims, labels, products, d, truncated })
    }

    /// Unit, graded commutativity, associativity, Leibniz rule and `d² = 0` on basis elements.
    pub fn check(&self) -> Result<()> {
        let top = self.top();
        let unit = self.unit();
        for p in 0..=top {
            for i in 0..self.dims[p] {
                let e = self.basis_vec(p, i);
                if self.mul(0, &unit, p, &e) != e {
                    return Err(Error::Invalid(format!("basis element {} of degree {} breaks the unit law", i, p)));
                }
            }
        }
        for p in 0..=top {
            for q in 0..=top - p {
                for i in 0..self.dims[p] {
                    for j in 0..self.dims[q] {
                        let ab = self.basis_product(p, i, q, j);
                        let ba = self.basis_product(q, j, p, i);
                        let sign = if p * q % 2 == 1 { -Cq::one() } else { Cq::one() };
                        if ab != scale(&ba, &sign) {
                            return Err(Error::Invalid(format!(
                                "{}·{} is not graded commutative",
                                self.labels[p][i], self.labels[q][j]
                            )));
                        }
                    }
                }
            }
        }
        for p in 1..=top {
            for q in 1..=top - p {
                for r in 1..=top - p - q {
                    for i in 0..self.dims[p] {
                        for j in 0..self.dims[q] {
                            for l in 0..self.dims[r] {
                                let (a, b, c) = (self.basis_vec(p, i), self.basis_vec(q, j), self.basis_vec(r, l));
                                let left = self.mul(p + q, &self.mul(p, &a, q, &b), r, &c);
                                let right = self.mul(p, &a, q + r, &self.mul(q, &b, r, &c));
                                if left != right {
                                    return Err(Error::Invalid(format!(
                                        "product is not associative on {}, {}, {}",
                                        self.labels[p][i], self.labels[q][j], self.labels[r][l]
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        let known = self.known_top();
        for k in 0..known {
            if k + 1 < known && !self.d[k + 1].mul(&self.d[k]).is_zero() {
                return Err(Error::Invalid(format!("d² ≠ 0 in degree {}", k)));
            }
        }
        if !self.d[0].is_zero() {
            return Err(Error::Invalid("the unit is not closed".into()));
        }
        for p in 0..known {
            for q in 0..known - p {
                for i in 0..self.dims[p] {
                    for j in 0..self.dims[q] {
                        let (a, b) = (self.basis_vec(p, i), self.basis_vec(q, j));
                        let left = self.d_of(p + q, &self.mul(p, &a, q, &b));
                        let mut right = self.mul(p + 1, &self.d_of(p, &a), q, &b);
                        let second = self.mul(p, &a, q + 1, &self.d_of(q, &b));
                        let sign = if p % 2 == 1 { -Cq::one() } else { Cq::one() };
                        add_scaled(&mut right, &second, &sign);
                        if left != right {
                            return Err(Error::Invalid(format!(
                                "Leibniz rule fails on {}, {}",
                                self.labels[p][i], self.labels[q][j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground field in degree 0.
    pub fn ground() -> Cdga {
        Cdga::assemble(vec![1], vec![vec!["1".into()]], |_, _, _, _| vec![Cq::one()], vec![Matrix::zeros(0, 1)], false)
            .expect("ground field")
    }

    /// Chevalley–Eilenberg algebra of an untwisted model, on the monomial basis.
    pub fn from_model(m: &LieModel) -> Result<Cdga> {
        let n = m.n();
        let dims: Vec<usize> = (0..=n).map(|k| Basis::degree(n, k).len()).collect();
        let labels = (0..=n)
            .map(|k| {
                Basis::degree(n, k)
                    .masks
                    .iter()
                    .map(|&mask| if mask == 0 { "1".to_string() } else { format!("e{}", format_form(&Form::basis(n, mask))) })
                    .collect()
            })
            .collect();
        let d = (0..=n).map(|k| if k == n { Matrix::zeros(0, dims[n]) } else { m.d_matrix(k) }).collect();
        Cdga::assemble(dims, labels, |p, i, q, j| m.mul(p, &unit_vec(m.dim(p), i), q, &unit_vec(m.dim(q), j)), d, false)
    }

    /// Cohomology ring of a model with zero differential, on the chosen representatives.
    pub fn from_ring(r: &CohomologyRing) -> Result<Cdga> {
        let n = r.n();
        let betti = r.betti();
        let labels = (0..=n)
            .map(|k| {
                if k == 0 {
                    return vec!["1".to_string()];
                }
                r.rep_forms(k).iter().map(|f| format!("[{}]", format_form(f))).collect()
            })
            .collect();
        let d = zero_differential(&betti);
        Cdga::assemble(betti.clone(), labels, |p, i, q, j| r.cup_coords(p, &unit_vec(betti[p], i), q, &unit_vec(betti[q], j)), d, false)
    }

    /// Cohomology algebra of a simply connected closed 6-manifold with `H³ = 0`, from the
    /// symmetric cup form `μ(x, y, z) = ∫ xyz` on `H²`. `H⁴` carries the basis dual to `H²`.
    pub fn from_cup_form(names: &[String], mu: impl Fn(usize, usize, usize) -> Cq) -> Result<Cdga> {
        let b = names.len();
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    if mu(i, j, k) != mu(j, i, k) || mu(i, j, k) != mu(i, k, j) {
                        return Err(Error::Invalid("the cup form is not symmetric".into()));
                    }
                }
            }
        }
        let dims = vec![1, 0, b, 0, b, 0, 1];
        let labels = vec![
            vec!["1".to_string()],
            vec![],
            names.to_vec(),
            vec![],
            names.iter().map(|s| format!("{}*", s)).collect(),
            vec![],
            vec!["vol".to_string()],
        ];
        let d = zero_differential(&dims);
        let product = |p: usize, i: usize, q: usize, j: usize| -> Vec<Cq> {
            match (p, q) {
                (0, _) => unit_vec(dims[q], j),
                (_, 0) => unit_vec(dims[p], i),
                (2, 2) => (0..b).map(|k| mu(i, j, k)).collect(),
                (2, 4) | (4, 2) => vec![if i == j { Cq::one() } else { Cq::zero() }],
                _ => vec![Cq::zero(); dims[p + q]],
            }
        };
        Cdga::build(dims.clone(), labels, product, d, false)
    }

    /// Reads the JSON form `{"dims": [...], "labels"?: [[...]], "products": [[p, i, q, j, [c...]], ...],
    /// "d"?: [[k, i, [c...]], ...]}`. Products are listed for `p ≤ q` (the rest follow by graded
    /// commutativity) and omitted entries are zero; `d` entries give `d(e_i)` in degree `k + 1`.
    pub fn from_json(text: &str) -> Result<Cdga> {
        let raw: RawCdga = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_cdga()
    }

    /// As [`Cdga::from_json`], from an already parsed value.
    pub fn from_json_value(value: serde_json::Value) -> Result<Cdga> {
        let raw: RawCdga = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_cdga()
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Highest degree whose outgoing differential is known.
    pub fn known_top(&self) -> usize {
        if self.truncated {
            self.top()
        } else {
            self.top() + 1
        }
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn unit(&self) -> Vec<Cq> {
        vec![Cq::one()]
    }

    pub fn basis_vec(&self, k: usize, i: usize) -> Vec<Cq> {
        unit_vec(self.dims[k], i)
    }

    pub fn zero_vec(&self, k: usize) -> Vec<Cq> {
        vec![Cq::zero(); self.dim_at(k)]
    }

    pub fn dim_at(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<Cq> {
        self.products[p][q][i * self.dims[q] + j].clone()
    }

    /// Product in coordinates; empty beyond the top degree.
    pub fn mul(&self, p: usize, a: &[Cq], q: usize, b: &[Cq]) -> Vec<Cq> {
        if p + q > self.top() {
            return Vec::new();
        }
        let mut out = vec![Cq::zero(); self.dims[p + q]];
        let tab = &self.products[p][q];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &tab[i * self.dims[q] + j], &(x.clone() * y.clone()));
            }
        }
        out
    }

    /// `d` in coordinates; empty beyond the top degree.
    pub fn d_of(&self, k: usize, a: &[Cq]) -> Vec<Cq> {
        if k >= self.top() {
            return vec![Cq::zero(); self.dim_at(k + 1)];
        }
        self.d[k].mul_vec(a)
    }

    pub fn d_mat(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    /// `d: A^k → A^{k+1}`, zero outside the stored range.
    pub fn d_out(&self, k: usize) -> Matrix {
        if k < self.top() {
            self.d[k].clone()
        } else {
            Matrix::zeros(self.dim_at(k + 1), self.dim_at(k))
        }
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self)
    }

    /// Writes a vector of degree `k` as a combination of basis labels.
    pub fn format(&self, k: usize, v: &[Cq]) -> String {
        let mut parts = Vec::new();
        for (c, l) in v.iter().zip(self.labels(k)) {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_string();
            let term = if c.is_one() {
                l.clone()
            } else if coeff == "-1" {
                format!("-{}", l)
            } else if c.is_real() && !coeff.contains('/') {
                format!("{}{}", coeff, l)
            } else {
                format!("({}){}", coeff, l)
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }

    /// Matrix of `x ↦ a·x` from degree `k` to `k + p`.
    pub fn left_mult(&self, p: usize, a: &[Cq], k: usize) -> Matrix {
        let rows = self.dim_at(p + k);
        if self.dim_at(k) == 0 {
            return Matrix::zeros(rows, 0);
        }
        let cols: Vec<Vec<Cq>> = (0..self.dims[k])
            .map(|j| {
                let v = self.mul(p, a, k, &self.basis_vec(k, j));
                if v.is_empty() {
                    vec![Cq::zero(); rows]
                } else {
                    v
                }
            })
            .collect();
        Matrix::from_cols(rows, &cols)
    }

    /// The degree-`k` part of the ideal generated by the given homogeneous elements.
    pub fn ideal_part(&self, gens: &[(usize, Vec<Cq>)], k: usize) -> Subspace {
        let mut vs = Vec::new();
        for (p, g) in gens {
            if *p > k {
                continue;
            }
            for j in 0..self.dim_at(k - p) {
                vs.push(self.mul(*p, g, k - p, &self.basis_vec(k - p, j)));
            }
        }
        Subspace::span(self.dim_at(k), vs)
    }

    /// Coefficient of the top class, for algebras whose top degree is one-dimensional.
    pub fn integrate(&self, k: usize, v: &[Cq]) -> Cq {
        if k == self.top() && self.dims[k] == 1 {
            v[0].clone()
        } else {
            Cq::zero()
        }
    }

    /// Checks that the product into the one-dimensional top degree is a perfect pairing.
    pub fn is_poincare_duality(&self) -> bool {
        let top = self.top();
        if self.truncated || self.dims[top] != 1 || !self.d.iter().all(|m| m.is_zero()) {
            return false;
        }
        (0..=top).all(|p| {
            let q = top - p;
            if self.dims[p] != self.dims[q] {
                return false;
            }
            if self.dims[p] == 0 {
                return true;
            }
            self.pairing(p).rank() == self.dims[p]
        })
    }

    /// Matrix `P_ij = ∫ e_i·f_j` of degree `p` against degree `top − p`.
    pub fn pairing(&self, p: usize) -> Matrix {
        let q = self.top() - p;
        let rows = (0..self.dims[p])
            .map(|i| (0..self.dims[q]).map(|j| self.integrate(self.top(), &self.basis_product(p, i, q, j))).collect())
            .collect::<Vec<Vec<Cq>>>();
        if rows.is_empty() {
            Matrix::zeros(0, self.dims[q])
        } else {
            Matrix::from_rows(rows)
        }
    }
}

impl CochainAlgebra for Cdga {
    fn top_degree(&self) -> usize {
        self.top()
    }

    fn dim(&self, k: usize) -> usize {
        self.dim_at(k)
    }

    fn d_matrix(&self, k: usize) -> Matrix {
        self.d[k].clone()
    }

    fn mul(&self, p: usize, a: &[Cq], q: usize, b: &[Cq]) -> Vec<Cq> {
        Cdga::mul(self, p, a, q, b)
    }
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<Cq> {
    let mut v = vec![Cq::zero(); n];
    v[i] = Cq::one();
    v
}

pub(crate) fn scale(v: &[Cq], c: &Cq) -> Vec<Cq> {
    v.iter().map(|x| x.clone() * c.clone()).collect()
}

pub(crate) fn add_scaled(acc: &mut [Cq], v: &[Cq], c: &Cq) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + x.clone() * c.clone();
        }
    }
}

pub(crate) fn zero_differential(dims: &[usize]) -> Vec<Matrix> {
    let top = dims.len() - 1;
    (0..=top).map(|k| Matrix::zeros(if k == top { 0 } else { dims[k + 1] }, dims[k])).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCdga {
    dims: Vec<usize>,
    #[serde(default)]
    labels: Option<Vec<Vec<String>>>,
    #[serde(default)]
    products: Vec<(usize, usize, usize, usize, Vec<String>)>,
    #[serde(default)]
    d: Vec<(usize, usize, Vec<String>)>,
}

fn parse_coeffs(v: &[String]) -> Result<Vec<Cq>> {
    v.iter().map(|s| s.parse()).collect()
}

impl RawCdga {
    fn into_cdga(self) -> Result<Cdga> {
        let dims = self.dims;
        if dims.is_empty() {
            return Err(Error::Invalid("no degrees given".into()));
        }
        let top = dims.len() - 1;
        let labels = match self.labels {
            Some(l) => l,
            None => dims
                .iter()
                .enumerate()
                .map(|(k, &n)| if k == 0 { vec!["1".to_string()] } else { (1..=n).map(|i| format!("x{}_{}", k, i)).collect() })
                .collect(),
        };
        let mut table = std::collections::HashMap::new();
        for (p, i, q, j, c) in self.products {
            if p + q > top || i >= *dims.get(p).unwrap_or(&0) || j >= *dims.get(q).unwrap_or(&0) {
                return Err(Error::Invalid(format!("product entry ({}, {}, {}, {}) out of range", p, i, q, j)));
            }
            let v = parse_coeffs(&c)?;
            if v.len() != dims[p + q] {
                return Err(Error::Dimension(format!("product entry ({}, {}, {}, {}) has the wrong length", p, i, q, j)));
            }
            let sign = if p * q % 2 == 1 { -Cq::one() } else { Cq::one() };
            table.insert((q, j, p, i), scale(&v, &sign));
            table.insert((p, i, q, j), v);
        }
        let mut d = zero_differential(&dims);
        for (k, i, c) in self.d {
            if k >= top || i >= dims[k] {
                return Err(Error::Invalid(format!("differential entry ({}, {}) out of range", k, i)));
            }
            let v = parse_coeffs(&c)?;
            if v.len() != dims[k + 1] {
                return Err(Error::Dimension(format!("differential entry ({}, {}) has the wrong length", k, i)));
            }
            for (r, x) in v.into_iter().enumerate() {
                d[k][(r, i)] = x;
            }
        }
        let dims2 = dims.clone();
        let product = move |p: usize, i: usize, q: usize, j: usize| -> Vec<Cq> {
            if p == 0 {
                return unit_vec(dims2[q], j);
            }
            if q == 0 {
                return unit_vec(dims2[p], i);
            }
            table.get(&(p, i, q, j)).cloned().unwrap_or_else(|| vec![Cq::zero(); dims2[p + q]])
        };
        Cdga::build(dims, labels, product, d, false)
    }
}

use serde::Serialize;

use super::structure::GCStructure;
use crate::exterior::{Form, GenVector};
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// A generalized Kähler pair with its metric splitting.
#[derive(Clone, Debug)]
pub struct GKPair {
    pub g_op: Matrix,
    pub c_plus: Subspace,
    pub c_minus: Subspace,
    /// Symmetric part, `metric[(i, j)] = g(∂_i, ∂_j)`.
    pub metric: Matrix,
    /// Skew part `b(∂_i, ∂_j)`.
    pub b: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct GKReport {
    pub commute: bool,
    pub involution: bool,
    /// 1-based size of the first leading principal minor that is not positive.
    pub failing_minor: Option<usize>,
    pub intersection_dim: usize,
    pub valid: bool,
}

fn pairing_matrix(op: &Matrix) -> Matrix {
    let m = op.rows();
    let basis: Vec<GenVector> = (0..m).map(|i| GenVector::from_coords(&Matrix::<Cq>::identity(m).col(i))).collect();
    let images: Vec<GenVector> = (0..m).map(|i| GenVector::from_coords(&op.col(i))).collect();
    Matrix::from_rows(images.iter().map(|gv| basis.iter().map(|w| gv.pairing(w)).collect()).collect())
}

/// Index of the first leading principal minor that is not a positive real number.
fn first_nonpositive_minor(m: &Matrix) -> Option<usize> {
    use num_traits::Signed;
    (1..=m.rows()).find(|&k| {
        let sub = Matrix::from_rows((0..k).map(|i| (0..k).map(|j| m[(i, j)].clone()).collect()).collect());
        let d = sub.det();
        !(d.is_real() && d.re.is_positive())
    })
}

/// `C = {X + A(X)}` as the matrix `A`, read off from a subspace that is a graph over `V`.
fn graph_matrix(s: &Subspace, n: usize) -> Option<Matrix> {
    let cols = s.basis().to_vec();
    if cols.len() != n {
        return None;
    }
    let m = Matrix::from_cols(2 * n, &cols);
    let top = Matrix::from_rows((0..n).map(|i| m.row(i).to_vec()).collect());
    let bottom = Matrix::from_rows((n..2 * n).map(|i| m.row(i).to_vec()).collect());
    Some(bottom.mul(&top.inverse()?))
}

/// Checks whether two structures on the same model form a generalized Kähler pair.
pub fn kahler_pair_check(s1: &GCStructure, s2: &GCStructure) -> Result<(GKReport, Option<GKPair>)> {
    if s1.model != s2.model {
        return Err(Error::Invalid("structures live on different models or twists".into()));
    }
    let n = s1.n();
    let commute = s1.j.commutator(&s2.j).is_zero();
    let g_op = s1.j.mul(&s2.j);
    let involution = g_op.mul(&g_op) == Matrix::identity(2 * n);
    let failing_minor = first_nonpositive_minor(&pairing_matrix(&g_op));
    let intersection_dim = s1.l.intersection(&s2.l)?.dim();
    let valid = commute && involution && failing_minor.is_none() && intersection_dim == n / 2;
    let report = GKReport { commute, involution, failing_minor, intersection_dim, valid };
    if !(commute && involution && failing_minor.is_none()) {
        return Ok((report, None));
    }
    let eig = |sign: i64| g_op.sub(&Matrix::identity(2 * n).scale(&Cq::from_int(sign))).rank_kernel().1;
    let (c_plus, c_minus) = (eig(1), eig(-1));
    let (gp, gm) = match (graph_matrix(&c_plus, n), graph_matrix(&c_minus, n)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Invalid("eigenspaces of G are not graphs over V".into())),
    };
    // the covector part of X ∈ C± is (b ± g)(X), with rows indexing covector components
    let half = Cq::from_frac(1, 2);
    let metric = gp.sub(&gm).scale(&half).transpose();
    let b = gp.add(&gm).scale(&half).transpose();
    Ok((report, Some(GKPair { g_op, c_plus, c_minus, metric, b })))
}

#[derive(Clone, Debug, Serialize)]
pub struct SubmanifoldReport {
    pub invariant: bool,
    /// Only for structures of type 0.
    pub coisotropic: Option<bool>,
    /// `ω^{−1}F` on `V`, rows and columns in the frame `∂_i`, when the symplectic case is invariant.
    pub transverse: Option<Vec<Vec<String>>>,
}

/// Linear generalized-submanifold criterion: is `τ_F = {X + ξ : X ∈ W, ξ|_W = (X⌟F)|_W}` stable under `J`?
pub fn submanifold_check(s: &GCStructure, w: &[Vec<Cq>], f: &Form) -> Result<SubmanifoldReport> {
    let n = s.n();
    let ws = Subspace::span(n, w.to_vec());
    let mut tau: Vec<Vec<Cq>> = Vec::new();
    for x in ws.basis() {
        let xi = f.contract_vec(x);
        let cov: Vec<Cq> = (0..n).map(|i| xi.coeff(1 << i)).collect();
        tau.push(GenVector::new(x.clone(), cov).to_coords());
    }
    // annihilator of W in V*
    let wm = if ws.dim() == 0 { Matrix::zeros(1, n) } else { Matrix::from_rows(ws.basis().to_vec()) };
    for xi in wm.kernel_basis() {
        tau.push(GenVector::new(vec![Cq::zero(); n], xi).to_coords());
    }
    let space = Subspace::span(2 * n, tau.clone());
    let invariant = tau.iter().all(|v| space.contains(&s.j.mul_vec(v)));
    let (mut coisotropic, mut transverse) = (None, None);
    if s.kind == 0 {
        let omega = symplectic_part(&s.rho);
        let om = two_form_matrix(&omega, n);
        let perp = om.mul(&Matrix::from_cols(n, ws.basis())).transpose().rank_kernel().1;
        coisotropic = Some(ws.contains_space(&perp));
        if invariant {
            let inv = om.inverse().ok_or_else(|| Error::Invalid("ω is degenerate".into()))?;
            let t = inv.mul(&two_form_matrix(f, n));
            transverse = Some(t.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
        }
    }
    Ok(SubmanifoldReport { invariant, coisotropic, transverse })
}

/// Imaginary part of `ρ₂/ρ₀` for a type-0 spinor `ρ = ρ₀ e^{B+iω}`.
pub fn symplectic_part(rho: &Form) -> Form {
    let c = rho.coeff(0);
    rho.part(2).scale(&(Cq::one() / c)).map(|x| Cq::real(x.im.clone()))
}

/// `M[(i, j)] = a(∂_i, ∂_j)`; as a map `V → V*` it sends `X` to `X⌟a`.
pub fn two_form_matrix(a: &Form, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(j, i)] = a.contract_gen(i + 1).contract_gen(j + 1).coeff(0);
        }
    }
    m
}

use crate::exterior::{Basis, Form};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Field, Matrix, Subspace};

/// A finite-dimensional graded-commutative cochain algebra with a chosen basis in each degree.
pub trait CochainAlgebra {
    /// Highest degree with a nonzero component.
    fn top_degree(&self) -> usize;
    fn dim(&self, k: usize) -> usize;
    /// Matrix of `d: C^k → C^{k+1}`.
    fn d_matrix(&self, k: usize) -> Matrix;
    /// Product `C^p × C^q → C^{p+q}` in coordinates.
    fn mul(&self, p: usize, a: &[Cq], q: usize, b: &[Cq]) -> Vec<Cq>;
}

impl CochainAlgebra for LieModel {
    fn top_degree(&self) -> usize {
        self.n()
    }

    fn dim(&self, k: usize) -> usize {
        if k > self.n() {
            0
        } else {
            Basis::degree(self.n(), k).len()
        }
    }

    fn d_matrix(&self, k: usize) -> Matrix {
        LieModel::d_matrix(self, k)
    }

    fn mul(&self, p: usize, a: &[Cq], q: usize, b: &[Cq]) -> Vec<Cq> {
        let n = self.n();
        let x = Basis::degree(n, p).form(a);
        let y = Basis::degree(n, q).form(b);
        if p + q > n {
            return Vec::new();
        }
        Basis::degree(n, p + q).coords(&x.wedge(&y))
    }
}

/// Coordinates of a homogeneous form of degree `k` in the lexicographic basis.
pub fn form_coords(n: usize, k: usize, a: &Form) -> Vec<Cq> {
    Basis::degree(n, k).coords(&a.part(k))
}

pub fn coords_form(n: usize, k: usize, v: &[Cq]) -> Form {
    Basis::degree(n, k).form(v)
}

/// Cocycles, coboundaries and chosen representatives in one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub closed: Subspace,
    pub exact: Subspace,
    /// Representatives: echelon basis vectors of the cocycles not already spanned
    /// by the coboundaries and earlier representatives.
    pub reps: Vec<Vec<Cq>>,
    /// `exact` basis followed by `reps`, for solving class coordinates.
    solver: Matrix,
}

impl DegreeCohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// Cohomology of a cochain algebra, degree by degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    pub d: Vec<Matrix>,
    pub degrees: Vec<DegreeCohomology>,
}

/// Cohomology `ker d_out / im d_in` of a single spot, with representatives.
pub fn spot_cohomology(ambient: usize, d_in: Option<&Matrix>, d_out: Option<&Matrix>) -> DegreeCohomology {
    let closed = match d_out {
        Some(m) if m.rows() > 0 => m.rank_kernel().1,
        _ => Subspace::full(ambient),
    };
    let exact = match d_in {
        Some(m) if m.cols() > 0 => m.image(),
        _ => Subspace::zero(ambient),
    };
    let mut acc = exact.clone();
    let mut reps = Vec::new();
    for v in closed.basis() {
        if !acc.contains(v) {
            reps.push(v.clone());
            acc = acc.sum(&Subspace::span(ambient, vec![v.clone()])).expect("same ambient");
        }
    }
    let mut cols: Vec<Vec<Cq>> = exact.basis().to_vec();
    cols.extend(reps.iter().cloned());
    let solver = Matrix::from_cols(ambient, &cols);
    DegreeCohomology { closed, exact, reps, solver }
}

impl Cohomology {
    pub fn of<A: CochainAlgebra + ?Sized>(a: &A) -> Self {
        let top = a.top_degree();
        let dims: Vec<usize> = (0..=top).map(|k| a.dim(k)).collect();
        let d: Vec<Matrix> = (0..=top).map(|k| a.d_matrix(k)).collect();
        let degrees = (0..=top)
            .map(|k| {
                let d_in = if k == 0 { None } else { Some(&d[k - 1]) };
                let d_out = if k == top { None } else { Some(&d[k]) };
                spot_cohomology(dims[k], d_in, d_out)
            })
            .collect();
        Cohomology { dims, d, degrees }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.dim()).collect()
    }

    pub fn betti_at(&self, k: usize) -> usize {
        self.degrees.get(k).map(|g| g.dim()).unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn reps(&self, k: usize) -> &[Vec<Cq>] {
        self.degrees.get(k).map(|g| g.reps.as_slice()).unwrap_or(&[])
    }

    pub fn is_closed(&self, k: usize, v: &[Cq]) -> bool {
        k > self.top_degree() || self.degrees[k].closed.contains(v)
    }

    pub fn is_exact(&self, k: usize, v: &[Cq]) -> bool {
        k > self.top_degree() || self.degrees[k].exact.contains(v)
    }

    /// Coordinates of the class of a closed cochain; `None` if it is not closed.
    pub fn class_coords(&self, k: usize, v: &[Cq]) -> Option<Vec<Cq>> {
        if k > self.top_degree() {
            return Some(Vec::new());
        }
        let g = &self.degrees[k];
        if !g.closed.contains(v) {
            return None;
        }
        let x = g.solver.solve(v).expect("cocycles lie in exact + representatives");
        Some(x[g.exact.dim()..].to_vec())
    }

    /// Cochain `x` of degree `k − 1` with `dx = v`, if one exists.
    pub fn primitive(&self, k: usize, v: &[Cq]) -> Option<Vec<Cq>> {
        if k > self.top_degree() {
            return Some(Vec::new());
        }
        if k == 0 {
            return if v.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
        }
        self.d[k - 1].solve(v)
    }

    /// Representative built from class coordinates.
    pub fn rep_of(&self, k: usize, coords: &[Cq]) -> Vec<Cq> {
        let mut v = vec![Cq::zero(); self.dims[k]];
        for (c, r) in coords.iter().zip(self.reps(k)) {
            for (x, y) in v.iter_mut().zip(r) {
                *x = x.clone() + c.clone() * y.clone();
            }
        }
        v
    }
}

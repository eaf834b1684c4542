use super::matrix::Matrix;
use super::scalar::{Cq, Field};
use crate::Error;

/// Linear subspace of `F^ambient`, stored by its reduced row echelon basis.
///
/// The echelon basis is unique, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F = Cq> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let vs = (0..ambient)
            .map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Subspace::span(ambient, vs)
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let vectors: Vec<Vec<F>> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, o: &Subspace<F>) -> Result<(), Error> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, o: &Subspace<F>) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, o: &Subspace<F>) -> Result<Subspace<F>, Error> {
        self.check(o)?;
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, vs))
    }

    pub fn intersection(&self, o: &Subspace<F>) -> Result<Subspace<F>, Error> {
        self.check(o)?;
        if self.dim() == 0 || o.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // a·A = b·B  <=>  (a, -b) in the kernel of [A^T | B^T]
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<F>>()));
        let m = Matrix::from_cols(self.ambient, &cols);
        let ker = m.kernel_basis();
        let vs = ker
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); self.ambient];
                for (c, b) in k.iter().take(self.dim()).zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = x.clone() + c.clone() * y.clone();
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, vs))
    }

    /// Dimension of `self / (self ∩ o)`.
    pub fn quotient_dim(&self, o: &Subspace<F>) -> Result<usize, Error> {
        Ok(self.dim() - self.intersection(o)?.dim())
    }

    /// Preimage of this subspace under `m` (which maps into the ambient space).
    pub fn preimage(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.rows(), self.ambient, "map target differs from ambient dimension");
        // x with m·x ∈ span  <=>  (x, c) in kernel of [m | -B^T]
        let neg: Vec<Vec<F>> = self.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()).collect();
        let aug = if neg.is_empty() { m.clone() } else { m.hstack(&Matrix::from_cols(self.ambient, &neg)) };
        let ker = aug.kernel_basis();
        Subspace::span(m.cols(), ker.into_iter().map(|k| k[..m.cols()].to_vec()).collect())
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix<F>) -> Subspace<F> {
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// Echelon basis of a complement, built from standard unit vectors.
    pub fn complement_basis(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&i| !is_pivot[i])
            .map(|i| {
                let mut v = vec![F::zero(); self.ambient];
                v[i] = F::one();
                v
            })
            .collect()
    }
}

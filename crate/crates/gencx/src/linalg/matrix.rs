use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::{Poly, RatFn};
use super::scalar::{Cq, Field};
use super::subspace::Subspace;

/// Dense matrix stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F = Cq> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Commutator `self·o − o·self`.
    pub fn commutator(&self, o: &Matrix<F>) -> Matrix<F> {
        self.mul(o).sub(&o.mul(self))
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Places `o` to the right of `self`.
    pub fn hstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, o.rows, "dimension mismatch");
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.extend(o.row(i).iter().cloned());
            rows.push(r);
        }
        if self.rows == 0 {
            return Matrix::zeros(0, self.cols + o.cols);
        }
        Matrix::from_rows(rows)
    }

    /// Submatrix of the given column range.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                m[(i, j - start)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn conj(&self) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.conj()).collect() }
    }

    /// Reduced row echelon form and pivot columns, by Gauss–Jordan elimination.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Rank together with the null space as a canonical subspace.
    pub fn rank_kernel(&self) -> (usize, Subspace<F>) {
        let k = self.kernel_basis();
        (self.cols - k.len(), Subspace::span(self.cols, k))
    }

    /// Some `x` with `self·x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.col_range(n, 2 * n))
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace<F> {
        Subspace::span(self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// Determinant by elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Integral domain with exact division, as needed by fraction-free elimination.
pub trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Exact quotient; the caller guarantees divisibility.
    fn exact_div(&self, d: &Self) -> Self;
}

impl Domain for Cq {
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() / d.clone()
    }
}

impl Domain for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn exact_div(&self, d: &Self) -> Self {
        Poly::exact_div(self, d).expect("Bareiss quotient must be exact")
    }
}

/// Rank by Bareiss fraction-free elimination.
pub fn bareiss_rank<D: Domain>(mut rows: Vec<Vec<D>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev: Option<D> = None;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in r + 1..nrows {
            let lead = rows[i][c].clone();
            for j in c..ncols {
                let mut v = rows[i][j].mul(&piv).sub(&rows[r][j].mul(&lead));
                if let Some(pp) = &prev {
                    v = v.exact_div(pp);
                }
                rows[i][j] = v;
            }
        }
        prev = Some(piv);
        r += 1;
    }
    r
}

impl Matrix<Cq> {
    /// Rows scaled to Gaussian integers by clearing denominators.
    pub fn integer_cleared(&self) -> Vec<Vec<Cq>> {
        (0..self.rows)
            .map(|i| {
                let mut l = BigInt::one();
                for x in self.row(i) {
                    l = l.lcm(&x.denom_lcm());
                }
                self.row(i).iter().map(|x| x.scale_int(&l)).collect()
            })
            .collect()
    }

    /// Rank via fraction-free elimination over the Gaussian integers.
    pub fn rank_fraction_free(&self) -> usize {
        bareiss_rank(self.integer_cleared())
    }
}

impl Matrix<RatFn> {
    /// Rank over the rational-function field, computed on polynomial rows.
    pub fn rank_symbolic(&self) -> usize {
        let rows: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut den = Poly::constant(Cq::one());
                for x in row {
                    if x.denom().as_constant().is_none() {
                        den = &den * x.denom();
                    }
                }
                row.iter()
                    .map(|x| {
                        let scaled = x.clone() * RatFn::from_poly(den.clone());
                        debug_assert!(scaled.denom().as_constant().is_some());
                        let c = scaled.denom().as_constant().unwrap();
                        scaled.numer().scale(&(Cq::one() / c))
                    })
                    .collect()
            })
            .collect();
        bareiss_rank(rows)
    }
}

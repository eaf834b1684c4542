use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::linalg::{Cq, Field, Matrix};
use crate::{Error, Result};

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 16;

/// Sign of `e_a ∧ e_b` relative to `e_{a|b}` for disjoint masks.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    debug_assert_eq!(a & b, 0);
    let mut swaps = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        swaps += (a >> (j + 1)).count_ones();
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `ι_i e_f` relative to `e_{f \ i}`, for `i ∈ f` (0-based bit).
pub fn contract_sign(i: u32, f: u32) -> i32 {
    if (f & ((1u32 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Masks of degree `k` on `n` generators, in lexicographic order of index tuples.
pub fn degree_masks(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// All masks ordered by degree, then lexicographically.
pub fn all_masks(n: usize) -> Vec<u32> {
    (0..=n).flat_map(|k| degree_masks(n, k)).collect()
}

/// Indexing of a list of masks, used to turn forms into coordinate vectors.
#[derive(Clone, Debug)]
pub struct Basis {
    pub n: usize,
    pub masks: Vec<u32>,
    index: BTreeMap<u32, usize>,
}

impl Basis {
    pub fn new(n: usize, masks: Vec<u32>) -> Self {
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Basis { n, masks, index }
    }

    pub fn degree(n: usize, k: usize) -> Self {
        Basis::new(n, degree_masks(n, k))
    }

    pub fn full(n: usize) -> Self {
        Basis::new(n, all_masks(n))
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Coordinates of a form; panics if the form has components outside the basis.
    pub fn coords<F: Field>(&self, a: &Form<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.len()];
        for (m, c) in a.terms() {
            let i = self.index_of(*m).unwrap_or_else(|| panic!("component e{:b} outside basis", m));
            v[i] = c.clone();
        }
        v
    }

    pub fn form<F: Field>(&self, v: &[F]) -> Form<F> {
        let mut f = Form::zero(self.n);
        for (c, &m) in v.iter().zip(&self.masks) {
            f.add_term(m, c.clone());
        }
        f
    }

    pub fn element<F: Field>(&self, i: usize) -> Form<F> {
        Form::basis(self.n, self.masks[i])
    }

    /// Matrix of a linear operator from this basis to `target`, columns indexed by `self`.
    pub fn matrix_of<F: Field>(&self, target: &Basis, op: impl Fn(&Form<F>) -> Form<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.len()).map(|i| target.coords(&op(&self.element(i)))).collect();
        Matrix::from_cols(target.len(), &cols)
    }
}

/// Sparse element of the exterior algebra on `n` generators.
///
/// Bit `j` of a mask stands for generator `e_{j+1}`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<F = Cq> {
    n: usize,
    terms: BTreeMap<u32, F>,
}

impl<F: Field> Form<F> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {} generators", MAX_GENERATORS);
        Form { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut f = Form::zero(n);
        f.add_term(0, c);
        f
    }

    pub fn one(n: usize) -> Self {
        Form::scalar(n, F::one())
    }

    pub fn basis(n: usize, mask: u32) -> Self {
        let mut f = Form::zero(n);
        f.add_term(mask, F::one());
        f
    }

    /// The generator `e_i`, with `i` counted from 1.
    pub fn gen(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "generator index out of range");
        Form::basis(n, 1 << (i - 1))
    }

    /// Wedge of generators given by 1-based indices, in the given order.
    pub fn monomial(n: usize, idx: &[usize]) -> Self {
        idx.iter().fold(Form::one(n), |acc, &i| acc.wedge(&Form::gen(n, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u32) -> F {
        self.terms.get(&mask).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, c: F) {
        debug_assert!(mask >> self.n == 0, "mask beyond generator count");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.terms.insert(mask, v);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    fn check(&self, o: &Form<F>) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!("{} vs {} generators", self.n, o.n)));
        }
        Ok(())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect() }
    }

    pub fn try_wedge(&self, o: &Form<F>) -> Result<Self> {
        self.check(o)?;
        Ok(self.wedge(o))
    }

    /// Exterior product. Panics on generator-count mismatch; see [`Form::try_wedge`].
    pub fn wedge(&self, o: &Form<F>) -> Self {
        assert_eq!(self.n, o.n, "generator count mismatch");
        let mut out = Form::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                let c = if wedge_sign(*a, *b) < 0 { -c } else { c };
                out.add_term(a | b, c);
            }
        }
        out
    }

    /// Interior product `ι_i` with the basis vector dual to `e_i` (1-based).
    pub fn contract_gen(&self, i: usize) -> Self {
        let bit = (i - 1) as u32;
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            if m & (1 << bit) == 0 {
                continue;
            }
            let c = if contract_sign(bit, *m) < 0 { -c.clone() } else { c.clone() };
            out.add_term(m & !(1 << bit), c);
        }
        out
    }

    /// Interior product with a vector given by components.
    pub fn contract_vec(&self, x: &[F]) -> Self {
        assert_eq!(x.len(), self.n, "vector length");
        let mut out = Form::zero(self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out = out + self.contract_gen(i + 1).scale(xi);
        }
        out
    }

    /// Component of degree `k`.
    pub fn part(&self, k: usize) -> Self {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.count_ones() as usize == k).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Even or odd component.
    pub fn parity_part(&self, odd: bool) -> Self {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.count_ones() % 2 == 1) == odd)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn top(&self) -> Self {
        self.part(self.n)
    }

    /// Coefficient of the top generator `e_{1…n}`.
    pub fn top_coeff(&self) -> F {
        self.coeff(((1u64 << self.n) - 1) as u32)
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).min()
    }

    pub fn highest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).max()
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let lo = self.lowest_degree()?;
        (self.highest_degree()? == lo).then_some(lo)
    }

    pub fn conj(&self) -> Self {
        Form { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Reversal antiautomorphism: degree `k` is multiplied by `(−1)^{k(k−1)/2}`.
    pub fn reversal(&self) -> Self {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let k = m.count_ones();
                    if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                        (*m, -c.clone())
                    } else {
                        (*m, c.clone())
                    }
                })
                .collect(),
        }
    }

    /// `k`-th wedge power.
    pub fn wedge_pow(&self, k: usize) -> Self {
        (0..k).fold(Form::one(self.n), |acc, _| acc.wedge(self))
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Same components viewed on a larger generator set.
    pub fn extend_to(&self, n: usize) -> Self {
        assert!(n >= self.n);
        Form { n, terms: self.terms.clone() }
    }
}

impl Form<Cq> {
    pub fn lift<G: Field>(&self) -> Form<G> {
        self.map(|c| G::from_cq(c.clone()))
    }
}

impl<F: Field> Add for Form<F> {
    type Output = Form<F>;
    fn add(mut self, o: Form<F>) -> Form<F> {
        assert_eq!(self.n, o.n, "generator count mismatch");
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Sub for Form<F> {
    type Output = Form<F>;
    fn sub(self, o: Form<F>) -> Form<F> {
        self + (-o)
    }
}

impl<F: Field> Neg for Form<F> {
    type Output = Form<F>;
    fn neg(self) -> Form<F> {
        Form { n: self.n, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a, F: Field> Add<&'a Form<F>> for &'a Form<F> {
    type Output = Form<F>;
    fn add(self, o: &Form<F>) -> Form<F> {
        self.clone() + o.clone()
    }
}

impl<'a, F: Field> Sub<&'a Form<F>> for &'a Form<F> {
    type Output = Form<F>;
    fn sub(self, o: &Form<F>) -> Form<F> {
        self.clone() - o.clone()
    }
}

/// Sparse element of the exterior algebra on the dual vectors `∂_1, …, ∂_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<F = Cq>(pub Form<F>);

impl<F: Field> Multivector<F> {
    pub fn zero(n: usize) -> Self {
        Multivector(Form::zero(n))
    }

    /// The basis vector `∂_i` (1-based).
    pub fn gen(n: usize, i: usize) -> Self {
        Multivector(Form::gen(n, i))
    }

    pub fn from_vec(x: &[F]) -> Self {
        let mut f = Form::zero(x.len());
        for (i, c) in x.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        Multivector(f)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn wedge(&self, o: &Multivector<F>) -> Self {
        Multivector(self.0.wedge(&o.0))
    }

    pub fn scale(&self, c: &F) -> Self {
        Multivector(self.0.scale(c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    /// Interior product: `(X_1∧…∧X_k)⌟φ = φ(X_1, …, X_k, ·)`, that is `ι_{X_k}⋯ι_{X_1}φ`.
    pub fn contract(&self, a: &Form<F>) -> Result<Form<F>> {
        if self.n() != a.n() {
            return Err(Error::Dimension(format!("{} vs {} generators", self.n(), a.n())));
        }
        let mut out = Form::zero(a.n());
        for (vm, vc) in self.0.terms() {
            for (fm, fc) in a.terms() {
                if vm & fm != *vm {
                    continue;
                }
                let mut sign = 1;
                let mut cur = *fm;
                let mut bits = *vm;
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    sign *= contract_sign(b, cur);
                    cur &= !(1 << b);
                }
                let c = vc.clone() * fc.clone();
                out.add_term(cur, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }
}

impl<F: Field> Add for Multivector<F> {
    type Output = Multivector<F>;
    fn add(self, o: Multivector<F>) -> Multivector<F> {
        Multivector(self.0 + o.0)
    }
}

impl<F: Field> Neg for Multivector<F> {
    type Output = Multivector<F>;
    fn neg(self) -> Multivector<F> {
        Multivector(-self.0)
    }
}

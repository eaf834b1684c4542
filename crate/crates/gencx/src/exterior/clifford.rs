use std::ops::{Add, Neg, Sub};

use super::form::{Form, Multivector};
use crate::linalg::{Cq, Field};
use crate::{Error, Result};

/// Element `X + ξ` of `V ⊕ V*` (complexified): vector components then covector components.
#[derive(Clone, PartialEq, Debug)]
pub struct GenVector<F = Cq> {
    pub x: Vec<F>,
    pub xi: Vec<F>,
}

impl<F: Field> GenVector<F> {
    pub fn zero(n: usize) -> Self {
        GenVector { x: vec![F::zero(); n], xi: vec![F::zero(); n] }
    }

    pub fn new(x: Vec<F>, xi: Vec<F>) -> Self {
        assert_eq!(x.len(), xi.len(), "vector and covector parts differ in length");
        GenVector { x, xi }
    }

    /// The vector `∂_i` (1-based).
    pub fn vector(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.x[i - 1] = F::one();
        v
    }

    /// The covector `e_i` (1-based).
    pub fn covector(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.xi[i - 1] = F::one();
        v
    }

    /// Standard basis of `V ⊕ V*`: `∂_1, …, ∂_n, e_1, …, e_n`.
    pub fn standard_basis(n: usize) -> Vec<Self> {
        (1..=n).map(|i| Self::vector(n, i)).chain((1..=n).map(|i| Self::covector(n, i))).collect()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Coordinates `(X, ξ)` as one vector of length `2n`.
    pub fn to_coords(&self) -> Vec<F> {
        self.x.iter().chain(self.xi.iter()).cloned().collect()
    }

    pub fn from_coords(v: &[F]) -> Self {
        let n = v.len() / 2;
        GenVector { x: v[..n].to_vec(), xi: v[n..].to_vec() }
    }

    pub fn covector_form(&self) -> Form<F> {
        let mut f = Form::zero(self.n());
        for (i, c) in self.xi.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    pub fn scale(&self, c: &F) -> Self {
        GenVector {
            x: self.x.iter().map(|a| a.clone() * c.clone()).collect(),
            xi: self.xi.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        GenVector { x: self.x.iter().map(|a| a.conj()).collect(), xi: self.xi.iter().map(|a| a.conj()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(self.xi.iter()).all(|a| a.is_zero())
    }

    /// Natural pairing `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
    pub fn pairing(&self, o: &GenVector<F>) -> F {
        let mut s = F::zero();
        for i in 0..self.n() {
            s = s + self.xi[i].clone() * o.x[i].clone() + o.xi[i].clone() * self.x[i].clone();
        }
        s / F::from_int(2)
    }

    /// Clifford action `(X+ξ)·φ = X⌟φ + ξ∧φ`.
    pub fn act(&self, a: &Form<F>) -> Form<F> {
        assert_eq!(self.n(), a.n(), "generator count mismatch");
        a.contract_vec(&self.x) + self.covector_form().wedge(a)
    }

    pub fn try_act(&self, a: &Form<F>) -> Result<Form<F>> {
        if self.n() != a.n() {
            return Err(Error::Dimension(format!("{} vs {} generators", self.n(), a.n())));
        }
        Ok(self.act(a))
    }
}

impl<F: Field> Add for GenVector<F> {
    type Output = GenVector<F>;
    fn add(self, o: GenVector<F>) -> GenVector<F> {
        GenVector {
            x: self.x.into_iter().zip(o.x).map(|(a, b)| a + b).collect(),
            xi: self.xi.into_iter().zip(o.xi).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<F: Field> Sub for GenVector<F> {
    type Output = GenVector<F>;
    fn sub(self, o: GenVector<F>) -> GenVector<F> {
        self + (-o)
    }
}

impl<F: Field> Neg for GenVector<F> {
    type Output = GenVector<F>;
    fn neg(self) -> GenVector<F> {
        GenVector { x: self.x.into_iter().map(|a| -a).collect(), xi: self.xi.into_iter().map(|a| -a).collect() }
    }
}

/// Spin action of the bivector `u∧w ∈ Λ²(V⊕V*)`: `½(w·u·φ − u·w·φ)`.
///
/// On `∂_i∧∂_j` this is the contraction `(∂_i∧∂_j)⌟`, on `e_i∧e_j` it is `−e_{ij}∧`.
pub fn bivector_act<F: Field>(u: &GenVector<F>, w: &GenVector<F>, a: &Form<F>) -> Form<F> {
    let wu = w.act(&u.act(a));
    let uw = u.act(&w.act(a));
    (wu - uw).scale(&(F::one() / F::from_int(2)))
}

/// Element of `Λ²(V⊕V*)` as a sum of decomposable terms `c·u∧w`.
#[derive(Clone, Debug)]
pub struct GenBivector<F = Cq> {
    pub terms: Vec<(F, GenVector<F>, GenVector<F>)>,
}

impl<F: Field> GenBivector<F> {
    pub fn new() -> Self {
        GenBivector { terms: Vec::new() }
    }

    pub fn push(&mut self, c: F, u: GenVector<F>, w: GenVector<F>) {
        self.terms.push((c, u, w));
    }

    pub fn act(&self, a: &Form<F>) -> Form<F> {
        let mut out = Form::zero(a.n());
        for (c, u, w) in &self.terms {
            out = out + bivector_act(u, w, a).scale(c);
        }
        out
    }
}

impl<F: Field> Default for GenBivector<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Mukai pairing: top-degree component of `reversal(a) ∧ b`.
pub fn mukai<F: Field>(a: &Form<F>, b: &Form<F>) -> Result<Form<F>> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{} vs {} generators", a.n(), b.n())));
    }
    Ok(a.reversal().wedge(b).top())
}

/// Sums `Σ op^k(a)/k!` for a nilpotent linear operator.
pub fn exp_nilpotent<F: Field>(op: impl Fn(&Form<F>) -> Form<F>, a: &Form<F>) -> Result<Form<F>> {
    let mut term = a.clone();
    let mut sum = a.clone();
    for k in 1..=(2 * a.n() + 2) {
        term = op(&term).scale(&(F::one() / F::from_int(k as i64)));
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum + term.clone();
    }
    Err(Error::Invalid("exponential series does not terminate".into()))
}

/// Which exponential to apply in [`exp_act`].
#[derive(Clone, Debug)]
pub enum ExpKind<F = Cq> {
    /// `e^B ∧ ·` for a 2-form `B`.
    BWedge(Form<F>),
    /// `e^{β⌟} ·` for a bivector `β`.
    BetaContract(Multivector<F>),
    /// Exponential of the spin action of an element of `Λ²(V⊕V*)`.
    BivectorClifford(GenBivector<F>),
}

pub fn exp_act<F: Field>(kind: &ExpKind<F>, a: &Form<F>) -> Result<Form<F>> {
    match kind {
        ExpKind::BWedge(b) => {
            if !b.is_zero() && b.degree() != Some(2) {
                return Err(Error::Invalid("B must be a homogeneous 2-form".into()));
            }
            if b.n() != a.n() {
                return Err(Error::Dimension("generator count mismatch".into()));
            }
            exp_nilpotent(|x| b.wedge(x), a)
        }
        ExpKind::BetaContract(beta) => {
            if !beta.0.is_zero() && beta.degree() != Some(2) {
                return Err(Error::Invalid("β must be a homogeneous bivector".into()));
            }
            if beta.n() != a.n() {
                return Err(Error::Dimension("generator count mismatch".into()));
            }
            exp_nilpotent(|x| beta.contract(x).expect("checked"), a)
        }
        ExpKind::BivectorClifford(eps) => exp_nilpotent(|x| eps.act(x), a),
    }
}

/// `e^B` as a form.
pub fn exp_form<F: Field>(b: &Form<F>) -> Form<F> {
    exp_nilpotent(|x| b.wedge(x), &Form::one(b.n())).expect("even forms are nilpotent")
}

use crate::exterior::{format_form, Form, GenVector};
use crate::liealg::LieModel;
use crate::linalg::Field;
use crate::{Error, Result};

/// A Lie model seen as a circle bundle: the fiber is the generator `θ = e_f` with
/// vertical vector `X = ∂_f`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleBundle {
    pub model: LieModel,
    /// 1-based index of the connection generator.
    pub fiber: usize,
}

impl CircleBundle {
    pub fn new(model: &LieModel, fiber: usize) -> Result<Self> {
        let n = model.n();
        if fiber == 0 || fiber > n {
            return Err(Error::Invalid(format!("fiber generator {} out of range", fiber)));
        }
        if model.coframe().contains(&fiber) {
            return Err(Error::Invalid(format!("e{} stands for a base variable", fiber)));
        }
        let f = model.de(fiber);
        if !f.contract_gen(fiber).is_zero() {
            return Err(Error::Invalid(format!("curvature {} is not horizontal", format_form(f))));
        }
        let ft = model.h().contract_gen(fiber);
        if !model.d(&ft).is_zero() {
            return Err(Error::Invalid("H is not invariant under the circle".into()));
        }
        Ok(CircleBundle { model: model.clone(), fiber })
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn theta(&self) -> Form {
        Form::gen(self.n(), self.fiber)
    }

    /// `F = dθ`.
    pub fn curvature(&self) -> Form {
        self.model.de(self.fiber).clone()
    }

    /// `F̃ = X⌟H`.
    pub fn dual_curvature(&self) -> Form {
        self.model.h().contract_gen(self.fiber)
    }

    /// `h = H − F̃∧θ`.
    pub fn basic_twist(&self) -> Form {
        self.model.h().clone() - self.dual_curvature().wedge(&self.theta())
    }

    /// `L_X a = X⌟da + d(X⌟a)`.
    pub fn lie_derivative<F: Field>(&self, a: &Form<F>) -> Form<F> {
        self.model.d(a).contract_gen(self.fiber) + self.model.d(&a.contract_gen(self.fiber))
    }

    pub fn is_invariant<F: Field>(&self, a: &Form<F>) -> bool {
        self.lie_derivative(a).is_zero()
    }

    /// `L_X` on `Y + η`: `[X, Y] + X⌟dη`.
    pub fn lie_derivative_vector<F: Field>(&self, v: &GenVector<F>) -> GenVector<F> {
        let n = self.n();
        let x: Vec<F> = (1..=n)
            .map(|k| {
                // e_k([X, Y]) = −de_k(X, Y)
                let c = self.model.de(k).contract_gen(self.fiber).lift::<F>();
                let mut s = F::zero();
                for (i, y) in v.x.iter().enumerate() {
                    s = s.clone() - c.coeff(1 << i) * y.clone();
                }
                s
            })
            .collect();
        let xi = self.model.d(&v.covector_form()).contract_gen(self.fiber);
        GenVector::new(x, (0..n).map(|i| xi.coeff(1 << i)).collect())
    }

    pub fn is_invariant_vector<F: Field>(&self, v: &GenVector<F>) -> bool {
        self.lie_derivative_vector(v).is_zero()
    }

    /// `(ρ_1, ρ_0)` with `ρ = θ∧ρ_1 + ρ_0` and both parts horizontal.
    pub fn split<F: Field>(&self, a: &Form<F>) -> (Form<F>, Form<F>) {
        let r1 = a.contract_gen(self.fiber);
        let theta: Form<F> = Form::gen(self.n(), self.fiber);
        let r0 = a.clone() - theta.wedge(&r1);
        (r1, r0)
    }
}

/// A circle bundle and its T-dual; both use the same generator index for `θ` and `θ̃`.
#[derive(Clone, Debug)]
pub struct DualityPair {
    pub source: CircleBundle,
    pub dual: CircleBundle,
}

/// T-dual along `e_f`: `dθ̃ = F̃`, `H̃ = F∧θ̃ + h`, horizontal differentials unchanged.
pub fn dualize_along(model: &LieModel, fiber: usize) -> Result<DualityPair> {
    let e = CircleBundle::new(model, fiber)?;
    let mut de = model.differentials().to_vec();
    de[fiber - 1] = e.dual_curvature();
    let ht = e.curvature().wedge(&e.theta()) + e.basic_twist();
    let dual = LieModel::new(de, ht)
        .map_err(|err| Error::Invalid(format!("dual differentials are inconsistent: {}", err)))?
        .with_vars(model.vars().to_vec(), model.coframe().to_vec())?;
    let dual = CircleBundle::new(&dual, fiber)?;
    Ok(DualityPair { source: e, dual })
}

impl DualityPair {
    pub fn new(model: &LieModel, fiber: usize) -> Result<Self> {
        dualize_along(model, fiber)
    }

    pub fn fiber(&self) -> usize {
        self.source.fiber
    }

    /// The pair read backwards; its `τ` is the inverse up to sign.
    pub fn reversed(&self) -> DualityPair {
        DualityPair { source: self.dual.clone(), dual: self.source.clone() }
    }

    /// `τ(θ∧ρ_1 + ρ_0) = ρ_1 − θ̃∧ρ_0`; fails on forms that are not circle-invariant.
    pub fn tau<F: Field>(&self, a: &Form<F>) -> Result<Form<F>> {
        if !self.source.is_invariant(a) {
            return Err(Error::Invalid("form is not invariant under the circle".into()));
        }
        Ok(self.tau_unchecked(a))
    }

    pub(crate) fn tau_unchecked<F: Field>(&self, a: &Form<F>) -> Form<F> {
        let (r1, r0) = self.source.split(a);
        let theta: Form<F> = Form::gen(a.n(), self.fiber());
        r1 - theta.wedge(&r0)
    }

    /// `φ(X + f∂_θ + ξ + gθ) = −X − g∂_θ̃ − ξ − fθ̃`.
    pub fn phi<F: Field>(&self, v: &GenVector<F>) -> GenVector<F> {
        let i = self.fiber() - 1;
        let mut x: Vec<F> = v.x.iter().map(|c| -c.clone()).collect();
        let mut xi: Vec<F> = v.xi.iter().map(|c| -c.clone()).collect();
        x[i] = -v.xi[i].clone();
        xi[i] = -v.x[i].clone();
        GenVector::new(x, xi)
    }
}

use super::courant::courant;
use super::structure::GCStructure;
use crate::exterior::{exp_act, format_form, ExpKind, Form, GenBivector, GenVector};
use crate::liealg::LieModel;
use crate::linalg::{Cq, Matrix};
use crate::{Error, Result};

/// Outcome of a Maurer–Cartan deformation.
#[derive(Clone, Debug)]
pub struct Deformation {
    /// `d_L ε + ½[ε, ε]` in the basis of `Λ³L̄` dual to the chosen basis of `L`.
    pub mc: Form,
    pub structure: GCStructure,
}

impl GCStructure {
    /// Basis of `L` as stored, with the basis of `L̄` dual to it under `2⟨·,·⟩`.
    pub fn dual_bases(&self) -> (Vec<GenVector>, Vec<GenVector>) {
        let l: Vec<GenVector> = self.l.basis().iter().map(|v| GenVector::from_coords(v)).collect();
        let b: Vec<GenVector> = self.lbar.basis().iter().map(|v| GenVector::from_coords(v)).collect();
        let two = Cq::from_int(2);
        let gram = Matrix::from_rows(
            b.iter().map(|x| l.iter().map(|y| x.pairing(y) * two.clone()).collect()).collect(),
        );
        let inv = gram.inverse().expect("L and its conjugate pair nondegenerately");
        let dual = (0..l.len())
            .map(|j| {
                let mut v = GenVector::zero(self.n());
                for (a, ba) in b.iter().enumerate() {
                    v = v + ba.scale(&inv[(a, j)]);
                }
                v
            })
            .collect();
        (l, dual)
    }

    /// Chevalley–Eilenberg model of the Lie algebra `(L, Courant bracket)`; generator `j`
    /// is the `j`-th dual basis vector of `L̄`.
    pub fn algebroid_model(&self) -> Result<LieModel> {
        if !self.is_integrable() {
            return Err(Error::Invalid("structure is not integrable".into()));
        }
        let (l, dual) = self.dual_bases();
        let n = l.len();
        let two = Cq::from_int(2);
        let mut de = vec![Form::zero(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let br = courant(&self.model, &l[i], &l[j]);
                for (k, dk) in de.iter_mut().enumerate() {
                    let c = br.pairing(&dual[k]) * two.clone();
                    dk.add_term((1 << i) | (1 << j), -c);
                }
            }
        }
        LieModel::new(de, Form::zero(n))
    }

    /// Coordinates of an element of `L̄` in the dual basis; fails outside `L̄`.
    pub fn lbar_coords(&self, v: &GenVector) -> Result<Vec<Cq>> {
        if !self.lbar.contains(&v.to_coords()) {
            return Err(Error::Invalid("vector is not in the conjugate of L".into()));
        }
        let (l, _) = self.dual_bases();
        Ok(l.iter().map(|x| v.pairing(x) * Cq::from_int(2)).collect())
    }

    /// An element of `Λ²L̄` written as a 2-form on the dual-basis generators.
    pub fn bivector_form(&self, eps: &GenBivector) -> Result<Form> {
        let n = self.n();
        let lin = |c: &[Cq]| {
            let mut f = Form::zero(n);
            for (i, x) in c.iter().enumerate() {
                f.add_term(1 << i, x.clone());
            }
            f
        };
        let mut out = Form::zero(n);
        for (c, u, w) in &eps.terms {
            out = out + lin(&self.lbar_coords(u)?).wedge(&lin(&self.lbar_coords(w)?)).scale(c);
        }
        Ok(out)
    }

    /// Schouten bracket of two elements of `Λ²L̄`, extending the bracket of `L̄` as a derivation.
    pub fn schouten(&self, a: &Form, b: &Form) -> Form {
        let (l, dual) = self.dual_bases();
        let n = l.len();
        let two = Cq::from_int(2);
        let mut gens = vec![vec![Form::zero(n); n]; n];
        for x in 0..n {
            for y in 0..n {
                let br = courant(&self.model, &dual[x], &dual[y]);
                for (c, lc) in l.iter().enumerate() {
                    gens[x][y].add_term(1 << c, br.pairing(lc) * two.clone());
                }
            }
        }
        let pair = |m: u32| {
            let i = m.trailing_zeros() as usize;
            let j = (m & (m - 1)).trailing_zeros() as usize;
            (i, j)
        };
        let g = |i: usize| Form::<Cq>::basis(n, 1 << i);
        let mut out = Form::zero(n);
        for (&ma, ca) in a.terms() {
            for (&mb, cb) in b.terms() {
                let (x, y) = pair(ma);
                let (z, w) = pair(mb);
                let t = gens[x][z].wedge(&g(y)).wedge(&g(w)) - gens[x][w].wedge(&g(y)).wedge(&g(z))
                    - gens[y][z].wedge(&g(x)).wedge(&g(w))
                    + gens[y][w].wedge(&g(x)).wedge(&g(z));
                out = out + t.scale(&(ca.clone() * cb.clone()));
            }
        }
        out
    }

    /// `d_L ε + ½[ε, ε]`.
    pub fn maurer_cartan(&self, eps: &GenBivector) -> Result<Form> {
        let alg = self.algebroid_model()?;
        let e = self.bivector_form(eps)?;
        Ok(alg.d(&e) + self.schouten(&e, &e).scale(&Cq::from_frac(1, 2)))
    }

    /// Deforms by `ε ∈ Λ²L̄` when the Maurer–Cartan equation holds; the new spinor is `e^ε·ρ`.
    pub fn deform(&self, eps: &GenBivector) -> Result<Deformation> {
        let mc = self.maurer_cartan(eps)?;
        if !mc.is_zero() {
            return Err(Error::Invalid(format!("Maurer-Cartan equation fails: {}", format_form(&mc))));
        }
        let rho = deformed_spinor(&self.rho, eps)?;
        let structure = GCStructure::from_spinor(&self.model, &rho)?;
        Ok(Deformation { mc, structure })
    }
}

/// `e^ε·ρ` for the spin action of `ε`.
pub fn deformed_spinor(rho: &Form, eps: &GenBivector) -> Result<Form> {
    exp_act(&ExpKind::BivectorClifford(eps.clone()), rho)
}

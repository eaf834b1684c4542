use serde::{Serialize, Serializer};

use super::SymplecticData;
use crate::cohomology::{cohomology, lemma_check, Cohomology, LemmaVerdict};
use crate::exterior::{exp_form, exp_nilpotent, format_form, Basis, Form};
use crate::gcs::GCStructure;
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::Result;

fn show_cq<S: Serializer>(c: &Option<Cq>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_str(&c.to_string()),
        None => s.serialize_none(),
    }
}

/// `φ` against the `U`-grading of `e^{iω}`, on every basis form.
///
/// Since `φ(Λ^k) = U^{n−k}`, `φ(dα)` lies in `U^{n−k−1}`: `d` corresponds to `∂̄` and `δ` to `∂`.
/// The `as_stated` pair records `∂φ = φd`, `−2i∂̄φ = φδ`; `swapped` records `∂̄φ = φd`, `−2i∂φ = φδ`.
#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    /// `φ(Λ^k) ⊂ U^{n−k}` for every basis form.
    pub graded: bool,
    pub isomorphism: bool,
    pub as_stated: IdentityPair,
    pub swapped: IdentityPair,
    pub failures: Vec<String>,
    /// `dim H_∂^{n−k}` listed by `k`.
    pub del_cohomology: Vec<usize>,
    /// `dim H_∂̄^{n−k}` listed by `k`.
    pub delbar_cohomology: Vec<usize>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityPair {
    pub d_identity: bool,
    pub delta_identity: bool,
}

impl IdentityPair {
    pub fn holds(&self) -> bool {
        self.d_identity && self.delta_identity
    }
}

impl PhiReport {
    /// Graded isomorphism with degenerate `E_1`.
    pub fn degenerates(&self) -> bool {
        self.graded && self.isomorphism && self.del_cohomology == self.betti
    }
}

/// `a = Σ L^r a_r` with every `a_r` primitive.
#[derive(Clone, Debug, Serialize)]
pub struct PrimitiveDecomposition {
    pub form: String,
    /// `(r, a_r)` for the nonzero parts.
    pub parts: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicLevel {
    pub k: usize,
    pub betti: usize,
    /// Dimension of the classes with a `d`- and `δ`-closed representative.
    pub harmonic_classes: usize,
    pub representatives: Vec<PrimitiveDecomposition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicReport {
    pub levels: Vec<HarmonicLevel>,
    pub every_class_harmonic: bool,
}

/// `Λ^j L^j = C·Id` on primitive forms of the given degree, when it is scalar.
#[derive(Clone, Debug, Serialize)]
pub struct LefschetzConstant {
    pub degree: usize,
    pub j: usize,
    #[serde(serialize_with = "show_cq")]
    pub value: Option<Cq>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub lefschetz: bool,
    pub ddelta_lemma: bool,
    pub harmonic: bool,
    pub agree: bool,
}

impl SymplecticData {
    /// `φ(a) = e^{iω} ∧ e^{Λ/2i} a`.
    pub fn phi(&self, a: &Form) -> Form {
        let c = Cq::one() / Cq::gauss(0, 2);
        let t = exp_nilpotent(|x| self.lambda_of(x).scale(&c), a).expect("Λ is nilpotent");
        exp_form(&self.omega.scale(&Cq::i())).wedge(&t)
    }

    /// The structure of the spinor `e^{iω}`.
    pub fn structure(&self) -> Result<GCStructure> {
        GCStructure::from_spinor(&self.model, &exp_form(&self.omega.scale(&Cq::i())))
    }

    pub fn phi_report(&self) -> Result<PhiReport> {
        let s = self.structure()?;
        let n = self.n() as i64;
        let minus_2i = Cq::gauss(0, -2);
        let mut failures = Vec::new();
        let mut graded = true;
        let mut ok = [true; 4];
        for i in 0..self.dim() {
            let a: Form = self.basis.element(i);
            let k = self.basis.masks[i].count_ones() as i64;
            let pa = self.phi(&a);
            if s.grading_of(&pa) != Some(n - k) {
                graded = false;
                failures.push(format!("φ({}) is not in U^{}", format_form(&a), n - k));
                continue;
            }
            let (del, delbar) = s.del_split(&pa)?;
            let pd = self.phi(&self.model.d(&a));
            let pdelta = self.phi(&self.delta_of(&a));
            let checks = [
                (del == pd, "∂φ = φd"),
                (delbar.scale(&minus_2i) == pdelta, "−2i∂̄φ = φδ"),
                (delbar == pd, "∂̄φ = φd"),
                (del.scale(&minus_2i) == pdelta, "−2i∂φ = φδ"),
            ];
            for (slot, (holds, name)) in ok.iter_mut().zip(checks) {
                if !holds {
                    *slot = false;
                    failures.push(format!("{} fails on {}", name, format_form(&a)));
                }
            }
        }
        let phi_matrix = self.basis.matrix_of(&self.basis, |a| self.phi(a));
        let isomorphism = phi_matrix.rank() == self.dim();
        let reversed = |v: Vec<usize>| v.into_iter().rev().collect::<Vec<_>>();
        let del_cohomology = reversed(s.canonical_e1()?);
        let delbar_cohomology = reversed(s.conjugate_e1()?);
        let betti = Cohomology::of(&self.model).betti();
        Ok(PhiReport {
            graded,
            isomorphism,
            as_stated: IdentityPair { d_identity: ok[0], delta_identity: ok[1] },
            swapped: IdentityPair { d_identity: ok[2], delta_identity: ok[3] },
            failures,
            del_cohomology,
            delbar_cohomology,
            betti,
        })
    }

    /// Kernel of `Λ` on Λ^s, in degree-`s` coordinates.
    fn primitive_space(&self, s: usize) -> Subspace {
        let src = Basis::degree(self.model.n(), s);
        src.matrix_of(&self.basis, |a| self.lambda_of(a)).rank_kernel().1
    }

    /// Writes `a` as `Σ L^r a_r` with `a_r` primitive; `a` must be homogeneous.
    pub fn primitive_decomposition(&self, a: &Form) -> Option<Vec<(usize, Form)>> {
        let n2 = self.model.n();
        let k = match a.degree() {
            Some(k) => k,
            None => return if a.is_zero() { Some(Vec::new()) } else { None },
        };
        let target = Basis::degree(n2, k);
        let mut cols = Vec::new();
        let mut owner = Vec::new();
        for r in 0..=k / 2 {
            let s = k - 2 * r;
            let src = Basis::degree(n2, s);
            for p in self.primitive_space(s).basis() {
                let pf = src.form(p);
                cols.push(target.coords(&self.omega.wedge_pow(r).wedge(&pf)));
                owner.push((r, pf));
            }
        }
        let x = Matrix::from_cols(target.len(), &cols).solve(&target.coords(a))?;
        let mut parts: Vec<(usize, Form)> = Vec::new();
        for (c, (r, pf)) in x.iter().zip(owner) {
            if c.is_zero() {
                continue;
            }
            match parts.iter_mut().find(|(rr, _)| *rr == r) {
                Some((_, f)) => *f = f.clone() + pf.scale(c),
                None => parts.push((r, pf.scale(c))),
            }
        }
        parts.retain(|(_, f)| !f.is_zero());
        Some(parts)
    }

    pub fn harmonic_report(&self) -> HarmonicReport {
        let n2 = self.model.n();
        let coh = Cohomology::of(&self.model);
        let mut levels = Vec::new();
        for k in 0..=n2 {
            let src = Basis::degree(n2, k);
            // d and δ land in different degrees, so ker(d + δ) = ker d ∩ ker δ
            let m = src.matrix_of(&self.basis, |a| self.model.d(a) + self.delta_of(a));
            let harmonic = m.rank_kernel().1;
            let mut acc = Subspace::zero(coh.betti_at(k));
            let mut representatives = Vec::new();
            for h in harmonic.basis() {
                let c = coh.class_coords(k, h).expect("harmonic forms are closed");
                if acc.contains(&c) {
                    continue;
                }
                acc = acc.sum(&Subspace::span(c.len(), vec![c])).expect("same ambient");
                let f = src.form(h);
                let parts = self.primitive_decomposition(&f).expect("Lefschetz decomposition exists");
                representatives.push(PrimitiveDecomposition {
                    form: format_form(&f),
                    parts: parts.iter().map(|(r, p)| (*r, format_form(p))).collect(),
                });
            }
            levels.push(HarmonicLevel { k, betti: coh.betti_at(k), harmonic_classes: acc.dim(), representatives });
        }
        let every_class_harmonic = levels.iter().all(|l| l.harmonic_classes == l.betti);
        HarmonicReport { levels, every_class_harmonic }
    }

    /// `C_{j,s}` with `Λ^j L^j a = C_{j,s} a` for primitive `s`-forms `a`, `1 ≤ j ≤ n − s`.
    pub fn lefschetz_constants(&self) -> Vec<LefschetzConstant> {
        let n = self.n();
        let n2 = self.model.n();
        let mut out = Vec::new();
        for s in 0..=n {
            let src = Basis::degree(n2, s);
            let prims: Vec<Form> = self.primitive_space(s).basis().iter().map(|p| src.form(p)).collect();
            for j in 1..=n - s {
                let mut value: Option<Cq> = None;
                let mut scalar = true;
                for p in &prims {
                    let mut x = self.omega.wedge_pow(j).wedge(p);
                    for _ in 0..j {
                        x = self.lambda_of(&x);
                    }
                    let (&mask, c0) = p.terms().next().expect("nonzero primitive");
                    let c = x.coeff(mask) / c0.clone();
                    if x != p.scale(&c) || value.as_ref().is_some_and(|v| *v != c) {
                        scalar = false;
                        break;
                    }
                    value = Some(c);
                }
                out.push(LefschetzConstant { degree: s, j, value: if scalar { value } else { None } });
            }
        }
        out
    }

    pub fn ddelta_lemma(&self) -> Result<LemmaVerdict> {
        lemma_check(&self.basis, &self.d, &self.delta)
    }

    /// Lefschetz property, `dδ`-lemma and harmonic representatives, side by side.
    pub fn equivalence(&self) -> Result<EquivalenceReport> {
        let lefschetz = cohomology(&self.model).lefschetz_report(&self.omega)?.passes;
        let ddelta_lemma = self.ddelta_lemma()?.holds;
        let harmonic = self.harmonic_report().every_class_harmonic;
        Ok(EquivalenceReport { lefschetz, ddelta_lemma, harmonic, agree: lefschetz == ddelta_lemma && ddelta_lemma == harmonic })
    }
}

use std::collections::HashMap;

use serde::Serialize;

use super::cdga::{add_scaled, unit_vec, Cdga};
use super::extension::{ExtElem, FreeExtension, Generator, Materialized, Monomial};
use crate::cohomology::Cohomology;
use crate::linalg::{Cq, Field, Matrix, Subspace};
use crate::{Error, Result};

/// How many rounds of killing generators one degree may take before giving up.
const ROUND_LIMIT: usize = 32;
/// Upper bound on the number of generators in one degree.
const GENERATOR_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// Closed generator adding a missing class.
    Closed,
    /// Generator whose differential kills a class that should not exist.
    Killing,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelGenerator {
    pub degree: usize,
    pub label: String,
    pub kind: GeneratorKind,
    pub differential: String,
    /// Image under the quasi-isomorphism, written in the target basis.
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelCheck {
    pub chain_map: bool,
    /// `ρ*` is an isomorphism in every degree `≤ through`.
    pub isomorphism: bool,
    /// `ρ*` is injective in degree `through + 1`.
    pub injective_next: bool,
    /// Every differential lies in the algebra on earlier generators and has no linear part.
    pub minimal: bool,
}

impl ModelCheck {
    pub fn holds(&self) -> bool {
        self.chain_map && self.isomorphism && self.injective_next && self.minimal
    }
}

/// The minimal model through a degree bound together with its map to the target.
#[derive(Clone, Debug)]
pub struct PartialMinimalModel {
    pub target: Cdga,
    pub extension: FreeExtension,
    pub generators: Vec<ModelGenerator>,
    pub kinds: Vec<GeneratorKind>,
    /// `ρ` on each generator, in target coordinates.
    pub images: Vec<Vec<Cq>>,
    pub through: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub through: usize,
    pub generators: Vec<ModelGenerator>,
    /// Number of generators in each degree `0..=through`.
    pub census: Vec<usize>,
    /// `(degree, closed, killing)` for each degree with generators.
    pub splitting: Vec<(usize, usize, usize)>,
    pub check: ModelCheck,
    pub notes: Vec<String>,
}

/// `ρ` as one matrix per degree of a materialization.
pub struct ModelMap {
    pub matrices: Vec<Matrix>,
}

impl PartialMinimalModel {
    pub fn census(&self) -> Vec<usize> {
        let mut c = vec![0; self.through + 1];
        for g in self.extension.generators() {
            c[g.degree] += 1;
        }
        c
    }

    pub fn materialize(&self, bound: usize) -> Result<(Materialized, ModelMap)> {
        let mat = self.extension.materialize(bound)?;
        let map = rho_matrices(&self.target, &self.extension, &self.images, &mat, bound);
        Ok((mat, map))
    }

    pub fn check(&self) -> Result<ModelCheck> {
        let bound = self.through + 2;
        let (mat, rho) = self.materialize(bound)?;
        let m = &mat.algebra;
        let a = &self.target;
        let mut chain_map = true;
        for k in 0..bound {
            let lhs = a.d_out(k).mul(&rho.matrices[k]);
            let rhs = rho.matrices[k + 1].mul(&m.d_out(k));
            if lhs != rhs {
                chain_map = false;
            }
        }
        let hm = m.cohomology();
        let ha = a.cohomology();
        let induced = |k: usize| induced_map(&hm, &ha, &rho.matrices[k], k);
        let isomorphism = (0..=self.through).all(|k| {
            let f = induced(k);
            f.rank() == hm.betti_at(k) && f.rank() == ha.betti_at(k)
        });
        let injective_next = induced(self.through + 1).rank() == hm.betti_at(self.through + 1);
        let minimal = (0..self.extension.generators().len()).all(|j| {
            self.extension.differential_of(j).terms().all(|((_, _, mono), _)| {
                mono.len() <= j && mono.iter().map(|&e| e as usize).sum::<usize>() != 1
            })
        });
        Ok(ModelCheck { chain_map, isomorphism, injective_next, minimal })
    }

    pub fn report(&self) -> Result<ModelReport> {
        let mut splitting: Vec<(usize, usize, usize)> = Vec::new();
        for (g, k) in self.extension.generators().iter().zip(&self.kinds) {
            let slot = match splitting.iter_mut().find(|s| s.0 == g.degree) {
                Some(s) => s,
                None => {
                    splitting.push((g.degree, 0, 0));
                    splitting.last_mut().unwrap()
                }
            };
            match k {
                GeneratorKind::Closed => slot.1 += 1,
                GeneratorKind::Killing => slot.2 += 1,
            }
        }
        Ok(ModelReport {
            through: self.through,
            generators: self.generators.clone(),
            census: self.census(),
            splitting,
            check: self.check()?,
            notes: self.notes.clone(),
        })
    }
}

/// Matrix of `ρ*: H^k(M) → H^k(A)` in class coordinates.
fn induced_map(hm: &Cohomology, ha: &Cohomology, rho: &Matrix, k: usize) -> Matrix {
    let rows = ha.betti_at(k);
    let cols: Vec<Vec<Cq>> = hm
        .reps(k)
        .iter()
        .map(|r| {
            if k > ha.top_degree() {
                Vec::new()
            } else {
                ha.class_coords(k, &rho.mul_vec(r)).expect("ρ maps cocycles to cocycles")
            }
        })
        .collect();
    if cols.is_empty() {
        Matrix::zeros(rows, 0)
    } else {
        Matrix::from_cols(rows, &cols)
    }
}

fn rho_matrices(a: &Cdga, ext: &FreeExtension, images: &[Vec<Cq>], mat: &Materialized, bound: usize) -> ModelMap {
    let gens = ext.generators();
    let mut cache: HashMap<Monomial, Vec<Cq>> = HashMap::new();
    fn rho_mono(
        a: &Cdga,
        gens: &[Generator],
        images: &[Vec<Cq>],
        m: &Monomial,
        cache: &mut HashMap<Monomial, Vec<Cq>>,
    ) -> Vec<Cq> {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let v = match m.iter().position(|&e| e > 0) {
            None => a.unit(),
            Some(first) => {
                let mut rest = m.clone();
                rest[first] -= 1;
                while rest.last() == Some(&0) {
                    rest.pop();
                }
                let rd: usize = rest.iter().enumerate().map(|(j, &e)| e as usize * gens[j].degree).sum();
                let tail = rho_mono(a, gens, images, &rest, cache);
                let g = gens[first].degree;
                let prod = a.mul(g, &images[first], rd, &tail);
                if prod.is_empty() {
                    Vec::new()
                } else {
                    prod
                }
            }
        };
        cache.insert(m.clone(), v.clone());
        v
    }
    let matrices = (0..=bound.max(mat.algebra.top()))
        .map(|k| {
            let rows = a.dim_at(k);
            let keys = if k <= mat.algebra.top() { mat.keys(k) } else { &[] };
            let cols: Vec<Vec<Cq>> = keys
                .iter()
                .map(|(_, _, m)| {
                    let v = rho_mono(a, gens, images, m, &mut cache);
                    if v.len() == rows {
                        v
                    } else {
                        vec![Cq::zero(); rows]
                    }
                })
                .collect();
            if cols.is_empty() {
                Matrix::zeros(rows, 0)
            } else {
                Matrix::from_cols(rows, &cols)
            }
        })
        .collect();
    ModelMap { matrices }
}

/// Builds the minimal model of `a` degree by degree, adding closed generators for missing
/// classes and killing generators for classes that should not exist, so that `ρ*` is an
/// isomorphism through degree `s` and injective in degree `s + 1`.
pub fn minimal_model(a: &Cdga, s: usize) -> Result<PartialMinimalModel> {
    let bound = s + 2;
    if a.is_truncated() && a.known_top() <= s + 1 {
        return Err(Error::Invalid(format!("the target is only known through degree {}", a.top())));
    }
    let ha = a.cohomology();
    let first = (1..=ha.top_degree()).find(|&k| ha.betti_at(k) > 0);
    match first {
        Some(f) if f <= s => {}
        _ => return Err(Error::Invalid("the degree bound is below the first nonzero cohomology".into())),
    }
    let mut ext = FreeExtension::new(Cdga::ground());
    let mut images: Vec<Vec<Cq>> = Vec::new();
    let mut kinds = Vec::new();
    let mut counters: HashMap<(usize, GeneratorKind), usize> = HashMap::new();
    let mut label = |deg: usize, kind: GeneratorKind| {
        let c = counters.entry((deg, kind)).or_insert(0);
        *c += 1;
        match kind {
            GeneratorKind::Closed => format!("x{}_{}", deg, c),
            GeneratorKind::Killing => format!("y{}_{}", deg, c),
        }
    };
    for i in 1..=s {
        let mut rounds = 0;
        loop {
            rounds += 1;
            if rounds > ROUND_LIMIT {
                return Err(Error::Undefined(format!("killing classes in degree {} does not terminate", i + 1)));
            }
            let mat = ext.materialize(bound)?;
            let rho = rho_matrices(a, &ext, &images, &mat, bound);
            let hm = mat.algebra.cohomology();
            // closed generators for classes of A^i outside the image
            let image = induced_map(&hm, &ha, &rho.matrices[i], i);
            let mut span = image.image();
            let mut added = false;
            for c in 0..ha.betti_at(i) {
                let e = unit_vec(ha.betti_at(i), c);
                if span.contains(&e) {
                    continue;
                }
                span = Subspace::span(ha.betti_at(i), span.basis().iter().cloned().chain([e.clone()]).collect());
                ext.push(Generator::new(i, label(i, GeneratorKind::Closed)), ExtElem::zero())?;
                images.push(ha.rep_of(i, &e));
                kinds.push(GeneratorKind::Closed);
                added = true;
            }
            if added {
                continue;
            }
            // killing generators for the kernel in degree i + 1
            let next = induced_map(&hm, &ha, &rho.matrices[i + 1], i + 1);
            let kernel = next.kernel_basis();
            if kernel.is_empty() {
                break;
            }
            let in_degree = ext.generators().iter().filter(|g| g.degree == i).count();
            if in_degree + kernel.len() > GENERATOR_LIMIT {
                return Err(Error::Undefined(format!("the model needs more than {} generators in degree {}", GENERATOR_LIMIT, i)));
            }
            for kappa in kernel {
                let z = hm.rep_of(i + 1, &kappa);
                let target = rho.matrices[i + 1].mul_vec(&z);
                let w = if i + 1 > ha.top_degree() {
                    Vec::new()
                } else {
                    ha.primitive(i + 1, &target).expect("classes in the kernel map to exact elements")
                };
                let w = if w.is_empty() { vec![Cq::zero(); a.dim_at(i)] } else { w };
                ext.push(Generator::new(i, label(i, GeneratorKind::Killing)), mat.elem(i + 1, &z))?;
                images.push(w);
                kinds.push(GeneratorKind::Killing);
            }
        }
    }
    let mat = ext.materialize(bound)?;
    let generators = ext
        .generators()
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let dv = ext.differential_of(j);
            let differential = match mat.coords(g.degree + 1, dv) {
                Some(v) => mat.algebra.format(g.degree + 1, &v),
                None => "0".into(),
            };
            ModelGenerator {
                degree: g.degree,
                label: g.label.clone(),
                kind: kinds[j],
                differential,
                image: a.format(g.degree, &pad(&images[j], a.dim_at(g.degree))),
            }
        })
        .collect();
    let mut notes = Vec::new();
    if ext.generators().iter().any(|g| g.degree == 1) {
        notes.push("degree-1 generators present: the construction is the nilpotent-fundamental-group variant".into());
    }
    Ok(PartialMinimalModel { target: a.clone(), extension: ext, generators, kinds, images, through: s, notes })
}

fn pad(v: &[Cq], n: usize) -> Vec<Cq> {
    let mut out = vec![Cq::zero(); n];
    add_scaled(&mut out, v, &Cq::one());
    out
}

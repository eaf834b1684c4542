use serde::Serialize;

use super::cdga::{add_scaled, unit_vec, Cdga};
use super::extension::{ExtElem, Materialized};
use super::model::{GeneratorKind, PartialMinimalModel};
use crate::cohomology::{massey_triple, Cochain, Cohomology};
use crate::linalg::{Cq, Field, Subspace};
use crate::{Error, Result};

/// Upper bound on the number of splittings tried.
const SPLITTING_LIMIT: usize = 729;
/// Upper bound on the number of triples examined in the Massey search.
const TRIPLE_LIMIT: usize = 20_000;

#[derive(Clone, Debug, Serialize)]
pub struct MasseyWitness {
    /// Degrees and labels of the three classes.
    pub classes: Vec<(usize, String)>,
    pub degree: usize,
    /// A representative of the product.
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FormalityVerdict {
    /// A splitting satisfies the `s`-formality condition and `s` reaches the dimension bound,
    /// so the algebra is formal.
    FormalCertified { s: usize, dimension: usize },
    /// A splitting satisfies the `s`-formality condition; `s` is below the dimension bound.
    SFormal { s: usize },
    Nonformal { witness: MasseyWitness },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalityReport {
    pub s: usize,
    pub dimension: Option<usize>,
    pub verdict: FormalityVerdict,
    /// Number of candidate splittings examined.
    pub splittings_tried: usize,
    /// Degrees in which the ideal condition was checked.
    pub checked_through: Option<usize>,
}

/// Searches triple Massey products of basis classes for one that does not contain zero.
pub fn massey_witness(a: &Cdga) -> Result<Option<MasseyWitness>> {
    let coh = a.cohomology();
    let top = if a.is_truncated() { a.known_top() - 1 } else { a.top() };
    let classes: Vec<(usize, usize, Vec<Cq>)> = (1..=top)
        .flat_map(|k| {
            let coh = &coh;
            (0..coh.betti_at(k)).map(move |c| (k, c, coh.rep_of(k, &unit_vec(coh.betti_at(k), c))))
        })
        .collect();
    let is_zero_class = |k: usize, v: &[Cq]| k > top || v.is_empty() || coh.class_coords(k, v).map_or(false, |c| c.iter().all(|x| x.is_zero()));
    let mut tried = 0;
    for total in 3..=top + 1 {
        for x in &classes {
            for y in &classes {
                for z in &classes {
                    if x.0 + y.0 + z.0 != total {
                        continue;
                    }
                    let deg = total - 1;
                    if deg > top {
                        continue;
                    }
                    if !is_zero_class(x.0 + y.0, &a.mul(x.0, &x.2, y.0, &y.2))
                        || !is_zero_class(y.0 + z.0, &a.mul(y.0, &y.2, z.0, &z.2))
                    {
                        continue;
                    }
                    tried += 1;
                    if tried > TRIPLE_LIMIT {
                        return Ok(None);
                    }
                    let p = massey_triple(
                        a,
                        &coh,
                        &Cochain::new(x.0, x.2.clone()),
                        &Cochain::new(y.0, y.2.clone()),
                        &Cochain::new(z.0, z.2.clone()),
                        None,
                    )?;
                    if p.nonvanishing {
                        let name = |(k, c, _): &(usize, usize, Vec<Cq>)| (*k, class_label(a, &coh, *k, *c));
                        return Ok(Some(MasseyWitness {
                            classes: vec![name(x), name(y), name(z)],
                            degree: deg,
                            value: a.format(deg, &p.representative.v),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn class_label(a: &Cdga, coh: &Cohomology, k: usize, c: usize) -> String {
    format!("[{}]", a.format(k, &coh.rep_of(k, &unit_vec(coh.betti_at(k), c))))
}

/// Probes `s`-formality of the target of a partial minimal model.
///
/// A Massey witness in the target proves nonformality. Otherwise splittings `V^i = C^i ⊕ N^i`
/// for `i ≤ s` are tried, with `N^i` spanned by the killing generators shifted by closed
/// generators with coefficients in `{-1, 0, 1}`, and each is tested for: every closed element
/// of the ideal generated by `N^{≤s}` is exact. Exactness is decided through `ρ`, which is a
/// quasi-isomorphism onto the target. A failed search is reported as inconclusive.
pub fn s_formality_probe(pm: &PartialMinimalModel, s: usize, dimension: Option<usize>) -> Result<FormalityReport> {
    if s > pm.through {
        return Err(Error::Invalid(format!("the model is only built through degree {}", pm.through)));
    }
    let a = &pm.target;
    let dimension = dimension.or_else(|| (!a.is_truncated() && a.is_poincare_duality()).then(|| a.top()));
    if let Some(witness) = massey_witness(a)? {
        return Ok(FormalityReport {
            s,
            dimension,
            verdict: FormalityVerdict::Nonformal { witness },
            splittings_tried: 0,
            checked_through: None,
        });
    }
    let check_top = match dimension {
        Some(n) if !a.is_truncated() || n < a.known_top() => n,
        Some(_) | None if a.is_truncated() => {
            return Ok(FormalityReport {
                s,
                dimension,
                verdict: FormalityVerdict::Inconclusive {
                    reason: "the target is truncated below the degrees that need checking".into(),
                },
                splittings_tried: 0,
                checked_through: None,
            })
        }
        _ => a.top(),
    };
    let (mat, rho) = pm.materialize(check_top + 1)?;
    let ha = a.cohomology();
    let gens = pm.extension.generators();
    let in_range = |j: usize| gens[j].degree <= s;
    let killing: Vec<usize> = (0..gens.len()).filter(|&j| in_range(j) && pm.kinds[j] == GeneratorKind::Killing).collect();
    let closed_of = |deg: usize| -> Vec<usize> {
        (0..gens.len()).filter(|&j| gens[j].degree == deg && pm.kinds[j] == GeneratorKind::Closed).collect()
    };
    let shifts: Vec<Vec<usize>> = killing.iter().map(|&j| closed_of(gens[j].degree)).collect();
    let slots: usize = shifts.iter().map(|v| v.len()).sum();
    let total = 3usize.checked_pow(slots as u32).unwrap_or(usize::MAX).min(SPLITTING_LIMIT);
    let gen_vec = |j: usize| mat.coords(gens[j].degree, &gen_elem(j)).expect("generators are materialized");
    let mut tried = 0;
    for code in 0..total {
        tried += 1;
        let mut digits = code;
        let ideal_gens: Vec<(usize, Vec<Cq>)> = killing
            .iter()
            .zip(&shifts)
            .map(|(&j, zs)| {
                let mut v = gen_vec(j);
                for &z in zs {
                    let c = match digits % 3 {
                        0 => Cq::zero(),
                        1 => Cq::one(),
                        _ => -Cq::one(),
                    };
                    digits /= 3;
                    add_scaled(&mut v, &gen_vec(z), &c);
                }
                (gens[j].degree, v)
            })
            .collect();
        if ideal_condition(&mat, &ha, &rho.matrices, &ideal_gens, check_top)? {
            let verdict = match dimension {
                Some(n) if 2 * (s + 1) >= n => FormalityVerdict::FormalCertified { s, dimension: n },
                _ => FormalityVerdict::SFormal { s },
            };
            return Ok(FormalityReport { s, dimension, verdict, splittings_tried: tried, checked_through: Some(check_top) });
        }
    }
    Ok(FormalityReport {
        s,
        dimension,
        verdict: FormalityVerdict::Inconclusive { reason: format!("no splitting among {} candidates satisfies the ideal condition", tried) },
        splittings_tried: tried,
        checked_through: Some(check_top),
    })
}

fn gen_elem(j: usize) -> ExtElem {
    let mut m = vec![0u16; j + 1];
    m[j] = 1;
    ExtElem::term((0, 0, m), Cq::one())
}

fn ideal_condition(
    mat: &Materialized,
    ha: &Cohomology,
    rho: &[crate::linalg::Matrix],
    gens: &[(usize, Vec<Cq>)],
    check_top: usize,
) -> Result<bool> {
    let m = &mat.algebra;
    for k in 1..=check_top {
        let ideal = m.ideal_part(gens, k);
        if ideal.dim() == 0 {
            continue;
        }
        let closed = Subspace::span(m.dim_at(k), m.d_out(k).kernel_basis());
        for x in ideal.intersection(&closed)?.basis() {
            if k > ha.top_degree() {
                continue;
            }
            let image = rho[k].mul_vec(x);
            let class = ha.class_coords(k, &image).ok_or_else(|| Error::Invalid("ρ does not map cocycles to cocycles".into()))?;
            if class.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

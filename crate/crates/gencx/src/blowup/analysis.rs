use rayon::prelude::*;
use serde::Serialize;

use super::ring::BlowupRing;
use crate::linalg::{Cq, Field, Matrix, Poly, RatFn, Subspace};
use crate::minimal::Cdga;
use crate::Result;

/// `ε = 1/2, 1/4, …, 1/256`.
pub fn default_samples() -> Vec<Cq> {
    (1..=8).map(|j| Cq::from_frac(1, 1 << j)).collect()
}

/// Matrix of `x ↦ w^m·x` from degree `j` to `j + 2m`.
fn power_map(a: &Cdga, w: &[Cq], j: usize, m: usize) -> Matrix {
    let mut out = Matrix::identity(a.dim_at(j));
    for s in 0..m {
        out = a.left_mult(2, w, j + 2 * s).mul(&out);
    }
    out
}

fn kernel(a: &Cdga, w: &[Cq], j: usize, m: usize) -> Subspace {
    Subspace::span(a.dim_at(j), power_map(a, w, j, m).kernel_basis())
}

/// Whether `w^{top/2 − j}: A^j → A^{top−j}` is an isomorphism for every `j ≤ top/2`.
pub fn has_lefschetz(a: &Cdga, w: &[Cq]) -> bool {
    let half = a.top() / 2;
    (0..=half).all(|j| power_map(a, w, j, half - j).rank() == a.dim_at(j) && a.dim_at(j) == a.dim_at(a.top() - j))
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelKernels {
    pub level: usize,
    /// `dim ker ω̃^{n−i}` over the field of rational functions in `ε`.
    pub generic: usize,
    /// `(ε, dim ker)` for each sample.
    pub samples: Vec<(String, usize)>,
    /// Every sample agrees with the generic value.
    pub stable: bool,
}

/// Kernel dimensions of `ω̃^{n−i}: H^i(X̃) → H^{2n−i}(X̃)`, exactly in `ε` and at the samples.
pub fn blowup_lefschetz(r: &BlowupRing, samples: &[Cq]) -> Vec<LevelKernels> {
    let ring = &r.ring;
    let n = r.embedding.n;
    let eps = RatFn::var(0);
    let lift = |m: &Matrix| m.map(|c| RatFn::from_poly(Poly::constant(c.clone())));
    (0..=n)
        .map(|i| {
            let m = n - i;
            let steps: Vec<(Matrix, Matrix)> = (0..m)
                .map(|s| (ring.left_mult(2, &r.f_omega, i + 2 * s), ring.left_mult(2, &r.a, i + 2 * s)))
                .collect();
            let dim = ring.dim_at(i);
            let mut generic = Matrix::<RatFn>::identity(dim);
            for (f, a) in &steps {
                generic = lift(f).add(&lift(a).scale(&eps)).mul(&generic);
            }
            let generic = dim - generic.rank_symbolic();
            let sampled: Vec<(String, usize)> = samples
                .par_iter()
                .map(|e| {
                    let mut acc = Matrix::identity(dim);
                    for (f, a) in &steps {
                        acc = f.add(&a.scale(e)).mul(&acc);
                    }
                    (e.to_string(), dim - acc.rank())
                })
                .collect();
            let stable = sampled.iter().all(|(_, k)| *k == generic);
            LevelKernels { level: i, generic, samples: sampled, stable }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupConditions {
    /// A class in `ker ω^{n−2d} ⊂ H^{2d}(X)` with nonzero restriction to `M`.
    pub kernel_restricts: Option<String>,
    /// The Thom class lies outside `Im ω^{n−2d}`; equivalent to the previous condition.
    pub thom_outside_image: bool,
    /// For surfaces: `v₁, v₂ ∈ ker ω^{n−1} ⊂ H¹(X)` with `i*(v₁v₂) ≠ 0`.
    pub kernel_pair: Option<(String, String)>,
    /// For surfaces: some `v ∈ ker ω^{n−1}` has `t·v ∉ Im ω^{n−1}`; equivalent to the previous condition.
    pub thom_times_kernel_outside_image: Option<bool>,
    pub ambient_lefschetz: bool,
    pub sub_lefschetz: bool,
}

pub fn blowup_conditions(r: &BlowupRing) -> BlowupConditions {
    let e = &r.embedding;
    let (x, m) = (&e.input.ambient, &e.input.sub);
    let omega = &e.input.omega;
    let (n, d) = (e.n, e.d);
    let ker = kernel(x, omega, 2 * d, n - 2 * d);
    let kernel_restricts = ker
        .basis()
        .iter()
        .find(|v| e.input.restrict(2 * d, v).iter().any(|c| !c.is_zero()))
        .map(|v| x.format(2 * d, v));
    let image = power_map(x, omega, 2 * d, n - 2 * d).image();
    let thom_outside_image = !image.contains(&e.thom);
    let (kernel_pair, thom_times) = if d == 1 {
        let ker1 = kernel(x, omega, 1, n - 1);
        let basis = ker1.basis();
        let mut pair = None;
        'outer: for (s, v1) in basis.iter().enumerate() {
            for v2 in &basis[s + 1..] {
                let prod = x.mul(1, v1, 1, v2);
                if e.input.restrict(2, &prod).iter().any(|c| !c.is_zero()) {
                    pair = Some((x.format(1, v1), x.format(1, v2)));
                    break 'outer;
                }
            }
        }
        let image1 = power_map(x, omega, 1, n - 1).image();
        let outside = basis.iter().any(|v| !image1.contains(&x.mul(2 * e.k, &e.thom, 1, v)));
        (pair, Some(outside))
    } else {
        (None, None)
    };
    BlowupConditions {
        kernel_restricts,
        thom_outside_image,
        kernel_pair,
        thom_times_kernel_outside_image: thom_times,
        ambient_lefschetz: has_lefschetz(x, omega),
        sub_lefschetz: has_lefschetz(m, &e.input.sigma()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "kebab-case")]
pub enum Prediction {
    Equal(usize),
    AtMost(usize),
    None,
}

impl Prediction {
    pub fn holds(&self, value: usize) -> bool {
        match self {
            Prediction::Equal(v) => value == *v,
            Prediction::AtMost(v) => value <= *v,
            Prediction::None => true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    /// `dim ker ω^{n−i}` on `H^i(X)`.
    pub ambient: usize,
    pub kernels: LevelKernels,
    pub prediction: Prediction,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub betti_ambient: Vec<usize>,
    pub betti_sub: Vec<usize>,
    pub betti_blowup: Vec<usize>,
    /// `χ(X̃) = χ(X) + (k − 1)χ(M)`.
    pub euler_additive: bool,
    pub poincare_duality: bool,
    pub conditions: BlowupConditions,
    pub levels: Vec<LevelReport>,
    /// Lefschetz holds on `X̃` for generic small `ε`.
    pub blowup_lefschetz: bool,
}

/// Expected kernel dimension at level `i` from the conditions, before computing it.
pub fn predict(r: &BlowupRing, c: &BlowupConditions, i: usize, ambient: usize) -> Prediction {
    let d = r.embedding.d;
    if i > 2 * d {
        Prediction::Equal(ambient)
    } else if i == 2 * d {
        if c.kernel_restricts.is_some() {
            Prediction::Equal(ambient - 1)
        } else {
            Prediction::Equal(ambient)
        }
    } else if d == 1 && i == 1 {
        if c.kernel_pair.is_some() {
            Prediction::AtMost(ambient.saturating_sub(2))
        } else {
            Prediction::AtMost(ambient)
        }
    } else if c.sub_lefschetz {
        Prediction::AtMost(ambient)
    } else {
        Prediction::None
    }
}

pub fn blowup_report(r: &BlowupRing, samples: &[Cq]) -> Result<BlowupReport> {
    let e = &r.embedding;
    let (x, m) = (&e.input.ambient, &e.input.sub);
    let conditions = blowup_conditions(r);
    let levels: Vec<LevelReport> = blowup_lefschetz(r, samples)
        .into_iter()
        .map(|kernels| {
            let i = kernels.level;
            let ambient = kernel(x, &e.input.omega, i, e.n - i).dim();
            let prediction = predict(r, &conditions, i, ambient);
            let matches = prediction.holds(kernels.generic);
            LevelReport { level: i, ambient, kernels, prediction, matches }
        })
        .collect();
    let betti = |a: &Cdga| a.dims().to_vec();
    let chi = |b: &[usize]| b.iter().enumerate().map(|(j, &v)| if j % 2 == 0 { v as i64 } else { -(v as i64) }).sum::<i64>();
    let (bx, bm, bb) = (betti(x), betti(m), betti(&r.ring));
    Ok(BlowupReport {
        n: e.n,
        d: e.d,
        k: e.k,
        euler_additive: chi(&bb) == chi(&bx) + (e.k as i64 - 1) * chi(&bm),
        poincare_duality: r.ring.is_poincare_duality(),
        blowup_lefschetz: levels.iter().all(|l| l.kernels.generic == 0),
        conditions,
        levels,
        betti_ambient: bx,
        betti_sub: bm,
        betti_blowup: bb,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseySurvival {
    /// `[u] ∉ ([v₁], [v₃])` in `H(X)`.
    pub nontrivial_in_ambient: bool,
    /// `f*[u] ∉ (f*[v₁], f*[v₃])` in `H(X̃)`.
    pub nontrivial_in_blowup: bool,
}

/// Ring-level survival of a triple Massey product of `X` with representative class `u` and outer
/// classes `v₁`, `v₃` (each given as degree and coordinates in `H(X)`).
pub fn massey_survival(r: &BlowupRing, u: (usize, &[Cq]), v1: (usize, &[Cq]), v3: (usize, &[Cq])) -> MasseySurvival {
    let x = &r.embedding.input.ambient;
    let in_x = x.ideal_part(&[(v1.0, v1.1.to_vec()), (v3.0, v3.1.to_vec())], u.0).contains(u.1);
    let pulled = [(v1.0, r.pull_back(v1.0, v1.1)), (v3.0, r.pull_back(v3.0, v3.1))];
    let in_blowup = r.ring.ideal_part(&pulled, u.0).contains(&r.pull_back(u.0, u.1));
    MasseySurvival { nontrivial_in_ambient: !in_x, nontrivial_in_blowup: !in_blowup }
}

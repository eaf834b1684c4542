use serde::Deserialize;

use crate::cohomology::cohomology;
use crate::exterior::Form;
use crate::liealg::{restrict, LieModel};
use crate::linalg::{Cq, Field, Matrix};
use crate::minimal::Cdga;
use crate::{Error, Result};

/// Cohomology data of a symplectic embedding `M^{2d} → X^{2n}`.
#[derive(Clone, Debug)]
pub struct BlowupInput {
    /// `H(X)` with zero differential.
    pub ambient: Cdga,
    /// `H(M)` with zero differential.
    pub sub: Cdga,
    /// `i*: H^j(X) → H^j(M)` for `j = 0..=2d`.
    pub restriction: Vec<Matrix>,
    /// Thom class in `H^{2k}(X)`; derived by duality when absent.
    pub thom: Option<Vec<Cq>>,
    /// Chern classes `c_1, …, c_{k−1}` of the normal bundle, `c_j ∈ H^{2j}(M)`; missing ones are zero.
    pub chern: Vec<Vec<Cq>>,
    /// `[ω] ∈ H²(X)`.
    pub omega: Vec<Cq>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    ambient: serde_json::Value,
    sub: serde_json::Value,
    restriction: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    thom: Option<Vec<String>>,
    #[serde(default)]
    chern: Vec<Vec<String>>,
    omega: Vec<String>,
}

fn coeffs(v: &[String]) -> Result<Vec<Cq>> {
    v.iter().map(|s| s.parse()).collect()
}

impl BlowupInput {
    /// Reads `{"ambient": cdga, "sub": cdga, "restriction": [[[row]]], "omega": [...], "thom"?: [...],
    /// "chern"?: [[...]]}`; `restriction[j]` lists the rows of `i*` in degree `j`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let ambient = Cdga::from_json_value(raw.ambient)?;
        let sub = Cdga::from_json_value(raw.sub)?;
        let restriction = raw
            .restriction
            .iter()
            .enumerate()
            .map(|(j, rows)| {
                if rows.is_empty() {
                    return Ok(Matrix::zeros(0, ambient.dim_at(j)));
                }
                Ok(Matrix::from_rows(rows.iter().map(|r| coeffs(r)).collect::<Result<Vec<_>>>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlowupInput {
            ambient,
            sub,
            restriction,
            thom: raw.thom.as_deref().map(coeffs).transpose()?,
            chern: raw.chern.iter().map(|c| coeffs(c)).collect::<Result<_>>()?,
            omega: coeffs(&raw.omega)?,
        })
    }

    /// Invariant cohomology of a model and of the subgroup spanned by `tangent`, with `i*` given
    /// by restricting representatives. `chern[j−1]` is a closed form representing `c_j`.
    pub fn from_subgroup(model: &LieModel, omega: &Form, tangent: &[Vec<Cq>], chern: &[Form]) -> Result<Self> {
        let sub_model = model.subalgebra(tangent)?;
        let hx = cohomology(model);
        let hm = cohomology(&sub_model);
        let ambient = Cdga::from_ring(&hx)?;
        let sub = Cdga::from_ring(&hm)?;
        let restriction = (0..=sub_model.n())
            .map(|j| {
                let cols = hx
                    .rep_forms(j)
                    .iter()
                    .map(|r| hm.class_of_degree(j, &restrict(tangent, r)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(if cols.is_empty() { Matrix::zeros(sub.dim_at(j), 0) } else { Matrix::from_cols(sub.dim_at(j), &cols) })
            })
            .collect::<Result<Vec<_>>>()?;
        let chern = chern.iter().enumerate().map(|(j, c)| hm.class_of_degree(2 * (j + 1), c)).collect::<Result<_>>()?;
        Ok(BlowupInput { ambient, sub, restriction, thom: None, chern, omega: hx.class_of_degree(2, omega)? })
    }

    pub fn n(&self) -> usize {
        self.ambient.top() / 2
    }

    pub fn d(&self) -> usize {
        self.sub.top() / 2
    }

    /// `i*` in degree `j`, zero above the dimension of `M`.
    pub fn restrict(&self, j: usize, v: &[Cq]) -> Vec<Cq> {
        match self.restriction.get(j) {
            Some(m) if m.rows() > 0 => m.mul_vec(v),
            _ => vec![Cq::zero(); self.sub.dim_at(j)],
        }
    }

    /// `σ = i*ω`.
    pub fn sigma(&self) -> Vec<Cq> {
        self.restrict(2, &self.omega)
    }
}

/// Validated embedding data with the Gysin pushforward.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub input: BlowupInput,
    pub n: usize,
    pub d: usize,
    /// Half the real codimension.
    pub k: usize,
    /// `i_!: H^j(M) → H^{j+2k}(X)`, one matrix per `j`.
    pub pushforward: Vec<Matrix>,
    pub thom: Vec<Cq>,
}

impl Embedding {
    pub fn new(input: BlowupInput) -> Result<Self> {
        let (x, m) = (&input.ambient, &input.sub);
        if x.top() % 2 == 1 || m.top() % 2 == 1 {
            return Err(Error::Invalid("both manifolds must be even-dimensional".into()));
        }
        if !x.is_poincare_duality() || !m.is_poincare_duality() {
            return Err(Error::Invalid("both rings must be Poincaré-duality algebras with zero differential".into()));
        }
        let (n, d) = (input.n(), input.d());
        if d >= n || n - d < 2 {
            return Err(Error::Invalid(format!("codimension {} is below 4", 2 * n.saturating_sub(d))));
        }
        let k = n - d;
        if input.omega.len() != x.dim_at(2) {
            return Err(Error::Dimension("ω must lie in H²(X)".into()));
        }
        for j in 0..=2 * d {
            let r = input.restriction.get(j);
            let ok = match r {
                Some(r) => (r.rows() == m.dim_at(j) || r.rows() == 0 && m.dim_at(j) == 0) && (r.cols() == x.dim_at(j) || r.rows() == 0),
                None => m.dim_at(j) == 0,
            };
            if !ok {
                return Err(Error::Dimension(format!("i* in degree {} has the wrong shape", j)));
            }
        }
        if input.restrict(0, &x.unit()) != m.unit() {
            return Err(Error::Invalid("i* does not preserve the unit".into()));
        }
        for p in 1..=2 * d {
            for q in p..=2 * d - p {
                for a in 0..x.dim_at(p) {
                    for b in 0..x.dim_at(q) {
                        let (u, v) = (x.basis_vec(p, a), x.basis_vec(q, b));
                        let lhs = input.restrict(p + q, &x.mul(p, &u, q, &v));
                        let rhs = m.mul(p, &input.restrict(p, &u), q, &input.restrict(q, &v));
                        if lhs != rhs {
                            return Err(Error::Invalid("i* is not multiplicative".into()));
                        }
                    }
                }
            }
        }
        for (j, c) in input.chern.iter().enumerate() {
            if c.len() != m.dim_at(2 * (j + 1)) {
                return Err(Error::Dimension(format!("c{} must lie in H^{}(M)", j + 1, 2 * (j + 1))));
            }
        }
        // ∫_X i_!(u)·v = ∫_M u·i*v
        let pushforward = (0..=2 * d)
            .map(|j| {
                let target = j + 2 * k;
                let dual = 2 * n - target;
                let cols: Vec<Vec<Cq>> = (0..m.dim_at(j))
                    .map(|a| {
                        let u = m.basis_vec(j, a);
                        let rhs: Vec<Cq> = (0..x.dim_at(dual))
                            .map(|b| m.integrate(2 * d, &m.mul(j, &u, dual, &input.restrict(dual, &x.basis_vec(dual, b)))))
                            .collect();
                        x.pairing(target).transpose().solve(&rhs).expect("the pairing is perfect")
                    })
                    .collect();
                if cols.is_empty() {
                    Matrix::zeros(x.dim_at(target), 0)
                } else {
                    Matrix::from_cols(x.dim_at(target), &cols)
                }
            })
            .collect::<Vec<_>>();
        let thom = pushforward[0].mul_vec(&m.unit());
        if let Some(t) = &input.thom {
            if *t != thom {
                return Err(Error::Invalid("the Thom class does not match the Poincaré dual of M".into()));
            }
        }
        Ok(Embedding { input, n, d, k, pushforward, thom })
    }

    fn chern(&self, j: usize) -> Vec<Cq> {
        self.input.chern.get(j - 1).cloned().unwrap_or_else(|| self.input.sub.zero_vec(2 * j))
    }
}

/// `H(X̃)` on the basis `f*H^j(X) ⊕ ⊕_{1≤l<k} a^l·H^{j−2l}(M)`, with `ω̃ = f*ω + εa`.
#[derive(Clone, Debug)]
pub struct BlowupRing {
    pub embedding: Embedding,
    pub ring: Cdga,
    /// `f*ω` in degree 2.
    pub f_omega: Vec<Cq>,
    /// The exceptional class `a` in degree 2.
    pub a: Vec<Cq>,
}

struct Layout<'a> {
    e: &'a Embedding,
}

impl Layout<'_> {
    fn dim(&self, j: usize) -> usize {
        let (x, m) = (&self.e.input.ambient, &self.e.input.sub);
        x.dim_at(j) + (1..self.e.k).filter(|&l| j >= 2 * l).map(|l| m.dim_at(j - 2 * l)).sum::<usize>()
    }

    /// Offset of the `a^l` block in degree `j`.
    fn offset(&self, j: usize, l: usize) -> usize {
        let (x, m) = (&self.e.input.ambient, &self.e.input.sub);
        x.dim_at(j) + (1..l).filter(|&r| j >= 2 * r).map(|r| m.dim_at(j - 2 * r)).sum::<usize>()
    }

    /// `(l, index)` with `l = 0` for the `f*` part.
    fn decode(&self, j: usize, i: usize) -> (usize, usize) {
        let x = &self.e.input.ambient;
        if i < x.dim_at(j) {
            return (0, i);
        }
        for l in 1..self.e.k {
            if j < 2 * l {
                break;
            }
            let off = self.offset(j, l);
            let size = self.e.input.sub.dim_at(j - 2 * l);
            if i < off + size {
                return (l, i - off);
            }
        }
        unreachable!("index within the degree")
    }

    fn f_star(&self, j: usize, v: &[Cq]) -> Vec<Cq> {
        let mut out = vec![Cq::zero(); self.dim(j)];
        if v.is_empty() {
            return out;
        }
        for (o, c) in out.iter_mut().zip(v) {
            *o = c.clone();
        }
        out
    }

    /// `a^m·u` for `u ∈ H^j(M)`, reduced with `a^k u = −f*(i_! u) − Σ_{1≤l<k} a^l·c_{k−l}u`.
    fn a_power(&self, m: usize, j: usize, u: &[Cq]) -> Vec<Cq> {
        let deg = j + 2 * m;
        let mut out = vec![Cq::zero(); self.dim(deg)];
        if u.is_empty() || u.iter().all(|c| c.is_zero()) || deg > 2 * self.e.n {
            return out;
        }
        let k = self.e.k;
        if m < k {
            let off = self.offset(deg, m);
            for (i, c) in u.iter().enumerate() {
                out[off + i] = c.clone();
            }
            return out;
        }
        let r = m - k;
        let pushed = self.e.pushforward[j].mul_vec(u);
        let top_part = self.promote(r, j + 2 * k, &pushed);
        add_into(&mut out, &top_part, &-Cq::one());
        for l in 1..k {
            let c = self.e.chern(k - l);
            let cu = self.e.input.sub.mul(2 * (k - l), &c, j, u);
            if cu.is_empty() {
                continue;
            }
            let term = self.a_power(r + l, j + 2 * (k - l), &cu);
            add_into(&mut out, &term, &-Cq::one());
        }
        out
    }

    /// `a^r·f*(y)` for `y ∈ H^j(X)`.
    fn promote(&self, r: usize, j: usize, y: &[Cq]) -> Vec<Cq> {
        if r == 0 {
            self.f_star(j, y)
        } else {
            self.a_power(r, j, &self.e.input.restrict(j, y))
        }
    }

    fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<Cq> {
        let (x, m) = (&self.e.input.ambient, &self.e.input.sub);
        let (l1, a) = self.decode(p, i);
        let (l2, b) = self.decode(q, j);
        match (l1, l2) {
            (0, 0) => self.f_star(p + q, &x.mul(p, &x.basis_vec(p, a), q, &x.basis_vec(q, b))),
            (0, l) => {
                let w = m.mul(p, &self.e.input.restrict(p, &x.basis_vec(p, a)), q - 2 * l, &m.basis_vec(q - 2 * l, b));
                self.a_power(l, p + q - 2 * l, &w)
            }
            (l, 0) => {
                let w = m.mul(p - 2 * l, &m.basis_vec(p - 2 * l, a), q, &self.e.input.restrict(q, &x.basis_vec(q, b)));
                self.a_power(l, p + q - 2 * l, &w)
            }
            (l, r) => {
                let w = m.mul(p - 2 * l, &m.basis_vec(p - 2 * l, a), q - 2 * r, &m.basis_vec(q - 2 * r, b));
                self.a_power(l + r, p + q - 2 * l - 2 * r, &w)
            }
        }
    }
}

fn add_into(out: &mut [Cq], v: &[Cq], c: &Cq) {
    for (o, x) in out.iter_mut().zip(v) {
        *o = o.clone() + c.clone() * x.clone();
    }
}

/// Builds `H(X̃)` from the product rules and checks the ring axioms on the result.
pub fn build_blowup_ring(input: BlowupInput) -> Result<BlowupRing> {
    let e = Embedding::new(input)?;
    let lay = Layout { e: &e };
    let top = 2 * e.n;
    let dims: Vec<usize> = (0..=top).map(|j| lay.dim(j)).collect();
    let labels = (0..=top)
        .map(|j| {
            (0..dims[j])
                .map(|i| match lay.decode(j, i) {
                    (0, a) => {
                        let l = &e.input.ambient.labels(j)[a];
                        if l == "1" {
                            l.clone()
                        } else {
                            format!("f*{}", l)
                        }
                    }
                    (l, b) => {
                        let power = if l == 1 { "a".to_string() } else { format!("a^{}", l) };
                        let u = &e.input.sub.labels(j - 2 * l)[b];
                        if u == "1" {
                            power
                        } else {
                            format!("{}·{}", power, u)
                        }
                    }
                })
                .collect()
        })
        .collect();
    let zero_d = dims
        .iter()
        .enumerate()
        .map(|(j, &n)| Matrix::zeros(if j == top { 0 } else { dims[j + 1] }, n))
        .collect();
    let ring = Cdga::build(dims, labels, |p, i, q, j| lay.product(p, i, q, j), zero_d, false)?;
    let f_omega = lay.f_star(2, &e.input.omega);
    let a = lay.a_power(1, 0, &e.input.sub.unit());
    Ok(BlowupRing { ring, f_omega, a, embedding: e })
}

impl BlowupRing {
    /// `f*` of a class of `X`.
    pub fn pull_back(&self, j: usize, v: &[Cq]) -> Vec<Cq> {
        Layout { e: &self.embedding }.f_star(j, v)
    }

    /// `a^l·u` for `u ∈ H^j(M)`.
    pub fn exceptional(&self, l: usize, j: usize, u: &[Cq]) -> Vec<Cq> {
        Layout { e: &self.embedding }.a_power(l, j, u)
    }
}

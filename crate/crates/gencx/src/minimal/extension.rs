use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::cdga::{unit_vec, Cdga};
use crate::linalg::{Cq, Field, Matrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub degree: usize,
    pub label: String,
}

impl Generator {
    pub fn new(degree: usize, label: impl Into<String>) -> Self {
        Generator { degree, label: label.into() }
    }
}

/// Exponent vector over the generators, trailing zeros trimmed.
pub type Monomial = Vec<u16>;

/// Basis key `e_i ⊗ m` with `e_i` the `i`-th basis element of degree `p` in the base.
pub type Key = (usize, usize, Monomial);

/// Element of `A ⊗ ΛV`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtElem(BTreeMap<Key, Cq>);

impl ExtElem {
    pub fn zero() -> Self {
        ExtElem::default()
    }

    pub fn term(key: Key, c: Cq) -> Self {
        let mut e = ExtElem::zero();
        e.add_term(key, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Cq)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, key: Key, c: Cq) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(key.clone()).or_insert_with(Cq::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn add(&mut self, o: &ExtElem, c: &Cq) {
        for (k, v) in &o.0 {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    /// Element of the base, written in degree `p`.
    pub fn from_base(p: usize, v: &[Cq]) -> Self {
        let mut e = ExtElem::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term((p, i, Vec::new()), c.clone());
        }
        e
    }
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn exp(m: &Monomial, a: usize) -> u16 {
    m.get(a).copied().unwrap_or(0)
}

/// `A ⊗ ΛV` with `d v_j ∈ A ⊗ Λ(v_1, …, v_{j−1})`; a Hirsch extension when every
/// `d v_j` lies in `A`, a free (Sullivan) algebra when `A` is the ground field.
#[derive(Clone, Debug)]
pub struct FreeExtension {
    base: Cdga,
    gens: Vec<Generator>,
    dgen: Vec<ExtElem>,
}

impl FreeExtension {
    pub fn new(base: Cdga) -> Self {
        FreeExtension { base, gens: Vec::new(), dgen: Vec::new() }
    }

    pub fn base(&self) -> &Cdga {
        &self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn differential_of(&self, j: usize) -> &ExtElem {
        &self.dgen[j]
    }

    /// Adds a generator with the given differential, which must be a closed element of
    /// degree `deg + 1` in the algebra generated so far.
    pub fn push(&mut self, g: Generator, dv: ExtElem) -> Result<()> {
        if g.degree == 0 {
            return Err(Error::Invalid(format!("generator {} has degree 0", g.label)));
        }
        for (key, _) in dv.terms() {
            if key.2.len() > self.gens.len() {
                return Err(Error::Invalid(format!("d{} involves later generators", g.label)));
            }
            if self.key_degree(key) != g.degree + 1 {
                return Err(Error::Invalid(format!("d{} is not of degree {}", g.label, g.degree + 1)));
            }
        }
        if !self.d(&dv).is_zero() {
            return Err(Error::Invalid(format!("d{} is not closed", g.label)));
        }
        self.gens.push(g);
        self.dgen.push(dv);
        Ok(())
    }

    pub fn mono_degree(&self, m: &Monomial) -> usize {
        m.iter().enumerate().map(|(a, &e)| e as usize * self.gens[a].degree).sum()
    }

    pub fn key_degree(&self, k: &Key) -> usize {
        k.0 + self.mono_degree(&k.2)
    }

    fn odd(&self, a: usize) -> bool {
        self.gens[a].degree % 2 == 1
    }

    /// `m·m'` as a signed canonical monomial, or `None` when an odd generator repeats.
    fn mono_mul(&self, m: &Monomial, n: &Monomial) -> Option<(bool, Monomial)> {
        let len = m.len().max(n.len());
        let mut out = vec![0u16; len];
        let mut swaps = 0usize;
        for b in 0..len {
            let eb = exp(n, b);
            out[b] = exp(m, b) + eb;
            if self.odd(b) {
                if out[b] > 1 {
                    return None;
                }
                if eb == 1 {
                    swaps += (b + 1..m.len()).filter(|&a| self.odd(a) && exp(m, a) == 1).count();
                }
            }
        }
        Some((swaps % 2 == 1, trim(out)))
    }

    pub fn mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let mut out = ExtElem::zero();
        for ((p, i, m), c) in x.terms() {
            for ((q, j, n), c2) in y.terms() {
                if p + q > self.base.top() {
                    continue;
                }
                let Some((neg, mn)) = self.mono_mul(m, n) else { continue };
                let koszul = self.mono_degree(m) * q % 2 == 1;
                let mut coef = c.clone() * c2.clone();
                if neg != koszul {
                    coef = -coef;
                }
                let ab = self.base.mul(*p, &unit_vec(self.base.dims()[*p], *i), *q, &unit_vec(self.base.dims()[*q], *j));
                for (l, v) in ab.into_iter().enumerate() {
                    if !v.is_zero() {
                        out.add_term((p + q, l, mn.clone()), coef.clone() * v);
                    }
                }
            }
        }
        out
    }

    fn mono_elem(m: Monomial) -> ExtElem {
        ExtElem::term((0, 0, trim(m)), Cq::one())
    }

    /// `d` of the pure monomial `1 ⊗ m`, by the Leibniz rule over its canonical factorization.
    fn d_mono(&self, m: &Monomial) -> ExtElem {
        let mut seq = Vec::new();
        for (a, &e) in m.iter().enumerate() {
            for _ in 0..e {
                seq.push(a);
            }
        }
        let mut out = ExtElem::zero();
        let mut sign_deg = 0;
        for t in 0..seq.len() {
            let mut pre = vec![0u16; m.len()];
            for &a in &seq[..t] {
                pre[a] += 1;
            }
            let mut post = vec![0u16; m.len()];
            for &a in &seq[t + 1..] {
                post[a] += 1;
            }
            let term = self.mul(&self.mul(&Self::mono_elem(pre), &self.dgen[seq[t]]), &Self::mono_elem(post));
            let c = if sign_deg % 2 == 1 { -Cq::one() } else { Cq::one() };
            out.add(&term, &c);
            sign_deg += self.gens[seq[t]].degree;
        }
        out
    }

    pub fn d(&self, x: &ExtElem) -> ExtElem {
        let mut out = ExtElem::zero();
        for ((p, i, m), c) in x.terms() {
            let da = self.base.d_of(*p, &unit_vec(self.base.dims()[*p], *i));
            let first = self.mul(&ExtElem::from_base(p + 1, &da), &Self::mono_elem(m.clone()));
            out.add(&first, c);
            if !m.is_empty() {
                let second = self.mul(&ExtElem::term((*p, *i, Vec::new()), Cq::one()), &self.d_mono(m));
                let s = if p % 2 == 1 { -c.clone() } else { c.clone() };
                out.add(&second, &s);
            }
        }
        out
    }

    /// Degree of the whole algebra when it is finite-dimensional.
    pub fn finite_top(&self) -> Option<usize> {
        if self.base.is_truncated() || self.gens.iter().any(|g| g.degree % 2 == 0) {
            return None;
        }
        Some(self.base.top() + self.gens.iter().map(|g| g.degree).sum::<usize>())
    }

    fn monomials(&self, bound: usize) -> Vec<Monomial> {
        fn rec(ext: &FreeExtension, a: usize, cur: &mut Vec<u16>, deg: usize, bound: usize, out: &mut Vec<Monomial>) {
            if a == ext.gens.len() {
                out.push(trim(cur.clone()));
                return;
            }
            let g = ext.gens[a].degree;
            let max = if g % 2 == 1 { 1 } else { (bound - deg) / g };
            for e in 0..=max {
                if deg + e * g > bound {
                    break;
                }
                cur.push(e as u16);
                rec(ext, a + 1, cur, deg + e * g, bound, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, &mut Vec::new(), 0, bound, &mut out);
        out.sort_by(|x, y| self.mono_degree(x).cmp(&self.mono_degree(y)).then_with(|| y.cmp(x)));
        out
    }

    fn mono_label(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (a, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.gens[a].label.clone()),
                _ => parts.push(format!("{}^{}", self.gens[a].label, e)),
            }
        }
        parts.join("·")
    }

    /// The algebra through degree `bound` (all of it when it is finite and fits).
    pub fn materialize(&self, bound: usize) -> Result<Materialized> {
        let finite = self.finite_top().filter(|&t| t <= bound);
        let top = finite.unwrap_or(bound);
        if self.base.is_truncated() && top > self.base.top() {
            return Err(Error::Invalid("the base is not known through the requested degree".into()));
        }
        let monos = self.monomials(top);
        let mut keys: Vec<Vec<Key>> = vec![Vec::new(); top + 1];
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        for m in &monos {
            let md = self.mono_degree(m);
            let ml = self.mono_label(m);
            for p in 0..=self.base.top().min(top - md) {
                for i in 0..self.base.dim_at(p) {
                    keys[p + md].push((p, i, m.clone()));
                    let bl = &self.base.labels(p)[i];
                    labels[p + md].push(match (bl.as_str(), ml.is_empty()) {
                        ("1", false) => ml.clone(),
                        (_, true) => bl.clone(),
                        _ => format!("{}·{}", bl, ml),
                    });
                }
            }
        }
        let index: HashMap<Key, (usize, usize)> = keys
            .iter()
            .enumerate()
            .flat_map(|(k, ks)| ks.iter().enumerate().map(move |(i, key)| (key.clone(), (k, i))))
            .collect();
        let dims: Vec<usize> = keys.iter().map(|v| v.len()).collect();
        let coords = |k: usize, e: &ExtElem| -> Vec<Cq> {
            let mut v = vec![Cq::zero(); dims[k]];
            for (key, c) in e.terms() {
                let (kk, i) = index[key];
                debug_assert_eq!(kk, k);
                v[i] = c.clone();
            }
            v
        };
        let truncated = finite.is_none();
        let mut d = Vec::with_capacity(top + 1);
        for k in 0..=top {
            if k == top {
                d.push(Matrix::zeros(0, dims[k]));
                continue;
            }
            let cols: Vec<Vec<Cq>> = keys[k].iter().map(|key| coords(k + 1, &self.d(&ExtElem::term(key.clone(), Cq::one())))).collect();
            d.push(if cols.is_empty() { Matrix::zeros(dims[k + 1], 0) } else { Matrix::from_cols(dims[k + 1], &cols) });
        }
        let product = |p: usize, i: usize, q: usize, j: usize| -> Vec<Cq> {
            let x = ExtElem::term(keys[p][i].clone(), Cq::one());
            let y = ExtElem::term(keys[q][j].clone(), Cq::one());
            coords(p + q, &self.mul(&x, &y))
        };
        let algebra = Cdga::assemble(dims.clone(), labels, product, d, truncated)?;
        for k in 0..top.saturating_sub(1) {
            if !algebra.d_mat(k + 1).mul(algebra.d_mat(k)).is_zero() {
                return Err(Error::Invalid(format!("d² ≠ 0 in degree {}", k)));
            }
        }
        Ok(Materialized { algebra, keys, index })
    }
}

/// A materialized extension with the correspondence between basis vectors and keys.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub algebra: Cdga,
    keys: Vec<Vec<Key>>,
    index: HashMap<Key, (usize, usize)>,
}

impl Materialized {
    pub fn keys(&self, k: usize) -> &[Key] {
        &self.keys[k]
    }

    pub fn elem(&self, k: usize, v: &[Cq]) -> ExtElem {
        let mut e = ExtElem::zero();
        for (key, c) in self.keys[k].iter().zip(v) {
            e.add_term(key.clone(), c.clone());
        }
        e
    }

    /// Coordinates of a homogeneous element of degree `k`, if it lies in the materialized range.
    pub fn coords(&self, k: usize, e: &ExtElem) -> Option<Vec<Cq>> {
        let mut v = vec![Cq::zero(); self.algebra.dim_at(k)];
        for (key, c) in e.terms() {
            let &(kk, i) = self.index.get(key)?;
            if kk != k {
                return None;
            }
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn position(&self, key: &Key) -> Option<(usize, usize)> {
        self.index.get(key).copied()
    }
}

/// Hirsch extension `A ⊗_d ΛV` with `d(1 ⊗ v) = dv ∈ A`, materialized through `bound`.
pub fn hirsch_extend(a: &Cdga, gens: &[Generator], dv: &[Vec<Cq>], bound: usize) -> Result<Cdga> {
    if gens.len() != dv.len() {
        return Err(Error::Dimension("one differential per generator".into()));
    }
    let mut ext = FreeExtension::new(a.clone());
    for (g, v) in gens.iter().zip(dv) {
        if v.len() != a.dim_at(g.degree + 1) {
            return Err(Error::Dimension(format!("d{} must have degree {}", g.label, g.degree + 1)));
        }
        if g.degree + 1 < a.known_top() && a.d_of(g.degree + 1, v).iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid(format!("d{} is not closed", g.label)));
        }
        ext.push(g.clone(), ExtElem::from_base(g.degree + 1, v))?;
    }
    Ok(ext.materialize(bound)?.algebra)
}

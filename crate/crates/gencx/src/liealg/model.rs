use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exterior::{all_masks, format_form, parse_form, Basis, Form};
use crate::linalg::{Field, Matrix};
use crate::{Error, Result};

/// Lie algebra given by the differentials of a coframe, with an optional closed twist `H`.
///
/// In extended mode the model also declares formal base variables `x_j`, each with a
/// closed generator playing the role of `dx_j`; the differential then also
/// differentiates coefficients.
#[derive(Clone, Debug)]
pub struct LieModel {
    n: usize,
    de: Vec<Form>,
    h: Form,
    vars: Vec<String>,
    coframe: Vec<usize>,
    cache: OnceLock<Vec<Form>>,
}

impl PartialEq for LieModel {
    fn eq(&self, o: &LieModel) -> bool {
        self.n == o.n && self.de == o.de && self.h == o.h && self.vars == o.vars && self.coframe == o.coframe
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    n: usize,
    d: Vec<String>,
    #[serde(default, rename = "H")]
    h: String,
    #[serde(default)]
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    coframe: Vec<usize>,
}

// d(e_m) = Σ_b (−1)^{position of b in m} de_b ∧ e_{m∖b}
fn d_of_mask(de: &[Form], n: usize, m: u32) -> Form {
    let mut out = Form::zero(n);
    let mut bits = m;
    let mut pos = 0;
    while bits != 0 {
        let b = bits.trailing_zeros();
        bits &= bits - 1;
        let t = de[b as usize].wedge(&Form::basis(n, m & !(1 << b)));
        out = if pos % 2 == 0 { out + t } else { out - t };
        pos += 1;
    }
    out
}

impl LieModel {
    /// Builds and validates a model: each `de_k` is a 2-form, `d² = 0` on generators and `dH = 0`.
    pub fn new(de: Vec<Form>, h: Form) -> Result<Self> {
        let n = de.len();
        if n > crate::exterior::MAX_GENERATORS {
            return Err(Error::Dimension(format!("{} generators exceed the supported {}", n, crate::exterior::MAX_GENERATORS)));
        }
        for (k, f) in de.iter().enumerate() {
            if f.n() != n {
                return Err(Error::Dimension(format!("de{} lives on {} generators, expected {}", k + 1, f.n(), n)));
            }
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(Error::Invalid(format!("de{} is not a 2-form", k + 1)));
            }
        }
        if h.n() != n {
            return Err(Error::Dimension(format!("H lives on {} generators, expected {}", h.n(), n)));
        }
        if !h.is_zero() && h.degree() != Some(3) {
            return Err(Error::Invalid("H is not a 3-form".into()));
        }
        let m = LieModel { n, de, h, vars: Vec::new(), coframe: Vec::new(), cache: OnceLock::new() };
        for k in 1..=n {
            if !m.d(&m.de[k - 1]).is_zero() {
                return Err(Error::Jacobi(k));
            }
        }
        if !m.d(&m.h).is_zero() {
            return Err(Error::Invalid("H is not closed".into()));
        }
        Ok(m)
    }

    /// Model with zero differential on `n` generators.
    pub fn abelian(n: usize) -> Self {
        LieModel::new(vec![Form::zero(n); n], Form::zero(n)).expect("abelian model is valid")
    }

    /// Declares formal variables; `coframe[j]` (1-based) is the closed generator standing for `dx_j`.
    pub fn with_vars(mut self, vars: Vec<String>, coframe: Vec<usize>) -> Result<Self> {
        if vars.len() != coframe.len() {
            return Err(Error::Invalid("each variable needs one coframe generator".into()));
        }
        for &g in &coframe {
            if g == 0 || g > self.n {
                return Err(Error::Invalid(format!("coframe generator {} out of range", g)));
            }
            if !self.de[g - 1].is_zero() {
                return Err(Error::Invalid(format!("coframe generator e{} is not closed", g)));
            }
        }
        self.vars = vars;
        self.coframe = coframe;
        Ok(self)
    }

    pub fn with_twist(&self, h: Form) -> Result<Self> {
        let m = LieModel::new(self.de.clone(), h)?;
        m.with_vars(self.vars.clone(), self.coframe.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Differential of generator `e_k` (1-based).
    pub fn de(&self, k: usize) -> &Form {
        &self.de[k - 1]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.de
    }

    pub fn h(&self) -> &Form {
        &self.h
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coframe(&self) -> &[usize] {
        &self.coframe
    }

    pub fn is_abelian(&self) -> bool {
        self.de.iter().all(|f| f.is_zero())
    }

    /// `de_i ∈ Λ²⟨e_1, …, e_{i−1}⟩` for every `i`.
    pub fn is_triangular(&self) -> bool {
        self.de.iter().enumerate().all(|(i, f)| f.terms().all(|(m, _)| *m < (1u32 << i)))
    }

    fn d_mask(&self, m: u32) -> Form {
        if self.n <= 12 {
            let cache = self.cache.get_or_init(|| {
                let mut v = vec![Form::zero(self.n); 1 << self.n];
                for mm in all_masks(self.n) {
                    v[mm as usize] = d_of_mask(&self.de, self.n, mm);
                }
                v
            });
            cache[m as usize].clone()
        } else {
            d_of_mask(&self.de, self.n, m)
        }
    }

    /// Chevalley–Eilenberg differential, extended to coefficients in extended mode.
    pub fn d<F: Field>(&self, a: &Form<F>) -> Form<F> {
        assert_eq!(a.n(), self.n, "generator count mismatch");
        let mut out = Form::zero(self.n);
        for (m, c) in a.terms() {
            out = out + self.d_mask(*m).map(|x| F::from_cq(x.clone()) * c.clone());
            for (j, &g) in self.coframe.iter().enumerate() {
                let p = c.partial(j);
                if !p.is_zero() {
                    let e: Form<F> = Form::gen(self.n, g);
                    out = out + e.wedge(&Form::basis(self.n, *m)).scale(&p);
                }
            }
        }
        out
    }

    /// Twisted differential `d_H = d + H∧`.
    pub fn d_h<F: Field>(&self, a: &Form<F>) -> Form<F> {
        self.d(a) + self.h.lift::<F>().wedge(a)
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` in lexicographic bases.
    pub fn d_matrix(&self, k: usize) -> Matrix {
        Basis::degree(self.n, k).matrix_of(&Basis::degree(self.n, k + 1), |a| self.d(a))
    }

    /// Matrix of `d_H` on the full exterior algebra (basis ordered by degree).
    pub fn d_h_matrix(&self) -> Matrix {
        let b = Basis::full(self.n);
        b.matrix_of(&b, |a| self.d_h(a))
    }

    /// Parses either the tuple shorthand `(0,0,12,…)` or the JSON structure-constant format.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            Self::from_json(t)
        } else {
            Self::from_shorthand(t)
        }
    }

    pub fn from_shorthand(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected a parenthesized tuple, got '{}'", text)))?;
        let mut entries = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for c in inner.chars() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            if c == ',' && depth == 0 {
                entries.push(std::mem::take(&mut cur));
            } else {
                cur.push(c);
            }
        }
        entries.push(cur);
        let n = entries.len();
        let de = entries
            .iter()
            .enumerate()
            .map(|(k, e)| parse_form(e, n).map_err(|err| Error::Parse(format!("entry {}: {}", k + 1, err))))
            .collect::<Result<Vec<_>>>()?;
        LieModel::new(de, Form::zero(n))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ModelJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if j.d.len() != j.n {
            return Err(Error::Parse(format!("{} differentials listed for n = {}", j.d.len(), j.n)));
        }
        let de = j.d.iter().map(|s| parse_form(s, j.n)).collect::<Result<Vec<_>>>()?;
        let h = if j.h.trim().is_empty() { Form::zero(j.n) } else { parse_form(&j.h, j.n)? };
        let coframe = if j.coframe.is_empty() { (1..=j.vars.len()).collect() } else { j.coframe };
        LieModel::new(de, h)?.with_vars(j.vars, coframe)
    }

    pub fn to_json(&self) -> String {
        let j = ModelJson {
            n: self.n,
            d: self.de.iter().map(format_form).collect(),
            h: if self.h.is_zero() { String::new() } else { format_form(&self.h) },
            vars: self.vars.clone(),
            coframe: self.coframe.clone(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Tuple shorthand, e.g. `(0,0,12)`.
    pub fn to_shorthand(&self) -> String {
        let parts: Vec<String> = self.de.iter().map(format_form).collect();
        format!("({})", parts.join(","))
    }

    /// Direct sum of two models (generators of `o` are renumbered after those of `self`).
    pub fn direct_sum(&self, o: &LieModel) -> Result<Self> {
        let n = self.n + o.n;
        let shift = |f: &Form| {
            let mut g = Form::zero(n);
            for (m, c) in f.terms() {
                g.add_term(m << self.n, c.clone());
            }
            g
        };
        let mut de: Vec<Form> = self.de.iter().map(|f| f.extend_to(n)).collect();
        de.extend(o.de.iter().map(shift));
        LieModel::new(de, self.h.extend_to(n) + shift(&o.h))
    }
}


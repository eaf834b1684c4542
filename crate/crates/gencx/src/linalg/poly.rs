use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::{Cq, Field};

/// Exponent vector with trailing zeros trimmed, so that equal monomials compare equal.
pub type Monomial = Vec<u16>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u16], b: &[u16]) -> Monomial {
    let n = a.len().max(b.len());
    let mut out = vec![0u16; n];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    trim(out)
}

fn mono_div(a: &[u16], b: &[u16]) -> Option<Monomial> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (i, e) in b.iter().enumerate() {
        if out[i] < *e {
            return None;
        }
        out[i] -= e;
    }
    Some(trim(out))
}

fn total(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Graded lexicographic order.
fn grlex(a: &[u16], b: &[u16]) -> Ordering {
    match total(a).cmp(&total(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    let n = a.len().max(b.len());
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        match x.cmp(&y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Multivariate polynomial with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Cq>,
}

impl Poly {
    pub fn constant(c: Cq) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The formal variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0u16; i + 1];
        m[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Cq::one());
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cq)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Cq> {
        match self.terms.len() {
            0 => Some(Cq::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Cq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Cq::zero);
        let v = std::mem::take(slot) + c;
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            *self.terms.get_mut(&m).unwrap() = v;
        }
    }

    pub fn scale(&self, c: &Cq) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Cq)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| total(m)).max().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut q = Poly::default();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = mono_div(&m, &lm)?;
            let qc = c / lc.clone();
            let mut t = Poly::default();
            t.add_term(qm, qc);
            rem = rem - &t * d;
            q = q + t;
        }
        Some(q)
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm[var] -= 1;
            out.add_term(trim(nm), c.clone() * Cq::from_int(e as i64));
        }
        out
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Evaluates at a point; missing coordinates are zero.
    pub fn eval(&self, point: &[Cq]) -> Cq {
        let mut acc = Cq::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(Cq::zero);
                t = t * x.pow(e as u32);
            }
            acc = acc + t;
        }
        acc
    }

    /// Univariate Euclidean remainder. Both polynomials must use at most variable 0.
    fn rem_univariate(&self, d: &Poly) -> Poly {
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero divisor");
        let mut r = self.clone();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match mono_div(&m, &dm) {
                Some(qm) => {
                    let mut t = Poly::default();
                    t.add_term(qm, c / dc.clone());
                    r = r - &t * d;
                }
                None => break,
            }
        }
        r
    }

    /// Monic gcd, only for polynomials in at most one variable.
    pub fn gcd_univariate(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_univariate(&b);
            a = b;
            b = r;
        }
        match a.leading().map(|(_, c)| c.clone()) {
            Some(c) => a.scale(&(Cq::one() / c)),
            None => a,
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, o: Poly) -> Poly {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

fn fmt_mono(m: &[u16], names: Option<&[String]>) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        let name = match names.and_then(|ns| ns.get(i)) {
            Some(s) => s.clone(),
            None => format!("x{}", i),
        };
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{}^{}", name, e)),
        }
    }
    parts.join("*")
}

impl Poly {
    fn write(&self, f: &mut impl fmt::Write, names: Option<&[String]>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", fmt_mono(m, names))?;
            } else {
                write!(f, "({})*{}", c, fmt_mono(m, names))?;
            }
        }
        Ok(())
    }

    /// Prints with variable `i` shown as `names[i]`.
    pub fn format_named(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write(&mut s, Some(names)).expect("writing to a string");
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, None)
    }
}

/// Rational function `num / den` in formal variables.
///
/// Equality is decided by cross-multiplication, so no multivariate gcd is needed.
/// Univariate quotients are kept reduced with a monic denominator.
#[derive(Clone, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Cq::one()) }
    }

    pub fn var(i: usize) -> Self {
        RatFn::from_poly(Poly::var(i))
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn { num, den };
        r.normalize();
        r
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::constant(Cq::one());
            return;
        }
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                self.num = self.num.scale(&(Cq::one() / c));
                self.den = Poly::constant(Cq::one());
            }
            return;
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = Poly::constant(Cq::one());
            return;
        }
        if self.num.nvars() <= 1 && self.den.nvars() <= 1 {
            let g = self.num.gcd_univariate(&self.den);
            if g.degree() > 0 {
                self.num = self.num.exact_div(&g).expect("gcd divides");
                self.den = self.den.exact_div(&g).expect("gcd divides");
            }
            let lc = self.den.leading().map(|(_, c)| c.clone()).unwrap();
            if !lc.is_one() {
                let inv = Cq::one() / lc;
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    /// Evaluates at a point, or `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Cq]) -> Option<Cq> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num + o.num, self.den);
        }
        RatFn::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatFn {
    type Output = RatFn;
    fn div(self, o: RatFn) -> RatFn {
        assert!(!o.num.is_zero(), "division by zero");
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

impl RatFn {
    pub fn format_named(&self, names: &[String]) -> String {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            self.num.format_named(names)
        } else {
            format!("({})/({})", self.num.format_named(names), self.den.format_named(names))
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        RatFn::from_poly(Poly::default())
    }
    fn one() -> Self {
        RatFn::from_poly(Poly::constant(Cq::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_cq(c: Cq) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }
    fn conj(&self) -> Self {
        RatFn { num: self.num.conj(), den: self.den.conj() }
    }
    fn partial(&self, var: usize) -> Self {
        let n = &self.num.partial(var) * &self.den - &self.num * &self.den.partial(var);
        RatFn::new(n, &self.den * &self.den)
    }
    fn as_constant(&self) -> Option<Cq> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }
}

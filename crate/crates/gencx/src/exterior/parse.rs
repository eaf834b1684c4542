//! Text notation for forms.
//!
//! A term is `[coeff *] [i] factors`, where a factor is a run of generator indices
//! (`14` is `e1∧e4`, `[10]` is `e10`), a parenthesized sum, or `exp` followed by
//! the factors of its argument. `()` is the unit. Products of factors are wedges.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::clifford::exp_nilpotent;
use super::form::Form;
use crate::linalg::{Cq, Field, RatFn};
use crate::{Error, Result};

struct Parser<F> {
    s: Vec<char>,
    pos: usize,
    n: usize,
    // declared scalar variables, longest name first
    vars: Vec<(Vec<char>, F)>,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<F: Field> Parser<F> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_exp(&self) -> bool {
        self.s[self.pos..].starts_with(&['e', 'x', 'p'])
    }

    fn expr(&mut self) -> Result<Form<F>> {
        let mut acc = Form::zero(self.n);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            if first && matches!(self.peek(), None | Some(')')) && !neg {
                break;
            }
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<BigRational> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let num: String = self.s[start..self.pos].iter().collect();
        let num: BigInt = num.parse().map_err(|_| Error::Parse("bad number".into()))?;
        if self.eat('/') {
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let den: String = self.s[start..self.pos].iter().collect();
            let den: BigInt = den.parse().map_err(|_| Error::Parse("bad denominator".into()))?;
            if den.is_zero() {
                return err("zero denominator");
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    /// Looks ahead for `digits[/digits](*|×)`, which marks a numeric coefficient.
    fn coefficient_ahead(&self) -> bool {
        let mut p = self.pos;
        let digits = |p: &mut usize| {
            let s = *p;
            while matches!(self.s.get(*p), Some(c) if c.is_ascii_digit()) {
                *p += 1;
            }
            *p > s
        };
        if !digits(&mut p) {
            return false;
        }
        if self.s.get(p) == Some(&'/') {
            p += 1;
            if !digits(&mut p) {
                return false;
            }
        }
        matches!(self.s.get(p), Some('*') | Some('×'))
    }

    fn term(&mut self) -> Result<Form<F>> {
        let mut coeff = F::one();
        if self.coefficient_ahead() {
            coeff = F::from_cq(Cq::real(self.number()?));
            self.bump();
        }
        if self.peek() == Some('i') {
            self.pos += 1;
            self.eat('*');
            self.eat('×');
            coeff = coeff * F::from_cq(Cq::i());
        }
        let mut acc: Option<Form<F>> = None;
        while let Some(f) = self.factor()? {
            acc = Some(match acc {
                None => f,
                Some(a) => a.wedge(&f),
            });
        }
        match acc {
            Some(a) => Ok(a.scale(&coeff)),
            None => err(format!("expected a factor at position {}", self.pos)),
        }
    }

    fn factor(&mut self) -> Result<Option<Form<F>>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '[' => {
                let mut f = Form::one(self.n);
                loop {
                    let idx = match self.peek() {
                        Some(c) if c.is_ascii_digit() => {
                            self.pos += 1;
                            c.to_digit(10).unwrap() as usize
                        }
                        Some('[') => {
                            self.pos += 1;
                            let start = self.pos;
                            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                                self.pos += 1;
                            }
                            let s: String = self.s[start..self.pos].iter().collect();
                            if !self.eat(']') {
                                return err("unclosed index bracket");
                            }
                            s.parse().map_err(|_| Error::Parse("bad index".into()))?
                        }
                        _ => break,
                    };
                    if idx == 0 || idx > self.n {
                        return err(format!("generator index {} out of range 1..{}", idx, self.n));
                    }
                    f = f.wedge(&Form::gen(self.n, idx));
                }
                Ok(Some(f))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return err(format!("expected ')' at position {}", self.pos));
                }
                if e.is_zero() && self.s[self.pos - 2] == '(' {
                    return Ok(Some(Form::one(self.n)));
                }
                Ok(Some(e))
            }
            Some('e') if self.at_exp() => {
                self.pos += 3;
                let arg = self.term()?;
                if !arg.coeff(0).is_zero() {
                    return err("exponent must have no scalar part");
                }
                Ok(Some(exp_nilpotent(|x| arg.wedge(x), &Form::one(self.n))?))
            }
            _ => {
                for (name, v) in &self.vars {
                    if self.s[self.pos..].starts_with(name) {
                        self.pos += name.len();
                        return Ok(Some(Form::scalar(self.n, v.clone())));
                    }
                }
                Ok(None)
            }
        }
    }
}

fn run<F: Field>(s: &str, n: usize, vars: Vec<(Vec<char>, F)>) -> Result<Form<F>> {
    let cleaned: Vec<char> = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    if cleaned.is_empty() {
        return err("empty form");
    }
    if cleaned == ['0'] {
        return Ok(Form::zero(n));
    }
    let mut p = Parser { s: cleaned, pos: 0, n, vars };
    let f = p.expr()?;
    if p.pos != p.s.len() {
        return err(format!("unexpected '{}' at position {}", p.s[p.pos], p.pos));
    }
    Ok(f)
}

/// Parses a form on `n` generators.
pub fn parse_form(s: &str, n: usize) -> Result<Form> {
    run(s, n, Vec::new())
}

/// Parses a form whose coefficients may involve the named formal variables.
///
/// Variable names must not start with `i` or `e`, and may not contain digits
/// only.
pub fn parse_form_vars(s: &str, n: usize, vars: &[String]) -> Result<Form<RatFn>> {
    for v in vars {
        if v.is_empty() || v.starts_with('i') || v.starts_with('e') || !v.starts_with(|c: char| c.is_alphabetic()) {
            return err(format!("bad variable name '{}'", v));
        }
    }
    let mut table: Vec<(Vec<char>, RatFn)> =
        vars.iter().enumerate().map(|(j, v)| (v.chars().collect(), RatFn::var(j))).collect();
    table.sort_by_key(|(name, _)| std::cmp::Reverse(name.len()));
    run(s, n, table)
}

fn fmt_index(n: usize, mask: u32) -> String {
    if mask == 0 {
        return "()".into();
    }
    let mut s = String::new();
    for b in 0..n {
        if mask & (1 << b) != 0 {
            let i = b + 1;
            if i <= 9 && n <= 9 {
                s.push_str(&i.to_string());
            } else {
                s.push_str(&format!("[{}]", i));
            }
        }
    }
    s
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints a form with rational-function coefficients, each term as `(c)*idx`.
pub fn format_form_ext(f: &Form<RatFn>) -> String {
    format_ext(f, None)
}

/// Like [`format_form_ext`], printing the variables under the given names.
pub fn format_form_named(f: &Form<RatFn>, names: &[String]) -> String {
    format_ext(f, Some(names))
}

fn format_ext(f: &Form<RatFn>, names: Option<&[String]>) -> String {
    let mut terms: Vec<(u32, &RatFn)> = f.terms().map(|(m, c)| (*m, c)).collect();
    terms.sort_by_key(|(m, _)| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(m, c)| match c.as_constant() {
            Some(k) => format_form(&Form::basis(f.n(), m).scale(&k)),
            None => match names {
                Some(ns) => format!("({})*{}", c.format_named(ns), fmt_index(f.n(), m)),
                None => format!("({})*{}", c, fmt_index(f.n(), m)),
            },
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+").replace("+-", "-")
    }
}

/// Prints a form in the notation accepted by [`parse_form`].
pub fn format_form(f: &Form) -> String {
    let mut terms: Vec<(u32, &Cq)> = f.terms().map(|(m, c)| (*m, c)).collect();
    terms.sort_by_key(|(m, _)| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    let mut out = String::new();
    for (m, c) in terms {
        let idx = fmt_index(f.n(), m);
        for (part, imag) in [(&c.re, false), (&c.im, true)] {
            if part.is_zero() {
                continue;
            }
            let neg = part < &BigRational::zero();
            let mag = if neg { -part.clone() } else { part.clone() };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !mag.is_one() {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
            }
            if imag {
                out.push_str("i*");
            }
            out.push_str(&idx);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

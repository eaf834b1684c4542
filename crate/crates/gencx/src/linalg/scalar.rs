use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field used by every linear-algebra routine.
///
/// Implemented by exact Gaussian rationals ([`Cq`]) and by rational functions
/// in formal variables ([`RatFn`](super::RatFn)).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_cq(c: Cq) -> Self;
    /// Complex conjugation; formal variables are treated as real.
    fn conj(&self) -> Self;
    /// Partial derivative in a formal variable. Constants differentiate to zero.
    fn partial(&self, _var: usize) -> Self {
        Self::zero()
    }
    /// Returns the constant value when the element does not depend on any variable.
    fn as_constant(&self) -> Option<Cq>;

    fn from_int(k: i64) -> Self {
        Self::from_cq(Cq::from_int(k))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Cq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cq { re, im }
    }

    pub fn from_int(k: i64) -> Self {
        Cq { re: BigRational::from_integer(BigInt::from(k)), im: BigRational::zero() }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Cq {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn real(re: BigRational) -> Self {
        Cq { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Cq { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn gauss(re: i64, im: i64) -> Self {
        Cq {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn scale_int(&self, k: &BigInt) -> Cq {
        let k = BigRational::from_integer(k.clone());
        Cq { re: &self.re * &k, im: &self.im * &k }
    }
}

impl Field for Cq {
    fn zero() -> Self {
        Cq::default()
    }
    fn one() -> Self {
        Cq::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_cq(c: Cq) -> Self {
        c
    }
    fn conj(&self) -> Self {
        Cq { re: self.re.clone(), im: -self.im.clone() }
    }
    fn as_constant(&self) -> Option<Cq> {
        Some(self.clone())
    }
}

impl Add for Cq {
    type Output = Cq;
    fn add(self, o: Cq) -> Cq {
        Cq { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cq {
    type Output = Cq;
    fn sub(self, o: Cq) -> Cq {
        Cq { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cq {
    type Output = Cq;
    fn mul(self, o: Cq) -> Cq {
        if self.im.is_zero() && o.im.is_zero() {
            return Cq::real(self.re * o.re);
        }
        Cq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for Cq {
    type Output = Cq;
    fn div(self, o: Cq) -> Cq {
        assert!(!o.is_zero(), "division by zero");
        if o.im.is_zero() {
            return Cq { re: self.re / &o.re, im: self.im / &o.re };
        }
        let n = o.norm_sqr();
        let c = o.conj();
        let p = self * c;
        Cq { re: p.re / &n, im: p.im / &n }
    }
}

impl Neg for Cq {
    type Output = Cq;
    fn neg(self) -> Cq {
        Cq { re: -self.re, im: -self.im }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rat(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let s = im_part(&self.im);
                if self.im.is_positive() {
                    write!(f, "{}+{}", fmt_rat(&self.re), s)
                } else {
                    write!(f, "{}{}", fmt_rat(&self.re), s)
                }
            }
        }
    }
}

fn parse_rat(t: &str) -> Option<BigRational> {
    match t.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}

/// Accepts the printed forms: `3`, `-1/2`, `i`, `2i`, `1/2-3/4i`, `2*i`.
impl FromStr for Cq {
    type Err = crate::Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || crate::Error::Parse(format!("bad scalar '{}'", text));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, c) in s.char_indices() {
            if k > 0 && (c == '+' || c == '-') && !s[..k].ends_with('/') {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut out = Cq::zero();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let (imag, body) = if let Some(b) = body.strip_suffix('i') {
                (true, b.strip_suffix('*').unwrap_or(b))
            } else if let Some(b) = body.strip_prefix("i*") {
                (true, b)
            } else {
                (false, body)
            };
            let r = if imag && body.is_empty() { BigRational::one() } else { parse_rat(body).ok_or_else(bad)? };
            let r = if neg { -r } else { r };
            out = out + if imag { Cq::new(BigRational::zero(), r) } else { Cq::real(r) };
        }
        Ok(out)
    }
}

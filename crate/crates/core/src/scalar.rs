//! Exact elements of a real quadratic field `Q(sqrt(d))`.
//!
//! A [`Scalar`] is `r + s*sqrt(d)` with `r, s` rational and `d` a square-free
//! positive integer. The tag `d = 1` means a plain rational and forces `s = 0`.
//! Rationals mix freely with any tag; two different tags `d > 1` never mix.

use alloc::string::{String, ToString};
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Scalar {
    rational: BigRational,
    surd: BigRational,
    d: u64,
}

/// Returns true when `d` is a positive square-free integer.
pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Combines two extension tags, panicking if they name different fields.
fn join_tags(a: u64, b: u64) -> u64 {
    match try_join_tags(a, b) {
        Ok(d) => d,
        Err(e) => panic!("{}", e),
    }
}

pub fn try_join_tags(a: u64, b: u64) -> Result<u64> {
    if a == b || b == 1 {
        Ok(a)
    } else if a == 1 {
        Ok(b)
    } else {
        Err(Error::ExtensionMismatch(a, b))
    }
}

impl Scalar {
    /// `rational + surd * sqrt(d)`.
    pub fn new(rational: BigRational, surd: BigRational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::InvalidExtension(d));
        }
        if d == 1 && !surd.is_zero() {
            return Err(Error::InvalidExtension(d));
        }
        Ok(Scalar { rational, surd, d })
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { rational: r, surd: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self> {
        if d == 1 {
            return Ok(Self::from_int(1));
        }
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// Extension tag; `1` for plain rationals.
    pub fn tag(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.rational.clone())
        } else {
            None
        }
    }

    /// Galois conjugate `r - s*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Scalar { rational: self.rational.clone(), surd: -self.surd.clone(), d: self.d }
    }

    /// Field norm `r^2 - d*s^2`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.rational * &self.rational - d * &self.surd * &self.surd
    }

    /// Re-tags a rational value into `Q(sqrt(d))`.
    pub fn with_tag(mut self, d: u64) -> Result<Self> {
        let joined = try_join_tags(self.d, d)?;
        self.d = joined;
        Ok(self)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar { rational: c.rational / &n, surd: c.surd / n, d: self.d })
    }

    /// Floating point approximation. Display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.surd.is_zero() {
            return r;
        }
        let s = self.surd.to_f64().unwrap_or(f64::NAN);
        r + s * num_traits::Float::sqrt(self.d as f64)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational && self.surd == other.surd && (self.surd.is_zero() || self.d == other.d)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rational.hash(state);
        self.surd.hash(state);
        if !self.surd.is_zero() {
            self.d.hash(state);
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar { d: join_tags(self.d, rhs.d), rational: &self.rational + &rhs.rational, surd: &self.surd + &rhs.surd }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar { d: join_tags(self.d, rhs.d), rational: &self.rational - &rhs.rational, surd: &self.surd - &rhs.surd }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let d = join_tags(self.d, rhs.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        Scalar {
            rational: &self.rational * &rhs.rational + dd * &self.surd * &rhs.surd,
            surd: &self.rational * &rhs.surd + &self.surd * &rhs.rational,
            d,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rational: -self.rational, surd: -self.surd, d: self.d }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        let coeff = self.surd.abs();
        let surd = if coeff.is_one() {
            alloc::format!("sqrt({})", self.d)
        } else {
            alloc::format!("{}*sqrt({})", fmt_rational(&coeff), self.d)
        };
        let negative = self.surd.is_negative();
        if self.rational.is_zero() {
            if negative {
                write!(f, "-{}", surd)
            } else {
                f.write_str(&surd)
            }
        } else {
            let sign = if negative { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.rational), sign, surd)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(alloc::format!("invalid rational '{}'", s));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(alloc::format!("zero denominator in '{}'", s)));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `sqrt(d)`, `r/s*sqrt(d)` and `p/q+r/s*sqrt(d)`
    /// (either sign between the parts).
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find("sqrt(") else {
            return Ok(Scalar::from_rational(parse_rational(&s)?));
        };
        let bad = || Error::Parse(alloc::format!("invalid quadratic scalar '{}'", input));
        let close = s[pos..].find(')').map(|i| pos + i).ok_or_else(bad)?;
        if close + 1 != s.len() {
            return Err(bad());
        }
        let d: u64 = s[pos + 5..close].parse().map_err(|_| bad())?;
        let head = &s[..pos];
        // split "rational(+|-)coefficient*" at the last sign that starts the surd term
        let split = head
            .char_indices()
            .filter(|&(i, c)| (c == '+' || c == '-') && i > 0 && !head[..i].ends_with('/'))
            .map(|(i, _)| i)
            .next_back();
        let (rat_str, coeff_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let coeff_str = match coeff_str.strip_suffix('*') {
            Some(c) => c,
            None if coeff_str.is_empty() || coeff_str == "+" || coeff_str == "-" => coeff_str,
            None => return Err(bad()),
        };
        let coeff = match coeff_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c)?,
        };
        let rational = if rat_str.is_empty() { BigRational::zero() } else { parse_rational(rat_str)? };
        if d == 1 {
            return Ok(Scalar::from_rational(rational + coeff));
        }
        Scalar::new(rational, coeff, d)
    }
}

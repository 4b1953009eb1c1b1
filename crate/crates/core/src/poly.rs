//! Dense polynomials over `Q` and irreducibility up to degree 4.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Poly {
        let lc = self.leading();
        if lc.is_zero() {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = alloc::vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `(quotient, remainder)`; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lc;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => String::from("x"),
                _ => alloc::format!("x^{}", i),
            };
            if i == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

/// Outcome of the irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Irreducible,
    /// A monic rational factor of degree strictly between 0 and `deg p`.
    Factor(Poly),
}

/// For monic `p` of degree `n` over `Q`, the scale `c` and the monic integer
/// polynomial `q(y) = c^n p(y / c)`; factors of `q` map back via `x = y / c`.
fn integral_transform(p: &Poly) -> (BigInt, Vec<BigInt>) {
    let p = p.monic();
    let n = p.coeffs.len() - 1;
    let c = p.coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let q = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let v = a * BigRational::from_integer(num_traits::pow(c.clone(), n - i));
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    (c, q)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let r = n.sqrt();
    let mut d = BigInt::one();
    while d <= r {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn eval_int(q: &[BigInt], x: &BigInt) -> BigInt {
    q.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Rational roots of `p`, via integer roots of the monic integral transform.
pub fn rational_roots(p: &Poly) -> Vec<BigRational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let (c, q) = integral_transform(p);
    let mut roots = Vec::new();
    if q[0].is_zero() {
        roots.push(BigRational::zero());
    } else {
        for d in divisors(&q[0]) {
            for r in [d.clone(), -d] {
                if eval_int(&q, &r).is_zero() {
                    roots.push(BigRational::new(r, c.clone()));
                }
            }
        }
    }
    roots.sort();
    roots
}

/// A monic quadratic factor of a quartic `p`, if one exists over `Q`.
pub fn quadratic_factor(p: &Poly) -> Option<Poly> {
    if p.degree() != Some(4) {
        return None;
    }
    let (c, q) = integral_transform(p);
    let (q0, q1, q2, q3) = (&q[0], &q[1], &q[2], &q[3]);
    // (y^2 + a y + b)(y^2 + e y + d) with integers by Gauss's lemma
    let cands: Vec<BigInt> = if q0.is_zero() {
        alloc::vec![BigInt::zero()]
    } else {
        divisors(q0).into_iter().flat_map(|d| [d.clone(), -d]).collect()
    };
    for b in cands {
        let d = if b.is_zero() { BigInt::zero() } else { q0 / &b };
        let mut pairs: Vec<(BigInt, BigInt)> = Vec::new();
        if d != b {
            let num = q1 - &b * q3;
            let den = &d - &b;
            if (&num % &den).is_zero() {
                let a = num / den;
                let e = q3 - &a;
                pairs.push((a, e));
            }
        } else if q1 == &(&b * q3) {
            // a + e = q3, a e = q2 - 2b
            let prod: BigInt = q2 - &b * 2;
            let disc: BigInt = q3 * q3 - &prod * 4;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc && (q3 + &s).is_even() {
                    let a: BigInt = (q3 + &s) / 2;
                    let e = q3 - &a;
                    pairs.push((a, e));
                }
            }
        }
        for (a, e) in pairs {
            if &b + &d + &a * &e == *q2 && &a * &d + &b * &e == *q1 {
                // y = c x: y^2 + a y + b -> c^2 (x^2 + (a/c) x + b/c^2)
                let cr = BigRational::from_integer(c.clone());
                let f = Poly::new(alloc::vec![
                    BigRational::from_integer(b) / (&cr * &cr),
                    BigRational::from_integer(a) / &cr,
                    BigRational::one(),
                ]);
                return Some(f);
            }
        }
    }
    None
}

/// Irreducibility over `Q` for degree 1 to 4.
pub fn factor_check(p: &Poly) -> Result<Factorization> {
    let n = match p.degree() {
        Some(n @ 1..=4) => n,
        _ => return Err(Error::NotApplicable(alloc::format!("irreducibility test needs degree 1..=4, got {}", p))),
    };
    if n == 1 {
        return Ok(Factorization::Irreducible);
    }
    if let Some(r) = rational_roots(p).into_iter().next() {
        return Ok(Factorization::Factor(Poly::new(alloc::vec![-r, BigRational::one()])));
    }
    if n == 4 {
        if let Some(f) = quadratic_factor(p) {
            return Ok(Factorization::Factor(f));
        }
    }
    Ok(Factorization::Irreducible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(Poly::from_i64(&[-2, 1]).to_string(), "x - 2");
        assert_eq!(Poly::new(alloc::vec![q(1, 2), q(-3, 1), q(1, 1)]).to_string(), "x^2 - 3*x + 1/2");
        assert_eq!(Poly::from_i64(&[0]).to_string(), "0");
    }

    #[test]
    fn division() {
        let p = Poly::from_i64(&[-1, 0, 1]);
        let (quot, rem) = p.div_rem(&Poly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(quot, Poly::from_i64(&[1, 1]));
        assert!(rem.is_zero());
        assert!(Poly::from_i64(&[1, 1]).divides(&p));
        assert!(!Poly::from_i64(&[1, 0, 1]).divides(&p));
    }

    #[test]
    fn x2_plus_1_irreducible() {
        assert_eq!(factor_check(&Poly::from_i64(&[1, 0, 1])).unwrap(), Factorization::Irreducible);
        assert_eq!(factor_check(&Poly::from_i64(&[2, 0, 1])).unwrap(), Factorization::Irreducible);
    }

    #[test]
    fn rational_root_found() {
        // (2x - 1)(x + 3) / 2 = x^2 + 5/2 x - 3/2
        let p = Poly::new(alloc::vec![q(-3, 2), q(5, 2), q(1, 1)]);
        assert_eq!(rational_roots(&p), alloc::vec![q(-3, 1), q(1, 2)]);
        assert!(matches!(factor_check(&p).unwrap(), Factorization::Factor(_)));
    }

    #[test]
    fn quartic_products_of_quadratics() {
        // (x^2 + 1)(x^2 + 2) = x^4 + 3x^2 + 2
        let p = Poly::from_i64(&[2, 0, 3, 0, 1]);
        assert!(rational_roots(&p).is_empty());
        let f = quadratic_factor(&p).unwrap();
        assert!(f.divides(&p));
        // (x^2 + x + 1)^2 hits the b == d branch
        let s = Poly::from_i64(&[1, 1, 1]);
        let p = s.mul(&s);
        assert_eq!(quadratic_factor(&p), Some(s));
        // (x^2 + 1/2)(x^2 - x + 3): rational coefficients
        let p = Poly::new(alloc::vec![q(1, 2), q(0, 1), q(1, 1)]).mul(&Poly::from_i64(&[3, -1, 1]));
        assert!(quadratic_factor(&p).unwrap().divides(&p));
        // x^4 + 1 and x^4 - 2 are irreducible over Q
        assert_eq!(factor_check(&Poly::from_i64(&[1, 0, 0, 0, 1])).unwrap(), Factorization::Irreducible);
        assert_eq!(factor_check(&Poly::from_i64(&[-2, 0, 0, 0, 1])).unwrap(), Factorization::Irreducible);
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(matches!(factor_check(&Poly::from_i64(&[4, 0, 0, 0, 1])).unwrap(), Factorization::Factor(_)));
    }

    #[test]
    fn degree_outside_range() {
        assert!(factor_check(&Poly::from_i64(&[1])).is_err());
        assert!(factor_check(&Poly::from_i64(&[1, 0, 0, 0, 0, 1])).is_err());
    }
}

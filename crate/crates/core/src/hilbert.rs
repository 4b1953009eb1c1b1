//! Hilbert symbols `(a, b)_v` over `Q`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{}", p),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `|n|` by trial division.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_zero() && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    out
}

/// `p`-adic valuation and unit part of a nonzero integer.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    while !u.is_zero() && (&u % &bp).is_zero() {
        u /= &bp;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol `(u / p)` for odd prime `p` not dividing `u`.
fn legendre(u: &BigInt, p: u64) -> i8 {
    let bp = BigInt::from(p);
    let r = u.mod_floor(&bp).modpow(&BigInt::from((p - 1) / 2), &bp);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// `a = n/d` has the square class of the integer `n d`.
fn square_class_integer(a: &BigRational) -> BigInt {
    a.numer() * a.denom()
}

fn parity(x: &BigInt) -> bool {
    x.is_odd()
}

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution in
/// the completion `Q_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotApplicable("Hilbert symbol of zero".into()));
    }
    let (a, b) = (square_class_integer(a), square_class_integer(b));
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if !is_prime(p) => Err(Error::NotApplicable(alloc::format!("{} is not prime", p))),
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(&a, 2);
            let (beta, v) = split_valuation(&b, 2);
            let eight = BigInt::from(8);
            let (u, v) = (u.mod_floor(&eight), v.mod_floor(&eight));
            let eps = |x: &BigInt| parity(&((x - 1) / 2));
            let omega = |x: &BigInt| parity(&((x * x - 1) / 8));
            let e = (eps(&u) && eps(&v)) ^ (alpha % 2 == 1 && omega(&v)) ^ (beta % 2 == 1 && omega(&u));
            Ok(if e { -1 } else { 1 })
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            Ok(s)
        }
    }
}

/// `inf`, `2`, and every odd prime dividing a numerator or denominator of
/// `a` or `b`: the only places where `(a, b)_v` can be `-1`.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut primes: Vec<u64> = Vec::new();
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_divisors(n).into_iter().filter(|&p| p != 2));
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = alloc::vec![Place::Infinity, Place::Prime(2)];
    out.extend(primes.into_iter().map(Place::Prime));
    out
}

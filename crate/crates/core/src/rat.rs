//! Exact rational scalars. Everything in the engine is computed over
//! arbitrary-precision rationals so that identities check to literal zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q.
pub fn ratq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text encoding: "p" for integers, "p/q" otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" with optional sign.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|e| Error::ParseError {
        path: String::new(),
        message: format!("bad rational {s:?}: {e}"),
    })
}

/// 1/k! as an exact rational.
pub fn inv_factorial(k: u32) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Rat::new(BigInt::one(), f)
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Scales a rational vector to a primitive integer vector: multiplies by the
/// lcm of denominators, divides by the gcd of numerators and makes the first
/// nonzero entry positive. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = scaled.into_iter().map(|x| x / &gcd).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out.into_iter().map(Rat::from_integer).collect()
}

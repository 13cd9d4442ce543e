//! Exact p-adic valuations of rationals.
//!
//! Everything downstream works on the integer exponent `v_p(x)`; the
//! normalized absolute value is `|x|_p = p^(-v_p(x))` and is never
//! materialized as a float inside this module tree.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::Error;
use crate::exact::rational::{is_probable_prime, Rational};

/// Valuation with the `v_p(0) = +infinity` sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinite)
    }
}

/// `v_p` of a nonzero integer magnitude.
fn vp_magnitude(n: &BigUint, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let bp = BigUint::from(p);
    let mut m = n.clone();
    let mut v = 0u64;
    while (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    v
}

/// Exact valuation of an integer.
pub fn vp_int(n: &BigInt, p: u64) -> Val {
    if n.is_zero() {
        Val::Infinite
    } else {
        Val::Finite(vp_magnitude(n.magnitude(), p) as i64)
    }
}

/// Exact valuation of a rational: `v_p(num) - v_p(den)`.
pub fn vp(x: &Rational, p: u64) -> Val {
    match vp_int(x.numer(), p) {
        Val::Infinite => Val::Infinite,
        Val::Finite(vn) => {
            let vd = vp_magnitude(x.denom().magnitude(), p) as i64;
            Val::Finite(vn - vd)
        }
    }
}

/// The normalized p-adic absolute value on Q, exponent-exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicAbs {
    pub prime: u64,
}

impl PadicAbs {
    pub fn new(prime: u64) -> Result<Self, Error> {
        if !is_probable_prime(&BigUint::from(prime)) {
            return Err(Error::InvalidInput(format!("{prime} is not prime")));
        }
        Ok(PadicAbs { prime })
    }

    /// `v_p(x)`; `|x|_p = p^(-v)`.
    pub fn valuation(&self, x: &Rational) -> Val {
        vp(x, self.prime)
    }

    /// `|x|_p > 1`, i.e. `v_p(x) < 0`.
    pub fn is_big(&self, x: &Rational) -> bool {
        matches!(self.valuation(x), Val::Finite(v) if v < 0)
    }

    /// `log |x|_p` in units of `log p`: the integer `-v_p(x)`.
    pub fn log_abs_exponent(&self, x: &Rational) -> Option<i64> {
        self.valuation(x).finite().map(|v| -v)
    }
}

//! Non-archimedean Green's functions in closed form.
//!
//! At a finite place the escape-rate function is piecewise exact in the
//! valuations: for `|a|_p <= 1` it is `log^+ |t|_p` everywhere; for
//! `|a|_p > 1` it equals `d log|a|_p` inside the circle `|t| = |a|^d`,
//! `log|t|_p` outside, and on the circle only the bracket
//! `[0, d log|a|_p]` survives in general. On the circle a short exact
//! orbit iteration decides most points: once some iterate beats `|a|^d`
//! the ultrametric inequality is strict forever and the limit truncates to
//! an exact value; orbits that keep returning below `|a|` certify the
//! perturbation-shaped upper bound `d^-(k-1) log|a|_p` instead.
//!
//! Values are rational multiples of `log p`, kept exact; conversion to a
//! floating interval happens only in [`NonarchGreen::to_green_value`].

use num_bigint::BigInt;
use num_traits::Zero;

use super::valuation::{vp, Val};
use crate::error::Error;
use crate::exact::rational::{is_probable_prime, pow_u32, Rational};
use crate::num::interval::GreenValue;

/// Enclosure of a p-adic Green's function value in units of `log p`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonarchGreen {
    pub prime: u64,
    /// `g = e log p` with `e` in `[exponent_lo, exponent_hi]`.
    pub exponent_lo: Rational,
    pub exponent_hi: Rational,
}

impl NonarchGreen {
    fn exact(prime: u64, e: Rational) -> Self {
        NonarchGreen {
            prime,
            exponent_lo: e.clone(),
            exponent_hi: e,
        }
    }

    /// Zero-width (closed-form) value?
    pub fn is_exact(&self) -> bool {
        self.exponent_lo == self.exponent_hi
    }

    /// Natural-log interval, outward rounded at the f64 edge.
    pub fn to_green_value(&self) -> GreenValue {
        let lnp = (self.prime as f64).ln();
        let scale = |e: &Rational, up: bool| -> f64 {
            if e.is_zero() {
                return 0.0;
            }
            let v = crate::exact::rational::to_f64_approx(e) * lnp;
            let pad = 4.0 * f64::EPSILON * (1.0 + v.abs());
            if up {
                v + pad
            } else {
                v - pad
            }
        };
        GreenValue::new(scale(&self.exponent_lo, false), scale(&self.exponent_hi, true)).clamp_nonneg()
    }
}

/// `g_{a,p}(t)` with exact case analysis; always returns an enclosure, of
/// zero width away from the critical circle `|t|_p = |a|_p^d`.
pub fn green_nonarch(
    a: &Rational,
    d: u32,
    p: u64,
    t: &Rational,
    n_max: u64,
) -> Result<NonarchGreen, Error> {
    if !is_probable_prime(&num_bigint::BigUint::from(p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    assert!(d >= 2);
    let va = vp(a, p);
    let vt = vp(t, p);

    // |a|_p <= 1: g = log^+ |t|_p = max(0, -v_t) log p
    let small_a = match va {
        Val::Infinite => true,
        Val::Finite(v) => v >= 0,
    };
    if small_a {
        let e = match vt {
            Val::Infinite => Rational::zero(),
            Val::Finite(v) => Rational::from(BigInt::from((-v).max(0))),
        };
        return Ok(NonarchGreen::exact(p, e));
    }

    let m = -va.finite().unwrap(); // m > 0, |a|_p = p^m
    let circle = -(d as i64) * m; // v_t on the critical circle
    match vt {
        Val::Finite(v) if v > circle => {
            // |t| < |a|^d: g = d log|a|
            Ok(NonarchGreen::exact(p, Rational::from(BigInt::from(d as i64 * m))))
        }
        Val::Infinite => Ok(NonarchGreen::exact(p, Rational::from(BigInt::from(d as i64 * m)))),
        Val::Finite(v) if v < circle => {
            // |t| > |a|^d: g = log|t|
            Ok(NonarchGreen::exact(p, Rational::from(BigInt::from(-v))))
        }
        Val::Finite(_) => circle_case(a, d, p, t, m, n_max),
    }
}

/// The delicate circle `|t|_p = |a|_p^d`: exact orbit valuations.
fn circle_case(
    a: &Rational,
    d: u32,
    p: u64,
    t: &Rational,
    m: i64,
    n_max: u64,
) -> Result<NonarchGreen, Error> {
    let va = -m;
    let escape_threshold = -(d as i64) * m; // v < this means |z| > |a|^d
    // non-cycling circle orbits double in bit size per step; past ~40 steps
    // the certified bracket is already microscopic, so cap the exact work
    let bit_budget = 1 << 16;
    let n_max = n_max.min(40);

    let mut z = a.clone();
    let mut below_at: u64 = 0; // last k with |z_k| <= |a|
    for k in 1..=n_max {
        z = pow_u32(&z, d) + t;
        match vp(&z, p) {
            // orbit hit 0 exactly; |0| <= |a|, and two steps later the
            // iterate t^d + t escapes through the finite branch below
            Val::Infinite => below_at = k,
            Val::Finite(v) => {
                if v < escape_threshold {
                    // strict dominance from here on: g = d^-(k-1) log|z_k|
                    let e = Rational::new(BigInt::from(-v), BigInt::from(d).pow((k - 1) as u32));
                    return Ok(NonarchGreen::exact(p, e));
                }
                if v >= va {
                    below_at = k;
                }
            }
        }
        if z.numer().bits() + z.denom().bits() > bit_budget {
            break;
        }
    }
    // no escape: certified bracket [0, d^-(k-1) log|a|^... ] from the last
    // step seen at or below |a|; the trivial circle bound d log|a| otherwise
    let hi = if below_at >= 1 {
        Rational::new(BigInt::from(m), BigInt::from(d).pow((below_at - 1) as u32))
    } else {
        Rational::from(BigInt::from(d as i64 * m))
    };
    Ok(NonarchGreen {
        prime: p,
        exponent_lo: Rational::zero(),
        exponent_hi: hi,
    })
}

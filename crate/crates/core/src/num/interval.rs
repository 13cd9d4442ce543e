//! Outward-rounded interval arithmetic.
//!
//! [`RInterval`] is the working type (big-float endpoints, explicit
//! precision); [`GreenValue`] is the reporting type with `f64` endpoints,
//! produced at the very edge with conservative rounding.

use astro_float::{BigFloat, RoundingMode};
use serde::{Deserialize, Serialize};

use super::real::{
    bigfloat_from_rational, bigfloat_to_f64_down, bigfloat_to_f64_up, RealCtx,
};
use crate::exact::rational::Rational;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// Closed real interval `[lo, hi]` with directed-rounded endpoint updates.
#[derive(Debug, Clone)]
pub struct RInterval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl RInterval {
    pub fn point(x: BigFloat) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    pub fn zero(prec: usize) -> Self {
        RInterval::point(BigFloat::from_i8(0, prec))
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        RInterval::point(BigFloat::from_f64(x, prec))
    }

    pub fn from_rational(x: &Rational, prec: usize) -> Self {
        RInterval {
            lo: bigfloat_from_rational(x, prec, DOWN),
            hi: bigfloat_from_rational(x, prec, UP),
        }
    }

    fn assert_ordered(&self) {
        debug_assert!(
            self.lo.cmp(&self.hi).map(|c| c <= 0).unwrap_or(false),
            "inverted interval: {:?}",
            self
        );
    }

    pub fn add(&self, rhs: &RInterval, prec: usize) -> RInterval {
        let r = RInterval {
            lo: self.lo.add(&rhs.lo, prec, DOWN),
            hi: self.hi.add(&rhs.hi, prec, UP),
        };
        r.assert_ordered();
        r
    }

    pub fn sub(&self, rhs: &RInterval, prec: usize) -> RInterval {
        let r = RInterval {
            lo: self.lo.sub(&rhs.hi, prec, DOWN),
            hi: self.hi.sub(&rhs.lo, prec, UP),
        };
        r.assert_ordered();
        r
    }

    pub fn neg(&self) -> RInterval {
        RInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, rhs: &RInterval, prec: usize) -> RInterval {
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let down = a.mul(b, prec, DOWN);
                let up = a.mul(b, prec, UP);
                lo = Some(match lo {
                    None => down,
                    Some(cur) => cur.min(&down),
                });
                hi = Some(match hi {
                    None => up,
                    Some(cur) => cur.max(&up),
                });
            }
        }
        let r = RInterval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        };
        r.assert_ordered();
        r
    }

    /// Interval square (tight at sign changes, unlike `mul(self, self)`).
    pub fn sqr(&self, prec: usize) -> RInterval {
        let lo_sign = self.lo.is_negative();
        let hi_sign = self.hi.is_negative();
        let r = if !lo_sign {
            // all nonnegative
            RInterval {
                lo: self.lo.mul(&self.lo, prec, DOWN),
                hi: self.hi.mul(&self.hi, prec, UP),
            }
        } else if hi_sign {
            // all nonpositive
            RInterval {
                lo: self.hi.mul(&self.hi, prec, DOWN),
                hi: self.lo.mul(&self.lo, prec, UP),
            }
        } else {
            let a = self.lo.mul(&self.lo, prec, UP);
            let b = self.hi.mul(&self.hi, prec, UP);
            RInterval {
                lo: BigFloat::from_i8(0, prec),
                hi: a.max(&b),
            }
        };
        r.assert_ordered();
        r
    }

    /// `x^k` for an interval known to be nonnegative, `k >= 1`.
    pub fn powi_nonneg(&self, k: usize, prec: usize) -> RInterval {
        debug_assert!(!self.lo.is_negative());
        RInterval {
            lo: self.lo.powi(k, prec, DOWN),
            hi: self.hi.powi(k, prec, UP),
        }
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self, prec: usize) -> RInterval {
        debug_assert!(!self.lo.is_negative());
        RInterval {
            lo: self.lo.sqrt(prec, DOWN),
            hi: self.hi.sqrt(prec, UP),
        }
    }

    /// Natural log; requires `lo > 0`.
    pub fn ln(&self, ctx: &mut RealCtx) -> RInterval {
        debug_assert!(self.lo.is_positive());
        RInterval {
            lo: ctx.ln(&self.lo, DOWN),
            hi: ctx.ln(&self.hi, UP),
        }
    }

    /// Divides by an exact positive big float.
    pub fn div_pos(&self, den: &BigFloat, prec: usize) -> RInterval {
        debug_assert!(den.is_positive());
        let r = RInterval {
            lo: self.lo.div(den, prec, DOWN),
            hi: self.hi.div(den, prec, UP),
        };
        r.assert_ordered();
        r
    }

    pub fn width(&self, prec: usize) -> BigFloat {
        self.hi.sub(&self.lo, prec, UP)
    }

    pub fn mid(&self, prec: usize) -> BigFloat {
        let two = BigFloat::from_i8(2, prec);
        self.lo.add(&self.hi, prec, RoundingMode::ToEven).div(&two, prec, RoundingMode::ToEven)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Clamp the lower endpoint at zero (for quantities known nonnegative).
    pub fn clamp_nonneg(mut self, prec: usize) -> RInterval {
        if self.lo.is_negative() {
            self.lo = BigFloat::from_i8(0, prec);
        }
        if self.hi.is_negative() {
            self.hi = BigFloat::from_i8(0, prec);
        }
        self
    }

    pub fn to_green(&self) -> GreenValue {
        GreenValue::new(bigfloat_to_f64_down(&self.lo), bigfloat_to_f64_up(&self.hi))
    }
}

/// Certified enclosure `[lo, hi]` of a Green's function value or local
/// pairing integral, in natural-log units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenValue {
    pub lo: f64,
    pub hi: f64,
}

impl GreenValue {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted GreenValue [{lo}, {hi}]");
        GreenValue { lo, hi }
    }

    pub fn zero() -> Self {
        GreenValue { lo: 0.0, hi: 0.0 }
    }

    pub fn point(v: f64) -> Self {
        GreenValue { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Outward-rounded sum.
    pub fn add(&self, rhs: &GreenValue) -> GreenValue {
        GreenValue {
            lo: (self.lo + rhs.lo).next_down(),
            hi: (self.hi + rhs.hi).next_up(),
        }
    }

    /// Outward-rounded scaling by a nonnegative factor.
    pub fn scale_nonneg(&self, c: f64) -> GreenValue {
        assert!(c >= 0.0);
        GreenValue {
            lo: (self.lo * c).next_down(),
            hi: (self.hi * c).next_up(),
        }
    }

    /// Lower endpoint clamped at zero.
    pub fn clamp_nonneg(mut self) -> GreenValue {
        self.lo = self.lo.max(0.0);
        self.hi = self.hi.max(0.0);
        self
    }

    pub fn intersects(&self, rhs: &GreenValue) -> bool {
        self.lo <= rhs.hi && rhs.lo <= self.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> RInterval {
        RInterval {
            lo: BigFloat::from_f64(lo, 128),
            hi: BigFloat::from_f64(hi, 128),
        }
    }

    #[test]
    fn mul_signs() {
        let a = iv(-2.0, 3.0);
        let b = iv(-5.0, 1.0);
        let c = a.mul(&b, 128);
        let g = c.to_green();
        assert!(g.lo <= -15.0 && g.hi >= 10.0);
        assert!(g.lo >= -15.1 && g.hi <= 10.1);
    }

    #[test]
    fn sqr_with_sign_change() {
        let a = iv(-2.0, 3.0);
        let s = a.sqr(128);
        let g = s.to_green();
        assert_eq!(g.lo, 0.0);
        assert!(g.hi >= 9.0 && g.hi < 9.01);
    }

    #[test]
    fn ln_brackets() {
        let mut ctx = RealCtx::new(128);
        let x = iv(2.0, 2.0).ln(&mut ctx);
        let g = x.to_green();
        assert!(g.lo <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= g.hi);
        assert!(g.width() < 1e-14);
    }

    #[test]
    fn green_sum_outward() {
        let a = GreenValue::new(0.1, 0.2);
        let b = GreenValue::new(0.3, 0.4);
        let c = a.add(&b);
        assert!(c.lo < 0.1 + 0.3 + 1e-15 && c.hi >= 0.2 + 0.4);
        assert!(a.intersects(&GreenValue::new(0.15, 0.5)));
        assert!(!a.intersects(&GreenValue::new(0.25, 0.5)));
    }
}

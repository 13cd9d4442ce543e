//! Conversions and a small evaluation context for `astro_float::BigFloat`.
//!
//! Everything that needs the constants cache (ln, exp) goes through
//! [`RealCtx`]; plain arithmetic uses `BigFloat` methods directly with an
//! explicit precision and rounding mode.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_traits::Zero;

use crate::exact::rational::Rational;

/// Precision and constants-cache bundle for transcendental evaluations.
pub struct RealCtx {
    pub prec: usize,
    cc: Consts,
}

impl RealCtx {
    pub fn new(prec: usize) -> Self {
        RealCtx {
            prec,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn ln(&mut self, x: &BigFloat, rm: RoundingMode) -> BigFloat {
        x.ln(self.prec, rm, &mut self.cc)
    }

    pub fn exp(&mut self, x: &BigFloat, rm: RoundingMode) -> BigFloat {
        x.exp(self.prec, rm, &mut self.cc)
    }

    /// `x^(1/k)` for positive `x`, directed per `rm` (monotone composition).
    pub fn root_k(&mut self, x: &BigFloat, k: u32, rm: RoundingMode) -> BigFloat {
        debug_assert!(x.is_positive());
        let l = self.ln(x, rm);
        let kf = BigFloat::from_u32(k, self.prec);
        let q = l.div(&kf, self.prec, rm);
        self.exp(&q, rm)
    }
}

impl std::fmt::Debug for RealCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RealCtx(prec={})", self.prec)
    }
}

/// Exact conversion of a big integer (no rounding; precision grows with the
/// operand).
pub fn bigfloat_from_bigint(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_i64(0, 64);
    }
    let (sign, digits) = n.to_u64_digits();
    let s = match sign {
        IntSign::Minus => Sign::Neg,
        _ => Sign::Pos,
    };
    let e = (digits.len() * 64) as astro_float::Exponent;
    BigFloat::from_words(&digits, s, e)
}

/// Directed conversion of a rational to precision `prec`.
pub fn bigfloat_from_rational(x: &Rational, prec: usize, rm: RoundingMode) -> BigFloat {
    let n = bigfloat_from_bigint(x.numer());
    let d = bigfloat_from_bigint(x.denom());
    n.div(&d, prec, rm)
}

/// Exact value of a (dyadic) big float as a rational.
pub fn bigfloat_to_rational(x: &BigFloat) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.is_nan() || x.is_inf() {
        return None;
    }
    let (words, n, sign, e, _inexact) = x.as_raw_parts()?;
    debug_assert_eq!(n % 64, 0);
    let mag = BigInt::from_bytes_le(
        IntSign::Plus,
        &words.iter().flat_map(|w| w.to_le_bytes()).collect::<Vec<u8>>(),
    );
    let mag = if sign == Sign::Neg { -mag } else { mag };
    // value = mag / 2^(total bits) * 2^e
    let shift = n as i64 - e as i64;
    let q = if shift >= 0 {
        Rational::new(mag, BigInt::from(1) << shift as usize)
    } else {
        Rational::from(mag << (-shift) as usize)
    };
    Some(q)
}

/// Nearest-ish `f64` (within 2 ulps), saturating to infinities on overflow.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (words, _n, sign, e, _) = x.as_raw_parts().unwrap();
    let top = words.last().copied().unwrap_or(0);
    let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
    // value = (top/2^64 + next/2^128 + ...) * 2^e
    let frac = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(64).powi(2);
    let mag = frac * pow2_f64(e as i64);
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Conservative downward f64 conversion: result <= x.
pub fn bigfloat_to_f64_down(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let v = bigfloat_to_f64(x);
    v.next_down().next_down()
}

/// Conservative upward f64 conversion: result >= x.
pub fn bigfloat_to_f64_up(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let v = bigfloat_to_f64(x);
    v.next_up().next_up()
}

fn pow2_f64(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        2f64.powi(e as i32)
    }
}

/// Convenience: `max(|x|, lim)` on big floats.
pub fn abs_max(x: &BigFloat, lim: &BigFloat) -> BigFloat {
    let a = x.abs();
    if a.cmp(lim).map(|c| c > 0).unwrap_or(false) {
        a
    } else {
        lim.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn bigint_roundtrip() {
        for s in ["0", "1", "-7", "123456789012345678901234567890", "-18446744073709551616"] {
            let n: BigInt = s.parse().unwrap();
            let f = bigfloat_from_bigint(&n);
            let back = bigfloat_to_rational(&f).unwrap();
            assert_eq!(back, Rational::from(n), "roundtrip of {s}");
        }
    }

    #[test]
    fn rational_conversion_brackets() {
        let x = Rational::new(1.into(), 3.into());
        let lo = bigfloat_from_rational(&x, 128, RoundingMode::Down);
        let hi = bigfloat_from_rational(&x, 128, RoundingMode::Up);
        assert!(lo.cmp(&hi).unwrap() < 0);
        let lo_q = bigfloat_to_rational(&lo).unwrap();
        let hi_q = bigfloat_to_rational(&hi).unwrap();
        assert!(lo_q < x && x < hi_q);
        // and the bracket is ~2^-128 wide
        let width = hi_q - lo_q;
        assert!(width < Rational::new(1.into(), BigInt::from(1) << 120));
    }

    #[test]
    fn f64_edges() {
        let f = bigfloat_from_rational(&Rational::new(355.into(), 113.into()), 128, RoundingMode::ToEven);
        let v = bigfloat_to_f64(&f);
        assert!((v - 355.0 / 113.0).abs() < 1e-14);
        assert!(bigfloat_to_f64_down(&f) < v && v < bigfloat_to_f64_up(&f));
        // huge exponents saturate
        let big = BigFloat::from_f64(2.0, 64).powi(100000, 64, RoundingMode::ToEven);
        assert_eq!(bigfloat_to_f64(&big), f64::INFINITY);
    }

    #[test]
    fn ln_exp_directed() {
        let mut ctx = RealCtx::new(128);
        let ten = BigFloat::from_f64(10.0, 128);
        let lo = ctx.ln(&ten, RoundingMode::Down);
        let hi = ctx.ln(&ten, RoundingMode::Up);
        assert!(lo.cmp(&hi).unwrap() < 0);
        let back = ctx.exp(&lo, RoundingMode::Down);
        assert!(back.cmp(&ten).unwrap() < 0);
        let r = ctx.root_k(&BigFloat::from_f64(8.0, 128), 3, RoundingMode::Down);
        assert!((bigfloat_to_f64(&r) - 2.0).abs() < 1e-30);
    }
}

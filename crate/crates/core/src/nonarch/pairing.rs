//! Local pairing `int g_a dmu_b` at a finite place: exact case analysis on
//! the valuations of the two marked points.
//!
//! With `|.| = |.|_p`:
//!
//! - both points in the unit disk: the equilibrium measure is the Gauss
//!   point of the unit disk and `g_a` vanishes on it -- contribution 0;
//! - distinct moduli (or exactly one point outside the unit disk): `g_a` is
//!   constant on the support of `mu_b`, giving exactly
//!   `d log max(|a|, |b|, 1)`;
//! - equal moduli > 1: only a bracket survives. The lower bound
//!   `d^-(2n-2) log|a|` needs the root-separation hypothesis and the least
//!   `n` with `|a^d - b^d| > |d|^(-2(n-1)) / |a|^((d-1)(n-1)-1)`, found by
//!   exact exponent search; the upper bound is the circle value `d log|a|`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::newton::largeness_hypothesis;
use super::valuation::{vp, Val};
use crate::error::Error;
use crate::exact::rational::{is_probable_prime, pow_u32, Rational};
use crate::num::interval::GreenValue;

/// Which branch of the case analysis applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    BothSmall,
    OneBig,
    DistinctBig,
    EqualBig,
}

/// Exact enclosure of the local pairing integral in `log p` units.
#[derive(Debug, Clone, Serialize)]
pub struct LocalPairingCase {
    pub prime: u64,
    pub tag: CaseTag,
    /// Contribution = `e log p`, `e` in `[exponent_lo, exponent_hi]`.
    #[serde(with = "crate::exact::rational::serde_ratio")]
    pub exponent_lo: Rational,
    #[serde(with = "crate::exact::rational::serde_ratio")]
    pub exponent_hi: Rational,
    /// Zero-width enclosure?
    pub exact: bool,
    /// False when the equal-moduli lower bound's hypothesis fails and only
    /// the trivial bracket `[0, d log|a|]` is reported.
    pub lower_bound_available: bool,
    /// The equidistribution depth `n` achieving the lower bound.
    pub n_index: Option<u32>,
}

impl LocalPairingCase {
    pub fn to_green_value(&self) -> GreenValue {
        let lnp = (self.prime as f64).ln();
        let conv = |e: &Rational, up: bool| -> f64 {
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
        GreenValue::new(conv(&self.exponent_lo, false), conv(&self.exponent_hi, true))
            .clamp_nonneg()
    }

    fn exact_value(prime: u64, tag: CaseTag, e: Rational) -> Self {
        LocalPairingCase {
            prime,
            tag,
            exponent_lo: e.clone(),
            exponent_hi: e,
            exact: true,
            lower_bound_available: true,
            n_index: None,
        }
    }
}

/// Case analysis for the local pairing at `p`; requires `a^d != b^d`.
pub fn pairing_nonarch(
    a: &Rational,
    b: &Rational,
    d: u32,
    p: u64,
) -> Result<LocalPairingCase, Error> {
    if !is_probable_prime(&num_bigint::BigUint::from(p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if pow_u32(a, d) == pow_u32(b, d) {
        return Err(Error::SymmetricInputs { d });
    }

    // m = log_p |x|: 0 for the unit disk, -v otherwise
    let log_abs = |x: &Rational| -> i64 {
        match vp(x, p) {
            Val::Infinite => 0,
            Val::Finite(v) => -v,
        }
    };
    let ma = log_abs(a).max(0);
    let mb = log_abs(b).max(0);
    let big_a = log_abs(a) > 0;
    let big_b = log_abs(b) > 0;

    if !big_a && !big_b {
        return Ok(LocalPairingCase::exact_value(p, CaseTag::BothSmall, Rational::zero()));
    }
    if big_a != big_b || ma != mb {
        let tag = if big_a != big_b { CaseTag::OneBig } else { CaseTag::DistinctBig };
        let e = Rational::from(BigInt::from(d as i64 * ma.max(mb)));
        return Ok(LocalPairingCase::exact_value(p, tag, e));
    }

    // equal moduli > 1
    let m = ma;
    let upper = Rational::from(BigInt::from(d as i64 * m));
    if !largeness_hypothesis(a, d, p) {
        // the separation machinery needs |a|_p above |d|_p^(-2/(d-1));
        // below it only the trivial bracket is certified
        return Ok(LocalPairingCase {
            prime: p,
            tag: CaseTag::EqualBig,
            exponent_lo: Rational::zero(),
            exponent_hi: upper,
            exact: false,
            lower_bound_available: false,
            n_index: None,
        });
    }
    let vd = vp(&Rational::from(BigInt::from(d)), p).finite().unwrap();
    let w = match vp(&(pow_u32(a, d) - pow_u32(b, d)), p) {
        Val::Finite(w) => w,
        Val::Infinite => unreachable!("a^d != b^d checked above"),
    };
    // least n >= 1 with -w > 2(n-1) vd - m((d-1)(n-1) - 1)
    let mut found = None;
    for n in 1u32..=1_000_000 {
        let k = (n - 1) as i64;
        let rhs = 2 * k * vd - m * ((d as i64 - 1) * k - 1);
        if -w > rhs {
            found = Some(n);
            break;
        }
    }
    match found {
        Some(n) => {
            let lo = Rational::new(
                BigInt::from(m),
                BigInt::from(d).pow(2 * (n - 1)),
            );
            Ok(LocalPairingCase {
                prime: p,
                tag: CaseTag::EqualBig,
                exponent_lo: lo,
                exponent_hi: upper,
                exact: false,
                lower_bound_available: true,
                n_index: Some(n),
            })
        }
        None => Ok(LocalPairingCase {
            prime: p,
            tag: CaseTag::EqualBig,
            exponent_lo: Rational::zero(),
            exponent_hi: upper,
            exact: false,
            lower_bound_available: false,
            n_index: None,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn both_small_is_zero() {
        let c = pairing_nonarch(&q("2"), &q("3"), 2, 5).unwrap();
        assert_eq!(c.tag, CaseTag::BothSmall);
        assert!(c.exact);
        assert!(c.exponent_hi.is_zero());
    }

    #[test]
    fn one_big_closed_form() {
        // (a=1/3, b=1, d=2, p=3): |a|_3 = 3 > 1 >= |b|_3: exactly 2 log 3
        let c = pairing_nonarch(&q("1/3"), &q("1"), 2, 3).unwrap();
        assert_eq!(c.tag, CaseTag::OneBig);
        assert!(c.exact);
        assert_eq!(c.exponent_lo, q("2"));
    }

    #[test]
    fn distinct_big_closed_form() {
        // |a|_2 = 4, |b|_2 = 2: d log max = 2*2 log 2 -> exponent 4
        let c = pairing_nonarch(&q("1/4"), &q("1/2"), 2, 2).unwrap();
        assert_eq!(c.tag, CaseTag::DistinctBig);
        assert!(c.exact);
        assert_eq!(c.exponent_lo, q("4"));
    }

    #[test]
    fn equal_big_below_hypothesis() {
        // (a=1/2, b=3/2, d=2, p=2): equal moduli 2, but the hypothesis
        // |a|_2 > |2|_2^-2 = 4 fails, so only the trivial bracket is
        // certified.
        let c = pairing_nonarch(&q("1/2"), &q("3/2"), 2, 2).unwrap();
        assert_eq!(c.tag, CaseTag::EqualBig);
        assert!(!c.lower_bound_available);
        assert!(c.exponent_lo.is_zero());
        assert_eq!(c.exponent_hi, q("2"));
    }

    #[test]
    fn equal_big_with_lower_bound() {
        // p = 3 does not divide d = 2, so the hypothesis holds whenever
        // |a|_3 > 1. a = 1/3, b = 2/3: w = v_3(a^2 - b^2) = v_3(-3/9) = -1.
        // n = 1 needs -w > m: 1 > 1 fails; n = 2 needs -w > -m(d-1-1)...
        let c = pairing_nonarch(&q("1/3"), &q("2/3"), 2, 3).unwrap();
        assert_eq!(c.tag, CaseTag::EqualBig);
        assert!(c.lower_bound_available, "{c:?}");
        let n = c.n_index.unwrap();
        assert!(n >= 2);
        // bracket [m / d^(2n-2), d*m]
        assert_eq!(c.exponent_lo, Rational::new(1.into(), BigInt::from(4).pow(n - 1)));
        assert_eq!(c.exponent_hi, q("2"));
    }

    #[test]
    fn symmetric_inputs_rejected() {
        assert!(matches!(
            pairing_nonarch(&q("1/2"), &q("-1/2"), 2, 2),
            Err(Error::SymmetricInputs { .. })
        ));
    }

    #[test]
    fn swap_symmetry_intersects() {
        for (a, b, d, p) in [("1/3", "1", 2u32, 3u64), ("1/2", "3/2", 2, 2), ("1/5", "3/5", 3, 5)] {
            let c1 = pairing_nonarch(&q(a), &q(b), d, p).unwrap();
            let c2 = pairing_nonarch(&q(b), &q(a), d, p).unwrap();
            let g1 = c1.to_green_value();
            let g2 = c2.to_green_value();
            assert!(g1.intersects(&g2), "({a},{b}): {g1:?} vs {g2:?}");
        }
    }
}

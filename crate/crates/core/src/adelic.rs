//! Weil heights over Q, the product formula, and the adelic assembly of the
//! Arakelov-Zhang pairing from its local terms.
//!
//! Heights are computed as exact logarithms of explicit positive rationals
//! and only turned into floating point at the reporting edge, so downstream
//! inequality checks never inherit rounding from this module.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arch::pairing::{pairing_arch, ArchPairing};
use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::rational::{
    factor_magnitude, ln_f64_directed, max_abs_one, pow_u32, Rational,
};
use crate::nonarch::pairing::{pairing_nonarch, LocalPairingCase};
use crate::nonarch::valuation::vp;
use crate::num::interval::GreenValue;

/// A logarithmic Weil height: `value = log(exact)` for an explicit positive
/// rational `exact >= 1`.
#[derive(Debug, Clone, Serialize)]
pub struct HeightValue {
    /// Natural-log value, rounded to nearest.
    pub value: f64,
    /// The exact rational whose log this is.
    #[serde(with = "crate::exact::rational::serde_ratio")]
    pub exact: Rational,
}

impl HeightValue {
    fn from_exact(exact: Rational) -> Self {
        debug_assert!(exact >= Rational::one());
        let value = if exact.is_one() {
            0.0
        } else {
            0.5 * (ln_f64_directed(&exact, false) + ln_f64_directed(&exact, true))
        };
        HeightValue { value, exact }
    }

    /// Directed log endpoints for inequality checks.
    pub fn ln_down(&self) -> f64 {
        if self.exact.is_one() {
            0.0
        } else {
            ln_f64_directed(&self.exact, false)
        }
    }

    pub fn ln_up(&self) -> f64 {
        if self.exact.is_one() {
            0.0
        } else {
            ln_f64_directed(&self.exact, true)
        }
    }
}

/// `h(a, b) = sum_v log max(|a|_v, |b|_v, 1)`, exact as `log` of a rational.
///
/// Only the archimedean place and the primes dividing the denominators can
/// contribute: at every other place both coordinates are integral units.
pub fn weil_height_pair(a: &Rational, b: &Rational) -> HeightValue {
    let mut exact = max_abs_one(a, b);
    for (p, _) in denominator_primes(a, b) {
        let ea = (-vp_or_zero(a, &p)).max(0);
        let eb = (-vp_or_zero(b, &p)).max(0);
        let e = ea.max(eb);
        if e > 0 {
            exact *= Rational::from(BigInt::from(p.clone())).pow(e as i32);
        }
    }
    HeightValue::from_exact(exact)
}

/// `h(p/q) = log max(|p|, q)` in lowest terms.
pub fn weil_height_single(x: &Rational) -> HeightValue {
    let n = x.numer().abs();
    let d = x.denom().clone();
    let exact = Rational::from(if n >= d { n } else { d });
    HeightValue::from_exact(exact)
}

fn vp_or_zero(x: &Rational, p: &BigUint) -> i64 {
    if x.is_zero() {
        return 0;
    }
    let p64 = p.to_u64().expect("prime fits u64");
    vp(x, p64).finite().unwrap_or(0)
}

fn denominator_primes(a: &Rational, b: &Rational) -> Vec<(BigUint, u32)> {
    let den = a.denom().magnitude() * b.denom().magnitude();
    if den.is_one() {
        Vec::new()
    } else {
        factor_magnitude(&den)
    }
}

/// Exact product-formula residual: `prod_v |x|_v - 1`, which must be the
/// zero rational for every nonzero `x`.
pub fn product_formula_check(x: &Rational) -> Result<Rational, Error> {
    if x.is_zero() {
        return Err(Error::InvalidInput("product formula needs x != 0".into()));
    }
    // archimedean |x|, then p^(-v_p) over primes of numerator and denominator
    let mut prod = x.abs();
    let primes: Vec<(BigUint, u32)> = {
        let m = x.numer().magnitude() * x.denom().magnitude();
        if m.is_one() {
            Vec::new()
        } else {
            factor_magnitude(&m)
        }
    };
    for (p, _) in primes {
        let p64 = p.to_u64().ok_or_else(|| {
            Error::InvalidInput("prime factor exceeds u64 in product formula".into())
        })?;
        let v = vp(x, p64).finite().unwrap();
        let pq = Rational::from(BigInt::from(p));
        prod *= pow_i(&pq, -v);
    }
    Ok(prod - Rational::one())
}

fn pow_i(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        pow_u32(x, e as u32)
    } else {
        Rational::one() / pow_u32(x, (-e) as u32)
    }
}

/// The fully assembled global pairing with provenance flags.
#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub a: String,
    pub b: String,
    pub d: u32,
    /// Archimedean term (equidistribution estimator + certified bounds).
    pub arch: ArchPairing,
    /// Local terms at the relevant primes, ascending.
    pub nonarch: Vec<LocalPairingCase>,
    /// Interval sum of all local terms. The width reflects the estimator
    /// interval plus the equal-moduli brackets.
    pub total: GreenValue,
    /// Sum of the certified lower bounds only: a true lower bound for the
    /// pairing regardless of estimator behavior.
    pub certified_lower: f64,
    /// Provenance notes ("arch term is an estimator", ...).
    pub flags: Vec<String>,
}

/// Primes that can carry a nonzero local term or a nontrivial hypothesis:
/// divisors of den(a), den(b), and d. Everywhere else both points are
/// p-adic integers, the equilibrium measure is the unit-disk Gauss mass,
/// and the local integral vanishes identically.
pub fn relevant_primes(a: &Rational, b: &Rational, d: u32) -> Vec<u64> {
    let m = a.denom().magnitude() * b.denom().magnitude() * BigUint::from(d);
    let mut ps: Vec<u64> = factor_magnitude(&m)
        .into_iter()
        .filter_map(|(p, _)| p.to_u64())
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Assembles the global Arakelov-Zhang pairing `<mu_a, mu_b>`.
pub fn pairing_global(
    a: &Rational,
    b: &Rational,
    d: u32,
    cfg: &RunConfig,
) -> Result<PairingReport, Error> {
    if pow_u32(a, d) == pow_u32(b, d) {
        return Err(Error::SymmetricInputs { d });
    }
    let arch = pairing_arch(a, b, d, cfg.n_arch.max(2), cfg)?;
    let mut nonarch = Vec::new();
    for p in relevant_primes(a, b, d) {
        nonarch.push(pairing_nonarch(a, b, d, p)?);
    }

    // The raw average interval encloses the estimator at the computed
    // points; the distance to the limit integral is governed by the
    // equidistribution rate. Widen by a multiple of the Cauchy gap so the
    // reported total behaves like an uncertainty interval for the pairing.
    let slack = 3.0 * arch.cauchy_gap.unwrap_or(0.0) + arch.estimate.width();
    let mut total = GreenValue::new(
        (arch.estimate.lo - slack).max(0.0),
        arch.estimate.hi + slack,
    );
    let mut certified_lower = arch.certified_lower;
    let mut flags = vec![
        "arch term is an equidistribution estimator (total widened by 3x its Cauchy gap)"
            .to_string(),
    ];
    if !arch.certified_from.is_empty() {
        flags.push(format!("arch certified lower bound via {:?}", arch.certified_from));
    }
    for case in &nonarch {
        let gv = case.to_green_value();
        total = total.add(&gv);
        certified_lower += gv.lo;
        if !case.exact {
            flags.push(format!(
                "p = {}: equal-moduli bracket{}",
                case.prime,
                if case.lower_bound_available {
                    ""
                } else {
                    " (separation hypothesis fails; trivial bounds)"
                }
            ));
        }
    }
    // the pairing is nonnegative
    let total = total.clamp_nonneg();
    Ok(PairingReport {
        a: a.to_string(),
        b: b.to_string(),
        d,
        arch,
        nonarch,
        total,
        certified_lower: certified_lower.max(0.0),
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;
    use num_traits::Zero;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn height_pair_examples() {
        // h(0,0) = 0
        assert_eq!(weil_height_pair(&q("0"), &q("0")).exact, q("1"));
        // h(2, 1/3) = log 6: arch log 2, p = 3 contributes log 3
        assert_eq!(weil_height_pair(&q("2"), &q("1/3")).exact, q("6"));
        // h(1/2, 3/2) = log max(1/2,3/2,1) + log 2 = log 3
        assert_eq!(weil_height_pair(&q("1/2"), &q("3/2")).exact, q("3"));
    }

    #[test]
    fn height_single_examples() {
        assert_eq!(weil_height_single(&q("0")).exact, q("1"));
        assert_eq!(weil_height_single(&q("3/2")).exact, q("3"));
        // h(a^d - b^d) for (2, 1/3, 2): h(35/9) = log 35
        let v = pow_u32(&q("2"), 2) - pow_u32(&q("1/3"), 2);
        assert_eq!(v, q("35/9"));
        assert_eq!(weil_height_single(&v).exact, q("35"));
    }

    #[test]
    fn height_pair_dominates_single() {
        for (a, b) in [("2", "1/3"), ("0", "5"), ("-7/2", "7/2"), ("1/6", "6")] {
            let pair = weil_height_pair(&q(a), &q(b));
            let single = weil_height_single(&q(a));
            assert!(pair.exact >= single.exact, "h({a},{b}) < h({a})");
        }
    }

    #[test]
    fn product_formula_exact_zero() {
        for x in ["1", "6/5", "-41", "1073741824/59049", "355/113"] {
            let r = product_formula_check(&q(x)).unwrap();
            assert!(r.is_zero(), "residual for {x}: {r}");
        }
        assert!(product_formula_check(&q("0")).is_err());
    }

    #[test]
    fn relevant_primes_enumeration() {
        assert_eq!(relevant_primes(&q("1/6"), &q("5/2"), 10), vec![2, 3, 5]);
        assert_eq!(relevant_primes(&q("3"), &q("7"), 2), vec![2]);
    }

    #[test]
    fn global_pairing_integer_pair() {
        // (a=100, b=0, d=2): non-arch terms all vanish except the
        // hypothesis-only p = 2 (both small there), so the total is the
        // arch term and the certified bound reaches log 100.
        let cfg = RunConfig::default();
        let r = pairing_global(&q("100"), &q("0"), 2, &cfg).unwrap();
        assert!(r.nonarch.iter().all(|c| c.to_green_value().hi == 0.0));
        assert!(r.certified_lower >= 100f64.ln() - 1e-9);
        assert!(r.total.lo >= 100f64.ln() - cfg.tol);
    }

    #[test]
    fn global_pairing_with_padic_term() {
        // (a=1/3, b=1, d=2): p = 3 contributes exactly 2 log 3
        let cfg = RunConfig::default();
        let r = pairing_global(&q("1/3"), &q("1"), 2, &cfg).unwrap();
        let p3 = r.nonarch.iter().find(|c| c.prime == 3).unwrap();
        assert!(p3.exact);
        assert_eq!(p3.exponent_lo, q("2"));
        // other primes contribute zero
        for c in &r.nonarch {
            if c.prime != 3 {
                assert!(c.to_green_value().hi == 0.0);
            }
        }
        assert!(r.total.lo >= 0.0);
    }

    #[test]
    fn swap_symmetry() {
        let cfg = RunConfig::default();
        for (a, b) in [("0", "1"), ("1/3", "1"), ("2", "1/2")] {
            let r1 = pairing_global(&q(a), &q(b), 2, &cfg).unwrap();
            let r2 = pairing_global(&q(b), &q(a), 2, &cfg).unwrap();
            assert!(
                r1.total.intersects(&r2.total),
                "({a},{b}): {:?} vs {:?}",
                r1.total,
                r2.total
            );
        }
    }
}

//! Helpers on top of [`num_rational::BigRational`]: parsing, integer powers,
//! and the small integer factorization used for place enumeration.

use crate::error::Error;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let mk_err = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
        let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    } else if let Some(mantissa) = s.find('.').map(|_| s) {
        // Decimal literal: interpret exactly as numerator / 10^k.
        let neg = mantissa.starts_with('-');
        let body = mantissa.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = body.split_once('.').ok_or_else(mk_err)?;
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(mk_err());
        }
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| mk_err())? };
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        let q = Rational::new(n, d);
        Ok(if neg { -q } else { q })
    } else {
        let n: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(Rational::from(n))
    }
}

/// `x^k` for `k >= 0` by repeated squaring.
pub fn pow_u32(x: &Rational, k: u32) -> Rational {
    let mut result = Rational::one();
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// `max{|x|, |y|, 1}` as an exact rational.
pub fn max_abs_one(x: &Rational, y: &Rational) -> Rational {
    let one = Rational::one();
    let ax = x.abs();
    let ay = y.abs();
    let m = if ax >= ay { ax } else { ay };
    if m >= one {
        m
    } else {
        one
    }
}

/// Rounds to the nearest `f64` (good to one ulp; not directed).
pub fn to_f64_approx(x: &Rational) -> f64 {
    // Scale so numerator/denominator both fit comfortably in f64 range.
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 900).max(0);
    let n2 = n >> shift;
    let d2 = d >> shift;
    let nf = n2.to_f64().unwrap_or(f64::NAN);
    let df = d2.to_f64().unwrap_or(f64::NAN);
    if df == 0.0 {
        return if nf >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    nf / df
}

/// Natural log of a positive rational, with the error direction controlled:
/// `ln_f64(x, true)` rounds up, `ln_f64(x, false)` rounds down. The result is
/// conservative by a couple of ulps, which is all the reporting edge needs.
pub fn ln_f64_directed(x: &Rational, up: bool) -> f64 {
    assert!(x.is_positive(), "ln of nonpositive rational");
    // ln(x) = ln(n) - ln(d); ln of a big integer via bits + mantissa.
    let v = ln_bigint(x.numer().magnitude()) - ln_bigint(x.denom().magnitude());
    let pad = 4.0 * f64::EPSILON * (1.0 + v.abs());
    if up {
        v + pad
    } else {
        v - pad
    }
}

fn ln_bigint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Full factorization of a nonzero integer magnitude into `(prime, exponent)`
/// pairs, smallest prime first. Trial division followed by Pollard's rho;
/// intended for the denominators and numerators of user inputs, not for
/// cryptographic sizes.
pub fn factor_magnitude(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero());
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let one = BigUint::one();
    if m == one {
        return out;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        if m == one {
            return out;
        }
    }
    // continue trial division with a wheel up to 1e6
    let mut p = 49u64;
    let steps = [2u64, 4];
    let mut si = 0usize;
    while p <= 1_000_000 {
        let bp = BigUint::from(p);
        if (&bp * &bp) > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += steps[si];
        si ^= 1;
    }
    if m != one {
        let mut stack = vec![m];
        let mut found: Vec<BigUint> = Vec::new();
        while let Some(c) = stack.pop() {
            if is_probable_prime(&c) {
                found.push(c);
                continue;
            }
            let f = pollard_rho(&c);
            stack.push(&c / &f);
            stack.push(f);
        }
        found.sort();
        let mut i = 0;
        while i < found.len() {
            let mut e = 1u32;
            while i + 1 < found.len() && found[i + 1] == found[i] {
                e += 1;
                i += 1;
            }
            out.push((found[i].clone(), e));
            i += 1;
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Deterministic Miller-Rabin for `n < 3.3e24`, probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Serde helper: serialize a rational as its exact decimal-free string.
pub mod serde_ratio {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }
}

/// Primes dividing `n` (magnitude), as `u64`s when they fit.
pub fn prime_divisors_u64(n: &BigUint) -> Vec<u64> {
    factor_magnitude(n)
        .into_iter()
        .filter_map(|(p, _)| p.to_u64())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from(BigInt::from(-7)));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational::new((-3).into(), 2.into()));
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn factorization_small() {
        let f = factor_magnitude(&BigUint::from_u64(1085).unwrap());
        let got: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(5, 1), (7, 1), (31, 1)]);
        let f = factor_magnitude(&BigUint::from_u64(2u64.pow(20) * 3u64.pow(5)).unwrap());
        let got: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(2, 20), (3, 5)]);
    }

    #[test]
    fn ln_directed_brackets() {
        let x = Rational::new(355.into(), 113.into());
        let lo = ln_f64_directed(&x, false);
        let hi = ln_f64_directed(&x, true);
        let truth = (355.0f64 / 113.0).ln();
        assert!(lo <= truth && truth <= hi);
        assert!(hi - lo < 1e-14);
    }

    #[test]
    fn ln_of_huge_rational() {
        let x = Rational::from(BigInt::from(10).pow(40));
        let lo = ln_f64_directed(&x, false);
        assert!((lo - 40.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }
}

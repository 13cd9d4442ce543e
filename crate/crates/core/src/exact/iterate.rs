//! Iterate polynomials of the family `f_t(z) = z^d + t`, computed in the
//! polynomial ring Q[T]: `f_T^n(a)` is the image of the marked point `a`
//! after `n` steps, with the parameter left symbolic.

use super::poly::DensePoly;
use super::rational::Rational;
use crate::error::Error;
use num_traits::One;

/// Degree of `f_T^n(a)` as a polynomial in `T`, i.e. `d^(n-1)`, or an error
/// once it passes `cap`.
pub fn iterate_degree(d: u32, n: u32, cap: u64) -> Result<u64, Error> {
    debug_assert!(d >= 2 && n >= 1);
    let mut deg = 1u64;
    for _ in 1..n {
        deg = deg
            .checked_mul(d as u64)
            .filter(|&v| v <= cap)
            .ok_or(Error::DegreeCapExceeded {
                requested: u64::MAX,
                cap,
            })?;
    }
    if deg > cap {
        return Err(Error::DegreeCapExceeded { requested: deg, cap });
    }
    Ok(deg)
}

/// `f_T^n(a)` for `n >= 1`: monic of degree `d^(n-1)`, built from the
/// recursion `f_T^(n+1)(a) = (f_T^n(a))^d + T` with `f_T^1(a) = a^d + T`.
pub fn iterate_poly(a: &Rational, d: u32, n: u32, degree_cap: u64) -> Result<DensePoly, Error> {
    assert!(d >= 2, "d must be at least 2");
    assert!(n >= 1, "n must be at least 1");
    iterate_degree(d, n, degree_cap)?;
    let mut p = DensePoly::from_coeffs(vec![super::rational::pow_u32(a, d), Rational::one()]);
    for _ in 1..n {
        p = p.pow(d).add(&DensePoly::var());
    }
    Ok(p)
}

/// `f_T^m(a) - f_T^n(a)` for `m > n >= 0`, with the convention
/// `f_T^0(a) := a` (the constant polynomial). Its roots are the parameters
/// at which `a` enters an `(m-n)`-cycle after `n` steps.
pub fn preperiodic_poly(
    a: &Rational,
    d: u32,
    m: u32,
    n: u32,
    degree_cap: u64,
) -> Result<DensePoly, Error> {
    assert!(m > n, "need m > n");
    let pm = iterate_poly(a, d, m, degree_cap)?;
    let pn = if n == 0 {
        DensePoly::constant(a.clone())
    } else {
        iterate_poly(a, d, n, degree_cap)?
    };
    Ok(pm.sub(&pn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;
    use num_traits::One;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn iterate_examples() {
        // f_T(0) = T
        assert_eq!(iterate_poly(&q("0"), 2, 1, 4096).unwrap(), DensePoly::from_i64s(&[0, 1]));
        // f_T^2(0) = T^2 + T
        assert_eq!(iterate_poly(&q("0"), 2, 2, 4096).unwrap(), DensePoly::from_i64s(&[0, 1, 1]));
        // f_T^2(2) = (4 + T)^2 + T = T^2 + 9T + 16
        assert_eq!(iterate_poly(&q("2"), 2, 2, 4096).unwrap(), DensePoly::from_i64s(&[16, 9, 1]));
    }

    #[test]
    fn monic_of_expected_degree() {
        for (a, d, n) in [("1/2", 2u32, 5u32), ("3", 3, 4), ("-2/7", 4, 3)] {
            let p = iterate_poly(&q(a), d, n, 4096).unwrap();
            assert!(p.is_monic());
            assert_eq!(p.deg() as u64, (d as u64).pow(n - 1));
        }
    }

    #[test]
    fn degree_cap_rejects() {
        let err = iterate_poly(&q("0"), 2, 6, 16).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { .. }));
        // boundary: degree 16 == cap 16 is allowed
        assert!(iterate_poly(&q("0"), 2, 5, 16).is_ok());
        // d = 3 blowup guard; the degree check must not itself overflow
        assert!(iterate_poly(&q("1"), 3, 9, 4096).is_err());
        assert!(iterate_poly(&q("1"), 3, 64, 4096).is_err());
    }

    #[test]
    fn preperiodic_examples() {
        // (a=0, d=2, m=2, n=1): (T^2 + T) - T = T^2
        assert_eq!(
            preperiodic_poly(&q("0"), 2, 2, 1, 4096).unwrap(),
            DensePoly::from_i64s(&[0, 0, 1])
        );
        // (a=1, d=2, m=1, n=0): (1 + T) - 1 = T
        assert_eq!(
            preperiodic_poly(&q("1"), 2, 1, 0, 4096).unwrap(),
            DensePoly::from_i64s(&[0, 1])
        );
        // (a=0, d=2, m=3, n=1): T^4 + 2T^3 + T^2
        assert_eq!(
            preperiodic_poly(&q("0"), 2, 3, 1, 4096).unwrap(),
            DensePoly::from_i64s(&[0, 0, 1, 2, 1])
        );
    }

    #[test]
    fn evaluation_matches_direct_orbit() {
        // Evaluating f_T^n(a) at t must equal the n-fold iteration of
        // z -> z^d + t starting from a, exactly.
        let cases = [("2/3", 2u32, 4u32, "-5/7"), ("-1/2", 3, 3, "9/4"), ("5", 2, 5, "1/3")];
        for (a, d, n, t) in cases {
            let a = q(a);
            let t = q(t);
            let p = iterate_poly(&a, d, n, 4096).unwrap();
            let mut z = a.clone();
            for _ in 0..n {
                z = crate::exact::rational::pow_u32(&z, d) + &t;
            }
            assert_eq!(p.eval(&t), z);
        }
    }

    #[test]
    fn one_is_one() {
        // deg(f_T^1) = 1 for every d
        for d in 2..6 {
            let p = iterate_poly(&Rational::one(), d, 1, 16).unwrap();
            assert_eq!(p.deg(), 1);
        }
    }
}

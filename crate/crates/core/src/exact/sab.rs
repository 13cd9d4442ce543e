//! Bounded search for parameters at which two marked points are
//! simultaneously preperiodic.
//!
//! For marked points `a, b` and an index bound `M`, the parameters making `a`
//! preperiodic with indices `m > n` in `[0, M]` are the roots of
//! `f_T^m(a) - f_T^n(a)`. The searcher intersects the two root loci through
//! exact polynomial gcds, pair by pair, so the worked degrees stay near the
//! final gcd's degree instead of the full products'.

use super::factor::factor_squarefree_monic;
use super::iterate::preperiodic_poly;
use super::poly::DensePoly;
use super::rational::{pow_u32, Rational};
use crate::error::Error;
use std::collections::HashMap;

/// Exact lower-bound description of the simultaneous-preperiodicity locus
/// found within an index bound.
#[derive(Debug, Clone)]
pub struct PreperiodicParameterSet {
    /// Monic irreducible factors over Q, pairwise coprime, multiplicity-free.
    pub factors: Vec<DensePoly>,
    /// The index bound `M` of the search.
    pub index_bound: u32,
    /// Sum of factor degrees: the number of distinct parameters found, a
    /// lower bound for the full locus.
    pub total_count: usize,
}

/// Runs the bounded search: intersects the `a`-preperiodicity and
/// `b`-preperiodicity root loci over all index pairs `0 <= n < m <= M`.
///
/// Requires `a^d != b^d` (otherwise the locus is all of C) and `M >= 1`.
pub fn find_common_preperiodic(
    a: &Rational,
    b: &Rational,
    d: u32,
    index_bound: u32,
    degree_cap: u64,
) -> Result<PreperiodicParameterSet, Error> {
    if pow_u32(a, d) == pow_u32(b, d) {
        return Err(Error::SymmetricInputs { d });
    }
    if index_bound < 1 {
        return Err(Error::InvalidInput("index bound M must be at least 1".into()));
    }

    let polys_a = preperiodic_family(a, d, index_bound, degree_cap)?;
    let polys_b = preperiodic_family(b, d, index_bound, degree_cap)?;

    // gcd(sf(prod A_i), sf(prod B_j)) = sf(prod gcd(A_i, B_j)); taking the
    // gcds pairwise never materializes the big products.
    let mut common = DensePoly::one();
    for pa in &polys_a {
        for pb in &polys_b {
            let g = pa.gcd(pb);
            if g.deg() > 0 {
                common = common.mul(&g);
            }
        }
    }
    let common = if common.deg() > 0 {
        common.squarefree_part()
    } else {
        common
    };

    let factors = if common.deg() > 0 {
        factor_squarefree_monic(&common)
    } else {
        Vec::new()
    };
    let total_count = factors.iter().map(DensePoly::deg).sum();
    Ok(PreperiodicParameterSet {
        factors,
        index_bound,
        total_count,
    })
}

/// All `f_T^m(x) - f_T^n(x)` for `0 <= n < m <= M`, squarefree parts only.
fn preperiodic_family(
    x: &Rational,
    d: u32,
    index_bound: u32,
    degree_cap: u64,
) -> Result<Vec<DensePoly>, Error> {
    let mut out = Vec::new();
    for m in 1..=index_bound {
        for n in 0..m {
            let p = preperiodic_poly(x, d, m, n, degree_cap)?;
            if p.is_zero() {
                continue;
            }
            if p.deg() == 0 {
                continue;
            }
            out.push(p.squarefree_part());
        }
    }
    Ok(out)
}

/// Outcome of exact forward iteration of a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStatus {
    /// The orbit entered a cycle: `(tail, period)`.
    Preperiodic { tail: u32, period: u32 },
    /// The orbit left every bound a preperiodic orbit could satisfy.
    Escapes { at_step: u32 },
    /// Budget exhausted without a decision.
    Unresolved,
}

/// Iterates `z -> z^d + t` from `x` exactly and reports whether the orbit is
/// finite. Escape is declared through the uniform orbit bound `8 max(|x|,4)`
/// together with the parameter-space bound `|t| <= 4^d max(|x|,4)^d`; both
/// are necessary conditions for boundedness, so crossing either certifies
/// escape.
///
/// Preperiodic orbits revisit a finite set, so their bit sizes stay bounded;
/// any orbit whose exact representation outgrows a generous budget is
/// reported `Unresolved` instead of being ground through ever-doubling
/// big-integer squarings.
pub fn orbit_status(x: &Rational, t: &Rational, d: u32, max_steps: u32) -> OrbitStatus {
    use num_traits::Signed;
    let four = Rational::from(num_bigint::BigInt::from(4));
    let max_x4 = {
        let ax = x.abs();
        if ax > four {
            ax
        } else {
            four.clone()
        }
    };
    let orbit_bound = Rational::from(num_bigint::BigInt::from(8)) * &max_x4;
    let param_bound = pow_u32(&(four * &max_x4), d);
    if t.abs() > param_bound {
        return OrbitStatus::Escapes { at_step: 0 };
    }
    let bit_budget = 8192 + 4 * (t.numer().bits() + t.denom().bits() + x.numer().bits() + x.denom().bits());

    let mut seen: HashMap<Rational, u32> = HashMap::new();
    let mut z = x.clone();
    seen.insert(z.clone(), 0);
    for step in 1..=max_steps {
        z = pow_u32(&z, d) + t;
        if z.abs() > orbit_bound {
            return OrbitStatus::Escapes { at_step: step };
        }
        if z.numer().bits() + z.denom().bits() > bit_budget {
            return OrbitStatus::Unresolved;
        }
        if let Some(&first) = seen.get(&z) {
            return OrbitStatus::Preperiodic {
                tail: first,
                period: step - first,
            };
        }
        seen.insert(z.clone(), step);
    }
    OrbitStatus::Unresolved
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn lin(r: i64) -> DensePoly {
        // T - r
        DensePoly::from_i64s(&[-r, 1])
    }

    #[test]
    fn zannier_pair_m1() {
        let s = find_common_preperiodic(&q("0"), &q("1"), 2, 1, 4096).unwrap();
        assert_eq!(s.total_count, 1);
        assert_eq!(s.factors, vec![DensePoly::from_i64s(&[0, 1])]); // t = 0
    }

    #[test]
    fn zannier_pair_m3() {
        let s = find_common_preperiodic(&q("0"), &q("1"), 2, 3, 4096).unwrap();
        assert_eq!(s.total_count, 3);
        assert!(s.factors.contains(&lin(0)));
        assert!(s.factors.contains(&lin(-1)));
        assert!(s.factors.contains(&lin(-2)));
    }

    #[test]
    fn symmetric_inputs_rejected() {
        let err = find_common_preperiodic(&q("1"), &q("-1"), 2, 2, 4096).unwrap_err();
        assert_eq!(err, Error::SymmetricInputs { d: 2 });
    }

    #[test]
    fn monotone_in_index_bound() {
        let mut last = 0;
        for m in 1..=4 {
            let s = find_common_preperiodic(&q("0"), &q("1"), 2, m, 4096).unwrap();
            assert!(s.total_count >= last, "M={m}: {} < {last}", s.total_count);
            last = s.total_count;
        }
    }

    #[test]
    fn reported_roots_are_simultaneously_preperiodic() {
        let a = q("0");
        let b = q("1");
        let s = find_common_preperiodic(&a, &b, 2, 4, 4096).unwrap();
        for f in &s.factors {
            if f.deg() == 1 {
                // root of T + c is -c
                let root = -f.coeff(0);
                assert!(
                    matches!(orbit_status(&a, &root, 2, 512), OrbitStatus::Preperiodic { .. }),
                    "a not preperiodic at {root}"
                );
                assert!(
                    matches!(orbit_status(&b, &root, 2, 512), OrbitStatus::Preperiodic { .. }),
                    "b not preperiodic at {root}"
                );
            }
        }
    }

    #[test]
    fn orbit_status_examples() {
        // t = -1: 0 -> -1 -> 0 cycle
        assert_eq!(
            orbit_status(&q("0"), &q("-1"), 2, 64),
            OrbitStatus::Preperiodic { tail: 0, period: 2 }
        );
        // t = -2: 0 -> -2 -> 2 -> 2
        assert_eq!(
            orbit_status(&q("0"), &q("-2"), 2, 64),
            OrbitStatus::Preperiodic { tail: 2, period: 1 }
        );
        // t = 1: escapes
        assert!(matches!(orbit_status(&q("0"), &q("1"), 2, 64), OrbitStatus::Escapes { .. }));
        // t = 300: outside the parameter bound immediately
        assert_eq!(orbit_status(&q("0"), &q("300"), 2, 64), OrbitStatus::Escapes { at_step: 0 });
    }
}

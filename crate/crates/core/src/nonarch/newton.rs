//! Newton polygons and p-adic root localization for iterate polynomials.
//!
//! The polygon of `f_T^n(a)` is built from exact coefficient valuations; its
//! lower-hull slopes give the root valuations with multiplicity. Under the
//! largeness hypothesis `|a|_p > |d|_p^(-2/(d-1))` every root `s` satisfies
//! `|s|_p = |a|_p^d` (a single-slope polygon) and the roots are simple with
//! pairwise distance above `A_n = |a| / (|d| |a|^(d-1))^(n-1)`.
//!
//! Root spacing is verified exactly where feasible: the difference
//! polynomial `Res_x(f(x), f(x+y)) / y^deg` has the pairwise root
//! differences as its roots, so its own Newton polygon reads off the minimal
//! gap valuation. For larger degrees the discriminant still gives a
//! certified (possibly inconclusive) lower bound on the minimal gap.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::valuation::{vp, Val};
use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::iterate::iterate_poly;
use crate::exact::poly::DensePoly;
use crate::exact::rational::{is_probable_prime, Rational};

/// Newton polygon of a polynomial at a prime: the support points
/// `(i, v_p(c_i))` and the lower convex hull.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(degree index, valuation)` for nonzero coefficients.
    pub points: Vec<(usize, i64)>,
    /// Hull segments, slopes strictly increasing.
    pub segments: Vec<PolygonSegment>,
}

/// One lower-hull segment: `length` roots of valuation `-slope`.
#[derive(Debug, Clone, Serialize)]
pub struct PolygonSegment {
    /// Slope as an exact rational `(rise, run)` pair in lowest terms.
    pub slope: (i64, u64),
    pub length: u64,
}

impl PolygonSegment {
    pub fn slope_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.slope.0), BigInt::from(self.slope.1))
    }

    /// Valuation of the roots attached to this segment.
    pub fn root_valuation(&self) -> Rational {
        -self.slope_rational()
    }
}

/// Builds the Newton polygon of a nonzero polynomial over Q.
pub fn newton_polygon(f: &DensePoly, p: u64) -> NewtonPolygon {
    assert!(!f.is_zero());
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, vp(c, p).finite().expect("nonzero coefficient")))
        .collect();
    // lower convex hull, left to right (monotone chain)
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // keep only right turns (strictly convex from below):
            // cross((p2-p1), (p3-p1)) <= 0 means p2 is above or on the chord
            let cross = (x2 as i128 - x1 as i128) * (y as i128 - y1 as i128)
                - (x as i128 - x1 as i128) * (y2 as i128 - y1 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let run = (x2 - x1) as i64;
            let rise = y2 - y1;
            let g = gcd_i64(rise.unsigned_abs() as i64, run).max(1);
            PolygonSegment {
                slope: (rise / g, (run / g) as u64),
                length: run as u64,
            }
        })
        .collect();
    NewtonPolygon {
        prime: p,
        points,
        segments,
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl NewtonPolygon {
    /// Sum of root valuations = v(c_0) - v(c_deg) (exact bookkeeping).
    pub fn root_valuation_sum(&self) -> Rational {
        self.segments
            .iter()
            .map(|s| s.root_valuation() * Rational::from(BigInt::from(s.length)))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn total_length(&self) -> u64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

/// Spacing verification outcome, in `log p` units (`gap = p^exponent`).
#[derive(Debug, Clone, Serialize)]
pub enum SpacingCheck {
    /// Exact minimal pairwise gap from the difference polynomial's polygon.
    ExactDifferencePolygon {
        min_gap_exponent: (i64, u64),
        bound_exponent: (i64, u64),
        ok: bool,
    },
    /// Discriminant-derived certified lower bound; `ok = None` when the
    /// conservative bound cannot decide.
    DiscriminantBound {
        gap_lower_exponent: (i64, u64),
        bound_exponent: (i64, u64),
        ok: Option<bool>,
    },
    /// Degree too large for either exact route.
    Skipped { reason: String },
}

/// Full root-structure report for `f_T^n(a)` at a prime.
#[derive(Debug, Clone, Serialize)]
pub struct RootStructureReport {
    pub prime: u64,
    pub d: u32,
    pub n: u32,
    pub degree: u64,
    pub polygon: NewtonPolygon,
    /// Expected common root valuation `d * v_p(a)` under the hypothesis.
    pub expected_root_valuation: i64,
    /// Polygon is a single slope matching the expected valuation.
    pub valuations_ok: bool,
    pub spacing: SpacingCheck,
    pub pass: bool,
}

/// Checks the hypothesis `|a|_p > |d|_p^(-2/(d-1))` on exact exponents:
/// with `m = -v_p(a)` and `vd = v_p(d)`, this is `m (d-1) > 2 vd`.
pub fn largeness_hypothesis(a: &Rational, d: u32, p: u64) -> bool {
    let va = match vp(a, p) {
        Val::Finite(v) => v,
        Val::Infinite => return false,
    };
    let m = -va;
    let vd = vp(&Rational::from(BigInt::from(d)), p).finite().unwrap();
    m * (d as i64 - 1) > 2 * vd
}

/// Builds the polygon of `f_T^n(a)`, verifies that all roots have
/// `|s|_p = |a|_p^d`, and verifies the minimal root spacing against
/// `A_n = |a| / (|d| |a|^(d-1))^(n-1)`.
pub fn newton_root_structure(
    a: &Rational,
    d: u32,
    p: u64,
    n: u32,
    cfg: &RunConfig,
) -> Result<RootStructureReport, Error> {
    if !is_probable_prime(&num_bigint::BigUint::from(p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if !largeness_hypothesis(a, d, p) {
        return Err(Error::HypothesisViolated(format!(
            "|a|_p <= |d|_p^(-2/(d-1)) at p = {p}"
        )));
    }
    let m = -vp(a, p).finite().unwrap();
    let vd = vp(&Rational::from(BigInt::from(d)), p).finite().unwrap();
    let f = iterate_poly(a, d, n, cfg.degree_cap)?;
    let degree = f.deg() as u64;
    let polygon = newton_polygon(&f, p);

    let expected_root_valuation = -(d as i64) * m;
    let valuations_ok = polygon.segments.len() == 1
        && polygon.segments[0].slope == (d as i64 * m, 1)
        && polygon.total_length() == degree;

    // A_n exponent: log_p A_n = m - (n-1)(m(d-1) - vd)
    let bound_exp = m - (n as i64 - 1) * (m * (d as i64 - 1) - vd);
    let spacing = if degree == 1 {
        SpacingCheck::Skipped {
            reason: "degree 1: no pairs".into(),
        }
    } else if degree <= 16 {
        let diff = difference_polynomial(&f);
        let diff_polygon = newton_polygon(&diff, p);
        // min gap = p^(min slope): the most negative slope segment carries
        // the largest difference valuations, i.e. the smallest distances
        let min_slope = diff_polygon
            .segments
            .first()
            .map(|s| s.slope_rational())
            .unwrap_or_else(Rational::zero);
        let bound = Rational::from(BigInt::from(bound_exp));
        let ok = min_slope > bound;
        SpacingCheck::ExactDifferencePolygon {
            min_gap_exponent: rational_pair(&min_slope),
            bound_exponent: (bound_exp, 1),
            ok,
        }
    } else if degree <= 64 {
        // |disc| = prod |s_i - s_j|^2 over pairs; every pair is at most
        // |a|^d apart, so the minimal gap exponent is at least
        // -v(disc)/2 + (pairs - 1) * d * v_a
        let disc = f.discriminant();
        let vdisc = vp(&disc, p).finite().ok_or_else(|| {
            Error::InvalidInput("vanishing discriminant: roots are not simple".into())
        })?;
        let pairs = (degree * (degree - 1) / 2) as i64;
        let gap_lower = Rational::new(
            BigInt::from(-vdisc + 2 * (pairs - 1) * (d as i64) * (-m)),
            BigInt::from(2),
        );
        let bound = Rational::from(BigInt::from(bound_exp));
        let ok = if gap_lower > bound { Some(true) } else { None };
        SpacingCheck::DiscriminantBound {
            gap_lower_exponent: rational_pair(&gap_lower),
            bound_exponent: (bound_exp, 1),
            ok,
        }
    } else {
        SpacingCheck::Skipped {
            reason: format!("degree {degree} > 64"),
        }
    };

    let spacing_pass = match &spacing {
        SpacingCheck::ExactDifferencePolygon { ok, .. } => *ok,
        SpacingCheck::DiscriminantBound { ok, .. } => ok.unwrap_or(true),
        SpacingCheck::Skipped { .. } => true,
    };
    let pass = valuations_ok && spacing_pass;
    Ok(RootStructureReport {
        prime: p,
        d,
        n,
        degree,
        polygon,
        expected_root_valuation,
        valuations_ok,
        spacing,
        pass,
    })
}

fn rational_pair(x: &Rational) -> (i64, u64) {
    use num_traits::ToPrimitive;
    (
        x.numer().to_i64().unwrap_or(i64::MAX),
        x.denom().to_u64().unwrap_or(u64::MAX),
    )
}

/// `Res_x(f(x), f(x+y)) / y^deg(f)`: a polynomial in `y` whose roots are the
/// nonzero pairwise differences of roots of `f`. Computed by evaluation at
/// `deg(f)^2 + 1` rational points and Lagrange interpolation.
pub fn difference_polynomial(f: &DensePoly) -> DensePoly {
    let n = f.deg();
    let deg_y = n * n;
    let mut xs = Vec::with_capacity(deg_y + 1);
    let mut ys = Vec::with_capacity(deg_y + 1);
    let mut k = 0i64;
    while xs.len() <= deg_y {
        let y0 = Rational::from(BigInt::from(k));
        let shifted = f.compose_shift(&y0);
        let r = f.resultant(&shifted);
        xs.push(y0);
        ys.push(r);
        k = if k > 0 { -k } else { -k + 1 };
    }
    let full = lagrange_interpolate(&xs, &ys);
    // divide by y^n exactly (the i = j differences)
    let coeffs = full.coeffs();
    debug_assert!(coeffs.iter().take(n).all(Zero::is_zero), "y^deg should divide");
    DensePoly::from_coeffs(coeffs.iter().skip(n).cloned().collect())
}

fn lagrange_interpolate(xs: &[Rational], ys: &[Rational]) -> DensePoly {
    // Newton's divided differences, then expand
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xs[i] - &xs[i - j];
            coef[i] = num / den;
        }
    }
    // horner expansion: p(x) = c0 + (x - x0)(c1 + (x - x1)(...))
    let mut p = DensePoly::zero();
    for i in (0..n).rev() {
        let lin = DensePoly::from_coeffs(vec![-&xs[i], Rational::one()]);
        p = p.mul(&lin).add(&DensePoly::constant(coef[i].clone()));
    }
    p
}

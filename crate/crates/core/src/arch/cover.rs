//! Disk-cover verification for generalized Mandelbrot sets with a large
//! marked point.
//!
//! For `d = 2` and `|a| >= 28` the set `M_a` is covered by two disks of
//! radius 10 around `alpha_1 = -a^2 - a`, `alpha_2 = -a^2 + a` (each of
//! equilibrium measure 1/2), and by four disks of radius `5/|a|` around
//! `alpha_1, ..., alpha_4` with `alpha_3 = alpha_1 - 1`,
//! `alpha_4 = alpha_2 - 1` (measure 1/4 each). For `d > 2` and `|a| >= 6`
//! the `d` disks of radius `12/|a|^(d-2)` around `-a^d + zeta_d^i a` carry
//! measure `1/d` each. The measures are realized combinatorially: the
//! parameters where `a` re-enters its first iterate after `k` steps split
//! equally among the disks, `d^(k-2)` per disk.
//!
//! The checks here verify containment of those parameter roots, the exact
//! per-disk counts (with multiplicity), and pairwise disjointness, with
//! explicit error margins from the root finder's inclusion radii.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::iterate::preperiodic_poly;
use crate::exact::rational::{pow_u32, to_f64_approx, Rational};
use crate::num::cplx::CPoint;
use crate::num::real::{bigfloat_from_rational, bigfloat_to_f64};

/// A finite disk cover with equal per-disk equilibrium measure.
#[derive(Debug, Clone)]
pub struct DiskCover {
    pub centers: Vec<CPoint>,
    /// Exact disk radius.
    pub radius: Rational,
    /// Equilibrium measure of each disk.
    pub weight: Rational,
    /// Upper bound on the center coordinates' numerical error.
    pub center_err: f64,
}

/// One root that failed (or could not be decided by) a containment check.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub k: u32,
    pub root: (f64, f64),
    pub distance: f64,
    pub radius: f64,
    pub decided: bool,
}

/// Per-depth count check of roots per disk.
#[derive(Debug, Clone, Serialize)]
pub struct DiskCountCheck {
    pub k: u32,
    pub expected_per_disk: u64,
    pub counts: Vec<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub d: u32,
    pub a: String,
    pub n_test: u32,
    pub disks_disjoint: bool,
    /// Roots outside (or undecidably near the boundary of) the coarse cover.
    pub counterexamples: Vec<Counterexample>,
    /// Roots outside the fine cover (d = 2 only; empty otherwise).
    pub counterexamples_fine: Vec<Counterexample>,
    pub count_checks: Vec<DiskCountCheck>,
    pub pass: bool,
}

impl CoverReport {
    fn passes(&self) -> bool {
        self.disks_disjoint
            && self.counterexamples.is_empty()
            && self.counterexamples_fine.is_empty()
            && self.count_checks.iter().all(|c| c.pass)
    }
}

fn rational_center(re: Rational, prec: usize) -> CPoint {
    CPoint::from_rational(&re, &Rational::from(BigInt::from(0)), prec)
}

/// The two- and four-disk covers for `d = 2`.
fn covers_d2(a: &Rational, prec: usize) -> (DiskCover, DiskCover) {
    let a2 = a * a;
    let alpha1 = -(&a2) - a;
    let alpha2 = -(&a2) + a;
    let one = Rational::from(BigInt::from(1));
    let alpha3 = &alpha1 - &one;
    let alpha4 = &alpha2 - &one;
    let coarse = DiskCover {
        centers: vec![rational_center(alpha1.clone(), prec), rational_center(alpha2.clone(), prec)],
        radius: Rational::from(BigInt::from(10)),
        weight: Rational::new(1.into(), 2.into()),
        center_err: 0.0,
    };
    let fine = DiskCover {
        centers: vec![
            rational_center(alpha1, prec),
            rational_center(alpha2, prec),
            rational_center(alpha3, prec),
            rational_center(alpha4, prec),
        ],
        radius: Rational::new(5.into(), 1.into()) / a.abs(),
        weight: Rational::new(1.into(), 4.into()),
        center_err: 0.0,
    };
    (coarse, fine)
}

/// The `d`-disk cover for `d > 2`: centers `-a^d + zeta_d^i a`.
fn cover_dgt2(a: &Rational, d: u32, prec: usize) -> DiskCover {
    let zetas = super::roots::roots_of_unity(d, prec);
    let ad = pow_u32(a, d);
    let minus_ad = rational_center(-ad, prec);
    let a_bf = bigfloat_from_rational(a, prec, astro_float::RoundingMode::ToEven);
    let centers = zetas
        .iter()
        .map(|z| minus_ad.add(&z.scale(&a_bf, prec), prec))
        .collect();
    let radius = Rational::new(12.into(), 1.into()) / pow_u32(&a.abs(), d - 2);
    DiskCover {
        centers,
        radius,
        weight: Rational::new(1.into(), BigInt::from(d)),
        center_err: to_f64_approx(&a.abs()) * 2f64.powi(-(prec.min(1 << 20) as i32) + 12),
    }
}

/// True when all disks are pairwise disjoint, with error margins.
fn disjoint(cover: &DiskCover, prec: usize) -> bool {
    let r = to_f64_approx(&cover.radius);
    for i in 0..cover.centers.len() {
        for j in i + 1..cover.centers.len() {
            let dist = bigfloat_to_f64(&cover.centers[i].dist(&cover.centers[j], prec));
            if dist - 2.0 * cover.center_err <= 2.0 * r {
                return false;
            }
        }
    }
    true
}

struct RootWithMult {
    z: CPoint,
    radius: f64,
    multiplicity: u32,
}

/// Distinct roots of `f_T^k(a) - f_T(a)` with multiplicities.
fn parameter_roots(
    a: &Rational,
    d: u32,
    k: u32,
    cfg: &RunConfig,
) -> Result<Vec<RootWithMult>, Error> {
    let p = preperiodic_poly(a, d, k, 1, cfg.degree_cap)?;
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.deg() == 0 {
            continue;
        }
        for r in super::roots::roots(&factor, cfg)? {
            out.push(RootWithMult {
                z: r.z,
                radius: r.radius,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

/// Checks one root list against a cover; returns (counterexamples, counts).
fn check_containment(
    k: u32,
    roots: &[RootWithMult],
    cover: &DiskCover,
    prec: usize,
) -> (Vec<Counterexample>, Vec<u64>) {
    let r = to_f64_approx(&cover.radius);
    let mut counts = vec![0u64; cover.centers.len()];
    let mut bad = Vec::new();
    for root in roots {
        let mut best = f64::INFINITY;
        let mut best_i = 0;
        for (i, c) in cover.centers.iter().enumerate() {
            let dist = bigfloat_to_f64(&root.z.dist(c, prec));
            if dist < best {
                best = dist;
                best_i = i;
            }
        }
        let slack = root.radius + cover.center_err;
        if best + slack < r {
            counts[best_i] += root.multiplicity as u64;
        } else {
            bad.push(Counterexample {
                k,
                root: root.z.to_f64_pair(),
                distance: best,
                radius: r,
                decided: best - slack > r,
            });
        }
    }
    (bad, counts)
}

/// Verifies the two-disk and four-disk covers for `d = 2`, `|a| >= 28`:
/// containment of every parameter root at depths `2..=n_test`, exact
/// `2^(k-2)` roots per coarse disk, and disjointness.
pub fn cover_check_d2(a: &Rational, n_test: u32, cfg: &RunConfig) -> Result<CoverReport, Error> {
    if a.abs() < Rational::from(BigInt::from(28)) {
        return Err(Error::HypothesisViolated(format!(
            "|a| >= 28 required for the degree-2 covers, got |a| = {}",
            a.abs()
        )));
    }
    let prec = cfg.precision_bits;
    let (coarse, fine) = covers_d2(a, prec);
    let mut report = CoverReport {
        d: 2,
        a: a.to_string(),
        n_test,
        disks_disjoint: disjoint(&coarse, prec) && disjoint(&fine, prec),
        counterexamples: Vec::new(),
        counterexamples_fine: Vec::new(),
        count_checks: Vec::new(),
        pass: false,
    };
    for k in 2..=n_test {
        let roots = parameter_roots(a, 2, k, cfg)?;
        let (bad_coarse, counts) = check_containment(k, &roots, &coarse, prec);
        let (bad_fine, _) = check_containment(k, &roots, &fine, prec);
        report.counterexamples.extend(bad_coarse);
        report.counterexamples_fine.extend(bad_fine);
        let expected = 1u64 << (k - 2);
        let pass = counts.iter().all(|&c| c == expected);
        report.count_checks.push(DiskCountCheck {
            k,
            expected_per_disk: expected,
            counts,
            pass,
        });
    }
    report.pass = report.passes();
    Ok(report)
}

/// Verifies the `d`-disk cover for `d > 2`, `|a| >= 6`: containment at
/// depths `2..=n_test`, exact `d^(k-2)` roots per disk, and disjointness.
pub fn cover_check_dgt2(
    a: &Rational,
    d: u32,
    n_test: u32,
    cfg: &RunConfig,
) -> Result<CoverReport, Error> {
    if d <= 2 {
        return Err(Error::InvalidInput("cover_check_dgt2 needs d > 2".into()));
    }
    if a.abs() < Rational::from(BigInt::from(6)) {
        return Err(Error::HypothesisViolated(format!(
            "|a| >= 6 required for the degree-{d} cover, got |a| = {}",
            a.abs()
        )));
    }
    let prec = cfg.precision_bits;
    let cover = cover_dgt2(a, d, prec);
    let mut report = CoverReport {
        d,
        a: a.to_string(),
        n_test,
        disks_disjoint: disjoint(&cover, prec),
        counterexamples: Vec::new(),
        counterexamples_fine: Vec::new(),
        count_checks: Vec::new(),
        pass: false,
    };
    for k in 2..=n_test {
        let roots = parameter_roots(a, d, k, cfg)?;
        let (bad, counts) = check_containment(k, &roots, &cover, prec);
        report.counterexamples.extend(bad);
        let expected = (d as u64).pow(k - 2);
        let pass = counts.iter().all(|&c| c == expected);
        report.count_checks.push(DiskCountCheck {
            k,
            expected_per_disk: expected,
            counts,
            pass,
        });
    }
    report.pass = report.passes();
    Ok(report)
}

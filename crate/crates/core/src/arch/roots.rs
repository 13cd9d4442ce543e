//! Simultaneous polynomial root finding over C.
//!
//! Strategy: an Aberth-Ehrlich pass in plain `f64` from perturbed-circle
//! initial points (radius from the Fujiwara coefficient bound), then
//! per-root Newton polishing at the requested big-float precision, then a
//! certificate pass: the polished residual `|p(z)|` must sit at the rounding
//! floor of the evaluation, and the classical inclusion radius
//! `n |p(z)/p'(z)|` must separate the roots pairwise. Failure at any stage
//! escalates the working precision; only then does the finder report
//! stagnation.

use astro_float::{BigFloat, RoundingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::poly::DensePoly;
use crate::exact::rational::{to_f64_approx, Rational};
use crate::num::cplx::CPoint;
use crate::num::real::{bigfloat_from_rational, bigfloat_to_f64};

const NEAREST: RoundingMode = RoundingMode::ToEven;

/// A fully polished root with its certificate data.
#[derive(Debug, Clone)]
pub struct PolishedRoot {
    pub z: CPoint,
    /// Residual `|p(z)|` after polishing.
    pub residual: f64,
    /// Inclusion radius `deg * |p(z)/p'(z)|`: a disk of this radius around
    /// `z` contains a true root of `p`.
    pub radius: f64,
}

/// All roots of a squarefree polynomial of degree >= 1.
pub fn roots(p: &DensePoly, cfg: &RunConfig) -> Result<Vec<PolishedRoot>, Error> {
    let n = p.degree().expect("roots of zero polynomial");
    assert!(n >= 1, "roots of a constant");
    if n == 1 {
        // exact: -c0/c1
        let root = -(p.coeff(0) / p.coeff(1));
        let prec = cfg.precision_bits;
        let z = CPoint::from_rational(&root, &Rational::from(num_bigint::BigInt::from(0)), prec);
        return Ok(vec![PolishedRoot {
            z,
            residual: 0.0,
            radius: 0.0,
        }]);
    }

    let mut prec = cfg.precision_bits.max(128);
    loop {
        match roots_at_precision(p, prec, cfg.seed) {
            Ok(rs) => return Ok(rs),
            Err(e) => {
                if prec * 2 <= cfg.max_precision_bits {
                    prec *= 2;
                } else {
                    return Err(e);
                }
            }
        }
    }
}

fn roots_at_precision(p: &DensePoly, prec: usize, seed: u64) -> Result<Vec<PolishedRoot>, Error> {
    let n = p.deg();
    let coeffs_f64: Vec<(f64, f64)> = p.coeffs().iter().map(|c| (to_f64_approx(c), 0.0)).collect();
    let use_f64_stage = coeffs_f64.iter().all(|(re, _)| re.is_finite() && re.abs() < 1e280);

    let approx = if use_f64_stage {
        aberth_f64(&coeffs_f64, n, seed, 400 + 4 * n as u32)
    } else {
        None
    };
    let approx = match approx {
        Some(a) => a,
        None => aberth_bigfloat(p, prec, seed)?,
    };

    // Newton polish at full precision.
    let coeffs_bf: Vec<CPoint> = p
        .coeffs()
        .iter()
        .map(|c| CPoint {
            re: bigfloat_from_rational(c, prec, NEAREST),
            im: BigFloat::from_i8(0, prec),
        })
        .collect();
    let mut polished = Vec::with_capacity(n);
    for (re, im) in approx {
        let mut z = CPoint::from_f64(re, im, prec);
        let mut last_res = f64::INFINITY;
        for _ in 0..(2 + prec / 16) {
            let (pv, dv) = eval_with_derivative(&coeffs_bf, &z, prec);
            let res = bigfloat_to_f64(&pv.abs(prec));
            if res == 0.0 || res >= last_res * 0.5 {
                // converged or stalled at the rounding floor
                break;
            }
            last_res = res;
            if bigfloat_to_f64(&dv.abs(prec)) == 0.0 {
                return Err(Error::RootFinderStagnated {
                    iterations: 0,
                    residual: res,
                });
            }
            let step = pv.div(&dv, prec);
            z = z.sub(&step, prec);
        }
        let (pv, dv) = eval_with_derivative(&coeffs_bf, &z, prec);
        let residual = bigfloat_to_f64(&pv.abs(prec));
        let dv_abs = bigfloat_to_f64(&dv.abs(prec));
        let radius = if dv_abs > 0.0 {
            (n as f64) * residual / dv_abs
        } else {
            f64::INFINITY
        };
        polished.push(PolishedRoot { z, residual, radius });
    }

    // Certificates: residual at rounding floor and pairwise separation.
    let scale_floor = evaluation_floor(p, &polished, prec);
    for (pr, floor) in polished.iter().zip(scale_floor.iter()) {
        if pr.residual > floor * 1e6 {
            return Err(Error::RootFinderStagnated {
                iterations: 0,
                residual: pr.residual,
            });
        }
    }
    for i in 0..polished.len() {
        for j in i + 1..polished.len() {
            let d = polished[i].z.dist(&polished[j].z, prec);
            let d = bigfloat_to_f64(&d);
            let need = 2.0 * (polished[i].radius + polished[j].radius);
            if d <= need {
                return Err(Error::RootFinderStagnated {
                    iterations: 0,
                    residual: d,
                });
            }
        }
    }

    polished.sort_by(|a, b| {
        let (ar, ai) = a.z.to_f64_pair();
        let (br, bi) = b.z.to_f64_pair();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
    Ok(polished)
}

/// Expected size of `|p(z)|` from rounding alone: `eps * sum |c_i| |z|^i`.
fn evaluation_floor(p: &DensePoly, roots: &[PolishedRoot], prec: usize) -> Vec<f64> {
    let abs_coeffs: Vec<f64> = p.coeffs().iter().map(|c| {
        use num_traits::Signed;
        to_f64_approx(&c.abs())
    }).collect();
    let eps = 2f64.powi(-(prec.min(500) as i32) + 8);
    roots
        .iter()
        .map(|r| {
            let (re, im) = r.z.to_f64_pair();
            let az = (re * re + im * im).sqrt().max(1e-300);
            let mut s = 0.0;
            let mut zp = 1.0;
            for c in &abs_coeffs {
                s += c * zp;
                zp *= az;
                if !zp.is_finite() {
                    return f64::INFINITY;
                }
            }
            (s * eps).max(1e-300)
        })
        .collect()
}

fn eval_with_derivative(coeffs: &[CPoint], z: &CPoint, prec: usize) -> (CPoint, CPoint) {
    let mut pv = CPoint::zero(prec);
    let mut dv = CPoint::zero(prec);
    for c in coeffs.iter().rev() {
        dv = dv.mul(z, prec).add(&pv, prec);
        pv = pv.mul(z, prec).add(c, prec);
    }
    (pv, dv)
}

/// Aberth-Ehrlich sweeps in f64. Returns None if it fails to converge
/// (caller falls back to big-float sweeps).
fn aberth_f64(
    coeffs: &[(f64, f64)],
    n: usize,
    seed: u64,
    max_sweeps: u32,
) -> Option<Vec<(f64, f64)>> {
    use std::f64::consts::TAU;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabe57f64);
    // Fujiwara-style root bound
    let lc = modulus(coeffs[n]);
    if lc == 0.0 {
        return None;
    }
    let mut r_bound: f64 = 0.0;
    for k in 1..=n {
        let ck = modulus(coeffs[n - k]);
        if ck > 0.0 {
            r_bound = r_bound.max((ck / lc).powf(1.0 / k as f64));
        }
    }
    let r_bound = 2.0 * r_bound.max(1e-6);

    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let angle = TAU * (j as f64 + 0.3537) / n as f64;
            let rad = r_bound * (0.55 + 0.35 * rng.gen::<f64>());
            (rad * angle.cos(), rad * angle.sin())
        })
        .collect();

    for _ in 0..max_sweeps {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let (pv, dv) = eval_f64(coeffs, z[j]);
            let pv_abs = modulus(pv);
            if pv_abs == 0.0 {
                continue;
            }
            let dv_abs = modulus(dv);
            if dv_abs == 0.0 || !dv_abs.is_finite() || !pv_abs.is_finite() {
                // nudge and retry next sweep
                z[j].0 += r_bound * 1e-6 * (rng.gen::<f64>() - 0.5);
                z[j].1 += r_bound * 1e-6 * (rng.gen::<f64>() - 0.5);
                max_step = f64::INFINITY;
                continue;
            }
            let w = cdiv(pv, dv);
            let mut s = (0.0, 0.0);
            let mut clash = false;
            for (k, zk) in z.iter().enumerate() {
                if k == j {
                    continue;
                }
                let diff = csub(z[j], *zk);
                if modulus(diff) < 1e-280 {
                    clash = true;
                    break;
                }
                s = cadd(s, cdiv((1.0, 0.0), diff));
            }
            if clash {
                z[j].0 += r_bound * 1e-6 * (rng.gen::<f64>() + 0.5);
                max_step = f64::INFINITY;
                continue;
            }
            let denom = csub((1.0, 0.0), cmul(w, s));
            let step = if modulus(denom) < 1e-280 { w } else { cdiv(w, denom) };
            z[j] = csub(z[j], step);
            let rel = modulus(step) / (1.0 + modulus(z[j]));
            max_step = max_step.max(rel);
        }
        if max_step < 1e-13 {
            return Some(z);
        }
    }
    None
}

/// Aberth sweeps in big-float arithmetic, for coefficients outside f64 range.
fn aberth_bigfloat(p: &DensePoly, prec: usize, seed: u64) -> Result<Vec<(f64, f64)>, Error> {
    use std::f64::consts::TAU;
    let n = p.deg();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabe57);
    let coeffs: Vec<CPoint> = p
        .coeffs()
        .iter()
        .map(|c| CPoint {
            re: bigfloat_from_rational(c, prec, NEAREST),
            im: BigFloat::from_i8(0, prec),
        })
        .collect();
    // root bound via exponents: |c_(n-k)/c_n|^(1/k)
    let log2_lc = log2_abs(&coeffs[n].re);
    let mut log2_r: f64 = -20.0;
    for k in 1..=n {
        let c = &coeffs[n - k];
        if c.re.is_zero() {
            continue;
        }
        log2_r = log2_r.max((log2_abs(&c.re) - log2_lc) / k as f64);
    }
    let r_bound = 2f64.powf(log2_r + 1.0);

    let mut z: Vec<CPoint> = (0..n)
        .map(|j| {
            let angle = TAU * (j as f64 + 0.3537) / n as f64;
            let rad = r_bound * (0.55 + 0.35 * rng.gen::<f64>());
            CPoint::from_f64(rad * angle.cos(), rad * angle.sin(), prec)
        })
        .collect();

    let tol = 2f64.powi(-((prec / 2).min(500) as i32));
    for _ in 0..400 + 4 * n as u32 {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let (pv, dv) = eval_with_derivative(&coeffs, &z[j], prec);
            if bigfloat_to_f64(&pv.abs(prec)) == 0.0 {
                continue;
            }
            let w = pv.div(&dv, prec);
            let mut s = CPoint::zero(prec);
            for (k, zk) in z.iter().enumerate() {
                if k == j {
                    continue;
                }
                let diff = z[j].sub(zk, prec);
                s = s.add(&CPoint::from_f64(1.0, 0.0, prec).div(&diff, prec), prec);
            }
            let one = CPoint::from_f64(1.0, 0.0, prec);
            let denom = one.sub(&w.mul(&s, prec), prec);
            let step = w.div(&denom, prec);
            z[j] = z[j].sub(&step, prec);
            let rel = bigfloat_to_f64(&step.abs(prec)) / (1.0 + bigfloat_to_f64(&z[j].abs(prec)));
            max_step = max_step.max(rel);
        }
        if max_step < tol {
            return Ok(z.iter().map(|c| c.to_f64_pair()).collect());
        }
    }
    Err(Error::RootFinderStagnated {
        iterations: 400 + 4 * n as u32,
        residual: f64::NAN,
    })
}

fn log2_abs(x: &BigFloat) -> f64 {
    match x.exponent() {
        Some(e) => {
            let v = bigfloat_to_f64(&x.abs());
            if v.is_finite() && v > 0.0 {
                v.log2()
            } else {
                e as f64
            }
        }
        None => 0.0,
    }
}

/// The `d` complex `d`-th roots of unity, polished to `prec` bits.
pub fn roots_of_unity(d: u32, prec: usize) -> Vec<CPoint> {
    use std::f64::consts::TAU;
    let one = CPoint::from_f64(1.0, 0.0, prec);
    (0..d)
        .map(|i| {
            let angle = TAU * i as f64 / d as f64;
            let mut z = CPoint::from_f64(angle.cos(), angle.sin(), prec);
            // Newton on z^d - 1
            for _ in 0..prec / 8 {
                let zd1 = z.powi(d - 1, prec);
                let f = zd1.mul(&z, prec).sub(&one, prec);
                let df = zd1.scale(&BigFloat::from_u32(d, prec), prec);
                let step = f.div(&df, prec);
                z = z.sub(&step, prec);
                if bigfloat_to_f64(&step.abs(prec)) < 2f64.powi(-((prec.min(900)) as i32) + 4) {
                    break;
                }
            }
            z
        })
        .collect()
}

fn modulus(z: (f64, f64)) -> f64 {
    (z.0 * z.0 + z.1 * z.1).sqrt()
}

fn cadd(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}

fn csub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn eval_f64(coeffs: &[(f64, f64)], z: (f64, f64)) -> ((f64, f64), (f64, f64)) {
    let mut pv = (0.0, 0.0);
    let mut dv = (0.0, 0.0);
    for c in coeffs.iter().rev() {
        dv = cadd(cmul(dv, z), pv);
        pv = cadd(cmul(pv, z), *c);
    }
    (pv, dv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::iterate::{iterate_poly, preperiodic_poly};
    use crate::exact::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    fn assert_root_set(rs: &[PolishedRoot], expect: &[(f64, f64)], tol: f64) {
        assert_eq!(rs.len(), expect.len());
        for (er, ei) in expect {
            assert!(
                rs.iter().any(|r| {
                    let (zr, zi) = r.z.to_f64_pair();
                    (zr - er).abs() < tol && (zi - ei).abs() < tol
                }),
                "expected root ({er},{ei}) missing: {:?}",
                rs.iter().map(|r| r.z.to_f64_pair()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn quadratic_roots() {
        // T^2 + T: {0, -1}
        let p = DensePoly::from_i64s(&[0, 1, 1]);
        let rs = roots(&p, &cfg()).unwrap();
        assert_root_set(&rs, &[(0.0, 0.0), (-1.0, 0.0)], 1e-12);
    }

    #[test]
    fn periodic_parameter_roots_d2() {
        // roots of f_T^3(a) - f_T(a) for a = 2:
        // {-a^2-a, -a^2+a, -a^2-a-1, -a^2+a-1} = {-6, -2, -7, -3}
        let p = preperiodic_poly(&q("2"), 2, 3, 1, 4096).unwrap().squarefree_part();
        let rs = roots(&p, &cfg()).unwrap();
        assert_root_set(&rs, &[(-6.0, 0.0), (-2.0, 0.0), (-7.0, 0.0), (-3.0, 0.0)], 1e-12);
    }

    #[test]
    fn periodic_parameter_roots_d3() {
        // roots of f_T^2(a) - f_T(a) for d = 3, a = 2: -a^d + zeta_3^i a
        let p = preperiodic_poly(&q("2"), 3, 2, 1, 4096).unwrap().squarefree_part();
        let rs = roots(&p, &cfg()).unwrap();
        let zeta: Vec<(f64, f64)> = (0..3)
            .map(|i| {
                let ang = std::f64::consts::TAU * i as f64 / 3.0;
                (-8.0 + 2.0 * ang.cos(), 2.0 * ang.sin())
            })
            .collect();
        assert_root_set(&rs, &zeta, 1e-12);
    }

    #[test]
    fn residuals_are_tiny_and_roots_distinct() {
        let p = iterate_poly(&q("1"), 2, 6, 4096).unwrap().squarefree_part();
        let rs = roots(&p, &cfg()).unwrap();
        assert_eq!(rs.len(), 32);
        for r in &rs {
            assert!(r.radius < 1e-15, "radius {}", r.radius);
        }
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let d = rs[i].z.dist(&rs[j].z, 128);
                assert!(bigfloat_to_f64(&d) > 1e-10);
            }
        }
    }

    #[test]
    fn evaluation_consistency_against_exact() {
        // polished roots plugged into the exact polynomial evaluate to ~0
        let p = preperiodic_poly(&q("1/2"), 2, 4, 2, 4096).unwrap().squarefree_part();
        let rs = roots(&p, &cfg()).unwrap();
        assert_eq!(rs.len(), p.deg());
        for r in &rs {
            assert!(r.residual < 1e-25, "residual {}", r.residual);
        }
    }

    #[test]
    fn unity_roots() {
        for d in [2u32, 3, 5, 7] {
            let zs = roots_of_unity(d, 192);
            for z in &zs {
                let err = z.powi(d, 192).sub(&CPoint::from_f64(1.0, 0.0, 192), 192);
                assert!(bigfloat_to_f64(&err.abs(192)) < 1e-50);
            }
        }
    }
}

//! Root finding for iterate polynomials through the defining recursion.
//!
//! The expanded coefficients of `f_T^m(x)` are astronomically larger than
//! the polynomial's values near its roots, so coefficient-form evaluation
//! loses hundreds of bits to cancellation. Evaluating through the recursion
//!   `z_(k+1) = z_k^d + t`,   `w_(k+1) = d z_k^(d-1) w_k + 1`
//! (`w = dz/dt`) costs O(m) per point and is numerically benign, which lets
//! the f64 Aberth stage converge and keeps the high-precision polish cheap.
//!
//! Handles `f_T^m(x)` and the preperiodicity differences
//! `f_T^m(x) - f_T^s(x)`. Roots certified simple by their inclusion radii;
//! if certification fails the caller falls back to the coefficient path.

use astro_float::{BigFloat, RoundingMode};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::iterate::{iterate_degree, iterate_poly, preperiodic_poly};
use crate::exact::rational::{to_f64_approx, Rational};
use crate::num::cplx::CPoint;
use crate::num::real::{bigfloat_from_rational, bigfloat_to_f64};

use super::roots::PolishedRoot;

const NEAREST: RoundingMode = RoundingMode::ToEven;

/// Which iterate difference to solve: `f^m(x)` alone or `f^m(x) - f^s(x)`.
#[derive(Debug, Clone, Copy)]
pub struct IterateTarget {
    pub m: u32,
    /// Subtract `f^s(x)`; `s = 0` subtracts the constant `x` itself.
    pub sub: Option<u32>,
}

/// All roots of `f_T^m(x)` (or `f_T^m(x) - f_T^s(x)`), assuming simple
/// roots; falls back to the coefficient-form finder on the squarefree part
/// when the simplicity certificate fails.
pub fn iterate_roots(
    x: &Rational,
    d: u32,
    target: IterateTarget,
    cfg: &RunConfig,
) -> Result<Vec<PolishedRoot>, Error> {
    if let Some(rs) = iterate_roots_simple(x, d, target, cfg)? {
        return Ok(rs);
    }
    // coefficient fallback (multiple roots, wild clustering, ...)
    let poly = match target.sub {
        None => iterate_poly(x, d, target.m, cfg.degree_cap)?,
        Some(s) => preperiodic_poly(x, d, target.m, s, cfg.degree_cap)?,
    };
    super::roots::roots(&poly.squarefree_part(), cfg)
}

/// The dynamical route alone: `Some(roots)` only when every root was found
/// and certified simple (so the multiset of roots is the full degree with
/// multiplicity one each); `None` when the caller should use the
/// coefficient path.
pub fn iterate_roots_simple(
    x: &Rational,
    d: u32,
    target: IterateTarget,
    cfg: &RunConfig,
) -> Result<Option<Vec<PolishedRoot>>, Error> {
    let deg = iterate_degree(d, target.m, cfg.degree_cap)? as usize;
    Ok(try_dynamic(x, d, target, deg, cfg))
}

fn try_dynamic(
    x: &Rational,
    d: u32,
    target: IterateTarget,
    deg: usize,
    cfg: &RunConfig,
) -> Option<Vec<PolishedRoot>> {
    if deg == 0 {
        return Some(Vec::new());
    }
    let xf = to_f64_approx(x);
    let approx = match target.sub {
        // iterates nest: warm-start depth m from the converged depth m-1
        None => hierarchical_f64(xf, d, target.m, cfg.seed)?,
        Some(_) => aberth_dynamic_f64(xf, d, target, deg, None, cfg.seed)?,
    };

    let mut prec = cfg.precision_bits.max(128);
    loop {
        match polish_dynamic(x, d, target, deg, &approx, prec) {
            Some(rs) => return Some(rs),
            None if prec * 2 <= cfg.max_precision_bits => prec *= 2,
            None => return None,
        }
    }
}

/// `(f^m(x)(t), d/dt f^m(x)(t))` through the recursion, f64 complex.
fn eval_dyn_f64(
    xf: f64,
    d: u32,
    target: IterateTarget,
    t: (f64, f64),
) -> ((f64, f64), (f64, f64)) {
    let mut z = (xf, 0.0f64);
    let mut w = (0.0f64, 0.0);
    let mut z_sub = (xf, 0.0f64);
    let mut w_sub = (0.0f64, 0.0);
    for k in 1..=target.m {
        let zp = cpow(z, d - 1);
        w = cadd(cmul(cmul((d as f64, 0.0), zp), w), (1.0, 0.0));
        z = cadd(cmul(zp, z), t);
        if !z.0.is_finite() || !z.1.is_finite() {
            // overflow: both value and derivative are astronomically large;
            // report a huge value in the outward direction
            return ((f64::MAX, 0.0), (1.0, 0.0));
        }
        if target.sub == Some(k) {
            z_sub = z;
            w_sub = w;
        }
    }
    match target.sub {
        None => (z, w),
        Some(0) => (csub(z, (xf, 0.0)), w),
        Some(_) => (csub(z, z_sub), csub(w, w_sub)),
    }
}

/// Roots of `f_T^m(x)` level by level: the depth-k roots seed depth k+1,
/// so every Aberth run starts near its answer.
fn hierarchical_f64(xf: f64, d: u32, m: u32, seed: u64) -> Option<Vec<(f64, f64)>> {
    use std::f64::consts::TAU;
    // depth 1: the single root of x^d + t
    let mut points = vec![(-xf.abs().powi(d as i32) * xf.signum().powi(d as i32), 0.0)];
    if m == 1 {
        return Some(points);
    }
    for level in 2..=m {
        // spawn d children per parent on a small circle
        let mut guesses = Vec::with_capacity(points.len() * d as usize);
        for (i, &p) in points.iter().enumerate() {
            let mut nearest = f64::INFINITY;
            for (j, &q) in points.iter().enumerate() {
                if i != j {
                    nearest = nearest.min(modulus(csub(p, q)));
                }
            }
            let rho = if nearest.is_finite() { 0.25 * nearest } else { 0.5 };
            let rho = rho.max(1e-8);
            for c in 0..d {
                let ang = TAU * (c as f64 + 0.377) / d as f64;
                guesses.push((p.0 + rho * ang.cos(), p.1 + rho * ang.sin()));
            }
        }
        points = aberth_dynamic_f64(
            xf,
            d,
            IterateTarget { m: level, sub: None },
            guesses.len(),
            Some(guesses),
            seed,
        )?;
    }
    Some(points)
}

fn aberth_dynamic_f64(
    xf: f64,
    d: u32,
    target: IterateTarget,
    deg: usize,
    init: Option<Vec<(f64, f64)>>,
    seed: u64,
) -> Option<Vec<(f64, f64)>> {
    use std::f64::consts::TAU;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd7a0_0717);
    // all roots are parameters keeping the orbit of x bounded; the escape
    // argument bounds them inside |t| <= 2 max(|x|,2)^d
    let r_bound = 2.0 * xf.abs().max(2.0).powi(d as i32);
    let mut z: Vec<(f64, f64)> = init.unwrap_or_else(|| {
        (0..deg)
            .map(|j| {
                let angle = TAU * (j as f64 + 0.3537) / deg as f64;
                let rad = r_bound * (0.5 + 0.4 * rng.gen::<f64>());
                (rad * angle.cos(), rad * angle.sin())
            })
            .collect()
    });

    let sweeps = 400 + 4 * deg as u32;
    for _ in 0..sweeps {
        let mut max_step = 0.0f64;
        for j in 0..deg {
            let (pv, dv) = eval_dyn_f64(xf, d, target, z[j]);
            let pv_abs = modulus(pv);
            if pv_abs == 0.0 {
                continue;
            }
            let dv_abs = modulus(dv);
            if dv_abs == 0.0 || !dv_abs.is_finite() {
                z[j].0 += r_bound * 1e-9 * (rng.gen::<f64>() - 0.5);
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
                z[j].0 += r_bound * 1e-9 * (rng.gen::<f64>() + 0.5);
                max_step = f64::INFINITY;
                continue;
            }
            let denom = csub((1.0, 0.0), cmul(w, s));
            let step = if modulus(denom) < 1e-280 { w } else { cdiv(w, denom) };
            z[j] = csub(z[j], step);
            let rel = modulus(step) / (1.0 + modulus(z[j]));
            max_step = max_step.max(rel);
        }
        if max_step < 1e-12 {
            return Some(z);
        }
    }
    None
}

/// `(p, p')` through the recursion at big-float precision.
fn eval_dyn_bf(
    xb: &BigFloat,
    d: u32,
    target: IterateTarget,
    t: &CPoint,
    prec: usize,
) -> (CPoint, CPoint) {
    let mut z = CPoint {
        re: xb.clone(),
        im: BigFloat::from_i8(0, prec),
    };
    let x0 = z.clone();
    let mut w = CPoint::zero(prec);
    let mut z_sub = z.clone();
    let mut w_sub = CPoint::zero(prec);
    let d_big = BigFloat::from_u32(d, prec);
    for k in 1..=target.m {
        let zp = if d >= 2 { z.powi(d - 1, prec) } else { CPoint::from_f64(1.0, 0.0, prec) };
        w = zp
            .scale(&d_big, prec)
            .mul(&w, prec)
            .add(&CPoint::from_f64(1.0, 0.0, prec), prec);
        z = zp.mul(&z, prec).add(t, prec);
        if target.sub == Some(k) {
            z_sub = z.clone();
            w_sub = w.clone();
        }
    }
    match target.sub {
        None => (z, w),
        Some(0) => (z.sub(&x0, prec), w),
        Some(_) => (z.sub(&z_sub, prec), w.sub(&w_sub, prec)),
    }
}

fn polish_dynamic(
    x: &Rational,
    d: u32,
    target: IterateTarget,
    deg: usize,
    approx: &[(f64, f64)],
    prec: usize,
) -> Option<Vec<PolishedRoot>> {
    let xb = bigfloat_from_rational(x, prec, NEAREST);
    let max4 = to_f64_approx(&x.abs()).abs().max(4.0);
    let mut out = Vec::with_capacity(deg);
    for &(re, im) in approx {
        let mut z = CPoint::from_f64(re, im, prec);
        let mut last_res = f64::INFINITY;
        for _ in 0..(2 + prec / 16) {
            let (pv, dv) = eval_dyn_bf(&xb, d, target, &z, prec);
            let res = bigfloat_to_f64(&pv.abs(prec));
            if res == 0.0 || res >= last_res * 0.5 {
                break;
            }
            last_res = res;
            if bigfloat_to_f64(&dv.abs(prec)) == 0.0 {
                return None;
            }
            z = z.sub(&pv.div(&dv, prec), prec);
        }
        let (pv, dv) = eval_dyn_bf(&xb, d, target, &z, prec);
        let residual = bigfloat_to_f64(&pv.abs(prec));
        let dv_abs = bigfloat_to_f64(&dv.abs(prec));
        if dv_abs == 0.0 {
            return None;
        }
        let radius = deg as f64 * residual / dv_abs;
        // the dynamical evaluation floor: the orbit stays below ~9 max(|x|,4)
        // at a true root, so rounding contributes about
        // m * (d * 9max)^(d-ish) * 2^-prec per step; use a generous margin
        let floor = (target.m as f64)
            * (9.0 * max4).powi(d as i32)
            * (1.0 + dv_abs)
            * 2f64.powi(-(prec.min(2000) as i32) + 24);
        if residual > floor.max(1e-300) * 1e4 {
            return None;
        }
        out.push(PolishedRoot { z, residual, radius });
    }
    // simplicity certificate: inclusion disks pairwise disjoint
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let dist = bigfloat_to_f64(&out[i].z.dist(&out[j].z, prec));
            if dist <= 2.0 * (out[i].radius + out[j].radius) {
                return None;
            }
        }
    }
    out.sort_by(|a, b| {
        let (ar, ai) = a.z.to_f64_pair();
        let (br, bi) = b.z.to_f64_pair();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
    Some(out)
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
    let den = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / den, (a.1 * b.0 - a.0 * b.1) / den)
}

fn cpow(z: (f64, f64), k: u32) -> (f64, f64) {
    let mut out = (1.0, 0.0);
    for _ in 0..k {
        out = cmul(out, z);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn matches_small_coefficient_roots() {
        // f^3(0): roots of T(T^3 + 2T^2 + T + 1) -- compare against the
        // coefficient-form finder
        let cfg = RunConfig::default();
        let dynr = iterate_roots(&q("0"), 2, IterateTarget { m: 3, sub: None }, &cfg).unwrap();
        let poly = crate::exact::iterate::iterate_poly(&q("0"), 2, 3, 4096)
            .unwrap()
            .squarefree_part();
        let coef = super::super::roots::roots(&poly, &cfg).unwrap();
        assert_eq!(dynr.len(), coef.len());
        for (a, b) in dynr.iter().zip(coef.iter()) {
            let (ar, ai) = a.z.to_f64_pair();
            let (br, bi) = b.z.to_f64_pair();
            assert!((ar - br).abs() < 1e-12 && (ai - bi).abs() < 1e-12);
        }
    }

    #[test]
    fn deep_iterate_is_fast_and_certified() {
        // degree 128: the coefficient route needs 512+ bits; the dynamical
        // route must handle it at base precision
        let cfg = RunConfig::default();
        let rs = iterate_roots(&q("1"), 2, IterateTarget { m: 8, sub: None }, &cfg).unwrap();
        assert_eq!(rs.len(), 128);
        for r in &rs {
            assert!(r.radius < 1e-12, "radius {}", r.radius);
        }
    }

    #[test]
    fn preperiodic_difference_roots() {
        // f^3(2) - f^1(2): known roots {-6, -2, -7, -3}
        let cfg = RunConfig::default();
        let rs = iterate_roots(&q("2"), 2, IterateTarget { m: 3, sub: Some(1) }, &cfg).unwrap();
        let got: Vec<f64> = rs.iter().map(|r| r.z.to_f64_pair().0).collect();
        for expect in [-7.0, -6.0, -3.0, -2.0] {
            assert!(got.iter().any(|g| (g - expect).abs() < 1e-12), "{expect} missing from {got:?}");
        }
    }

    #[test]
    fn multiplicity_falls_back() {
        // f^2(0) - f^0(0) = T^2 + T - 0 = ... take f^2(0) - f^1(0) = T^2,
        // a double root: the dynamical certificate must fail and the
        // fallback must return the single distinct root 0
        let cfg = RunConfig::default();
        let rs = iterate_roots(&q("0"), 2, IterateTarget { m: 2, sub: Some(1) }, &cfg).unwrap();
        assert_eq!(rs.len(), 1);
        let (re, im) = rs[0].z.to_f64_pair();
        assert!(re.abs() < 1e-20 && im.abs() < 1e-20);
    }
}

//! Escape-rate (Green's) function of the generalized Mandelbrot set at the
//! archimedean place, with certified enclosures.
//!
//! The underlying limit `g_a(t) = lim d^{-(k-1)} log^+ |f_t^k(a)|` has no
//! built-in stopping rule, so we derive one. Write `z_k = f_t^k(a)` and
//! `s_k = d^{-(k-1)} log |z_k|`. Once `|z_k|^d >= 2|t|` and the orbit has
//! passed the escape radius, `|z_{k+1}| / |z_k|^d` lies in `[1/2, 2]`, so the
//! partial values drift by at most `d^{-k} log 2` per step and the tail sums
//! geometrically. Orbits that stay below the uniform bound `8 max(|a|, 4)`
//! instead certify `g <= d^{-(k-1)} log(10 max(|a|, 4))`, mirroring the
//! perturbation bound for points near the set.
//!
//! All orbit arithmetic runs on complex rectangles with outward rounding, so
//! every comparison used by a certificate is a true statement about the exact
//! orbit. Precision escalates by doubling when rectangles grow too fat to
//! decide.

use astro_float::{BigFloat, RoundingMode};
use num_traits::Signed;

use crate::config::RunConfig;
use crate::error::Error;
use crate::exact::rational::{pow_u32, Rational};
use crate::exact::sab::{orbit_status, OrbitStatus};
use crate::num::cplx::{CBox, CPoint};
use crate::num::interval::{GreenValue, RInterval};
use crate::num::real::{bigfloat_from_rational, bigfloat_to_f64_up, bigfloat_to_rational, RealCtx};

const UP: RoundingMode = RoundingMode::Up;
const DOWN: RoundingMode = RoundingMode::Down;

/// `max(|a|, 4)` as an exact rational.
pub fn max_a4(a: &Rational) -> Rational {
    let four = Rational::from(num_bigint::BigInt::from(4));
    let abs = a.abs();
    if abs > four {
        abs
    } else {
        four
    }
}

/// Uniform orbit bound `8 max(|a|, 4)`: every parameter of the Mandelbrot
/// set keeps the whole orbit strictly below it.
pub fn orbit_bound(a: &Rational) -> Rational {
    Rational::from(num_bigint::BigInt::from(8)) * max_a4(a)
}

/// Parameter-space bound `4^d max(|a|, 4)^d`: the Mandelbrot set lives
/// inside this radius.
pub fn param_bound(a: &Rational, d: u32) -> Rational {
    pow_u32(&(Rational::from(num_bigint::BigInt::from(4)) * max_a4(a)), d)
}

/// Upper bound on `g_a(t)` once the orbit is known to sit at or below
/// `9 max(|a|,4)` at step `k` (with `|t| <= 4 max(|a|,4)^d`):
/// `d^-(k-1) * log(10 max(|a|,4))`.
fn inside_bound(a: &Rational, d: u32, k: u64, ctx: &mut RealCtx) -> BigFloat {
    let ten_max = Rational::from(num_bigint::BigInt::from(10)) * max_a4(a);
    let v = bigfloat_from_rational(&ten_max, ctx.prec, UP);
    let l = ctx.ln(&v, UP);
    let dk = BigFloat::from_u32(d, ctx.prec).powi(k.saturating_sub(1) as usize, ctx.prec, DOWN);
    l.div(&dk, ctx.prec, UP)
}

/// Membership classification for a parameter against `M_a`.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// Exact finite orbit detected over Q: the parameter is in the set and
    /// the Green's function vanishes identically.
    InsideCertified { tail: u32, period: u32 },
    /// Some certified statement excludes the parameter: either the parameter
    /// bound or the uniform orbit bound was crossed.
    OutsideCertified { at_step: u64 },
    /// The orbit stayed below the uniform bound for the whole budget; the
    /// Green's function is at most `green_upper`, but a later escape cannot
    /// be ruled out (no decidable membership test exists for such points).
    InsideBounded { green_upper: f64, steps: u64 },
}

enum Phase1 {
    Escaped { step: u64, z: CBox },
    Bounded { last_below: u64 },
    NeedsPrecision,
    Outgrown { step: u64 },
}

/// Iterates boxes until certified escape, certified boundedness through the
/// budget, or loss of precision. When `bounded_stop` is set, a contiguously
/// bounded orbit returns early at that step count (enough steps make the
/// inside bound smaller than any tolerance; waiting longer buys nothing).
fn orbit_scan(
    a: &Rational,
    d: u32,
    t: &CBox,
    n_max: u64,
    bounded_stop: Option<u64>,
    prec: usize,
    ctx: &mut RealCtx,
) -> Phase1 {
    let bound9 = {
        let b = Rational::from(num_bigint::BigInt::from(9)) * max_a4(a);
        bigfloat_from_rational(&b, prec, DOWN)
    };
    let bound8_hi = bigfloat_from_rational(&orbit_bound(a), prec, UP);
    // escape radius max(8 max(|a|,4), (2|t|)^(1/d)), rounded up
    let t_norm = t.norm(prec);
    let resc = {
        let two = BigFloat::from_i8(2, prec);
        let t2 = t_norm.hi.mul(&two, prec, UP);
        if t2.is_positive() {
            bound8_hi.max(&ctx.root_k(&t2, d, UP))
        } else {
            bound8_hi.clone()
        }
    };

    let zero = Rational::from(num_bigint::BigInt::from(0));
    let mut z = CBox::from_rational(a, &zero, prec).powi(d, prec).add(t, prec);
    let mut last_below = 0u64;
    let mut outgrown_at: Option<u64> = None;
    for k in 1..=n_max {
        let zn = z.norm(prec);
        if zn.lo.cmp(&resc).map(|c| c >= 0).unwrap_or(false) {
            return Phase1::Escaped { step: k, z };
        }
        if zn.hi.cmp(&bound9).map(|c| c <= 0).unwrap_or(false) {
            if last_below == k - 1 {
                last_below = k;
                if bounded_stop.is_some_and(|s| k >= s) {
                    return Phase1::Bounded { last_below };
                }
            }
        } else if zn.lo.cmp(&bound8_hi).map(|c| c > 0).unwrap_or(false) && outgrown_at.is_none() {
            outgrown_at = Some(k);
        }
        // box fattened beyond hope of a certificate
        let width = z.max_width(prec);
        let scale = zn.hi.max(&BigFloat::from_i8(1, prec));
        let rel = width.div(&scale, prec, UP);
        if rel.exponent().map(|e| e > -16).unwrap_or(true) && !width.is_zero() {
            return Phase1::NeedsPrecision;
        }
        z = z.powi(d, prec).add(t, prec);
    }
    if last_below == n_max {
        Phase1::Bounded { last_below }
    } else if let Some(step) = outgrown_at {
        Phase1::Outgrown { step }
    } else {
        Phase1::NeedsPrecision
    }
}

/// Certified enclosure of `g_a(t)` at the archimedean place, of width at
/// most `cfg.tol` whenever the orbit certifiably escapes; bounded orbits
/// return `[0, eps]` with the perturbation-shaped upper bound.
pub fn green_arch(a: &Rational, d: u32, t: &CPoint, cfg: &RunConfig) -> Result<GreenValue, Error> {
    assert!(d >= 2);
    assert!(cfg.tol > 0.0, "tolerance must be positive");

    // Exact shortcut: rational parameters with finite orbits have g = 0.
    if t.im.is_zero() {
        if let Some(tq) = bigfloat_to_rational(&t.re) {
            if rational_bits(&tq) <= 512 {
                if let OrbitStatus::Preperiodic { .. } = orbit_status(a, &tq, d, 2048) {
                    return Ok(GreenValue::zero());
                }
            }
        }
    }

    let mut prec = cfg.precision_bits;
    loop {
        match green_arch_at_precision(a, d, t, prec, cfg) {
            Ok(gv) => return Ok(gv),
            Err(Error::Undetermined { .. }) if prec * 2 <= cfg.max_precision_bits => {
                prec *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn rational_bits(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

fn green_arch_at_precision(
    a: &Rational,
    d: u32,
    t: &CPoint,
    prec: usize,
    cfg: &RunConfig,
) -> Result<GreenValue, Error> {
    let mut ctx = RealCtx::new(prec);
    let tb = CBox::point(t);
    // enough bounded steps to drive the inside bound below tol
    let ln_ten_max = crate::exact::rational::ln_f64_directed(
        &(Rational::from(num_bigint::BigInt::from(10)) * max_a4(a)),
        true,
    );
    let k_tol = 2 + ((ln_ten_max / cfg.tol).ln() / (d as f64).ln()).ceil().max(0.0) as u64;
    match orbit_scan(a, d, &tb, cfg.n_max, Some(k_tol.min(cfg.n_max)), prec, &mut ctx) {
        Phase1::Escaped { step, z } => {
            let gv = refine_escape(d, &tb, z, step, prec, cfg.tol, &mut ctx)?;
            Ok(gv.clamp_nonneg())
        }
        Phase1::Bounded { last_below } => {
            let eps = inside_bound(a, d, last_below, &mut ctx);
            Ok(GreenValue::new(0.0, bigfloat_to_f64_up(&eps)))
        }
        Phase1::Outgrown { step } => Err(Error::Undetermined { steps: step }),
        Phase1::NeedsPrecision => Err(Error::Undetermined { steps: 0 }),
    }
}

/// Upper bound on `exp(x)` that never feeds astro-float an argument whose
/// result exponent would leave the representable range. For very negative
/// arguments it returns the (valid) bound `2^-(prec+64)`.
fn exp_up_safe(x: &BigFloat, prec: usize, ctx: &mut RealCtx) -> BigFloat {
    let cutoff = -((prec as f64 + 64.0) * std::f64::consts::LN_2);
    if x.cmp(&BigFloat::from_f64(cutoff, prec)).map(|c| c <= 0).unwrap_or(false) {
        let mut tiny = BigFloat::from_i8(1, prec);
        tiny.set_exponent(-((prec as i64 + 64) as astro_float::Exponent) + 1);
        return tiny;
    }
    ctx.exp(x, UP)
}

/// After certified escape at `step`, tightens the enclosure of
/// `g = lim s_k`, `s_k = d^-(k-1) log |z_k|`.
///
/// Each step evaluates `s_k` fresh from the orbit box and bounds the
/// remaining tail by the geometric sum of `d^-j u` with
/// `u = -log(1 - |t|/|z_k|^d)` (the drift bound, valid from `k` on because
/// `|z|` only grows after escape). The orbit box keeps iterating while its
/// exponent has headroom; beyond that the recursion continues on `log|z|`
/// intervals, where by then the drift is far below any tolerance.
fn refine_escape(
    d: u32,
    t: &CBox,
    z: CBox,
    step: u64,
    prec: usize,
    tol: f64,
    ctx: &mut RealCtx,
) -> Result<GreenValue, Error> {
    let t_norm = t.norm(prec);
    let lt_hi = if t_norm.hi.is_positive() {
        Some(ctx.ln(&t_norm.hi, UP))
    } else {
        None
    };

    let mut k = step;
    let mut zbox = Some(z);
    let mut l = zbox.as_ref().unwrap().norm(prec).ln(ctx); // log |z_k| interval
    let d_big = BigFloat::from_u32(d, prec);
    let dm1 = BigFloat::from_u32(d - 1, prec);
    let tol_bf = BigFloat::from_f64(tol, prec);
    let one = BigFloat::from_i8(1, prec);
    let budget = 256 + (1.0 / tol).log2().ceil().max(0.0) as u64 * 4;
    // keep the box exponent clear of the i32 limit
    let exp_limit: i64 = 1 << 28;

    let mut dpow = RInterval::point(one.clone()); // d^(k-1), grown incrementally
    for _ in 1..step {
        dpow = RInterval {
            lo: dpow.lo.mul(&d_big, prec, DOWN),
            hi: dpow.hi.mul(&d_big, prec, UP),
        };
    }

    for _ in 0..budget {
        // x_bar >= |t| / |z_k|^d, rounded up
        let x_bar = match &lt_hi {
            None => BigFloat::from_i8(0, prec),
            Some(lt) => {
                let dl = d_big.mul(&l.lo, prec, DOWN);
                let e = lt.sub(&dl, prec, UP);
                exp_up_safe(&e, prec, ctx)
            }
        };
        // must stay below 1; the escape certificate keeps it near <= 1/2
        if x_bar.cmp(&BigFloat::from_f64(0.75, prec)).map(|c| c >= 0).unwrap_or(true) {
            return Err(Error::Undetermined { steps: k });
        }
        // per-step drift bound u = -ln(1 - x_bar) >= ln(1 + x_bar)
        let u = ctx.ln(&one.sub(&x_bar, prec, DOWN), DOWN).neg();
        // s_k = L / d^(k-1), tail = u * d^-(k-1) / (d-1)
        let s_lo = l.lo.div(&dpow.hi, prec, DOWN);
        let s_hi = l.hi.div(&dpow.lo, prec, UP);
        let tail = u.div(&dpow.lo, prec, UP).div(&dm1, prec, UP);
        let lo = s_lo.sub(&tail, prec, DOWN);
        let hi = s_hi.add(&tail, prec, UP);
        let width = hi.sub(&lo, prec, UP);
        if width.cmp(&tol_bf).map(|c| c <= 0).unwrap_or(false) {
            return Ok(RInterval { lo, hi }.to_green());
        }

        // advance the orbit
        let can_box = zbox
            .as_ref()
            .and_then(|zb| zb.norm(prec).hi.exponent())
            .map(|e| (e as i64) * (d as i64) < exp_limit)
            .unwrap_or(false);
        if can_box {
            let zb = zbox.take().unwrap();
            let znext = zb.powi(d, prec).add(t, prec);
            l = znext.norm(prec).ln(ctx);
            zbox = Some(znext);
        } else {
            // log-domain recursion: log|z_{k+1}| in d*L + [ln(1-x), ln(1+x)]
            zbox = None;
            let lo_next = {
                let base = d_big.mul(&l.lo, prec, DOWN);
                let corr = ctx.ln(&one.sub(&x_bar, prec, DOWN), DOWN);
                base.add(&corr, prec, DOWN)
            };
            let hi_next = {
                let base = d_big.mul(&l.hi, prec, UP);
                let corr = ctx.ln(&one.add(&x_bar, prec, UP), UP);
                base.add(&corr, prec, UP)
            };
            l = RInterval { lo: lo_next, hi: hi_next };
        }
        dpow = RInterval {
            lo: dpow.lo.mul(&d_big, prec, DOWN),
            hi: dpow.hi.mul(&d_big, prec, UP),
        };
        k += 1;
    }
    Err(Error::Undetermined { steps: k })
}

/// Membership test against the generalized Mandelbrot set.
///
/// Inside certification needs an exactly detected cycle (only possible for
/// rational data); outside certification uses the parameter bound or the
/// uniform orbit bound. Orbits that merely stay bounded through the budget
/// are reported as inside with a heuristic flag and a certified upper bound
/// on the Green's function.
pub fn member_m_a(a: &Rational, d: u32, t: &CPoint, cfg: &RunConfig) -> Result<Membership, Error> {
    let pbound = param_bound(a, d);

    if t.im.is_zero() {
        if let Some(tq) = bigfloat_to_rational(&t.re) {
            if rational_bits(&tq) <= 512 {
                if tq.abs() > pbound {
                    return Ok(Membership::OutsideCertified { at_step: 0 });
                }
                match orbit_status(a, &tq, d, cfg.n_max.min(1 << 16) as u32) {
                    OrbitStatus::Preperiodic { tail, period } => {
                        return Ok(Membership::InsideCertified { tail, period })
                    }
                    OrbitStatus::Escapes { at_step } => {
                        return Ok(Membership::OutsideCertified {
                            at_step: at_step as u64,
                        })
                    }
                    OrbitStatus::Unresolved => {}
                }
            }
        }
    }

    let mut prec = cfg.precision_bits;
    loop {
        let mut ctx = RealCtx::new(prec);
        let tb = CBox::point(t);
        let tn = tb.norm(prec);
        let pb = bigfloat_from_rational(&pbound, prec, UP);
        if tn.lo.cmp(&pb).map(|c| c > 0).unwrap_or(false) {
            return Ok(Membership::OutsideCertified { at_step: 0 });
        }
        match orbit_scan(a, d, &tb, cfg.n_max, None, prec, &mut ctx) {
            Phase1::Escaped { step, .. } | Phase1::Outgrown { step } => {
                return Ok(Membership::OutsideCertified { at_step: step });
            }
            Phase1::Bounded { last_below } => {
                let eps = inside_bound(a, d, last_below, &mut ctx);
                return Ok(Membership::InsideBounded {
                    green_upper: bigfloat_to_f64_up(&eps),
                    steps: last_below,
                });
            }
            Phase1::NeedsPrecision if prec * 2 <= cfg.max_precision_bits => {
                prec *= 2;
            }
            Phase1::NeedsPrecision => return Err(Error::Undetermined { steps: cfg.n_max }),
        }
    }
}

/// Fast approximate escape-time Green's function in plain `f64`, for plot
/// grids and interactive rendering. Returns 0.0 for orbits that stay below
/// the escape radius within `max_iter`. Not certified.
pub fn green_escape_f64(a: f64, d: u32, t_re: f64, t_im: f64, max_iter: u32) -> f64 {
    let max4 = a.abs().max(4.0);
    let t_abs = (t_re * t_re + t_im * t_im).sqrt();
    let resc = (8.0 * max4).max((2.0 * t_abs).powf(1.0 / d as f64));
    let resc_sq = resc * resc;
    let (mut zr, mut zi);
    {
        // z_1 = a^d + t
        let (mut wr, mut wi) = (a, 0.0f64);
        for _ in 1..d {
            let nr = wr * a;
            wi *= a;
            wr = nr;
        }
        zr = wr + t_re;
        zi = wi + t_im;
    }
    let mut scale = 1.0f64; // d^-(k-1)
    for _ in 1..=max_iter {
        let n2 = zr * zr + zi * zi;
        if !n2.is_finite() {
            return 0.0;
        }
        if n2 >= resc_sq {
            // a few more steps sharpen the limit before truncation
            let mut log_n = 0.5 * n2.ln();
            let mut s = scale;
            for _ in 0..12 {
                let (mut wr, mut wi) = (zr, zi);
                for _ in 1..d {
                    let nr = wr * zr - wi * zi;
                    wi = wr * zi + wi * zr;
                    wr = nr;
                }
                zr = wr + t_re;
                zi = wi + t_im;
                let m2 = zr * zr + zi * zi;
                if !m2.is_finite() || m2 <= 0.0 {
                    break;
                }
                s /= d as f64;
                log_n = 0.5 * m2.ln();
            }
            return (s * log_n).max(0.0);
        }
        let (mut wr, mut wi) = (zr, zi);
        for _ in 1..d {
            let nr = wr * zr - wi * zi;
            wi = wr * zi + wi * zr;
            wr = nr;
        }
        zr = wr + t_re;
        zi = wi + t_im;
        scale /= d as f64;
    }
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn huge_parameter_matches_log_t() {
        // |t| > 4^d max(|a|,4)^d: log|t| - 1 <= g <= log|t| + 1
        let t = CPoint::from_f64(1e6, 0.0, 128);
        let g = green_arch(&q("0"), 2, &t, &cfg()).unwrap();
        let log_t = 1e6f64.ln();
        assert!(g.lo >= log_t - 1.0 && g.hi <= log_t + 1.0, "{g:?}");
        assert!(g.width() <= cfg().tol);
    }

    #[test]
    fn finite_orbit_gives_exact_zero() {
        // t = -1: the 2-cycle 0 -> -1 -> 0
        let t = CPoint::from_f64(-1.0, 0.0, 128);
        let g = green_arch(&q("0"), 2, &t, &cfg()).unwrap();
        assert_eq!((g.lo, g.hi), (0.0, 0.0));
    }

    #[test]
    fn near_parabolic_parameter_agrees_with_deep_iteration() {
        // Oracle: 2^-60 log|f_t^61(0)| evaluated at 512 bits.
        let t_f = 0.2501f64;
        let prec = 512;
        let t = CPoint::from_f64(t_f, 0.0, prec);
        let mut z = t.clone(); // f^1(0) = t
        for _ in 1..61 {
            z = z.powi(2, prec).add(&t, prec);
        }
        let ln_abs = crate::num::real::bigfloat_to_f64(&z.abs(prec)).ln();
        let oracle = (ln_abs / 2f64.powi(60)).max(0.0);

        let g = green_arch(&q("0"), 2, &CPoint::from_f64(t_f, 0.0, 128), &cfg()).unwrap();
        assert!(
            g.lo - cfg().tol <= oracle && oracle <= g.hi + cfg().tol,
            "{g:?} vs {oracle}"
        );
    }

    #[test]
    fn capacity_normalization_along_large_radii() {
        // |g(t) - log|t|| <= 1 for |t| = 10^k, and the gap at 10^8 is tiny.
        for k in 4..=8 {
            let tv = 10f64.powi(k);
            let g = green_arch(&q("0"), 2, &CPoint::from_f64(tv, 0.0, 128), &cfg()).unwrap();
            assert!((g.mid() - tv.ln()).abs() <= 1.0, "k={k}");
            if k == 8 {
                let gap = (g.mid() - tv.ln()).abs();
                assert!(gap < 0.01, "gap at 1e8: {gap}");
            }
        }
    }

    #[test]
    fn member_examples() {
        let c = cfg();
        // t = -2: exact cycle 0 -> -2 -> 2 -> 2
        let m = member_m_a(&q("0"), 2, &CPoint::from_f64(-2.0, 0.0, 128), &c).unwrap();
        assert!(matches!(m, Membership::InsideCertified { .. }));
        // t = 1: escapes past 8*max(|a|,4) = 32
        let m = member_m_a(&q("0"), 2, &CPoint::from_f64(1.0, 0.0, 128), &c).unwrap();
        assert!(matches!(m, Membership::OutsideCertified { .. }));
        // t = 300 > 256: outside immediately by the parameter bound
        let m = member_m_a(&q("0"), 2, &CPoint::from_f64(300.0, 0.0, 128), &c).unwrap();
        assert_eq!(m, Membership::OutsideCertified { at_step: 0 });
        // an interior non-rational point: bounded flag with a green bound
        let m = member_m_a(&q("0"), 2, &CPoint::from_f64(-0.1234567891, 0.25, 128), &c).unwrap();
        assert!(matches!(m, Membership::InsideBounded { .. }), "{m:?}");
    }

    #[test]
    fn green_nonnegative_everywhere_sampled() {
        let c = cfg();
        for (re, im) in [(3.0, 0.0), (0.3, 0.8), (-1.9, 0.4), (2.0, 2.0)] {
            let g = green_arch(&q("1/2"), 2, &CPoint::from_f64(re, im, 128), &c).unwrap();
            assert!(g.lo >= 0.0);
        }
    }

    #[test]
    fn quick_f64_agrees_with_certified_on_escapes() {
        let c = cfg();
        for (re, im) in [(1.0, 0.5), (3.0, -2.0), (0.3, 1.1), (1e4, 0.0)] {
            let certified = green_arch(&q("0"), 2, &CPoint::from_f64(re, im, 128), &c).unwrap();
            let quick = green_escape_f64(0.0, 2, re, im, 2000);
            assert!(
                (quick - certified.mid()).abs() < 1e-6,
                "({re},{im}): quick {quick} certified {certified:?}"
            );
        }
    }

    #[test]
    fn d3_escape() {
        let c = cfg();
        let g = green_arch(&q("0"), 3, &CPoint::from_f64(2.0, 0.0, 128), &c).unwrap();
        let quick = green_escape_f64(0.0, 3, 2.0, 0.0, 2000);
        assert!((quick - g.mid()).abs() < 1e-6, "{quick} vs {g:?}");
        assert!(g.width() <= c.tol);
    }
}

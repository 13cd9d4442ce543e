//! Archimedean invariants: the scaling identity at iterate roots, the
//! perturbation bounds near the Mandelbrot set, and the exact integer
//! inequality backing the inside certificate.

use num_bigint::BigInt;
use unicrit_core::arch::{self, green_arch, member_m_a, Membership};
use unicrit_core::exact::iterate::iterate_poly;
use unicrit_core::exact::rational::{parse_rational, pow_u32, Rational};
use unicrit_core::num::cplx::CPoint;
use unicrit_core::RunConfig;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// At roots t of f_T^n(a), the marked-point escape rate rescales to the
/// critical one: g_a(t) = d^-n g_0(t).
#[test]
fn scaling_identity_at_iterate_roots() {
    let cfg = RunConfig::default();
    let a = q("1");
    let d = 2u32;
    let n = 4u32;
    let roots = arch::iterate_roots(
        &a,
        d,
        arch::IterateTarget { m: n, sub: None },
        &cfg,
    )
    .unwrap();
    assert_eq!(roots.len(), 8);
    let dn = (d as f64).powi(n as i32);
    let mut escaping = 0;
    for r in &roots {
        let ga = green_arch(&a, d, &r.z, &cfg).unwrap();
        let g0 = green_arch(&q("0"), d, &r.z, &cfg).unwrap();
        if g0.lo > 1e-6 {
            escaping += 1;
            // d^n * g_a must agree with g_0 within the interval tolerance
            // plus the root's own perturbation slack
            let scaled_lo = dn * ga.lo - 1e-6;
            let scaled_hi = dn * ga.hi + 1e-6;
            assert!(
                scaled_lo <= g0.hi && g0.lo <= scaled_hi,
                "root {:?}: d^n g_a = [{scaled_lo}, {scaled_hi}], g_0 = {g0:?}",
                r.z.to_f64_pair()
            );
        } else {
            // both vanish
            assert!(ga.hi <= 1e-6, "root {:?}: {ga:?}", r.z.to_f64_pair());
        }
    }
    assert!(escaping >= 2, "expected some escaping roots, got {escaping}");
}

/// Orbit perturbation bound, exact in Q: for t in M_a and |s - t| <= max4,
/// |f_s^n(a) - f_t^n(a)| <= |s - t| (18 max4)^(d^(n-1) - 1) for n <= 4.
#[test]
fn orbit_perturbation_bound_exact() {
    use num_traits::Signed;
    let cases = [
        ("0", "-1", 2u32),  // 2-cycle parameter
        ("0", "-2", 2),     // preperiodic parameter
        ("1", "0", 2),      // fixed point of the 1-orbit
    ];
    let deltas = ["1/7", "-3/2", "4", "2/3"];
    for (a_s, t_s, d) in cases {
        let a = q(a_s);
        let t = q(t_s);
        let max4 = {
            let four = Rational::from(BigInt::from(4));
            if a.abs() > four { a.abs() } else { four }
        };
        let base = Rational::from(BigInt::from(18)) * &max4;
        for delta_s in deltas {
            let delta = q(delta_s);
            if delta.abs() > max4 {
                continue;
            }
            let s = &t + &delta;
            let mut zs = a.clone();
            let mut zt = a.clone();
            for n in 1..=4u32 {
                zs = pow_u32(&zs, d) + &s;
                zt = pow_u32(&zt, d) + &t;
                let lhs = (&zs - &zt).abs();
                let expo = (d as u32).pow(n - 1) - 1;
                let rhs = delta.abs() * pow_u32(&base, expo);
                assert!(
                    lhs <= rhs,
                    "a={a_s} t={t_s} delta={delta_s} n={n}: {lhs} > {rhs}"
                );
            }
        }
    }
}

/// Green's value bound at prescribed distance from a member parameter:
/// |s - t| = (1/18)(18 max4)^(2 - d^(n-1)) forces
/// g_a(s) <= d^-(n-1) log(10 max4) + tol.
#[test]
fn green_bound_at_prescribed_distance() {
    let cfg = RunConfig::default();
    let a = q("0");
    let t = -1.0f64; // in M_0 (2-cycle)
    let max4 = 4.0f64;
    for n in 1..=4u32 {
        let dist = (18.0 * max4).powi(2 - 2f64.powi(n as i32 - 1) as i32) / 18.0;
        let s = CPoint::from_f64(t + dist, 0.0, 128);
        let g = green_arch(&a, 2, &s, &cfg).unwrap();
        let bound = (10.0 * max4).ln() / 2f64.powi(n as i32 - 1) + cfg.tol;
        assert!(
            g.hi <= bound,
            "n={n}, dist={dist:e}: g.hi={} > {bound}",
            g.hi
        );
    }
}

/// Exact integer check: p(z) = z^d + 4 satisfies p^n(9) <= 10^(d^n)
/// for n <= 5, d <= 4.
#[test]
fn iterated_bound_certificate_exact() {
    for d in 2u32..=4 {
        let mut z = BigInt::from(9);
        for n in 1..=5u32 {
            z = z.pow(d) + BigInt::from(4);
            let bound = BigInt::from(10).pow(d.pow(n));
            assert!(z <= bound, "d={d} n={n}");
        }
    }
}

/// Membership stays consistent with the certified green value.
#[test]
fn membership_and_green_agree() {
    let cfg = RunConfig::default();
    let samples = [(-1.2f64, 0.2f64), (0.3, 0.02), (-2.0, 0.0), (0.26, 0.0)];
    for (re, im) in samples {
        let t = CPoint::from_f64(re, im, 128);
        let m = member_m_a(&q("0"), 2, &t, &cfg).unwrap();
        let g = green_arch(&q("0"), 2, &t, &cfg).unwrap();
        match m {
            Membership::InsideCertified { .. } => assert_eq!(g.hi, 0.0),
            Membership::InsideBounded { green_upper, .. } => {
                assert!(g.hi <= green_upper + cfg.tol)
            }
            Membership::OutsideCertified { .. } => {
                assert!(g.hi > 0.0, "({re},{im}): outside but g = {g:?}")
            }
        }
    }
}

/// The approximate f64 field agrees with certified values away from the
/// boundary (a plotting aid, not a certificate).
#[test]
fn fast_field_tracks_certified_values() {
    let cfg = RunConfig::default();
    let a = q("1/2");
    for (re, im) in [(2.5, 1.0), (-3.0, 0.5), (0.0, 3.0)] {
        let g = green_arch(&a, 2, &CPoint::from_f64(re, im, 128), &cfg).unwrap();
        let quick = arch::green_escape_f64(0.5, 2, re, im, 2000);
        assert!((quick - g.mid()).abs() < 1e-6, "({re},{im})");
    }
}

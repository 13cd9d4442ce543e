//! `unicrit`: exact and certified computations for the family `z^d + t`.
//!
//! Every report is emitted as a stable JSON envelope
//! `{"inputs", "result", "certified", "flags"}` (or plain text / CSV where
//! that makes sense). Exit codes: 0 for success including `verified` and
//! `consistent` verdicts, 2 when a check reports `violated`, 1 for errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use unicrit_core::adelic;
use unicrit_core::arch;
use unicrit_core::exact::rational::{parse_rational, Rational};
use unicrit_core::exact::sab::find_common_preperiodic;
use unicrit_core::harness::{self, Verdict};
use unicrit_core::nonarch;
use unicrit_core::num::cplx::CPoint;
use unicrit_core::RunConfig;

mod output;
use output::{emit, Envelope, Format};

#[derive(Parser)]
#[command(name = "unicrit", version, about = "arithmetic dynamics of z^d + t: iterates, Mandelbrot membership, Green's functions, heights, and pairing bounds")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Working precision in bits
    #[arg(long, global = true, env = "UNICRIT_PRECISION", default_value_t = 128)]
    precision: usize,

    /// Orbit iteration budget
    #[arg(long, global = true, env = "UNICRIT_NMAX", default_value_t = 4096)]
    nmax: u64,

    /// Cap on constructed polynomial degrees
    #[arg(long, global = true, env = "UNICRIT_DEGREE_CAP", default_value_t = 4096)]
    degree_cap: u64,

    /// Target width for certified enclosures (natural log units)
    #[arg(long, global = true, env = "UNICRIT_TOL", default_value_t = 1e-9)]
    tol: f64,

    /// Output format
    #[arg(long, global = true, env = "UNICRIT_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for grid sweeps (output is order-canonical either way)
    #[arg(long, global = true, env = "UNICRIT_JOBS", default_value_t = 1)]
    jobs: usize,

    /// Seed for deterministic perturbations in the root finder
    #[arg(long, global = true, env = "UNICRIT_SEED", default_value_t = 0)]
    seed: u64,

    /// Equidistribution depth for the archimedean pairing estimator
    #[arg(long, global = true, env = "UNICRIT_NARCH", default_value_t = 6)]
    n_arch: u32,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            precision_bits: self.precision,
            max_precision_bits: self.precision.max(1024),
            n_max: self.nmax,
            degree_cap: self.degree_cap,
            tol: self.tol,
            n_arch: self.n_arch,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the iterate polynomial f_T^n(a)
    Iterate { a: String, d: u32, n: u32 },

    /// Search for parameters where both points are simultaneously preperiodic
    #[command(name = "find-sab")]
    FindSab { a: String, b: String, d: u32, index_bound: u32 },

    /// Green's function of the generalized Mandelbrot set at one parameter
    Green {
        /// Archimedean place
        #[arg(long, conflicts_with = "prime")]
        arch: bool,
        /// p-adic place
        #[arg(long)]
        prime: Option<u64>,
        a: String,
        d: u32,
        /// Parameter t: rational `p/q`, decimal, or `re,im` for --arch
        t: String,
    },

    /// Verify the explicit disk covers of the Mandelbrot set
    #[command(name = "cover-check")]
    CoverCheck { a: String, d: u32, n_test: u32 },

    /// Newton polygon and p-adic root structure of f_T^n(a)
    Newton { a: String, d: u32, p: u64, n: u32 },

    /// Logarithmic Weil height of one point or a pair
    Height { x: String, y: Option<String> },

    /// Exact product-formula residual for a nonzero rational
    #[command(name = "product-formula")]
    ProductFormula { x: String },

    /// Global Arakelov-Zhang pairing report
    Pairing { a: String, b: String, d: u32 },

    /// Check one of the pairing-height inequalities
    Verify {
        /// Which inequality: thm1.2, thm1.3, or thm4.13
        theorem: String,
        /// `a b d` for one pair, or just `d` together with --grid
        args: Vec<String>,
        /// Epsilon for thm1.2
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Index bound for the parameter-set search backing thm1.2
        #[arg(long, default_value_t = 3)]
        index_bound: u32,
        /// Grid of pairs "a1,b1;a2,b2;..." checked in order
        #[arg(long)]
        grid: Option<String>,
    },

    /// Explore the uniform positivity of the pairing over a grid
    Explore {
        /// Only `thm1.4` is recognized
        target: String,
        d: u32,
        /// Grid of pairs "a1,b1;a2,b2;..."
        #[arg(long)]
        grid: String,
    },

    /// Conditional uniform bound C(d) from the proof constants
    #[command(name = "bound-cd")]
    BoundCd { d: u32, eps: f64, delta: f64 },

    /// CSV field of Green's values over a window (re, im, g)
    #[command(name = "grid-green")]
    GridGreen {
        a: String,
        d: u32,
        /// Window "re0,im0,re1,im1"
        #[arg(long)]
        window: String,
        /// Grid step
        #[arg(long)]
        step: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = cli.run.config();
    let format = cli.run.format;
    if cli.run.jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.run.jobs)
            .build_global()
            .ok();
    }

    match cli.command {
        Command::Iterate { a, d, n } => {
            let a = parse_rational(&a)?;
            let p = unicrit_core::exact::iterate::iterate_poly(&a, d, n, cfg.degree_cap)?;
            let env = Envelope {
                inputs: json!({"a": a.to_string(), "d": d, "n": n}),
                result: json!({
                    "polynomial": p.to_string(),
                    "degree": p.deg(),
                    "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
                certified: true,
                flags: vec!["exact".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::FindSab { a, b, d, index_bound } => {
            let a = parse_rational(&a)?;
            let b = parse_rational(&b)?;
            let s = find_common_preperiodic(&a, &b, d, index_bound, cfg.degree_cap)?;
            let env = Envelope {
                inputs: json!({"a": a.to_string(), "b": b.to_string(), "d": d, "index_bound": index_bound}),
                result: json!({
                    "factors": s.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "factor_degrees": s.factors.iter().map(|f| f.deg()).collect::<Vec<_>>(),
                    "total_count": s.total_count,
                    "count_is_lower_bound": true,
                }),
                certified: true,
                flags: vec!["exact".into(), "lower bound for the full parameter set".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::Green { arch: is_arch, prime, a, d, t } => {
            let a = parse_rational(&a)?;
            match (is_arch, prime) {
                (false, Some(p)) => {
                    let t = parse_rational(&t)?;
                    let g = nonarch::green_nonarch(&a, d, p, &t, cfg.n_max)?;
                    let gv = g.to_green_value();
                    let env = Envelope {
                        inputs: json!({"a": a.to_string(), "d": d, "prime": p, "t": t.to_string()}),
                        result: json!({
                            "exponent_lo": g.exponent_lo.to_string(),
                            "exponent_hi": g.exponent_hi.to_string(),
                            "log_units_of": format!("log {p}"),
                            "value_lo": gv.lo,
                            "value_hi": gv.hi,
                            "exact": g.is_exact(),
                        }),
                        certified: true,
                        flags: if g.is_exact() { vec!["closed form".into()] } else { vec!["bracket on the critical circle".into()] },
                    };
                    emit(&env, format);
                    Ok(0)
                }
                (_, None) => {
                    let (re, im) = parse_complex(&t)?;
                    let tp = CPoint::from_rational(&re, &im, cfg.precision_bits);
                    let g = arch::green_arch(&a, d, &tp, &cfg)?;
                    let env = Envelope {
                        inputs: json!({"a": a.to_string(), "d": d, "t": t}),
                        result: json!({"lo": g.lo, "hi": g.hi, "width": g.width()}),
                        certified: true,
                        flags: vec!["certified enclosure".into()],
                    };
                    emit(&env, format);
                    Ok(0)
                }
                (true, Some(_)) => bail!("choose one of --arch or --prime"),
            }
        }
        Command::CoverCheck { a, d, n_test } => {
            let a = parse_rational(&a)?;
            let report = if d == 2 {
                arch::cover::cover_check_d2(&a, n_test, &cfg)?
            } else {
                arch::cover::cover_check_dgt2(&a, d, n_test, &cfg)?
            };
            let pass = report.pass;
            let env = Envelope {
                inputs: json!({"a": a.to_string(), "d": d, "n_test": n_test}),
                result: serde_json::to_value(&report)?,
                certified: pass,
                flags: if pass { vec!["all checks pass".into()] } else { vec!["counterexamples recorded".into()] },
            };
            emit(&env, format);
            Ok(if pass { 0 } else { 2 })
        }
        Command::Newton { a, d, p, n } => {
            let a = parse_rational(&a)?;
            let report = nonarch::newton_root_structure(&a, d, p, n, &cfg)?;
            let pass = report.pass;
            let env = Envelope {
                inputs: json!({"a": a.to_string(), "d": d, "p": p, "n": n}),
                result: serde_json::to_value(&report)?,
                certified: true,
                flags: vec!["exact exponent arithmetic".into()],
            };
            emit(&env, format);
            Ok(if pass { 0 } else { 2 })
        }
        Command::Height { x, y } => {
            let xq = parse_rational(&x)?;
            let (h, inputs) = match y {
                Some(y) => {
                    let yq = parse_rational(&y)?;
                    (
                        adelic::weil_height_pair(&xq, &yq),
                        json!({"a": xq.to_string(), "b": yq.to_string()}),
                    )
                }
                None => (adelic::weil_height_single(&xq), json!({"x": xq.to_string()})),
            };
            let env = Envelope {
                inputs,
                result: json!({"h": h.value, "exact": format!("log({})", h.exact)}),
                certified: true,
                flags: vec!["exact as the log of a rational".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::ProductFormula { x } => {
            let xq = parse_rational(&x)?;
            let residual = adelic::product_formula_check(&xq)?;
            let env = Envelope {
                inputs: json!({"x": xq.to_string()}),
                result: json!({"residual": residual.to_string()}),
                certified: true,
                flags: vec!["exact".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::Pairing { a, b, d } => {
            let a = parse_rational(&a)?;
            let b = parse_rational(&b)?;
            let r = adelic::pairing_global(&a, &b, d, &cfg)?;
            let env = Envelope {
                inputs: json!({"a": a.to_string(), "b": b.to_string(), "d": d}),
                result: serde_json::to_value(&r)?,
                certified: false,
                flags: r.flags.clone(),
            };
            emit(&env, format);
            Ok(0)
        }
        Command::Verify { theorem, args, eps, index_bound, grid } => {
            let (pairs, d) = match (&grid, args.as_slice()) {
                (Some(g), [d]) => (parse_grid(g)?, d.parse::<u32>().context("d must be an integer")?),
                (None, [a, b, d]) => (
                    vec![(parse_rational(a)?, parse_rational(b)?)],
                    d.parse::<u32>().context("d must be an integer")?,
                ),
                _ => bail!("usage: verify <theorem> <a> <b> <d>, or verify <theorem> <d> --grid \"a,b;...\""),
            };
            let verdicts = run_verify(&theorem, &pairs, d, eps, index_bound, &cfg, cli.run.jobs)?;
            let worst = verdicts
                .iter()
                .map(|v| v.verdict)
                .fold(Verdict::Verified, |acc, v| match (acc, v) {
                    (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
                    (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                    (Verdict::Consistent, _) | (_, Verdict::Consistent) => Verdict::Consistent,
                    _ => Verdict::Verified,
                });
            let env = Envelope {
                inputs: json!({
                    "theorem": theorem,
                    "d": d,
                    "eps": eps,
                    "index_bound": index_bound,
                    "pairs": pairs.iter().map(|(a, b)| format!("{a},{b}")).collect::<Vec<_>>(),
                }),
                result: json!({
                    "verdicts": verdicts.iter().map(|v| serde_json::to_value(v).unwrap()).collect::<Vec<_>>(),
                    "worst": serde_json::to_value(worst).unwrap(),
                }),
                certified: verdicts.iter().all(|v| v.verdict == Verdict::Verified),
                flags: vec!["violated requires fully certified arithmetic; estimators yield at most consistent".into()],
            };
            emit(&env, format);
            Ok(match worst {
                Verdict::Violated => 2,
                _ => 0,
            })
        }
        Command::Explore { target, d, grid } => {
            if target != "thm1.4" {
                bail!("unknown exploration target {target:?} (expected thm1.4)");
            }
            let pairs = parse_grid(&grid)?;
            let e = harness::explore_uniform_lower(d, &pairs, &cfg)?;
            let env = Envelope {
                inputs: json!({"d": d, "pairs": pairs.len()}),
                result: serde_json::to_value(&e)?,
                certified: false,
                flags: vec!["exploratory: the uniform constant is not effective".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::BoundCd { d, eps, delta } => {
            let c = harness::bound_c_d(d, eps, delta)?;
            let env = Envelope {
                inputs: json!({"d": d, "eps": eps, "delta_hypothesis": delta}),
                result: json!({"bound": c, "conditional_on": format!("pairing >= {delta} whenever positive")}),
                certified: false,
                flags: vec!["conditional on the uniform positivity hypothesis".into()],
            };
            emit(&env, format);
            Ok(0)
        }
        Command::GridGreen { a, d, window, step } => {
            let a = parse_rational(&a)?;
            grid_green(&a, d, &window, step, &cfg, cli.run.jobs)
        }
    }
}

fn run_verify(
    theorem: &str,
    pairs: &[(Rational, Rational)],
    d: u32,
    eps: f64,
    index_bound: u32,
    cfg: &RunConfig,
    jobs: usize,
) -> Result<Vec<harness::TheoremVerdict>> {
    use rayon::prelude::*;
    let check = |(a, b): &(Rational, Rational)| -> Result<harness::TheoremVerdict> {
        match theorem {
            "thm1.2" => {
                let s = find_common_preperiodic(a, b, d, index_bound, cfg.degree_cap)?;
                if s.total_count == 0 {
                    bail!("no simultaneously preperiodic parameters found up to M={index_bound}; increase --index-bound");
                }
                Ok(harness::verify_thm_upper(a, b, d, eps, &s, cfg)?)
            }
            "thm1.3" => Ok(harness::verify_thm_height_lower(a, b, d, cfg)?),
            "thm4.13" => Ok(harness::verify_thm_power_difference(a, b, d, cfg)?),
            other => bail!("unknown theorem {other:?} (expected thm1.2, thm1.3, or thm4.13)"),
        }
    };
    if jobs > 1 {
        pairs.par_iter().map(check).collect()
    } else {
        pairs.iter().map(check).collect()
    }
}

fn grid_green(a: &Rational, d: u32, window: &str, step: f64, cfg: &RunConfig, jobs: usize) -> Result<i32> {
    use rayon::prelude::*;
    let parts: Vec<f64> = window
        .split(',')
        .map(|s| s.trim().parse::<f64>().context("window must be re0,im0,re1,im1"))
        .collect::<Result<_>>()?;
    if parts.len() != 4 {
        bail!("window must be re0,im0,re1,im1");
    }
    if !(step > 0.0) {
        bail!("step must be positive");
    }
    let (re0, im0, re1, im1) = (parts[0], parts[1], parts[2], parts[3]);
    let nx = ((re1 - re0) / step).floor() as i64 + 1;
    let ny = ((im1 - im0) / step).floor() as i64 + 1;
    if nx <= 0 || ny <= 0 {
        bail!("empty window");
    }
    let points: Vec<(i64, i64)> = (0..ny).flat_map(|j| (0..nx).map(move |i| (i, j))).collect();
    let eval = |&(i, j): &(i64, i64)| -> (i64, i64, f64) {
        let re = re0 + i as f64 * step;
        let im = im0 + j as f64 * step;
        let t = CPoint::from_f64(re, im, cfg.precision_bits);
        let g = match arch::green_arch(a, d, &t, cfg) {
            Ok(gv) => gv.mid(),
            // plot fallback: uncertified escape-time value
            Err(_) => arch::green_escape_f64(
                unicrit_core::exact::rational::to_f64_approx(a),
                d,
                re,
                im,
                cfg.n_max.min(1 << 20) as u32,
            ),
        };
        (i, j, g)
    };
    let mut rows: Vec<(i64, i64, f64)> = if jobs > 1 {
        points.par_iter().map(eval).collect()
    } else {
        points.iter().map(eval).collect()
    };
    rows.sort_by_key(|&(i, j, _)| (j, i));
    let mut out = String::from("re,im,g\n");
    for (i, j, g) in rows {
        let re = re0 + i as f64 * step;
        let im = im0 + j as f64 * step;
        out.push_str(&format!("{re},{im},{g}\n"));
    }
    print!("{out}");
    Ok(0)
}

fn parse_grid(grid: &str) -> Result<Vec<(Rational, Rational)>> {
    grid.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| anyhow!("grid entries are a,b pairs separated by ';'"))?;
            Ok((parse_rational(a.trim())?, parse_rational(b.trim())?))
        })
        .collect()
}

fn parse_complex(t: &str) -> Result<(Rational, Rational)> {
    match t.split_once(',') {
        Some((re, im)) => Ok((parse_rational(re.trim())?, parse_rational(im.trim())?)),
        None => Ok((parse_rational(t.trim())?, Rational::new(0.into(), 1.into()))),
    }
}

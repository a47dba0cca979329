//! Command-line front end: `roots`, `count-nh`, `divisors`, `bernoulli`,
//! `plf`, `newton`, `bound` and `verify`.
//!
//! Exit codes: 0 on success, 1 when a checked inequality fails, 2 on usage or
//! input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bernoulli::bernoulli_poly;
use crate::bounds::{build_params, dimension_bound};
use crate::counting::{count_nh, truncation_divisors, ElemDivSeq};
use crate::error::Error;
use crate::harness::{gen_instance, standard_alphas, verify_chain, verify_corollary};
use crate::newton::{check_polygon_lower_bound, newton_polygon, slope_le_dimension, IntegerMatrix};
use crate::plf::{f_infinity, f_infinity_star, f_r, PiecewiseLinear, PlfJson};
use crate::rational::{parse_rational, to_fraction, Rational};
use crate::rootsys::RootSystem;

/// Environment variable consulted for `verify --seed` when the flag is absent.
pub const SEED_ENV: &str = "SLOPE_BOUND_SEED";

#[derive(Debug, Parser)]
#[command(name = "slope-bound", version, about = "Exact slope bounds for p-adic Newton polygons")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive-root count and height multiset of a Dynkin type.
    Roots {
        #[arg(value_parser = parse_system)]
        label: RootSystem,
    },
    /// Counting function N_0..N_H.
    CountNh {
        #[arg(value_parser = parse_system)]
        label: RootSystem,
        #[arg(long = "max-h")]
        max_h: usize,
    },
    /// Elementary-divisor exponents of the truncated bounding module.
    Divisors {
        #[arg(value_parser = parse_system)]
        label: RootSystem,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
    },
    /// Bernoulli polynomial coefficients, or its value at a point.
    Bernoulli {
        #[arg(long)]
        s: u32,
        #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
        eval: Option<Rational>,
    },
    /// Breakpoints of f_inf, f_inf* or f_r.
    Plf {
        kind: PlfKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jmax: Option<u64>,
    },
    /// Newton polygon of an integer matrix read from a file.
    Newton {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_parser = parse_fraction)]
        alpha: Option<Rational>,
        /// Lower bound to check, in piecewise-linear JSON form.
        #[arg(long)]
        bound: Option<PathBuf>,
    },
    /// Constants M, m, n and the dimension bound at a slope.
    Bound {
        #[arg(long = "type", value_parser = parse_system)]
        system: RootSystem,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
        #[arg(long, value_parser = parse_fraction)]
        alpha: Rational,
    },
    /// Run seeded synthetic instances through the chain or the dimension bound.
    Verify {
        mode: VerifyMode,
        #[arg(long = "type", value_parser = parse_system)]
        system: RootSystem,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Exponents b_1 ≥ b_2 ≥ …, comma separated; empty for none.
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Base seed; trial i uses seed + i. Falls back to $SLOPE_BOUND_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Slope for `corollary`; defaults to checking 0, 1/2, 1, 2 and M(s).
        #[arg(long, value_parser = parse_fraction)]
        alpha: Option<Rational>,
        #[arg(long = "entry-bound", default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        entry_bound: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlfKind {
    Finf,
    Finfstar,
    Fr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Chain,
    Corollary,
}

fn parse_system(s: &str) -> Result<RootSystem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_fraction(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_b(text: &str) -> Result<ElemDivSeq, Error> {
    let exps = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::Parse(format!("`{s}` is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ElemDivSeq::new(exps)
}

fn frac(q: &Rational) -> Value {
    Value::String(to_fraction(q))
}

fn big_number(n: impl ToString) -> Value {
    Value::Number(n.to_string().parse().expect("decimal integer"))
}

enum Outcome {
    Ok,
    Failed,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    match execute(&cli, env_seed.as_deref(), out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, env_seed: Option<&str>, out: &mut dyn Write) -> Result<Outcome, Error> {
    let json = cli.json;
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match &cli.command {
        Command::Roots { label } => {
            if json {
                let v = json!({
                    "label": label.label(),
                    "rank": label.rank(),
                    "s": label.s(),
                    "heights": label.heights(),
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "s={} heights={}", label.s(), list(label.heights())).map_err(io)?;
            }
        }
        Command::CountNh { label, max_h } => {
            let table = count_nh(label, *max_h);
            if json {
                let v = json!({
                    "label": label.label(),
                    "max_h": max_h,
                    "values": table.values.iter().map(big_number).collect::<Vec<_>>(),
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "N={}", list(&table.values)).map_err(io)?;
            }
        }
        Command::Divisors { label, g, r } => {
            let seq = truncation_divisors(label, *g, *r)?;
            if json {
                let v = json!({
                    "label": label.label(),
                    "g": g,
                    "r": r,
                    "exponents": seq.exponents(),
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "exponents={} length={}", list(seq.exponents()), seq.len())
                    .map_err(io)?;
            }
        }
        Command::Bernoulli { s, eval } => {
            let poly = bernoulli_poly(*s);
            let coeffs: Vec<String> = poly.coeffs().iter().map(to_fraction).collect();
            let value = eval.as_ref().map(|x| poly.eval(x));
            if json {
                let v = json!({
                    "s": s,
                    "coefficients": coeffs,
                    "at": eval.as_ref().map(frac),
                    "value": value.as_ref().map(frac),
                });
                writeln!(out, "{v}").map_err(io)?;
            } else if let (Some(x), Some(value)) = (eval, value) {
                writeln!(out, "B_{s}({})={}", to_fraction(x), to_fraction(&value)).map_err(io)?;
            } else {
                writeln!(out, "coefficients={}", list(&coeffs)).map_err(io)?;
            }
        }
        Command::Plf {
            kind,
            s,
            g,
            r,
            jmax,
        } => {
            let f = match (kind, r, jmax) {
                (PlfKind::Fr, Some(r), _) => f_r(*s, *g, *r),
                (PlfKind::Finf, _, Some(j)) => f_infinity(*s, *g, *j),
                (PlfKind::Finfstar, _, Some(j)) => f_infinity_star(*s, *g, *j),
                (PlfKind::Fr, None, _) => {
                    return Err(Error::Parse("`plf fr` requires --r".into()))
                }
                (_, _, None) => return Err(Error::Parse("this function requires --jmax".into())),
            };
            write_plf(out, &f, json).map_err(io)?;
        }
        Command::Newton {
            p,
            matrix,
            alpha,
            bound,
        } => {
            let text = std::fs::read_to_string(matrix)
                .map_err(|e| Error::Parse(format!("{}: {e}", matrix.display())))?;
            let m: IntegerMatrix = text.parse()?;
            let coeffs = m.char_poly();
            let np = newton_polygon(&coeffs, *p)?;
            let dim = alpha.as_ref().map(|a| slope_le_dimension(&np, a));
            let check = match bound {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let parsed: PlfJson = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let f = PiecewiseLinear::from_json(&parsed)?;
                    Some(check_polygon_lower_bound(&np, m.dim(), &f)?)
                }
                None => None,
            };
            let slopes: Vec<(String, usize)> = np
                .slopes()
                .iter()
                .map(|(s, n)| (to_fraction(s), *n))
                .collect();
            if json {
                let v = json!({
                    "p": p,
                    "t": m.dim(),
                    "char_poly": coeffs.iter().map(big_number).collect::<Vec<_>>(),
                    "slopes": slopes.iter().map(|(s, n)| json!({"slope": s, "multiplicity": n})).collect::<Vec<_>>(),
                    "finite_length": np.finite_length(),
                    "infinite_slopes": np.infinite_slopes(),
                    "polygon": np.polygon().to_json(),
                    "alpha": alpha.as_ref().map(frac),
                    "slope_le_dimension": dim,
                    "dominates_bound": check,
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "char_poly={}", list(&coeffs)).map_err(io)?;
                let shown: Vec<String> = slopes.iter().map(|(s, n)| format!("{s}x{n}")).collect();
                writeln!(out, "slopes={}", list(&shown)).map_err(io)?;
                writeln!(
                    out,
                    "finite_length={} infinite_slopes={}",
                    np.finite_length(),
                    np.infinite_slopes()
                )
                .map_err(io)?;
                if let (Some(a), Some(d)) = (alpha, dim) {
                    writeln!(out, "slope_le_dimension({})={d}", to_fraction(a)).map_err(io)?;
                }
                if let Some(ok) = check {
                    writeln!(out, "dominates_bound={ok}").map_err(io)?;
                }
            }
            if check == Some(false) {
                return Ok(Outcome::Failed);
            }
        }
        Command::Bound { system, g, alpha } => {
            if alpha < &Rational::from_integer(0.into()) {
                return Err(Error::OutOfDomain(format!("alpha = {alpha} must be non-negative")));
            }
            let params = build_params(system.s() as u32, *g);
            let b = dimension_bound(&params, alpha);
            if json {
                let v = json!({
                    "type": system.label(),
                    "params": params,
                    "bound": b,
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                write!(
                    out,
                    "s={} g={} M={} m={} n={} x_M={} c^s={} alpha={} bound={} infimum={}",
                    params.s,
                    params.g,
                    params.threshold,
                    params.m,
                    params.n,
                    params.x_m,
                    params.c_pow_s,
                    b.alpha,
                    b.bound,
                    b.infimum
                )
                .map_err(io)?;
                if let Some(sharp) = &b.sharp {
                    write!(out, " sharp={sharp}").map_err(io)?;
                }
                writeln!(out).map_err(io)?;
            }
        }
        Command::Verify {
            mode,
            system,
            g,
            p,
            t,
            r,
            b,
            trials,
            seed,
            alpha,
            entry_bound,
        } => {
            let base_seed = match (seed, env_seed) {
                (Some(s), _) => *s,
                (None, Some(text)) => text.trim().parse().map_err(|_| {
                    Error::Parse(format!("{SEED_ENV}=`{text}` is not a 64-bit seed"))
                })?,
                (None, None) => 0,
            };
            let b_seq = parse_b(b)?;
            let alphas = match alpha {
                Some(a) => vec![a.clone()],
                None => standard_alphas(system.s() as u32),
            };
            let mut results = Vec::new();
            let mut first_failure: Option<Value> = None;
            let mut passed = 0u64;
            for i in 0..*trials {
                let trial_seed = base_seed.wrapping_add(i);
                let inst = gen_instance(trial_seed, *p, *t as usize, *r, b_seq.clone(), *entry_bound)?;
                let (ok, detail) = match mode {
                    VerifyMode::Chain => {
                        let rep = verify_chain(&inst, system, *g)?;
                        (rep.all_hold(), serde_json::to_value(&rep).expect("serializable"))
                    }
                    VerifyMode::Corollary => {
                        let reps = alphas
                            .iter()
                            .map(|a| verify_corollary(&inst, system, *g, a))
                            .collect::<Result<Vec<_>, _>>()?;
                        let ok = reps.iter().all(|r| r.all_hold());
                        (ok, serde_json::to_value(&reps).expect("serializable"))
                    }
                };
                if ok {
                    passed += 1;
                } else if first_failure.is_none() {
                    first_failure = Some(json!({
                        "seed": trial_seed,
                        "matrix": inst.matrix.rows().map(|row| row.iter().map(big_number).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "report": detail.clone(),
                    }));
                }
                results.push(json!({"seed": trial_seed, "holds": ok, "report": detail}));
            }
            let all_hold = passed == *trials;
            if json {
                let v = json!({
                    "mode": match mode { VerifyMode::Chain => "chain", VerifyMode::Corollary => "corollary" },
                    "type": system.label(),
                    "g": g, "p": p, "t": t, "r": r,
                    "b": b_seq.exponents(),
                    "seed": base_seed,
                    "trials": trials,
                    "passed": passed,
                    "all_hold": all_hold,
                    "results": results,
                    "first_counterexample": first_failure,
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{} {}: {passed}/{trials} trials hold (seed {base_seed})",
                    match mode {
                        VerifyMode::Chain => "chain",
                        VerifyMode::Corollary => "corollary",
                    },
                    system.label()
                )
                .map_err(io)?;
                if let Some(fail) = &first_failure {
                    writeln!(out, "first counterexample: {fail}").map_err(io)?;
                }
            }
            if !all_hold {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn write_plf(out: &mut dyn Write, f: &PiecewiseLinear, json: bool) -> std::io::Result<()> {
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&f.to_json()).expect("serializable")
        )
    } else {
        let pts: Vec<String> = f
            .breakpoints()
            .iter()
            .map(|(x, y)| format!("({},{})", to_fraction(x), to_fraction(y)))
            .collect();
        let ray = f
            .final_slope()
            .map(to_fraction)
            .unwrap_or_else(|| "none".into());
        writeln!(out, "breakpoints={} final_slope={ray}", list(&pts))
    }
}

fn list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

//! `vnum` — exact computations on monomial ideals from the command line:
//! stable primes, v-numbers and v-functions, socle components, Rees map
//! descriptions, integral-closure powers, asymptotic integer programs, and
//! randomized experiments.
//!
//! Exit codes: 0 success, 1 input error, 2 window did not stabilize
//! (partial results are still emitted).

mod experiments;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use vnum_core::decomp::associated_primes;
use vnum_core::filtration::{
    is_stable_prime, rees_map, soc_component, stable_max, stable_primes, v_function,
    v_function_p, Filtration, Window,
};
use vnum_core::ip::{asymptotic_law, solve, IpInstance, IpVariant};
use vnum_core::newton::NewtonPolyhedron;
use vnum_core::parse::{ideal_from_str, ideal_to_json, ideal_to_text, prime_from_text};
use vnum_core::vnum::{v_at_prime, v_number};
use vnum_core::{Error, MonomialIdeal, MonomialPrime};

use report::RunReport;

#[derive(Parser)]
#[command(name = "vnum", version, about = "Exact asymptotics of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FiltrationChoice {
    Powers,
    Closure,
}

#[derive(Args)]
struct CommonOpts {
    /// Number of ambient variables x1..xn.
    #[arg(long)]
    n: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WindowOpts {
    /// Largest filtration level examined.
    #[arg(long, default_value_t = 12)]
    kmax: usize,
    /// Trailing samples per residue class required for detection.
    #[arg(long = "window", default_value_t = 3)]
    w: usize,
    /// Largest candidate period for closure filtrations.
    #[arg(long = "period-max", default_value_t = 4)]
    period_max: usize,
    /// Filtration to analyze.
    #[arg(long, value_enum, default_value_t = FiltrationChoice::Powers)]
    filtration: FiltrationChoice,
}

impl WindowOpts {
    fn window(&self) -> Window {
        Window {
            kmax: self.kmax,
            w: self.w,
            period_max: self.period_max,
        }
    }

    fn filtration(&self, base: MonomialIdeal) -> Result<Filtration, Error> {
        match self.filtration {
            FiltrationChoice::Powers => Ok(Filtration::powers(base)),
            FiltrationChoice::Closure => Filtration::closure_powers(base),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eventually-associated primes of the filtration.
    StablePrimes {
        ideal: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// Inclusion-maximal stable primes.
    StableMax {
        ideal: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// Whether a prime is eventually associated.
    IsStablePrime {
        ideal: String,
        /// Prime as 1-based variable indices, e.g. `--p 1,2`.
        #[arg(long)]
        p: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// v-number of the ideal, with a witness monomial.
    Vnumber {
        ideal: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// v_p-number at a given associated prime.
    VnumberP {
        ideal: String,
        #[arg(long)]
        p: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Socle slice at a stable prime and level k.
    Soc {
        ideal: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// The v-function of the filtration and its quasi-linear tail.
    Vfunction {
        ideal: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// The v_p-function at a stable prime.
    VfunctionP {
        ideal: String,
        #[arg(long)]
        p: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        win: WindowOpts,
    },
    /// Rees map presentation data (no kernel computation).
    ReesMap {
        ideal: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Minimal generators of the integral closure of the k-th power.
    ClosurePower {
        ideal: String,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Solve one integer-program instance given as JSON.
    IpSolve {
        /// Instance JSON: {"n":…, "A":[[…]], "B":[…], "k":…, "variant":"power"|"closure"}.
        instance: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Asymptotic law of the optimal modulus over all large k.
    IpLaw {
        /// Instance JSON as for ip-solve; the "k" field is optional and ignored.
        instance: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long = "window", default_value_t = 3)]
        w: usize,
        #[arg(long = "period-max", default_value_t = 4)]
        period_max: usize,
    },
    /// Randomized evidence reports for the open questions; never asserts.
    Experiment {
        /// One of: monotonicity, max-limit-conjecture, vstab-vs-astab.
        name: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Generator degree cap for sampled ideals.
        #[arg(long, default_value_t = 3)]
        deg: u64,
        /// Maximum number of generators for sampled ideals.
        #[arg(long = "max-gens", default_value_t = 4)]
        max_gens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on this fixed ideal instead of random samples.
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long = "window", default_value_t = 3)]
        w: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    report::mark_start();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn ideal_json_value(ideal: &MonomialIdeal) -> Value {
    json!({
        "text": ideal_to_text(ideal),
        "json": serde_json::from_str::<Value>(&ideal_to_json(ideal)).unwrap(),
    })
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::StablePrimes { ideal, common, win } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let out = stable_primes(&f, win.window())?;
            let warnings = out.warnings.clone();
            let report = RunReport::new(
                "stable-primes",
                ideal_json_value(&parsed),
                serde_json::to_value(&out).unwrap(),
                Some(win.window()),
                warnings,
            );
            report.emit(common.format == Format::Json, |r| {
                match &out.stable {
                    Some(s) => {
                        println!("stable primes (period {}, stabilized at {}):", s.period, s.stabilized_at);
                        for p in &s.primes {
                            println!("  {p}");
                        }
                    }
                    None => println!("not stabilized within kmax = {}", r.window.unwrap().kmax),
                }
            });
            Ok(exit_for(&report))
        }
        Command::StableMax { ideal, common, win } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let out = stable_max(&f, win.window())?;
            let warnings = out.base.warnings.clone();
            let report = RunReport::new(
                "stable-max",
                ideal_json_value(&parsed),
                serde_json::to_value(&out).unwrap(),
                Some(win.window()),
                warnings,
            );
            report.emit(common.format == Format::Json, |_| match &out.maximal {
                Some(set) => {
                    println!("maximal stable primes:");
                    for p in set {
                        println!("  {p}");
                    }
                }
                None => println!("not stabilized within kmax = {}", win.kmax),
            });
            Ok(exit_for(&report))
        }
        Command::IsStablePrime {
            ideal,
            p,
            common,
            win,
        } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let prime = prime_from_text(&p, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let out = is_stable_prime(&f, &prime, win.window())?;
            let warnings = out.warnings.clone();
            let report = RunReport::new(
                "is-stable-prime",
                json!({ "ideal": ideal_json_value(&parsed), "p": prime }),
                serde_json::to_value(&out).unwrap(),
                Some(win.window()),
                warnings,
            );
            report.emit(common.format == Format::Json, |_| match out.verdict {
                Some(v) => println!("{prime} stable: {v}"),
                None => println!("not stabilized within kmax = {}", win.kmax),
            });
            Ok(exit_for(&report))
        }
        Command::Vnumber { ideal, common } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let r = v_number(&parsed)?;
            let report = RunReport::new(
                "vnumber",
                ideal_json_value(&parsed),
                json!({
                    "value": r.value,
                    "witness": r.witness.to_string(),
                    "prime": r.prime,
                }),
                None,
                vec![],
            );
            report.emit(common.format == Format::Json, |_| {
                println!("v = {} (witness {}, prime {})", r.value, r.witness, r.prime);
            });
            Ok(exit_for(&report))
        }
        Command::VnumberP { ideal, p, common } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let prime = prime_from_text(&p, common.n)?;
            let ass = associated_primes(&parsed)?;
            let r = v_at_prime(&parsed, &prime, &ass)?;
            let report = RunReport::new(
                "vnumber-p",
                json!({ "ideal": ideal_json_value(&parsed), "p": prime }),
                json!({
                    "value": r.value,
                    "witness": r.witness.to_string(),
                    "prime": r.prime,
                }),
                None,
                vec![],
            );
            report.emit(common.format == Format::Json, |_| {
                println!("v_p = {} (witness {})", r.value, r.witness);
            });
            Ok(exit_for(&report))
        }
        Command::Soc {
            ideal,
            p,
            k,
            common,
            win,
        } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let prime = prime_from_text(&p, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let sp = stable_primes(&f, win.window())?;
            let Some(stable) = sp.stable else {
                let report = RunReport::new(
                    "soc",
                    json!({ "ideal": ideal_json_value(&parsed), "p": prime, "k": k }),
                    Value::Null,
                    Some(win.window()),
                    sp.warnings.clone(),
                );
                report.emit(common.format == Format::Json, |_| {
                    println!("not stabilized within kmax = {}", win.kmax);
                });
                return Ok(exit_for(&report));
            };
            let soc = soc_component(&f, &prime, k, &stable.primes)?;
            let report = RunReport::new(
                "soc",
                json!({ "ideal": ideal_json_value(&parsed), "p": prime, "k": k }),
                serde_json::to_value(&soc).unwrap(),
                Some(win.window()),
                vec![],
            );
            report.emit(common.format == Format::Json, |_| {
                println!("numerator:   {}", soc.numerator);
                println!("denominator: {}", soc.denominator);
                match (&soc.alpha_value, &soc.witness) {
                    (Some(a), Some(w)) => println!("alpha = {a} (witness {w})"),
                    _ => println!("zero module"),
                }
            });
            Ok(exit_for(&report))
        }
        Command::Vfunction { ideal, common, win } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let out = v_function(&f, win.window())?;
            let warnings = out.warnings.clone();
            let report = RunReport::new(
                "vfunction",
                ideal_json_value(&parsed),
                serde_json::to_value(&out).unwrap(),
                Some(win.window()),
                warnings,
            );
            report.emit(common.format == Format::Json, |_| {
                print_tail_outcome(&out);
            });
            Ok(exit_for(&report))
        }
        Command::VfunctionP {
            ideal,
            p,
            common,
            win,
        } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let prime = prime_from_text(&p, common.n)?;
            let f = win.filtration(parsed.clone())?;
            let out = v_function_p(&f, &prime, win.window())?;
            let warnings = out.warnings.clone();
            let report = RunReport::new(
                "vfunction-p",
                json!({ "ideal": ideal_json_value(&parsed), "p": prime }),
                serde_json::to_value(&out).unwrap(),
                Some(win.window()),
                warnings,
            );
            report.emit(common.format == Format::Json, |_| {
                print_tail_outcome(&out);
            });
            Ok(exit_for(&report))
        }
        Command::ReesMap { ideal, common } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let desc = rees_map(&parsed)?;
            let report = RunReport::new(
                "rees-map",
                ideal_json_value(&parsed),
                serde_json::to_value(&desc).unwrap(),
                None,
                vec![],
            );
            report.emit(common.format == Format::Json, |_| {
                println!("source: {}", desc.source_vars.join(", "));
                println!("target: {}", desc.target_vars.join(", "));
                for im in &desc.images {
                    println!(
                        "  {} -> {}   bideg ({}, {})",
                        im.var, im.image, im.bidegree.0, im.bidegree.1
                    );
                }
            });
            Ok(exit_for(&report))
        }
        Command::ClosurePower { ideal, k, common } => {
            let parsed = ideal_from_str(&ideal, common.n)?;
            let np = NewtonPolyhedron::from_ideal(&parsed)?;
            let closure = np.closure_power(k)?;
            let report = RunReport::new(
                "closure-power",
                json!({ "ideal": ideal_json_value(&parsed), "k": k }),
                ideal_json_value(&closure),
                None,
                vec![],
            );
            report.emit(common.format == Format::Json, |_| {
                println!("{closure}");
            });
            Ok(exit_for(&report))
        }
        Command::IpSolve { instance, format } => {
            let inst = IpInstance::from_json(&instance)?;
            let solution = solve(&inst)?;
            let report = RunReport::new(
                "ip-solve",
                serde_json::from_str(&inst.to_json()).unwrap(),
                json!({ "solution": solution }),
                None,
                vec![],
            );
            report.emit(format == Format::Json, |_| match &solution {
                Some(s) => println!(
                    "optimal c = {} with modulus {}",
                    s.c,
                    s.modulus
                ),
                None => println!("infeasible at k = {}", inst.k),
            });
            Ok(exit_for(&report))
        }
        Command::IpLaw {
            instance,
            format,
            kmax,
            w,
            period_max,
        } => {
            #[derive(Deserialize)]
            struct LawJson {
                n: usize,
                #[serde(rename = "A")]
                a: Vec<Vec<u64>>,
                #[serde(rename = "B")]
                b: Vec<usize>,
                variant: IpVariant,
            }
            let raw: LawJson = serde_json::from_str(&instance).map_err(|e| Error::Parse {
                pos: e.column().saturating_sub(1),
                msg: e.to_string(),
            })?;
            let points = raw
                .a
                .into_iter()
                .map(|v| {
                    vnum_core::ExponentVector::new(v).map_err(|_| Error::Parse {
                        pos: 0,
                        msg: "total degree too large".to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let prime = MonomialPrime::from_one_based(raw.n, &raw.b)?;
            let window = Window {
                kmax,
                w,
                period_max,
            };
            let out = asymptotic_law(raw.n, points, prime, raw.variant, window)?;
            let warnings = match &out {
                vnum_core::ip::LawOutcome::NotStabilized { warnings } => warnings.clone(),
                _ => vec![],
            };
            let report = RunReport::new(
                "ip-law",
                serde_json::from_str(&instance).unwrap_or(Value::Null),
                serde_json::to_value(&out).unwrap(),
                Some(window),
                warnings,
            );
            report.emit(format == Format::Json, |_| match &out {
                vnum_core::ip::LawOutcome::Law { tail, .. } => {
                    for b in &tail.branches {
                        println!(
                            "residue {}: modulus = {}k + {} (stabilized at {})",
                            b.residue, b.slope, b.intercept, tail.stabilized_at
                        );
                    }
                }
                vnum_core::ip::LawOutcome::EventuallyInfeasible { .. } => {
                    println!("eventually infeasible: I(B) is not a stable prime");
                }
                vnum_core::ip::LawOutcome::NotStabilized { .. } => {
                    println!("not stabilized within kmax = {kmax}");
                }
            });
            Ok(exit_for(&report))
        }
        Command::Experiment {
            name,
            samples,
            n,
            deg,
            max_gens,
            seed,
            ideal,
            kmax,
            w,
            format,
        } => {
            let fixed = ideal
                .map(|text| ideal_from_str(&text, n))
                .transpose()?;
            let window = Window {
                kmax,
                w,
                period_max: 4,
            };
            let out = experiments::run(
                &name,
                experiments::Params {
                    samples,
                    n,
                    max_deg: deg,
                    max_gens,
                    seed,
                    fixed,
                    window,
                },
            )?;
            let warnings = out.warnings.clone();
            let report = RunReport::new(
                &format!("experiment:{name}"),
                serde_json::to_value(&out.params).unwrap(),
                serde_json::to_value(&out).unwrap(),
                Some(window),
                warnings,
            );
            report.emit(format == Format::Json, |_| {
                println!(
                    "{}: {} confirmations, {} violations, {} skipped (non-stabilized)",
                    name, out.confirmations, out.violations, out.skipped
                );
                for note in &out.notes {
                    println!("  {note}");
                }
            });
            Ok(exit_for(&report))
        }
    }
}

fn print_tail_outcome(out: &vnum_core::filtration::VFunctionOutcome) {
    let values: Vec<String> = out
        .samples
        .iter()
        .map(|s| format!("v({}) = {}", s.k, s.value))
        .collect();
    println!("{}", values.join(", "));
    match &out.tail {
        Some(tail) => {
            for b in &tail.branches {
                println!(
                    "residue {}: v = {}k + {} (stabilized at {})",
                    b.residue, b.slope, b.intercept, tail.stabilized_at
                );
            }
        }
        None => {
            for w in &out.warnings {
                println!("{w}");
            }
        }
    }
}

fn exit_for(report: &RunReport) -> ExitCode {
    if report
        .warnings
        .iter()
        .any(|w| w.contains("not stabilized") || w.contains("tail not detected"))
    {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

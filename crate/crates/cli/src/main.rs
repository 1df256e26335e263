//! wittconic: exact verification of residue, transfer, and Witt-group
//! identities on the conic y² = ax² + b of a rational quaternion division
//! algebra.

use clap::{Args, Parser, Subcommand};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use wittconic::arith::Rational;
use wittconic::conic::{make_conic, points_from_linear, ClosedPoint, ConicInstance};
use wittconic::error::{Error, Result};
use wittconic::parse::{parse_function_field, parse_quadext, parse_quaternion_q};
use wittconic::residues;
use wittconic::serialize as ser;
use wittconic::suite::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "wittconic", version, about)]
struct Cli {
    #[command(flatten)]
    conic: ConicArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConicArgs {
    /// Coefficient a of the conic y² = ax² + b (i² = a); default -1.
    #[arg(short = 'a', long, allow_hyphen_values = true, global = true)]
    a: Option<String>,
    /// Coefficient b of the conic y² = ax² + b (j² = b); default -1.
    #[arg(short = 'b', long, allow_hyphen_values = true, global = true)]
    b: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a deterministic report.
    Verify {
        /// Flat key = value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Suites to run (repeatable); defaults to all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Trials-per-property override.
        #[arg(long)]
        trials: Option<u32>,
        /// Report file path; defaults to stdout. The WITTCONIC_REPORT_DIR
        /// environment variable redirects relative report paths.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include wall-clock timings (reports are then not byte-stable).
        #[arg(long)]
        timings: bool,
    },
    /// Apply a named map to a serialized form (JSON on stdin or --input).
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Closed-point utilities.
    Point {
        #[command(subcommand)]
        action: PointAction,
    },
    /// Residue of a form over F at a closed point.
    Residue {
        /// JSON file holding the form over F ("-" for stdin).
        #[arg(long)]
        form: PathBuf,
        /// Point spec: "infinity" or "line:c1,c2,c3".
        #[arg(long)]
        point: String,
        /// First (kind=1) or second (kind=2) residue map.
        #[arg(long, default_value_t = 2)]
        kind: u8,
    },
    /// Quaternionic transfer t_p of a rank-1 class ⟨f⟩.
    Transfer {
        /// Point spec: "infinity" or "line:c1,c2,c3".
        #[arg(long)]
        point: String,
        /// Residue-field scalar "u+v*t".
        #[arg(long)]
        f: String,
    },
    /// Certify Σ_p t_p(∂²_p⟨f⟩) = 0 for a square-free f in O_af.
    Nullity {
        /// Element of O_af, e.g. "x*y" or "1+y".
        #[arg(long)]
        f: String,
    },
    /// Solve t_p(⟨f⟩) = ⟨q⟩ for a pure quaternion q.
    Surject {
        /// Pure quaternion, e.g. "2i+3j+5ij".
        #[arg(long)]
        q: String,
    },
}

#[derive(Subcommand)]
enum MapAction {
    /// Apply a map by name: pi1, pi2, sigma1, sigma2, ext_D, s_D, s_K,
    /// theta, psi, rho.
    Apply {
        name: String,
        /// JSON input file ("-" for stdin).
        #[arg(long, default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum PointAction {
    /// The degree-2 closed point cut by c1 + c2·x + c3·y = 0.
    Make {
        /// Comma-separated line coefficients c1,c2,c3.
        #[arg(long)]
        line: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let a = cli
        .conic
        .a
        .as_deref()
        .map(Rational::parse)
        .transpose()?
        .unwrap_or_else(|| Rational::from_int(-1));
    let b = cli
        .conic
        .b
        .as_deref()
        .map(Rational::parse)
        .transpose()?
        .unwrap_or_else(|| Rational::from_int(-1));
    match cli.command {
        Command::Verify {
            config,
            suites,
            seed,
            trials,
            report,
            timings,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    SuiteConfig::parse(&text)?
                }
                None => SuiteConfig {
                    a: a.clone(),
                    b: b.clone(),
                    ..Default::default()
                },
            };
            // Explicit flags override the config file.
            if let Some(s) = &cli.conic.a {
                cfg.a = Rational::parse(s)?;
            }
            if let Some(s) = &cli.conic.b {
                cfg.b = Rational::parse(s)?;
            }
            if !suites.is_empty() {
                cfg.suites = suites;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            let result = run_suite(&cfg)?;
            let text = result.render(timings);
            match report {
                Some(path) => {
                    let path = resolve_report_path(path);
                    std::fs::write(&path, &text)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    eprintln!("report written to {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(if result.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Map { action } => {
            let conic = make_conic(a, b)?;
            let MapAction::Apply { name, input } = action;
            let value = read_json(&input)?;
            let out = apply_map(&conic, &name, &value)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Point { action } => {
            let conic = make_conic(a, b)?;
            let PointAction::Make { line } = action;
            let p = parse_point(&conic, &format!("line:{line}"))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&ser::point_to_json(&p)).expect("serializable")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Residue { form, point, kind } => {
            let conic = make_conic(a, b)?;
            let value = read_json(&form.display().to_string())?;
            let f = ser::sym_f_from_json(&conic, &value)?;
            let p = parse_point(&conic, &point)?;
            let res = match kind {
                1 => residues::first_residue(&f, &p)?,
                2 => residues::second_residue(&f, &p)?,
                other => return Err(Error::Parse(format!("kind must be 1 or 2, got {other}"))),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&ser::sym_quad_to_json(&res)).expect("serializable")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Transfer { point, f } => {
            let conic = make_conic(a, b)?;
            let p = parse_point(&conic, &point)?;
            let out = if p.is_infinity() {
                let g = parse_quadext(&conic.infinity_modulus(), &f)?;
                residues::transfer_tinfty_rank_one(&conic, &g)
            } else {
                let modulus = p.residue_modulus().ok_or_else(|| {
                    Error::UnsupportedField("transfers need a degree-2 point".into())
                })?;
                let g = parse_quadext(&modulus, &f)?;
                let pair = wittconic::conic::coherent_functional(&p)?;
                residues::transfer_tp_rank_one(&conic, &pair, &g)?
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&ser::quaternion_q_to_json(&out))
                    .expect("serializable")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Nullity { f } => {
            let conic = make_conic(a, b)?;
            let elem = parse_function_field(&conic, &f)?;
            let report = residues::nullity_certify(&conic, &elem)?;
            println!("element: {f}");
            println!("n = {}", report.n);
            for (p, r, q) in &report.contributions {
                println!("  {p}: residue {r}, transfer <{q}>");
            }
            if let Some(z) = &report.infinity_contribution {
                println!("  infinity: transfer <{z}>");
            }
            for d in &report.details {
                println!("  {d}");
            }
            println!("verdict: {}", report.verdict.summary());
            Ok(if report.verdict.is_zero() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Surject { q } => {
            let conic = make_conic(a, b)?;
            let target = parse_quaternion_q(&conic, &q)?;
            let w = residues::surjectivity_solve(&conic, &target)?;
            println!("q = {target}");
            println!("point: {}", w.point);
            println!(
                "point json: {}",
                serde_json::to_string(&ser::point_to_json(&w.point)).expect("serializable")
            );
            println!("f = {}", w.f);
            println!("verified: t_p(<f>) = <q> exactly");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn resolve_report_path(path: PathBuf) -> PathBuf {
    if path.is_absolute() {
        return path;
    }
    match std::env::var_os("WITTCONIC_REPORT_DIR") {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path,
    }
}

fn read_json(source: &str) -> Result<serde_json::Value> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| Error::Parse(format!("{source}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

fn parse_point(conic: &ConicInstance, spec: &str) -> Result<ClosedPoint> {
    if spec == "infinity" || spec == "inf" {
        return Ok(ClosedPoint::Infinity(conic.clone()));
    }
    if let Some(rest) = spec.strip_prefix("line:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse("line spec needs three coefficients".into()));
        }
        let c1 = Rational::parse(parts[0])?;
        let c2 = Rational::parse(parts[1])?;
        let c3 = Rational::parse(parts[2])?;
        if c2.is_zero() && c3.is_zero() {
            return Err(Error::Parse("need (c2, c3) != (0, 0)".into()));
        }
        return Ok(points_from_linear(conic, &c1, &c2, &c3));
    }
    Err(Error::Parse(format!(
        "unknown point spec {spec:?}; use \"infinity\" or \"line:c1,c2,c3\""
    )))
}

fn apply_map(
    conic: &ConicInstance,
    name: &str,
    value: &serde_json::Value,
) -> Result<serde_json::Value> {
    use wittconic::maps;
    match name {
        "pi1" => {
            let h = ser::herm_d_from_json(conic, value)?;
            Ok(ser::herm_k_to_json(&maps::pi1(conic, &h)))
        }
        "pi2" => {
            let h = ser::herm_d_from_json(conic, value)?;
            Ok(ser::sym_quad_to_json(&maps::pi2(conic, &h)?))
        }
        "sigma1" => {
            let f = ser::herm_k_from_json(value)?;
            Ok(ser::herm_d_to_json(&maps::sigma1(conic, &f)))
        }
        "sigma2" => {
            let g = ser::sym_quad_from_json(value)?;
            Ok(ser::herm_d_to_json(&maps::sigma2(conic, &g)))
        }
        "ext_D" => {
            let phi = ser::sym_q_from_json(value)?;
            Ok(ser::herm_d_to_json(&maps::ext_d(conic, &phi)))
        }
        "s_D" => {
            let h = ser::herm_d_from_json(conic, value)?;
            Ok(ser::sym_q_to_json(&wittconic::forms::s_d_trace_form(
                conic, &h,
            )?))
        }
        "s_K" => {
            let f = ser::herm_k_from_json(value)?;
            Ok(ser::sym_q_to_json(&wittconic::forms::s_k_trace_form(
                conic, &f,
            )?))
        }
        "theta" => {
            let phi = ser::sym_q_from_json(value)?;
            Ok(ser::herm_k_to_json(&maps::theta(conic, &phi)))
        }
        "psi" => {
            let g = ser::sym_quad_from_json(value)?;
            Ok(ser::sym_quad_to_json(&maps::psi(conic, &g)?))
        }
        "rho" => {
            let h = ser::herm_d_from_json(conic, value)?;
            Ok(ser::sym_f_to_json(&maps::rho(conic, &h)?))
        }
        other => Err(Error::Parse(format!(
            "unknown map {other:?}; expected pi1, pi2, sigma1, sigma2, ext_D, s_D, s_K, theta, psi, or rho"
        ))),
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use eulersum::catalog::{self, ReportFormat, VerifyOptions};
use eulersum::checks::{self, CHECK_NAMES, PRINTED_CONSTANTS};
use eulersum::closed_form::cf_eval;
use eulersum::config::load_config;
use eulersum::mellin::{factorization_check, inverse_mellin_example, mellin_forward_example, ContourSpec};
use eulersum::Error;

// Output goes through these so a closed pipe (`eulersum list | head`) is not
// a panic; the exit status still reflects the checks.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outp {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "eulersum", version, about = "Evaluate and verify Euler-type series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog.
    List,
    /// Describe one identity.
    Show { id: String },
    /// Verify identities numerically.
    Verify {
        /// Identity ids (catalog ids or theorem1.kK / theorem1.alt.kK).
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        ids: Vec<String>,
        /// Verify the whole catalog plus the general-k rows.
        #[arg(long)]
        all: bool,
        /// Tolerance replacing the catalog values.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// TOML file with cutoffs and tolerances.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Closed form of sum_{n>=1} [gamma + psi(1+kn)]/n^2 for any k.
    Theorem1 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        alternating: bool,
    },
    /// Print the basic constants next to their six-decimal tabulated values.
    Constants,
    /// Run a named batch of cross-checks.
    Oracle {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Mellin transform examples.
    Mellin {
        #[command(subcommand)]
        op: MellinOp,
    },
    /// Catalog as JSON.
    Export,
}

#[derive(Subcommand)]
enum MellinOp {
    /// Integral of x^(-z-1) log^k x over [1, inf), against k!/z^(k+1).
    Forward {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        z: f64,
    },
    /// Truncated inverse transform of k!/z^(k+1), against log^k x.
    Inverse {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 5e4)]
        height: f64,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
    },
    /// Factorization formula for (A1+A2+A3)^(-p); each A as `re,im`.
    Factorize {
        #[arg(long, value_parser = parse_complex)]
        a1: Complex64,
        #[arg(long, value_parser = parse_complex)]
        a2: Complex64,
        #[arg(long, value_parser = parse_complex)]
        a3: Complex64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long, default_value_t = 60.0)]
        height: f64,
        #[arg(long, default_value_t = 2000)]
        nodes: usize,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Complex64::new(re, im))
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::List => {
            let cat = catalog::build_catalog();
            let w = cat.iter().map(|e| e.id.len()).max().unwrap_or(2);
            for e in &cat {
                out!("{:<w$}  {}D  {:>6.0e}  {}", e.id, e.dimensionality(), e.tolerance, e.rhs);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { id } => {
            let e = match catalog::get(&id) {
                Ok(e) => e,
                Err(err) => catalog::theorem_rows().into_iter().find(|e| e.id == id).ok_or(err)?,
            };
            out!("id:          {}", e.id);
            out!("series:      {}", e.description);
            out!("value:       {}", e.rhs);
            out!("numeric:     {:.15}", cf_eval(&e.rhs));
            out!("family:      {}", e.anchor);
            out!("dimension:   {}", e.dimensionality());
            out!("tolerance:   {:e}", e.tolerance);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            ids,
            all,
            tol,
            format,
            jobs,
            config,
        } => {
            let mut opts = match config {
                Some(path) => load_config(&path)?,
                None => VerifyOptions::default(),
            };
            if let Some(t) = tol {
                if t.is_nan() || t <= 0.0 {
                    return Err(Error::Config(format!("--tol must be positive, got {t}")));
                }
                opts.tolerance = Some(t);
                opts.tolerances.clear();
            }
            if let Some(j) = jobs {
                if j == 0 {
                    return Err(Error::Config("--jobs must be at least 1".into()));
                }
                opts.jobs = Some(j);
            }
            let reports = if all {
                catalog::verify_all_with(&opts)
            } else {
                ids.iter()
                    .map(|id| catalog::verify_with(id, &opts))
                    .collect::<Result<Vec<_>, _>>()?
            };
            outp!("{}", catalog::format_reports(&reports, format.into()));
            Ok(status(reports.iter().all(|r| r.pass)))
        }
        Command::Theorem1 { k, alternating } => {
            let cf = catalog::theorem1_closed_form(k, alternating)?;
            out!("{cf}");
            out!("{:.15}", cf_eval(&cf));
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants => {
            for (&(name, printed), v) in PRINTED_CONSTANTS.iter().zip(checks::computed_constants()) {
                out!("{name:<10}  {v:.15}  {printed:.6}");
            }
            Ok(status(checks::constants().iter().all(|r| r.pass)))
        }
        Command::Oracle { name, json } => {
            let rows = checks::run_check(&name)?;
            if json {
                for r in &rows {
                    out!("{}", serde_json::to_string(r).expect("check rows serialize"));
                }
            } else {
                outp!("{}", checks::format_checks(&rows));
            }
            Ok(status(rows.iter().all(|r| r.pass)))
        }
        Command::Mellin { op } => mellin(op),
        Command::Export => {
            let export = catalog::export_catalog();
            out!("{}", serde_json::to_string_pretty(&export).expect("catalog serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn mellin(op: MellinOp) -> Result<ExitCode, Error> {
    match op {
        MellinOp::Forward { k, z } => {
            let v = mellin_forward_example(k, z)?;
            let want = (1..=k).map(f64::from).product::<f64>() / z.powi(k as i32 + 1);
            let rel = ((v - want) / want).abs();
            out!("value     {v:.15}");
            out!("k!/z^k+1  {want:.15}");
            out!("rel_diff  {rel:.3e}");
            Ok(status(rel <= 1e-10))
        }
        MellinOp::Inverse {
            k,
            x,
            c,
            height,
            nodes,
            tolerance,
        } => {
            let spec = ContourSpec {
                c,
                height,
                nodes: nodes.unwrap_or(((height * 16.0) as usize).max(32)),
                tolerance,
            };
            let r = inverse_mellin_example(k, x, &spec)?;
            let want = x.ln().powi(k as i32);
            let defect = (r.value - want).abs();
            out!("value       {:.15}", r.value);
            out!("log^k x     {want:.15}");
            out!("defect      {defect:.3e}");
            out!("truncation  {:.3e}", r.truncation_bound);
            out!("quadrature  {:.3e}", r.quadrature_error);
            Ok(status(defect <= tolerance.max(r.truncation_bound + r.quadrature_error)))
        }
        MellinOp::Factorize {
            a1,
            a2,
            a3,
            p,
            c1,
            c2,
            height,
            nodes,
        } => {
            let spec = ContourSpec {
                height,
                nodes,
                ..ContourSpec::factorization_default()
            };
            let r = factorization_check([a1, a2, a3], p, c1, c2, &spec)?;
            out!("lhs         {:.15} {:+.15}i", r.lhs.re, r.lhs.im);
            out!("rhs         {:.15} {:+.15}i", r.rhs.re, r.rhs.im);
            out!("abs_diff    {:.3e}", r.abs_diff);
            out!("tail_bound  {:.3e}", r.tail_bound);
            out!("refinement  {:.3e}", r.refinement_delta);
            Ok(status(r.abs_diff <= spec.tolerance))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

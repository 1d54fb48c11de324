mod demo;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bargmann_toeplitz::composition::{compose_gaussian_to, compose_spectra};
use bargmann_toeplitz::error::{Error, Result};
use bargmann_toeplitz::operators::{
    diagonal_apply, equivalence_report, in_natural_domain, toeplitz_apply, DiagonalOperator,
};
use bargmann_toeplitz::quadrature::QuadratureSpec;
use bargmann_toeplitz::spaces::{from_sequence, to_sequence, FockPolynomial};
use bargmann_toeplitz::spectra::eigen_sequence_with;
use bargmann_toeplitz::symbols::{classify, RadialSymbol};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

/// Version of the JSON report layout.
const SCHEMA_VERSION: u32 = 1;

/// Relative ratio tolerance when fitting a Gaussian to a product spectrum.
const RECOGNITION_TOLERANCE: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "bt", version, about = "Radial Toeplitz operators on the Segal-Bargmann space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Largest basis index n.
    #[arg(long = "n", global = true, default_value_t = 10)]
    n_max: usize,
    /// Gauss-Laguerre nodes (doubled once for the convergence check).
    #[arg(long, global = true, env = "BT_DEFAULT_NODES", default_value_t = QuadratureSpec::DEFAULT_NODES)]
    nodes: usize,
    /// Residual tolerance for `verify`.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Output format; defaults to csv for `spectrum` and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Omit the generation timestamp so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
enum Command {
    /// Decide L1_inf, P, Folland and Coburn membership.
    Classify {
        #[arg(long)]
        symbol: String,
    },
    /// Eigenvalues phi_0 ..= phi_n.
    Spectrum {
        #[arg(long)]
        symbol: String,
    },
    /// Apply T_phi or its diagonal extension to a polynomial.
    Apply {
        #[arg(long)]
        symbol: String,
        /// `basis:N`, comma-separated u_n coefficients, or a JSON array.
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Operator::Toeplitz)]
        operator: Operator,
    },
    /// Compare T_phi with its diagonal realization on u_0 ..= u_n.
    Verify {
        #[arg(long)]
        symbol: String,
    },
    /// Compose two radial Toeplitz operators.
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Replay the gamma sweep, the unimodular example, the thermal state and
    /// the Coburn counterexample.
    Demo,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Operator {
    Toeplitz,
    Extension,
}

/// Report body in every supported format.
struct Rendered {
    json: Value,
    csv: Option<String>,
    text: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 1,
        Error::DivergentMoment(_) | Error::DomainViolation(_) | Error::EnvelopeViolation { .. } => 2,
        Error::NonConvergent { .. } => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid_input",
        Error::DivergentMoment(_) => "divergent_moment",
        Error::DomainViolation(_) => "domain_violation",
        Error::EnvelopeViolation { .. } => "envelope_violation",
        Error::NonConvergent { .. } => "non_convergent",
    }
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    let body = json!({ "error": { "kind": kind, "message": message, "exit_code": code } });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("invalid_input", e.to_string().trim().to_string(), 1),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(error_kind(&e), e.to_string(), exit_code(&e)),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let common = &cli.common;
    if !(common.tol.is_finite() && common.tol > 0.0) {
        return Err(Error::InvalidInput(format!("--tol must be positive, got {}", common.tol)));
    }
    let spec = QuadratureSpec::new(common.nodes)?;
    let format = common.format.unwrap_or(match cli.command {
        Command::Spectrum { .. } => Format::Csv,
        _ => Format::Json,
    });

    let mut symbols = serde_json::Map::new();
    let mut resolve = |role: &str, text: &str| -> Result<RadialSymbol> {
        let sym = parse::symbol(text)?;
        let value = serde_json::to_value(&sym).map_err(|e| Error::InvalidInput(e.to_string()))?;
        symbols.insert(role.to_string(), value);
        Ok(sym)
    };

    let rendered = match &cli.command {
        Command::Classify { symbol } => run_classify(&resolve("symbol", symbol)?, common),
        Command::Spectrum { symbol } => run_spectrum(&resolve("symbol", symbol)?, common, &spec)?,
        Command::Apply { symbol, poly, operator } => {
            run_apply(&resolve("symbol", symbol)?, &parse::polynomial(poly)?, *operator, &spec)?
        }
        Command::Verify { symbol } => run_verify(&resolve("symbol", symbol)?, common, &spec),
        Command::Compose { a, b } => run_compose(&resolve("a", a)?, &resolve("b", b)?, common, &spec)?,
        Command::Demo => demo::run(common.n_max, &spec)?,
    };

    let body = match format {
        Format::Json => {
            let mut report = serde_json::Map::new();
            report.insert("schema_version".into(), json!(SCHEMA_VERSION));
            if !common.no_timestamp {
                let secs = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                report.insert("generated_at_unix".into(), json!(secs));
            }
            report.insert(
                "config".into(),
                json!({
                    "command": cli.command,
                    "resolved_symbols": symbols,
                    "n_max": common.n_max,
                    "nodes": common.nodes,
                    "tol": common.tol,
                    "quadrature": spec,
                }),
            );
            report.insert("result".into(), rendered.json);
            let mut s = serde_json::to_string_pretty(&Value::Object(report))
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => rendered
            .csv
            .ok_or_else(|| Error::InvalidInput("this command has no CSV form".into()))?,
        Format::Text => rendered.text,
    };

    match &common.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("writing stdout: {e}"))),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run_classify(sym: &RadialSymbol, common: &Common) -> Rendered {
    let report = classify(sym, 2 * common.n_max as u32 + 1);
    let mut text = format!(
        "in_L1_inf:  {}\nin_P:       {}\nin_Folland: {}\nin_Coburn:  {}\n",
        report.in_l1_inf, report.in_p, report.in_folland, report.in_coburn
    );
    for r in &report.reasons {
        text.push_str(&format!("reason: {r}\n"));
    }
    let mut csv = String::from("class,decision\n");
    for (name, d) in [
        ("in_L1_inf", report.in_l1_inf),
        ("in_P", report.in_p),
        ("in_Folland", report.in_folland),
        ("in_Coburn", report.in_coburn),
    ] {
        csv.push_str(&format!("{name},{d}\n"));
    }
    Rendered {
        json: to_value(&report),
        csv: Some(csv),
        text,
    }
}

fn run_spectrum(sym: &RadialSymbol, common: &Common, spec: &QuadratureSpec) -> Result<Rendered> {
    let e = eigen_sequence_with(sym, common.n_max, spec)?;
    let text = e
        .values()
        .iter()
        .enumerate()
        .map(|(n, v)| format!("phi_{n} = {}{:+}i\n", v.re, v.im))
        .collect();
    Ok(Rendered {
        json: to_value(&e),
        csv: Some(e.to_csv()),
        text,
    })
}

fn run_apply(sym: &RadialSymbol, poly: &FockPolynomial, operator: Operator, spec: &QuadratureSpec) -> Result<Rendered> {
    let domain = in_natural_domain(sym, poly);
    let (output, warnings) = match operator {
        Operator::Toeplitz => (toeplitz_apply(sym, poly, spec)?, Vec::new()),
        Operator::Extension => {
            let op = DiagonalOperator::from_symbol(sym, poly.degree(), spec)?;
            let image = diagonal_apply(&op, &to_sequence(poly));
            (from_sequence(&image.sequence), image.warnings)
        }
    };
    let text = output
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, v)| format!("u_{n}: {}{:+}i\n", v.re, v.im))
        .collect::<String>()
        + &format!("input in natural domain: {domain}\n");
    Ok(Rendered {
        json: json!({
            "operator": operator,
            "input_in_natural_domain": domain,
            "input": poly,
            "output": output,
            "warnings": warnings,
        }),
        csv: Some(to_sequence(&output).to_csv()),
        text,
    })
}

fn run_verify(sym: &RadialSymbol, common: &Common, spec: &QuadratureSpec) -> Rendered {
    let report = equivalence_report(sym, common.n_max, common.tol, spec);
    let mut csv = String::from("n,residual\n");
    for (n, r) in report.per_n_residual.iter().enumerate() {
        csv.push_str(&format!("{n},{r}\n"));
    }
    Rendered {
        json: to_value(&report),
        csv: Some(csv),
        text: report.render_text(),
    }
}

fn run_compose(a: &RadialSymbol, b: &RadialSymbol, common: &Common, spec: &QuadratureSpec) -> Result<Rendered> {
    let verdict = match (a, b) {
        (RadialSymbol::Gaussian(ga), RadialSymbol::Gaussian(gb)) => compose_gaussian_to(ga, gb, common.n_max)?,
        _ => {
            let ea = eigen_sequence_with(a, common.n_max, spec)?;
            let eb = eigen_sequence_with(b, common.n_max, spec)?;
            compose_spectra(&ea, &eb, RECOGNITION_TOLERANCE)
        }
    };
    let text = format!("status: {}\nreason: {}\n", verdict.status, verdict.reason);
    Ok(Rendered {
        json: to_value(&verdict),
        csv: Some(verdict.product_sequence.to_csv()),
        text,
    })
}

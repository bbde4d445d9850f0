use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use varlagr::ode::{
    make_airy, make_bessel, make_caldirola_kanai, make_custom_from_text, make_hermite, make_legendre, BesselKind,
};
use varlagr::report::{build_report, ReportOptions};
use varlagr::{Error, Interval, LinearODE2};

/// Lagrangians of linear second-order ODEs and their verification reports.
#[derive(Parser)]
#[command(name = "varlagr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a catalog equation: airy, bessel-regular, bessel-modified,
    /// bessel-spherical, bessel-modified-spherical, legendre, hermite,
    /// caldirola-kanai.
    Report {
        name: String,
        /// Cylindrical Bessel order.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<f64>,
        /// Legendre degree or spherical Bessel order.
        #[arg(long)]
        l: Option<i64>,
        /// Legendre order.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        /// Hermite index.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Report on y″ + B(x) y′ + C(x) y = 0 with user coefficients.
    Custom {
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        /// Domain ends; `inf` and `-inf` are accepted.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, default_values = ["-inf", "inf"])]
        domain: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Parameter binding name=value (repeatable).
    #[arg(short = 'p', value_parser = parse_binding)]
    params: Vec<(String, f64)>,
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    c2: f64,
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    cbar1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    cbar2: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Print the JSON bundle instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Directory for residual grids as CSV.
    #[arg(long)]
    csv_dir: Option<PathBuf>,
}

fn parse_binding(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

/// Errors caused by the request itself exit with status 2.
struct InvalidInput(anyhow::Error);

fn invalid(e: impl Into<anyhow::Error>) -> InvalidInput {
    InvalidInput(e.into())
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. } | Error::UnboundName { .. } | Error::InvalidParameter(_) | Error::Domain { .. }
    )
}

fn catalog(name: &str, mu: Option<f64>, l: Option<i64>, m: Option<i64>, n: Option<i64>, params: &BTreeMap<String, f64>) -> anyhow::Result<LinearODE2> {
    let bessel = |kind: BesselKind| -> anyhow::Result<LinearODE2> {
        let order = if kind.is_spherical() {
            l.unwrap_or(1) as f64
        } else {
            mu.unwrap_or(0.0)
        };
        Ok(make_bessel(kind, order)?)
    };
    let ode = match name {
        "airy" => make_airy(),
        "legendre" | "legendre-associated" => make_legendre(l.unwrap_or(2), m.unwrap_or(0))?,
        "hermite" => make_hermite(n.unwrap_or(2)),
        "caldirola-kanai" => make_caldirola_kanai(
            params.get("g").copied().unwrap_or(0.1),
            params.get("w").copied().unwrap_or(1.0),
        ),
        other => match BesselKind::ALL.iter().find(|k| k.cli_name() == other) {
            Some(&kind) => bessel(kind)?,
            None => bail!("unknown equation `{other}`"),
        },
    };
    Ok(ode)
}

fn run(cli: Cli) -> Result<bool, InvalidInput> {
    let (ode, common) = match cli.command {
        Command::Report { name, mu, l, m, n, common } => {
            let params: BTreeMap<_, _> = common.params.iter().cloned().collect();
            (catalog(&name, mu, l, m, n, &params).map_err(invalid)?, common)
        }
        Command::Custom { b, c, domain, common } => {
            let params: BTreeMap<_, _> = common.params.iter().cloned().collect();
            let ode = make_custom_from_text(&b, &c, Interval::new(domain[0], domain[1]), params)
                .context("custom equation")
                .map_err(invalid)?;
            (ode, common)
        }
    };
    let opts = ReportOptions {
        grid: common.grid,
        c1: common.c1,
        c2: common.c2,
        cbar1: common.cbar1,
        cbar2: common.cbar2,
        seed: common.seed,
        ..ReportOptions::default()
    };
    let mut bundle = match build_report(&ode, opts) {
        Ok(b) => b,
        Err(e) if is_input_error(&e) => return Err(invalid(e)),
        Err(e) => {
            eprintln!("varlagr: {}: {e}", ode.name);
            return Ok(false);
        }
    };
    if let Some(dir) = &common.csv_dir {
        bundle
            .write_csvs(dir)
            .with_context(|| format!("writing CSV grids to {}", dir.display()))
            .map_err(|e| invalid(anyhow!(e)))?;
    }
    if common.json {
        println!("{}", bundle.to_json());
    } else {
        print!("{}", bundle.summary());
    }
    for c in bundle.failed_checks() {
        let expected = c.expected.map_or("info".to_string(), |v| v.to_string());
        eprintln!("varlagr: check `{}` observed {}, expected {expected}", c.name, c.observed);
    }
    Ok(bundle.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InvalidInput(e)) => {
            eprintln!("varlagr: {e:#}");
            ExitCode::from(2)
        }
    }
}

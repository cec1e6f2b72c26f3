mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use wsemi_core::curve::{parse_curve_file, CurveConfig};
use wsemi_core::{Curve, Error};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Info,
    Places,
    Lbasis,
    Rrquot,
    Semigroup,
}

/// Riemann-Roch spaces and Weierstrass semigroups of plane curves over F_p.
#[derive(Parser, Debug)]
#[command(name = "wsemi", version)]
struct Cli {
    command: Command,
    /// Curve description file.
    #[arg(long)]
    curve: PathBuf,
    /// Divisor such as "4*P1+4*P3" (lbasis).
    #[arg(long)]
    divisor: Option<String>,
    /// Comma-separated pole orders (rrquot).
    #[arg(long)]
    m: Option<String>,
    /// Comma-separated place labels (rrquot, semigroup).
    #[arg(long)]
    points: Option<String>,
    /// 1-based index of the place whose quotient is taken (rrquot).
    #[arg(long)]
    chart: Option<usize>,
    /// Largest pole order scanned at a single place (semigroup).
    #[arg(long)]
    limit: Option<u32>,
    #[arg(long)]
    json: bool,
    /// Write the two-point gap lattice as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Largest degree of closed points enumerated.
    #[arg(long, default_value_t = 4)]
    max_ext_degree: u32,
    /// Series precision; overrides WSEMI_PRECISION.
    #[arg(long)]
    precision: Option<usize>,
}

/// Failure with its process exit code.
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn io(msg: String) -> Failure {
        Failure { code: 4, msg }
    }
    pub fn usage(msg: String) -> Failure {
        Failure { code: 3, msg }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::UnknownPlace(_) | Error::NotRationalPlace(_) | Error::DivisorSyntax { .. } | Error::InvalidArgument(_) => 3,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn load(cli: &Cli) -> Result<Curve, Failure> {
    let text = std::fs::read_to_string(&cli.curve)
        .map_err(|e| Failure::io(format!("cannot read {}: {}", cli.curve.display(), e)))?;
    let precision = match cli.precision {
        Some(p) => Some(p),
        None => match std::env::var("WSEMI_PRECISION") {
            Ok(v) => Some(v.trim().parse().map_err(|_| Failure { code: 2, msg: format!("WSEMI_PRECISION: not a number: {}", v) })?),
            Err(_) => None,
        },
    };
    let config = CurveConfig { max_ext_degree: cli.max_ext_degree.max(1), precision };
    let loaded = parse_curve_file(&text).and_then(|spec| Curve::from_spec(&spec, config));
    loaded.map_err(|e| Failure { code: 2, msg: format!("{}: {}", cli.curve.display(), e) })
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let c = load(cli)?;
    match cli.command {
        Command::Info => report::info(&c, cli.json),
        Command::Places => report::places(&c, cli.json),
        Command::Lbasis => {
            let d = cli.divisor.as_deref().ok_or_else(|| Failure::usage("lbasis needs --divisor".into()))?;
            report::lbasis(&c, d, cli.json)
        }
        Command::Rrquot => {
            let m = cli.m.as_deref().ok_or_else(|| Failure::usage("rrquot needs --m".into()))?;
            let pts = cli.points.as_deref().ok_or_else(|| Failure::usage("rrquot needs --points".into()))?;
            report::rrquot(&c, m, pts, cli.chart, cli.json)
        }
        Command::Semigroup => {
            let pts = cli.points.as_deref().ok_or_else(|| Failure::usage("semigroup needs --points".into()))?;
            report::semigroup(&c, pts, cli.limit, cli.json, cli.svg.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

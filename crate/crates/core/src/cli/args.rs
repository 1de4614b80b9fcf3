use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{run, run_corpus, AnalysisRequest, CliError, Command};
use crate::branches::DEFAULT_DEPTH_LIMIT;
use crate::subvariety::{DEFAULT_SAMPLES, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "conelab",
    version,
    about = "Tangent cones, branches and ordinary singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Singular point of a hypersurface
    Point(PolyArgs),
    /// Germ at the origin of a curve given by an ideal
    CurveIdeal(PolyArgs),
    /// Branches of a plane curve germ
    Branches(PolyArgs),
    /// Generic position of a finite set of projective points
    PointsGeneric(PointsArgs),
    /// Codimension-one coordinate subvariety of a hypersurface
    Subvariety(SubArgs),
    /// Run every record of a corpus file
    Corpus { file: std::path::PathBuf },
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    /// Comma-separated variable names
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Polynomial; repeat or separate with ';' for ideal generators
    #[arg(long, required = true)]
    poly: Vec<String>,
    /// Comma-separated coordinates (default: origin)
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DEPTH_LIMIT)]
    depth: u32,
}

#[derive(Args, Debug)]
struct PointsArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    proj_dim: Option<usize>,
    /// Points such as "1:0:0;0:1:0"
    #[arg(long, required = true, allow_hyphen_values = true)]
    points: String,
}

#[derive(Args, Debug)]
struct SubArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    #[arg(long, required = true)]
    poly: String,
    /// The two variables cutting out the subvariety
    #[arg(long, value_delimiter = ',', required = true)]
    sub_vars: Vec<String>,
    /// Closed point of the subvariety to analyze as well
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn poly_request(command: Command, a: PolyArgs) -> AnalysisRequest {
    let mut req = AnalysisRequest::new(command);
    req.field = a.field;
    req.vars = a.vars;
    req.polys = a
        .poly
        .iter()
        .flat_map(|p| p.split(';'))
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect();
    req.point = a.point;
    req.depth = a.depth;
    req
}

/// Parses command-line arguments (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        stdout: text,
                        stderr: String::new(),
                        code: 0,
                    }
                }
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                },
            };
        }
    };
    let format = cli.format;
    let req = match cli.command {
        Sub::Point(a) => poly_request(Command::Point, a),
        Sub::CurveIdeal(a) => poly_request(Command::CurveIdeal, a),
        Sub::Branches(a) => poly_request(Command::Branches, a),
        Sub::PointsGeneric(a) => {
            let mut req = AnalysisRequest::new(Command::PointsGeneric);
            req.field = a.field;
            req.proj_dim = a.proj_dim;
            req.points = Some(a.points);
            req
        }
        Sub::Subvariety(a) => {
            let mut req = AnalysisRequest::new(Command::Subvariety);
            req.field = a.field;
            req.vars = a.vars;
            req.polys = vec![a.poly];
            req.sub_vars = a.sub_vars;
            req.point = a.point;
            req.samples = a.samples;
            req.seed = a.seed;
            req
        }
        Sub::Corpus { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(err) => {
                    return Outcome {
                        stdout: String::new(),
                        stderr: format!("cannot read {}: {err}\n", file.display()),
                        code: 1,
                    }
                }
            };
            let out = run_corpus(&text);
            let stdout = match format {
                Format::Json => json_line(&out),
                Format::Text => out.to_text(),
            };
            return Outcome {
                stdout,
                stderr: String::new(),
                code: out.exit_code(),
            };
        }
    };
    match run(&req) {
        Ok(report) => Outcome {
            stdout: match format {
                Format::Json => json_line(&report),
                Format::Text => report.to_text(),
            },
            stderr: String::new(),
            code: 0,
        },
        Err(err) => error_outcome(&err),
    }
}

fn error_outcome(err: &CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
        code: err.exit_code(),
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializes");
    s.push('\n');
    s
}

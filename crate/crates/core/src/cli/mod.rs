//! Requests, structured reports and corpus runs behind the `conelab` binary.

mod args;
mod corpus;
mod report;

pub use args::run_args;
pub use corpus::{
    parse_corpus, run_corpus, CorpusOutput, CorpusRecord, CorpusResult, CorpusSummary,
};
pub use report::{
    scalar_text, BranchJson, BranchesJson, ClosedPointJson, Report, SubvarietyJson, SCHEMA_VERSION,
};

use std::fmt;

use thiserror::Error;

use crate::arith::{parse_field, Field, FieldElem};
use crate::branches::{branch_analysis, BranchError, DEFAULT_DEPTH_LIMIT};
use crate::cone::{analyze_curve_ideal, analyze_hypersurface_point, Verdict};
use crate::mpoly::{parse_point, parse_poly, MPoly, Ring};
use crate::points::{
    generic_position_degree, hilbert_function_points, is_generic_position, parse_points,
};
use crate::subvariety::{
    analyze_closed_point, analyze_subvariety, normal_flatness_check, SubvarietySpec,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Point,
    CurveIdeal,
    Branches,
    PointsGeneric,
    Subvariety,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Point => "point",
            Command::CurveIdeal => "curve-ideal",
            Command::Branches => "branches",
            Command::PointsGeneric => "points-generic",
            Command::Subvariety => "subvariety",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        [
            Command::Point,
            Command::CurveIdeal,
            Command::Branches,
            Command::PointsGeneric,
            Command::Subvariety,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One analysis, with its inputs still in text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub command: Command,
    pub field: String,
    pub vars: Vec<String>,
    /// One polynomial, or the generators of a curve ideal.
    pub polys: Vec<String>,
    pub point: Option<String>,
    pub sub_vars: Vec<String>,
    pub proj_dim: Option<usize>,
    pub points: Option<String>,
    pub depth: u32,
    pub samples: usize,
    pub seed: u64,
}

impl AnalysisRequest {
    pub fn new(command: Command) -> AnalysisRequest {
        AnalysisRequest {
            command,
            field: "Q".into(),
            vars: Vec::new(),
            polys: Vec::new(),
            point: None,
            sub_vars: Vec::new(),
            proj_dim: None,
            points: None,
            depth: DEFAULT_DEPTH_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed input or missing arguments.
    #[error("usage: {0}")]
    Usage(String),
    /// Well-formed input the analysis does not accept.
    #[error("precondition: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

fn usage(msg: impl fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

fn precondition(msg: impl fmt::Display) -> CliError {
    CliError::Precondition(msg.to_string())
}

struct Parsed {
    field: Field,
    ring: Option<Ring>,
}

fn parse_common(req: &AnalysisRequest, need_ring: bool) -> Result<Parsed, CliError> {
    let field = parse_field(&req.field).map_err(usage)?;
    let ring = if need_ring {
        if req.vars.is_empty() {
            return Err(usage("--vars is required"));
        }
        Some(Ring::new(&field, &req.vars).map_err(usage)?)
    } else {
        None
    };
    Ok(Parsed { field, ring })
}

fn single_poly(req: &AnalysisRequest, ring: &Ring) -> Result<MPoly, CliError> {
    match req.polys.as_slice() {
        [p] => parse_poly(p, ring).map_err(usage),
        [] => Err(usage("--poly is required")),
        _ => Err(usage("exactly one polynomial expected")),
    }
}

fn point_or_origin(
    req: &AnalysisRequest,
    field: &Field,
    n: usize,
) -> Result<Vec<FieldElem>, CliError> {
    match &req.point {
        Some(text) => {
            let p = parse_point(text, field).map_err(usage)?;
            if p.len() != n {
                return Err(usage(format!(
                    "point has {} coordinates, expected {n}",
                    p.len()
                )));
            }
            Ok(p)
        }
        None => Ok(vec![field.zero(); n]),
    }
}

fn point_text(p: &[FieldElem]) -> String {
    p.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs one request. The report is deterministic in the request, including its seed.
pub fn run(req: &AnalysisRequest) -> Result<Report, CliError> {
    match req.command {
        Command::Point => run_point(req),
        Command::CurveIdeal => run_curve(req),
        Command::Branches => run_branches(req),
        Command::PointsGeneric => run_points(req),
        Command::Subvariety => run_subvariety(req),
    }
}

fn run_point(req: &AnalysisRequest) -> Result<Report, CliError> {
    let parsed = parse_common(req, true)?;
    let ring = parsed.ring.expect("ring");
    let f = single_poly(req, &ring)?;
    let p = point_or_origin(req, &parsed.field, ring.nvars())?;
    let analysis = analyze_hypersurface_point(&f, &p).map_err(precondition)?;
    let mut report = Report::empty(req.command.name(), &req.field, req.vars.clone());
    report.fill_point(&analysis);
    if ring.nvars() == 2 {
        let germ = f.translate(&p).map_err(precondition)?;
        match branch_analysis(&germ, req.depth) {
            Ok(b) => {
                report.branches = Some(report::branches_json(&b));
                report
                    .notes
                    .extend(b.notes.iter().map(|n| format!("branches: {n}")));
            }
            Err(err) => report.notes.push(format!("branches not computed: {err}")),
        }
    }
    Ok(report)
}

fn run_curve(req: &AnalysisRequest) -> Result<Report, CliError> {
    let parsed = parse_common(req, true)?;
    let ring = parsed.ring.expect("ring");
    if req.polys.is_empty() {
        return Err(usage("--poly is required"));
    }
    if req.point.is_some() {
        return Err(usage(
            "curve-ideal analyzes the germ at the origin; --point is not accepted",
        ));
    }
    let gens = req
        .polys
        .iter()
        .map(|g| parse_poly(g, &ring).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let analysis = analyze_curve_ideal(&gens).map_err(precondition)?;
    let mut report = Report::empty(req.command.name(), &req.field, req.vars.clone());
    report.fill_point(&analysis);
    Ok(report)
}

fn run_branches(req: &AnalysisRequest) -> Result<Report, CliError> {
    let parsed = parse_common(req, true)?;
    let ring = parsed.ring.expect("ring");
    let f = single_poly(req, &ring)?;
    let p = point_or_origin(req, &parsed.field, ring.nvars())?;
    let germ = f.translate(&p).map_err(precondition)?;
    let b = branch_analysis(&germ, req.depth).map_err(|err| match err {
        BranchError::MPoly(_) => usage(err),
        _ => precondition(err),
    })?;
    let mut report = Report::empty(req.command.name(), &req.field, req.vars.clone());
    report.multiplicity = Some(b.multiplicity);
    report.tangent_count = b.complete.then(|| b.branch_count());
    report.ordinary = Some(match b.ordinary() {
        Some(o) => Verdict::from_bool(o),
        None => Verdict::Undetermined,
    });
    report.branches = Some(report::branches_json(&b));
    report.notes.extend(b.notes.iter().cloned());
    Ok(report)
}

fn run_points(req: &AnalysisRequest) -> Result<Report, CliError> {
    let parsed = parse_common(req, false)?;
    let text = req
        .points
        .as_deref()
        .ok_or_else(|| usage("--points is required"))?;
    let ps = parse_points(text, &parsed.field).map_err(usage)?;
    if let Some(r) = req.proj_dim {
        if ps.r() != r {
            return Err(usage(format!("points lie in P^{}, expected P^{r}", ps.r())));
        }
    }
    let generic = is_generic_position(&ps).map_err(precondition)?;
    let sigma = generic_position_degree(ps.len() as u64, ps.r());
    let hf = (0..=sigma + 1)
        .map(|n| hilbert_function_points(&ps, n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(precondition)?;
    let vars = (0..=ps.r()).map(|i| format!("x{i}")).collect();
    let mut report = Report::empty(req.command.name(), &req.field, vars);
    report.tangent_count = Some(ps.len());
    report.generic_position = Some(generic);
    report.hilbert_function = Some(hf);
    Ok(report)
}

fn run_subvariety(req: &AnalysisRequest) -> Result<Report, CliError> {
    let parsed = parse_common(req, true)?;
    let ring = parsed.ring.expect("ring");
    let f = single_poly(req, &ring)?;
    let spec = SubvarietySpec::new(f, &req.sub_vars).map_err(|err| match err {
        crate::subvariety::SubvarietyError::DefiningVars(_)
        | crate::subvariety::SubvarietyError::UnknownVariable(_) => usage(err),
        _ => precondition(err),
    })?;
    let analysis = analyze_subvariety(&spec, req.samples, req.seed).map_err(precondition)?;
    let mut report = Report::empty(req.command.name(), &req.field, req.vars.clone());
    report.fill_point(&analysis.generic_point_report);
    report.fill_subvariety(&analysis);
    let sub = report.subvariety.as_mut().expect("filled");
    sub.defining_vars = spec.defining_vars();
    sub.free_vars = spec.free_vars();
    if let Some(text) = &req.point {
        let p = parse_point(text, &parsed.field).map_err(usage)?;
        let closed = analyze_closed_point(&spec, &p).map_err(precondition)?;
        let flat = normal_flatness_check(&spec, &p).map_err(precondition)?;
        sub.closed_point = Some(ClosedPointJson {
            point: point_text(&p),
            multiplicity: closed.multiplicity,
            tangent_count: closed.tangent_count_geometric,
            ordinary: closed.ordinary,
            normally_flat: flat,
        });
    }
    Ok(report)
}

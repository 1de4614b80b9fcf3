//! Corpus files: one request per line as shell-quoted `key=value` fields.
//!
//! ```text
//! # comment
//! name=node command=point field=Q vars=x,y poly="y^2 - x^2 - x^3" point=0,0 expect.ordinary=yes
//! ```
//!
//! Keys are `name`, `command`, `field`, `vars`, `poly` (curve-ideal generators
//! separated by `;`), `point`, `sub-vars`, `proj-dim`, `points`, `depth`, `samples`
//! and `seed`. A key `expect.<path>` compares the report value at the dotted path
//! with the given text (`null` for an absent value); `expect.exit` compares the
//! exit code of the record.

use rayon::prelude::*;
use serde::Serialize;

use super::{run, scalar_text, AnalysisRequest, CliError, Command, Report, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRecord {
    /// 1-based line number in the corpus file.
    pub line: usize,
    pub name: String,
    pub request: Result<AnalysisRequest, CliError>,
    pub expectations: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorpusResult {
    pub line: usize,
    pub name: String,
    pub exit_code: i32,
    pub report: Option<Report>,
    pub error: Option<String>,
    pub expectation_failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CorpusSummary {
    pub total: usize,
    pub completed: usize,
    pub errors: usize,
    pub expectations_checked: usize,
    pub expectation_failures: usize,
    /// Names of records that errored unexpectedly or missed an expectation.
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CorpusOutput {
    pub schema: u32,
    pub records: Vec<CorpusResult>,
    pub summary: CorpusSummary,
}

impl CorpusOutput {
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match (&r.error, r.expectation_failures.is_empty()) {
                (Some(e), _) => format!("error (exit {}): {e}", r.exit_code),
                (None, true) => "ok".into(),
                (None, false) => "expectation failed".into(),
            };
            out.push_str(&format!("[{}] {}: {status}\n", r.line, r.name));
            for f in &r.expectation_failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} records, {} completed, {} errors, {}/{} expectations failed\n",
            s.total, s.completed, s.errors, s.expectation_failures, s.expectations_checked
        ));
        if !s.failed.is_empty() {
            out.push_str(&format!("failed: {}\n", s.failed.join(", ")));
        }
        out
    }
}

fn parse_record(line_no: usize, line: &str) -> CorpusRecord {
    let mut name = format!("line{line_no}");
    let mut expectations = Vec::new();
    let request = (|| {
        let tokens =
            shlex::split(line).ok_or_else(|| CliError::Usage("unbalanced quotes".into()))?;
        let mut fields = Vec::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("field without '=': {tok:?}")))?;
            if k == "name" {
                name = v.to_string();
            } else if let Some(path) = k.strip_prefix("expect.") {
                expectations.push((path.to_string(), v.to_string()));
            } else {
                fields.push((k.to_string(), v.to_string()));
            }
        }
        build_request(&fields)
    })();
    CorpusRecord {
        line: line_no,
        name,
        request,
        expectations,
    }
}

fn build_request(fields: &[(String, String)]) -> Result<AnalysisRequest, CliError> {
    let bad = |k: &str, v: &str| CliError::Usage(format!("bad value for {k}: {v:?}"));
    let command = fields
        .iter()
        .find(|(k, _)| k == "command")
        .ok_or_else(|| CliError::Usage("missing command".into()))?;
    let mut req = AnalysisRequest::new(
        Command::from_name(&command.1).ok_or_else(|| bad("command", &command.1))?,
    );
    let list = |v: &str| {
        v.split(',')
            .map(|s| s.trim().to_string())
            .collect::<Vec<_>>()
    };
    for (k, v) in fields {
        match k.as_str() {
            "command" => {}
            "field" => req.field = v.clone(),
            "vars" => req.vars = list(v),
            "poly" => req.polys = v.split(';').map(|s| s.trim().to_string()).collect(),
            "point" => req.point = Some(v.clone()),
            "sub-vars" => req.sub_vars = list(v),
            "proj-dim" => req.proj_dim = Some(v.parse().map_err(|_| bad(k, v))?),
            "points" => req.points = Some(v.clone()),
            "depth" => req.depth = v.parse().map_err(|_| bad(k, v))?,
            "samples" => req.samples = v.parse().map_err(|_| bad(k, v))?,
            "seed" => req.seed = v.parse().map_err(|_| bad(k, v))?,
            _ => return Err(CliError::Usage(format!("unknown key {k:?}"))),
        }
    }
    Ok(req)
}

/// Records of a corpus file; blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Vec<CorpusRecord> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| parse_record(i + 1, l))
        .collect()
}

fn lookup(report: &serde_json::Value, path: &str) -> String {
    let mut v = report;
    for part in path.split('.') {
        v = match v {
            serde_json::Value::Object(map) => match map.get(part) {
                Some(x) => x,
                None => return "<missing>".into(),
            },
            serde_json::Value::Array(items) => {
                match part.parse::<usize>().ok().and_then(|i| items.get(i)) {
                    Some(x) => x,
                    None => return "<missing>".into(),
                }
            }
            _ => return "<missing>".into(),
        };
    }
    scalar_text(v)
}

fn run_record(rec: &CorpusRecord) -> CorpusResult {
    let outcome = rec.request.clone().and_then(|req| run(&req));
    let exit_code = outcome.as_ref().map_or_else(|e| e.exit_code(), |_| 0);
    let mut failures = Vec::new();
    let json = outcome
        .as_ref()
        .ok()
        .map(|r| serde_json::to_value(r).expect("report serializes"));
    for (path, want) in &rec.expectations {
        let got = if path == "exit" {
            exit_code.to_string()
        } else {
            match &json {
                Some(j) => lookup(j, path),
                None => "<error>".into(),
            }
        };
        if &got != want {
            failures.push(format!("{path}: expected {want}, got {got}"));
        }
    }
    let (report, error) = match outcome {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    CorpusResult {
        line: rec.line,
        name: rec.name.clone(),
        exit_code,
        report,
        error,
        expectation_failures: failures,
    }
}

/// Runs every record in parallel; results keep the order of the file.
pub fn run_corpus(text: &str) -> CorpusOutput {
    let records = parse_corpus(text);
    let results: Vec<CorpusResult> = records.par_iter().map(run_record).collect();
    let expects_exit = |r: &CorpusRecord| r.expectations.iter().any(|(k, _)| k == "exit");
    let mut failed = Vec::new();
    for (rec, res) in records.iter().zip(&results) {
        let unexpected_error = res.error.is_some() && !expects_exit(rec);
        if unexpected_error || !res.expectation_failures.is_empty() {
            failed.push(res.name.clone());
        }
    }
    let summary = CorpusSummary {
        total: results.len(),
        completed: results.iter().filter(|r| r.error.is_none()).count(),
        errors: results.iter().filter(|r| r.error.is_some()).count(),
        expectations_checked: records.iter().map(|r| r.expectations.len()).sum(),
        expectation_failures: results.iter().map(|r| r.expectation_failures.len()).sum(),
        failed,
    };
    CorpusOutput {
        schema: SCHEMA_VERSION,
        records: results,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let out = run_corpus("\n# nothing here\n");
        assert_eq!(out.summary.total, 0);
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn malformed_record_is_isolated() {
        let text = "name=cusp command=point vars=x,y poly='y^2 - x^3' expect.ordinary=no\n\
                    name=broken command=point vars=x,y poly='y^2 -'\n\
                    name=node command=point vars=x,y poly='y^2 - x^2' expect.tangent_count=2\n\
                    name=junk command=point vars=x,y \"poly=y\n";
        let out = run_corpus(text);
        assert_eq!(out.summary.total, 4);
        assert_eq!(out.summary.completed, 2);
        assert_eq!(out.summary.failed, vec!["broken", "line4"]);
        assert_eq!(out.records[1].exit_code, 1);
        assert_eq!(out.summary.expectation_failures, 0);
        assert_eq!(out.exit_code(), 2);
    }

    #[test]
    fn expectations() {
        let text = "name=off command=point vars=x,y poly='y - x^2' point=1,0 expect.exit=2\n\
                    name=wrong command=point vars=x,y poly='y - x^2' expect.multiplicity=2\n\
                    name=nested command=branches vars=x,y poly='y^2 - x^2' expect.branches.count=2\n";
        let out = run_corpus(text);
        assert_eq!(out.summary.failed, vec!["wrong"]);
        assert_eq!(
            out.records[1].expectation_failures,
            vec!["multiplicity: expected 2, got 1"]
        );
    }
}

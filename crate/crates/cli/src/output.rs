use std::io::Write;

use fncomp::regions::RateRegion;
use fncomp::{Error, Result};
use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, GlobalArgs};

/// Settings that reproduce a run, recorded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub problem: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    pub vertex_cap: usize,
}

pub struct Report {
    pub meta: Option<Meta>,
    pub body: Value,
    /// Regions for CSV output, each with its mode label.
    pub regions: Vec<(String, RateRegion)>,
    /// Print the body alone, without the metadata wrapper.
    pub bare: bool,
    /// Reported after the output is written; sets the exit code.
    pub failure: Option<Error>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Schema(format!("cannot serialize report: {e}")))
}

impl Report {
    pub fn new<T: Serialize>(meta: Meta, body: &T) -> Result<Self> {
        Ok(Report {
            meta: Some(meta),
            body: to_value(body)?,
            regions: Vec::new(),
            bare: false,
            failure: None,
        })
    }

    pub fn bare<T: Serialize>(body: &T) -> Result<Self> {
        Ok(Report {
            meta: None,
            body: to_value(body)?,
            regions: Vec::new(),
            bare: true,
            failure: None,
        })
    }

    pub fn with_regions(mut self, regions: Vec<(String, RateRegion)>) -> Self {
        self.regions = regions;
        self
    }
}

fn json(report: &Report) -> Result<String> {
    let value = if report.bare {
        report.body.clone()
    } else {
        serde_json::json!({ "meta": report.meta, "result": report.body })
    };
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Schema(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// One row per sweep sample; regions without samples list their
/// polyline with an empty λ.
fn csv(report: &Report) -> Result<String> {
    if report.regions.is_empty() {
        return Err(Error::Schema("CSV output is only available for region reports".into()));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Schema(format!("cannot write CSV: {e}"));
    w.write_record(["lambda", "R_X", "R_Y", "mode", "candidate_id"]).map_err(io)?;
    for (mode, region) in &report.regions {
        if region.samples.is_empty() {
            for p in &region.polyline {
                w.write_record([String::new(), p[0].to_string(), p[1].to_string(), mode.clone(), "0".into()])
                    .map_err(io)?;
            }
        }
        for s in &region.samples {
            w.write_record([
                s.lambda.to_string(),
                s.rx.to_string(),
                s.ry.to_string(),
                mode.clone(),
                s.candidate_id.to_string(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Schema(format!("cannot write CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Schema(e.to_string()))
}

pub fn write(global: &GlobalArgs, report: Report) -> Result<()> {
    let text = match global.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(&report)?,
    };
    match &global.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Schema(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Schema(format!("cannot write to standard output: {e}")))?,
    }
    report.failure.map_or(Ok(()), Err)
}

//! Serialized reports: key-sorted JSON and a plain-text summary.

use pncalc_core::oracle::{CheckOutcome, SamplePlan};
use pncalc_core::report::{Check, StructureReport, Verdict};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::ModelFile;

pub const ENGINE: &str = concat!("pncalc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub engine: String,
    pub model: ModelInfo,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_plan: Option<PlanInfo>,
    pub checks: Vec<CheckEntry>,
    pub notes: Vec<String>,
    pub overall: String,
    /// sha256 of the report with this field empty and wall-clock fields removed.
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub name: String,
    pub kind: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanInfo {
    pub samples: usize,
    pub fd_step: String,
    pub tolerance: String,
    pub range: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub mandatory: bool,
    pub verdict: String,
    /// Verdict and oracle agreement combined.
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub component: String,
    pub indices: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub agrees: bool,
    pub max_deviation: f64,
    pub worst_point: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_component: Option<usize>,
    pub samples: usize,
    pub tolerance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Report {
    pub fn from_structure(model: &ModelFile, seed: u64, plan: Option<&SamplePlan>, s: &StructureReport, timings: bool) -> Self {
        let mut report = Report {
            engine: ENGINE.to_string(),
            model: ModelInfo {
                name: model.name.clone(),
                kind: model.kind().as_str().to_string(),
                sha256: model.digest.clone(),
            },
            seed,
            oracle_plan: plan.map(|p| PlanInfo {
                samples: p.count,
                fd_step: p.fd_step.to_string(),
                tolerance: p.tolerance.to_string(),
                range: [p.range.0.to_string(), p.range.1.to_string()],
            }),
            checks: s.checks.iter().map(|c| entry(c, timings)).collect(),
            notes: s.notes.clone(),
            overall: if s.passed() { "PASS" } else { "FAIL" }.to_string(),
            digest: String::new(),
        };
        report.digest = report.compute_digest();
        report
    }

    pub fn passed(&self) -> bool {
        self.overall == "PASS"
    }

    pub fn compute_digest(&self) -> String {
        let mut canon = self.clone();
        canon.digest.clear();
        for c in &mut canon.checks {
            c.elapsed_ms = None;
        }
        hex::encode(Sha256::digest(json_bytes(&canon)))
    }
}

fn entry(c: &Check, timings: bool) -> CheckEntry {
    let (witness, reason) = match &c.verdict {
        Verdict::Pass => (None, None),
        Verdict::Fail(w) => (
            Some(WitnessEntry {
                component: w.component.clone(),
                indices: w.indices.clone(),
                value: w.value.clone(),
            }),
            None,
        ),
        Verdict::Blocked(r) => (None, Some(r.clone())),
    };
    CheckEntry {
        name: c.name.clone(),
        mandatory: c.mandatory,
        verdict: c.verdict.label().to_string(),
        passed: c.passed(),
        witness,
        reason,
        oracle: c.oracle.as_ref().map(oracle_entry),
        elapsed_ms: timings.then(|| c.elapsed.as_secs_f64() * 1e3),
    }
}

fn oracle_entry(o: &CheckOutcome) -> OracleEntry {
    OracleEntry {
        agrees: o.passed,
        max_deviation: o.max_deviation_f64(),
        worst_point: o.worst_point.iter().map(ToString::to_string).collect(),
        worst_component: o.worst_component,
        samples: o.samples,
        tolerance: o.tolerance.to_string(),
    }
}

fn json_bytes(report: &Report) -> Vec<u8> {
    // Value maps are BTreeMaps, so keys come out sorted.
    let value = serde_json::to_value(report).expect("report is plain data");
    let mut out = serde_json::to_vec_pretty(&value).expect("report is plain data");
    out.push(b'\n');
    out
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json_bytes(report),
        Format::Text => text(report).into_bytes(),
    }
}

/// Inverse of the json emitter.
pub fn read_report(bytes: &[u8]) -> serde_json::Result<Report> {
    serde_json::from_slice(bytes)
}

fn text(r: &Report) -> String {
    let mut out = format!(
        "{} ({}) sha256:{}\nengine: {}  seed: {}\n",
        r.model.name, r.model.kind, r.model.sha256, r.engine, r.seed
    );
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let label = if c.verdict == "PASS" && !c.passed { "FAIL" } else { &c.verdict };
        let mut line = format!("{label:<7} {:<width$}", c.name);
        if !c.mandatory {
            line.push_str("  (optional)");
        }
        if let Some(w) = &c.witness {
            line.push_str(&format!("  {} = {}", w.component, w.value));
        }
        if let Some(reason) = &c.reason {
            line.push_str(&format!("  blocked: {reason}"));
        }
        if let Some(o) = &c.oracle {
            let verdict = if o.agrees { "agrees" } else { "DISAGREES" };
            line.push_str(&format!("  [oracle {verdict}, max dev {:.3e} over {} pts]", o.max_deviation, o.samples));
        }
        if let Some(ms) = c.elapsed_ms {
            line.push_str(&format!("  {ms:.1} ms"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("OVERALL: {}\n", r.overall));
    out
}

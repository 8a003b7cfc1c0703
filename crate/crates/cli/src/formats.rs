//! JSON and JSON-lines artifacts. Every artifact starts with a [`Header`].

use std::fs;
use std::io::Write;
use std::path::Path;

use hermicode_core::dualcode::mindist::{MinDistReport, StopReason};
use hermicode_core::dualcode::peel::{PeelFailure, PeelOutcome};
use hermicode_core::dualcode::{CodeWord, PairWordSpec};
use hermicode_core::gf::PrimeField;
use hermicode_core::hermitian::HermitianSpace;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::header::Header;
use crate::{Error, Result};

/// Runs of equal nonzero entries as `[start, length, value]`.
pub fn encode_runs(entries: &[u8]) -> Vec<[u64; 3]> {
    let mut runs: Vec<[u64; 3]> = Vec::new();
    for (i, &v) in entries.iter().enumerate() {
        if v == 0 {
            continue;
        }
        match runs.last_mut() {
            Some(r) if r[0] + r[1] == i as u64 && r[2] == v as u64 => r[1] += 1,
            _ => runs.push([i as u64, 1, v as u64]),
        }
    }
    runs
}

pub fn decode_runs(length: usize, runs: &[[u64; 3]]) -> Result<Vec<u8>> {
    let mut out = vec![0u8; length];
    let mut end = 0u64;
    for &[start, len, value] in runs {
        if start < end || len == 0 || value == 0 || value > u8::MAX as u64 || start + len > length as u64 {
            return Err(Error::Format(format!("bad run [{start}, {len}, {value}]")));
        }
        out[start as usize..(start + len) as usize].fill(value as u8);
        end = start + len;
    }
    Ok(out)
}

/// One pair word a code word was assembled from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRecord {
    /// Row-major field labels of the reduced echelon basis of `π`.
    pub pi: Vec<u16>,
    pub alpha: u8,
    pub vertex_dim: isize,
}

impl From<&PairWordSpec> for PartRecord {
    fn from(s: &PairWordSpec) -> Self {
        PartRecord { pi: s.pi.labels(), alpha: s.alpha, vertex_dim: s.vertex_dim }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeWordFile {
    pub header: Header,
    pub length: usize,
    pub weight: usize,
    pub entries: Vec<[u64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartRecord>,
}

impl CodeWordFile {
    pub fn new(header: Header, c: &CodeWord, parts: Vec<PartRecord>) -> Self {
        CodeWordFile { header, length: c.len(), weight: c.weight(), entries: encode_runs(c.entries()), parts }
    }

    pub fn word(&self) -> Result<CodeWord> {
        let p = PrimeField::new(self.header.p)?;
        let c = CodeWord::new(p, decode_runs(self.length, &self.entries)?)?;
        if c.weight() != self.weight {
            return Err(Error::Format(format!("weight field {} but entries have weight {}", self.weight, c.weight())));
        }
        Ok(c)
    }
}

pub fn stop_name(s: StopReason) -> &'static str {
    match s {
        StopReason::Completed => "completed",
        StopReason::BudgetExhausted => "budget_exhausted",
        StopReason::Uncertifiable => "uncertifiable",
        StopReason::SupportCap => "support_cap",
    }
}

pub fn failure_name(f: PeelFailure) -> &'static str {
    match f {
        PeelFailure::Stuck => "stuck",
        PeelFailure::TooManySteps => "too_many_steps",
        PeelFailure::BudgetExhausted => "budget_exhausted",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub steps: u64,
    pub levels_completed: usize,
    pub info_set_ranks: Vec<usize>,
}

/// Wall-clock time is logged, not stored, so identical runs give identical
/// bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDistFile {
    pub header: Header,
    pub method: String,
    pub d: Option<usize>,
    pub lower_bound: usize,
    pub certified: bool,
    pub stop: String,
    pub dual_dimension: usize,
    pub budget_used: BudgetUsed,
    pub certificate: Option<Vec<[u64; 3]>>,
}

impl MinDistFile {
    pub fn new(header: Header, r: &MinDistReport) -> Self {
        MinDistFile {
            header,
            method: r.method.name().to_string(),
            d: r.best,
            lower_bound: r.lower_bound,
            certified: r.certified,
            stop: stop_name(r.stop).to_string(),
            dual_dimension: r.dual_dimension,
            budget_used: BudgetUsed {
                steps: r.steps,
                levels_completed: r.levels_completed,
                info_set_ranks: r.info_set_ranks.clone(),
            },
            certificate: r.certificate.as_ref().map(|c| encode_runs(c.entries())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStepRecord {
    pub beta: u8,
    pub vertex_dim: isize,
    pub pi: Vec<u16>,
    pub weight_before: usize,
    pub weight_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelFile {
    pub header: Header,
    pub input_weight: usize,
    pub succeeded: bool,
    pub failure: Option<String>,
    pub residual_weight: usize,
    pub steps: Vec<PeelStepRecord>,
}

impl PeelFile {
    pub fn new(header: Header, input: &CodeWord, out: &PeelOutcome) -> Self {
        PeelFile {
            header,
            input_weight: input.weight(),
            succeeded: out.succeeded(),
            failure: out.failure.map(|f| failure_name(f).to_string()),
            residual_weight: out.residual.weight(),
            steps: out
                .steps
                .iter()
                .map(|s| PeelStepRecord {
                    beta: s.beta,
                    vertex_dim: s.spec.vertex_dim,
                    pi: s.spec.pi.labels(),
                    weight_before: s.weight_before,
                    weight_after: s.weight_after,
                })
                .collect(),
        }
    }
}

/// Variety points as JSON lines: a header line, then `{"id", "coords"}`.
pub fn points_jsonl(header: &Header, space: &HermitianSpace) -> Result<String> {
    let mut out = serde_json::to_string(&json!({ "header": header }))?;
    out.push('\n');
    for (id, p) in space.points().iter().enumerate() {
        let coords: Vec<u16> = p.coords().iter().map(|c| c.label()).collect();
        out.push_str(&serde_json::to_string(&json!({ "id": id, "coords": coords }))?);
        out.push('\n');
    }
    Ok(out)
}

/// Generators as JSON lines: `{"id", "basis", "points"}` after a header line.
pub fn generators_jsonl(header: &Header, space: &HermitianSpace) -> Result<String> {
    let mut out = serde_json::to_string(&json!({ "header": header }))?;
    out.push('\n');
    for (id, g) in space.generators().iter().enumerate() {
        let line = json!({ "id": id, "basis": g.space.labels(), "points": g.point_ids });
        out.push_str(&serde_json::to_string(&line)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Compact single-line JSON with a trailing newline, for artifacts.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

/// Indented JSON, for summaries read by people.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

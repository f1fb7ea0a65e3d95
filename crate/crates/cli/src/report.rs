//! Machine-readable run reports.  A report is a flat list of check records,
//! each naming the law it certifies, the inputs it was computed from (as a
//! digest), and whether the residual came out exactly zero.  Serialization is
//! deterministic: records are sorted by check id and trial index, struct
//! fields emit in declaration order, and every rational is rendered as a
//! `"p/q"` string.

use serde::Serialize;

use hcs_core::rat::Rat;

/// Outcome of one check.  `ExpectedViolation` marks mutation-run records:
/// the check was *supposed* to fail on the damaged input and did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "exact-zero")]
    ExactZero,
    #[serde(rename = "violated")]
    Violated,
    #[serde(rename = "expected-violation")]
    ExpectedViolation,
}

/// One verified identity instance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    /// Stable slug identifying the check, e.g. `bianchi-three`.
    pub id: String,
    /// Human-readable statement of the law the check certifies.
    pub law: String,
    /// Trial index within the run (0 for one-shot checks).
    pub trial: usize,
    /// FNV-1a digest of the inputs (module document, sizes, seed, trial).
    pub inputs_digest: String,
    pub status: CheckStatus,
    /// Residual summary: `"0"` for exact zeros, otherwise a short
    /// description of where the residual is nonzero.
    pub residual: String,
    /// Optional structured payload (violation lists, basis matrices, action
    /// values), with rationals as `"p/q"` strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

/// A full run report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub engine_version: String,
    pub command: String,
    pub module: String,
    pub seed: u64,
    /// True iff every non-mutation check is exact-zero.
    pub overall_pass: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: &str, module: &str, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id).then(a.trial.cmp(&b.trial)));
        let overall_pass = checks.iter().all(|c| c.status != CheckStatus::Violated);
        Report {
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            module: module.to_string(),
            seed,
            overall_pass,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// 64-bit FNV-1a over the canonical input description.
pub fn fnv1a_hex(text: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

/// Exact `"p/q"` rendering used everywhere a rational crosses the report
/// boundary.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Collects check records for one run, stamping each with the digest of the
/// shared inputs plus its own identity.
pub struct Recorder {
    base: String,
    seed: u64,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    /// `base` should pin everything the checks depend on: the module
    /// document, variable count, and sampling density.
    pub fn new(base: String, seed: u64) -> Self {
        Recorder { base, seed, checks: Vec::new() }
    }

    pub fn push(
        &mut self,
        id: &str,
        law: &str,
        trial: usize,
        status: CheckStatus,
        residual: String,
        data: Option<serde_json::Value>,
    ) {
        let digest = fnv1a_hex(&format!("{}|{}|{}|{}", self.base, id, trial, self.seed));
        self.checks.push(CheckRecord {
            id: id.to_string(),
            law: law.to_string(),
            trial,
            inputs_digest: digest,
            status,
            residual,
            data,
        });
    }

    pub fn into_checks(self) -> Vec<CheckRecord> {
        self.checks
    }
}

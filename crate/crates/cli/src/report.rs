use std::collections::BTreeMap;

use serde::Serialize;
use springer_core::affine_weyl::AffineWeylElement;
use springer_core::exact_algebra::{format_rational, Assignment};

pub const SCHEMA_ID: &str = "springer-report/v1";

pub const SCOPE: &str = "ranks 2 and 3 are checked exhaustively and rank 4 by sampling; \
the statement for all ranks is a proof and is not reproduced by any finite run";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Mismatch => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub spectral_parameters: Vec<String>,
    pub seed: u64,
    pub trials: usize,
    pub methods: Vec<String>,
    pub scope: &'static str,
    pub status: Status,
    pub partial: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub box_elements: Vec<BoxEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_prime_reading: Option<ReadingResolution>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn add(&mut self, s: Status) {
        self.checks += 1;
        match s {
            Status::Pass => self.passed += 1,
            Status::Mismatch => self.failed += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn status(&self) -> Status {
        if self.failed > 0 {
            Status::Mismatch
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxEntry {
    pub element: String,
    pub word: String,
    pub length: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl BoxEntry {
    pub fn new(x: &AffineWeylElement) -> Self {
        BoxEntry { element: x.to_string(), word: word(x), length: x.length(), vertices: x.vertices() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub x: String,
    pub word: String,
    pub length: usize,
    pub status: Status,
    /// `[e, w0 x]`.
    pub expected: Vec<String>,
    pub computed: BTreeMap<String, Vec<String>>,
    pub agrees: BTreeMap<String, bool>,
    pub gaps: BTreeMap<String, Vec<String>>,
    pub outside_bound: Vec<String>,
    pub certificates: Vec<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault_injected: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub x: String,
    pub y: String,
    /// Whether `y <= x` in the Bruhat order.
    pub expected: bool,
    pub verdicts: Vec<VertexVerdicts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSample>,
    /// One assignment making every determinant nonzero at once.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    pub seeds: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexVerdicts {
    pub i: usize,
    pub methods: BTreeMap<String, MethodVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodVerdict {
    pub verdict: &'static str,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<Vec<[usize; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSample {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub n: usize,
    pub seed: u64,
    pub evaluations: usize,
    pub degree_bound: u32,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingResolution {
    pub passing: Vec<String>,
    pub chosen: Option<String>,
}

pub fn word(x: &AffineWeylElement) -> String {
    let w = x.reduced_word();
    if w.is_empty() {
        return "e".to_string();
    }
    w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
}

pub fn assignment_map(a: &Assignment) -> BTreeMap<String, String> {
    a.iter().map(|((j, i), v)| (format!("A_{j}_{i}"), format_rational(v))).collect()
}

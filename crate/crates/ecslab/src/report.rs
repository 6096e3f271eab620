//! Machine-readable verification reports.
//!
//! Field order is fixed by the struct definitions and no maps are used, so a
//! given config always serializes to the same bytes.

use ecslab_core::algebra::format_rational;
use ecslab_core::roter::Status;
use ecslab_core::Rational;
use serde::{Serialize, Serializer};

use crate::config::CaseConfig;

fn status_str<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(s.as_str())
}

/// Which part of the run produced a check; decides the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Validation,
    Invariant,
    Rank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "status_str")]
    pub status: Status,
    pub detail: String,
    #[serde(skip)]
    pub stage: Stage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsEcho {
    pub n: usize,
    pub f_coeffs: Vec<String>,
    #[serde(rename = "G_rows")]
    pub g_rows: Vec<Vec<String>>,
    #[serde(rename = "A_rows")]
    pub a_rows: Vec<Vec<String>>,
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

impl From<&CaseConfig> for ParamsEcho {
    fn from(c: &CaseConfig) -> Self {
        Self {
            n: c.n,
            f_coeffs: strings(&c.f_coeffs),
            g_rows: c.g_rows.iter().map(|r| strings(r)).collect(),
            a_rows: c.a_rows.iter().map(|r| strings(r)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRank {
    pub point: Vec<String>,
    pub d: usize,
}

impl PointRank {
    pub fn new(point: &[Rational], d: usize) -> Self {
        Self {
            point: strings(point),
            d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: ParamsEcho,
    pub checks: Vec<Check>,
    pub d_predicted: Option<usize>,
    pub d_by_point: Vec<PointRank>,
    #[serde(serialize_with = "status_str")]
    pub overall: Status,
}

impl VerificationReport {
    pub fn new(config: &CaseConfig) -> Self {
        Self {
            id: config.id.clone(),
            params: config.into(),
            checks: Vec::new(),
            d_predicted: None,
            d_by_point: Vec::new(),
            overall: Status::Pass,
        }
    }

    pub fn push(
        &mut self,
        stage: Stage,
        name: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
            stage,
        });
    }

    /// Sets `overall`: FAIL iff any check failed, PASS otherwise.
    pub fn finish(&mut self) {
        self.overall = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_warnings(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Warn)
    }

    fn failed_in(&self, stage: Stage) -> bool {
        self.checks
            .iter()
            .any(|c| c.stage == stage && c.status == Status::Fail)
    }

    pub fn validation_failed(&self) -> bool {
        self.failed_in(Stage::Validation)
    }

    pub fn invariant_failed(&self) -> bool {
        self.failed_in(Stage::Invariant) || self.failed_in(Stage::Rank)
    }
}

/// Case counts: `warn` is the number of passing cases with at least one
/// WARN check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFile {
    pub cases: Vec<VerificationReport>,
    pub summary: Summary,
}

impl ReportFile {
    pub fn new(cases: Vec<VerificationReport>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.overall {
                Status::Fail => summary.fail += 1,
                _ => {
                    summary.pass += 1;
                    if c.has_warnings() {
                        summary.warn += 1;
                    }
                }
            }
        }
        Self { cases, summary }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// 0 = all PASS (warnings allowed), 1 = a case failed validation,
    /// 2 = an invariant or rank check failed. 2 takes precedence over 1.
    pub fn exit_code(&self) -> u8 {
        if self.cases.iter().any(VerificationReport::invariant_failed) {
            2
        } else if self.cases.iter().any(VerificationReport::validation_failed) {
            1
        } else {
            0
        }
    }
}

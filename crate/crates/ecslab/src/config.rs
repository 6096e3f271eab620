//! Case configuration files.
//!
//! A config is one JSON document:
//!
//! ```json
//! { "cases": [ { "id": "R1", "n": 5, "f_coeffs": [0, 1],
//!                "G_rows": [[1,0,0],[0,1,0],[0,0,-1]],
//!                "A_rows": [[1,0,1],[0,0,0],[1,0,1]],
//!                "sample_points": [[0,1,0,0,0]] } ] }
//! ```
//!
//! Rationals are JSON integers or strings `"p"` / `"p/q"`. `sample_points` is
//! optional; when absent the five default points of [`default_sample_points`]
//! are used.

use ecslab_core::algebra::{format_rational, parse_rational, rat};
use ecslab_core::roter::RoterParams;
use ecslab_core::{Point, Rational, RationalMatrix};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("no cases")]
    NoCases,
    #[error("case {case}: field {field}: {message}")]
    Field {
        case: String,
        field: &'static str,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseConfig {
    pub id: String,
    pub n: usize,
    /// Coefficients of `f` in `x¹`, ascending degree.
    pub f_coeffs: Vec<Rational>,
    pub g_rows: Vec<Vec<Rational>>,
    pub a_rows: Vec<Vec<Rational>>,
    pub sample_points: Vec<Point>,
}

impl CaseConfig {
    pub fn params(&self) -> RoterParams {
        RoterParams::from_f_coeffs(
            self.n,
            &self.f_coeffs,
            RationalMatrix::from_rows(self.g_rows.clone()).expect("shape checked at parse time"),
            RationalMatrix::from_rows(self.a_rows.clone()).expect("shape checked at parse time"),
        )
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    cases: Vec<RawCase>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: String,
    n: usize,
    f_coeffs: Vec<Value>,
    #[serde(rename = "G_rows")]
    g_rows: Vec<Vec<Value>>,
    #[serde(rename = "A_rows")]
    a_rows: Vec<Vec<Value>>,
    #[serde(default)]
    sample_points: Option<Vec<Vec<Value>>>,
}

fn rational_of(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(num) => num
            .as_i64()
            .map(|i| rat(i, 1))
            .ok_or_else(|| format!("{num} is not an integer; write fractions as \"p/q\"")),
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational")),
        other => Err(format!("{other} is not a rational")),
    }
}

struct CaseParser<'a> {
    id: &'a str,
}

impl CaseParser<'_> {
    fn err(&self, field: &'static str, message: impl Into<String>) -> ConfigError {
        ConfigError::Field {
            case: self.id.to_string(),
            field,
            message: message.into(),
        }
    }

    fn vector(&self, field: &'static str, xs: &[Value]) -> Result<Vec<Rational>, ConfigError> {
        xs.iter()
            .enumerate()
            .map(|(k, v)| rational_of(v).map_err(|m| self.err(field, format!("entry {k}: {m}"))))
            .collect()
    }

    fn square(
        &self,
        field: &'static str,
        rows: &[Vec<Value>],
        size: usize,
    ) -> Result<Vec<Vec<Rational>>, ConfigError> {
        if rows.len() != size {
            return Err(self.err(field, format!("expected {size} rows, got {}", rows.len())));
        }
        rows.iter()
            .enumerate()
            .map(|(r, row)| {
                if row.len() != size {
                    return Err(self.err(
                        field,
                        format!("row {r} has width {}, expected {size}", row.len()),
                    ));
                }
                self.vector(field, row)
            })
            .collect()
    }

    fn points(
        &self,
        field: &'static str,
        raw: &[Vec<Value>],
        n: usize,
    ) -> Result<Vec<Point>, ConfigError> {
        if raw.is_empty() {
            return Err(self.err(field, "at least one sample point is required"));
        }
        raw.iter()
            .enumerate()
            .map(|(k, pt)| {
                if pt.len() != n {
                    return Err(self.err(
                        field,
                        format!("point {k} has {} coordinates, expected {n}", pt.len()),
                    ));
                }
                self.vector(field, pt).map(Point::new)
            })
            .collect()
    }
}

/// Parses and shape-checks a config document.
pub fn parse_config(text: &str) -> Result<Vec<CaseConfig>, ConfigError> {
    let doc: RawDocument =
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    if doc.cases.is_empty() {
        return Err(ConfigError::NoCases);
    }
    doc.cases
        .iter()
        .map(|raw| {
            let p = CaseParser { id: &raw.id };
            if raw.n < 3 {
                return Err(p.err("n", format!("n = {} leaves no G/A block", raw.n)));
            }
            let m = raw.n - 2;
            let sample_points = match &raw.sample_points {
                Some(pts) => p.points("sample_points", pts, raw.n)?,
                None => default_sample_points(raw.n),
            };
            Ok(CaseConfig {
                id: raw.id.clone(),
                n: raw.n,
                f_coeffs: p.vector("f_coeffs", &raw.f_coeffs)?,
                g_rows: p.square("G_rows", &raw.g_rows, m)?,
                a_rows: p.square("A_rows", &raw.a_rows, m)?,
                sample_points,
            })
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    points: Vec<Vec<Value>>,
}

/// Parses a points file `{"points": [[...], ...]}` and checks it against
/// every case, replacing their sample points.
pub fn apply_points_file(text: &str, cases: &mut [CaseConfig]) -> Result<(), ConfigError> {
    let raw: RawPoints =
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    for case in cases {
        let p = CaseParser { id: &case.id };
        case.sample_points = p.points("points", &raw.points, case.n)?;
    }
    Ok(())
}

/// The five default sample points for dimension `n`, in order:
///
/// 1. `(0, 1, 0, …, 0)`
/// 2. `(1, 1, …, 1)`
/// 3. `x^k = (−1)^(k+1) · k/2`, all coordinates nonzero: `(1/2, −1, 3/2, −2, …)`
/// 4. `x^k = (k mod 3) − 1`: `(0, 1, −1, 0, 1, …)`
/// 5. `x^k = 1/k`: `(1, 1/2, 1/3, …)`
pub fn default_sample_points(n: usize) -> Vec<Point> {
    let gen = |f: &dyn Fn(i64) -> Rational| Point::new((1..=n as i64).map(f).collect());
    vec![
        gen(&|k| rat(i64::from(k == 2), 1)),
        gen(&|_| rat(1, 1)),
        gen(&|k| rat(if k % 2 == 1 { k } else { -k }, 2)),
        gen(&|k| rat(k % 3 - 1, 1)),
        gen(&|k| rat(1, k)),
    ]
}

fn rationals_json(xs: &[Rational]) -> Value {
    Value::Array(
        xs.iter()
            .map(|q| Value::String(format_rational(q)))
            .collect(),
    )
}

fn rows_json(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rationals_json(r)).collect())
}

/// Renders cases in the config format, rationals as canonical strings.
/// Sample points are always written out.
pub fn render_config(cases: &[CaseConfig]) -> String {
    let cases: Vec<Value> = cases
        .iter()
        .map(|c| {
            serde_json::json!({
                "id": c.id,
                "n": c.n,
                "f_coeffs": rationals_json(&c.f_coeffs),
                "G_rows": rows_json(&c.g_rows),
                "A_rows": rows_json(&c.a_rows),
                "sample_points": Value::Array(
                    c.sample_points.iter().map(|p| rationals_json(p.coords())).collect()
                ),
            })
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&serde_json::json!({ "cases": cases }))
        .expect("JSON values always serialize");
    out.push('\n');
    out
}

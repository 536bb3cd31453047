use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Family, OutputFormat, SweepError, SweepRow};
use crate::steering::SteeringReport;

pub const CSV_HEADER: &str =
    "family,r_a,r_b,alpha_a,alpha_b,p,q,c11,c22,c33,N,I_ab,I_ba,S_ab,S_ba,delta";

const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation outside `1e-4 ≤ |x| < 1e12`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_owned();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let metrics = match r.report {
            Some(m) => [m.i_ab, m.i_ba, m.s_ab, m.s_ba, m.delta],
            None => [f64::NAN; 5],
        };
        let fields = [
            r.family.name().to_owned(),
            format_float(r.r_a),
            format_float(r.r_b),
            format_float(r.alpha_a),
            format_float(r.alpha_b),
            opt(r.p),
            opt(r.q),
            opt(r.c11),
            opt(r.c22),
            opt(r.c33),
            opt(r.n),
        ];
        out.push_str(&fields.join(","));
        for m in metrics {
            out.push(',');
            out.push_str(&format_float(m));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    family: Family,
    r_a: f64,
    r_b: f64,
    alpha_a: f64,
    alpha_b: f64,
    p: Option<f64>,
    q: Option<f64>,
    c11: Option<f64>,
    c22: Option<f64>,
    c33: Option<f64>,
    #[serde(rename = "N")]
    n: Option<f64>,
    #[serde(rename = "I_ab")]
    i_ab: Option<f64>,
    #[serde(rename = "I_ba")]
    i_ba: Option<f64>,
    #[serde(rename = "S_ab")]
    s_ab: Option<f64>,
    #[serde(rename = "S_ba")]
    s_ba: Option<f64>,
    delta: Option<f64>,
}

/// Rounds to the same 12 significant digits the CSV carries.
fn round12(x: f64) -> f64 {
    format_float(x).parse().unwrap_or(x)
}

impl From<&SweepRow> for JsonRow {
    fn from(r: &SweepRow) -> Self {
        let m = r.report;
        let o = |x: Option<f64>| x.map(round12);
        JsonRow {
            family: r.family,
            r_a: round12(r.r_a),
            r_b: round12(r.r_b),
            alpha_a: round12(r.alpha_a),
            alpha_b: round12(r.alpha_b),
            p: o(r.p),
            q: o(r.q),
            c11: o(r.c11),
            c22: o(r.c22),
            c33: o(r.c33),
            n: o(r.n),
            i_ab: o(m.map(|m| m.i_ab)),
            i_ba: o(m.map(|m| m.i_ba)),
            s_ab: o(m.map(|m| m.s_ab)),
            s_ba: o(m.map(|m| m.s_ba)),
            delta: o(m.map(|m| m.delta)),
        }
    }
}

impl From<JsonRow> for SweepRow {
    fn from(j: JsonRow) -> Self {
        let report = match (j.i_ab, j.i_ba, j.s_ab, j.s_ba, j.delta) {
            (Some(i_ab), Some(i_ba), Some(s_ab), Some(s_ba), Some(delta)) => Some(SteeringReport {
                i_ab,
                i_ba,
                s_ab,
                s_ba,
                delta,
            }),
            _ => None,
        };
        SweepRow {
            family: j.family,
            r_a: j.r_a,
            r_b: j.r_b,
            alpha_a: j.alpha_a,
            alpha_b: j.alpha_b,
            p: j.p,
            q: j.q,
            c11: j.c11,
            c22: j.c22,
            c33: j.c33,
            n: j.n,
            report,
        }
    }
}

pub fn to_json_string(rows: &[SweepRow]) -> String {
    let rows: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn parse_json_rows(text: &str) -> Result<Vec<SweepRow>, SweepError> {
    let rows: Vec<JsonRow> = serde_json::from_str(text)?;
    Ok(rows.into_iter().map(SweepRow::from).collect())
}

/// Writes `rows` to `path` in the requested format.
pub fn emit(rows: &[SweepRow], format: OutputFormat, path: &Path) -> Result<(), SweepError> {
    if rows.is_empty() {
        return Err(SweepError::EmptyRows);
    }
    let text = match format {
        OutputFormat::Csv => to_csv_string(rows),
        OutputFormat::Json => to_json_string(rows),
    };
    fs::write(path, text).map_err(|source| SweepError::Io {
        path: path.to_owned(),
        source,
    })
}

//! Report rows and their CSV/JSON encodings.
//!
//! Fixed CSV schema (header always present, UTF-8, LF line endings):
//!
//! ```text
//! v,b,d_re,d_im,lambda,gamma_order,n,m_index,quantity,bound,attained,margin,pass
//! ```
//!
//! `margin` is the slack of the check: for upper bounds it is
//! `bound - attained`, for lower bounds `attained - bound`, so a
//! nonnegative margin always means the check holds. Skipped rows (quantity
//! not defined for the tuple) leave the numeric fields empty and carry
//! `skip: <reason>` in the pass column; they never affect the exit status.

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "v,b,d_re,d_im,lambda,gamma_order,n,m_index,quantity,bound,attained,margin,pass";

/// Outcome column of a row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RowStatus {
    Pass(bool),
    Skipped(String),
}

impl RowStatus {
    pub fn skip(reason: impl std::fmt::Display) -> Self {
        RowStatus::Skipped(format!("skip: {reason}"))
    }

    pub fn failed(&self) -> bool {
        matches!(self, RowStatus::Pass(false))
    }

    fn encode(&self) -> String {
        match self {
            RowStatus::Pass(true) => "true".into(),
            RowStatus::Pass(false) => "false".into(),
            RowStatus::Skipped(reason) => reason.clone(),
        }
    }

    fn decode(s: &str) -> Self {
        match s {
            "true" => RowStatus::Pass(true),
            "false" => RowStatus::Pass(false),
            other => RowStatus::Skipped(other.to_string()),
        }
    }
}

/// One verified (or skipped) quantity for one parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub v: f64,
    pub b: f64,
    pub d_re: f64,
    pub d_im: f64,
    pub lambda: f64,
    pub gamma_order: f64,
    pub n: u32,
    pub m_index: u32,
    pub quantity: String,
    pub bound: Option<f64>,
    pub attained: Option<f64>,
    pub margin: Option<f64>,
    pub pass: RowStatus,
}

impl ReportRow {
    /// Sort key: parameter tuple first, then quantity, so output bytes are
    /// independent of production order.
    fn key(&self) -> (u32, [u64; 6], u32, &str) {
        fn bits(x: f64) -> u64 {
            // total order for non-NaN params: flip sign bit arithmetic
            let b = x.to_bits() as i64;
            (if b < 0 { !b } else { b | i64::MIN }) as u64
        }
        (
            self.n,
            [
                bits(self.lambda),
                bits(self.gamma_order),
                bits(self.v),
                bits(self.b),
                bits(self.d_re),
                bits(self.d_im),
            ],
            self.m_index,
            &self.quantity,
        )
    }
}

/// Sorts rows by parameter tuple and quantity.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| a.key().cmp(&b.key()));
}

fn opt(x: &Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.v,
            r.b,
            r.d_re,
            r.d_im,
            r.lambda,
            r.gamma_order,
            r.n,
            r.m_index,
            r.quantity,
            opt(&r.bound),
            opt(&r.attained),
            opt(&r.margin),
            r.pass.encode()
        ));
    }
    out
}

pub fn to_json(rows: &[ReportRow]) -> String {
    let mut text = serde_json::to_string_pretty(rows).expect("rows serialize");
    text.push('\n');
    text
}

/// Parses text produced by [`to_csv`] back into rows.
pub fn from_csv(text: &str) -> Result<Vec<ReportRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("bad or missing header: {other:?}")),
    }
    let mut rows = Vec::new();
    for (idx, raw) in lines.enumerate() {
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.splitn(13, ',').collect();
        if fields.len() != 13 {
            return Err(format!("line {}: expected 13 fields", idx + 2));
        }
        let num = |i: usize| -> Result<f64, String> {
            fields[i]
                .parse()
                .map_err(|_| format!("line {}: bad number '{}'", idx + 2, fields[i]))
        };
        let optnum = |i: usize| -> Result<Option<f64>, String> {
            if fields[i].is_empty() {
                Ok(None)
            } else {
                num(i).map(Some)
            }
        };
        rows.push(ReportRow {
            v: num(0)?,
            b: num(1)?,
            d_re: num(2)?,
            d_im: num(3)?,
            lambda: num(4)?,
            gamma_order: num(5)?,
            n: fields[6]
                .parse()
                .map_err(|_| format!("line {}: bad n", idx + 2))?,
            m_index: fields[7]
                .parse()
                .map_err(|_| format!("line {}: bad m_index", idx + 2))?,
            quantity: fields[8].to_string(),
            bound: optnum(9)?,
            attained: optnum(10)?,
            margin: optnum(11)?,
            pass: RowStatus::decode(fields[12]),
        });
    }
    Ok(rows)
}

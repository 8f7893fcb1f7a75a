//! CSV and JSON rendering. Every real number is written with the working
//! precision's full significant digits (17 for binary64, 36 for extended);
//! output is byte-deterministic for a fixed configuration.

use ganelius::approximant::Scheme;
use ganelius::numerics::Real;
use ganelius::verify::{theoretical_rate, ErrorReport};

use crate::checks::CheckResult;
use crate::Failure;

fn sig(v: f64) -> String {
    Real::format_sig(v)
}

/// One sweep report: a `#`-prefixed metadata line, the fixed header, one
/// row per N. Multiple reports (e.g. `--scheme both`) are stacked with a
/// blank line between them.
pub fn reports_csv(reports: &[ErrorReport]) -> String {
    let mut out = String::new();
    for (i, rep) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!(
            "# function={} scheme={} precision={} d={} mu={} nu={} theoretical_ratio={} fitted_slope={}\n",
            rep.function,
            rep.scheme,
            rep.precision,
            sig(rep.d),
            sig(rep.mu),
            sig(rep.nu),
            sig(rep.theoretical_ratio),
            sig(rep.fitted_slope),
        ));
        out.push_str("N,max_error,argmax,ratio\n");
        for row in &rep.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                row.max_error_str,
                row.argmax,
                row.ratio.map(sig).unwrap_or_default(),
            ));
        }
    }
    out
}

/// A single report serializes as one object, several as an array.
pub fn reports_json(reports: &[ErrorReport]) -> Result<String, Failure> {
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(reports)
    }
    .map_err(|e| Failure::runtime(e.to_string()))?;
    Ok(text + "\n")
}

#[derive(serde::Serialize)]
pub struct RateRow {
    pub function: String,
    pub d: f64,
    pub mu: f64,
    pub rate_ganelius: f64,
    pub rate_sesinc: f64,
}

impl RateRow {
    pub fn new(id: &str, d: f64, mu: f64) -> Self {
        RateRow {
            function: id.to_string(),
            d,
            mu,
            rate_ganelius: theoretical_rate(d, mu, Scheme::Ganelius),
            rate_sesinc: theoretical_rate(d, mu, Scheme::Sesinc),
        }
    }
}

pub fn rates_csv(rows: &[RateRow]) -> String {
    let mut out = String::from("function,d,mu,rate_ganelius,rate_sesinc\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.function,
            sig(r.d),
            sig(r.mu),
            sig(r.rate_ganelius),
            sig(r.rate_sesinc),
        ));
    }
    out
}

pub fn rates_json(rows: &[RateRow]) -> Result<String, Failure> {
    let text =
        serde_json::to_string_pretty(rows).map_err(|e| Failure::runtime(e.to_string()))?;
    Ok(text + "\n")
}

#[derive(serde::Serialize)]
struct CheckReport<'a> {
    pass: bool,
    checks: &'a [CheckResult],
}

pub fn checks_json(checks: &[CheckResult], pass: bool) -> Result<String, Failure> {
    let text = serde_json::to_string_pretty(&CheckReport { pass, checks })
        .map_err(|e| Failure::runtime(e.to_string()))?;
    Ok(text + "\n")
}

//! Serializable probe outputs. Values are stored as `f64` regardless of the
//! working scalar so that artifacts are stable and directly comparable.
//!
//! Every CSV emitted by the crate uses the single schema
//! `series,index,x_or_n,value_1,value_2,bound,verdict`.

use serde::Serialize;

pub const CSV_HEADER: &str = "series,index,x_or_n,value_1,value_2,bound,verdict";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMode {
    SupMax,
    LpNotMin,
    LpNotMax,
    Frechet,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub series: String,
    pub index: u64,
    pub x_or_n: f64,
    /// Norm of the perturbation for extremum probes; ratio input for fits.
    pub value_1: f64,
    /// Delta-K or ratio value.
    pub value_2: f64,
    /// Rigorous error bound attached to `value_2` where one applies.
    pub bound: f64,
    pub pass: bool,
}

impl ProbeSample {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.series,
            self.index,
            self.x_or_n,
            self.value_1,
            self.value_2,
            self.bound,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub tolerance: f64,
    pub detail: String,
}

impl Verdict {
    pub fn new(pass: bool, tolerance: f64, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub mode: ProbeMode,
    pub samples: Vec<ProbeSample>,
    pub fitted_slope: Option<f64>,
    pub expected_slope: Option<f64>,
    pub remainder_fitted_slope: Option<f64>,
    pub remainder_expected_slope: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl ProbeReport {
    pub fn csv_rows(&self) -> Vec<String> {
        self.samples.iter().map(ProbeSample::csv_row).collect()
    }
}

/// Sup-norm local-max certificate in report form.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CertificateReport {
    pub gamma_bar: f64,
    pub eta: f64,
    pub epsilon: f64,
}

/// Combined outcome of the Lp extremum probe: the spike series refuting
/// "local maximizer" and the shrinking smooth series refuting "local
/// minimizer". The probe's claim needs both halves.
#[derive(Clone, Debug, Serialize)]
pub struct LpExtremumOutcome {
    pub not_max: ProbeReport,
    pub not_min: ProbeReport,
    /// First spike index from which the increment is certified positive.
    pub n_star: Option<u64>,
}

impl LpExtremumOutcome {
    pub fn pass(&self) -> bool {
        self.not_max.verdict.pass && self.not_min.verdict.pass
    }

    pub fn csv_rows(&self) -> Vec<String> {
        let mut rows = self.not_max.csv_rows();
        rows.extend(self.not_min.csv_rows());
        rows
    }
}

/// Writes rows under the fixed header, RFC 4180 line endings.
pub fn to_csv(rows: &[String]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push_str("\r\n");
    for r in rows {
        out.push_str(r);
        out.push_str("\r\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape() {
        let s = ProbeSample {
            series: "spike".into(),
            index: 10,
            x_or_n: 10.0,
            value_1: 0.5,
            value_2: -0.25,
            bound: 1e-3,
            pass: true,
        };
        assert_eq!(s.csv_row(), "spike,10,10,0.5,-0.25,0.001,pass");
        let text = to_csv(&[s.csv_row()]);
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.ends_with("\r\n"));
    }
}

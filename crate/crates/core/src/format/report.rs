use serde::{Deserialize, Serialize};

use crate::decide::Verdict;
use crate::error::{Error, Result};
use crate::witness::WitnessReport;

pub const SCHEMA_VERSION: &str = "funcobs-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Structured output of a `check` or `witness` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub system: String,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default)]
    pub timing: Vec<StageTiming>,
}

impl Report {
    pub fn new(system: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            system: system.into(),
            verdicts: Vec::new(),
            witness: None,
            timing: Vec::new(),
        }
    }

    /// Runs `f`, recording its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.timing.push(StageTiming {
            stage: stage.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: Report = serde_json::from_str(text).map_err(|e| Error::InvalidSystem(format!("report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidSystem(format!(
                "report: unsupported schema_version {:?}",
                report.schema_version
            )));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::check_all;
    use crate::exactlin::Matrix;
    use crate::system::SystemSextuple;
    use crate::witness::solve_over_field;

    #[test]
    fn report_round_trips() {
        let sys = SystemSextuple::new(
            Matrix::from_ints(&[[0, 0], [1, 0]]),
            Matrix::from_ints(&[[1], [0]]),
            Matrix::from_ints(&[[1, 1]]),
            Matrix::from_ints(&[[0]]),
            Matrix::from_ints(&[[0, 0]]),
            Matrix::from_ints(&[[1]]),
        )
        .unwrap();
        let mut report = Report::new("example");
        report.verdicts = report.timed("decide", || check_all(&sys)).unwrap();
        report.witness = Some(report.timed("witness", || solve_over_field(&sys)).unwrap());
        let text = report.to_json_pretty();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn rejects_unknown_schema() {
        let mut r = Report::new("x");
        r.schema_version = "other".into();
        assert!(Report::from_json(&r.to_json_pretty()).is_err());
    }
}

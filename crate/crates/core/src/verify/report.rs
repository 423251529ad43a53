use std::time::Instant;

use serde::Serialize;

/// How `measured` is compared with `threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

/// Outcome of one check; `pass` is exactly the recorded comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub measured: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(
        check: &str,
        params: serde_json::Value,
        measured: f64,
        threshold: f64,
        comparison: Comparison,
        started: Instant,
    ) -> CheckReport {
        let pass = match comparison {
            Comparison::AtMost => measured <= threshold,
            Comparison::Above => measured > threshold,
        };
        CheckReport {
            check: check.into(),
            params,
            measured,
            threshold,
            comparison,
            pass,
            seconds: started.elapsed().as_secs_f64(),
            details: Vec::new(),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }

    /// Marks the report failed with a reason, independent of the comparison.
    pub(crate) fn fail_with(mut self, d: impl Into<String>) -> Self {
        self.pass = false;
        self.details.push(d.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = CheckReport::new("x", serde_json::json!({"t": 1.0}), 0.5, 1.0, Comparison::AtMost, Instant::now());
        assert!(r.pass);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check", "params", "measured", "threshold", "pass", "seconds"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v.get("details").is_none());
        assert_eq!(v["comparison"], "<=");
        assert!(!CheckReport::new("x", v, 0.0, 0.0, Comparison::Above, Instant::now()).pass);
    }
}

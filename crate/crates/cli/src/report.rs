//! Verify cases and their JSON / CSV / text renderings.

use std::collections::BTreeSet;
use std::fmt::Display;

use num_bigint::BigUint;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BoundHolds,
    DiscrepancyNoted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundHolds => "bound_holds",
            Status::DiscrepancyNoted => "discrepancy_noted",
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

/// Ordered `name = value` pairs; serialized as a JSON object in insertion order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Params(pub Vec<(&'static str, String)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &'static str, value: impl Display) -> Self {
        self.0.push((name, value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| v.as_str())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyCase {
    pub statement_id: &'static str,
    pub parameters: Params,
    pub expected: String,
    pub observed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerifyCase {
    /// `pass` iff the two values are equal.
    pub fn exact<T: PartialEq + Display>(
        statement_id: &'static str,
        parameters: Params,
        expected: T,
        observed: T,
    ) -> Self {
        let status = if expected == observed {
            Status::Pass
        } else {
            Status::Fail
        };
        VerifyCase {
            statement_id,
            parameters,
            expected: expected.to_string(),
            observed: observed.to_string(),
            status,
            method: None,
            note: None,
        }
    }

    /// `bound_holds` iff `lower <= observed <= upper` for the bounds given.
    pub fn bounded(
        statement_id: &'static str,
        parameters: Params,
        lower: Option<BigUint>,
        upper: Option<BigUint>,
        observed: BigUint,
    ) -> Self {
        let holds = lower.as_ref().is_none_or(|l| *l <= observed) && upper.as_ref().is_none_or(|u| observed <= *u);
        let expected = match (&lower, &upper) {
            (Some(l), Some(u)) => format!("[{l}, {u}]"),
            (Some(l), None) => format!(">= {l}"),
            (None, Some(u)) => format!("<= {u}"),
            (None, None) => "any".to_string(),
        };
        VerifyCase {
            statement_id,
            parameters,
            expected,
            observed: observed.to_string(),
            status: if holds { Status::BoundHolds } else { Status::Fail },
            method: None,
            note: None,
        }
    }

    /// A known conflict between a worked example and the definitions; never fails.
    pub fn discrepancy(
        statement_id: &'static str,
        parameters: Params,
        expected: impl Display,
        observed: impl Display,
        note: &str,
    ) -> Self {
        VerifyCase {
            statement_id,
            parameters,
            expected: expected.to_string(),
            observed: observed.to_string(),
            status: Status::DiscrepancyNoted,
            method: None,
            note: Some(note.to_string()),
        }
    }

    pub fn method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Turns a passing case into a failure with an explanation.
    pub fn fail_with(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.note = Some(note.into());
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool_version: &'static str,
    seed: String,
    cases: &'a [VerifyCase],
}

pub fn cases_json(cases: &[VerifyCase], seed: u64) -> String {
    let env = Envelope {
        tool_version: TOOL_VERSION,
        seed: seed.to_string(),
        cases,
    };
    let mut out = serde_json::to_string_pretty(&env).expect("cases serialize");
    out.push('\n');
    out
}

/// One row per case; every parameter name seen in any case becomes a column.
pub fn cases_csv(cases: &[VerifyCase]) -> anyhow::Result<String> {
    let names: BTreeSet<&str> = cases
        .iter()
        .flat_map(|c| c.parameters.0.iter().map(|(n, _)| *n))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["statement_id"];
    header.extend(names.iter().copied());
    header.extend(["expected", "observed", "status", "method", "note"]);
    w.write_record(&header)?;
    for c in cases {
        let mut row = vec![c.statement_id.to_string()];
        row.extend(names.iter().map(|n| c.parameters.get(n).unwrap_or("").to_string()));
        row.push(c.expected.clone());
        row.push(c.observed.clone());
        row.push(c.status.as_str().to_string());
        row.push(c.method.clone().unwrap_or_default());
        row.push(c.note.clone().unwrap_or_default());
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cases_text(cases: &[VerifyCase]) -> String {
    let mut out = String::new();
    for c in cases {
        let params: Vec<String> = c.parameters.0.iter().map(|(n, v)| format!("{n}={v}")).collect();
        out.push_str(&format!(
            "{:<18} {:<36} expected {:<16} observed {:<16} {}",
            c.statement_id,
            params.join(","),
            c.expected,
            c.observed,
            c.status.as_str()
        ));
        if let Some(note) = &c.note {
            out.push_str(&format!("  # {note}"));
        }
        out.push('\n');
    }
    let failed = cases.iter().filter(|c| c.status.is_failure()).count();
    out.push_str(&format!("{} cases, {} failed\n", cases.len(), failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        let p = Params::new().with("d", 3);
        assert_eq!(VerifyCase::exact("rankchow", p.clone(), 8, 8).status, Status::Pass);
        assert_eq!(VerifyCase::exact("rankchow", p.clone(), 8, 7).status, Status::Fail);
        let b = |l: Option<u32>, u: Option<u32>, o: u32| {
            VerifyCase::bounded(
                "NUMAB",
                p.clone(),
                l.map(BigUint::from),
                u.map(BigUint::from),
                BigUint::from(o),
            )
            .status
        };
        assert_eq!(b(Some(1), Some(3), 3), Status::BoundHolds);
        assert_eq!(b(Some(1), Some(3), 4), Status::Fail);
        assert_eq!(b(None, Some(3), 0), Status::BoundHolds);
        assert_eq!(b(Some(5), None, 4), Status::Fail);
    }

    #[test]
    fn json_keeps_parameter_order_and_string_integers() {
        let c = VerifyCase::exact("rankchow", Params::new().with("d", 3).with("k", 1), 8u32, 8u32);
        let text = cases_json(&[c], 7);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["seed"], "7");
        assert_eq!(v["cases"][0]["expected"], "8");
        assert!(text.find("\"d\"").unwrap() < text.find("\"k\"").unwrap());
    }

    #[test]
    fn csv_flattens_parameters() {
        let a = VerifyCase::exact("perm", Params::new().with("n", 3).with("k", 1), 9, 9);
        let b = VerifyCase::exact("rankchow", Params::new().with("d", 3), 8, 8);
        let text = cases_csv(&[a, b]).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "statement_id,d,k,n,expected,observed,status,method,note"
        );
        assert_eq!(lines.next().unwrap(), "perm,,1,3,9,9,pass,,");
    }
}

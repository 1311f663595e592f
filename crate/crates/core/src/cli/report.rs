use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CccError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CheckFailed,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::CheckFailed => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    JsonLines,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub status: Status,
    pub payload: Value,
    pub witnesses: Vec<Value>,
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| CccError::invalid(e.to_string()))
}

impl Report {
    pub fn ok(payload: Value) -> Report {
        Report {
            status: Status::Ok,
            payload,
            witnesses: Vec::new(),
        }
    }

    /// `check-failed` when `passed` is false.
    pub fn check(passed: bool, payload: Value, witnesses: Vec<Value>) -> Report {
        Report {
            status: if passed { Status::Ok } else { Status::CheckFailed },
            payload,
            witnesses,
        }
    }

    pub fn from_error(e: &CccError) -> Report {
        let kind = match e {
            CccError::InvalidArgument(_) => "invalid-argument",
            CccError::Validation { .. } => "validation",
            CccError::Precondition(_) => "precondition",
            CccError::Unsupported(_) => "unsupported",
            CccError::WindowTooSmall { .. } => "window-too-small",
            CccError::NonGenericPoint(_) => "non-generic-point",
            CccError::GridAlignment(_) => "grid-alignment",
            CccError::Io(_) => "io",
        };
        let mut payload = json!({ "error": e.to_string(), "kind": kind });
        if let CccError::Validation { location, .. } = e {
            payload["location"] = Value::from(location.as_str());
        }
        Report {
            status: Status::InvalidInput,
            payload,
            witnesses: Vec::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "status": self.status,
            "payload": self.payload,
            "witnesses": self.witnesses,
        })
    }

    /// Keys come out sorted since JSON objects here are ordered maps.
    pub fn emit(&self, format: Format) -> String {
        let v = self.to_value();
        let mut s = match format {
            Format::Pretty => serde_json::to_string_pretty(&v),
            Format::JsonLines => serde_json::to_string(&v),
        }
        .expect("report serialises");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Report> {
        let v: Value = serde_json::from_str(text)?;
        let status = match v["status"].as_str() {
            Some("ok") => Status::Ok,
            Some("check-failed") => Status::CheckFailed,
            Some("invalid-input") => Status::InvalidInput,
            _ => return Err(CccError::invalid("report has no valid status")),
        };
        Ok(Report {
            status,
            payload: v["payload"].clone(),
            witnesses: v["witnesses"].as_array().cloned().unwrap_or_default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn round_trip_and_sorted_keys() {
        let r = Report::check(
            false,
            json!({"zeta": 1, "alpha": to_value(&Rational::new(3, 4).unwrap()).unwrap()}),
            vec![json!("w")],
        );
        for f in [Format::Pretty, Format::JsonLines] {
            let text = r.emit(f);
            assert_eq!(Report::parse(&text).unwrap(), r);
        }
        let line = r.emit(Format::JsonLines);
        assert_eq!(
            line,
            "{\"payload\":{\"alpha\":\"3/4\",\"zeta\":1},\"status\":\"check-failed\",\"witnesses\":[\"w\"]}\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Report::from_error(&CccError::invalid("x")).status.exit_code(), 1);
        assert_eq!(Status::CheckFailed.exit_code(), 2);
    }
}

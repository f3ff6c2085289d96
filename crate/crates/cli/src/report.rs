use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use gtkit::boundary::Scalar;
use gtkit::Rat;
use serde::{Deserialize, Serialize};

/// A labelled value. Rationals stay "p/q" strings; floats only appear when
/// the producing computation was numeric, and then carry their tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Value {
    Exact { value: String },
    Numeric { value: f64, tolerance: f64 },
    Text { value: String },
}

impl Value {
    pub fn exact(r: &Rat) -> Self {
        Value::Exact { value: r.to_string() }
    }

    pub fn count(n: u64) -> Self {
        Value::Exact { value: n.to_string() }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text { value: s.into() }
    }

    fn csv_fields(&self) -> [String; 3] {
        match self {
            Value::Exact { value } => ["exact".into(), value.clone(), String::new()],
            Value::Numeric { value, tolerance } => ["numeric".into(), value.to_string(), tolerance.to_string()],
            Value::Text { value } => ["text".into(), value.clone(), String::new()],
        }
    }
}

impl From<&Scalar> for Value {
    fn from(s: &Scalar) -> Self {
        match s {
            Scalar::Exact(r) => Value::exact(r),
            Scalar::Approx { value, tolerance } => Value::Numeric { value: *value, tolerance: *tolerance },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    #[serde(flatten)]
    pub value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Plain computations with nothing to check.
    Done,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub name: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<Entry>,
    pub status: Status,
    pub timing: Vec<Phase>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: vec![],
            status: Status::Done,
            timing: vec![],
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: Value) {
        self.results.push(Entry { label: label.into(), value });
    }

    /// Runs `f` and records its wall time under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timing.push(Phase { name: name.into(), seconds: t.elapsed().as_secs_f64() });
        out
    }

    /// A failed check anywhere turns the whole report into a failure.
    pub fn check(&mut self, ok: bool) {
        self.status = match (self.status, ok) {
            (Status::Fail, _) | (_, false) => Status::Fail,
            _ => Status::Pass,
        };
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report is plain data")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// label,mode,value,tolerance rows.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["label", "mode", "value", "tolerance"])?;
        for e in &self.results {
            let [mode, value, tol] = e.value.csv_fields();
            w.write_record([e.label.as_str(), &mode, &value, &tol])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gtkit::rat::rat;

    fn sample() -> RunReport {
        let mut r = RunReport::new("uat");
        r.input("kappa", "0").input("n", "8,16");
        r.push("N=8", Value::Numeric { value: 0.015810276679842028, tolerance: 1e-12 });
        r.push("limit", Value::exact(&rat(-3, 7)));
        r.push("note", Value::text("a, \"quoted\" note"));
        r.check(true);
        r.timing.push(Phase { name: "total".into(), seconds: 0.125 });
        r
    }

    #[test]
    fn json_roundtrip() {
        let r = sample();
        let line = r.to_json_line();
        assert!(!line.contains('\n'));
        let back = RunReport::from_json(&line).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_line(), line);
        assert!(line.contains(r#""mode":"exact","value":"-3/7""#), "{line}");
    }

    #[test]
    fn status_is_sticky() {
        let mut r = RunReport::new("verify");
        assert!(r.passed());
        r.check(false);
        r.check(true);
        assert_eq!(r.status, Status::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn csv_rows() {
        let mut buf = vec![];
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "label,mode,value,tolerance");
        assert_eq!(lines[2], "limit,exact,-3/7,");
        assert!(lines[3].starts_with("note,text,\"a, \"\"quoted\"\" note\""));
    }
}

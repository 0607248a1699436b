use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim {
    pub name: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub pass: bool,
}

/// Everything a subcommand found, in the order it was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: Vec<Field>,
    pub verdicts: Vec<Verdict>,
    pub dimensions: Vec<Dim>,
    pub outputs: Vec<Field>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(subcommand: &str) -> Self {
        RunReport {
            subcommand: subcommand.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            dimensions: Vec::new(),
            outputs: Vec::new(),
            elapsed_ms: 0,
            seed: None,
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.inputs.push(Field {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn output(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.outputs.push(Field {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn dim(&mut self, name: &str, value: impl TryInto<u64>) -> &mut Self {
        let value = value.try_into().unwrap_or(u64::MAX);
        self.dimensions.push(Dim {
            name: name.into(),
            value,
        });
        self
    }

    pub fn verdict(&mut self, name: &str, expected: bool, observed: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            expected,
            observed,
            pass: expected == observed,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self
            .inputs
            .iter()
            .chain(&self.outputs)
            .map(|f| f.name.len())
            .chain(self.dimensions.iter().map(|d| d.name.len()))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        let _ = write!(out, "{} ({} ms", self.subcommand, self.elapsed_ms);
        if let Some(seed) = self.seed {
            let _ = write!(out, ", seed {seed}");
        }
        out.push_str(")\n");
        for f in &self.inputs {
            let _ = writeln!(out, "  {:width$}  {}", f.name, f.value);
        }
        for d in &self.dimensions {
            let _ = writeln!(out, "  {:width$}  {}", d.name, d.value);
        }
        for f in &self.outputs {
            let _ = writeln!(out, "  {:width$}  {}", f.name, f.value);
        }
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  [{tag}] {}: {} (expected {})",
                v.name, v.observed, v.expected
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = RunReport::new("p1p1");
        r.input("a", 1)
            .dim("rank", 9usize)
            .output("curve", "x^2 - 1/2*y*z");
        r.verdict("surjective", true, true);
        r.seed = Some(7);
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.passed());
        assert!(r.to_table().contains("[PASS] surjective"));
    }

    #[test]
    fn failing_verdict() {
        let mut r = RunReport::new("x");
        r.verdict("smooth", true, false);
        assert!(!r.passed());
    }
}

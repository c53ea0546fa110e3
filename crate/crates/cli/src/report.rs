use std::collections::BTreeMap;
use std::fmt::Write as _;

use depthzero::abelian::FinAbGroup;
use depthzero::cohomology::Counterexample;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseVerdict {
    Pass,
    Fail,
    /// Nothing independent to compare against.
    Unverified,
    /// Not run: a resource cap was hit.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub key: String,
    pub verdict: CaseVerdict,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, FinAbGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Case {
    pub fn new(key: impl Into<String>, verdict: CaseVerdict) -> Self {
        Case { key: key.into(), verdict, groups: BTreeMap::new(), classes: None, counterexamples: Vec::new(), detail: None }
    }

    pub fn group(mut self, name: &str, g: FinAbGroup) -> Self {
        self.groups.insert(name.to_string(), g);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Pass iff no counterexamples.
    pub fn from_counterexamples(key: impl Into<String>, classes: usize, cex: Vec<Counterexample>) -> Self {
        let verdict = if cex.is_empty() { CaseVerdict::Pass } else { CaseVerdict::Fail };
        Case { classes: Some(classes), counterexamples: cex, ..Case::new(key, verdict) }
    }

    /// Compares two computed groups; a mismatch is recorded as a
    /// counterexample with the two values.
    pub fn compare(key: impl Into<String>, check: &str, lhs: (&str, &FinAbGroup), rhs: (&str, &FinAbGroup)) -> Self {
        let mut c = Case::new(key, CaseVerdict::Pass).group(lhs.0, lhs.1.clone()).group(rhs.0, rhs.1.clone());
        if lhs.1 != rhs.1 {
            c.verdict = CaseVerdict::Fail;
            c.counterexamples.push(group_mismatch(check, lhs.1, rhs.1));
        }
        c
    }
}

pub fn group_mismatch(check: &str, lhs: &FinAbGroup, rhs: &FinAbGroup) -> Counterexample {
    Counterexample {
        check: check.to_string(),
        class: Vec::new(),
        cocycle: Vec::new(),
        lhs: vec![vec![lhs.to_string()]],
        rhs: vec![vec![rhs.to_string()]],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub inputs: serde_json::Value,
    pub cases: Vec<Case>,
    pub verdict: Verdict,
    /// Set when there were no cases to check.
    pub vacuous: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(task: &str, inputs: serde_json::Value, cases: Vec<Case>) -> Self {
        let failed = cases.iter().any(|c| c.verdict == CaseVerdict::Fail);
        Report {
            task: task.to_string(),
            inputs,
            vacuous: cases.is_empty(),
            cases,
            verdict: if failed { Verdict::Fail } else { Verdict::Pass },
            timing_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{}: {verdict} ({} cases, {} ms)", self.task, self.cases.len(), self.timing_ms);
        if self.vacuous {
            let _ = writeln!(s, "  vacuous: no cases");
        }
        for c in &self.cases {
            let _ = write!(s, "  [{}] {}", format!("{:?}", c.verdict).to_lowercase(), c.key);
            for (name, g) in &c.groups {
                let _ = write!(s, "  {name} = {g}");
            }
            if let Some(n) = c.classes {
                let _ = write!(s, "  ({n} classes)");
            }
            if let Some(d) = &c.detail {
                let _ = write!(s, "  {d}");
            }
            s.push('\n');
            for x in &c.counterexamples {
                let _ = writeln!(s, "      counterexample {}: class {:?}, lhs {:?}, rhs {:?}", x.check, x.class, x.lhs, x.rhs);
            }
        }
        s
    }
}

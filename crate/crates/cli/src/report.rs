//! Verdict collection and the two renderings: one human line per verdict,
//! or a single JSON object with fixed fields. Both carry exactly the same
//! verdicts and witness strings, so the formats never disagree.

use serde::Serialize;

use overlat_core::{AxiomReport, ValidationReport};

#[derive(Serialize)]
pub struct Verdict {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    inputs: &'a [String],
    verdicts: &'a [Verdict],
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    results: &'a [String],
    exit: i32,
}

/// Accumulates verdicts and auxiliary result lines for one invocation.
pub struct Report {
    command: &'static str,
    inputs: Vec<String>,
    verdicts: Vec<Verdict>,
    results: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Vec<String>) -> Self {
        Report {
            command,
            inputs,
            verdicts: Vec::new(),
            results: Vec::new(),
        }
    }

    pub fn pass(&mut self, axiom: &str) {
        self.verdicts.push(Verdict {
            axiom: axiom.to_string(),
            pass: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, axiom: &str, witness: String) {
        self.verdicts.push(Verdict {
            axiom: axiom.to_string(),
            pass: false,
            witness: Some(witness),
        });
    }

    pub fn result(&mut self, line: String) {
        self.results.push(line);
    }

    /// One verdict per listed rule: pass if the report holds no violation
    /// under that rule, otherwise one fail entry per violation, in report
    /// order.
    pub fn rules(&mut self, rules: &[&str], report: &ValidationReport) {
        for rule in rules {
            let mut any = false;
            for v in report.violations.iter().filter(|v| v.rule == *rule) {
                any = true;
                self.fail(rule, format!("({}): {}", v.witnesses.join(", "), v.message));
            }
            if !any {
                self.pass(rule);
            }
        }
    }

    /// One verdict per axiom, labeled with its short code (QO1..QG4) under
    /// an optional prefix such as `source-` or `extension-`.
    pub fn axioms(&mut self, prefix: &str, report: &AxiomReport) {
        for v in &report.verdicts {
            let axiom = format!("{prefix}{}", v.axiom.code(report.kind));
            match &v.witness {
                None => self.pass(&axiom),
                Some(w) => self.fail(&axiom, w.to_string()),
            }
        }
    }

    /// Render to stdout and return the exit code: 0 when every verdict
    /// passed, 1 otherwise.
    pub fn finish(self, json: bool) -> i32 {
        let exit = if self.verdicts.iter().all(|v| v.pass) {
            0
        } else {
            1
        };
        if json {
            let doc = JsonReport {
                command: self.command,
                inputs: &self.inputs,
                verdicts: &self.verdicts,
                results: &self.results,
                exit,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("report serializes")
            );
        } else {
            for v in &self.verdicts {
                match &v.witness {
                    None => println!("{} {}", v.axiom, if v.pass { "pass" } else { "FAIL" }),
                    Some(w) => println!("{} FAIL  {w}", v.axiom),
                }
            }
            for line in &self.results {
                println!("{line}");
            }
        }
        exit
    }
}

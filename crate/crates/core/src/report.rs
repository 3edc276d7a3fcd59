//! Check outcomes as data: a report is a (possibly empty) list of violations.
//!
//! Every checker in this crate is exhaustive and deterministic, so the first
//! violation it records is the lexicographically smallest one in element
//! declaration order.

use std::fmt;

/// One broken rule instance: which rule, which elements witness it, and a
/// rendered explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Kebab-case rule name, e.g. `"monotone"` or `"boundary-zero"`.
    pub rule: String,
    /// The witness elements, in the order the rule statement mentions them.
    pub witnesses: Vec<String>,
    /// Human-readable account of why the witnesses break the rule.
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} witness ({}): {}",
            self.rule,
            self.witnesses.join(", "),
            self.message
        )
    }
}

/// Result of checking one rule (or one rule family) exhaustively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        ValidationReport::default()
    }

    pub fn of(violations: Vec<Violation>) -> Self {
        ValidationReport { violations }
    }

    /// True exactly when no violation was found.
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: &str, witnesses: &[&str], message: String) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            witnesses: witnesses.iter().map(|w| w.to_string()).collect(),
            message,
        });
    }

    /// First violation in scan order, if any.
    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

//! Pass/fail reports with exact witnesses.

use crate::linalg::Vector;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Both evaluated sides of a failed identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Vector(Vector),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// Where a check failed: the basis-index tuple it was evaluated at, plus the
/// two sides. Witnesses always satisfy `lhs != rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of checking one named condition exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub condition: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(condition: impl Into<String>) -> CheckReport {
        CheckReport {
            condition: condition.into(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn fail(
        condition: impl Into<String>,
        indices: Vec<usize>,
        lhs: Value,
        rhs: Value,
    ) -> CheckReport {
        debug_assert!(lhs != rhs, "witness sides must differ");
        CheckReport {
            condition: condition.into(),
            verdict: Verdict::Fail,
            witness: Some(Witness { indices, lhs, rhs }),
        }
    }

    pub fn fail_scalars(
        condition: impl Into<String>,
        indices: Vec<usize>,
        lhs: Scalar,
        rhs: Scalar,
    ) -> CheckReport {
        CheckReport::fail(condition, indices, Value::Scalar(lhs), Value::Scalar(rhs))
    }

    pub fn fail_vectors(
        condition: impl Into<String>,
        indices: Vec<usize>,
        lhs: Vector,
        rhs: Vector,
    ) -> CheckReport {
        CheckReport::fail(condition, indices, Value::Vector(lhs), Value::Vector(rhs))
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.verdict, &self.witness) {
            (Verdict::Pass, _) => write!(f, "pass {}", self.condition),
            (Verdict::Fail, Some(w)) => write!(
                f,
                "FAIL {} at {:?}: lhs = {}, rhs = {}",
                self.condition, w.indices, w.lhs, w.rhs
            ),
            (Verdict::Fail, None) => write!(f, "FAIL {}", self.condition),
        }
    }
}

/// Returns the first failing report, or a pass labeled `all_label`.
pub fn first_failure(
    all_label: &str,
    checks: impl IntoIterator<Item = CheckReport>,
) -> CheckReport {
    for c in checks {
        if !c.passed() {
            return c;
        }
    }
    CheckReport::pass(all_label)
}

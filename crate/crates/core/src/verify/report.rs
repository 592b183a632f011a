use std::fmt::Write as _;

use serde::Serialize;

use crate::operator::DiffOperator;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExactZero,
    Violated,
    Adjudicated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactZero => "exact_zero",
            Status::Violated => "violated",
            Status::Adjudicated => "adjudicated",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Set when a violation is the predicted outcome (a refutation witness).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub expected_violation: bool,
}

impl Relation {
    pub fn new(id: impl Into<String>, status: Status) -> Self {
        Self { id: id.into(), status, witness: None, printed: None, computed: None, note: None, expected_violation: false }
    }

    /// `exact_zero` if `lhs - rhs` vanishes, otherwise `violated` with the residual as witness.
    pub fn equation(id: impl Into<String>, lhs: &DiffOperator, rhs: &DiffOperator) -> Result<Self> {
        let diff = lhs.sub(rhs)?;
        Ok(Self::zero_check(id, &diff))
    }

    pub fn zero_check(id: impl Into<String>, residual: &DiffOperator) -> Self {
        if residual.is_zero() {
            Self::new(id, Status::ExactZero)
        } else {
            let mut r = Self::new(id, Status::Violated);
            r.witness = Some(residual.render());
            r
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn expecting_violation(mut self) -> Self {
        self.expected_violation = true;
        self
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Violated
    }

    /// True when the outcome is the one the suite predicts.
    pub fn as_expected(&self) -> bool {
        self.holds() != self.expected_violation
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub rep: String,
    pub suite: String,
    pub relations: Vec<Relation>,
}

impl CheckReport {
    pub fn new(rep: impl Into<String>, suite: impl Into<String>) -> Self {
        Self { rep: rep.into(), suite: suite.into(), relations: Vec::new() }
    }

    pub fn push(&mut self, r: Relation) {
        self.relations.push(r);
    }

    pub fn get(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }

    /// No relation is violated.
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(Relation::holds)
    }

    /// Every relation came out as predicted, counting expected violations.
    pub fn as_expected(&self) -> bool {
        self.relations.iter().all(Relation::as_expected)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.holds())
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {} / {}\n", self.rep, self.suite);
        let _ = writeln!(out, "| relation | status | detail |");
        let _ = writeln!(out, "|---|---|---|");
        for r in &self.relations {
            let mut detail = Vec::new();
            if let Some(p) = &r.printed {
                detail.push(format!("printed: `{}`", p));
            }
            if let Some(c) = &r.computed {
                detail.push(format!("computed: `{}`", c));
            }
            if let Some(w) = &r.witness {
                detail.push(format!("residual: `{}`", w));
            }
            if let Some(n) = &r.note {
                detail.push(n.clone());
            }
            if r.expected_violation {
                detail.push("violation expected".into());
            }
            let _ = writeln!(out, "| {} | {} | {} |", r.id, r.status.as_str(), detail.join("; ").replace('|', "\\|"));
        }
        out
    }
}

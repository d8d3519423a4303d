//! Check records shared by the verification routines. They serialize to
//! the JSON shapes emitted by the command-line front end.

use std::fmt::Display;

use serde::Serialize;

/// One algebra identity, both sides in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl RelationCheck {
    /// Compare two values and record both sides.
    pub fn compare<T: PartialEq + Display>(relation: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        RelationCheck {
            relation: relation.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }
}

/// A check tied to a cone order `N`, optionally carrying the witness that
/// makes it constructive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnessed_by: Option<String>,
    pub pass: bool,
}

impl Check {
    pub fn compare<T: PartialEq + Display>(
        check: impl Into<String>,
        n: u32,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        Check {
            check: check.into(),
            n,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            witnessed_by: None,
            pass: lhs == rhs,
        }
    }

    pub fn witnessed(mut self, witness: impl Into<String>) -> Self {
        self.witnessed_by = Some(witness.into());
        self
    }
}

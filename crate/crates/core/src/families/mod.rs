//! Index families with closed forms, and exact checks of the polynomial
//! identities they satisfy.

mod errata;
mod expr;
mod index;
mod verify;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{IntPolynomial, PolyError};

pub use errata::{errata, Erratum};
pub use expr::parse_index;
pub use index::{
    family_index, family_index_u64, h_index, jacobsthal, p_index, s_index, FamilyId,
};
pub use verify::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter {n} is outside the domain of family {family}")]
    OutOfDomain { family: FamilyId, n: u64 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::PreconditionViolated(msg()))
    }
}

/// The first failing check of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub cell: String,
    pub check: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking one identity over a parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: String,
    pub checked: u64,
    pub failures: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(identity: &str, params: impl fmt::Display) -> Self {
        Self {
            identity: identity.to_string(),
            params: params.to_string(),
            checked: 0,
            failures: 0,
            pass: true,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn check(
        &mut self,
        cell: &str,
        check: &str,
        ok: bool,
        sides: impl FnOnce() -> (String, String),
    ) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            if self.counterexample.is_none() {
                let (lhs, rhs) = sides();
                self.counterexample = Some(Counterexample {
                    cell: cell.to_string(),
                    check: check.to_string(),
                    lhs,
                    rhs,
                });
            }
        }
    }

    pub(crate) fn check_eq(
        &mut self,
        cell: &str,
        check: &str,
        lhs: &IntPolynomial,
        rhs: &IntPolynomial,
    ) {
        self.check(cell, check, lhs == rhs, || (lhs.pretty(), rhs.pretty()));
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Fold cell reports (in order) into one report for the whole sweep.
    pub fn merge(identity: &str, params: impl fmt::Display, cells: Vec<IdentityReport>) -> Self {
        let mut out = Self::new(identity, params);
        for c in cells {
            out.checked += c.checked;
            out.failures += c.failures;
            out.pass &= c.pass;
            if out.counterexample.is_none() {
                out.counterexample = c.counterexample;
            }
            for n in c.notes {
                out.note(n);
            }
        }
        out
    }
}

/// Run `f` on every cell in parallel and merge in cell order.
pub fn sweep<C, F>(
    identity: &str,
    params: impl fmt::Display,
    cells: Vec<C>,
    f: F,
) -> Result<IdentityReport, FamilyError>
where
    C: Send + Sync,
    F: Fn(&C) -> Result<IdentityReport, FamilyError> + Send + Sync,
{
    let reports = cells.par_iter().map(&f).collect::<Result<Vec<_>, _>>()?;
    Ok(IdentityReport::merge(identity, params, reports))
}

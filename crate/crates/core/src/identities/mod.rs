//! Mechanical verification: the identity catalog, the nabla matrices with
//! their two-variable Schur expansions, and positivity scans.

mod catalog;
mod matrix;
mod qtschur;
mod scan;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::partitions::partitions_of;
use crate::symfunc::{same_element, Basis, SymFunc};
use crate::Result;

pub use catalog::{verify, verify_all, IdentityId};
pub use matrix::{check_sign_conjecture, nabla_matrix, NablaMatrix};
pub use qtschur::{qt_schur, qt_schur_expand, QTSchurExpansion};
pub use scan::{conjectured_diag, dimension_at_one, scan_positivity, ScanTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A conjecture failed at the scanned size: a research result, not a bug.
    Finding,
}

/// A reproducible counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// An alternative reading of an identity, evaluated for the record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variant {
    pub label: String,
    pub status: Status,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub range: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub ms: u64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
}

impl VerdictReport {
    fn new(id: &str, range: String, witness: Option<Witness>, failure: Status, started: Instant) -> Self {
        VerdictReport {
            id: id.to_owned(),
            range,
            status: if witness.is_some() { failure } else { Status::Pass },
            witness,
            ms: started.elapsed().as_millis() as u64,
            note: String::new(),
            variants: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// One evaluated instance of an identity.
struct Case {
    input: String,
    lhs: SymFunc,
    rhs: SymFunc,
}

impl Case {
    fn new(input: impl Into<String>, lhs: SymFunc, rhs: SymFunc) -> Self {
        Case { input: input.into(), lhs, rhs }
    }

    fn witness(&self) -> Option<Witness> {
        (!same_element(&self.lhs, &self.rhs)).then(|| Witness {
            input: self.input.clone(),
            lhs: self.lhs.to_basis(Basis::S).to_text(),
            rhs: self.rhs.to_basis(Basis::S).to_text(),
        })
    }
}

/// Evaluates every input in parallel; the witness is the first failure in
/// input order, so it does not depend on scheduling.
fn first_failure<T: Sync>(inputs: &[T], case: impl Fn(&T) -> Result<Case> + Sync) -> Result<Option<Witness>> {
    let outcomes: Vec<Result<Option<Witness>>> = inputs.par_iter().map(|x| Ok(case(x)?.witness())).collect();
    for o in outcomes {
        if let Some(w) = o? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn variant<T: Sync>(label: &str, inputs: &[T], case: impl Fn(&T) -> Result<Case> + Sync) -> Result<Variant> {
    let witness = first_failure(inputs, case)?;
    Ok(Variant {
        label: label.to_owned(),
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        witness,
    })
}

/// `s_lambda` for every `lambda` with `lo <= |lambda| <= hi`.
fn schur_inputs(lo: u32, hi: u32) -> Vec<SymFunc> {
    (lo..=hi).flat_map(partitions_of).map(|l| SymFunc::basis_element(Basis::S, l)).collect()
}

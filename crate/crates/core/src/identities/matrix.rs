//! The matrices `nabla_{lambda mu} = <nabla S_lambda, S_mu>`, expanded in
//! two-variable Schur polynomials, and the sign pattern conjectured for
//! their rows.

use std::time::Instant;

use serde_json::{json, Value};

use super::{qt_schur_expand, QTSchurExpansion, Status, VerdictReport, Witness};
use crate::macdonald::{eigen_operator, EigenSpec};
use crate::partitions::{partitions_of, Partition};
use crate::ring::Poly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NablaMatrix {
    pub n: u32,
    pub order: Vec<Partition>,
    /// `entries[lambda][mu]`, indices following `order`.
    pub entries: Vec<Vec<QTSchurExpansion>>,
    pub raw: Vec<Vec<Poly>>,
}

/// Builds the degree-`n` matrix from the Schur matrix of `nabla`.
pub fn nabla_matrix(n: u32) -> Result<NablaMatrix> {
    let order = partitions_of(n);
    let op = eigen_operator(n, &EigenSpec::Nabla)?;
    let k = order.len();
    let mut raw = vec![vec![Poly::zero(); k]; k];
    for (l, row) in raw.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            // op(s_lambda) = sum_mu entries[mu][lambda] s_mu / denom
            let p = &op.entries[m][l];
            *cell = if op.denom.is_one() {
                p.clone()
            } else {
                p.div_exact(&op.denom).ok_or_else(|| Error::Solve("non-polynomial nabla entry".into()))?
            };
        }
    }
    let entries =
        raw.iter().map(|row| row.iter().map(qt_schur_expand).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    Ok(NablaMatrix { n, order, entries, raw })
}

impl NablaMatrix {
    /// One line per row: `[2]: 0 | -s11`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (lambda, row) in self.order.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|c| c.to_text()).collect();
            out.push_str(&format!("{}: {}\n", lambda.to_text(), cells.join(" | ")));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|c| c.to_latex()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", rows.join(" \\\\\n"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "order": self.order.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|row| row.iter().map(|c| c.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "text": self.entries.iter().map(|row| row.iter().map(|c| c.to_text()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Checks that `predicted_sign(lambda) * nabla_{lambda mu}` is Schur
/// positive for every entry of the degree-`n` matrix.
pub fn check_sign_conjecture(n: u32) -> Result<VerdictReport> {
    let started = Instant::now();
    let m = nabla_matrix(n)?;
    let mut witness = None;
    'rows: for (l, lambda) in m.order.iter().enumerate() {
        let sign = lambda.predicted_sign();
        for (c, mu) in m.order.iter().enumerate() {
            let entry = &m.entries[l][c];
            let signed = if sign < 0 { entry.negated() } else { entry.clone() };
            if !signed.is_positive() {
                witness = Some(Witness {
                    input: format!("lambda={}, mu={}, predicted sign {sign:+}", lambda.to_text(), mu.to_text()),
                    lhs: entry.to_text(),
                    rhs: "nonnegative after the predicted sign".into(),
                });
                break 'rows;
            }
        }
    }
    Ok(VerdictReport::new("SIGN", format!("n={n}"), witness, Status::Finding, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(nabla_matrix(1).unwrap().to_text(), "[1]: 1\n");
        assert_eq!(nabla_matrix(2).unwrap().to_text(), "[2]: 0 | -s11\n[1,1]: 1 | s1\n");
        let m3 = nabla_matrix(3).unwrap();
        assert_eq!(m3.to_text().lines().last().unwrap(), "[1,1,1]: 1 | s2 + s1 | s3 + s11");
        assert!(m3.to_latex().contains("1 & s_{2}+s_{1} & s_{3}+s_{11}"));
    }

    #[test]
    fn signs() {
        for n in 1..=4 {
            assert_eq!(check_sign_conjecture(n).unwrap().status, Status::Pass);
        }
    }
}

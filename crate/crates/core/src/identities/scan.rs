//! Positivity scans for the conjectures and theorems about `nabla_{S_mu}`,
//! and the conjectured Frobenius characteristics of `Diag_{n;k}`.

use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;

use super::{Status, VerdictReport, Witness};
use crate::macdonald::budget;
use crate::operators::{nabla, nabla_f};
use crate::partitions::{partitions_of, Partition};
use crate::ring::{qt_bracket, Rational, RF};
use crate::specials::epsilon;
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanTarget {
    /// `<nabla_{S_mu} e_n, S_alpha>` in `N[q,t]`.
    Bght,
    /// `<nabla_{S_mu} nabla e_n, S_alpha>` in `N[q,t]`; a theorem.
    Haiman,
    /// `<nabla_{S_mu} nabla eps_{n,k}, S_alpha>` in `N[q,t]`.
    HaglundEps,
    /// `nabla eps_{n,j}` Schur positive.
    GhEps,
}

impl ScanTarget {
    pub const ALL: [ScanTarget; 4] = [ScanTarget::Bght, ScanTarget::Haiman, ScanTarget::HaglundEps, ScanTarget::GhEps];

    pub fn name(self) -> &'static str {
        match self {
            ScanTarget::Bght => "bght",
            ScanTarget::Haiman => "haiman",
            ScanTarget::HaglundEps => "haglund-eps",
            ScanTarget::GhEps => "gh-eps",
        }
    }

    pub fn parse(s: &str) -> Option<ScanTarget> {
        ScanTarget::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s.trim()))
    }

    /// Whether a failure contradicts a proven result.
    pub fn is_theorem(self) -> bool {
        self == ScanTarget::Haiman
    }
}

fn in_n_qt(c: &RF) -> bool {
    c.as_integral_poly().is_some_and(|p| p.terms().iter().all(|(_, c)| !c.is_negative()))
}

/// Scans every `(mu, alpha)` (or `(j, alpha)` for `GhEps`) in degree `n`,
/// with `mu` ranging over all partitions of size `1..=n`.
pub fn scan_positivity(target: ScanTarget, n: u32) -> Result<VerdictReport> {
    if n > budget() {
        return Err(Error::DegreeBudget { degree: n, budget: budget() });
    }
    let started = Instant::now();
    let en = SymFunc::single(Basis::E, n);
    let mus: Vec<Partition> = (1..=n).flat_map(partitions_of).collect();
    let js: Vec<u32> = (1..=n).collect();
    // (label, function whose Schur coefficients must be positive)
    let cells: Vec<(String, Box<dyn Fn() -> Result<SymFunc> + Send + Sync>)> = match target {
        ScanTarget::Bght => mus
            .iter()
            .map(|mu| {
                let (mu, en) = (mu.clone(), en.clone());
                let label = format!("mu={}", mu.to_text());
                let f: Box<dyn Fn() -> Result<SymFunc> + Send + Sync> =
                    Box::new(move || nabla_f(&SymFunc::basis_element(Basis::S, mu.clone()), &en));
                (label, f)
            })
            .collect(),
        ScanTarget::Haiman => {
            let ne = nabla(&en)?;
            mus.iter()
                .map(|mu| {
                    let (mu, ne) = (mu.clone(), ne.clone());
                    let label = format!("mu={}", mu.to_text());
                    let f: Box<dyn Fn() -> Result<SymFunc> + Send + Sync> =
                        Box::new(move || nabla_f(&SymFunc::basis_element(Basis::S, mu.clone()), &ne));
                    (label, f)
                })
                .collect()
        }
        ScanTarget::HaglundEps => {
            let mut out: Vec<(String, Box<dyn Fn() -> Result<SymFunc> + Send + Sync>)> = Vec::new();
            for &k in &js {
                let ne = nabla(&epsilon(n, k)?)?;
                for mu in &mus {
                    let (mu, ne) = (mu.clone(), ne.clone());
                    let label = format!("k={k}, mu={}", mu.to_text());
                    out.push((label, Box::new(move || nabla_f(&SymFunc::basis_element(Basis::S, mu.clone()), &ne))));
                }
            }
            out
        }
        ScanTarget::GhEps => js
            .iter()
            .map(|&j| {
                let label = format!("j={j}");
                let f: Box<dyn Fn() -> Result<SymFunc> + Send + Sync> = Box::new(move || nabla(&epsilon(n, j)?));
                (label, f)
            })
            .collect(),
    };
    let outcomes: Vec<Result<Option<Witness>>> = cells
        .par_iter()
        .map(|(label, f)| {
            let g = f()?.to_basis(Basis::S);
            Ok(g.terms().iter().find(|(_, c)| !in_n_qt(c)).map(|(alpha, c)| Witness {
                input: format!("n={n}, {label}, alpha={}", alpha.to_text()),
                lhs: c.to_compact_text(),
                rhs: "N[q,t]".into(),
            }))
        })
        .collect();
    let mut witness = None;
    for o in outcomes {
        if let Some(w) = o? {
            witness = Some(w);
            break;
        }
    }
    let failure = if target.is_theorem() { Status::Fail } else { Status::Finding };
    let range = match target {
        ScanTarget::GhEps => format!("n={n}, 1<=j<={n}"),
        ScanTarget::HaglundEps => format!("n={n}, 1<=k<={n}, 1<=|mu|<={n}"),
        _ => format!("n={n}, 1<=|mu|<={n}"),
    };
    Ok(VerdictReport::new(&target.name().to_ascii_uppercase(), range, witness, failure, started))
}

/// `sum_{j=0}^k [k-j+1]_{q,t} nabla(e_j e_{n-j})`.
pub fn conjectured_diag(n: u32, k: u32) -> Result<SymFunc> {
    if k > n {
        return Err(Error::OutOfRange { index: k as i64, range: format!("0..={n}") });
    }
    let e = |m: u32| SymFunc::single(Basis::E, m);
    let mut out = SymFunc::zero(Basis::S);
    for j in 0..=k {
        let c = RF::from_poly(qt_bracket(k - j + 1));
        out = out.add(&nabla(&e(j).mul(&e(n - j)))?.scale(&c));
    }
    Ok(out)
}

/// `<nabla e_n, p_1^n>` at `q = t = 1`.
pub fn dimension_at_one(n: u32) -> Result<Rational> {
    let f = nabla(&SymFunc::single(Basis::E, n))?;
    f.hilbert_of_frobenius()?.eval_qt(1, 1).ok_or(Error::ZeroDenominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::rho;
    use crate::symfunc::same_element;

    #[test]
    fn dimensions() {
        for (n, d) in [(1, 1), (2, 3), (3, 16), (4, 125)] {
            assert_eq!(dimension_at_one(n).unwrap(), Rational::from_integer(d.into()));
        }
    }

    #[test]
    fn diag_ends() {
        let e = |m: u32| SymFunc::single(Basis::E, m);
        assert!(same_element(&conjectured_diag(3, 0).unwrap(), &nabla(&e(3)).unwrap()));
        for n in 1..=3 {
            assert!(same_element(&conjectured_diag(n, n).unwrap(), &rho(&nabla(&e(n + 1)).unwrap())));
        }
        // the difference of the first two is nabla of the hook (2,1^{n-2})
        for n in 2..=4 {
            let q1 = RF::from_poly(qt_bracket(2)) + RF::one();
            let d = conjectured_diag(n, 1).unwrap().sub(&conjectured_diag(n, 0).unwrap().scale(&q1));
            let mut parts = vec![2];
            parts.extend(std::iter::repeat(1).take(n as usize - 2));
            let hook = SymFunc::basis_element(Basis::S, Partition::from_parts_unsorted(parts));
            assert!(same_element(&d, &nabla(&hook).unwrap()), "n={n}");
        }
    }

    #[test]
    fn small_scans() {
        assert_eq!(scan_positivity(ScanTarget::Haiman, 3).unwrap().status, Status::Pass);
        assert_eq!(scan_positivity(ScanTarget::GhEps, 3).unwrap().status, Status::Pass);
    }
}

//! Expansion of symmetric polynomials in `q, t` as two-variable Schur
//! polynomials `s_(a,b)(q, t) = sum_{j=b}^{a} q^j t^{a+b-j}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::ring::{Mono, Poly, Var};
use crate::{Error, Result};

/// `sum c_(a,b) s_(a,b)(q, t)` over two-row shapes `a >= b >= 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTSchurExpansion {
    pub coeffs: BTreeMap<(u32, u32), BigInt>,
}

/// `s_(a,b)(q, t)`.
pub fn qt_schur(a: u32, b: u32) -> Poly {
    Poly::from_terms((b..=a).map(|j| (Mono::new(j, a + b - j, 0), BigInt::one())))
}

/// Greedy elimination of the leading monomial.
pub fn qt_schur_expand(p: &Poly) -> Result<QTSchurExpansion> {
    if p.uses(Var::X) {
        return Err(Error::NotSymmetric(format!("{} involves an auxiliary variable", p.to_text("x"))));
    }
    if p.swap_qt() != *p {
        return Err(Error::NotSymmetric(p.to_text("x")));
    }
    let mut rest = p.clone();
    let mut coeffs = BTreeMap::new();
    while let Some((m, c)) = rest.lead().cloned() {
        // graded lex with q first: the leading monomial has a >= b
        let (a, b) = (m.q(), m.t());
        debug_assert!(a >= b);
        rest = rest.sub(&qt_schur(a, b).scale(&c));
        coeffs.insert((a, b), c);
    }
    Ok(QTSchurExpansion { coeffs })
}

impl QTSchurExpansion {
    pub fn reconstruct(&self) -> Poly {
        self.coeffs.iter().fold(Poly::zero(), |acc, (&(a, b), c)| acc.add(&qt_schur(a, b).scale(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn negated(&self) -> QTSchurExpansion {
        QTSchurExpansion { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    /// Every coefficient is non-negative.
    pub fn is_positive(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Terms by decreasing degree, then decreasing first part.
    fn ordered(&self) -> Vec<(u32, u32, &BigInt)> {
        let mut v: Vec<(u32, u32, &BigInt)> = self.coeffs.iter().map(|(&(a, b), c)| (a, b, c)).collect();
        v.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        v
    }

    fn render(&self, label: impl Fn(u32, u32) -> String, times: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (a, b, c)) in self.ordered().into_iter().enumerate() {
            let body = if (a, b) == (0, 0) {
                c.abs().to_string()
            } else if c.abs().is_one() {
                label(a, b)
            } else {
                format!("{}{times}{}", c.abs(), label(a, b))
            };
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// `s2 + s1`, `-s21`; indices are joined by commas once a part exceeds 9.
    pub fn to_text(&self) -> String {
        self.render(|a, b| format!("s{}", index(a, b)), "*")
    }

    pub fn to_latex(&self) -> String {
        self.render(|a, b| format!("s_{{{}}}", index(a, b)), " ").replace(" + ", "+").replace(" - ", "-")
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.ordered()
                .into_iter()
                .map(|(a, b, c)| {
                    let shape: Vec<u32> = [a, b].into_iter().filter(|&x| x > 0).collect();
                    json!([shape, c.to_string()])
                })
                .collect(),
        )
    }
}

fn index(a: u32, b: u32) -> String {
    let parts: Vec<u32> = [a, b].into_iter().filter(|&x| x > 0).collect();
    let sep = if a > 9 { "," } else { "" };
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for QTSchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

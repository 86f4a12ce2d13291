//! Plethystic substitution, computed on power sums.
//!
//! `p_k[g]` replaces every `p_j` in `g` by `p_{jk}` and every coefficient
//! variable `v` by `v^k`; constants are fixed. The coefficients of the outer
//! function are never substituted.

use std::collections::HashMap;

use crate::partitions::Partition;
use crate::ring::{Aux, Mono, Poly, RF};
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

/// `p_k[g]` for `g` already in the p-basis.
fn power_of_alphabet(g: &SymFunc, k: u32) -> SymFunc {
    SymFunc::from_terms(
        Basis::P,
        g.terms().iter().map(|(mu, c)| (mu.scale_parts(k), c.substitute_power(k))),
    )
}

/// `f[g]`. Components of `g` of degree two or more must be single power-sum
/// terms; anything else is rejected.
pub fn plethysm(f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
    let gp = g.to_basis(Basis::P);
    for (mu, _) in gp.terms() {
        if mu.size() >= 2 && gp.len() > 1 {
            return Err(Error::UnsupportedPlethysm(format!(
                "inner function {g} has a component of degree {} mixed with other terms",
                mu.size()
            )));
        }
    }
    let fp = f.to_basis(Basis::P);
    let mut powers: HashMap<u32, SymFunc> = HashMap::new();
    let mut out = SymFunc::zero(Basis::P);
    for (lambda, c) in fp.terms() {
        let mut term = SymFunc::scalar(Basis::P, c.clone());
        for &k in lambda.parts() {
            let pk = powers.entry(k).or_insert_with(|| power_of_alphabet(&gp, k));
            term = term.mul(pk);
        }
        out = out.add(&term);
    }
    Ok(out.to_basis(f.basis()))
}

/// `f[c * w]`: `p_k -> c(q^k, t^k) p_k`.
pub fn pleth_scaled(f: &SymFunc, c: &RF) -> SymFunc {
    let fp = f.to_basis(Basis::P);
    let mut powers: HashMap<u32, RF> = HashMap::new();
    let out = SymFunc::from_terms(
        Basis::P,
        fp.terms().iter().map(|(lambda, coeff)| {
            let mut factor = RF::one();
            for &k in lambda.parts() {
                factor *= powers.entry(k).or_insert_with(|| c.substitute_power(k));
            }
            (lambda.clone(), coeff * &factor)
        }),
    );
    out.to_basis(f.basis())
}

/// `f[w + c]` for a scalar alphabet `c`: `p_k -> p_k + c(q^k, t^k)`.
pub fn pleth_add_constant(f: &SymFunc, c: &RF) -> SymFunc {
    if c.is_zero() {
        return f.clone();
    }
    let fp = f.to_basis(Basis::P);
    let mut powers: HashMap<u32, RF> = HashMap::new();
    let mut acc: HashMap<Partition, Vec<RF>> = HashMap::new();
    for (lambda, coeff) in fp.terms() {
        let parts = lambda.parts();
        // each part either stays a power sum or becomes its scalar value
        for mask in 0u32..(1 << parts.len()) {
            let mut kept = Vec::new();
            let mut factor = coeff.clone();
            for (i, &k) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    factor *= powers.entry(k).or_insert_with(|| c.substitute_power(k));
                } else {
                    kept.push(k);
                }
            }
            // parts are decreasing, so kept stays a partition
            let key = Partition::new(kept).expect("subsequence of a partition");
            acc.entry(key).or_default().push(factor);
        }
    }
    let out = SymFunc::from_terms(
        Basis::P,
        acc.into_iter().map(|(p, cs)| (p, crate::symfunc::sum_rf(cs))),
    );
    out.to_basis(f.basis())
}

/// `sum_{k=0}^{d} e_k (sign * xi)^k`.
pub fn omega_prime(truncation: u32, sign: i64) -> SymFunc {
    SymFunc::from_terms(
        Basis::E,
        (0..=truncation).map(|k| {
            let xi = RF::from_poly_aux(Poly::monomial(Mono::new(0, 0, k), 1.into()), Aux::Xi);
            let c = if sign < 0 && k % 2 == 1 { -xi } else { xi };
            (Partition::row(k), c)
        }),
    )
}

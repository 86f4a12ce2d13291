//! The symmetric functions `eps_{n,j}(w; q)` refining `e_n`.
//!
//! `sum_k F_k z^k = e_n[w(1-z)/(1-q)]` and
//! `Z_k = sum_i (-1)^i q^{C(i+1,2) - k i} (q;q)_i [k i]_q t_i`, where the
//! `t_i` are bookkeeping symbols unrelated to the parameter `t`. Then
//! `eps_{n,j} = sum_k F_k [t_j] Z_k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::plethysm::pleth_scaled;
use crate::ring::{q_binomial, q_pochhammer, Aux, Var, RF};
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

/// `F_0, ..., F_n` with `sum_k F_k z^k = e_n[w(1-z)/(1-q)]`.
pub fn f_series(n: u32) -> Vec<SymFunc> {
    let one_minus_z = RF::one() - RF::aux_var(Aux::Z);
    let alphabet = one_minus_z.checked_div(&(RF::one() - RF::q())).expect("nonzero");
    let g = pleth_scaled(&SymFunc::single(Basis::E, n), &alphabet).to_basis(Basis::S);
    (0..=n as i64)
        .map(|k| g.map_coeffs(|c| c.coefficient_of(Var::X, k).expect("z-free denominators")))
        .collect()
}

/// Coefficients of `t_0, ..., t_k` in `Z_k`.
pub fn z_poly(k: u32) -> Vec<RF> {
    (0..=k)
        .map(|i| {
            let e = (i * (i + 1) / 2) as i64 - (k * i) as i64;
            let body = q_pochhammer(i).mul(&q_binomial(k as i64, i as i64));
            let body = if i % 2 == 1 { body.neg() } else { body };
            let shift = if e >= 0 {
                RF::qt(e as u32, 0)
            } else {
                RF::qt(e.unsigned_abs() as u32, 0).inverse().expect("nonzero")
            };
            RF::from_poly(body) * shift
        })
        .collect()
}

/// `eps_{n,j}` in the Schur basis.
pub fn epsilon(n: u32, j: u32) -> Result<SymFunc> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::OutOfRange { index: j as i64, range: format!("1..={n}") });
    }
    Ok(epsilon_family(n).members[j as usize - 1].clone())
}

/// `eps_{n,1}, ..., eps_{n,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonFamily {
    pub n: u32,
    pub members: Vec<SymFunc>,
}

/// Cached family of degree `n >= 1`.
pub fn epsilon_family(n: u32) -> Arc<EpsilonFamily> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<EpsilonFamily>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("poisoned").get(&n) {
        return f.clone();
    }
    let fs = f_series(n);
    let zs: Vec<Vec<RF>> = (0..=n).map(z_poly).collect();
    let members = (1..=n)
        .map(|j| {
            let mut acc = SymFunc::zero(Basis::S);
            for k in j..=n {
                acc = acc.add(&fs[k as usize].scale(&zs[k as usize][j as usize]));
            }
            acc
        })
        .collect();
    let family = Arc::new(EpsilonFamily { n, members });
    cache.lock().expect("poisoned").entry(n).or_insert(family).clone()
}

/// True when no coefficient involves the parameter `t`.
pub fn is_t_free(f: &SymFunc) -> bool {
    f.terms().values().all(|c| !c.uses(Var::T))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::hall_littlewood_hn;
    use crate::ring::Poly;
    use crate::symfunc::{atom, same_element};

    fn rf(s: &str) -> RF {
        RF::from_poly(Poly::parse(s, "x").unwrap())
    }

    #[test]
    fn f_series_degree_one() {
        let fs = f_series(1);
        let inv = RF::one().checked_div(&rf("1 - q")).unwrap();
        assert_eq!(fs[0], atom(Basis::S, &[1]).scale(&inv));
        assert_eq!(fs[1], atom(Basis::S, &[1]).scale(&inv).neg());
        for n in 1..=4 {
            let total = f_series(n).iter().fold(SymFunc::zero(Basis::S), |a, f| a.add(f));
            assert!(total.is_zero());
        }
    }

    #[test]
    fn z_polys() {
        assert_eq!(z_poly(0), vec![RF::one()]);
        assert_eq!(z_poly(1), vec![RF::one(), rf("q - 1")]);
        assert!(z_poly(3).iter().all(|c| !c.uses(Var::T)));
    }

    #[test]
    fn epsilon_identities() {
        for n in 1..=4u32 {
            let fam = epsilon_family(n);
            let sum = fam.members.iter().fold(SymFunc::zero(Basis::S), |a, f| a.add(f));
            assert!(same_element(&sum, &SymFunc::single(Basis::E, n)), "sum n={n}");
            let first = fam.members[0].scale(&rf("-q").pow(n as i32 - 1).unwrap());
            assert_eq!(first, SymFunc::single(Basis::S, n), "first n={n}");
            let last = fam.members[n as usize - 1].scale(&RF::qt(n * (n - 1) / 2, 0));
            assert_eq!(last, hall_littlewood_hn(n), "last n={n}");
            assert!(fam.members.iter().all(is_t_free));
        }
        assert_eq!(
            epsilon(3, 3).unwrap().scale(&RF::qt(3, 0)).to_text(),
            "s[3] + (q^2+q)*s[2,1] + q^3*s[1,1,1]"
        );
        assert!(epsilon(3, 0).is_err());
        assert!(epsilon(3, 4).is_err());
    }
}

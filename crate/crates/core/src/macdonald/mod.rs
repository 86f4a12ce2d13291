//! Modified Macdonald polynomials `H_mu(w; q, t)` from their triangularity
//! characterization.
//!
//! For each `mu` the unknowns `K_{lambda mu}` satisfy a linear system whose
//! coefficients are polynomials in `q` or `t` alone. The system is solved at
//! integer points, the answers are interpolated within the degree bounds
//! `n(mu')` in `q` and `n(mu)` in `t`, and the interpolants are then checked
//! against the defining equations as exact polynomial identities.

mod cache;
mod eigen;
mod store;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::linalg::{interpolate_grid, solve_integer_system, IntMatrix, Solve};
use crate::partitions::{dominance_leq, partitions_of, Partition};
use crate::plethysm::pleth_scaled;
use crate::ring::{q_pochhammer, Poly, Var, RF};
use crate::symfunc::{tables, Basis, SymFunc};
use crate::{Error, Result};

pub use cache::{cache_load, cache_path, cache_store, CACHE_FORMAT_VERSION};
pub use eigen::{eigen_operator, EigenSpec, OperatorMatrix};
pub use store::{basis, budget, cache_dir, set_budget, set_cache_dir};

/// `H_mu` for every `mu` of one degree, stored as the Kostka matrix
/// `K[lambda][mu]` (rows and columns in decreasing lex order).
#[derive(Clone, Debug, PartialEq)]
pub struct MacdonaldBasis {
    n: u32,
    parts: Vec<Partition>,
    kostka: Vec<Vec<Poly>>,
}

impl MacdonaldBasis {
    /// Assembles a basis from its Kostka matrix without validation.
    pub(crate) fn from_parts(n: u32, kostka: Vec<Vec<Poly>>) -> MacdonaldBasis {
        MacdonaldBasis { n, parts: partitions_of(n), kostka }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn kostka_matrix(&self) -> &[Vec<Poly>] {
        &self.kostka
    }

    fn index(&self, p: &Partition) -> Option<usize> {
        self.parts.iter().position(|x| x == p)
    }

    /// `K_{lambda, mu}(q, t)`.
    pub fn kostka(&self, lambda: &Partition, mu: &Partition) -> Option<&Poly> {
        Some(&self.kostka[self.index(lambda)?][self.index(mu)?])
    }

    /// `H_mu` in the Schur basis.
    pub fn h(&self, mu: &Partition) -> Option<SymFunc> {
        let j = self.index(mu)?;
        Some(SymFunc::from_terms(
            Basis::S,
            self.parts.iter().enumerate().map(|(i, l)| (l.clone(), RF::from_poly(self.kostka[i][j].clone()))),
        ))
    }

    /// Coefficients `c_mu` with `f = sum c_mu H_mu` for homogeneous `f` of this degree.
    pub fn to_h_basis(&self, f: &SymFunc) -> Result<BTreeMap<Partition, RF>> {
        let fs = f.to_basis(Basis::S);
        if let Some(d) = fs.degrees().into_iter().find(|&d| d != self.n) {
            return Err(Error::SizeMismatch(d as usize, self.n as usize));
        }
        let rhs: Vec<RF> = self.parts.iter().map(|l| fs.coeff(l)).collect();
        let x = crate::linalg::solve_poly_system(&self.kostka, &rhs)
            .ok_or_else(|| Error::Solve(format!("Kostka matrix of degree {} is singular", self.n)))?;
        Ok(self.parts.iter().cloned().zip(x).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Checks the defining conditions as polynomial identities together with
    /// the normalization `K_{(n), mu} = 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.parts.is_empty() {
            return Ok(());
        }
        let row_n = self.index(&Partition::row(n)).expect("row partition");
        for (j, mu) in self.parts.iter().enumerate() {
            if !self.kostka[row_n][j].is_one() {
                return Err(Error::Solve(format!("<s_n, H_{mu}> != 1")));
            }
        }
        if n == 0 {
            return Ok(());
        }
        let aq = plethystic_scaling_matrix(n, Var::Q);
        let at = plethystic_scaling_matrix(n, Var::T);
        let p = self.parts.len();
        let failure = self.parts.par_iter().enumerate().find_map_any(|(j, mu)| {
            let mu_conj = mu.conjugate();
            for (l, lambda) in self.parts.iter().enumerate() {
                for (a, target) in [(&aq, mu), (&at, &mu_conj)] {
                    if dominance_leq(target, lambda).unwrap() {
                        continue;
                    }
                    let mut sum = Poly::zero();
                    for nu in 0..p {
                        if !self.kostka[nu][j].is_zero() && !a[nu][l].is_zero() {
                            sum = sum.add(&self.kostka[nu][j].mul(&a[nu][l]));
                        }
                    }
                    if !sum.is_zero() {
                        return Some(Error::Solve(format!("triangularity fails for H_{mu} at s_{lambda}")));
                    }
                }
            }
            None
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Canonical serialization: one `K [lambda] [mu] = poly` line per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.parts.iter().enumerate() {
            for (j, m) in self.parts.iter().enumerate() {
                let k = &self.kostka[i][j];
                if !k.is_zero() {
                    out.push_str(&format!("K {l} {m} = {}\n", k.to_text("x")));
                }
            }
        }
        out
    }
}

/// `A[nu][lambda]`: coefficient of `s_lambda` in `s_nu[(1 - v) w]`.
fn plethystic_scaling_matrix(n: u32, v: Var) -> Vec<Vec<Poly>> {
    let factor = RF::one() - RF::from_poly(Poly::var(v));
    let parts = partitions_of(n);
    parts
        .iter()
        .map(|nu| {
            let img = pleth_scaled(&SymFunc::basis_element(Basis::S, nu.clone()), &factor);
            parts
                .iter()
                .map(|l| img.coeff(l).as_integral_poly().cloned().expect("integral plethysm"))
                .collect()
        })
        .collect()
}

/// The same matrix evaluated at an integer.
fn scaling_matrix_at(n: u32, value: &BigInt) -> IntMatrix {
    let t = tables(n);
    let k = t.index.len();
    let weights: Vec<BigRational> = t
        .index
        .parts
        .iter()
        .map(|rho| {
            let mut w = BigInt::one();
            for &part in rho.parts() {
                w *= BigInt::one() - value.pow(part);
            }
            BigRational::new(w, rho.z())
        })
        .collect();
    (0..k)
        .map(|nu| {
            (0..k)
                .map(|l| {
                    let mut acc = BigRational::zero();
                    for r in 0..k {
                        let c = &t.characters[nu][r] * &t.characters[l][r];
                        if !c.is_zero() {
                            acc += &weights[r] * BigRational::from_integer(c);
                        }
                    }
                    assert!(acc.denom().is_one(), "plethystic scaling has integer entries");
                    acc.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Interpolation nodes: `q` at primes, `t` at negated primes, so that no
/// power of one is a power of the other and the systems stay regular.
pub(crate) fn nodes(count: usize, skip: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut primes = Vec::new();
    let mut c = 2u64;
    while primes.len() < 2 * (count + skip) {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            primes.push(c);
        }
        c += 1;
    }
    let qs = primes.iter().skip(2 * skip).step_by(2).take(count).map(|&p| BigInt::from(p)).collect();
    let ts = primes.iter().skip(2 * skip + 1).step_by(2).take(count).map(|&p| -BigInt::from(p)).collect();
    (qs, ts)
}

/// Solves for `H_mu` of every `mu` of degree `n` and verifies the result.
pub fn compute_basis(n: u32) -> Result<MacdonaldBasis> {
    let parts = partitions_of(n);
    let p = parts.len();
    if n == 0 {
        return Ok(MacdonaldBasis { n, parts, kostka: vec![vec![Poly::one()]] });
    }
    let max_q = parts.iter().map(|m| m.conjugate().nstat()).max().unwrap() as usize + 1;
    let max_t = parts.iter().map(|m| m.nstat()).max().unwrap() as usize + 1;
    let count = max_q.max(max_t);
    let (qs, ts) = nodes(count, 0);
    let aq: Vec<IntMatrix> = qs.par_iter().map(|a| scaling_matrix_at(n, a)).collect();
    let at: Vec<IntMatrix> = ts.par_iter().map(|b| scaling_matrix_at(n, b)).collect();
    let row_n = 0;
    let columns: Vec<Result<Vec<Poly>>> = parts
        .par_iter()
        .map(|mu| {
            let nq = mu.conjugate().nstat() as usize + 1;
            let nt = mu.nstat() as usize + 1;
            let mu_conj = mu.conjugate();
            let q_rows: Vec<usize> =
                (0..p).filter(|&l| !dominance_leq(mu, &parts[l]).unwrap()).collect();
            let t_rows: Vec<usize> =
                (0..p).filter(|&l| !dominance_leq(&mu_conj, &parts[l]).unwrap()).collect();
            // values[i][j][nu] = K_{nu mu}(qs[i], ts[j])
            let mut values: Vec<Vec<Vec<BigRational>>> = vec![vec![Vec::new(); nt]; nq];
            for i in 0..nq {
                for j in 0..nt {
                    let mut a: IntMatrix = Vec::new();
                    let mut b: Vec<BigInt> = Vec::new();
                    for &l in &q_rows {
                        a.push((0..p).map(|nu| aq[i][nu][l].clone()).collect());
                        b.push(BigInt::zero());
                    }
                    for &l in &t_rows {
                        a.push((0..p).map(|nu| at[j][nu][l].clone()).collect());
                        b.push(BigInt::zero());
                    }
                    a.push((0..p).map(|nu| if nu == row_n { BigInt::one() } else { BigInt::zero() }).collect());
                    b.push(BigInt::one());
                    match solve_integer_system(&a, &b) {
                        Solve::Unique(x) => values[i][j] = x,
                        other => {
                            return Err(Error::Solve(format!(
                                "Macdonald system for {mu} at q={}, t={} is {other:?}",
                                qs[i], ts[j]
                            )))
                        }
                    }
                }
            }
            (0..p)
                .map(|nu| {
                    let grid: Vec<Vec<BigRational>> =
                        (0..nq).map(|i| (0..nt).map(|j| values[i][j][nu].clone()).collect()).collect();
                    let rf = interpolate_grid(&qs[..nq], &ts[..nt], &grid);
                    rf.as_integral_poly().cloned().ok_or_else(|| {
                        Error::Solve(format!("K_{{{},{mu}}} is not an integral polynomial", parts[nu]))
                    })
                })
                .collect()
        })
        .collect();
    let mut kostka = vec![vec![Poly::zero(); p]; p];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, k) in col?.into_iter().enumerate() {
            kostka[i][j] = k;
        }
    }
    let basis = MacdonaldBasis { n, parts, kostka };
    basis.validate()?;
    Ok(basis)
}

/// `H_n(w; q) = h_n[w / (1 - q)] (q; q)_n`, the one-row Macdonald
/// polynomial. The same plethysm applied to `e_n` gives its image under
/// `omega`.
pub fn hall_littlewood_hn(n: u32) -> SymFunc {
    let inv = RF::one().checked_div(&(RF::one() - RF::q())).expect("nonzero");
    let f = pleth_scaled(&SymFunc::single(Basis::H, n), &inv);
    f.scale(&RF::from_poly(q_pochhammer(n))).to_basis(Basis::S)
}

/// Coefficients of `rho H_mu` in the H-basis of degree `|mu| - 1`.
pub fn dual_pieri(mu: &Partition) -> Result<BTreeMap<Partition, RF>> {
    let n = mu.size();
    if n == 0 {
        return Ok(BTreeMap::new());
    }
    let upper = basis(n)?;
    let lower = basis(n - 1)?;
    let h = upper.h(mu).ok_or_else(|| Error::InvalidPartition(mu.parts().iter().map(|&x| x as i64).collect()))?;
    let rho = h.perp(&SymFunc::single(Basis::P, 1));
    lower.to_h_basis(&rho)
}

/// Eigenvalue map `mu -> q^{n(mu')} t^{n(mu)}`.
pub fn nabla_eigenvalue(mu: &Partition) -> Poly {
    Poly::qt(mu.conjugate().nstat(), mu.nstat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;

    fn poly(s: &str) -> Poly {
        Poly::parse(s, "x").unwrap()
    }

    #[test]
    fn degree_two() {
        let b = compute_basis(2).unwrap();
        assert_eq!(b.h(&part(&[2])).unwrap().to_text(), "s[2] + q*s[1,1]");
        assert_eq!(b.h(&part(&[1, 1])).unwrap().to_text(), "s[2] + t*s[1,1]");
        assert_eq!(compute_basis(1).unwrap().h(&part(&[1])).unwrap().to_text(), "s[1]");
    }

    #[test]
    fn degree_three_row() {
        let b = compute_basis(3).unwrap();
        assert_eq!(b.kostka(&part(&[2, 1]), &part(&[3])).unwrap(), &poly("q^2 + q"));
        assert_eq!(b.kostka(&part(&[1, 1, 1]), &part(&[3])).unwrap(), &poly("q^3"));
        assert_eq!(b.kostka(&part(&[2, 1]), &part(&[2, 1])).unwrap(), &poly("q + t"));
    }

    #[test]
    fn h_basis_of_e2() {
        let b = compute_basis(2).unwrap();
        let c = b.to_h_basis(&SymFunc::single(Basis::E, 2)).unwrap();
        let d = RF::one().checked_div(&(RF::q() - RF::t())).unwrap();
        assert_eq!(c[&part(&[2])], d);
        assert_eq!(c[&part(&[1, 1])], -d);
        let unit = b.to_h_basis(&b.h(&part(&[2])).unwrap()).unwrap();
        assert_eq!(unit.len(), 1);
        assert!(unit[&part(&[2])].is_one());
    }

    #[test]
    fn hall_littlewood_small() {
        assert_eq!(hall_littlewood_hn(2).to_text(), "s[2] + q*s[1,1]");
        assert_eq!(hall_littlewood_hn(1).to_text(), "s[1]");
        let inv = RF::one().checked_div(&(RF::one() - RF::q())).unwrap();
        let via_e = pleth_scaled(&SymFunc::single(Basis::E, 3), &inv).scale(&RF::from_poly(q_pochhammer(3)));
        assert_eq!(via_e.to_basis(Basis::S).omega(), hall_littlewood_hn(3));
    }

    #[test]
    fn validation_rejects_tampering() {
        let mut b = compute_basis(3).unwrap();
        b.kostka[1][0] = poly("q^2 + 2*q");
        assert!(b.validate().is_err());
    }
}

//! Schur-basis matrices of operators diagonal on `{H_mu}`.
//!
//! For eigenvalues `L_mu` the matrix is `A = K diag(L) K^{-1}`. It is
//! evaluated modulo word-sized primes, interpolated with a growing number of
//! nodes until an independent check point agrees, lifted to integers by
//! Chinese remaindering, and accepted only once `A K = K diag(L)` holds as a
//! polynomial identity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{basis, nabla_eigenvalue, MacdonaldBasis};
use crate::modular::{l1_norm, poly_from_crt, powers, primes, Crt, Field, Interpolator, ModPoly};
use crate::partitions::Partition;
use crate::plethysm::plethysm;
use crate::ring::{Poly, Var, RF};
use crate::symfunc::{sum_rf, Basis, SymFunc};
use crate::{Error, Result};

/// Which eigenvalue family an operator matrix realizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EigenSpec {
    /// `q^{n(mu')} t^{n(mu)}`.
    Nabla,
    /// The reciprocal of `Nabla`.
    NablaInverse,
    /// `s_nu[B_mu]`.
    Schur(Partition),
}

/// `op(s_lambda) = sum_nu entries[nu][lambda] s_nu / denom`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub n: u32,
    pub entries: Vec<Vec<Poly>>,
    pub denom: Poly,
}

impl OperatorMatrix {
    /// Applies the operator to a coefficient vector in the Schur basis.
    pub fn apply(&self, v: &[RF]) -> Vec<RF> {
        let denom = RF::from_poly(self.denom.clone());
        self.entries
            .iter()
            .map(|row| {
                let terms: Vec<RF> = row
                    .iter()
                    .zip(v)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .map(|(a, x)| x * &RF::from_poly(a.clone()))
                    .collect();
                let s = sum_rf(terms);
                if self.denom.is_one() {
                    s
                } else {
                    s.checked_div(&denom).expect("monomial denominator")
                }
            })
            .collect()
    }

    /// Largest exponent of `v` among the entries.
    pub fn max_degree(&self, v: Var) -> u32 {
        self.entries.iter().flatten().map(|p| p.degree(v)).max().unwrap_or(0)
    }
}

/// `s_nu[B_mu]` as a polynomial.
pub fn schur_at_cells(nu: &Partition, mu: &Partition) -> Poly {
    let alphabet = SymFunc::scalar(Basis::P, RF::from_poly(mu.b_mu()));
    let v = plethysm(&SymFunc::basis_element(Basis::S, nu.clone()), &alphabet).expect("scalar alphabet");
    v.constant_term().as_integral_poly().cloned().expect("integral eigenvalue")
}

/// Cached operator matrix for degree `n`.
pub fn eigen_operator(n: u32, spec: &EigenSpec) -> Result<Arc<OperatorMatrix>> {
    type Table = Mutex<HashMap<(u32, EigenSpec), Arc<Mutex<Option<Arc<OperatorMatrix>>>>>>;
    static TABLE: OnceLock<Table> = OnceLock::new();
    let slot = TABLE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("poisoned")
        .entry((n, spec.clone()))
        .or_default()
        .clone();
    let mut guard = slot.lock().expect("poisoned");
    if let Some(m) = guard.as_ref() {
        return Ok(m.clone());
    }
    let b = basis(n)?;
    let m = Arc::new(match spec {
        EigenSpec::Nabla => build(&b, &|mu| nabla_eigenvalue(mu), Poly::one())?,
        EigenSpec::NablaInverse => {
            let forward = eigen_operator(n, &EigenSpec::Nabla)?;
            let d = forward.max_degree(Var::Q).max(forward.max_degree(Var::T));
            let scaled = |mu: &Partition| Poly::qt(d - mu.conjugate().nstat(), d - mu.nstat());
            build(&b, &scaled, Poly::qt(d, d))?
        }
        EigenSpec::Schur(nu) => build(&b, &|mu| schur_at_cells(nu, mu), Poly::one())?,
    });
    *guard = Some(m.clone());
    Ok(m)
}

const MAX_NODES: usize = 400;
const MAX_PRIMES: usize = 24;

enum Modular {
    /// `c[r][col][a][b]`, coefficient of `q^a t^b` in entry `(r, col)`.
    Coefficients(Vec<Vec<Vec<Vec<u64>>>>),
    TooFewNodes,
    Singular,
}

fn max_degrees(polys: &[&Poly]) -> (usize, usize) {
    polys.iter().fold((0, 0), |(a, b), p| (a.max(p.degree(Var::Q) as usize), b.max(p.degree(Var::T) as usize)))
}

/// `K diag(L) K^{-1}` modulo one prime at a grid of `count x count` nodes,
/// interpolated and checked at one further node.
fn modular_matrix(f: Field, k: &[Vec<Poly>], eig: &[Poly], count: usize) -> Modular {
    let p = k.len();
    let all: Vec<&Poly> = k.iter().flatten().chain(eig).collect();
    let (dq, dt) = max_degrees(&all);
    let kmod: Vec<Vec<ModPoly>> = k.iter().map(|r| r.iter().map(|x| ModPoly::new(f, x)).collect()).collect();
    let emod: Vec<ModPoly> = eig.iter().map(|x| ModPoly::new(f, x)).collect();
    let qs: Vec<u64> = (0..=count).map(|i| f.node(1, i)).collect();
    let ts: Vec<u64> = (0..=count).map(|i| f.node(2, i)).collect();
    let at = |q: u64, t: u64| -> Option<Vec<Vec<u64>>> {
        let (qp, tp) = (powers(f, q, dq), powers(f, t, dt));
        let kab: Vec<Vec<u64>> = kmod.iter().map(|r| r.iter().map(|x| x.eval(f, &qp, &tp)).collect()).collect();
        let lam: Vec<u64> = emod.iter().map(|x| x.eval(f, &qp, &tp)).collect();
        let inv = f.invert(&kab)?;
        Some(
            (0..p)
                .map(|i| {
                    (0..p)
                        .map(|j| (0..p).fold(0, |acc, m| f.add(acc, f.mul(f.mul(kab[i][m], lam[m]), inv[m][j]))))
                        .collect()
                })
                .collect(),
        )
    };
    let mut keys: Vec<(usize, usize)> = (0..count).flat_map(|i| (0..count).map(move |j| (i, j))).collect();
    keys.push((count, count));
    let values: Option<Vec<Vec<Vec<u64>>>> = keys.par_iter().map(|&(i, j)| at(qs[i], ts[j])).collect();
    let Some(mut values) = values else {
        return Modular::Singular;
    };
    let check = values.pop().expect("check point");
    let qi = Interpolator::new(f, qs[..count].to_vec());
    let ti = Interpolator::new(f, ts[..count].to_vec());
    let (qc, tc) = (powers(f, qs[count], count), powers(f, ts[count], count));
    let coeffs: Vec<Vec<Vec<Vec<u64>>>> = (0..p)
        .into_par_iter()
        .map(|r| {
            (0..p)
                .map(|c| {
                    let grid: Vec<Vec<u64>> =
                        (0..count).map(|i| (0..count).map(|j| values[i * count + j][r][c]).collect()).collect();
                    f.interpolate_grid(&qi, &ti, &grid)
                })
                .collect()
        })
        .collect();
    for r in 0..p {
        for c in 0..p {
            let mut v = 0;
            for (a, row) in coeffs[r][c].iter().enumerate() {
                for (b, &x) in row.iter().enumerate() {
                    if x != 0 {
                        v = f.add(v, f.mul(x, f.mul(qc[a], tc[b])));
                    }
                }
            }
            if v != check[r][c] {
                return Modular::TooFewNodes;
            }
        }
    }
    Modular::Coefficients(coeffs)
}

fn build(b: &MacdonaldBasis, eigen: &(dyn Fn(&Partition) -> Poly + Sync), denom: Poly) -> Result<OperatorMatrix> {
    let n = b.degree();
    let k = b.kostka_matrix();
    let p = k.len();
    let eig: Vec<Poly> = b.partitions().iter().map(eigen).collect();
    let (eq, et) = max_degrees(&eig.iter().collect::<Vec<_>>());
    let mut count = eq.max(et) + 2;
    'grow: loop {
        if count > MAX_NODES {
            return Err(Error::Solve(format!("operator matrix of degree {n} did not stabilize")));
        }
        let mut acc = vec![vec![vec![vec![Crt::default(); count]; count]; p]; p];
        let mut previous: Option<Vec<Vec<Poly>>> = None;
        for &prime in primes().iter().take(MAX_PRIMES) {
            let f = Field { p: prime };
            let coeffs = match modular_matrix(f, k, &eig, count) {
                Modular::Coefficients(c) => c,
                Modular::TooFewNodes => {
                    count += 3;
                    continue 'grow;
                }
                Modular::Singular => continue,
            };
            for (r, row) in coeffs.iter().enumerate() {
                for (c, grid) in row.iter().enumerate() {
                    for (a, line) in grid.iter().enumerate() {
                        for (bb, &x) in line.iter().enumerate() {
                            acc[r][c][a][bb].push(f, x);
                        }
                    }
                }
            }
            let entries: Vec<Vec<Poly>> = acc.iter().map(|row| row.iter().map(|g| poly_from_crt(g)).collect()).collect();
            if previous.as_ref() == Some(&entries) && verify(k, &eig, &entries) {
                return Ok(OperatorMatrix { n, entries, denom });
            }
            previous = Some(entries);
        }
        return Err(Error::Solve(format!("operator matrix of degree {n} did not reconstruct")));
    }
}

/// `A K = K diag(L)` as a polynomial identity.
///
/// Every entry of `A K - K diag(L)` has bounded degrees and coefficients
/// bounded by `B`; vanishing on a full grid of that size modulo primes whose
/// product exceeds `2B` forces it to be zero.
fn verify(k: &[Vec<Poly>], eig: &[Poly], a: &[Vec<Poly>]) -> bool {
    let p = k.len();
    let ka: Vec<&Poly> = k.iter().flatten().collect();
    let aa: Vec<&Poly> = a.iter().flatten().collect();
    let (kq, kt) = max_degrees(&ka);
    let (aq, at) = max_degrees(&aa);
    let (eq, et) = max_degrees(&eig.iter().collect::<Vec<_>>());
    let (dq, dt) = ((aq + kq).max(kq + eq), (at + kt).max(kt + et));
    let kn: Vec<Vec<BigInt>> = k.iter().map(|r| r.iter().map(l1_norm).collect()).collect();
    let an: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(l1_norm).collect()).collect();
    let en: Vec<BigInt> = eig.iter().map(l1_norm).collect();
    let mut bound = BigInt::zero();
    for i in 0..p {
        for mu in 0..p {
            let mut s = &kn[i][mu] * &en[mu];
            for l in 0..p {
                s += &an[i][l] * &kn[l][mu];
            }
            bound = bound.max(s);
        }
    }
    let needed = bound * 2u32;
    let mut modulus = BigInt::one();
    for &prime in primes() {
        if modulus > needed {
            return true;
        }
        let f = Field { p: prime };
        let kmod: Vec<Vec<ModPoly>> = k.iter().map(|r| r.iter().map(|x| ModPoly::new(f, x)).collect()).collect();
        let amod: Vec<Vec<ModPoly>> = a.iter().map(|r| r.iter().map(|x| ModPoly::new(f, x)).collect()).collect();
        let emod: Vec<ModPoly> = eig.iter().map(|x| ModPoly::new(f, x)).collect();
        let grid: Vec<(u64, u64)> = (0..=dq as u64).flat_map(|q| (0..=dt as u64).map(move |t| (q, t))).collect();
        let ok = grid.par_iter().all(|&(q, t)| {
            let (qp, tp) = (powers(f, q, dq), powers(f, t, dt));
            let ev = |m: &[Vec<ModPoly>]| -> Vec<Vec<u64>> {
                m.iter().map(|r| r.iter().map(|x| x.eval(f, &qp, &tp)).collect()).collect()
            };
            let (kv, av) = (ev(&kmod), ev(&amod));
            let lam: Vec<u64> = emod.iter().map(|x| x.eval(f, &qp, &tp)).collect();
            (0..p).all(|i| {
                (0..p).all(|mu| {
                    let lhs = (0..p).fold(0, |acc, l| f.add(acc, f.mul(av[i][l], kv[l][mu])));
                    lhs == f.mul(kv[i][mu], lam[mu])
                })
            })
        });
        if !ok {
            return false;
        }
        modulus *= prime;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;

    #[test]
    fn nabla_degree_two() {
        let m = eigen_operator(2, &EigenSpec::Nabla).unwrap();
        let p = |s: &str| Poly::parse(s, "x").unwrap();
        // columns: images of s[2], s[1,1]
        assert_eq!(m.entries, vec![vec![p("0"), p("1")], vec![p("-q*t"), p("q + t")]]);
    }

    #[test]
    fn inverse_is_inverse() {
        let fwd = eigen_operator(3, &EigenSpec::Nabla).unwrap();
        let inv = eigen_operator(3, &EigenSpec::NablaInverse).unwrap();
        for l in 0..3 {
            let mut v = vec![RF::zero(); 3];
            v[l] = RF::one();
            let back = inv.apply(&fwd.apply(&v));
            assert_eq!(back, v);
        }
    }

    #[test]
    fn schur_eigenvalues() {
        assert_eq!(schur_at_cells(&part(&[1]), &part(&[2])), Poly::parse("1 + q", "x").unwrap());
        assert_eq!(schur_at_cells(&part(&[1, 1]), &part(&[2, 1])), Poly::parse("q + t + q*t", "x").unwrap());
        assert!(schur_at_cells(&part(&[1, 1, 1]), &part(&[2])).is_zero());
    }
}

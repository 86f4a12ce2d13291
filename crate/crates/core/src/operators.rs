//! Operators on symmetric functions: the eigenoperators `nabla`, `nabla_f`,
//! `Psi`, the `D_m` family, `rho = p_1^perp`, `theta = alpha^{-1} D_{-1}` and
//! multiplication by `e_1`.
//!
//! Everything acts degree by degree. Eigenoperators go through the Schur
//! matrices of [`crate::macdonald::eigen_operator`]; their results are in the
//! Schur basis.

use std::fmt;
use std::sync::Arc;

use crate::macdonald::{eigen_operator, EigenSpec};
use crate::partitions::Partition;
use crate::plethysm::pleth_add_constant;
use crate::ring::{alpha, Aux, Mono, Poly, Var, RF};
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

type Map = dyn Fn(&SymFunc) -> Result<SymFunc> + Send + Sync;

/// A named linear map with a fixed degree shift.
#[derive(Clone)]
pub struct LinearOperator {
    name: String,
    shift: i32,
    map: Arc<Map>,
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (shift {})", self.name, self.shift)
    }
}

impl LinearOperator {
    pub fn new(name: impl Into<String>, shift: i32, map: impl Fn(&SymFunc) -> Result<SymFunc> + Send + Sync + 'static) -> Self {
        LinearOperator { name: name.into(), shift, map: Arc::new(map) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Degree change on homogeneous inputs.
    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn apply(&self, f: &SymFunc) -> Result<SymFunc> {
        (self.map)(f)
    }

    pub fn identity() -> Self {
        LinearOperator::new("Id", 0, |f| Ok(f.clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearOperator) -> Self {
        let (a, b) = (self.clone(), inner.clone());
        LinearOperator::new(format!("{} {}", self.name, inner.name), self.shift + inner.shift, move |f| {
            a.apply(&b.apply(f)?)
        })
    }

    /// Pointwise sum; both operators must shift degrees alike.
    pub fn plus(&self, other: &LinearOperator) -> Self {
        assert_eq!(self.shift, other.shift, "adding operators of different degree shifts");
        let (a, b) = (self.clone(), other.clone());
        LinearOperator::new(format!("({} + {})", self.name, other.name), self.shift, move |f| {
            Ok(a.apply(f)?.add(&b.apply(f)?))
        })
    }

    pub fn minus(&self, other: &LinearOperator) -> Self {
        self.plus(&other.scaled(&RF::from_int(-1)))
    }

    pub fn scaled(&self, c: &RF) -> Self {
        let (a, c2) = (self.clone(), c.clone());
        LinearOperator::new(format!("({}) {}", c.to_compact_text(), self.name), self.shift, move |f| {
            Ok(a.apply(f)?.scale(&c2))
        })
    }

    pub fn nabla() -> Self {
        LinearOperator::new("nabla", 0, nabla)
    }

    pub fn nabla_inverse() -> Self {
        LinearOperator::new("nabla^-1", 0, nabla_inverse)
    }

    pub fn nabla_f(g: &SymFunc) -> Self {
        let g = g.clone();
        LinearOperator::new(format!("nabla_[{g}]"), 0, move |f| nabla_f(&g, f))
    }

    pub fn nabla_k(k: u32) -> Self {
        LinearOperator::new(format!("nabla_{k}"), 0, move |f| nabla_k(k, f))
    }

    pub fn d(m: i32) -> Self {
        LinearOperator::new(format!("D_{m}"), m, move |f| Ok(d_m(m, f)))
    }

    pub fn rho() -> Self {
        LinearOperator::new("rho", -1, |f| Ok(rho(f)))
    }

    pub fn theta() -> Self {
        LinearOperator::new("theta", -1, theta)
    }

    pub fn iota() -> Self {
        LinearOperator::new("iota", 1, |f| Ok(iota(f)))
    }

    pub fn psi(truncation: u32, convention: PsiConvention) -> Self {
        LinearOperator::new("Psi", 0, move |f| psi(f, truncation, convention))
    }

    pub fn psi_inverse(truncation: u32, convention: PsiConvention) -> Self {
        LinearOperator::new("Psi^-1", 0, move |f| psi_inverse(f, truncation, convention))
    }

    /// Multiplication by a homogeneous `g`.
    pub fn multiply(g: &SymFunc) -> Self {
        let shift = g.degree().unwrap_or(0) as i32;
        let g = g.clone();
        LinearOperator::new(format!("[{g}]*"), shift, move |f| Ok(g.mul(f)))
    }
}

/// Applies the eigenoperator of `spec` degree by degree.
fn eigen_apply(f: &SymFunc, spec: &EigenSpec) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for (n, comp) in f.components() {
        let comp = comp.to_basis(Basis::S);
        let image = match spec {
            _ if n == 0 => match spec {
                EigenSpec::Schur(nu) if !nu.is_empty() => continue,
                _ => comp,
            },
            EigenSpec::Schur(nu) if nu.is_empty() => comp,
            EigenSpec::Schur(nu) if nu.len() > n as usize => continue,
            _ => {
                let m = eigen_operator(n, spec)?;
                SymFunc::from_vector(Basis::S, n, m.apply(&comp.vector(n)))
            }
        };
        out = out.add(&image);
    }
    Ok(out)
}

/// `nabla H_mu = q^{n(mu')} t^{n(mu)} H_mu`.
pub fn nabla(f: &SymFunc) -> Result<SymFunc> {
    eigen_apply(f, &EigenSpec::Nabla)
}

pub fn nabla_inverse(f: &SymFunc) -> Result<SymFunc> {
    eigen_apply(f, &EigenSpec::NablaInverse)
}

/// `nabla_g H_mu = g[B_mu] H_mu`, assembled from `nabla_{s_nu}`.
pub fn nabla_f(g: &SymFunc, f: &SymFunc) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for (nu, c) in g.to_basis(Basis::S).terms() {
        let part = eigen_apply(f, &EigenSpec::Schur(nu.clone()))?;
        out = out.add(&part.scale(c));
    }
    Ok(out)
}

/// `nabla_{e_k}`.
pub fn nabla_k(k: u32, f: &SymFunc) -> Result<SymFunc> {
    eigen_apply(f, &EigenSpec::Schur(Partition::column(k)))
}

/// `D_m f`, the coefficient of `xi^m` in `f[w + alpha/xi] Omega'(w; -xi)`.
///
/// For homogeneous `f` of degree `d`, the part of `f[w + alpha]` of degree
/// `d - j` is the coefficient `F_j` of `xi^{-j}`, so
/// `D_m f = sum_j (-1)^{m+j} F_j e_{m+j}`.
pub fn d_m(m: i32, f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero(Basis::E);
    for (d, comp) in f.components() {
        if d as i32 + m < 0 {
            continue;
        }
        let shifted = pleth_add_constant(&comp.to_basis(Basis::E), &alpha());
        for (j, fj) in shifted.components() {
            let j = d - j;
            let k = m + j as i32;
            if k < 0 {
                continue;
            }
            let ek = SymFunc::single(Basis::E, k as u32);
            let term = fj.mul(&ek);
            out = out.add(&if k % 2 == 0 { term } else { term.neg() });
        }
    }
    out
}

/// `p_1^perp`.
pub fn rho(f: &SymFunc) -> SymFunc {
    f.perp(&SymFunc::single(Basis::P, 1))
}

/// `alpha^{-1} D_{-1}`.
pub fn theta(f: &SymFunc) -> Result<SymFunc> {
    Ok(d_m(-1, f).scale(&alpha().inverse()?))
}

/// Multiplication by `e_1`.
pub fn iota(f: &SymFunc) -> SymFunc {
    SymFunc::single(Basis::E, 1).mul(f).to_basis(f.basis())
}

/// The two readings of `Psi` on `H_mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsiConvention {
    /// Eigenvalue `prod (1 + q^a t^b u)`, i.e. `Psi = sum_k u^k nabla_k`.
    Expansion,
    /// Eigenvalue `prod (1 - q^a t^b u)`.
    Product,
}

impl PsiConvention {
    fn sign(self) -> i64 {
        match self {
            PsiConvention::Expansion => 1,
            PsiConvention::Product => -1,
        }
    }
}

/// `(c u)^k` as a coefficient.
fn u_power(k: u32, c: i64) -> RF {
    let sign = if c < 0 && k % 2 == 1 { -1 } else { 1 };
    RF::from_poly_aux(Poly::monomial(Mono::new(0, 0, k), sign.into()), Aux::U)
}

/// `Psi f`; exact on every degree up to `truncation`.
pub fn psi(f: &SymFunc, truncation: u32, convention: PsiConvention) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for (n, comp) in f.components() {
        if n > truncation {
            return Err(Error::Truncation { truncation: truncation as usize, degree: n as usize });
        }
        for k in 0..=n {
            out = out.add(&nabla_k(k, &comp)?.scale(&u_power(k, convention.sign())));
        }
    }
    Ok(out)
}

/// `Psi^{-1} f` modulo `u^{truncation + 1}`: `sum_k (-c u)^k nabla_{h_k}`.
pub fn psi_inverse(f: &SymFunc, truncation: u32, convention: PsiConvention) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for k in 0..=truncation {
        let hk = SymFunc::single(Basis::S, k);
        out = out.add(&nabla_f(&hk, f)?.scale(&u_power(k, -convention.sign())));
    }
    Ok(out)
}

/// Drops every power of the auxiliary variable above `order` from the
/// coefficients (whose denominators must be free of it).
pub fn truncate_aux(f: &SymFunc, order: u32) -> SymFunc {
    f.map_coeffs(|c| {
        if !c.uses(Var::X) {
            return c.clone();
        }
        let num = Poly::from_terms(c.numer().terms().iter().filter(|(m, _)| m.x() <= order).cloned());
        RF::normalize(num, c.denom().clone(), c.aux()).expect("nonzero denominator")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;
    use crate::ring::{q_integer, t_integer};
    use crate::symfunc::{atom, same_element};

    fn rf(s: &str) -> RF {
        RF::from_poly(Poly::parse(s, "x").unwrap())
    }

    #[test]
    fn nabla_degree_two() {
        assert_eq!(nabla(&atom(Basis::S, &[2])).unwrap(), atom(Basis::S, &[1, 1]).scale(&rf("-q*t")));
        assert_eq!(nabla(&atom(Basis::E, &[2])).unwrap().to_text(), "s[2] + (q+t)*s[1,1]");
        let h2 = crate::macdonald::basis(2).unwrap().h(&part(&[2])).unwrap();
        assert_eq!(nabla(&h2).unwrap(), h2.scale(&RF::q()));
        assert_eq!(nabla(&SymFunc::one(Basis::S)).unwrap(), SymFunc::one(Basis::S));
    }

    #[test]
    fn inverse_round_trip() {
        let f = atom(Basis::S, &[2, 1]).add(&atom(Basis::E, &[3]).scale(&RF::q()));
        assert!(same_element(&nabla_inverse(&nabla(&f).unwrap()).unwrap(), &f));
    }

    #[test]
    fn nabla_one_closed_forms() {
        let got = nabla_k(1, &atom(Basis::P, &[3])).unwrap();
        let c = RF::from_poly(q_integer(3).mul(&t_integer(3)));
        assert!(same_element(&got, &atom(Basis::E, &[3]).scale(&c)));
        let got = nabla_k(1, &atom(Basis::H, &[3])).unwrap();
        assert_eq!(got.to_text(), "s[3] - q*t*s[2,1] + q^2*t^2*s[1,1,1]");
        let h2 = crate::macdonald::basis(2).unwrap().h(&part(&[2])).unwrap();
        assert_eq!(nabla_k(1, &h2).unwrap(), h2.scale(&rf("1 + q")));
        assert!(nabla_k(1, &SymFunc::one(Basis::S)).unwrap().is_zero());
    }

    #[test]
    fn nabla_f_is_additive_and_multiplicative() {
        let f = atom(Basis::S, &[2, 1]);
        let (a, b) = (atom(Basis::E, &[1]), atom(Basis::S, &[2]));
        let sum = nabla_f(&a.add(&b), &f).unwrap();
        assert_eq!(sum, nabla_f(&a, &f).unwrap().add(&nabla_f(&b, &f).unwrap()));
        let prod = nabla_f(&a.mul(&b), &f).unwrap();
        assert_eq!(prod, nabla_f(&a, &nabla_f(&b, &f).unwrap()).unwrap());
        assert_eq!(nabla_f(&atom(Basis::E, &[3]), &f).unwrap(), nabla(&f).unwrap());
    }

    #[test]
    fn d_zero_on_power_sums() {
        for n in 1..=4u32 {
            let pn = SymFunc::single(Basis::P, n);
            let diff = pn.sub(&d_m(0, &pn));
            let c = Poly::one().sub(&Poly::qt(n, 0)).mul(&Poly::one().sub(&Poly::qt(0, n)));
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let expect = SymFunc::single(Basis::E, n).scale(&RF::from_poly(c).scale_int(sign));
            assert!(same_element(&diff, &expect), "n = {n}");
        }
        assert_eq!(d_m(0, &SymFunc::one(Basis::E)), SymFunc::one(Basis::E));
    }

    #[test]
    fn theta_and_rho_small() {
        let e2 = atom(Basis::E, &[2]);
        let expect = atom(Basis::E, &[1]).scale(&rf("1 + q + t"));
        assert!(same_element(&theta(&e2).unwrap(), &expect));
        assert!(same_element(&rho(&nabla(&e2).unwrap()), &expect));
        assert!(same_element(&theta(&atom(Basis::S, &[1])).unwrap(), &SymFunc::one(Basis::S)));
        assert!(theta(&SymFunc::one(Basis::S)).unwrap().is_zero());
        assert!(rho(&SymFunc::one(Basis::S)).is_zero());
        assert_eq!(iota(&SymFunc::one(Basis::E)), atom(Basis::E, &[1]));
        assert_eq!(d_m(2, &atom(Basis::E, &[2])).degree(), Some(4));
        assert!(d_m(-3, &atom(Basis::E, &[2])).is_zero());
    }

    #[test]
    fn psi_conventions() {
        let h1 = atom(Basis::S, &[1]);
        let u = RF::aux_var(Aux::U);
        assert_eq!(psi(&h1, 1, PsiConvention::Product).unwrap(), h1.scale(&(RF::one() - u.clone())));
        assert_eq!(psi(&h1, 1, PsiConvention::Expansion).unwrap(), h1.scale(&(RF::one() + u)));
        let e2 = atom(Basis::E, &[2]);
        let p = psi(&e2, 2, PsiConvention::Expansion).unwrap();
        assert!(same_element(&truncate_aux(&p, 0), &e2));
        assert!(psi(&e2, 1, PsiConvention::Expansion).is_err());
        let back = psi_inverse(&p, 2, PsiConvention::Expansion).unwrap();
        assert!(same_element(&truncate_aux(&back, 2), &e2));
    }

    #[test]
    fn operator_composition() {
        let op = LinearOperator::nabla_inverse().compose(&LinearOperator::rho()).compose(&LinearOperator::nabla());
        assert_eq!(op.shift(), -1);
        let e3 = atom(Basis::E, &[3]);
        assert!(same_element(&op.apply(&e3).unwrap(), &theta(&e3).unwrap()));
    }
}

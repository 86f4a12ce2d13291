//! The identity catalog. Every check compares both sides exactly in the
//! Schur basis over a range of inputs and reports the first failure.

use std::time::Instant;

use super::{first_failure, schur_inputs, variant, Case, Status, VerdictReport, Witness};
use crate::macdonald::{basis, budget, hall_littlewood_hn, nabla_eigenvalue};
use crate::operators::{
    d_m, iota, nabla, nabla_f, nabla_inverse, nabla_k, psi, psi_inverse, rho, theta, truncate_aux, PsiConvention,
};
use crate::partitions::{cocharge_polynomial, partitions_of, Partition};
use crate::plethysm::plethysm;
use crate::ring::{alpha, q_integer, qt_bracket, t_integer, Aux, Mono, Poly, Var, RF};
use crate::specials::epsilon;
use crate::symfunc::{Basis, SymFunc};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    O,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::A,
        IdentityId::B,
        IdentityId::C,
        IdentityId::D,
        IdentityId::E,
        IdentityId::F,
        IdentityId::G,
        IdentityId::H,
        IdentityId::I,
        IdentityId::J,
        IdentityId::K,
        IdentityId::L,
        IdentityId::M,
        IdentityId::N,
        IdentityId::O,
    ];

    pub fn code(self) -> &'static str {
        use IdentityId::*;
        match self {
            A => "ID-A",
            B => "ID-B",
            C => "ID-C",
            D => "ID-D",
            E => "ID-E",
            F => "ID-F",
            G => "ID-G",
            H => "ID-H",
            I => "ID-I",
            J => "ID-J",
            K => "ID-K",
            L => "ID-L",
            M => "ID-M",
            N => "ID-N",
            O => "ID-O",
        }
    }

    /// Accepts `ID-A`, `id-a` or `A`.
    pub fn parse(s: &str) -> Option<IdentityId> {
        let s = s.trim().to_ascii_uppercase();
        let letter = s.strip_prefix("ID-").unwrap_or(&s);
        IdentityId::ALL.into_iter().find(|id| &id.code()[3..] == letter)
    }

    pub fn statement(self) -> &'static str {
        use IdentityId::*;
        match self {
            A => "rho nabla = alpha^-1 nabla D_-1",
            B => "rho nabla e_{n+1} = sum_{k=0}^n [k+1]_{q,t} nabla(e_k e_{n-k})",
            C => "D_0, D_k iota, D_1, theta and Psi commutation rules",
            D => "Psi^-1 rho Psi = rho + u theta",
            E => "rho nabla_k = nabla_k rho + nabla_{k-1} theta",
            F => "rho^n nabla_m = sum_j nabla_{m-j} (words in j thetas and n-j rhos)",
            G => "rho^n nabla_{n-1} e_n = sum_k theta^k rho theta^{n-1-k} e_n",
            H => "rho Psi p_n = (-1)^{n-1} u [n]_t [n]_q Psi e_{n-1}",
            I => "nabla_{n-1} p_n = [n]_t [n]_q / (qt)^{n-1} nabla h_n",
            J => "nabla_1 on p_n, h_n and e_n",
            K => "nabla_{n-1} e_n = (-1)^{n-1} (qt)^{1-n} nabla nabla_1 h_n = sum_k (-qt)^{1-k} nabla S_{k,1^{n-k}}",
            L => "nabla eps_{n,n-1} = t [t^1] nabla e_n",
            M => "H_n(w;q) = sum_lambda (sum_T q^coch(T)) s_lambda",
            N => "nabla_1 = (Id - D_0) / ((1-q)(1-t))",
            O => "eigenvalues of nabla, nabla^-1, nabla_f, Psi on H_mu",
        }
    }
}

/// Checks one identity on every degree up to `n_max`.
pub fn verify(id: IdentityId, n_max: u32) -> Result<VerdictReport> {
    let needed = if id == IdentityId::C { n_max.max(1) } else { n_max };
    if needed > budget() {
        return Err(Error::DegreeBudget { degree: needed, budget: budget() });
    }
    let started = Instant::now();
    log::info!("verifying {} up to degree {n_max}", id.code());
    use IdentityId::*;
    match id {
        A => id_a(n_max, started),
        B => id_b(n_max, started),
        C => id_c(n_max, started),
        D => id_d(n_max, started),
        E => id_e(n_max, started),
        F => id_f(n_max, started),
        G => id_g(n_max, started),
        H => id_h(n_max, started),
        I => id_i(n_max, started),
        J => id_j(n_max, started),
        K => id_k(n_max, started),
        L => id_l(n_max, started),
        M => id_m(n_max, started),
        N => id_n(n_max, started),
        O => id_o(n_max, started),
    }
}

/// Reports in the order of `ids`.
pub fn verify_all(ids: &[IdentityId], n_max: u32) -> Result<Vec<VerdictReport>> {
    ids.iter().map(|&id| verify(id, n_max)).collect()
}

fn e(n: u32) -> SymFunc {
    SymFunc::single(Basis::E, n)
}

fn h(n: u32) -> SymFunc {
    SymFunc::single(Basis::H, n)
}

fn p(n: u32) -> SymFunc {
    SymFunc::single(Basis::P, n)
}

fn rf(p: Poly) -> RF {
    RF::from_poly(p)
}

fn qt_power(k: i32) -> RF {
    let base = RF::qt(1, 1);
    base.pow(k).expect("nonzero")
}

/// `S_{k,1^{n-k}}`.
fn hook(k: u32, n: u32) -> SymFunc {
    let mut parts = vec![k];
    parts.extend(std::iter::repeat(1).take((n - k) as usize));
    SymFunc::basis_element(Basis::S, Partition::from_parts_unsorted(parts))
}

fn u() -> RF {
    RF::from_poly_aux(Poly::monomial(Mono::new(0, 0, 1), 1.into()), Aux::U)
}

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn range(lo: u32, hi: u32, what: &str) -> String {
    format!("{lo}<={what}<={hi}")
}

fn report(id: IdentityId, range: String, witness: Option<Witness>, started: Instant) -> VerdictReport {
    VerdictReport::new(id.code(), range, witness, Status::Fail, started)
}

fn id_a(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let inputs = schur_inputs(1, n_max);
    let inv = alpha().inverse()?;
    let w = first_failure(&inputs, |f| {
        Ok(Case::new(f.to_text(), rho(&nabla(f)?), nabla(&d_m(-1, f))?.scale(&inv)))
    })?;
    Ok(report(IdentityId::A, range(1, n_max, "|lambda|"), w, started))
}

fn id_b_case(n: u32, from: u32) -> Result<Case> {
    let lhs = rho(&nabla(&e(n + 1))?);
    let mut rhs = SymFunc::zero(Basis::S);
    for k in from..=n {
        rhs = rhs.add(&nabla(&e(k).mul(&e(n - k)))?.scale(&rf(qt_bracket(k + 1))));
    }
    Ok(Case::new(format!("n={n}"), lhs, rhs))
}

/// `n + 1 <= n_max`, so every nabla acts in degree at most `n_max`.
fn id_b(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (0..n_max).collect();
    let w = first_failure(&ns, |&n| id_b_case(n, 0))?;
    let mut r = report(IdentityId::B, format!("0<=n<={}", n_max.saturating_sub(1)), w, started);
    let printed: Vec<u32> = (1..n_max).collect();
    r.variants.push(variant("printed range k=1..n", &printed, |&n| id_b_case(n, 1))?);
    r.note = "the sum runs over k=0..n; the printed k=1..n drops the nabla e_n term".into();
    Ok(r)
}

fn tagged(tag: &str, w: Option<Witness>) -> Option<Witness> {
    w.map(|mut w| {
        w.input = format!("{tag} {}", w.input);
        w
    })
}

fn id_c(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let all = schur_inputs(0, n_max);
    let lower = schur_inputs(0, n_max.saturating_sub(1));
    let a = alpha();
    let trunc = n_max;
    let conv = PsiConvention::Expansion;
    let mut witness = first_failure(&all, |f| {
        let rhs = f.sub(&nabla_k(1, f)?.scale(&a));
        Ok(Case::new(f.to_text(), d_m(0, f), rhs))
    })
    .map(|w| tagged("(a)", w))?;
    if witness.is_none() {
        let cases: Vec<(i32, &SymFunc)> = (-2..=1).flat_map(|k| lower.iter().map(move |f| (k, f))).collect();
        witness = first_failure(&cases, |&(k, f)| {
            let lhs = d_m(k + 1, f).scale(&a);
            let rhs = d_m(k, &iota(f)).sub(&iota(&d_m(k, f)));
            Ok(Case::new(format!("k={k}: {}", f.to_text()), lhs, rhs))
        })
        .map(|w| tagged("(b)", w))?;
    }
    if witness.is_none() {
        witness = first_failure(&lower, |f| {
            let rhs = nabla(&iota(&nabla_inverse(f)?))?.neg();
            Ok(Case::new(f.to_text(), d_m(1, f), rhs))
        })
        .map(|w| tagged("(c)", w))?;
    }
    if witness.is_none() {
        witness = first_failure(&all, |f| Ok(Case::new(f.to_text(), theta(f)?, nabla_inverse(&rho(&nabla(f)?))?)))
            .map(|w| tagged("(d)", w))?;
    }
    if witness.is_none() {
        witness = first_failure(&all, |f| {
            let lhs = truncate_aux(&psi_inverse(&rho(&psi(f, trunc, conv)?), trunc, conv)?, trunc);
            let rhs = rho(f).add(&theta(f)?.scale(&u()));
            Ok(Case::new(f.to_text(), lhs, rhs))
        })
        .map(|w| tagged("(e)", w))?;
    }
    let f_cases: Vec<(u32, &SymFunc)> =
        all.iter().flat_map(|f| (1..=f.max_degree().unwrap_or(0)).map(move |k| (k, f))).collect();
    if witness.is_none() {
        witness = first_failure(&f_cases, |&(k, f)| {
            let lhs = rho(&nabla_k(k, f)?);
            let rhs = nabla_k(k, &rho(f))?.add(&nabla_k(k - 1, &theta(f)?)?);
            Ok(Case::new(format!("k={k}: {}", f.to_text()), lhs, rhs))
        })
        .map(|w| tagged("(f)", w))?;
    }
    let mut r = report(IdentityId::C, format!("|lambda|<={n_max}, k in -2..1 for (b)"), witness, started);
    r.note = "iota is multiplication by e_1; e_1 in (e) and (f) acts as e_1^perp = rho".into();
    let with_e1 = lower.iter().filter(|f| f.max_degree().unwrap_or(0) >= 1).cloned().collect::<Vec<_>>();
    r.variants.push(variant("(e) with multiplication by e_1", &with_e1, |f| {
        let lhs = truncate_aux(&psi_inverse(&iota(&psi(f, trunc, conv)?), trunc, conv)?, trunc);
        let rhs = iota(f).add(&theta(f)?.scale(&u()));
        Ok(Case::new(f.to_text(), lhs, rhs))
    })?);
    let f_lower: Vec<(u32, &SymFunc)> = f_cases.iter().filter(|(_, f)| f.max_degree() < Some(n_max)).cloned().collect();
    r.variants.push(variant("(f) with multiplication by e_1", &f_lower, |&(k, f)| {
        let lhs = iota(&nabla_k(k, f)?);
        let rhs = nabla_k(k, &iota(f))?.add(&nabla_k(k - 1, &theta(f)?)?);
        Ok(Case::new(format!("k={k}: {}", f.to_text()), lhs, rhs))
    })?);
    Ok(r)
}

fn id_d_case(f: &SymFunc, conv: PsiConvention) -> Result<Case> {
    let trunc = f.max_degree().unwrap_or(0);
    let lhs = truncate_aux(&psi_inverse(&rho(&psi(f, trunc, conv)?), trunc, conv)?, trunc);
    let rhs = rho(f).add(&theta(f)?.scale(&u()));
    Ok(Case::new(f.to_text(), lhs, rhs))
}

fn id_d(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let inputs = schur_inputs(1, n_max);
    let w = first_failure(&inputs, |f| id_d_case(f, PsiConvention::Expansion))?;
    let mut r = report(IdentityId::D, range(1, n_max, "|lambda|"), w, started);
    r.note = "Psi H_mu = prod (1 + q^a t^b u) H_mu, i.e. Psi = sum_k u^k nabla_k; both sides modulo u^(d+1)".into();
    r.variants.push(variant("eigenvalue prod (1 - q^a t^b u)", &inputs, |f| id_d_case(f, PsiConvention::Product))?);
    Ok(r)
}

fn id_e(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let cases: Vec<(u32, SymFunc)> =
        schur_inputs(1, n_max).into_iter().flat_map(|f| (1..=f.max_degree().unwrap()).map(move |k| (k, f.clone()))).collect();
    let w = first_failure(&cases, |(k, f)| {
        let lhs = rho(&nabla_k(*k, f)?);
        let rhs = nabla_k(*k, &rho(f))?.add(&nabla_k(k - 1, &theta(f)?)?);
        Ok(Case::new(format!("k={k}: {}", f.to_text()), lhs, rhs))
    })?;
    Ok(report(IdentityId::E, format!("1<=k<=|lambda|<={n_max}"), w, started))
}

/// `sum_j nabla_{m-j} alpha` over words `alpha` with `n` letters, where
/// `j` counts the letters equal to `counted`.
fn words_sum(f: &SymFunc, n: u32, m: u32, counted_theta: bool) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for mask in 0u32..(1 << n) {
        let mut g = f.clone();
        for i in 0..n {
            g = if mask >> i & 1 == 1 { theta(&g)? } else { rho(&g) };
        }
        let thetas = mask.count_ones();
        let j = if counted_theta { thetas } else { n - thetas };
        if j <= m {
            out = out.add(&nabla_k(m - j, &g)?);
        }
    }
    Ok(out)
}

fn id_f_cases(n_max: u32) -> Vec<(u32, u32, SymFunc)> {
    let mut cases = Vec::new();
    for f in schur_inputs(1, n_max) {
        let d = f.max_degree().unwrap();
        for n in 1..=d {
            for m in 0..=d {
                cases.push((n, m, f.clone()));
            }
        }
    }
    cases
}

fn id_f(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let cases = id_f_cases(n_max);
    let check = |counted_theta: bool| {
        move |(n, m, f): &(u32, u32, SymFunc)| -> Result<Case> {
            let mut lhs = nabla_k(*m, f)?;
            for _ in 0..*n {
                lhs = rho(&lhs);
            }
            Ok(Case::new(format!("n={n}, m={m}: {}", f.to_text()), lhs, words_sum(f, *n, *m, counted_theta)?))
        }
    };
    let w = first_failure(&cases, check(true))?;
    let mut r = report(IdentityId::F, format!("1<=n<=|lambda|<={n_max}, 0<=m<=|lambda|"), w, started);
    r.note = "nabla_{m-j} pairs with the words having j thetas and n-j rhos".into();
    r.variants.push(variant("nabla_{m-j} with words having j rhos", &cases, check(false))?);
    Ok(r)
}

fn id_g(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (1..=n_max).collect();
    let lhs_of = |n: u32| -> Result<(SymFunc, SymFunc)> {
        let g = nabla_k(n - 1, &e(n))?;
        let mut lhs = g.clone();
        for _ in 0..n {
            lhs = rho(&lhs);
        }
        Ok((g, lhs))
    };
    let mut w = first_failure(&ns, |&n| {
        let (_, lhs) = lhs_of(n)?;
        let mut rhs = SymFunc::zero(Basis::S);
        for k in 0..n {
            let mut g = e(n);
            for _ in 0..n - 1 - k {
                g = theta(&g)?;
            }
            g = rho(&g);
            for _ in 0..k {
                g = theta(&g)?;
            }
            rhs = rhs.add(&g);
        }
        Ok(Case::new(format!("n={n}"), lhs, rhs))
    })?;
    if w.is_none() {
        w = first_failure(&ns, |&n| {
            let (g, lhs) = lhs_of(n)?;
            let hilbert = SymFunc::scalar(Basis::S, g.hilbert_of_frobenius()?);
            Ok(Case::new(format!("hilbert n={n}"), lhs, hilbert))
        })?;
    }
    Ok(report(IdentityId::G, range(1, n_max, "n"), w, started))
}

fn id_h_case(n: u32, rhs_degree: u32) -> Result<Case> {
    let conv = PsiConvention::Expansion;
    let lhs = rho(&psi(&p(n), n, conv)?);
    let c = rf(t_integer(n).mul(&q_integer(n))).scale_int(sign(n - 1)) * u();
    let rhs = psi(&e(rhs_degree), n, conv)?.scale(&c);
    Ok(Case::new(format!("n={n}"), lhs, rhs))
}

fn id_h(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (2..=n_max).collect();
    let w = first_failure(&ns, |&n| id_h_case(n, n - 1))?;
    let mut r = report(IdentityId::H, range(2, n_max, "n"), w, started);
    r.note = "the right side is Psi e_{n-1}, matching the degree of rho Psi p_n".into();
    r.variants.push(variant("Psi e_n on the right", &ns, |&n| id_h_case(n, n))?);
    Ok(r)
}

fn id_i(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (1..=n_max).collect();
    let w = first_failure(&ns, |&n| {
        let c = rf(t_integer(n).mul(&q_integer(n))) * qt_power(1 - n as i32);
        Ok(Case::new(format!("n={n}"), nabla_k(n - 1, &p(n))?, nabla(&h(n))?.scale(&c)))
    })?;
    Ok(report(IdentityId::I, range(1, n_max, "n"), w, started))
}

fn id_j(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let cases: Vec<(u32, u32)> = (1..=3).flat_map(|eq| (1..=n_max).map(move |n| (eq, n))).collect();
    let w = first_failure(&cases, |&(eq, n)| {
        let (input, lhs, rhs) = match eq {
            1 => {
                let c = rf(t_integer(n).mul(&q_integer(n))).scale_int(sign(n - 1));
                (p(n), nabla_k(1, &p(n))?, e(n).scale(&c))
            }
            2 => {
                let mut rhs = SymFunc::zero(Basis::S);
                for k in 1..=n {
                    let c = rf(Poly::qt(n - k, n - k)).scale_int(sign(n - k));
                    rhs = rhs.add(&hook(k, n).scale(&c));
                }
                (h(n), nabla_k(1, &h(n))?, rhs)
            }
            _ => {
                let mut rhs = SymFunc::zero(Basis::E);
                for k in 1..=n {
                    rhs = rhs.add(&e(n - k).mul(&e(k)).scale(&rf(qt_bracket(k))));
                }
                (e(n), nabla_k(1, &e(n))?, rhs)
            }
        };
        Ok(Case::new(format!("nabla_1 {}", input.to_text()), lhs, rhs))
    })?;
    Ok(report(IdentityId::J, range(1, n_max, "n"), w, started))
}

/// `sum_k c_k (-qt)^{1-k} nabla S_{k,1^{n-k}}` with the sign `c_k` given.
fn id_k_sum(n: u32, c: impl Fn(u32) -> i64) -> Result<SymFunc> {
    let mut out = SymFunc::zero(Basis::S);
    for k in 1..=n {
        let coeff = qt_power(1 - k as i32).scale_int(sign(k - 1) * c(k));
        out = out.add(&nabla(&hook(k, n))?.scale(&coeff));
    }
    Ok(out)
}

fn id_k(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (1..=n_max).collect();
    let w = first_failure(&ns, |&n| {
        let lhs = nabla_k(n - 1, &e(n))?;
        let c = qt_power(1 - n as i32).scale_int(sign(n - 1));
        let first = nabla(&nabla_k(1, &h(n))?)?.scale(&c);
        let case = Case::new(format!("n={n}"), lhs.clone(), first);
        if case.witness().is_some() {
            return Ok(case);
        }
        Ok(Case::new(format!("n={n}, sum form"), lhs, id_k_sum(n, |_| 1)?))
    })?;
    let mut r = report(IdentityId::K, range(1, n_max, "n"), w, started);
    r.note = "the sum form holds with no extra sign: sum_k (-qt)^{1-k} nabla S_{k,1^{n-k}}".into();
    r.variants.push(variant("(-1)^{k-1} inside the sum", &ns, |&n| {
        Ok(Case::new(format!("n={n}"), nabla_k(n - 1, &e(n))?, id_k_sum(n, |k| sign(k - 1))?))
    })?);
    r.variants.push(variant("(-1)^{n-1} in front of the sum", &ns, |&n| {
        Ok(Case::new(format!("n={n}"), nabla_k(n - 1, &e(n))?, id_k_sum(n, |_| sign(n - 1))?))
    })?);
    Ok(r)
}

fn id_l_case(n: u32, times_t: bool) -> Result<Case> {
    let lhs = nabla(&epsilon(n, n - 1)?)?;
    let linear = nabla(&e(n))?.map_coeffs(|c| c.coefficient_of(Var::T, 1).expect("polynomial"));
    let rhs = if times_t { linear.scale(&RF::t()) } else { linear };
    Ok(Case::new(format!("n={n}"), lhs, rhs))
}

fn id_l(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let ns: Vec<u32> = (2..=n_max).collect();
    let w = first_failure(&ns, |&n| id_l_case(n, true))?;
    let mut r = report(IdentityId::L, range(2, n_max, "n"), w, started);
    r.note = "'coefficient of t' is the part of nabla e_n of degree exactly 1 in t".into();
    r.variants.push(variant("coefficient of t^1 with t removed", &ns, |&n| id_l_case(n, false))?);
    Ok(r)
}

fn hn_display(n: u32) -> Option<SymFunc> {
    let rows: &[(&[u32], &str)] = match n {
        1 => &[(&[1], "1")],
        2 => &[(&[2], "1"), (&[1, 1], "q")],
        3 => &[(&[3], "1"), (&[2, 1], "q^2 + q"), (&[1, 1, 1], "q^3")],
        4 => &[
            (&[4], "1"),
            (&[3, 1], "q^3 + q^2 + q"),
            (&[2, 2], "q^4 + q^2"),
            (&[2, 1, 1], "q^5 + q^4 + q^3"),
            (&[1, 1, 1, 1], "q^6"),
        ],
        _ => return None,
    };
    Some(SymFunc::from_terms(
        Basis::S,
        rows.iter().map(|(l, c)| (Partition::from_parts_unsorted(l.to_vec()), rf(Poly::parse(c, "x").expect("literal")))),
    ))
}

fn id_m(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let cases: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (0..3).map(move |kind| (n, kind))).collect();
    let w = first_failure(&cases, |&(n, kind)| {
        let cocharge = SymFunc::from_terms(Basis::S, partitions_of(n).into_iter().map(|l| {
            let c = rf(cocharge_polynomial(&l));
            (l, c)
        }));
        Ok(match kind {
            0 => Case::new(format!("n={n}, plethystic H_n"), hall_littlewood_hn(n), cocharge),
            1 => {
                let hm = basis(n)?.h(&Partition::row(n)).expect("row shape");
                Case::new(format!("n={n}, H_(n)(w;q,t)"), hm, cocharge)
            }
            _ => match hn_display(n) {
                Some(d) => Case::new(format!("n={n}, displayed H_n"), hall_littlewood_hn(n), d),
                None => Case::new(format!("n={n}"), SymFunc::zero(Basis::S), SymFunc::zero(Basis::S)),
            },
        })
    })?;
    Ok(report(IdentityId::M, range(1, n_max, "n"), w, started))
}

fn id_n(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let inputs = schur_inputs(0, n_max);
    let inv = alpha().inverse()?;
    let w = first_failure(&inputs, |f| {
        Ok(Case::new(f.to_text(), nabla_k(1, f)?, f.sub(&d_m(0, f)).scale(&inv)))
    })?;
    Ok(report(IdentityId::N, range(0, n_max, "|lambda|"), w, started))
}

/// `f[B_mu]`.
fn at_cells(f: &SymFunc, mu: &Partition) -> Result<RF> {
    let alphabet = SymFunc::scalar(Basis::P, rf(mu.b_mu()));
    Ok(plethysm(f, &alphabet)?.constant_term())
}

fn id_o(n_max: u32, started: Instant) -> Result<VerdictReport> {
    let mut cases: Vec<(Partition, u32)> = Vec::new();
    for n in 1..=n_max {
        for mu in partitions_of(n) {
            for kind in 0..4 {
                cases.push((mu.clone(), kind));
            }
        }
    }
    let w = first_failure(&cases, |(mu, kind)| {
        let n = mu.size();
        let hm = basis(n)?.h(mu).expect("partition of n");
        let name = format!("H{}", mu.to_text());
        Ok(match kind {
            0 => Case::new(format!("nabla {name}"), nabla(&hm)?, hm.scale(&rf(nabla_eigenvalue(mu)))),
            1 => {
                let inv = rf(nabla_eigenvalue(mu)).inverse()?;
                Case::new(format!("nabla^-1 {name}"), nabla_inverse(&hm)?, hm.scale(&inv))
            }
            2 => {
                let fs = [e(1), e(n), h(2), p(2), SymFunc::basis_element(Basis::S, Partition::from_parts_unsorted(vec![2, 1]))];
                let mut lhs = SymFunc::zero(Basis::S);
                let mut rhs = SymFunc::zero(Basis::S);
                // a generic combination tests every f at once
                for (i, f) in fs.iter().enumerate() {
                    let w = RF::from_int(1 + i as i64 * 7);
                    lhs = lhs.add(&nabla_f(f, &hm)?.scale(&w));
                    rhs = rhs.add(&hm.scale(&(at_cells(f, mu)? * w)));
                }
                Case::new(format!("nabla_f {name}, f in e1, e{n}, h2, p2, s21"), lhs, rhs)
            }
            _ => {
                let mut eig = RF::one();
                for c in mu.cells() {
                    eig = eig * (RF::one() + rf(Poly::qt(c.a, c.b)) * u());
                }
                Case::new(format!("Psi {name}"), psi(&hm, n, PsiConvention::Expansion)?, hm.scale(&eig))
            }
        })
    })?;
    Ok(report(IdentityId::O, range(1, n_max, "|mu|"), w, started))
}

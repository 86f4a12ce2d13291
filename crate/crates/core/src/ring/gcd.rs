//! Greatest common divisors in `Z[q, t, x]`.
//!
//! Content and monomial factors are split off first, variables missing from
//! one operand are eliminated through the coefficient gcd, and the remaining
//! primitive parts go through the heuristic integer-evaluation gcd. The
//! recursive primitive PRS is the fallback when the heuristic gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly, Var};

/// Gcd normalized to a positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let ma = a.mono_content();
    let mb = b.mono_content();
    let c = ca.gcd(&cb);
    let m = ma.gcd(mb);
    if a.is_monomial() || b.is_monomial() {
        return Poly::monomial(m, c);
    }
    let pa = normalize_sign(a.div_mono(ma).div_scalar(&ca));
    let pb = normalize_sign(b.div_mono(mb).div_scalar(&cb));
    let g = gcd_primitive(&pa, &pb);
    g.mul_mono(m).scale(&c)
}

/// Gcd of a list of polynomials.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(items: I) -> Poly {
    let mut g = Poly::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn normalize_sign(p: Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Both inputs have unit content, no monomial factor and positive lc.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    // a variable occurring in only one operand: reduce through its coefficients
    for v in Var::ALL {
        let (ua, ub) = (a.uses(v), b.uses(v));
        if ua != ub {
            let (with, without) = if ua { (a, b) } else { (b, a) };
            let mut g = without.clone();
            for c in with.to_univariate(v) {
                if c.is_zero() {
                    continue;
                }
                g = gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return normalize_sign(g);
        }
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    prs_gcd(a, b)
}

/// Primitive part over the integers with a positive leading coefficient.
fn primitive(p: Poly) -> Poly {
    if p.is_zero() {
        return p;
    }
    let c = p.content();
    normalize_sign(if c.is_one() { p } else { p.div_scalar(&c) })
}

const HEU_MAX_BITS: u64 = 400_000;

/// Heuristic gcd by evaluation at a large integer and balanced-base
/// reconstruction. Returns `None` when it cannot certify a result.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let v = Var::ALL.into_iter().find(|&v| a.uses(v))?;
    let bound = a.max_abs_coeff().min(b.max_abs_coeff());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    let max_deg = a.degree(v).max(b.degree(v)) as u64;
    for _ in 0..6 {
        if xi.bits() * (max_deg + 1) > HEU_MAX_BITS {
            return None;
        }
        let ea = a.eval_var(v, &xi);
        let eb = b.eval_var(v, &xi);
        if ea.is_zero() || eb.is_zero() {
            xi = &xi * 73794u32 / 27011u32;
            continue;
        }
        let gamma = gcd(&ea, &eb);
        let candidate = primitive(reconstruct(&gamma, &xi, v));
        if !candidate.is_zero()
            && a.div_exact(&candidate).is_some()
            && b.div_exact(&candidate).is_some()
        {
            return Some(candidate);
        }
        xi = &xi * 73794u32 / 27011u32;
    }
    None
}

/// Balanced `xi`-adic expansion of every integer coefficient into powers of `v`.
fn reconstruct(gamma: &Poly, xi: &BigInt, v: Var) -> Poly {
    let half: BigInt = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in gamma.terms() {
        let mut c = c.clone();
        let mut e = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((m.mul(Mono::var(v, e)), d.clone()));
            }
            c = (c - d) / xi;
            e += 1;
        }
    }
    Poly::from_terms(terms)
}

/// Recursive primitive polynomial remainder sequence in the main variable.
fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    let v = Var::ALL
        .into_iter()
        .filter(|&v| a.uses(v) && b.uses(v))
        .min_by_key(|&v| a.degree(v).max(b.degree(v)))
        .expect("prs_gcd on constants");
    let mut ua = a.to_univariate(v);
    let mut ub = b.to_univariate(v);
    if ua.len() < ub.len() {
        std::mem::swap(&mut ua, &mut ub);
    }
    let ca = gcd_many(ua.iter());
    let cb = gcd_many(ub.iter());
    let content = gcd(&ca, &cb);
    let mut ra = uni_div_content(&ua, &ca);
    let mut rb = uni_div_content(&ub, &cb);
    loop {
        let r = pseudo_rem(&ra, &rb);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return content;
        }
        let cr = gcd_many(r.iter());
        ra = rb;
        rb = uni_div_content(&r, &cr);
    }
    let g = Poly::from_univariate(v, &rb);
    normalize_sign(g.mul(&content))
}

fn uni_div_content(p: &[Poly], c: &Poly) -> Vec<Poly> {
    if c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x.div_exact(c).expect("content divides coefficients")).collect()
}

fn trim(p: &mut Vec<Poly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` for coefficient vectors.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = r[idx].sub(&bc.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
    }
    r
}

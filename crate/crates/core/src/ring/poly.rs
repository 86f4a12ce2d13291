//! Sparse integer polynomials in `q`, `t` and one auxiliary variable.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order with
//! `q > t > aux`, so the first term is always the leading term.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A variable of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    /// The auxiliary slot (`u`, `z` or `xi`, depending on context).
    X,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Q, Var::T, Var::X];

    fn shift(self) -> u32 {
        match self {
            Var::Q => 32,
            Var::T => 16,
            Var::X => 0,
        }
    }
}

const FIELD: u64 = 0xFFFF;
const MAX_EXP: u32 = 0x7FFF;

/// Packed exponent vector. The packing `deg | q | t | x` makes the integer
/// order coincide with graded-lex order and monomial product with addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(q: u32, t: u32, x: u32) -> Mono {
        assert!(
            q <= MAX_EXP && t <= MAX_EXP && x <= MAX_EXP && q + t + x <= MAX_EXP,
            "exponent overflow in monomial q^{q} t^{t} x^{x}"
        );
        Mono(((q + t + x) as u64) << 48 | (q as u64) << 32 | (t as u64) << 16 | x as u64)
    }

    pub fn var(v: Var, e: u32) -> Mono {
        match v {
            Var::Q => Mono::new(e, 0, 0),
            Var::T => Mono::new(0, e, 0),
            Var::X => Mono::new(0, 0, e),
        }
    }

    #[inline]
    pub fn q(self) -> u32 {
        ((self.0 >> 32) & FIELD) as u32
    }

    #[inline]
    pub fn t(self) -> u32 {
        ((self.0 >> 16) & FIELD) as u32
    }

    #[inline]
    pub fn x(self) -> u32 {
        (self.0 & FIELD) as u32
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> 48) as u32
    }

    #[inline]
    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> v.shift()) & FIELD) as u32
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!(self.q() + other.q() <= MAX_EXP);
        debug_assert!(self.t() + other.t() <= MAX_EXP);
        debug_assert!(self.x() + other.x() <= MAX_EXP);
        Mono(self.0 + other.0)
    }

    pub fn div(self, other: Mono) -> Option<Mono> {
        if self.q() >= other.q() && self.t() >= other.t() && self.x() >= other.x() {
            Some(Mono(self.0 - other.0))
        } else {
            None
        }
    }

    pub fn gcd(self, other: Mono) -> Mono {
        Mono::new(
            self.q().min(other.q()),
            self.t().min(other.t()),
            self.x().min(other.x()),
        )
    }

    pub fn pow(self, k: u32) -> Mono {
        Mono::new(self.q() * k, self.t() * k, self.x() * k)
    }

    /// Drops the exponent of `v`.
    pub fn without(self, v: Var) -> Mono {
        Mono(self.0 - ((self.exp(v) as u64) << v.shift()) - ((self.exp(v) as u64) << 48))
    }

    pub fn swap_qt(self) -> Mono {
        Mono::new(self.t(), self.q(), self.x())
    }
}

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v, 1), BigInt::one())
    }

    pub fn q() -> Poly {
        Poly::var(Var::Q)
    }

    pub fn t() -> Poly {
        Poly::var(Var::T)
    }

    pub fn x() -> Poly {
        Poly::var(Var::X)
    }

    pub fn monomial(m: Mono, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// `q^a t^b`
    pub fn qt(a: u32, b: u32) -> Poly {
        Poly::monomial(Mono::new(a, b, 0), BigInt::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Poly {
        let mut map: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Poly::from_map(map)
    }

    fn from_map(map: HashMap<Mono, BigInt>) -> Poly {
        let mut terms: Vec<(Mono, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Caller guarantees strictly decreasing monomials and nonzero coefficients.
    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> BigInt {
        match self.terms.last() {
            Some((m, c)) if *m == Mono::ONE => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn lead(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn lc(&self) -> BigInt {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.uses(v)).collect()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Mono::ONE;
        };
        it.fold(*first, |acc, (m, _)| acc.gcd(*m))
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    debug_assert!((a % c).is_zero());
                    (*m, a / c)
                })
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn div_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(if negate { (b[j].0, -&b[j].1) } else { b[j].clone() });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(if negate { (t.0, -&t.1) } else { t.clone() });
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Poly { terms: other.terms.iter().map(|(a, b)| (a.mul(*m), b * c)).collect() };
        }
        if other.terms.len() == 1 {
            return other.mul(self);
        }
        let mut map: HashMap<Mono, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = map.entry(ma.mul(*mb)).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        Poly::from_map(map)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return if self.terms.iter().all(|(_, a)| (a % &c).is_zero()) {
                Some(self.div_scalar(&c))
            } else {
                None
            };
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let qm = m.div(*dm)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((qm, qc));
            }
            return Some(Poly { terms: out });
        }
        // cheap degree screens
        for v in Var::ALL {
            if d.degree(v) > self.degree(v) || d.min_degree(v) > self.min_degree(v) {
                return None;
            }
        }
        let (dm, dc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&d.mul(&Poly::monomial(qm, qc.clone())));
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Replaces every variable `v` by `v^k`.
    pub fn substitute_power(&self, k: u32) -> Poly {
        assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        // grlex order is preserved under uniform scaling of exponents
        Poly { terms: self.terms.iter().map(|(m, c)| (m.pow(k), c.clone())).collect() }
    }

    pub fn swap_qt(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.swap_qt(), c.clone())))
    }

    /// Coefficients with respect to `v`, indexed by exponent.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                Poly { terms: b }
            })
            .collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::var(v, e as u32);
            terms.extend(c.terms.iter().map(|(a, b)| (a.mul(m), b.clone())));
        }
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Poly { terms }
    }

    /// Coefficient of `v^e`, a polynomial free of `v`.
    pub fn coefficient(&self, v: Var, e: u32) -> Poly {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        let mut p = Poly { terms };
        p.terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        p
    }

    /// Substitutes an integer for `v`.
    pub fn eval_var(&self, v: Var, value: &BigInt) -> Poly {
        let deg = self.degree(v) as usize;
        let mut powers = Vec::with_capacity(deg + 1);
        let mut acc = BigInt::one();
        for _ in 0..=deg {
            powers.push(acc.clone());
            acc *= value;
        }
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.without(v), c * &powers[m.exp(v) as usize])))
    }

    /// Evaluates at rational values of `q`, `t` and the auxiliary slot.
    pub fn eval(&self, q: &BigRational, t: &BigRational, x: &BigRational) -> BigRational {
        let pw = |base: &BigRational, e: u32| -> BigRational { num_traits::pow::pow(base.clone(), e as usize) };
        let mut cache: HashMap<(Var, u32), BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (v, base) in [(Var::Q, q), (Var::T, t), (Var::X, x)] {
                let e = m.exp(v);
                if e > 0 {
                    let p = cache.entry((v, e)).or_insert_with(|| pw(base, e));
                    term *= &*p;
                }
            }
            total += term;
        }
        total
    }

    /// Evaluates a polynomial free of the auxiliary slot at integer `q`, `t`.
    pub fn eval_int(&self, q: &BigInt, t: &BigInt) -> BigInt {
        let dq = self.degree(Var::Q) as usize;
        let dt = self.degree(Var::T) as usize;
        let mut qp = Vec::with_capacity(dq + 1);
        let mut acc = BigInt::one();
        for _ in 0..=dq {
            qp.push(acc.clone());
            acc *= q;
        }
        let mut tp = Vec::with_capacity(dt + 1);
        acc = BigInt::one();
        for _ in 0..=dt {
            tp.push(acc.clone());
            acc *= t;
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            debug_assert_eq!(m.x(), 0);
            total += c * &qp[m.q() as usize] * &tp[m.t() as usize];
        }
        total
    }

    /// Writes the polynomial in canonical text form using `aux` as the name
    /// of the auxiliary variable. `spaced` puts spaces around `+`/`-`.
    pub fn write_text(&self, f: &mut impl fmt::Write, aux: &str, spaced: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if spaced {
                f.write_str(if neg { " - " } else { " + " })?;
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *m == Mono::ONE || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (name, e) in [("q", m.q()), ("t", m.t()), (aux, m.x())] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }

    pub fn to_text(&self, aux: &str) -> String {
        let mut s = String::new();
        self.write_text(&mut s, aux, true).unwrap();
        s
    }

    /// Parses canonical polynomial text such as `q^2*t + 3*q - 1`.
    /// `aux` names the auxiliary variable accepted in the input.
    pub fn parse(text: &str, aux: &str) -> Result<Poly, String> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut terms = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(format!("expected sign at byte {pos}"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &cleaned[start..pos];
            if term.is_empty() {
                return Err(format!("empty term at byte {start}"));
            }
            let mut coeff = BigInt::from(sign);
            let (mut eq, mut et, mut ex) = (0u32, 0u32, 0u32);
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                    None => (factor, 1),
                };
                match base {
                    "q" => eq += exp,
                    "t" => et += exp,
                    b if b == aux => ex += exp,
                    digits => {
                        let n: BigInt = digits.parse().map_err(|_| format!("bad factor `{factor}`"))?;
                        coeff *= num_traits::pow::pow(n, exp as usize);
                    }
                }
            }
            terms.push((Mono::new(eq, et, ex), coeff));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Integer coefficients if each fits in an `i64`.
    pub fn small_coeffs(&self) -> Option<Vec<(Mono, i64)>> {
        self.terms.iter().map(|(m, c)| c.to_i64().map(|c| (*m, c))).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f, "x", true)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f, "x", true)
    }
}

//! Symmetric functions with coefficients in `Q(q, t)`.
//!
//! A [`SymFunc`] is a finite combination of basis elements of one of the
//! five classical bases. Conversions run through the power sums.

mod tables;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::partitions::Partition;
use crate::ring::{Aux, Poly, RF};
use crate::{Error, Result};

pub use tables::{character, kostka_number, tables, DegreeIndex, DegreeTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    P = 0,
    E = 1,
    H = 2,
    M = 3,
    S = 4,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::P, Basis::E, Basis::H, Basis::M, Basis::S];

    pub fn letter(self) -> char {
        match self {
            Basis::P => 'p',
            Basis::E => 'e',
            Basis::H => 'h',
            Basis::M => 'm',
            Basis::S => 's',
        }
    }

    pub fn from_letter(c: &str) -> Option<Basis> {
        Some(match c {
            "p" => Basis::P,
            "e" => Basis::E,
            "h" => Basis::H,
            "m" => Basis::M,
            "s" => Basis::S,
            _ => return None,
        })
    }

    /// Bases whose products are indexed by the union of parts.
    fn is_multiplicative(self) -> bool {
        matches!(self, Basis::P | Basis::E | Basis::H)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, RF>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> SymFunc {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> SymFunc {
        SymFunc::scalar(basis, RF::one())
    }

    /// Degree-zero element `c`.
    pub fn scalar(basis: Basis, c: RF) -> SymFunc {
        SymFunc::term(basis, Partition::empty(), c)
    }

    pub fn term(basis: Basis, lambda: Partition, c: RF) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        if !c.is_zero() {
            f.terms.insert(lambda, c);
        }
        f
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> SymFunc {
        SymFunc::term(basis, lambda, RF::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, RF)>>(basis: Basis, terms: I) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        for (p, c) in terms {
            f.add_term(p, &c);
        }
        f
    }

    /// `e_n`, `h_n` or `p_n`, and so on.
    pub fn single(basis: Basis, n: u32) -> SymFunc {
        SymFunc::basis_element(basis, Partition::row(n))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, RF> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> RF {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &RF) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Partition::size).collect();
        d.dedup();
        d
    }

    /// The common degree, or `None` for zero or inhomogeneous values.
    pub fn degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Partition::size)
    }

    /// Homogeneous component of degree `k`.
    pub fn project_degree(&self, k: u32) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().filter(|(p, _)| p.size() == k).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// Components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, SymFunc> {
        let mut out: BTreeMap<u32, SymFunc> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.size()).or_insert_with(|| SymFunc::zero(self.basis)).terms.insert(p.clone(), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RF) -> RF) -> SymFunc {
        SymFunc::from_terms(self.basis, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    pub fn scale(&self, c: &RF) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_int(&self, n: i64) -> SymFunc {
        self.map_coeffs(|x| x.scale_int(n))
    }

    pub fn neg(&self) -> SymFunc {
        self.scale_int(-1)
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (p, c) in other.terms {
            out.add_term(p, &c);
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.neg())
    }

    /// Coefficient of degree zero.
    pub fn constant_term(&self) -> RF {
        self.coeff(&Partition::empty())
    }

    /// Applies `q -> q^k, t -> t^k` and the auxiliary likewise to every coefficient.
    pub fn substitute_power(&self, k: u32) -> SymFunc {
        self.map_coeffs(|c| c.substitute_power(k))
    }

    /// Re-expresses the same element in another basis.
    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let mut out = SymFunc::zero(target);
        for (n, comp) in self.components() {
            if n == 0 {
                out.terms.extend(comp.terms);
                continue;
            }
            let t = tables(n);
            let m = t.transition(self.basis, target);
            let coeffs: Vec<(usize, &RF)> = comp.terms.iter().map(|(p, c)| (t.index.position(p), c)).collect();
            for (j, lambda) in t.index.parts.iter().enumerate() {
                let c = linear_combination(coeffs.iter().map(|&(i, c)| (c, &m[i][j])));
                if !c.is_zero() {
                    out.terms.insert(lambda.clone(), c);
                }
            }
        }
        out
    }

    /// Coefficient vector of the degree-`n` component in decreasing lex order.
    pub fn vector(&self, n: u32) -> Vec<RF> {
        let t = tables(n);
        t.index.parts.iter().map(|p| self.coeff(p)).collect()
    }

    pub fn from_vector(basis: Basis, n: u32, v: Vec<RF>) -> SymFunc {
        let t = tables(n);
        SymFunc::from_terms(basis, t.index.parts.iter().cloned().zip(v))
    }

    /// Ring product. The result is in the basis of `self` (the s-basis when
    /// `self` is in the monomial basis).
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        if self.is_zero() || other.is_zero() {
            return SymFunc::zero(self.basis);
        }
        if let Some(0) = other.degree() {
            return self.scale(&other.constant_term());
        }
        if let Some(0) = self.degree() {
            return other.to_basis(self.basis).scale(&self.constant_term());
        }
        let target = if self.basis == Basis::M { Basis::S } else { self.basis };
        let work = if target.is_multiplicative() { target } else { Basis::P };
        let a = self.to_basis(work);
        let b = other.to_basis(work);
        let mut acc: HashMap<Partition, Vec<RF>> = HashMap::new();
        for (pa, ca) in &a.terms {
            for (pb, cb) in &b.terms {
                acc.entry(pa.union(pb)).or_default().push(ca * cb);
            }
        }
        let out = SymFunc::from_terms(work, acc.into_iter().map(|(p, cs)| (p, sum_rf(cs))));
        out.to_basis(target)
    }

    pub fn pow(&self, k: u32) -> SymFunc {
        let mut out = SymFunc::one(self.basis);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Hall scalar product.
    pub fn hall_scalar(&self, other: &SymFunc) -> RF {
        let pairs: Vec<RF> = match (self.basis, other.basis) {
            (Basis::S, Basis::S) => self.dual_pairs(other, |_| None),
            (Basis::H, Basis::M) | (Basis::M, Basis::H) => self.dual_pairs(other, |_| None),
            _ => {
                let a = self.to_basis(Basis::P);
                let b = other.to_basis(Basis::P);
                a.dual_pairs(&b, |p| Some(p.z()))
            }
        };
        sum_rf(pairs)
    }

    fn dual_pairs(&self, other: &SymFunc, weight: impl Fn(&Partition) -> Option<BigInt>) -> Vec<RF> {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(p, c)| {
                let d = large.terms.get(p)?;
                let prod = c * d;
                Some(match weight(p) {
                    Some(z) => prod.scale_rational(&BigRational::from_integer(z)),
                    None => prod,
                })
            })
            .collect()
    }

    /// `f^perp(self)`, the adjoint of multiplication by `f`. The result is
    /// in the basis of `self`.
    pub fn perp(&self, f: &SymFunc) -> SymFunc {
        if f.basis == Basis::P && f.len() == 1 && self.basis == Basis::S {
            let (mu, c) = f.terms.iter().next().unwrap();
            if mu.parts() == [1] {
                return self.skew_p1().scale(c);
            }
        }
        let g = self.to_basis(Basis::P);
        let fp = f.to_basis(Basis::P);
        let mut acc: HashMap<Partition, Vec<RF>> = HashMap::new();
        for (mu, cf) in &fp.terms {
            for (lambda, cg) in &g.terms {
                let Some(rest) = remove_parts(lambda, mu) else {
                    continue;
                };
                let ratio = BigRational::new(lambda.z(), rest.z());
                acc.entry(rest).or_default().push((cf * cg).scale_rational(&ratio));
            }
        }
        SymFunc::from_terms(Basis::P, acc.into_iter().map(|(p, cs)| (p, sum_rf(cs)))).to_basis(self.basis)
    }

    /// `p_1^perp` on the Schur basis: sum over removable corners.
    fn skew_p1(&self) -> SymFunc {
        let mut acc: HashMap<Partition, Vec<RF>> = HashMap::new();
        for (lambda, c) in &self.terms {
            for (nu, _) in lambda.covers_down() {
                acc.entry(nu).or_default().push(c.clone());
            }
        }
        SymFunc::from_terms(Basis::S, acc.into_iter().map(|(p, cs)| (p, sum_rf(cs))))
    }

    /// `<f, p_1^n>` for homogeneous `f` of degree `n`.
    pub fn hilbert_of_frobenius(&self) -> Result<RF> {
        let n = match self.degrees().as_slice() {
            [] => return Ok(RF::zero()),
            [n] => *n,
            _ => return Err(Error::NotHomogeneous),
        };
        let p1n = SymFunc::basis_element(Basis::P, Partition::column(n));
        Ok(self.hall_scalar(&p1n))
    }

    /// `omega`: `e <-> h`, `s_lambda -> s_lambda'`, `p_lambda -> sign * p_lambda`.
    pub fn omega(&self) -> SymFunc {
        match self.basis {
            Basis::S => SymFunc::from_terms(Basis::S, self.terms.iter().map(|(p, c)| (p.conjugate(), c.clone()))),
            Basis::E => SymFunc { basis: Basis::H, terms: self.terms.clone() },
            Basis::H => SymFunc { basis: Basis::E, terms: self.terms.clone() },
            Basis::P => self.clone_map(|p, c| c.scale_int(p.sign())),
            Basis::M => self.to_basis(Basis::S).omega(),
        }
    }

    fn clone_map(&self, f: impl Fn(&Partition, &RF) -> RF) -> SymFunc {
        SymFunc::from_terms(self.basis, self.terms.iter().map(|(p, c)| (p.clone(), f(p, c))))
    }

    /// `true` when every coefficient lies in `Z[q, t]` (no auxiliary).
    pub fn has_integral_polynomial_coeffs(&self) -> bool {
        self.terms.values().all(RF::is_integral_polynomial)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// `{"basis": "s", "terms": [[[2,1], <coefficient>], ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(p, c)| json!([p.parts(), c.to_json()])).collect();
        json!({"basis": self.basis.letter().to_string(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<SymFunc> {
        let bad = |what: &str| Error::Parse(format!("symmetric function JSON: {what}"));
        let basis = v
            .get("basis")
            .and_then(Value::as_str)
            .and_then(Basis::from_letter)
            .ok_or_else(|| bad("basis"))?;
        let mut f = SymFunc::zero(basis);
        for term in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let parts: Vec<i64> = term
                .get(0)
                .and_then(Value::as_array)
                .ok_or_else(|| bad("partition"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("part")))
                .collect::<Result<_>>()?;
            let lambda = Partition::try_from(parts.as_slice())?;
            let c = RF::from_json(term.get(1).ok_or_else(|| bad("coefficient"))?)?;
            f.add_term(lambda, &c);
        }
        Ok(f)
    }
}

/// `lambda` minus the parts of `mu` as multisets, if `mu` is contained.
fn remove_parts(lambda: &Partition, mu: &Partition) -> Option<Partition> {
    let mut rest = lambda.clone();
    for &k in mu.parts() {
        rest = rest.remove_part(k)?;
    }
    Some(rest)
}

/// Sum of rational functions, grouping equal denominators before any gcd work.
pub fn sum_rf(items: Vec<RF>) -> RF {
    if items.len() == 1 {
        return items.into_iter().next().unwrap();
    }
    let mut groups: Vec<(Poly, Aux, Poly)> = Vec::new();
    for c in items {
        if c.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(d, a, _)| d == c.denom() && *a == c.aux()) {
            Some(g) => g.2 = g.2.add(c.numer()),
            None => groups.push((c.denom().clone(), c.aux(), c.numer().clone())),
        }
    }
    let mut total = RF::zero();
    for (den, aux, num) in groups {
        if num.is_zero() {
            continue;
        }
        total += &RF::normalize(num, den, aux).expect("nonzero denominator");
    }
    total
}

/// `sum c_i r_i` for rational functions `c_i` and rationals `r_i`.
pub fn linear_combination<'a, I>(items: I) -> RF
where
    I: IntoIterator<Item = (&'a RF, &'a BigRational)>,
{
    // numerators accumulated over a common integer denominator per group
    let mut groups: Vec<(Poly, Aux, Poly, BigInt)> = Vec::new();
    for (c, r) in items {
        if r.is_zero() || c.is_zero() {
            continue;
        }
        let scaled = c.numer().scale(r.numer());
        match groups.iter_mut().find(|(d, a, _, _)| d == c.denom() && *a == c.aux()) {
            Some(g) => {
                if &g.3 == r.denom() {
                    g.2 = g.2.add(&scaled);
                } else {
                    let l = num_integer::Integer::lcm(&g.3, r.denom());
                    g.2 = g.2.scale(&(&l / &g.3)).add(&scaled.scale(&(&l / r.denom())));
                    g.3 = l;
                }
            }
            None => groups.push((c.denom().clone(), c.aux(), scaled, r.denom().clone())),
        }
    }
    let mut total = RF::zero();
    for (den, aux, num, d) in groups {
        if num.is_zero() {
            continue;
        }
        let den = if d.is_one() { den } else { den.scale(&d) };
        total += &RF::normalize(num, den, aux).expect("nonzero denominator");
    }
    total
}

fn write_coeff_term(out: &mut String, c: &RF, label: Option<String>) {
    let text = c.to_compact_text();
    let simple = c.denom().is_one() && c.numer().len() == 1;
    match label {
        None => {
            if simple {
                out.push_str(&text);
            } else {
                out.push('(');
                out.push_str(&text);
                out.push(')');
            }
        }
        Some(label) => {
            if c.is_one() {
                out.push_str(&label);
            } else if (-c).is_one() {
                out.push('-');
                out.push_str(&label);
            } else if simple {
                out.push_str(&text);
                out.push('*');
                out.push_str(&label);
            } else {
                out.push('(');
                out.push_str(&text);
                out.push_str(")*");
                out.push_str(&label);
            }
        }
    }
}

/// `s[2] + (q+t)*s[1,1]`; a lone scalar prints without parentheses.
impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.len() == 1 {
            let (p, c) = self.terms.iter().next().unwrap();
            if p.is_empty() {
                return f.write_str(&c.to_compact_text());
            }
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let label = (!p.is_empty()).then(|| format!("{}{}", self.basis.letter(), p));
            let mut piece = String::new();
            write_coeff_term(&mut piece, c, label);
            if i == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Equality as ring elements, across bases.
pub fn same_element(a: &SymFunc, b: &SymFunc) -> bool {
    a.to_basis(Basis::S) == b.to_basis(Basis::S)
}

/// Shorthand for `basis[parts]` with unit coefficient.
pub fn atom(basis: Basis, parts: &[u32]) -> SymFunc {
    SymFunc::basis_element(basis, crate::partitions::part(parts))
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::gcd::gcd;
use super::poly::{Mono, Poly, Var};
use crate::error::{Error, Result};

/// Which formal variable occupies the auxiliary slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Aux {
    #[default]
    None,
    U,
    Z,
    Xi,
}

impl Aux {
    pub fn name(self) -> &'static str {
        match self {
            Aux::None => "x",
            Aux::U => "u",
            Aux::Z => "z",
            Aux::Xi => "xi",
        }
    }

    pub fn from_name(name: &str) -> Option<Aux> {
        match name {
            "u" => Some(Aux::U),
            "z" => Some(Aux::Z),
            "xi" => Some(Aux::Xi),
            _ => None,
        }
    }

    /// Combines the slots of two operands.
    ///
    /// # Panics
    /// When two different auxiliary variables meet; at most one is live.
    pub fn join(self, other: Aux) -> Aux {
        match (self, other) {
            (Aux::None, b) => b,
            (a, Aux::None) => a,
            (a, b) if a == b => a,
            (a, b) => panic!("cannot combine auxiliary variables {} and {}", a.name(), b.name()),
        }
    }
}

/// Reduced quotient of integer polynomials: an exact element of `Q(q, t)`,
/// optionally extended by one auxiliary variable.
///
/// Normal form: `gcd(num, den) = 1` as polynomials over `Z`, the integer
/// coefficients of `num` and `den` have no common factor, and the leading
/// coefficient of `den` (graded-lex, `q > t > aux`) is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    aux: Aux,
}

pub type RF = RationalFunction;

impl RationalFunction {
    pub fn zero() -> RF {
        RF { num: Poly::zero(), den: Poly::one(), aux: Aux::None }
    }

    pub fn one() -> RF {
        RF { num: Poly::one(), den: Poly::one(), aux: Aux::None }
    }

    pub fn from_int(n: i64) -> RF {
        RF { num: Poly::from_i64(n), den: Poly::one(), aux: Aux::None }
    }

    pub fn from_bigint(n: BigInt) -> RF {
        RF { num: Poly::constant(n), den: Poly::one(), aux: Aux::None }
    }

    pub fn from_rational(r: &BigRational) -> RF {
        RF {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
            aux: Aux::None,
        }
    }

    pub fn q() -> RF {
        RF::from_poly(Poly::q())
    }

    pub fn t() -> RF {
        RF::from_poly(Poly::t())
    }

    /// The auxiliary variable itself.
    pub fn aux_var(aux: Aux) -> RF {
        assert_ne!(aux, Aux::None);
        RF { num: Poly::x(), den: Poly::one(), aux }
    }

    /// `q^a t^b`
    pub fn qt(a: u32, b: u32) -> RF {
        RF::from_poly(Poly::qt(a, b))
    }

    /// A polynomial free of the auxiliary slot.
    pub fn from_poly(p: Poly) -> RF {
        debug_assert!(!p.uses(Var::X));
        RF { num: p, den: Poly::one(), aux: Aux::None }
    }

    pub fn from_poly_aux(p: Poly, aux: Aux) -> RF {
        RF::normalize(p, Poly::one(), aux).expect("unit denominator")
    }

    /// Builds the reduced representative of `num / den`.
    pub fn normalize(num: Poly, den: Poly, aux: Aux) -> Result<RF> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RF::zero());
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        let aux = if num.uses(Var::X) || den.uses(Var::X) { aux } else { Aux::None };
        debug_assert!(aux != Aux::None || !(num.uses(Var::X) || den.uses(Var::X)));
        Ok(RF { num, den, aux })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn aux(&self) -> Aux {
        self.aux
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is an integer constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// True when the value lies in `Z[q, t, aux]`.
    pub fn is_integral_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational constant value, if the function is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    /// The numerator when the denominator is one.
    pub fn as_integral_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    fn fast_add(&self, other: &RF, negate: bool) -> RF {
        let aux = self.aux.join(other.aux);
        let rhs_num = if negate { other.num.neg() } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RF { num: rhs_num, den: other.den.clone(), aux: other.aux };
        }
        if self.den == other.den {
            let num = self.num.add(&rhs_num);
            if self.den.is_one() {
                return RF { num, den: Poly::one(), aux }.drop_unused_aux();
            }
            return RF::normalize(num, self.den.clone(), aux).expect("nonzero denominator");
        }
        if let (Some(a), Some(b)) = (self.den.as_constant(), other.den.as_constant()) {
            let l = a.lcm(&b);
            let num = self.num.scale(&(&l / &a)).add(&rhs_num.scale(&(&l / &b)));
            return RF::normalize(num, Poly::constant(l), aux).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &other.den);
        let da = self.den.div_exact(&g).expect("gcd divides");
        let db = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&db).add(&rhs_num.mul(&da));
        let den = self.den.mul(&db);
        RF::normalize(num, den, aux).expect("nonzero denominator")
    }

    fn drop_unused_aux(mut self) -> RF {
        if self.aux != Aux::None && !self.uses(Var::X) {
            self.aux = Aux::None;
        }
        self
    }

    fn fast_mul(&self, other: &RF) -> RF {
        if self.is_zero() || other.is_zero() {
            return RF::zero();
        }
        let aux = self.aux.join(other.aux);
        if self.den.is_one() && other.den.is_one() {
            return RF { num: self.num.mul(&other.num), den: Poly::one(), aux }.drop_unused_aux();
        }
        let g1 = if self.num.is_constant() || other.den.is_constant() {
            None
        } else {
            Some(gcd(&self.num, &other.den))
        };
        let g2 = if other.num.is_constant() || self.den.is_constant() {
            None
        } else {
            Some(gcd(&other.num, &self.den))
        };
        let (mut an, mut bd) = (self.num.clone(), other.den.clone());
        if let Some(g) = g1.filter(|g| !g.is_one()) {
            an = an.div_exact(&g).unwrap();
            bd = bd.div_exact(&g).unwrap();
        }
        let (mut bn, mut ad) = (other.num.clone(), self.den.clone());
        if let Some(g) = g2.filter(|g| !g.is_one()) {
            bn = bn.div_exact(&g).unwrap();
            ad = ad.div_exact(&g).unwrap();
        }
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        // cross gcds already removed; only integer content and sign remain
        let c = num.content().gcd(&den.content());
        let (mut num, mut den) = if c.is_one() { (num, den) } else { (num.div_scalar(&c), den.div_scalar(&c)) };
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RF { num, den, aux }.drop_unused_aux()
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<RF> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RF { num, den, aux: self.aux })
    }

    pub fn checked_div(&self, other: &RF) -> Result<RF> {
        Ok(self.fast_mul(&other.inverse()?))
    }

    pub fn scale_rational(&self, r: &BigRational) -> RF {
        if r.is_zero() || self.is_zero() {
            return RF::zero();
        }
        if r.is_one() {
            return self.clone();
        }
        let num = self.num.scale(r.numer());
        let den = self.den.scale(r.denom());
        let c = num.content().gcd(&den.content());
        RF { num: num.div_scalar(&c), den: den.div_scalar(&c), aux: self.aux }
    }

    pub fn scale_int(&self, n: i64) -> RF {
        self.scale_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i32) -> Result<RF> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let k = k as u32;
        let (mut num, mut den) = (self.num.pow(k), self.den.pow(k));
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RF { num, den, aux: self.aux }.drop_unused_aux())
    }

    /// Replaces `q`, `t` and the auxiliary variable by their `k`-th powers.
    pub fn substitute_power(&self, k: u32) -> RF {
        assert!(k >= 1, "substitute_power needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        RF::normalize(self.num.substitute_power(k), self.den.substitute_power(k), self.aux)
            .expect("nonzero denominator")
    }

    /// Exchanges `q` and `t`.
    pub fn swap_qt(&self) -> RF {
        RF::normalize(self.num.swap_qt(), self.den.swap_qt(), self.aux).expect("nonzero denominator")
    }

    /// Coefficient of `v^exponent`, requiring the denominator to depend on
    /// `v` only through a monomial factor (Laurent in `v`).
    pub fn coefficient_of(&self, v: Var, exponent: i64) -> Result<RF> {
        let shift = self.den.min_degree(v);
        if self.den.degree(v) != shift {
            return Err(Error::NotPolynomialIn(var_label(v, self.aux)));
        }
        let den = self.den.div_mono(Mono::var(v, shift));
        let target = exponent + shift as i64;
        if target < 0 {
            return Ok(RF::zero());
        }
        let num = self.num.coefficient(v, target as u32);
        let aux = if v == Var::X { Aux::None } else { self.aux };
        RF::normalize(num, den, aux)
    }

    /// Value at rational `q`, `t` (and auxiliary); `None` where the
    /// denominator vanishes.
    pub fn eval(&self, q: &BigRational, t: &BigRational, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q, t, x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q, t, x) / d)
    }

    pub fn eval_qt(&self, q: i64, t: i64) -> Option<BigRational> {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        self.eval(&r(q), &r(t), &BigRational::zero())
    }

    /// Canonical text, e.g. `(q^2*t + q - 1)/(q - t)`.
    pub fn to_text(&self) -> String {
        self.text(true)
    }

    /// Text without spaces, used inside symmetric-function coefficients.
    pub fn to_compact_text(&self) -> String {
        self.text(false)
    }

    fn text(&self, spaced: bool) -> String {
        let name = self.aux.name();
        let mut out = String::new();
        if self.den.is_one() {
            self.num.write_text(&mut out, name, spaced).unwrap();
            return out;
        }
        let wrap = |p: &Poly, out: &mut String| {
            if p.len() > 1 || (p.is_monomial() && !p.lc().abs().is_one() && p.lead().unwrap().0 != Mono::ONE) {
                out.push('(');
                p.write_text(out, name, spaced).unwrap();
                out.push(')');
            } else {
                p.write_text(out, name, spaced).unwrap();
            }
        };
        wrap(&self.num, &mut out);
        out.push('/');
        wrap(&self.den, &mut out);
        out
    }

    /// JSON form `{"num": [[c,[dq,dt,daux]],...], "den": [...], "aux": ...}`.
    pub fn to_json(&self) -> Value {
        let terms = |p: &Poly| -> Value {
            Value::Array(
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let coeff = match i64::try_from(c) {
                            Ok(v) => json!(v),
                            Err(_) => json!(c.to_string()),
                        };
                        json!([coeff, [m.q(), m.t(), m.x()]])
                    })
                    .collect(),
            )
        };
        let aux = match self.aux {
            Aux::None => Value::Null,
            a => json!(a.name()),
        };
        json!({"num": terms(&self.num), "den": terms(&self.den), "aux": aux})
    }

    pub fn from_json(v: &Value) -> Result<RF> {
        let bad = |what: &str| Error::Parse(format!("rational function JSON: {what}"));
        let terms = |key: &str| -> Result<Poly> {
            let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?;
            let mut out = Vec::new();
            for term in arr {
                let c = term.get(0).ok_or_else(|| bad("term"))?;
                let c: BigInt = match c {
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad("coefficient"))?,
                    Value::String(s) => s.parse().map_err(|_| bad("coefficient"))?,
                    _ => return Err(bad("coefficient")),
                };
                let e = term.get(1).and_then(Value::as_array).ok_or_else(|| bad("exponents"))?;
                let ex: Vec<u32> = e.iter().map(|x| x.as_u64().map(|x| x as u32)).collect::<Option<_>>().ok_or_else(|| bad("exponents"))?;
                if ex.len() != 3 {
                    return Err(bad("exponent arity"));
                }
                out.push((Mono::new(ex[0], ex[1], ex[2]), c));
            }
            Ok(Poly::from_terms(out))
        };
        let aux = match v.get("aux") {
            None | Some(Value::Null) => Aux::None,
            Some(Value::String(s)) => Aux::from_name(s).ok_or_else(|| bad("aux"))?,
            _ => return Err(bad("aux")),
        };
        RF::normalize(terms("num")?, terms("den")?, aux)
    }
}

fn var_label(v: Var, aux: Aux) -> String {
    match v {
        Var::Q => "q".into(),
        Var::T => "t".into(),
        Var::X => aux.name().into(),
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RF::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RF::from_int(n)
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RF::from_poly(p)
    }
}

impl<'a> Add<&'a RF> for &'a RF {
    type Output = RF;
    fn add(self, rhs: &RF) -> RF {
        self.fast_add(rhs, false)
    }
}

impl<'a> Sub<&'a RF> for &'a RF {
    type Output = RF;
    fn sub(self, rhs: &RF) -> RF {
        self.fast_add(rhs, true)
    }
}

impl<'a> Mul<&'a RF> for &'a RF {
    type Output = RF;
    fn mul(self, rhs: &RF) -> RF {
        self.fast_mul(rhs)
    }
}

impl<'a> Div<&'a RF> for &'a RF {
    type Output = RF;
    /// # Panics
    /// On division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RF) -> RF {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Add for RF {
    type Output = RF;
    fn add(self, rhs: RF) -> RF {
        &self + &rhs
    }
}

impl Sub for RF {
    type Output = RF;
    fn sub(self, rhs: RF) -> RF {
        &self - &rhs
    }
}

impl Mul for RF {
    type Output = RF;
    fn mul(self, rhs: RF) -> RF {
        &self * &rhs
    }
}

impl Div for RF {
    type Output = RF;
    fn div(self, rhs: RF) -> RF {
        &self / &rhs
    }
}

impl Neg for RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF { num: self.num.neg(), den: self.den, aux: self.aux }
    }
}

impl Neg for &RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF { num: self.num.neg(), den: self.den.clone(), aux: self.aux }
    }
}

impl AddAssign<&RF> for RF {
    fn add_assign(&mut self, rhs: &RF) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RF> for RF {
    fn sub_assign(&mut self, rhs: &RF) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RF> for RF {
    fn mul_assign(&mut self, rhs: &RF) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, "xi").unwrap()
    }

    fn rf(n: &str, d: &str) -> RF {
        RF::normalize(p(n), p(d), Aux::Xi).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf("1 - q^2", "1 - q"), RF::from_poly(p("1 + q")));
        assert_eq!(rf("0", "7"), RF::zero());
        assert_eq!(rf("q - t", "t - q"), RF::from_int(-1));
        assert!(matches!(RF::normalize(p("1"), Poly::zero(), Aux::None), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn canonical_text() {
        let f = rf("q^2*t + q - 1", "q - t");
        assert_eq!(f.to_text(), "(q^2*t + q - 1)/(q - t)");
        assert_eq!(rf("1", "2*q").to_text(), "1/(2*q)");
        assert_eq!(rf("q", "1 - q^3").to_text(), "-q/(q^3 - 1)");
    }

    #[test]
    fn substitute_power_examples() {
        let a = rf("7", "3");
        assert_eq!(a.substitute_power(2), a);
        let f = rf("1 - q - t + q*t", "1");
        assert_eq!(f.substitute_power(2), rf("1 - q^2 - t^2 + q^2*t^2", "1"));
        assert_eq!(rf("1", "1 - q").substitute_power(3), rf("1", "1 - q^3"));
    }

    #[test]
    fn laurent_coefficient_extraction() {
        // (q + t*xi^3) / xi^2 : coefficient of xi^-2 is q, of xi^1 is t
        let f = rf("q + t*xi^3", "xi^2");
        assert_eq!(f.coefficient_of(Var::X, -2).unwrap(), RF::q());
        assert_eq!(f.coefficient_of(Var::X, 1).unwrap(), RF::t());
        assert_eq!(f.coefficient_of(Var::X, 0).unwrap(), RF::zero());
        assert!(rf("1", "1 - xi").coefficient_of(Var::X, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = rf("q^2*t + 3*xi - 1", "q - t");
        assert_eq!(RF::from_json(&f.to_json()).unwrap(), f);
    }
}

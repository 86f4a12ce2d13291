//! Exact coefficient arithmetic: integer polynomials in `q`, `t` and one
//! auxiliary variable, and reduced rational functions over them.

mod gcd;
mod poly;
mod qnum;
mod ratfunc;

pub use gcd::{gcd, gcd_many};
pub use poly::{Mono, Poly, Var};
pub use qnum::{q_binomial, q_integer, q_pochhammer, qt_bracket, t_integer};
pub use ratfunc::{Aux, RationalFunction, RF};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// `alpha = (1 - q)(1 - t)`.
pub fn alpha() -> RF {
    RF::from_poly(Poly::parse("1 - q - t + q*t", "x").expect("literal"))
}

/// Coefficient of `aux^exponent` in a polynomial (zero when absent).
pub fn coefficient_of(f: &Poly, v: Var, exponent: i64) -> Poly {
    if exponent < 0 {
        return Poly::zero();
    }
    f.coefficient(v, exponent as u32)
}

//! Type-checked evaluation of parsed expressions.

use std::fmt;

use nabla_kit::identities::{nabla_matrix, NablaMatrix};
use nabla_kit::macdonald::basis;
use nabla_kit::operators::{d_m, nabla, nabla_f, nabla_inverse, nabla_k, psi, rho, theta, PsiConvention};
use nabla_kit::partitions::Partition;
use nabla_kit::plethysm::{pleth_scaled, plethysm};
use nabla_kit::ring::{Aux, Mono, Poly, RF};
use nabla_kit::specials::epsilon;
use nabla_kit::symfunc::{Basis, SymFunc};
use num_traits::ToPrimitive;

use crate::expr::{line_column, AtomKind, BinOp, Expr, ExprKind, Span};

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(RF),
    Sym(SymFunc),
    Matrix(NablaMatrix),
}

impl Value {
    fn type_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Sym(_) => "symmetric function",
            Value::Matrix(_) => "matrix",
        }
    }
}

#[derive(Debug)]
pub struct EvalError {
    pub message: String,
    pub span: Span,
}

impl EvalError {
    /// The message prefixed with the 1-based line and column in `src`.
    pub fn located(&self, src: &str) -> String {
        let (line, column) = line_column(src, self.span.start);
        format!("{line}:{column}: {}", self.message)
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Res<T> = Result<T, EvalError>;

fn err<T>(span: Span, message: impl Into<String>) -> Res<T> {
    Err(EvalError { message: message.into(), span })
}

fn lib<T>(span: Span, r: nabla_kit::Result<T>) -> Res<T> {
    r.map_err(|e| {
        let hint = match e {
            nabla_kit::Error::DegreeBudget { .. } => " (raise it with --budget)",
            nabla_kit::Error::Truncation { .. } => " (pass a larger truncation as the second argument of psi)",
            _ => "",
        };
        EvalError { message: format!("{e}{hint}"), span }
    })
}

pub fn eval(e: &Expr) -> Res<Value> {
    let span = e.span;
    match &e.kind {
        ExprKind::Int(n) => Ok(Value::Scalar(RF::from_bigint(n.clone()))),
        ExprKind::Var('q') => Ok(Value::Scalar(RF::q())),
        ExprKind::Var('t') => Ok(Value::Scalar(RF::t())),
        ExprKind::Var(_) => Ok(Value::Scalar(RF::from_poly_aux(Poly::monomial(Mono::new(0, 0, 1), 1.into()), Aux::U))),
        ExprKind::Ident(name) => err(span, format!("unknown name '{name}'; variables are q, t and u")),
        ExprKind::Atom(kind, parts) => atom(*kind, parts, span),
        ExprKind::Neg(inner) => match eval(inner)? {
            Value::Scalar(c) => Ok(Value::Scalar(-c)),
            Value::Sym(f) => Ok(Value::Sym(f.neg())),
            Value::Matrix(_) => err(span, "cannot negate a matrix"),
        },
        ExprKind::Pow(base, k) => match eval(base)? {
            Value::Scalar(c) => {
                let k = i32::try_from(*k).or_else(|_| err(span, "exponent too large"))?;
                Ok(Value::Scalar(lib(span, c.pow(k))?))
            }
            Value::Sym(f) if *k >= 0 => Ok(Value::Sym(f.pow(*k as u32))),
            Value::Sym(_) => err(span, "negative powers of symmetric functions are not defined"),
            Value::Matrix(_) => err(span, "matrices cannot be raised to powers"),
        },
        ExprKind::Binary(op, a, b) => binary(*op, eval(a)?, eval(b)?, span),
        ExprKind::Call(name, args) => call(name, args, span),
    }
}

fn atom(kind: AtomKind, parts: &[u32], span: Span) -> Res<Value> {
    let lambda = lib(span, Partition::new(parts.to_vec()))?;
    let b = match kind {
        AtomKind::S => Basis::S,
        AtomKind::E => Basis::E,
        AtomKind::H => Basis::H,
        AtomKind::P => Basis::P,
        AtomKind::M => Basis::M,
        AtomKind::Macdonald => {
            let basis = lib(span, basis(lambda.size()))?;
            return Ok(Value::Sym(basis.h(&lambda).expect("partition of the basis degree")));
        }
    };
    Ok(Value::Sym(SymFunc::basis_element(b, lambda)))
}

fn binary(op: BinOp, a: Value, b: Value, span: Span) -> Res<Value> {
    use Value::*;
    Ok(match (op, a, b) {
        (_, Matrix(_), _) | (_, _, Matrix(_)) => return err(span, "matrices do not support arithmetic"),
        (BinOp::Add, Scalar(x), Scalar(y)) => Scalar(x + y),
        (BinOp::Sub, Scalar(x), Scalar(y)) => Scalar(x - y),
        (BinOp::Mul, Scalar(x), Scalar(y)) => Scalar(x * y),
        (BinOp::Div, Scalar(x), Scalar(y)) => Scalar(lib(span, x.checked_div(&y))?),
        (BinOp::Add, Sym(f), Sym(g)) => Sym(f.add(&g)),
        (BinOp::Sub, Sym(f), Sym(g)) => Sym(f.sub(&g)),
        (BinOp::Mul, Sym(f), Sym(g)) => Sym(f.mul(&g)),
        (BinOp::Add, Scalar(c), Sym(f)) => Sym(SymFunc::scalar(f.basis(), c).add(&f)),
        (BinOp::Add, Sym(f), Scalar(c)) => Sym(f.add(&SymFunc::scalar(f.basis(), c))),
        (BinOp::Sub, Scalar(c), Sym(f)) => Sym(SymFunc::scalar(f.basis(), c).sub(&f)),
        (BinOp::Sub, Sym(f), Scalar(c)) => Sym(f.sub(&SymFunc::scalar(f.basis(), c))),
        (BinOp::Mul, Scalar(c), Sym(f)) | (BinOp::Mul, Sym(f), Scalar(c)) => Sym(f.scale(&c)),
        (BinOp::Div, Sym(f), Scalar(c)) => Sym(f.scale(&lib(span, c.inverse())?)),
        (BinOp::Div, _, Sym(_)) => return err(span, "division by a symmetric function is not defined"),
    })
}

fn sym(v: Value, span: Span) -> Res<SymFunc> {
    match v {
        Value::Sym(f) => Ok(f),
        Value::Scalar(c) => Ok(SymFunc::scalar(Basis::S, c)),
        Value::Matrix(_) => err(span, "expected a symmetric function, found a matrix"),
    }
}

fn scalar(v: Value, span: Span) -> Res<RF> {
    match v {
        Value::Scalar(c) => Ok(c),
        other => err(span, format!("expected a scalar, found a {}", other.type_name())),
    }
}

fn integer(v: Value, span: Span) -> Res<i64> {
    let c = scalar(v, span)?;
    c.as_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_i64())
        .ok_or_else(|| EvalError { message: format!("expected an integer, found {}", c.to_text()), span })
}

fn natural(v: Value, span: Span) -> Res<u32> {
    let n = integer(v, span)?;
    u32::try_from(n).or_else(|_| err(span, format!("expected a non-negative integer, found {n}")))
}

fn call(name: &str, args: &[Expr], span: Span) -> Res<Value> {
    let arg = |i: usize| eval(&args[i]);
    let at = |i: usize| args[i].span;
    let f_at = |i: usize| -> Res<SymFunc> { sym(arg(i)?, at(i)) };
    Ok(match name {
        "nabla" => Value::Sym(lib(span, nabla(&f_at(0)?))?),
        "nabla_inv" => Value::Sym(lib(span, nabla_inverse(&f_at(0)?))?),
        "nabla_f" => Value::Sym(lib(span, nabla_f(&f_at(0)?, &f_at(1)?))?),
        "nabla_k" => Value::Sym(lib(span, nabla_k(natural(arg(0)?, at(0))?, &f_at(1)?))?),
        "Dm" => {
            let m = integer(arg(0)?, at(0))?;
            let m = i32::try_from(m).or_else(|_| err(at(0), "index too large"))?;
            Value::Sym(d_m(m, &f_at(1)?))
        }
        "rho" => Value::Sym(rho(&f_at(0)?)),
        "theta" => Value::Sym(lib(span, theta(&f_at(0)?))?),
        "psi" => {
            let f = f_at(0)?;
            let trunc = match args.len() {
                2 => natural(arg(1)?, at(1))?,
                _ => f.max_degree().unwrap_or(0),
            };
            Value::Sym(lib(span, psi(&f, trunc, PsiConvention::Expansion))?)
        }
        "pleth" => Value::Sym(lib(span, plethysm(&f_at(0)?, &f_at(1)?))?),
        "pleth_scaled" => Value::Sym(pleth_scaled(&f_at(0)?, &scalar(arg(1)?, at(1))?)),
        "epsilon" => {
            let n = natural(arg(0)?, at(0))?;
            let j = natural(arg(1)?, at(1))?;
            Value::Sym(lib(span, epsilon(n, j))?)
        }
        "scalar" => Value::Scalar(f_at(0)?.hall_scalar(&f_at(1)?)),
        "expand" => {
            let target = match &args[1].kind {
                ExprKind::Ident(b) => Basis::from_letter(b),
                _ => None,
            };
            let Some(target) = target else {
                return err(at(1), "expected a basis name: s, e, h, p or m");
            };
            Value::Sym(f_at(0)?.to_basis(target))
        }
        "hilbert" => Value::Scalar(lib(span, f_at(0)?.hilbert_of_frobenius())?),
        "matrix" => {
            let n = natural(arg(0)?, at(0))?;
            if n == 0 {
                return err(at(0), "matrix degree must be positive");
            }
            Value::Matrix(lib(span, nabla_matrix(n))?)
        }
        _ => return err(span, format!("unknown function '{name}'")),
    })
}

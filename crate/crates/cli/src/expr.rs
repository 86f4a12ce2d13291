//! The expression language: a recursive-descent parser and a canonical
//! printer.
//!
//! Precedence, tightest first: `^`, unary `-`, `*` and `/`, `+` and `-`.

use std::fmt;

use num_bigint::BigInt;

/// Byte offsets into the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    S,
    E,
    H,
    P,
    M,
    /// The modified Macdonald polynomial `H_mu`.
    Macdonald,
}

impl AtomKind {
    fn from_name(s: &str) -> Option<AtomKind> {
        Some(match s {
            "s" => AtomKind::S,
            "e" => AtomKind::E,
            "h" => AtomKind::H,
            "p" => AtomKind::P,
            "m" => AtomKind::M,
            "H" => AtomKind::Macdonald,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            AtomKind::S => "s",
            AtomKind::E => "e",
            AtomKind::H => "h",
            AtomKind::P => "p",
            AtomKind::M => "m",
            AtomKind::Macdonald => "H",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigInt),
    /// `q`, `t` or `u`.
    Var(char),
    Atom(AtomKind, Vec<u32>),
    /// A bare identifier such as a basis name in `expand(f, s)`.
    Ident(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Equality ignores spans.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// Function names and their arities.
pub const FUNCTIONS: &[(&str, &[usize])] = &[
    ("nabla", &[1]),
    ("nabla_inv", &[1]),
    ("nabla_f", &[2]),
    ("nabla_k", &[2]),
    ("Dm", &[2]),
    ("rho", &[1]),
    ("theta", &[1]),
    ("psi", &[1, 2]),
    ("pleth", &[2]),
    ("pleth_scaled", &[2]),
    ("epsilon", &[2]),
    ("scalar", &[2]),
    ("expand", &[2]),
    ("hilbert", &[1]),
    ("matrix", &[1]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub suggestions: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        if !self.suggestions.is_empty() {
            write!(f, "; did you mean {}?", self.suggestions.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// 1-based line and column of a byte offset.
pub fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Known function names close to `name`.
pub fn suggest(name: &str) -> Vec<String> {
    let mut scored: Vec<(usize, &str)> = FUNCTIONS
        .iter()
        .map(|(f, _)| (strsim::levenshtein(&name.to_lowercase(), &f.to_lowercase()), *f))
        .filter(|(d, f)| *d <= 2 || f.starts_with(name) || name.starts_with(f))
        .collect();
    scored.sort();
    scored.into_iter().map(|(_, f)| f.to_owned()).collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().expect("digits");
            out.push((Tok::Int(n), Span { start, end: i }));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_owned()), Span { start, end: i }));
        } else if "+-*/^()[],".contains(c) {
            out.push((Tok::Sym(c), Span { start: i, end: i + 1 }));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("char");
            let (line, column) = line_column(src, i);
            return Err(ParseError {
                message: format!("unexpected character '{ch}'"),
                line,
                column,
                expected: Vec::new(),
                suggestions: Vec::new(),
            });
        }
    }
    out.push((Tok::End, Span { start: src.len(), end: src.len() }));
    Ok(out)
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error_here("unexpected input after the expression", &["an operator", "end of input"]));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, span: Span, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let (line, column) = line_column(self.src, span.start);
        ParseError {
            message: message.into(),
            line,
            column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            suggestions: Vec::new(),
        }
    }

    fn error_here(&self, message: &str, expected: &[&str]) -> ParseError {
        self.error_at(self.span(), format!("{message}, found {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, c: char) -> Result<Span, ParseError> {
        if self.peek() == &Tok::Sym(c) {
            Ok(self.bump().1)
        } else {
            let want = format!("'{c}'");
            Err(self.error_here("unexpected token", &[want.as_str()]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == &Tok::Sym('-') {
            let start = self.bump().1.start;
            let inner = self.unary()?;
            let span = Span { start, end: inner.span.end };
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == &Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let (tok, span) = self.bump();
        let Tok::Int(n) = tok else {
            self.pos -= 1;
            return Err(self.error_here("expected an integer exponent", &["integer"]));
        };
        let k: i64 = i64::try_from(&n).map_err(|_| self.error_at(span, "exponent too large", &[]))?;
        let k = if negative { -k } else { k };
        let span = Span { start: base.span.start, end: span.end };
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), k), span })
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr { kind: ExprKind::Int(n), span }),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                let end = self.expect(')')?.end;
                Ok(Expr { kind: inner.kind, span: Span { start: span.start, end } })
            }
            Tok::Ident(name) => self.after_ident(name, span),
            _ => {
                self.pos -= 1;
                Err(self.error_here("expected an operand", &["number", "q", "t", "u", "atom like s[2,1]", "function call", "'('"]))
            }
        }
    }

    fn after_ident(&mut self, name: String, span: Span) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Sym('[') => {
                let Some(kind) = AtomKind::from_name(&name) else {
                    return Err(self.error_at(span, format!("unknown basis '{name}'"), &["s", "e", "h", "p", "m", "H"]));
                };
                self.bump();
                let mut parts = Vec::new();
                if self.peek() != &Tok::Sym(']') {
                    loop {
                        let (tok, s) = self.bump();
                        let Tok::Int(n) = tok else {
                            self.pos -= 1;
                            return Err(self.error_here("expected a part", &["positive integer"]));
                        };
                        let part = u32::try_from(&n).ok().filter(|&x| x > 0);
                        let Some(part) = part else {
                            return Err(self.error_at(s, "partition parts must be positive", &[]));
                        };
                        parts.push(part);
                        if self.peek() == &Tok::Sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                let end = self.expect(']')?.end;
                let full = Span { start: span.start, end };
                if parts.windows(2).any(|w| w[0] < w[1]) {
                    return Err(self.error_at(full, "partition parts not weakly decreasing", &[]));
                }
                Ok(Expr { kind: ExprKind::Atom(kind, parts), span: full })
            }
            Tok::Sym('(') => {
                let Some((_, arities)) = FUNCTIONS.iter().find(|(f, _)| *f == name) else {
                    let mut e = self.error_at(span, format!("unknown function '{name}'"), &[]);
                    e.suggestions = suggest(&name);
                    return Err(e);
                };
                self.bump();
                let mut args = Vec::new();
                if self.peek() != &Tok::Sym(')') {
                    loop {
                        args.push(self.expr()?);
                        if self.peek() == &Tok::Sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                let end = self.expect(')')?.end;
                let full = Span { start: span.start, end };
                if !arities.contains(&args.len()) {
                    let want: Vec<String> = arities.iter().map(|a| a.to_string()).collect();
                    return Err(self.error_at(
                        full,
                        format!("{name} takes {} argument(s), got {}", want.join(" or "), args.len()),
                        &[],
                    ));
                }
                Ok(Expr { kind: ExprKind::Call(name, args), span: full })
            }
            _ => match name.as_str() {
                "q" | "t" | "u" => Ok(Expr { kind: ExprKind::Var(name.chars().next().unwrap()), span }),
                _ => Ok(Expr { kind: ExprKind::Ident(name), span }),
            },
        }
    }
}

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        ExprKind::Binary(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

/// Canonical source text; `parse(&render(e)) == e`.
pub fn render(e: &Expr) -> String {
    let wrap = |inner: &Expr, min: u8| {
        let s = render(inner);
        if precedence(inner) < min {
            format!("({s})")
        } else {
            s
        }
    };
    match &e.kind {
        ExprKind::Int(n) => n.to_string(),
        ExprKind::Var(c) => c.to_string(),
        ExprKind::Ident(s) => s.clone(),
        ExprKind::Atom(k, parts) => {
            let p: Vec<String> = parts.iter().map(u32::to_string).collect();
            format!("{}[{}]", k.name(), p.join(","))
        }
        ExprKind::Neg(inner) => format!("-{}", wrap(inner, 3)),
        ExprKind::Pow(base, k) => format!("{}^{k}", wrap(base, 5)),
        ExprKind::Binary(op, a, b) => {
            let (sym, prec) = match op {
                BinOp::Add => ("+", 1),
                BinOp::Sub => ("-", 1),
                BinOp::Mul => ("*", 2),
                BinOp::Div => ("/", 2),
            };
            format!("{} {sym} {}", wrap(a, prec), wrap(b, prec + 1))
        }
        ExprKind::Call(name, args) => {
            let a: Vec<String> = args.iter().map(render).collect();
            format!("{name}({})", a.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(k: AtomKind, parts: &[u32]) -> Expr {
        Expr { kind: ExprKind::Atom(k, parts.to_vec()), span: Span::default() }
    }

    #[test]
    fn parses_calls() {
        let e = parse("scalar(nabla(s[2]), s[1,1])").unwrap();
        let inner = Expr { kind: ExprKind::Call("nabla".into(), vec![atom(AtomKind::S, &[2])]), span: Span::default() };
        assert_eq!(e.kind, ExprKind::Call("scalar".into(), vec![inner, atom(AtomKind::S, &[1, 1])]));
    }

    #[test]
    fn precedence_rules() {
        let e = parse("(q+t)*e[2]").unwrap();
        let ExprKind::Binary(BinOp::Mul, a, b) = &e.kind else { panic!("{e:?}") };
        assert!(matches!(a.kind, ExprKind::Binary(BinOp::Add, ..)));
        assert_eq!(**b, atom(AtomKind::E, &[2]));
        let e = parse("-q^2").unwrap();
        assert!(matches!(&e.kind, ExprKind::Neg(x) if matches!(x.kind, ExprKind::Pow(_, 2))));
        assert_eq!(render(&parse("a - (b - c)").unwrap()), "a - (b - c)");
        assert_eq!(render(&parse("(a - b) - c").unwrap()), "a - b - c");
    }

    #[test]
    fn errors() {
        let e = parse("s[2,3]").unwrap_err();
        assert!(e.message.contains("not weakly decreasing"), "{e}");
        let e = parse("nabbla(s[2])").unwrap_err();
        assert_eq!(e.suggestions, vec!["nabla"]);
        let e = parse("s[2] +\n  * e[1]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(!e.expected.is_empty());
        assert!(parse("nabla(s[1], s[2])").is_err());
    }
}

//! Text, JSON and LaTeX renderings of evaluation results and reports.

use nabla_kit::identities::{VerdictReport, Status};
use nabla_kit::ring::RF;
use nabla_kit::symfunc::{Basis, SymFunc};
use serde_json::{json, Value as Json};

use crate::eval::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
}

/// Wraps exponents in braces and drops explicit products: `q^10*t` becomes
/// `q^{10}t`.
fn poly_latex(text: &str) -> String {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => {}
            '^' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                out.push_str(&format!("^{{{digits}}}"));
            }
            _ => out.push(c),
        }
    }
    out
}

fn poly_text(p: &nabla_kit::ring::Poly, aux: &str) -> String {
    let mut out = String::new();
    p.write_text(&mut out, aux, false).expect("string write");
    out
}

pub fn rf_latex(c: &RF) -> String {
    let aux = c.aux().name();
    let num = poly_latex(&poly_text(c.numer(), aux));
    if c.denom().is_one() {
        return num;
    }
    format!("\\frac{{{num}}}{{{}}}", poly_latex(&poly_text(c.denom(), aux)))
}

fn index(parts: &[u32]) -> String {
    let sep = if parts.iter().any(|&p| p > 9) { "," } else { "" };
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

/// Schur atoms print as `S_{21}`, the others with their lowercase letter.
pub fn sym_latex(f: &SymFunc) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let letter = match f.basis() {
        Basis::S => "S".to_string(),
        b => b.letter().to_string(),
    };
    let mut out = String::new();
    for (i, (lambda, c)) in f.terms().iter().enumerate() {
        let label = (!lambda.is_empty()).then(|| format!("{letter}_{{{}}}", index(lambda.parts())));
        let coeff = rf_latex(c);
        let compound = c.numer().len() > 1 && c.denom().is_one();
        let (negative, body) = match (coeff.strip_prefix('-'), compound) {
            (Some(rest), false) => (true, rest.to_string()),
            _ => (false, coeff.clone()),
        };
        let piece = match label {
            None => body,
            Some(l) if body == "1" => l,
            Some(l) if compound => format!("\\left({body}\\right){l}"),
            Some(l) => format!("{body}\\,{l}"),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&piece);
    }
    out
}

pub fn value(v: &Value, format: OutputFormat) -> String {
    match (v, format) {
        (Value::Scalar(c), OutputFormat::Text) => c.to_compact_text(),
        (Value::Sym(f), OutputFormat::Text) => f.to_text(),
        (Value::Matrix(m), OutputFormat::Text) => m.to_text().trim_end().to_string(),
        (Value::Scalar(c), OutputFormat::Latex) => rf_latex(c),
        (Value::Sym(f), OutputFormat::Latex) => sym_latex(f),
        (Value::Matrix(m), OutputFormat::Latex) => m.to_latex().trim_end().to_string(),
        (v, OutputFormat::Json) => value_json(v).to_string(),
    }
}

pub fn value_json(v: &Value) -> Json {
    match v {
        Value::Scalar(c) => json!({"kind": "scalar", "text": c.to_compact_text(), "value": c.to_json()}),
        Value::Sym(f) => json!({"kind": "symfunc", "text": f.to_text(), "value": f.to_json()}),
        Value::Matrix(m) => json!({"kind": "matrix", "text": m.to_text().trim_end(), "value": m.to_json()}),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Finding => "finding",
    }
}

pub fn reports(rs: &[VerdictReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&rs).expect("serializable"),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in rs {
                out.push_str(&format!("{:<8} {:<8} {}  ({} ms)\n", r.id, status_word(r.status), r.range, r.ms));
                if let Some(w) = &r.witness {
                    out.push_str(&format!("    witness {}\n      lhs = {}\n      rhs = {}\n", w.input, w.lhs, w.rhs));
                }
                if !r.note.is_empty() {
                    out.push_str(&format!("    note: {}\n", r.note));
                }
                for v in &r.variants {
                    out.push_str(&format!("    variant '{}': {}", v.label, status_word(v.status)));
                    if let Some(w) = &v.witness {
                        out.push_str(&format!(" at {}", w.input));
                    }
                    out.push('\n');
                }
            }
            out.trim_end().to_string()
        }
        OutputFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{lll}\n\\hline\nidentity & range & status \\\\\n\\hline\n");
            for r in rs {
                let range = r.range.replace("<=", "\\le ").replace('|', "\\vert ");
                out.push_str(&format!("{} & ${range}$ & {} \\\\\n", r.id, status_word(r.status)));
            }
            out.push_str("\\hline\n\\end{tabular}");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nabla_kit::ring::Poly;
    use nabla_kit::symfunc::atom;

    #[test]
    fn latex_forms() {
        let c = RF::from_poly(Poly::parse("q^10*t + q", "x").unwrap());
        assert_eq!(rf_latex(&c), "q^{10}t+q");
        let f = atom(Basis::S, &[2]).add(&atom(Basis::S, &[1, 1]).scale(&c)).sub(&atom(Basis::S, &[3]));
        assert_eq!(sym_latex(&f), "S_{2} + \\left(q^{10}t+q\\right)S_{11} - S_{3}");
        assert_eq!(sym_latex(&atom(Basis::E, &[2]).scale(&RF::q())), "q\\,e_{2}");
    }
}

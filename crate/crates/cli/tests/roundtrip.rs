use nabla_kit_cli::expr::{parse, render, AtomKind, BinOp, Expr, ExprKind, Span, FUNCTIONS};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn node(kind: ExprKind) -> Expr {
    Expr { kind, span: Span::default() }
}

fn partition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..12, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn leaf() -> impl Strategy<Value = Expr> {
    let kinds = [AtomKind::S, AtomKind::E, AtomKind::H, AtomKind::P, AtomKind::M, AtomKind::Macdonald];
    prop_oneof![
        (0u64..1_000_000).prop_map(|n| node(ExprKind::Int(BigInt::from(n)))),
        prop::sample::select(vec!['q', 't', 'u']).prop_map(|c| node(ExprKind::Var(c))),
        (prop::sample::select(kinds.to_vec()), partition()).prop_map(|(k, p)| node(ExprKind::Atom(k, p))),
        prop::sample::select(vec!["s", "e", "h", "p", "m"]).prop_map(|s| node(ExprKind::Ident(s.into()))),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 3, |inner| {
        let ops = vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div];
        prop_oneof![
            inner.clone().prop_map(|e| node(ExprKind::Neg(Box::new(e)))),
            (inner.clone(), -4i64..9).prop_map(|(e, k)| node(ExprKind::Pow(Box::new(e), k))),
            (prop::sample::select(ops), inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| node(ExprKind::Binary(op, Box::new(a), Box::new(b)))),
            (prop::sample::select(FUNCTIONS.to_vec()), prop::collection::vec(inner, 2)).prop_map(|((name, arities), mut args)| {
                args.truncate(arities[0]);
                node(ExprKind::Call(name.into(), args))
            }),
        ]
    })
}

#[test]
fn parse_inverts_render() {
    let config = Config { cases: 2000, ..Config::default() };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner
        .run(&expr(), |e| {
            let text = render(&e);
            let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
            prop_assert_eq!(&back, &e, "{}", text);
            prop_assert_eq!(render(&back), text);
            Ok(())
        })
        .unwrap();
}

#[test]
fn rendering_is_a_fixed_point_on_sources() {
    for src in ["-q^2*s[2,1]", "(q + t)*e[2] - -h[1]", "psi(e[3], 4)/(1 - q)^-2", "expand(nabla(H[2,1]), s)"] {
        let once = render(&parse(src).unwrap());
        assert_eq!(render(&parse(&once).unwrap()), once, "{src}");
    }
}

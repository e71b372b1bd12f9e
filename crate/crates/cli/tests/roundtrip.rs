//! Printing a parsed expression and parsing it again gives the same tree.

use proptest::prelude::*;
use qcalc_cli::{parse, BinOp, Expr, Symbol};

const CORPUS: &[&str] = &[
    "D*theta - q*theta*D",
    "D*theta \u{2212} q*theta*D",
    "[D, be(theta,2)]",
    "qfact(6)/(qfact(3)^2)",
    "qnum(-1)",
    "-(theta + eps)^3",
    "--theta",
    "1 - (2 - q)",
    "2/3*theta/qnum(2)",
    "qexp(1, 7)",
    "qexp(q/2, 4)*be(eps, 3)",
    "[[D, theta], [D, eps]]",
    "z*zeps + dtheta*dz - D^3",
    "(q^2)^3",
    "(-1)^4",
];

#[test]
fn corpus_round_trips() {
    for text in CORPUS {
        let e = parse(text).unwrap();
        let printed = e.to_string();
        assert_eq!(parse(&printed).unwrap(), e, "{text} printed as {printed}");
        // printing is idempotent
        assert_eq!(parse(&printed).unwrap().to_string(), printed);
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..50).prop_map(|n| Expr::Int(n.into())),
        Just(Expr::Q),
        prop::sample::select(Symbol::ALL.to_vec()).prop_map(Expr::Sym),
        (-3i64..8).prop_map(Expr::QNum),
        (0i64..6).prop_map(Expr::QFact),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let ops = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
    leaf().prop_recursive(4, 32, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (ops.clone(), inner.clone(), inner.clone()).prop_map(|(op, a, b)| Expr::bin(op, a, b)),
            (inner.clone(), 0u32..5).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Bracket(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..5).prop_map(|(e, k)| Expr::Be(Box::new(e), k)),
            (inner.clone(), 0u32..5).prop_map(|(e, k)| Expr::QExp(Box::new(e), k)),
        ]
    })
}

proptest! {
    #[test]
    fn random_trees_round_trip(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e);
    }
}

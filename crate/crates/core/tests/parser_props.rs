use arithfn::catalogue::Named;
use arithfn::cli::parse::{parse_expr, Expr, ExprKind, UnaryOp};
use arithfn::numerics::rational;
use proptest::prelude::*;

fn named() -> impl Strategy<Value = Named> {
    prop_oneof![
        (0..Named::SIMPLE.len()).prop_map(|i| Named::SIMPLE[i].1.clone()),
        (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Named::Sigma(rational(p, q).unwrap())),
    ]
}

fn unary() -> impl Strategy<Value = UnaryOp> {
    prop_oneof![
        Just(UnaryOp::Inv),
        Just(UnaryOp::Log),
        Just(UnaryOp::Exp),
        Just(UnaryOp::Psi),
        Just(UnaryOp::PsiInv),
        Just(UnaryOp::Deriv),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        4 => named().prop_map(|n| Expr::new(ExprKind::Named(n))),
        1 => "[a-z0-9_./ \"\\\\]{0,12}".prop_map(|p| Expr::new(ExprKind::File(p))),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::new(ExprKind::Add(b(x), b(y)))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::new(ExprKind::Mul(b(x), b(y)))),
            (-9i64..=9, 1i64..=6, inner.clone()).prop_map(move |(p, q, x)| {
                Expr::new(ExprKind::Scalar(rational(p, q).unwrap(), b(x)))
            }),
            (unary(), inner.clone()).prop_map(move |(op, x)| Expr::new(ExprKind::Unary(op, b(x)))),
            (inner, 0u32..5).prop_map(move |(x, k)| Expr::new(ExprKind::Pow(b(x), k))),
        ]
    })
}

proptest! {
    #[test]
    fn pretty_print_reparses_to_same_tree(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).map_err(|err| TestCaseError::fail(err.render(&text)))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn spans_lie_within_source(e in expr()) {
        let text = e.to_string();
        let parsed = parse_expr(&text).unwrap();
        let mut ok = true;
        parsed.walk(&mut |node| ok &= node.span.start < node.span.end && node.span.end <= text.len());
        prop_assert!(ok);
    }

    #[test]
    fn parser_never_panics(text in "[a-zA-Z0-9_()*+.,/\" -]{0,30}") {
        if let Err(e) = parse_expr(&text) {
            prop_assert!(e.offset <= text.len());
        }
    }
}

use heckedim::rational::q;
use heckedim::{Basis, Params};
use heckedim_cli::doc::{elem_to_expr_text, parse_matrix, Atom, Expr, MatrixDocument};
use proptest::prelude::*;

fn leaf(basis: Basis) -> BoxedStrategy<Expr> {
    let atoms = match basis {
        Basis::Group => vec![Atom::E, Atom::S, Atom::T],
        Basis::Tau => vec![Atom::E, Atom::S, Atom::T, Atom::Ts, Atom::Tt],
    };
    prop_oneof![
        (0i64..=9, 1i64..=4).prop_map(|(n, d)| Expr::Rat(q(n, d))),
        proptest::sample::select(atoms).prop_map(Expr::Atom),
    ]
    .boxed()
}

fn expr(basis: Basis) -> impl Strategy<Value = Expr> {
    leaf(basis).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, -2i64..=3)
                .prop_filter("rational bases are not powers", |(a, _)| !matches!(a, Expr::Rat(_)))
                .prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

fn document() -> impl Strategy<Value = MatrixDocument> {
    (prop_oneof![Just(Basis::Group), Just(Basis::Tau)], 1usize..=3, 1usize..=3).prop_flat_map(|(basis, r, c)| {
        proptest::collection::vec(proptest::collection::vec(expr(basis), c), r)
            .prop_map(move |entries| MatrixDocument { basis, rows: r, cols: c, entries })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(d in document()) {
        let text = d.to_string();
        let back = parse_matrix(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_insignificant(d in document()) {
        let text = d.to_string();
        let squeezed: String = text.replace(", ", ",").replace(" + ", "+").replace(" - ", "-");
        let spread = text.replace('*', " * ").replace('[', "\n[\n");
        prop_assert_eq!(parse_matrix(&squeezed).unwrap(), d.clone());
        prop_assert_eq!(parse_matrix(&spread).unwrap(), d);
    }

    #[test]
    fn element_text_reparses(d in document()) {
        // evaluating, printing the value and reparsing gives the same value
        let p = Params::from_ratios((1, 2), (1, 3));
        if let Ok(m) = d.to_matrix(&p) {
            for row in m.to_rows() {
                for x in row {
                    let header = if d.basis == Basis::Group { "group" } else { "tau" };
                    let text = format!("basis {header} size 1x1 [ {} ]", elem_to_expr_text(&x));
                    let again = parse_matrix(&text).unwrap().to_matrix(&p).unwrap();
                    prop_assert_eq!(again.get(0, 0), &x);
                }
            }
        }
    }
}

use algebroid::{BasePatch, Rational};
use algebroid_dsl::ast::{Expr, ExprKind};
use algebroid_dsl::model::{eval, resolve};
use algebroid_dsl::{parse, parse_expr, run, Command, Pos};
use algebroid::SampleConfig;
use proptest::prelude::*;

const FIXTURES: [&str; 4] = [
    include_str!("../fixtures/contact.alg"),
    include_str!("../fixtures/poisson_plane.alg"),
    include_str!("../fixtures/lie_algebras.alg"),
    include_str!("../fixtures/corrupted.alg"),
];

fn node(kind: ExprKind) -> Expr {
    Expr::new(kind, Pos::new(0, 0))
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-9i64..10, 1i64..5).prop_map(|(n, d)| node(ExprKind::Num(Rational::new(n.into(), d.into())))),
        prop_oneof![Just("x"), Just("y")].prop_map(|v| node(ExprKind::Var(v.into()))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| node(ExprKind::Neg(Box::new(a)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(ExprKind::Add(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(ExprKind::Sub(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(ExprKind::Mul(Box::new(a), Box::new(b)))),
            (inner, 0u32..4).prop_map(|(a, e)| node(ExprKind::Pow(Box::new(a), e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rendering_preserves_value_and_is_stable(e in arb_expr()) {
        let base = BasePatch::new(["x", "y"]).unwrap();
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(eval(&back, &base).unwrap(), eval(&e, &base).unwrap(), "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn fixtures_are_fixed_points_of_render_and_parse() {
    for src in FIXTURES {
        let file = parse(src).unwrap();
        let text = file.to_string();
        assert_eq!(parse(&text).unwrap(), file);
        assert_eq!(parse(&text).unwrap().to_string(), text);
    }
}

#[test]
fn emitted_files_parse_resolve_and_rerender() {
    let config = SampleConfig::default();
    let cases = [
        (FIXTURES[0], Command::Jacobi("contact".into())),
        (FIXTURES[0], Command::Dualize("contact".into())),
        (FIXTURES[0], Command::Induce("contact".into())),
        (FIXTURES[0], Command::Morphism("contact".into())),
        (FIXTURES[1], Command::Dualize("plane".into())),
        (
            FIXTURES[1],
            Command::Triangular { algebroid: "T".into(), cocycle: "zero".into(), bivector: "pi".into() },
        ),
    ];
    for (src, cmd) in cases {
        let out = run(&cmd, src, &config);
        assert_eq!(out.exit_code, 0, "{}", cmd.label());
        let emitted = out.report.output.expect("emitted text");
        // induce and morphism emit fragments that rely on declarations of the input
        let file = parse(&emitted).unwrap();
        assert_eq!(file.to_string(), emitted, "{}", cmd.label());
        if emitted.starts_with("manifold") {
            resolve(&file).unwrap();
        }
    }
}

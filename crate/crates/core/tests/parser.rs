#![allow(clippy::excessive_precision)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sphinv_core::{parse_const, parse_equation, ConstExpr, Factor, NamedConst, ParseErrorKind, RawEquation, Term};

fn factor() -> impl Strategy<Value = Factor> {
    prop::sample::select(vec![
        Factor::One,
        Factor::Cos,
        Factor::Sin,
        Factor::Cosh,
        Factor::Sinh,
        Factor::ExpNeg,
    ])
}

fn rational_coef() -> impl Strategy<Value = ConstExpr> {
    ((-99i64..=99).prop_filter("nonzero", |p| *p != 0), 1i64..=12)
        .prop_map(|(p, q)| ConstExpr::rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
}

fn coef() -> impl Strategy<Value = ConstExpr> {
    prop_oneof![
        4 => rational_coef(),
        1 => rational_coef().prop_map(|c| c.mul(ConstExpr::constant(NamedConst::Pi)).unwrap()),
        1 => rational_coef().prop_map(|c| c.div(ConstExpr::constant(NamedConst::Pi)).unwrap()),
    ]
}

/// Terms with distinct `(factor, power)`, in the parser's order, and no
/// bare constant on the left; at least one factor term.
fn raw_equation() -> impl Strategy<Value = RawEquation> {
    (
        prop::collection::btree_map((factor(), -4i64..=4), coef(), 1..6),
        rational_coef(),
        any::<bool>(),
    )
        .prop_filter_map("left side needs a variable term", |(terms, rhs, scaled)| {
            let terms: Vec<Term> = terms
                .into_iter()
                .filter(|((f, p), _)| !(*f == Factor::One && *p == 0))
                .map(|((f, p), c)| Term::new(c, p, f))
                .collect();
            if terms.iter().all(|t| t.factor == Factor::One) {
                return None;
            }
            let mut eq = RawEquation::new(terms, rhs);
            if scaled {
                eq.scale = ConstExpr::constant(NamedConst::Pi)
                    .div(ConstExpr::integer(180))
                    .unwrap();
            }
            Some(eq)
        })
}

#[test]
fn equivalent_spellings() {
    let base = parse_equation("2*x*cos(x) + 3*sin(x)/x^2 = 1/2").unwrap();
    for text in [
        "2x cos(x) + 3 sin(x)/x^2 = 1/2",
        "  2 * x * cos ( x )+3*sin(x) / x ^ 2=0.5",
        "2x·cos(x) + 3×sin(x)/x^2 = 0.5",
        "x cos(x) + 3 sin(x)/x^2 + x cos(x) = 1/2",
        "2x cos(x) = 1/2 - 3 sin(x) x^-2",
    ] {
        assert_eq!(parse_equation(text).unwrap(), base, "{}", text);
    }
    assert_eq!(parse_const("π").unwrap(), parse_const("pi").unwrap());
    assert_eq!(parse_const("−1/2").unwrap(), parse_const("-0.5").unwrap());
}

#[test]
fn error_offsets() {
    let cases = [
        ("co s(x) = 1", 2, ParseErrorKind::Syntax),
        ("cos(x) = sec(x)", 9, ParseErrorKind::UnsupportedFunction),
        ("cos(x) + ", 9, ParseErrorKind::Syntax),
        ("cos(x)) = x", 6, ParseErrorKind::Syntax),
        ("cos(x^2) = 1", 4, ParseErrorKind::NotTransformable),
    ];
    for (text, offset, kind) in cases {
        let e = parse_equation(text).unwrap_err();
        assert_eq!((e.offset, e.kind), (offset, kind), "{}: {}", text, e);
        let caret = e.caret(text);
        assert!(caret.lines().nth(1).unwrap().ends_with('^'), "{}", caret);
    }
}

#[test]
fn exponential_hint() {
    let e = parse_equation("exp(x) = x").unwrap_err();
    assert!(e.hint.as_deref().unwrap_or("").contains("x = -s"), "{:?}", e);
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(eq in raw_equation()) {
        let text = eq.to_string();
        let back = parse_equation(&text).map_err(|e| TestCaseError::fail(format!("{}: {}", text, e)))?;
        prop_assert_eq!(back, eq, "{}", text);
    }

    #[test]
    fn extra_whitespace_is_ignored(eq in raw_equation(), seed in any::<u64>()) {
        let text = eq.to_string();
        let mut spaced = String::new();
        let mut bits = seed;
        for c in text.chars() {
            let around = matches!(c, '+' | '-' | '*' | '/' | '(' | ')' | '=' | '^');
            if around && bits & 1 == 1 {
                spaced.push(' ');
            }
            spaced.push(c);
            if around && bits & 2 == 2 {
                spaced.push(' ');
            }
            bits = bits.rotate_right(2);
        }
        prop_assert_eq!(parse_equation(&spaced).unwrap(), parse_equation(&text).unwrap());
    }

    #[test]
    fn errors_point_into_the_input(text in "[ x0-9a-z()+*/^=.-]{0,24}") {
        if let Err(e) = parse_equation(&text) {
            prop_assert!(e.offset <= text.len());
            prop_assert!(text.is_char_boundary(e.offset));
        }
    }
}

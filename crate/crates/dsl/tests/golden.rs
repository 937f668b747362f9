mod common;

use algebroid_dsl::parse;
use common::{front_end, golden_cases};

#[test]
fn golden_front_end_outputs() {
    let cases = golden_cases();
    let errors = cases.iter().filter(|c| c.is_error_case()).count();
    assert!(errors >= 10, "only {errors} error cases");
    assert!(cases.iter().any(|c| !c.is_error_case()));
    for c in &cases {
        assert!(
            c.matches(),
            "{}: expected\n{}\nfound\n{}",
            c.name,
            c.expected.as_deref().unwrap_or("<missing golden file>"),
            c.actual
        );
    }
}

#[test]
fn error_cases_carry_positions() {
    for c in golden_cases().iter().filter(|c| c.is_error_case()) {
        let (line, rest) = c.actual.split_once(':').expect("line prefix");
        let (col, _) = rest.split_once(':').expect("column prefix");
        assert!(line.parse::<u32>().unwrap() >= 1, "{}", c.name);
        assert!(col.parse::<u32>().unwrap() >= 1, "{}", c.name);
    }
}

#[test]
fn canonical_form_is_a_fixed_point() {
    for c in golden_cases().iter().filter(|c| !c.is_error_case()) {
        assert_eq!(front_end(&c.actual), c.actual, "{}", c.name);
        let original = parse(&std::fs::read_to_string(common::golden_dir().join(format!("{}.alg", c.name))).unwrap()).unwrap();
        assert_eq!(parse(&c.actual).unwrap(), original, "{}", c.name);
    }
}

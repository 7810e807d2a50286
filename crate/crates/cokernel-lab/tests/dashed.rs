use hlg_cokernel_lab::dashed::{dashed_element, ColoringSet, DashedTemplate, HVector};
use hlg_core::graph::parse_graph_vector;
use hlg_core::linalg::Rational;
use hlg_core::tensor::{a, b};

const TWO_LINES: &str = "T(T(T(T(T(T(d:1H, x:1v), x:2v), d:2T), d:2H), x:2w), x:1w, d:1T)";

fn caterpillar(h1: &str, h2: &str, h5: &str, h6: &str) -> String {
    format!("T(T(T(T(T(T(d:1H, h:{h6}), h:{h5}), d:2T), d:2H), h:{h2}), h:{h1}, d:1T)")
}

fn letter(s: &str) -> HVector {
    s.parse().unwrap()
}

#[test]
fn worked_example_has_four_terms() {
    let mut s = ColoringSet::new(Vec::new());
    s.push_with_reverse(letter("a1"), letter("b1"));
    s.pairs.push((letter("a2"), letter("a3")));
    let x = dashed_element(&DashedTemplate::parse(TWO_LINES, 3).unwrap(), &s).unwrap();
    let expected = [
        format!("1 {}", caterpillar("b1", "a3", "a2", "a1")),
        format!("-1 {}", caterpillar("a1", "a3", "a2", "b1")),
        format!("1 {}", caterpillar("a3", "b1", "a1", "a2")),
        format!("-1 {}", caterpillar("a3", "a1", "b1", "a2")),
    ]
    .join("\n");
    assert_eq!(x, parse_graph_vector(&expected, 3).unwrap());
}

#[test]
fn empty_set_gives_zero() {
    let t = DashedTemplate::parse(TWO_LINES, 3).unwrap();
    assert!(dashed_element(&t, &ColoringSet::new(Vec::new())).unwrap().is_zero());
}

#[test]
fn dependent_pairs_give_zero() {
    let mut s = ColoringSet::new(Vec::new());
    s.push_with_reverse(letter("a1"), letter("b1"));
    let t = DashedTemplate::parse(TWO_LINES, 3).unwrap();
    assert!(dashed_element(&t, &s).unwrap().is_zero());
}

#[test]
fn reversing_a_line_flips_the_sign() {
    let s = ColoringSet::hyperbolic(1..=3);
    assert!(s.is_reversal_closed());
    let forward = DashedTemplate::parse(TWO_LINES, 3).unwrap();
    let backward = DashedTemplate::parse(&TWO_LINES.replace("x:1v", "x:1#").replace("x:1w", "x:1v").replace("x:1#", "x:1w"), 3).unwrap();
    let x = dashed_element(&forward, &s).unwrap();
    let y = dashed_element(&backward, &s).unwrap();
    assert!(!x.is_zero());
    assert_eq!(x, y.scaled(&Rational::from_int(-1)));
}

#[test]
fn malformed_templates_are_rejected() {
    for text in ["T(x:1v, h:a1, h:a2)", "T(x:1v, x:1v, x:1w)", "T(x:2v, x:2w, h:a1)", "T(x:1q, h:a1, h:a2)"] {
        assert!(DashedTemplate::parse(text, 2).is_err(), "{text}");
    }
    assert!(DashedTemplate::parse("T(x:1v, x:1w, h:a3)", 2).is_err());
}

#[test]
fn coloring_set_display() {
    let s = ColoringSet::hyperbolic([2]);
    assert_eq!(s.to_string(), "{(a2,b2),(-b2,a2)}");
    assert_eq!(HVector::letter(a(1)).neg().neg(), HVector::letter(a(1)));
    assert_ne!(HVector::letter(a(1)), HVector::letter(b(1)));
}

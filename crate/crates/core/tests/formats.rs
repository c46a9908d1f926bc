use cmlink_core::io::{ideal_to_text, parse_ideal, parse_matrices, parse_matrix};
use cmlink_core::{free_resolution, parse_poly, Ring};
use proptest::prelude::*;

const CURVE: &str = "# twisted-cubic-like curve\nring x,y,z over QQ\n\ny^2 - x*z\nx^3 - y*z\nx^2*y - z^2\n";

#[test]
fn ideal_text_round_trips() {
    let j = parse_ideal(CURVE).unwrap();
    assert_eq!(j.gens().len(), 3);
    let again = parse_ideal(&ideal_to_text(&j)).unwrap();
    assert_eq!(again.gens(), j.gens());
    assert_eq!(again.ring(), j.ring());
}

#[test]
fn parameter_rings_parse() {
    let j = parse_ideal("ring x,y over QQ(s,t)\nx^2 - s*y\ny/(s + t) - t^2\n").unwrap();
    assert_eq!(j.ring().params(), ["s", "t"]);
    let again = parse_ideal(&ideal_to_text(&j)).unwrap();
    assert_eq!(again.gens(), j.gens());
}

#[test]
fn errors_carry_positions() {
    let e = parse_ideal("ring x,y over QQ\nx + y\nx ** y\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 4));
    assert!(parse_ideal("ring x over QQ\nw\n").is_err());
    assert!(parse_ideal("ring x over QQ\nx/x\n").is_err());
    assert!(parse_ideal("x + 1\n").is_err());
}

#[test]
fn matrices_round_trip_through_resolutions() {
    let j = parse_ideal(CURVE).unwrap();
    let res = free_resolution(&j, true).unwrap();
    let text: String = res.complex().diffs().iter().map(|d| d.to_text()).collect();
    let (ring, ms) = parse_matrices(&text, Some(j.ring())).unwrap();
    assert_eq!(&ring, j.ring());
    let back: Vec<_> = ms.into_iter().map(|m| m.matrix).collect();
    assert_eq!(back, res.complex().diffs());

    let one = parse_matrix("ring x,y over QQ\nmatrix 2 2 A\nx; 0\n0; y\n", None).unwrap();
    assert_eq!(one.det().unwrap().to_string(), "x*y");
    assert!(parse_matrix("ring x over QQ\nmatrix 2 1\nx\n", None).is_err());
}

proptest! {
    #[test]
    fn printed_polynomials_reparse(terms in prop::collection::vec((0u32..4, 0u32..4, -9i64..=9, 1i64..=4), 0..6)) {
        let r = Ring::rational(&["x", "y"]);
        let text = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.iter().map(|(a, b, n, d)| format!("({n}/{d})*x^{a}*y^{b}")).collect::<Vec<_>>().join(" + ")
        };
        let f = parse_poly(&text, &r).unwrap();
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }
}

use super::*;
use crate::parse::parse_poly;
use proptest::prelude::*;

fn p(s: &str, r: &RingRef) -> Poly {
    parse_poly(s, r).unwrap()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn paper_pair() -> (Poly, Poly) {
    let r = Ring::rational(&["x", "y", "z"]);
    (p("z^2 - x^2*y", &r), p("x^4 - 2*x*y*z + y^3", &r))
}

fn paper_change() -> LinearChange {
    // x = X, y = Y, z = X + Z
    LinearChange::from_ints(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]).unwrap()
}

#[test]
fn weierstrass_forms() {
    let r = Ring::rational(&["x"]);
    let w = weierstrass_ready(&p("3*x^2", &r), 0).unwrap();
    assert_eq!((w.degree, w.unit.clone()), (2, Coeff::int(3)));
    assert_eq!(w.p.to_string(), "x^2");

    let r = Ring::rational(&["x", "y"]);
    assert!(matches!(weierstrass_ready(&p("x*y", &r), 0), Err(WeierError::NotRegular { .. })));
    assert!(matches!(weierstrass_ready(&p("x^2 + 1", &r), 0), Err(WeierError::NotAtOrigin { .. })));
    // y^2 is monic in y but its x-free part x vanishes, y + 1 does not
    assert!(matches!(weierstrass_ready(&p("y^2 + y + x", &r), 1), Err(WeierError::NotWeierstrass { power: 1, .. })));
}

#[test]
fn paper_first_weierstrass_polynomial() {
    let r = Ring::rational(&["X", "Y", "Z"]);
    let f1 = p("(1 - Y)*X^2 + 2*X*Z + Z^2", &r);
    let w = weierstrass_ready(&f1, 0).unwrap();
    assert_eq!(w.degree, 2);
    assert_eq!(w.ring.to_string(), "ring X,Z over QQ(Y)");
    assert_eq!(w.p, p("X^2 + 2*X*Z/(1-Y) + Z^2/(1-Y)", &w.ring));
    assert_eq!(w.unit_poly(), p("1 - Y", &w.ring));
}

#[test]
fn euclid_examples() {
    let r = Ring::rational(&["x"]);
    let e = extended_euclid(&p("x^2 - 1", &r), &p("x - 1", &r), 0).unwrap();
    assert_eq!(e.gcd.to_string(), "x - 1");
    assert!(e.a.is_zero());
    assert_eq!(e.b.to_string(), "1");
    assert!(e.resultant.is_zero());

    let r = Ring::rational(&["x", "s", "t"]);
    let (f, g) = (p("x - s", &r), p("x - t", &r));
    let e = extended_euclid(&f, &g, 0).unwrap();
    assert_eq!(e.ring.to_string(), "ring x over QQ(s,t)");
    assert_eq!(e.gcd, p("t - s", &e.ring));
    let lhs = &(&e.a * &f.promote(&[1, 2])) + &(&e.b * &g.promote(&[1, 2]));
    assert_eq!(lhs.to_string(), e.gcd.to_string());
    assert_eq!(Poly::constant(&e.ring, e.resultant.clone()), p("s - t", &e.ring));

    assert_eq!(extended_euclid(&f, &Poly::zero(&r), 0).unwrap_err(), WeierError::ZeroInput);
    assert_eq!(extended_euclid(&f, &g, 5).unwrap_err(), WeierError::BadVariable(5));
}

#[test]
fn sylvester_examples() {
    let r = Ring::rational(&["x", "s", "t"]);
    assert_eq!(resultant_sylvester(&p("x - s", &r), &p("x - t", &r), 0).unwrap(), p("s - t", &r));
    assert!(resultant_sylvester(&p("x^2 - 1", &r), &p("x - 1", &r), 0).unwrap().is_zero());
    let r = Ring::rational(&["x", "y"]);
    assert_eq!(resultant_sylvester(&p("x^2", &r), &p("x + y^3", &r), 0).unwrap(), p("y^6", &r));
    assert!(matches!(resultant_sylvester(&p("y", &r), &p("x", &r), 0), Err(WeierError::DegreeZero(_))));
}

#[test]
fn constants_follow_their_definition() {
    // C1 = (-1)^{N1 γ} (N1 γ)!, C2 = -(-1)^{N2} C1 / N2!
    assert_eq!(recipe_constants(1, 1, 2), (int(2), int(2)));
    assert_eq!(recipe_constants(1, 2, 3), (int(-6), int(3)));
    let (c1, c2) = recipe_constants(2, 8, 9);
    assert_eq!(c1, int(6402373705728000));
    assert_eq!(c2, -&c1 / int(40320));
}

#[test]
fn paper_recipe() {
    let (f1, f2) = paper_pair();
    let rec = current_recipe(&f1, &f2, &RecipeOptions { seed: 0, change: Some(paper_change()) }).unwrap();
    let r = &rec.ring;
    assert_eq!(rec.f1, p("(1 - Y)*X^2 + 2*X*Z + Z^2", r));
    assert_eq!(rec.f2, p("X^4 - 2*X^2*Y - 2*X*Y*Z + Y^3", r));
    assert_eq!((rec.n1(), rec.n2()), (2, 8));
    assert_eq!(rec.w2.var_name(), "Z");
    assert_eq!(rec.gamma, 9);
    assert!(rec.bezout_holds());

    // r2 against the paper's expression, in Z over QQ(Y)
    let r2 = rec.r2.promote(&[0]);
    let g = "(1 - Y)";
    let big_f = format!("4/{g}^2*(1 - 2/{g})*Z^3 + 2*Y*(2/{g} - 1)*Z");
    let big_g = format!("1/{g}^2*(1 - 4/{g})*Z^4 + 2*Y/{g}*Z^2 + Y^3");
    let paper_r2 = p(&format!("Z^2*({big_f})^2/{g} - 2*Z*({big_f})*({big_g})/{g} + ({big_g})^2"), r2.ring());
    let u = equal_up_to_unit(&r2, &paper_r2).expect("same up to a unit");
    assert_eq!(Poly::constant(r2.ring(), u.clone()), p("(Y - 1)^6", r2.ring()));

    // b against the paper's b, read in the new coordinates, same unit
    assert_eq!(rec.bezout_ring.to_string(), "ring X,Y,Z over QQ");
    let b = rec.b.promote(&[1]);
    let paper_b = p(&format!("-(X + 2*Z/{g})*({big_f}) + {big_g}"), b.ring());
    assert_eq!(equal_up_to_unit(&b, &paper_b), Some(u));
}

#[test]
fn recipe_search_finds_the_shear() {
    let (f1, f2) = paper_pair();
    let rec = current_recipe(&f1, &f2, &RecipeOptions::default()).unwrap();
    // the identity fails (z^2 - x^2 y is not regular in x), the shear is the paper's change
    assert_eq!(rec.attempts, 2);
    assert_eq!(rec.change.matrix(), paper_change().matrix());
    let again = current_recipe(&f1, &f2, &RecipeOptions::default()).unwrap();
    assert_eq!(serde_json::to_string(&again.to_report()).unwrap(), serde_json::to_string(&rec.to_report()).unwrap());
}

#[test]
fn recipe_small_cases() {
    let r = Ring::rational(&["x", "y"]);
    let rec = current_recipe(&p("x", &r), &p("y", &r), &RecipeOptions::default()).unwrap();
    assert_eq!((rec.n1(), rec.n2()), (1, 1));
    assert_eq!(rec.r2.to_string(), "Y");
    assert!(rec.a.is_zero());
    assert_eq!(rec.b.to_string(), "1");
    assert_eq!((rec.c1.clone(), rec.c2.clone()), (int(2), int(2)));

    let rec = current_recipe(&p("x^2", &r), &p("y^3", &r), &RecipeOptions::default()).unwrap();
    assert_eq!((rec.n1(), rec.n2()), (2, 3));
    assert_eq!(rec.r2.to_string(), "Y^3");
    // Sylvester gives y^6, Euclid stops at y^3
    assert_eq!(rec.resultant_unit, Coeff::from_qpoly(QPoly::var(0).pow(3)));
    assert!(rec.bezout_holds());

    assert_eq!(
        current_recipe(&p("x", &r), &p("x*y", &r), &RecipeOptions::default()).unwrap_err(),
        WeierError::NotCodimTwo(1)
    );
    let one = Ring::rational(&["x"]);
    assert_eq!(
        current_recipe(&p("x", &one), &p("x", &one), &RecipeOptions::default()).unwrap_err(),
        WeierError::UnsupportedRing
    );
}

#[test]
fn report_serializes_in_field_order() {
    let r = Ring::rational(&["x", "y"]);
    let rec = current_recipe(&p("x", &r), &p("y", &r), &RecipeOptions::default()).unwrap();
    let json = serde_json::to_string(&rec.to_report()).unwrap();
    assert!(json.starts_with("{\"ring\":\"ring X,Y over QQ\",\"change\":"), "{json}");
    assert!(json.contains("\"bezout_verified\":true"));
}

fn uni_strategy() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..=3, 0u32..=2, -3i64..=3), 1..5)
}

fn build(r: &RingRef, t: &[(u32, u32, i64)]) -> Poly {
    Poly::from_terms(r, t.iter().map(|&(a, b, c)| (Monomial::from_exps(vec![a, b]), Coeff::int(c))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn euclid_resultant_matches_sylvester(f in uni_strategy(), g in uni_strategy()) {
        let r = Ring::rational(&["x", "s"]);
        let (f, g) = (build(&r, &f), build(&r, &g));
        prop_assume!(f.degree_in(0) > 0 && g.degree_in(0) > 0);
        let e = extended_euclid(&f, &g, 0).unwrap();
        let syl = resultant_sylvester(&f, &g, 0).unwrap().promote(&[1]);
        prop_assert_eq!(Poly::constant(syl.ring(), e.resultant.clone()), syl);
        prop_assert_eq!(e.resultant.is_zero(), e.gcd.degree_in(0) > 0);
        let lhs = &(&e.a * &f.promote(&[1])) + &(&e.b * &g.promote(&[1]));
        prop_assert_eq!(lhs.to_string(), e.gcd.to_string());
    }
}

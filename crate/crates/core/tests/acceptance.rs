//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any of them fails.

use std::time::Instant;

use cmlink_core::complexes::ChainComplex;
use cmlink_core::linkage::{verify_squares, LinkData};
use cmlink_core::modules::lift_through;
use cmlink_core::weier::{equal_up_to_unit, RecipeOptions};
use cmlink_core::*;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn p(s: &str, r: &RingRef) -> Poly {
    parse_poly(s, r).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(g, r)).collect()).unwrap()
}

fn mat(r: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(r, rows.iter().map(|row| row.iter().map(|s| p(s, r)).collect()).collect()).unwrap()
}

fn xyz() -> RingRef {
    Ring::rational(&["x", "y", "z"])
}

fn curve(r: &RingRef) -> Ideal {
    ideal(r, &["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"])
}

fn curve_ci(r: &RingRef) -> Ideal {
    ideal(r, &["z^2 - x^2*y", "x^4 + y^3 - 2*x*y*z"])
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// All monomials of total degree at most `d`.
fn monomials(r: &RingRef, d: u32) -> Vec<Poly> {
    fn rec(n: usize, d: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        let used: u32 = acc.iter().sum();
        for e in 0..=d - used {
            acc.push(e);
            rec(n, d, acc, out);
            acc.pop();
        }
    }
    let mut exps = Vec::new();
    rec(r.nvars(), d, &mut Vec::new(), &mut exps);
    exps.into_iter().map(|e| Poly::term(r, Monomial::from_exps(e), Coeff::one())).collect()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let total = rng.gen_range(0..=d);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exps(e)
}

/// Nonzero, with up to `max_terms` terms of degree at most `d`.
fn random_poly(rng: &mut ChaCha8Rng, r: &RingRef, d: u32, max_terms: usize) -> Poly {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let f = Poly::from_terms(
            r,
            (0..k).map(|_| (random_monomial(rng, r.nvars(), d), Coeff::int(rng.gen_range(-5..=5)))).collect::<Vec<_>>(),
        );
        if !f.is_zero() {
            break f;
        }
    }
}

fn criterion_1() -> Outcome {
    let r = xyz();
    let j = curve(&r);
    let res = free_resolution(&j, true).map_err(|e| e.to_string())?;
    ensure(res.ranks() == [1, 3, 2], format!("ranks {:?}", res.ranks()))?;
    ensure(res.length() == 2, format!("length {}", res.length()))?;
    ensure(res.is_minimal(), "not minimal")?;
    let ex = verify_exactness(res.complex());
    ensure(ex.exact, format!("not exact: {:?}", ex.first_failure()))?;
    let cm = is_cohen_macaulay(&j).map_err(|e| e.to_string())?;
    ensure(cm.cohen_macaulay && cm.codim == 2, format!("{cm:?}"))?;
    Ok("ranks (1, 3, 2), length 2, minimal, exact, CM of codim 2".into())
}

fn criterion_2() -> Outcome {
    let r = xyz();
    let phi = vec![
        mat(&r, &[&["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"]]),
        mat(&r, &[&["-z", "-x^2"], &["-y", "-z"], &["x", "y"]]),
    ];
    let a = vec![
        mat(&r, &[&["1"]]),
        mat(&r, &[&["0", "y"], &["0", "x"], &["-1", "0"]]),
        mat(&r, &[&["x^3 - y*z"], &["y^2 - x*z"]]),
    ];
    let e = ChainComplex::new(&r, phi.clone()).map_err(|e| e.to_string())?;
    let ex = verify_exactness(&e);
    ensure(ex.exact, format!("hand resolution not exact: {:?}", ex.first_failure()))?;
    let k = koszul_complex(&curve_ci(&r).nonzero_gens()).map_err(|e| e.to_string())?;
    let sq = verify_squares(k.complex().diffs(), &phi, &a).map_err(|e| e.to_string())?;
    ensure(sq.ok(), format!("squares fail: {:?}", sq.failures))?;
    Ok("hand-entered phi_1, phi_2 exact; a_0, a_1, a_2 commute with the Koszul differentials".into())
}

fn criterion_3() -> Outcome {
    let r = xyz();
    let (i, j) = (curve_ci(&r), curve(&r));
    let k = ideal_colon(&i, &j).map_err(|e| e.to_string())?;
    let expect = i.sum(&ideal(&r, &["x^3 - y*z", "y^2 - x*z"]));
    ensure(k.contains_ideal(&expect), "I + L not inside I:J")?;
    ensure(expect.contains_ideal(&k), "I:J not inside I + L")?;
    let back = ideal_colon(&i, &k).map_err(|e| e.to_string())?;
    ensure(back.contains_ideal(&j) && j.contains_ideal(&back), "I:(I:J) differs from J")?;
    Ok("I:J = I + (x^3 - yz, y^2 - xz) and I:(I:J) = J".into())
}

fn criterion_4() -> Outcome {
    let r = xyz();
    let j = curve(&r);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut corpus = monomials(&r, 6);
    corpus.extend((0..200).map(|_| random_poly(&mut rng, &r, 5, 6)));
    // positive cases: random combinations of the generators
    corpus.extend((0..40).map(|_| {
        j.gens().iter().fold(Poly::zero(&r), |acc, g| &acc + &(&random_poly(&mut rng, &r, 2, 3) * g))
    }));
    let truth: Vec<bool> = corpus.iter().map(|g| j.contains(g)).collect();

    let mut fixtures = vec![curve_ci(&r)];
    let mut seed = 0u64;
    while fixtures.len() < 6 && seed < 20 {
        if let Ok(ci) = generic_ci(&j, 2, seed) {
            fixtures.push(ci);
        }
        seed += 1;
    }
    ensure(fixtures.len() == 6, format!("only {} generic_ci seeds succeeded", fixtures.len() - 1))?;
    for ci in &fixtures {
        let data = LinkData::new(ci, &j).map_err(|e| e.to_string())?;
        let top = data.top_entries();
        for (g, &t) in corpus.iter().zip(&truth) {
            ensure(membership_via_link(g, ci, &top) == t, format!("disagree on {g} with I = {:?}", ci.gen_strings()))?;
        }
    }
    let members = truth.iter().filter(|&&t| t).count();
    Ok(format!("{} polynomials ({members} in J) x {} complete intersections, all agree", corpus.len(), fixtures.len()))
}

fn criterion_5() -> Outcome {
    let r = Ring::rational(&["x", "y"]);
    let i = ideal(&r, &["x^2", "y^2"]);
    let j = ideal(&r, &["x", "y"]);
    let a = mat(&r, &[&["x", "0"], &["0", "y"]]);
    let corpus = monomials(&r, 6);
    for g in &corpus {
        let v = det_transform_member(g, &i, &j.nonzero_gens(), &a).map_err(|e| e.to_string())?;
        ensure(v == j.contains(g), format!("disagree on {g}"))?;
    }
    Ok(format!("{} monomials agree", corpus.len()))
}

fn criterion_6() -> Outcome {
    let r = xyz();
    let (f1, f2) = (p("z^2 - x^2*y", &r), p("x^4 - 2*x*y*z + y^3", &r));
    let change = LinearChange::from_ints(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]).map_err(|e| e.to_string())?;
    let rec = current_recipe(&f1, &f2, &RecipeOptions { seed: 0, change: Some(change) }).map_err(|e| e.to_string())?;
    ensure((rec.n1(), rec.n2()) == (2, 8), format!("N1 = {}, N2 = {}", rec.n1(), rec.n2()))?;

    let r2 = rec.r2.promote(&[0]);
    let g = "(1 - Y)";
    let big_f = format!("4/{g}^2*(1 - 2/{g})*Z^3 + 2*Y*(2/{g} - 1)*Z");
    let big_g = format!("1/{g}^2*(1 - 4/{g})*Z^4 + 2*Y/{g}*Z^2 + Y^3");
    let reference = p(&format!("Z^2*({big_f})^2/{g} - 2*Z*({big_f})*({big_g})/{g} + ({big_g})^2"), r2.ring());
    let unit = equal_up_to_unit(&r2, &reference).ok_or("r2 is not a unit multiple of Z^2 F^2/g - 2ZFG/g + G^2")?;
    let unit_poly = Poly::constant(r2.ring(), unit.clone());
    ensure(
        r2 == &unit_poly * &reference,
        "r2 differs from the unit multiple",
    )?;

    let bezout = &(&rec.a * &rec.f1_b) + &(&rec.b * &rec.f2_b);
    ensure(bezout == rec.r2_b, "r2 != a f1 + b f2")?;
    let b = rec.b.promote(&[1]);
    let ref_b = p(&format!("-(X + 2*Z/{g})*({big_f}) + {big_g}"), b.ring());
    ensure(equal_up_to_unit(&b, &ref_b) == Some(unit), "b is not the same unit multiple of -(X + 2Z/g)F + G")?;
    Ok(format!("N1 = 2, N2 = 8, r2 and b match with unit {unit_poly}, Bezout identity exact"))
}

fn criterion_7() -> Outcome {
    let r = Ring::rational(&["x", "s", "t"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // x-degree up to `dx`, coefficients of degree up to `dp` in s, t
    let gen = |rng: &mut ChaCha8Rng, dx: u32, dp: u32| loop {
        let top = rng.gen_range(1..=dx);
        let terms: Vec<_> = (0..rng.gen_range(2..=5))
            .map(|k| {
                let ex = if k == 0 { top } else { rng.gen_range(0..=top) };
                let ps = random_monomial(rng, 2, dp);
                (Monomial::from_exps(vec![ex, ps.exps()[0], ps.exps()[1]]), Coeff::int(rng.gen_range(-3..=3)))
            })
            .collect();
        let f = Poly::from_terms(&r, terms);
        if f.degree_in(0) > 0 {
            break f;
        }
    };
    let (mut shared, mut apart) = (0, 0);
    for n in 0..100 {
        let (f, g) = if n % 2 == 0 {
            (gen(&mut rng, 4, 2), gen(&mut rng, 4, 2))
        } else {
            let h = gen(&mut rng, 1, 1);
            (&gen(&mut rng, 3, 1) * &h, &gen(&mut rng, 3, 1) * &h)
        };
        let syl = resultant_sylvester(&f, &g, 0).map_err(|e| e.to_string())?;
        let e = extended_euclid(&f, &g, 0).map_err(|e| e.to_string())?;
        let syl_q = syl.promote(&[1, 2]);
        ensure(Poly::constant(syl_q.ring(), e.resultant.clone()) == syl_q, format!("resultants differ on {f}, {g}"))?;
        // a common factor of positive x-degree exists iff (f, g) meets QQ[s, t] only in 0
        let common = eliminate(&Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap(), 1).map_err(|e| e.to_string())?.is_zero();
        ensure(syl.is_zero() == common, format!("Sylvester vanishing wrong on {f}, {g}"))?;
        ensure((e.gcd.degree_in(0) > 0) == common, format!("Euclid remainder wrong on {f}, {g}"))?;
        ensure(common || !e.gcd.is_zero(), "zero last remainder")?;
        if common {
            shared += 1;
        } else {
            apart += 1;
        }
    }
    Ok(format!("100 pairs ({shared} with a common factor, {apart} coprime) agree"))
}

/// Basis of the rational null space of `rows`.
fn null_space(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, pr);
        let inv = BigRational::one() / rows[rank][c].clone();
        for v in rows[rank].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let d = &f * &rows[rank][k];
                    rows[i][k] = &rows[i][k] - d;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Every kernel vector of `m` with entries of degree at most `d` lies in the
/// span of `syz`.
fn kernel_complete(m: &PolyMatrix, syz: &PolyMatrix, d: u32) -> bool {
    let r = m.ring();
    let basis = monomials(r, d);
    let targets = monomials(r, d + 2);
    let ncols = m.cols() * basis.len();
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        for t in &targets {
            let tm = &t.terms()[0].0;
            let mut row = vec![BigRational::zero(); ncols];
            for j in 0..m.cols() {
                for (b, mono) in basis.iter().enumerate() {
                    let c = (m.get(i, j) * mono).coeff_of(tm);
                    row[j * basis.len() + b] = c.as_rational().unwrap().clone();
                }
            }
            rows.push(row);
        }
    }
    null_space(rows, ncols).into_iter().all(|v| {
        let entries: Vec<Poly> = (0..m.cols())
            .map(|j| {
                basis.iter().enumerate().fold(Poly::zero(r), |acc, (b, mono)| {
                    &acc + &mono.scale(&Coeff::Rat(v[j * basis.len() + b].clone()))
                })
            })
            .collect();
        lift_through(&ModuleElement(entries), syz).is_ok()
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let r = xyz();
    let mut checked = 0;
    for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
        for _ in 0..12 {
            let nonzero: Vec<Poly> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &r, 2, 3)).collect();
            let gb = buchberger(&nonzero, &order).map_err(|e| e.to_string())?;
            ensure(buchberger(&gb, &order).map_err(|e| e.to_string())? == gb, "Buchberger is not a fixed point")?;
            let f = random_poly(&mut rng, &r, 4, 5);
            let div = normal_form(&f, &nonzero, &order).map_err(|e| e.to_string())?;
            let back = div.quotients.iter().zip(&nonzero).fold(div.remainder.clone(), |acc, (q, g)| &acc + &(q * g));
            ensure(back == f, format!("division identity fails for {f}"))?;
            let leads: Vec<Monomial> = nonzero.iter().map(|g| g.leading(&order).unwrap().0.clone()).collect();
            ensure(
                div.remainder.terms().iter().all(|(m, _)| leads.iter().all(|l| !l.divides(m))),
                "remainder term divisible by a leading term",
            )?;
            checked += 1;
        }
    }

    let r2 = Ring::rational(&["x", "y"]);
    for _ in 0..6 {
        let entries: Vec<Vec<Poly>> = (0..2).map(|_| (0..3).map(|_| random_poly(&mut rng, &r2, 1, 2)).collect()).collect();
        let m = PolyMatrix::from_rows(&r2, entries).unwrap();
        let syz = syzygy_matrix(&m);
        ensure(m.try_mul(&syz).map_err(|e| e.to_string())?.is_zero(), "M syz(M) != 0")?;
        ensure(kernel_complete(&m, &syz, 2), format!("kernel of degree <= 2 not covered for\n{}", m.to_text()))?;
    }

    for p in 1..=4 {
        let f: Vec<Poly> = (0..p).map(|_| random_poly(&mut rng, &r, 2, 3)).collect();
        let k = koszul_complex(&f).map_err(|e| e.to_string())?;
        for w in k.complex().diffs().windows(2) {
            ensure(w[0].try_mul(&w[1]).map_err(|e| e.to_string())?.is_zero(), format!("psi psi != 0 for p = {p}"))?;
        }
    }

    for _ in 0..10 {
        let mono = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3);
            Ideal::new(&r, (0..n).map(|_| Poly::term(&r, random_monomial(rng, 3, 3), Coeff::one())).collect()).unwrap()
        };
        let (i, j) = (mono(&mut rng), mono(&mut rng));
        let double = ideal_colon(&i, &ideal_colon(&i, &j).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(double.contains_ideal(&j), format!("J not in I:(I:J) for I = {:?}, J = {:?}", i.gen_strings(), j.gen_strings()))?;
    }

    let reports = || -> Result<Vec<String>, String> {
        let r = xyz();
        let res = free_resolution(&curve(&r), true).map_err(|e| e.to_string())?;
        let data = LinkData::new(&curve_ci(&r), &curve(&r)).map_err(|e| e.to_string())?;
        let link = link_decomposition_check(&data.i, &data.j, &data.morphism).map_err(|e| e.to_string())?;
        let (f1, f2) = (p("z^2 - x^2*y", &r), p("x^4 - 2*x*y*z + y^3", &r));
        let rec = current_recipe(&f1, &f2, &RecipeOptions::default()).map_err(|e| e.to_string())?;
        Ok(vec![
            serde_json::to_string(&res.complex().to_report()).unwrap(),
            serde_json::to_string(&link).unwrap(),
            serde_json::to_string(&rec.to_report()).unwrap(),
        ])
    };
    ensure(reports()? == reports()?, "reports differ between runs")?;
    Ok(format!("{checked} division checks, 6 syzygy matrices, Koszul p <= 4, 10 monomial links, reports stable"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("curve resolution", criterion_1),
        ("hand-entered matrices", criterion_2),
        ("colon ideals", criterion_3),
        ("membership through links", criterion_4),
        ("determinant law", criterion_5),
        ("residue current recipe", criterion_6),
        ("resultant cross-check", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS in {secs:.1}s: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {secs:.1}s: {msg}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
}

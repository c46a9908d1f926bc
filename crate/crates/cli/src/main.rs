//! `cmlink`: batch front end for the linkage library.
//!
//! Every subcommand reads ideal or matrix files, prints one JSON report
//! (stdout or `--out`) and exits with 0 (done, checks passed), 1 (done, a
//! check failed; the report says which) or 2 (bad input or usage).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cmlink_core::io::{parse_ideal, parse_matrices, NamedMatrix};
use cmlink_core::linkage::{verify_squares, LinkData};
use cmlink_core::weier::RecipeOptions;
use cmlink_core::{
    current_recipe, det_transform_member, extended_euclid, free_resolution, generic_ci, ideal_codim, ideal_colon,
    koszul_complex, lift_through, link_decomposition_check, membership_via_link, parse_poly,
    resultant_sylvester, verify_exactness, Ideal, LinearChange, ModuleElement, MonomialOrder, Poly, PolyMatrix,
    RingRef,
};
use num_rational::BigRational;
use serde::Serialize;

use report::*;

#[derive(Parser)]
#[command(name = "cmlink", version, about = "Exact linkage, resolutions and residue-current recipes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Monomial order for Groebner bases in reports.
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

impl Order {
    fn get(self) -> MonomialOrder {
        match self {
            Order::Lex => MonomialOrder::lex(),
            Order::Grevlex => MonomialOrder::grevlex(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Order::Lex => "lex",
            Order::Grevlex => "grevlex",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Link,
    Gb,
    Det,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal.
    Gb {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Decide g ∈ J.
    Member {
        #[arg(long)]
        g: String,
        #[arg(long = "ideal-J")]
        ideal_j: PathBuf,
        /// Complete intersection inside J; a seeded generic one if omitted.
        #[arg(long = "ideal-I")]
        ideal_i: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Via::Link)]
        via: Via,
        /// For `--via det`: A with f = g A; lifted from the generators if omitted.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Also decide by Groebner basis and fail on disagreement.
        #[arg(long)]
        check: bool,
    },
    /// Colon ideal I : J.
    Colon {
        #[arg(long = "ideal-I")]
        ideal_i: PathBuf,
        #[arg(long = "ideal-J")]
        ideal_j: PathBuf,
    },
    /// Free resolution of R/J by iterated syzygies.
    Resolve {
        #[arg(long)]
        ideal: PathBuf,
        /// Split off constant pivots.
        #[arg(long)]
        minimal: bool,
    },
    /// Koszul complex on the generators.
    Koszul {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Solve M x = b.
    Lift {
        #[arg(long)]
        matrix: PathBuf,
        /// One-column matrix file holding b.
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Comparison morphism from the Koszul complex of I to a resolution of J.
    Link {
        #[arg(long = "ideal-I")]
        ideal_i: PathBuf,
        #[arg(long = "ideal-J")]
        ideal_j: PathBuf,
    },
    /// Preconditions, J = I : (I : J) and I : J = I + L.
    VerifyLinkage {
        #[arg(long = "ideal-I")]
        ideal_i: PathBuf,
        #[arg(long = "ideal-J")]
        ideal_j: PathBuf,
        /// Matrices a_0, ..., a_p to check instead of the computed lift.
        #[arg(long)]
        morphism: Option<PathBuf>,
        /// Differentials d_1, ..., d_p of a resolution of R/J to use with `--morphism`.
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Decide g ∈ J by det(A) g ∈ I.
    DetMember {
        #[arg(long)]
        g: String,
        #[arg(long = "ideal-I")]
        ideal_i: PathBuf,
        #[arg(long = "ideal-J")]
        ideal_j: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Resultant of two polynomials by Sylvester and by Euclid.
    Resultant {
        /// Ideal file with exactly two generators.
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        var: String,
    },
    /// Residue-current recipe for a codimension-two complete intersection.
    Recipe {
        /// Ideal file with exactly two generators.
        #[arg(long)]
        pair: PathBuf,
        /// Square matrix file: row i gives old variable i in the new ones.
        #[arg(long)]
        change: Option<PathBuf>,
    },
}

/// Failure before a report exists; always exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load_ideal(path: &Path) -> Res<Ideal> {
    parse_ideal(&read(path)?).map_err(|e| Fail(format!("{}:{e}", path.display())))
}

fn load_matrices(path: &Path, ring: &RingRef) -> Res<Vec<NamedMatrix>> {
    let (file_ring, ms) = parse_matrices(&read(path)?, Some(ring)).map_err(|e| Fail(format!("{}:{e}", path.display())))?;
    if file_ring != *ring {
        return Err(Fail(format!("{}: ring `{file_ring}` differs from `{ring}`", path.display())));
    }
    Ok(ms)
}

fn load_matrix(path: &Path, ring: &RingRef) -> Res<PolyMatrix> {
    let mut ms = load_matrices(path, ring)?;
    if ms.len() != 1 {
        return Err(Fail(format!("{}: expected one matrix, found {}", path.display(), ms.len())));
    }
    Ok(ms.remove(0).matrix)
}

fn load_pair(path: &Path) -> Res<(Poly, Poly)> {
    let ideal = load_ideal(path)?;
    match ideal.gens() {
        [f, g] => Ok((f.clone(), g.clone())),
        gs => Err(Fail(format!("{}: expected two generators, found {}", path.display(), gs.len()))),
    }
}

fn same_ring(a: &Ideal, b: Ideal) -> Res<Ideal> {
    if a.ring() != b.ring() {
        return Err(Fail(format!("rings differ: `{}` and `{}`", a.ring(), b.ring())));
    }
    Ok(b)
}

fn poly_arg(flag: &str, text: &str, ring: &RingRef) -> Res<Poly> {
    parse_poly(text, ring).map_err(|e| Fail(format!("{flag}:{e}")))
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

struct Outcome {
    json: String,
    passed: bool,
}

fn done<T: Serialize>(report: &T, passed: bool) -> Res<Outcome> {
    Ok(Outcome { json: serde_json::to_string_pretty(report)?, passed })
}

fn run(cli: &Cli) -> Res<Outcome> {
    let order = cli.order;
    match &cli.command {
        Command::Gb { ideal } => {
            let j = load_ideal(ideal)?;
            done(
                &GbReport {
                    command: "gb",
                    ring: j.ring().to_string(),
                    order: order.name(),
                    generators: j.gen_strings(),
                    basis: strings(&j.groebner_in(&order.get())),
                },
                true,
            )
        }
        Command::Member { g, ideal_j, ideal_i, via, matrix, check } => {
            let j = load_ideal(ideal_j)?;
            let g = poly_arg("--g", g, j.ring())?;
            let ring = j.ring().clone();
            let ci = |seed| -> Res<Ideal> {
                match ideal_i {
                    Some(p) => same_ring(&j, load_ideal(p)?),
                    None => Ok(generic_ci(&j, ideal_codim(&j), seed)?),
                }
            };
            let (via_name, i, verdict, top) = match via {
                Via::Gb => ("gb", None, j.contains(&g), None),
                Via::Link => {
                    let i = ci(cli.seed)?;
                    let data = LinkData::new(&i, &j)?;
                    let top = data.top_entries();
                    let verdict = membership_via_link(&g, &i, &top);
                    ("link", Some(i), verdict, Some(strings(&top)))
                }
                Via::Det => {
                    let i = ci(cli.seed)?;
                    if j.nonzero_gens().len() != i.nonzero_gens().len() {
                        return Err(Fail(format!(
                            "--via det needs J generated by {} elements, got {}",
                            i.nonzero_gens().len(),
                            j.nonzero_gens().len()
                        )));
                    }
                    let a = match matrix {
                        Some(p) => load_matrix(p, &ring)?,
                        None => lift_generators(&i, &j)?,
                    };
                    let verdict = det_transform_member(&g, &i, &j.nonzero_gens(), &a)?;
                    ("det", Some(i), verdict, None)
                }
            };
            let gb_verdict = check.then(|| j.contains(&g));
            let passed = gb_verdict.is_none_or(|v| v == verdict);
            done(
                &MemberReport {
                    command: "member",
                    ring: ring.to_string(),
                    g: g.to_string(),
                    via: via_name,
                    j: j.gen_strings(),
                    i: i.map(|i| i.gen_strings()),
                    top_entries: top,
                    member: verdict,
                    gb_member: gb_verdict,
                },
                passed,
            )
        }
        Command::Colon { ideal_i, ideal_j } => {
            let i = load_ideal(ideal_i)?;
            let j = same_ring(&i, load_ideal(ideal_j)?)?;
            let k = ideal_colon(&i, &j)?;
            done(
                &ColonReport {
                    command: "colon",
                    ring: i.ring().to_string(),
                    order: order.name(),
                    i: i.gen_strings(),
                    j: j.gen_strings(),
                    colon: strings(&k.groebner_in(&order.get())),
                },
                true,
            )
        }
        Command::Resolve { ideal, minimal } => {
            let j = load_ideal(ideal)?;
            let res = free_resolution(&j, *minimal)?;
            let exact = verify_exactness(res.complex());
            let complex = res.complex().to_report();
            done(
                &ResolveReport {
                    command: "resolve",
                    ring: j.ring().to_string(),
                    generators: j.gen_strings(),
                    minimalized: *minimal,
                    is_minimal: res.is_minimal(),
                    length: res.length(),
                    ranks: complex.ranks,
                    differentials: complex.differentials,
                    exact: exact.exact,
                    exactness: exact.degrees,
                },
                exact.exact,
            )
        }
        Command::Koszul { ideal } => {
            let i = load_ideal(ideal)?;
            let k = koszul_complex(&i.nonzero_gens())?;
            let exact = verify_exactness(k.complex());
            let complex = k.complex().to_report();
            done(
                &KoszulReport {
                    command: "koszul",
                    ring: i.ring().to_string(),
                    tuple: strings(k.tuple()),
                    p: k.p(),
                    ranks: complex.ranks,
                    differentials: complex.differentials,
                    exact: exact.exact,
                },
                true,
            )
        }
        Command::Lift { matrix, rhs } => {
            let text = read(matrix)?;
            let (ring, mut ms) = parse_matrices(&text, None).map_err(|e| Fail(format!("{}:{e}", matrix.display())))?;
            if ms.len() != 1 {
                return Err(Fail(format!("{}: expected one matrix, found {}", matrix.display(), ms.len())));
            }
            let m = ms.remove(0).matrix;
            let b = load_matrix(rhs, &ring)?;
            if b.cols() != 1 || b.rows() != m.rows() {
                return Err(Fail(format!("rhs must be {}x1, found {}x{}", m.rows(), b.rows(), b.cols())));
            }
            let b = b.column(0);
            let (solution, remainder) = match lift_through(&b, &m) {
                Ok(x) => (Some(x.to_strings()), None),
                Err(cmlink_core::modules::ModuleError::NotInImage { remainder }) => (None, Some(remainder)),
                Err(e) => return Err(e.into()),
            };
            let passed = solution.is_some();
            done(
                &LiftReport {
                    command: "lift",
                    ring: ring.to_string(),
                    in_image: passed,
                    solution,
                    remainder,
                },
                passed,
            )
        }
        Command::Link { ideal_i, ideal_j } => {
            let i = load_ideal(ideal_i)?;
            let j = same_ring(&i, load_ideal(ideal_j)?)?;
            let data = LinkData::new(&i, &j)?;
            let psi = data.koszul.complex().diffs().to_vec();
            let squares = verify_squares(&psi, data.resolution.complex().diffs(), data.morphism.maps())?;
            let passed = squares.ok();
            done(
                &LinkReport {
                    command: "link",
                    ring: i.ring().to_string(),
                    i: i.gen_strings(),
                    j: j.gen_strings(),
                    koszul: data.koszul.complex().to_report(),
                    resolution: data.resolution.complex().to_report(),
                    morphism: data.morphism.maps().iter().map(PolyMatrix::to_text).collect(),
                    l: strings(&data.top_entries()),
                    squares,
                },
                passed,
            )
        }
        Command::VerifyLinkage { ideal_i, ideal_j, morphism, resolution } => {
            let i = load_ideal(ideal_i)?;
            let j = same_ring(&i, load_ideal(ideal_j)?)?;
            let ring = i.ring().clone();
            let koszul = koszul_complex(&i.nonzero_gens())?;
            let psi = koszul.complex().diffs().to_vec();
            let (phi, a) = match morphism {
                Some(path) => {
                    let a: Vec<PolyMatrix> = load_matrices(path, &ring)?.into_iter().map(|m| m.matrix).collect();
                    let phi = match resolution {
                        Some(rp) => load_matrices(rp, &ring)?.into_iter().map(|m| m.matrix).collect(),
                        None => free_resolution(&j, true)?.complex().diffs().to_vec(),
                    };
                    (phi, a)
                }
                None => {
                    if resolution.is_some() {
                        return Err(Fail("--resolution needs --morphism".into()));
                    }
                    let data = LinkData::new(&i, &j)?;
                    (data.resolution.complex().diffs().to_vec(), data.morphism.maps().to_vec())
                }
            };
            let squares = verify_squares(&psi, &phi, &a)?;
            let morph = cmlink_core::ComplexMorphism::new(a);
            let linkage = link_decomposition_check(&i, &j, &morph)?;
            let passed = squares.ok() && linkage.ok;
            done(&VerifyReport { command: "verify-linkage", squares, linkage }, passed)
        }
        Command::DetMember { g, ideal_i, ideal_j, matrix } => {
            let i = load_ideal(ideal_i)?;
            let j = same_ring(&i, load_ideal(ideal_j)?)?;
            let g = poly_arg("--g", g, i.ring())?;
            let a = load_matrix(matrix, i.ring())?;
            let verdict = det_transform_member(&g, &i, &j.nonzero_gens(), &a)?;
            done(
                &DetReport {
                    command: "det-member",
                    ring: i.ring().to_string(),
                    g: g.to_string(),
                    det: a.det()?.to_string(),
                    member: verdict,
                },
                true,
            )
        }
        Command::Resultant { pair, var } => {
            let (f, g) = load_pair(pair)?;
            let ring = f.ring().clone();
            let v = ring.var_index(var).ok_or_else(|| Fail(format!("--var: `{var}` is not a variable of `{ring}`")))?;
            let syl = resultant_sylvester(&f, &g, v)?;
            let eu = extended_euclid(&f, &g, v)?;
            let others: Vec<usize> = (0..ring.nvars()).filter(|&i| i != v).collect();
            let syl_u = syl.promote(&others);
            let euclid_res = Poly::constant(syl_u.ring(), eu.resultant.clone());
            let agree = euclid_res == syl_u;
            let unit = if eu.gcd.degree_in(0) == 0 && !syl.is_zero() {
                eu.resultant.div(&eu.gcd.constant_coeff()).map(|u| Poly::constant(&eu.ring, u).to_string())
            } else {
                None
            };
            done(
                &ResultantReport {
                    command: "resultant",
                    ring: ring.to_string(),
                    var: var.clone(),
                    p: f.to_string(),
                    q: g.to_string(),
                    sylvester: syl.to_string(),
                    euclid_ring: eu.ring.to_string(),
                    euclid_resultant: euclid_res.to_string(),
                    euclid_gcd: eu.gcd.to_string(),
                    a: eu.a.to_string(),
                    b: eu.b.to_string(),
                    resultant_over_gcd: unit,
                    common_factor: eu.gcd.degree_in(0) > 0,
                    agree,
                },
                agree,
            )
        }
        Command::Recipe { pair, change } => {
            let (f1, f2) = load_pair(pair)?;
            let change = match change {
                Some(p) => Some(load_change(p, f1.ring())?),
                None => None,
            };
            let rec = current_recipe(&f1, &f2, &RecipeOptions { seed: cli.seed, change })?;
            let report = rec.to_report();
            let passed = report.bezout_verified;
            done(&report, passed)
        }
    }
}

/// A with f = g A, one lifted column per generator of I.
fn lift_generators(i: &Ideal, j: &Ideal) -> Res<PolyMatrix> {
    let row = PolyMatrix::row(j.ring(), j.nonzero_gens());
    let cols = i
        .nonzero_gens()
        .into_iter()
        .map(|f| lift_through(&ModuleElement(vec![f]), &row))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_columns(j.ring(), row.cols(), &cols)?)
}

fn load_change(path: &Path, ring: &RingRef) -> Res<LinearChange> {
    let m = load_matrix(path, ring)?;
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row: Vec<BigRational> = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            let e = m.get(r, c);
            match e.constant_coeff().as_rational() {
                Some(q) if e.is_constant() => row.push(q.clone()),
                _ => return Err(Fail(format!("{}: entry ({r}, {c}) is not a rational constant", path.display()))),
            }
        }
        rows.push(row);
    }
    Ok(LinearChange::new(rows)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = out.json + "\n";
            match &cli.out {
                Some(p) => {
                    if let Err(e) = fs::write(p, text) {
                        eprintln!("cmlink: {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Fail(msg)) => {
            eprintln!("cmlink: {msg}");
            ExitCode::from(2)
        }
    }
}

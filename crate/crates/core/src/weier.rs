//! Weierstrass position, extended Euclid over rational-function
//! coefficients, resultants, and the recipe for the residue currents of a
//! codimension-two complete intersection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::error::PolyError;
use crate::groebner::{ideal_codim, Ideal};
use crate::linchange::{ChangeReport, LinearChange};
use crate::modules::{ModuleError, PolyMatrix};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::qpoly::QPoly;
use crate::ring::{Ring, RingRef};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeierError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("`{poly}` does not vanish at the origin")]
    NotAtOrigin { poly: String },
    #[error("not regular in `{var}`: leading coefficient `{witness}` vanishes at the origin")]
    NotRegular { var: String, witness: String },
    #[error("not a Weierstrass polynomial in `{var}`: coefficient of {var}^{power} is `{witness}`")]
    NotWeierstrass { var: String, power: u32, witness: String },
    #[error("`{0}` has degree zero in the elimination variable")]
    DegreeZero(String),
    #[error("zero input")]
    ZeroInput,
    #[error("unknown variable index {0}")]
    BadVariable(usize),
    #[error("expected a codimension 2 complete intersection, got codimension {0}")]
    NotCodimTwo(usize),
    #[error("recipes need a ring with rational coefficients and at least two variables")]
    UnsupportedRing,
    #[error("the inputs share a factor of positive degree in `{0}`")]
    CommonFactor(String),
    #[error("no regular coordinates found after {0} attempts")]
    RetriesExhausted(usize),
}

/// `original = unit * p` with `p` monic in `var` and lower coefficients
/// vanishing at the origin. `unit` lives in the coefficient field of
/// `ring`, which is the original ring with the variables of the leading
/// coefficient moved into the parameters.
#[derive(Clone, Debug)]
pub struct WeierstrassForm {
    pub original: Poly,
    pub ring: RingRef,
    pub var: usize,
    pub unit: Coeff,
    pub p: Poly,
    pub degree: u32,
}

impl WeierstrassForm {
    pub fn var_name(&self) -> &str {
        &self.ring.vars()[self.var]
    }

    pub fn unit_poly(&self) -> Poly {
        Poly::constant(&self.ring, self.unit.clone())
    }
}

/// Factor the `var`-leading coefficient out of `f`.
pub fn weierstrass_ready(f: &Poly, var: usize) -> Result<WeierstrassForm, WeierError> {
    let ring = f.ring();
    if var >= ring.nvars() {
        return Err(WeierError::BadVariable(var));
    }
    if f.is_zero() {
        return Err(WeierError::ZeroInput);
    }
    if f.at_origin().is_none_or(|v| !v.is_zero()) {
        return Err(WeierError::NotAtOrigin { poly: f.to_string() });
    }
    let name = ring.vars()[var].clone();
    let coeffs = f.coeffs_in(var);
    let n = coeffs.len() - 1;
    let lc = &coeffs[n];
    if !lc.is_local_unit() {
        return Err(WeierError::NotRegular { var: name, witness: lc.to_string() });
    }
    let which: Vec<usize> = (0..ring.nvars()).filter(|&i| i != var && lc.involves(i)).collect();
    let (pring, map) = ring.promote(&which);
    let fp = f.promote_into(&pring, &which, &map);
    let pvar = map[var].expect("var stays a variable");
    let unit = fp.coeffs_in(pvar)[n].constant_coeff();
    let p = fp.scale(&unit.inv().expect("nonzero"));
    for (k, c) in p.coeffs_in(pvar).iter().enumerate().take(n) {
        if c.at_origin().is_none_or(|v| !v.is_zero()) {
            return Err(WeierError::NotWeierstrass { var: name, power: k as u32, witness: c.to_string() });
        }
    }
    debug_assert!(p.scale(&unit) == fp);
    Ok(WeierstrassForm { original: f.clone(), ring: pring, var: pvar, unit, p, degree: n as u32 })
}

type Uni = Vec<Coeff>;

fn trim(mut v: Uni) -> Uni {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
    v
}

fn to_uni(p: &Poly) -> Uni {
    let mut v = vec![Coeff::zero(); p.degree_in(0) as usize + 1];
    for (m, c) in p.terms() {
        v[m.exps()[0] as usize] = c.clone();
    }
    trim(v)
}

fn from_uni(ring: &RingRef, v: &[Coeff]) -> Poly {
    Poly::from_terms(
        ring,
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::from_exps(vec![k as u32]), c.clone())),
    )
}

/// Univariate polynomial with coefficients in `QQ[params]`.
type QUni = Vec<QPoly>;

fn qtrim(mut v: QUni) -> QUni {
    while v.last().is_some_and(QPoly::is_zero) {
        v.pop();
    }
    v
}

fn qsub(a: &[QPoly], b: &[QPoly]) -> QUni {
    let n = a.len().max(b.len());
    qtrim(
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.sub(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.neg(),
                (None, None) => QPoly::zero(),
            })
            .collect(),
    )
}

fn qmul(a: &[QPoly], b: &[QPoly]) -> QUni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    qtrim(out)
}

fn qscale(v: &[QPoly], c: &QPoly) -> QUni {
    qtrim(v.iter().map(|x| x.mul(c)).collect())
}

fn qdiv(v: &[QPoly], c: &QPoly) -> QUni {
    v.iter().map(|x| x.div_exact(c).expect("content divides")).collect()
}

/// `lc(b)^k a = q b + r` with `deg r < deg b`; `k` counts the steps taken.
fn pseudo_divrem(a: &[QPoly], b: &[QPoly]) -> (u32, QUni, QUni) {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q: QUni = Vec::new();
    let mut k = 0;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        q = qscale(&q, lb);
        if q.len() <= shift {
            q.resize(shift + 1, QPoly::zero());
        }
        q[shift] = q[shift].add(&lr);
        let mut next: QUni = r.iter().map(|c| c.mul(lb)).collect();
        for (i, y) in b.iter().enumerate() {
            next[shift + i] = next[shift + i].sub(&lr.mul(y));
        }
        r = qtrim(next);
        k += 1;
    }
    (k, qtrim(q), r)
}

/// Content of the coefficients together, numeric part included: dividing by
/// it leaves integer coefficients without common factor.
fn qcontent<'a, I: IntoIterator<Item = &'a QPoly> + Clone>(v: I) -> QPoly {
    let mut g = QPoly::zero();
    for c in v.clone() {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.primitive().0 } else { g.gcd(c) };
        if g.is_constant() {
            break;
        }
    }
    if g.is_zero() {
        return QPoly::one();
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    let quots: Vec<QPoly> = v.into_iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect();
    for x in &quots {
        for (_, c) in x.terms() {
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
    }
    for x in &quots {
        for (_, c) in x.terms() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, &(c.numer() * (&den_lcm / c.denom())));
        }
    }
    g.scale(&BigRational::new(num_gcd, den_lcm))
}

/// Clear denominators: `(v, D)` with `v = D p` polynomial in the parameters.
fn cleared(p: &Uni) -> (QUni, QPoly) {
    let d = p.iter().fold(QPoly::one(), |acc, c| acc.lcm(&c.denom()));
    let v = p.iter().map(|c| c.numer().mul(&d.div_exact(&c.denom()).expect("lcm"))).collect();
    (v, d)
}

fn lifted(v: &[QPoly], scale: &Coeff) -> Uni {
    trim(v.iter().map(|c| Coeff::from_qpoly(c.clone()).mul(scale)).collect())
}

/// Outcome of the extended Euclidean algorithm in one variable over the
/// field of rational functions in all other variables.
#[derive(Clone, Debug)]
pub struct EuclidResult {
    /// `var` alone, every other variable moved to the parameters.
    pub ring: RingRef,
    pub gcd: Poly,
    pub a: Poly,
    pub b: Poly,
    /// `P, Q, r_2, ..., gcd`.
    pub remainders: Vec<Poly>,
    /// Resultant of `P` and `Q`, accumulated along the remainder sequence.
    pub resultant: Coeff,
}

fn univariate_ring(p: &Poly, var: usize) -> (Vec<usize>, RingRef, Vec<Option<usize>>) {
    let others: Vec<usize> = (0..p.ring().nvars()).filter(|&i| i != var).collect();
    let (r, map) = p.ring().promote(&others);
    (others, r, map)
}

/// `gcd = a P + b Q`, where `gcd` is the last nonzero remainder.
pub fn extended_euclid(p: &Poly, q: &Poly, var: usize) -> Result<EuclidResult, WeierError> {
    p.check_ring(q)?;
    if var >= p.ring().nvars() {
        return Err(WeierError::BadVariable(var));
    }
    if p.is_zero() || q.is_zero() {
        return Err(WeierError::ZeroInput);
    }
    let (others, ring, map) = univariate_ring(p, var);
    let (up, uq) = (to_uni(&p.promote_into(&ring, &others, &map)), to_uni(&q.promote_into(&ring, &others, &map)));
    // Fraction-free: r_i = (s_i P + t_i Q) / d_i has coefficients in QQ[params]
    // and the field remainder is lam_i r_i.
    let inv = |d: &QPoly| Coeff::frac(QPoly::one(), d.clone()).expect("nonzero");
    let ((mut r0, dp), (mut r1, dq)) = (cleared(&up), cleared(&uq));
    let (mut s0, mut s1): (QUni, QUni) = (vec![dp.clone()], Vec::new());
    let (mut t0, mut t1): (QUni, QUni) = (Vec::new(), vec![dq.clone()]);
    let (mut d0, mut d1) = (QPoly::one(), QPoly::one());
    let (mut lam0, mut lam1) = (inv(&dp), inv(&dq));
    let mut rems = vec![from_uni(&ring, &up), from_uni(&ring, &uq)];
    let mut res = Coeff::one();
    let mut res_done = false;
    while !r1.is_empty() {
        let (k, qq, mut rr) = pseudo_divrem(&r0, &r1);
        let (m, n) = (r0.len() - 1, r1.len() - 1);
        let lc = r1[n].clone();
        // res(A, B) = (-1)^{mn} lc(B)^{m-r} res(B, R) on field remainders
        if !res_done {
            let lcb = Coeff::from_qpoly(lc.clone()).mul(&lam1);
            if n == 0 {
                res = res.mul(&lcb.pow(m as u32));
                res_done = true;
            } else if rr.is_empty() {
                res = Coeff::zero();
                res_done = true;
            } else {
                if (m * n) % 2 == 1 {
                    res = res.neg();
                }
                res = res.mul(&lcb.pow((m - (rr.len() - 1)) as u32));
            }
        }
        let lck = lc.pow(k);
        let l = d0.lcm(&d1);
        let (u0, u1) = (l.div_exact(&d0).expect("lcm"), l.div_exact(&d1).expect("lcm"));
        let mut s2 = qsub(&qscale(&s0, &lck.mul(&u0)), &qmul(&qq, &qscale(&s1, &u1)));
        let mut t2 = qsub(&qscale(&t0, &lck.mul(&u0)), &qmul(&qq, &qscale(&t1, &u1)));
        let mut d2 = l;
        let mut lam2 = Coeff::zero();
        if !rr.is_empty() {
            let c = qcontent(&rr);
            rr = qdiv(&rr, &c);
            d2 = d2.mul(&c);
            lam2 = lam0.mul(&Coeff::from_qpoly(c)).mul(&inv(&lck));
            let g = qcontent(s2.iter().chain(&t2).chain(std::iter::once(&d2)));
            (s2, t2, d2) = (qdiv(&s2, &g), qdiv(&t2, &g), d2.div_exact(&g).expect("content divides"));
            rems.push(from_uni(&ring, &lifted(&rr, &lam2)));
        }
        (r0, r1) = (r1, rr);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
        (d0, d1) = (d1, d2);
        (lam0, lam1) = (lam1, lam2);
    }
    let scale = lam0.mul(&inv(&d0));
    let out = EuclidResult {
        gcd: from_uni(&ring, &lifted(&r0, &lam0)),
        a: from_uni(&ring, &lifted(&s0, &scale)),
        b: from_uni(&ring, &lifted(&t0, &scale)),
        remainders: rems,
        resultant: res,
        ring: ring.clone(),
    };
    debug_assert!(&(&out.a * &from_uni(&ring, &up)) + &(&out.b * &from_uni(&ring, &uq)) == out.gcd);
    Ok(out)
}

/// Determinant of the Sylvester matrix of `p` and `q` in `var`, rows of
/// `p` first.
pub fn resultant_sylvester(p: &Poly, q: &Poly, var: usize) -> Result<Poly, WeierError> {
    p.check_ring(q)?;
    if var >= p.ring().nvars() {
        return Err(WeierError::BadVariable(var));
    }
    for f in [p, q] {
        if f.degree_in(var) == 0 {
            return Err(WeierError::DegreeZero(f.to_string()));
        }
    }
    let ring = p.ring();
    let (cp, cq) = (p.coeffs_in(var), q.coeffs_in(var));
    let (m, n) = (cp.len() - 1, cq.len() - 1);
    let size = m + n;
    let mut s = PolyMatrix::zeros(ring, size, size);
    for i in 0..n {
        for (k, c) in cp.iter().rev().enumerate() {
            s.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in cq.iter().rev().enumerate() {
            s.set(n + i, i + k, c.clone());
        }
    }
    Ok(s.det()?)
}

/// Resultant by the Euclidean recursion, as a coefficient of the ring with
/// every variable except `var` moved to the parameters.
pub fn resultant_euclid(p: &Poly, q: &Poly, var: usize) -> Result<Coeff, WeierError> {
    Ok(extended_euclid(p, q, var)?.resultant)
}

/// Move variables back out of the parameter block: `params[i]` of `p`'s ring
/// maps to variable `to_var[i]` of `target` or to the `keep`-th kept
/// parameter. Fails if a denominator involves a moved parameter.
fn demote(p: &Poly, target: &RingRef, var_map: &[usize], to_var: &[Option<usize>]) -> Option<Poly> {
    let kept: Vec<usize> = (0..to_var.len()).filter(|&i| to_var[i].is_none()).collect();
    let reindex = |e: &[u32]| -> Vec<u32> { kept.iter().map(|&i| e.get(i).copied().unwrap_or(0)).collect() };
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let rf = c.to_ratfunc();
        let den = rf.den();
        if den.terms().any(|(e, _)| e.iter().enumerate().any(|(i, &x)| x > 0 && to_var[i].is_some())) {
            return None;
        }
        let den = QPoly::from_terms(den.terms().map(|(e, v)| (reindex(e), v.clone())));
        for (e, v) in rf.num().terms() {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &x) in m.exps().iter().enumerate() {
                exps[var_map[i]] += x;
            }
            for (i, &x) in e.iter().enumerate() {
                if let Some(t) = to_var[i] {
                    exps[t] += x;
                }
            }
            let num = QPoly::monomial(reindex(e), v.clone());
            let coeff = Coeff::frac(num, den.clone()).expect("nonzero denominator");
            terms.push((Monomial::from_exps(exps), coeff));
        }
    }
    Some(Poly::from_terms(target, terms))
}

/// Convert a parameter polynomial (parameters indexed like `vars`) into a
/// polynomial of `ring` whose variables are `vars`.
fn qpoly_to_poly(q: &QPoly, ring: &RingRef) -> Poly {
    let n = ring.nvars();
    Poly::from_terms(
        ring,
        q.terms().map(|(e, v)| {
            let mut exps = e.clone();
            exps.resize(n, 0);
            (Monomial::from_exps(exps), Coeff::Rat(v.clone()))
        }),
    )
}

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C_1 = (-1)^{N_1 γ} (N_1 γ)!` and `C_2 = -(-1)^{N_2} C_1 / N_2!`.
pub fn recipe_constants(n1: u32, n2: u32, gamma: u32) -> (BigRational, BigRational) {
    let k = n1 * gamma;
    let mut c1 = BigRational::from_integer(factorial(k));
    if k % 2 == 1 {
        c1 = -c1;
    }
    let mut c2 = -(&c1 / BigRational::from_integer(factorial(n2)));
    if n2 % 2 == 1 {
        c2 = -c2;
    }
    (c1, c2)
}

/// Options for [`current_recipe`].
#[derive(Clone, Debug, Default)]
pub struct RecipeOptions {
    pub seed: u64,
    /// Use exactly this change of coordinates instead of searching.
    pub change: Option<LinearChange>,
}

/// Symbolic data for the currents of `(f1, f2)` in new coordinates.
#[derive(Clone, Debug)]
pub struct CurrentRecipe {
    pub change: LinearChange,
    /// Change of the coordinates after the first one, needed to put `r2`
    /// into Weierstrass position; identity if not needed.
    pub second_change: LinearChange,
    /// Ring of the new coordinates.
    pub ring: RingRef,
    pub f1: Poly,
    pub f2: Poly,
    pub w1: WeierstrassForm,
    /// Ring of the coordinates after the first; `r2` lives here.
    pub rest_ring: RingRef,
    pub r2: Poly,
    pub w2: WeierstrassForm,
    /// `a`, `b` and the transformed `f1`, `f2` promoted into this ring.
    pub bezout_ring: RingRef,
    pub a: Poly,
    pub b: Poly,
    pub f1_b: Poly,
    pub f2_b: Poly,
    pub r2_b: Poly,
    pub gamma: u32,
    pub c1: BigRational,
    pub c2: BigRational,
    /// Euclid's last remainder.
    pub gcd: Poly,
    /// `r2 / gcd`.
    pub gcd_scale: Coeff,
    /// Resultant of `P_1` and `f2` divided by Euclid's last remainder.
    pub resultant_unit: Coeff,
    pub attempts: usize,
}

impl CurrentRecipe {
    pub fn n1(&self) -> u32 {
        self.w1.degree
    }

    pub fn n2(&self) -> u32 {
        self.w2.degree
    }

    /// `r2 = a f1 + b f2`, re-expanded.
    pub fn bezout_holds(&self) -> bool {
        &(&self.a * &self.f1_b) + &(&self.b * &self.f2_b) == self.r2_b
    }

    pub fn to_report(&self) -> RecipeReport {
        let change_report = |c: &LinearChange, names: &[String]| ChangeReport {
            new_variables: names.to_vec(),
            matrix: c.to_strings(),
        };
        let rest_names = self.rest_ring.vars().to_vec();
        RecipeReport {
            ring: self.ring.to_string(),
            change: change_report(&self.change, self.ring.vars()),
            second_change: (!self.second_change.is_identity())
                .then(|| change_report(&self.second_change, &rest_names)),
            f1: self.f1.to_string(),
            f2: self.f2.to_string(),
            var1: self.w1.var_name().to_string(),
            p1_ring: self.w1.ring.to_string(),
            unit1: self.w1.unit.display(self.w1.ring.params()).to_string(),
            p1: self.w1.p.to_string(),
            n1: self.n1(),
            r2_ring: self.rest_ring.to_string(),
            r2: self.r2.to_string(),
            var2: self.w2.var_name().to_string(),
            p2_ring: self.w2.ring.to_string(),
            unit2: self.w2.unit.display(self.w2.ring.params()).to_string(),
            p2: self.w2.p.to_string(),
            n2: self.n2(),
            bezout_ring: self.bezout_ring.to_string(),
            a: self.a.to_string(),
            b: self.b.to_string(),
            bezout_verified: self.bezout_holds(),
            gamma: self.gamma,
            c1: rational_string(&self.c1),
            c2: rational_string(&self.c2),
            euclid_ring: self.gcd.ring().to_string(),
            euclid_gcd: self.gcd.to_string(),
            resultant_unit: self.resultant_unit.display(self.gcd.ring().params()).to_string(),
            attempts: self.attempts,
        }
    }
}

/// JSON view of a [`CurrentRecipe`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RecipeReport {
    pub ring: String,
    pub change: ChangeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_change: Option<ChangeReport>,
    pub f1: String,
    pub f2: String,
    pub var1: String,
    pub p1_ring: String,
    pub unit1: String,
    pub p1: String,
    pub n1: u32,
    pub r2_ring: String,
    pub r2: String,
    pub var2: String,
    pub p2_ring: String,
    pub unit2: String,
    pub p2: String,
    pub n2: u32,
    pub bezout_ring: String,
    pub a: String,
    pub b: String,
    pub bezout_verified: bool,
    pub gamma: u32,
    pub c1: String,
    pub c2: String,
    pub euclid_ring: String,
    pub euclid_gcd: String,
    pub resultant_unit: String,
    pub attempts: usize,
}

const MAX_ATTEMPTS: usize = 50;

fn new_names(ring: &RingRef) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for v in ring.vars() {
        let up = v.to_uppercase();
        let mut name = if up != *v { up } else { format!("{v}1") };
        while ring.vars().contains(&name) || ring.params().contains(&name) || out.contains(&name) {
            name.push('_');
        }
        out.push(name);
    }
    out
}

fn random_change(rng: &mut ChaCha8Rng, n: usize) -> LinearChange {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if let Ok(c) = LinearChange::from_ints(&m) {
            return c;
        }
    }
}

/// `diag(1, m)`: keep the first coordinate, change the rest by `m`.
fn extend_change(m: &LinearChange) -> LinearChange {
    let n = m.size() + 1;
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    rows[0][0] = BigRational::one();
    for (i, row) in m.matrix().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            rows[i + 1][j + 1] = v.clone();
        }
    }
    LinearChange::new(rows).expect("block diagonal with invertible blocks")
}

/// The shear `x_n = X_1 + X_n`.
fn shear(n: usize) -> LinearChange {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    m[n - 1][0] = 1;
    LinearChange::from_ints(&m).expect("unipotent")
}

enum Attempt {
    Done(Box<CurrentRecipe>),
    /// First stage fine, but `r2` needs new coordinates in the rest.
    NeedSecond,
    Failed,
}

/// Euclid/Weierstrass pipeline for a codimension-two complete intersection.
pub fn current_recipe(f1: &Poly, f2: &Poly, opts: &RecipeOptions) -> Result<CurrentRecipe, WeierError> {
    f1.check_ring(f2)?;
    let ring = f1.ring().clone();
    if !ring.params().is_empty() || ring.nvars() < 2 {
        return Err(WeierError::UnsupportedRing);
    }
    let ideal = Ideal::new(&ring, vec![f1.clone(), f2.clone()])?;
    let codim = ideal_codim(&ideal);
    if codim != 2 || f1.is_zero() || f2.is_zero() {
        return Err(WeierError::NotCodimTwo(codim));
    }
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fixed = [LinearChange::identity(n), shear(n)];
    let identity_rest = LinearChange::identity(n - 1);
    let mut attempts = 0;
    while attempts < MAX_ATTEMPTS {
        let first = match &opts.change {
            Some(_) if attempts > 0 => return Err(WeierError::RetriesExhausted(attempts)),
            Some(c) => c.clone(),
            None => fixed.get(attempts).cloned().unwrap_or_else(|| random_change(&mut rng, n)),
        };
        attempts += 1;
        match attempt(f1, f2, &first, &identity_rest, attempts)? {
            Attempt::Done(r) => return Ok(*r),
            Attempt::Failed => {}
            Attempt::NeedSecond => {
                while attempts < MAX_ATTEMPTS {
                    attempts += 1;
                    let second = random_change(&mut rng, n - 1);
                    if let Attempt::Done(r) = attempt(f1, f2, &first, &second, attempts)? {
                        return Ok(*r);
                    }
                }
            }
        }
    }
    Err(WeierError::RetriesExhausted(attempts))
}

fn attempt(
    f1: &Poly,
    f2: &Poly,
    first: &LinearChange,
    second: &LinearChange,
    attempts: usize,
) -> Result<Attempt, WeierError> {
    let ring = f1.ring();
    let n = ring.nvars();
    let names = new_names(ring);
    let new_ring = Ring::new(&names, &[] as &[String])?;
    let change = first.then(&extend_change(second));
    let g1 = change.apply_into(f1, &new_ring)?;
    let g2 = change.apply_into(f2, &new_ring)?;
    let w1 = match weierstrass_ready(&g1, 0) {
        Ok(w) => w,
        Err(WeierError::NotRegular { .. } | WeierError::NotWeierstrass { .. }) => return Ok(Attempt::Failed),
        Err(e) => return Err(e),
    };
    // Euclid in `X_1` over QQ(X_2..X_n)
    let others: Vec<usize> = (1..n).collect();
    let (uring, umap) = new_ring.promote(&others);
    let g1u = g1.promote_into(&uring, &others, &umap);
    let g2u = g2.promote_into(&uring, &others, &umap);
    let lc = g1u.coeffs_in(0)[w1.degree as usize].constant_coeff();
    let lc_inv = lc.inv().expect("regular leading coefficient");
    let p1u = g1u.scale(&lc_inv);
    let eu = extended_euclid(&p1u, &g2u, 0)?;
    if eu.gcd.degree_in(0) > 0 {
        return Err(WeierError::CommonFactor(names[0].clone()));
    }
    let gcd_c = eu.gcd.constant_coeff();
    let (num_prim, _) = gcd_c.numer().primitive();
    let rest_ring = Ring::new(&names[1..], &[] as &[String])?;
    let r2 = qpoly_to_poly(&num_prim, &rest_ring);
    let scale = Coeff::from_qpoly(num_prim.clone()).div(&gcd_c).expect("nonzero gcd");
    let scale_p = Poly::constant(&uring, scale.clone());
    let a_u = &(&eu.a * &scale_p) * &Poly::constant(&uring, lc_inv);
    let b_u = &eu.b * &scale_p;
    let r2_u = Poly::constant(&uring, Coeff::from_qpoly(num_prim));
    debug_assert!(&(&a_u * &g1u) + &(&b_u * &g2u) == r2_u);

    let w2 = (0..rest_ring.nvars()).find_map(|v| weierstrass_ready(&r2, v).ok());
    let Some(w2) = w2 else {
        return Ok(if second.is_identity() { Attempt::NeedSecond } else { Attempt::Failed });
    };

    // express a, b with as many variables as the denominators allow
    let in_den = |p: &Poly, i: usize| p.terms().iter().any(|(_, c)| c.denom().degree_in(i) > 0);
    let stay: Vec<usize> = (0..n - 1).filter(|&i| in_den(&a_u, i) || in_den(&b_u, i)).collect();
    let moved: Vec<usize> = (1..n).filter(|&v| !stay.contains(&(v - 1))).collect();
    let params: Vec<String> = stay.iter().map(|&i| names[i + 1].clone()).collect();
    let vars: Vec<String> = std::iter::once(names[0].clone()).chain(moved.iter().map(|&v| names[v].clone())).collect();
    let bring = Ring::new(&vars, &params)?;
    let to_var: Vec<Option<usize>> = (0..n - 1)
        .map(|i| moved.iter().position(|&v| v == i + 1).map(|k| k + 1))
        .collect();
    let dm = |p: &Poly| demote(p, &bring, &[0], &to_var).expect("denominators avoid moved variables");
    let (a, b) = (dm(&a_u), dm(&b_u));
    let (f1_b, f2_b, r2_b) = (dm(&g1u), dm(&g2u), dm(&r2_u));

    let resultant_unit = eu.resultant.div(&gcd_c).expect("nonzero gcd");
    let gamma = w2.degree + 1;
    let (c1, c2) = recipe_constants(w1.degree, w2.degree, gamma);
    Ok(Attempt::Done(Box::new(CurrentRecipe {
        change,
        second_change: second.clone(),
        ring: new_ring,
        f1: g1,
        f2: g2,
        w1,
        rest_ring,
        r2,
        w2,
        bezout_ring: bring,
        a,
        b,
        f1_b,
        f2_b,
        r2_b,
        gamma,
        c1,
        c2,
        gcd: eu.gcd,
        gcd_scale: scale,
        resultant_unit,
        attempts,
    })))
}

/// Whether `x / y` is a nonzero element of the coefficient field, i.e. the
/// two polynomials agree up to a nonzero fraction-field unit.
pub fn equal_up_to_unit(x: &Poly, y: &Poly) -> Option<Coeff> {
    if x.is_zero() || y.is_zero() || x.num_terms() != y.num_terms() {
        return None;
    }
    let u = x.terms()[0].1.div(&y.terms()[0].1)?;
    (y.scale(&u) == *x).then_some(u)
}

#[cfg(test)]
mod tests;

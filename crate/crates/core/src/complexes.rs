//! Chain complexes of free modules: Koszul complexes, free resolutions by
//! iterated syzygies, exactness checks and the Cohen-Macaulay test.

use serde::Serialize;
use thiserror::Error;

use crate::groebner::{buchberger, ideal_codim, normal_form, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::modules::{syzygy_matrix, Lifter, ModuleError, PolyMatrix};
use crate::poly::Poly;
use crate::ring::RingRef;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("Koszul complex needs nonzero entries; entry {0} is zero")]
    ZeroEntry(usize),
    #[error("Koszul complex of an empty tuple")]
    EmptyTuple,
    #[error("differentials {0} and {1} do not compose")]
    Shape(usize, usize),
    #[error("cannot resolve the unit ideal")]
    UnitIdeal,
    #[error("cannot resolve the zero ideal")]
    ZeroIdeal,
    #[error("resolution did not terminate within {0} steps")]
    CapExceeded(usize),
}

/// `E_0 <- E_1 <- ... <- E_l` with `diffs[k-1] = d_k : E_k -> E_{k-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    ring: RingRef,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
}

impl ChainComplex {
    pub fn new(ring: &RingRef, diffs: Vec<PolyMatrix>) -> Result<Self, ComplexError> {
        for k in 1..diffs.len() {
            if diffs[k - 1].cols() != diffs[k].rows() {
                return Err(ComplexError::Shape(k, k + 1));
            }
        }
        let mut ranks = vec![diffs.first().map_or(1, |d| d.rows())];
        ranks.extend(diffs.iter().map(|d| d.cols()));
        Ok(ChainComplex { ring: ring.clone(), ranks, diffs })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// `rank E_0, rank E_1, ...`
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// `d_k` for `1 <= k <= length`.
    pub fn d(&self, k: usize) -> &PolyMatrix {
        &self.diffs[k - 1]
    }

    pub fn to_report(&self) -> ComplexReport {
        ComplexReport {
            ranks: self.ranks.clone(),
            differentials: self.diffs.iter().map(PolyMatrix::to_text).collect(),
        }
    }
}

/// JSON view: ranks and the differentials as `matrix r c` text blocks.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComplexReport {
    pub ranks: Vec<usize>,
    pub differentials: Vec<String>,
}

/// Koszul complex of `f_1, ..., f_p`; `K_k` has basis the `k`-subsets of
/// `0..p` in lexicographic order.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    complex: ChainComplex,
    f: Vec<Poly>,
    bases: Vec<Vec<Vec<usize>>>,
}

fn subsets(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, p: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            go(i + 1, p, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, p, k, &mut Vec::new(), &mut out);
    out
}

impl KoszulComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn tuple(&self) -> &[Poly] {
        &self.f
    }

    pub fn p(&self) -> usize {
        self.f.len()
    }

    /// Basis of `K_k`, as index subsets.
    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        &self.bases[k]
    }

    pub fn psi(&self, k: usize) -> &PolyMatrix {
        self.complex.d(k)
    }
}

/// `ψ_k(e_I) = Σ_j (-1)^j f_{I_j} e_{I \ I_j}` (positions `j` from zero).
pub fn koszul_complex(f: &[Poly]) -> Result<KoszulComplex, ComplexError> {
    let Some(first) = f.first() else {
        return Err(ComplexError::EmptyTuple);
    };
    let ring = first.ring().clone();
    if let Some(i) = f.iter().position(Poly::is_zero) {
        return Err(ComplexError::ZeroEntry(i));
    }
    for g in f {
        first.check_ring(g).map_err(ModuleError::from)?;
    }
    let p = f.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=p).map(|k| subsets(p, k)).collect();
    let mut diffs = Vec::with_capacity(p);
    for k in 1..=p {
        let (src, dst) = (&bases[k], &bases[k - 1]);
        let mut m = PolyMatrix::zeros(&ring, dst.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for (j, &i) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
                let row = dst.binary_search(&rest).expect("subset present");
                let v = if j % 2 == 0 { f[i].clone() } else { -&f[i] };
                m.set(row, col, v);
            }
        }
        diffs.push(m);
    }
    for k in 1..p {
        let prod = diffs[k - 1].try_mul(&diffs[k])?;
        assert!(prod.is_zero(), "Koszul differentials compose to zero");
    }
    Ok(KoszulComplex { complex: ChainComplex::new(&ring, diffs)?, f: f.to_vec(), bases })
}

/// Resolution of `R/J` with `rank E_0 = 1` and `d_1` a generator row of `J`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    complex: ChainComplex,
    minimal: bool,
    ideal: Ideal,
}

impl FreeResolution {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ranks(&self) -> &[usize] {
        self.complex.ranks()
    }

    pub fn length(&self) -> usize {
        self.complex.length()
    }

    pub fn phi(&self, k: usize) -> &PolyMatrix {
        self.complex.d(k)
    }
}

fn has_unit_entries(diffs: &[PolyMatrix]) -> bool {
    diffs
        .iter()
        .any(|d| d.entries().iter().any(|p| !p.constant_coeff().is_zero()))
}

fn find_constant_pivot(diffs: &[PolyMatrix]) -> Option<(usize, usize, usize)> {
    for (k, d) in diffs.iter().enumerate().skip(1) {
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let e = d.get(i, j);
                if !e.is_zero() && e.is_constant() {
                    return Some((k, i, j));
                }
            }
        }
    }
    None
}

/// `a - q b` with the remainder a nonzero constant, if division finds one.
fn constant_remainder(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_zero() || b.is_zero() || b.is_constant() {
        return None;
    }
    let d = normal_form(a, std::slice::from_ref(b), &MonomialOrder::grevlex()).ok()?;
    (d.remainder.is_constant() && !d.remainder.is_zero()).then(|| d.quotients[0].clone())
}

/// When no entry is constant, look for a polynomial elementary operation
/// that creates one, e.g. the column `(x - 1, -x)`. Returns the new pivot.
fn unlock_pivot(diffs: &mut [PolyMatrix]) -> Option<(usize, usize, usize)> {
    for k in 1..diffs.len() {
        let (rows, cols) = (diffs[k].rows(), diffs[k].cols());
        // row i -= q row m; the basis change moves to column m of d_{k-1}
        for j in 0..cols {
            for i in 0..rows {
                for m in (0..rows).filter(|&m| m != i) {
                    let Some(q) = constant_remainder(diffs[k].get(i, j), diffs[k].get(m, j)) else {
                        continue;
                    };
                    for l in 0..cols {
                        let v = diffs[k].get(i, l) - &(&q * diffs[k].get(m, l));
                        diffs[k].set(i, l, v);
                    }
                    let prev = &mut diffs[k - 1];
                    for t in 0..prev.rows() {
                        let v = prev.get(t, m) + &(&q * prev.get(t, i));
                        prev.set(t, m, v);
                    }
                    return Some((k, i, j));
                }
            }
        }
        // column j -= q column l; the basis change moves to row l of d_{k+1}
        for i in 0..rows {
            for j in 0..cols {
                for l in (0..cols).filter(|&l| l != j) {
                    let Some(q) = constant_remainder(diffs[k].get(i, j), diffs[k].get(i, l)) else {
                        continue;
                    };
                    for m in 0..rows {
                        let v = diffs[k].get(m, j) - &(&q * diffs[k].get(m, l));
                        diffs[k].set(m, j, v);
                    }
                    if let Some(next) = diffs.get_mut(k + 1) {
                        for t in 0..next.cols() {
                            let v = next.get(l, t) + &(&q * next.get(j, t));
                            next.set(l, t, v);
                        }
                    }
                    return Some((k, i, j));
                }
            }
        }
    }
    None
}

/// Split off trivial summands `R --c--> R` with `c` a nonzero constant,
/// creating such entries by elementary operations where division allows.
fn minimalize(diffs: &mut Vec<PolyMatrix>) {
    while let Some((k, i, j)) = find_constant_pivot(diffs).or_else(|| unlock_pivot(diffs)) {
        let ring = diffs[k].ring().clone();
        let c = diffs[k].get(i, j).constant_coeff();
        let cinv = Poly::constant(&ring, c.inv().expect("nonzero"));
        // clear row i of d_k, compensating in d_{k+1}
        let (rows, cols) = (diffs[k].rows(), diffs[k].cols());
        for l in (0..cols).filter(|&l| l != j) {
            let r = diffs[k].get(i, l) * &cinv;
            if r.is_zero() {
                continue;
            }
            for m in 0..rows {
                let v = diffs[k].get(m, l) - &(&r * diffs[k].get(m, j));
                diffs[k].set(m, l, v);
            }
            if let Some(next) = diffs.get_mut(k + 1) {
                for t in 0..next.cols() {
                    let v = next.get(j, t) + &(&r * next.get(l, t));
                    next.set(j, t, v);
                }
            }
        }
        // clear column j of d_k, compensating in d_{k-1}
        for m in (0..rows).filter(|&m| m != i) {
            let s = diffs[k].get(m, j) * &cinv;
            if s.is_zero() {
                continue;
            }
            for l in 0..cols {
                let v = diffs[k].get(m, l) - &(&s * diffs[k].get(i, l));
                diffs[k].set(m, l, v);
            }
            let prev = &mut diffs[k - 1];
            for t in 0..prev.rows() {
                let v = prev.get(t, i) + &(&s * prev.get(t, m));
                prev.set(t, i, v);
            }
        }
        diffs[k] = diffs[k].without(Some(i), Some(j));
        diffs[k - 1] = diffs[k - 1].without(None, Some(i));
        if k + 1 < diffs.len() {
            diffs[k + 1] = diffs[k + 1].without(Some(j), None);
        }
        while diffs.last().is_some_and(|d| d.cols() == 0) {
            diffs.pop();
        }
    }
}

/// Iterated syzygies of `first`; `None` once more than `cap` maps pile up.
/// With `tidy`, constant pivots are split off after every step.
fn syzygy_chain(first: PolyMatrix, cap: usize, tidy: bool) -> Option<Vec<PolyMatrix>> {
    let mut diffs = vec![first];
    loop {
        let syz = syzygy_matrix(diffs.last().expect("nonempty"));
        if syz.cols() == 0 {
            return Some(diffs);
        }
        diffs.push(syz);
        if tidy {
            minimalize(&mut diffs);
        }
        if diffs.len() > cap {
            minimalize(&mut diffs);
            if diffs.len() > cap {
                return None;
            }
        }
    }
}

/// Resolve through the homogenization: the minimal graded resolution of
/// the homogenized ideal is finite of length at most `n`, and setting the
/// extra variable to one is exact.
fn homogenized_chain(j: &Ideal) -> Option<Vec<PolyMatrix>> {
    let ring = j.ring();
    let hring = ring.with_leading_var(&ring.fresh_name("h"));
    let homog = |p: &Poly| {
        let d = p.total_degree();
        Poly::from_terms(
            &hring,
            p.terms().iter().map(|(m, c)| {
                let mut e = vec![d - m.degree()];
                e.extend_from_slice(m.exps());
                (Monomial::from_exps(e), c.clone())
            }),
        )
    };
    let dehomog = |p: &Poly| {
        Poly::from_terms(ring, p.terms().iter().map(|(m, c)| (Monomial::from_exps(m.exps()[1..].to_vec()), c.clone())))
    };
    let gb = buchberger(&j.nonzero_gens(), &MonomialOrder::grevlex()).ok()?;
    let first = PolyMatrix::row(&hring, gb.iter().map(homog).collect());
    let diffs = syzygy_chain(first, ring.nvars() + 1, true)?;
    Some(
        diffs
            .iter()
            .map(|d| {
                let data = d.entries().iter().map(dehomog).collect();
                PolyMatrix::new(ring, d.rows(), d.cols(), data).expect("same shape")
            })
            .collect(),
    )
}

/// Free resolution of `R/J` by iterated syzygies, optionally with constant
/// pivots split off.
///
/// Syzygies of inhomogeneous generators can produce a split tail that never
/// ends; in that case the resolution is rebuilt from the homogenization of
/// a Groebner basis, so `d_1` lists that basis instead of the given
/// generators.
pub fn free_resolution(j: &Ideal, minimalize_flag: bool) -> Result<FreeResolution, ComplexError> {
    if j.is_zero() {
        return Err(ComplexError::ZeroIdeal);
    }
    if j.is_unit() {
        return Err(ComplexError::UnitIdeal);
    }
    let ring = j.ring().clone();
    let cap = ring.nvars();
    let first = PolyMatrix::row(&ring, j.nonzero_gens());
    let mut diffs = syzygy_chain(first, cap, false)
        .or_else(|| homogenized_chain(j))
        .ok_or(ComplexError::CapExceeded(cap))?;
    if minimalize_flag {
        minimalize(&mut diffs);
    }
    if diffs.len() > cap {
        return Err(ComplexError::CapExceeded(cap));
    }
    let minimal = !has_unit_entries(&diffs);
    Ok(FreeResolution { complex: ChainComplex::new(&ring, diffs)?, minimal, ideal: j.clone() })
}

/// One degree of an exactness check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: usize,
    pub exact: bool,
    /// `"composition"` if `d_k d_{k+1} != 0`, `"kernel"` if some kernel
    /// element is not a boundary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl ExactnessReport {
    pub fn first_failure(&self) -> Option<&DegreeCheck> {
        self.degrees.iter().find(|d| !d.exact)
    }
}

/// Check `ker d_k = im d_{k+1}` for every `k >= 1` by double inclusion.
pub fn verify_exactness(c: &ChainComplex) -> ExactnessReport {
    let ring = c.ring();
    let mut degrees = Vec::new();
    for k in 1..=c.length() {
        let dk = c.d(k);
        let next = if k < c.length() {
            c.d(k + 1).clone()
        } else {
            PolyMatrix::zeros(ring, dk.cols(), 0)
        };
        let mut check = DegreeCheck { degree: k, exact: true, failure: None, witness: None };
        let prod = dk.try_mul(&next).expect("composable shapes");
        if let Some(t) = (0..prod.cols()).find(|&t| !prod.column(t).is_zero()) {
            check.exact = false;
            check.failure = Some("composition".into());
            check.witness = Some(next.column(t).to_strings());
            degrees.push(check);
            continue;
        }
        let kernel = syzygy_matrix(dk);
        let lifter = Lifter::new(&next);
        if let Some(v) = kernel.columns().into_iter().find(|v| !lifter.contains(v)) {
            check.exact = false;
            check.failure = Some("kernel".into());
            check.witness = Some(v.to_strings());
        }
        degrees.push(check);
    }
    ExactnessReport { exact: degrees.iter().all(|d| d.exact), degrees }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CmReport {
    pub cohen_macaulay: bool,
    pub codim: usize,
    pub length: usize,
}

/// `R/J` is Cohen-Macaulay iff its minimal resolution has length `codim J`.
pub fn is_cohen_macaulay(j: &Ideal) -> Result<CmReport, ComplexError> {
    let res = free_resolution(j, true)?;
    let codim = ideal_codim(j);
    Ok(CmReport { cohen_macaulay: res.length() == codim, codim, length: res.length() })
}

//! Free modules over the polynomial ring: matrices, module Gröbner bases
//! (position over grevlex), Schreyer syzygies and lifting through a matrix.

use std::fmt;

use thiserror::Error;

use crate::coeff::Coeff;
use crate::error::PolyError;
use crate::groebner::engine::{Ctx, Elem, GbInput, Term};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::RingRef;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuleError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vector is not in the image; nonzero remainder [{}]", .remainder.join(", "))]
    NotInImage { remainder: Vec<String> },
}

/// Column vector in a free module of finite rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement(pub Vec<Poly>);

impl ModuleElement {
    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        ModuleElement(vec![Poly::zero(ring); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        ModuleElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ModuleElement(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, p: &Poly) -> Self {
        ModuleElement(self.0.iter().map(|a| a * p).collect())
    }

    pub fn max_degree(&self) -> u32 {
        self.0.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|p| p.to_string()).collect()
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<Poly>> for ModuleElement {
    fn from(v: Vec<Poly>) -> Self {
        ModuleElement(v)
    }
}

/// Dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self, ModuleError> {
        if data.len() != rows * cols {
            return Err(ModuleError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        let probe = Poly::zero(ring);
        for p in &data {
            probe.check_ring(p)?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, data })
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Poly>>) -> Result<Self, ModuleError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ModuleError::Shape("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ring: &RingRef, rows: usize, cols: &[ModuleElement]) -> Result<Self, ModuleError> {
        if cols.iter().any(|c| c.rank() != rows) {
            return Err(ModuleError::Shape("column length differs from row count".into()));
        }
        let data = (0..rows)
            .flat_map(|i| cols.iter().map(move |c| c.0[i].clone()))
            .collect();
        Self::new(ring, rows, cols.len(), data)
    }

    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    /// `1 x n` matrix with the given entries.
    pub fn row(ring: &RingRef, entries: Vec<Poly>) -> Self {
        let n = entries.len();
        PolyMatrix::new(ring, 1, n, entries).expect("consistent shape")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ModuleElement {
        ModuleElement((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<ModuleElement> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_entries(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn try_mul(&self, o: &PolyMatrix) -> Result<PolyMatrix, ModuleError> {
        if self.cols != o.rows {
            return Err(ModuleError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Poly::zero(&self.ring).check_ring(&Poly::zero(&o.ring))?;
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut s = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        if v.rank() != self.cols {
            return Err(ModuleError::Shape(format!("vector of length {} for {} columns", v.rank(), self.cols)));
        }
        Ok(ModuleElement(
            (0..self.rows)
                .map(|i| {
                    let mut s = Poly::zero(&self.ring);
                    for (a, b) in self.row_entries(i).iter().zip(&v.0) {
                        if !a.is_zero() && !b.is_zero() {
                            s = &s + &(a * b);
                        }
                    }
                    s
                })
                .collect(),
        ))
    }

    pub fn sub(&self, o: &PolyMatrix) -> Result<PolyMatrix, ModuleError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(ModuleError::Shape("difference of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        PolyMatrix::new(&self.ring, self.rows, self.cols, data)
    }

    pub fn without(&self, row: Option<usize>, col: Option<usize>) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != col).collect();
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Poly, ModuleError> {
        if self.rows != self.cols {
            return Err(ModuleError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row_entries(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = Poly::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row_entries(i).iter().map(|p| p.to_string()).collect())
            .collect()
    }

    /// The `matrix r c` text block (without a ring header).
    pub fn to_text(&self) -> String {
        let mut s = format!("matrix {} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row_entries(i).iter().map(|p| p.to_string()).collect();
            s.push_str(&row.join("; "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

/// Module Gröbner basis of a list of columns, with each basis element's
/// representation in terms of those columns.
pub struct ModuleGb {
    ring: RingRef,
    rank: usize,
    ngens: usize,
    ctx: Ctx,
    basis: Vec<Elem>,
}

impl ModuleGb {
    pub fn new(ring: &RingRef, rank: usize, gens: &[ModuleElement]) -> Self {
        let ctx = Ctx::new(MonomialOrder::grevlex());
        let basis = ctx.groebner(GbInput {
            ring,
            gens: gens.iter().map(|g| ctx.from_polys(&g.0)).collect(),
            track: true,
            rank,
        });
        ModuleGb { ring: ring.clone(), rank, ngens: gens.len(), ctx, basis }
    }

    pub fn of_matrix(m: &PolyMatrix) -> Self {
        Self::new(m.ring(), m.rows(), &m.columns())
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> Vec<ModuleElement> {
        self.basis
            .iter()
            .map(|e| ModuleElement(self.ctx.to_polys(&e.v, &self.ring, self.rank)))
            .collect()
    }

    /// Representation of basis element `k` in the generators.
    fn rep(&self, k: usize) -> &[Poly] {
        self.basis[k].rep.as_deref().expect("tracked")
    }

    /// Divide by the basis: quotients (one per basis element) and remainder.
    fn divide_vec(&self, v: Vec<Term>) -> (Vec<Poly>, ModuleElement) {
        let refs: Vec<&[Term]> = self.basis.iter().map(|e| &e.v[..]).collect();
        let (quots, rem) = self.ctx.divide(v, &refs);
        (
            quots.into_iter().map(|q| Poly::from_terms(&self.ring, q)).collect(),
            ModuleElement(self.ctx.to_polys(&rem, &self.ring, self.rank)),
        )
    }

    pub fn reduce(&self, b: &ModuleElement) -> ModuleElement {
        self.divide_vec(self.ctx.from_polys(&b.0)).1
    }

    pub fn contains(&self, b: &ModuleElement) -> bool {
        self.reduce(b).is_zero()
    }

    /// `Σ q_k rep_k` in generator coordinates.
    fn combine(&self, quots: &[Poly]) -> ModuleElement {
        let mut out = vec![Poly::zero(&self.ring); self.ngens];
        for (k, q) in quots.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.rep(k)) {
                if !r.is_zero() {
                    *o = &*o + &(q * r);
                }
            }
        }
        ModuleElement(out)
    }

    /// Coordinates `x` with `Σ x_i gen_i = b`, if `b` is in the span.
    pub fn lift(&self, b: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        if b.rank() != self.rank {
            return Err(ModuleError::Shape(format!("vector of length {} in rank {}", b.rank(), self.rank)));
        }
        let (quots, rem) = self.divide_vec(self.ctx.from_polys(&b.0));
        if !rem.is_zero() {
            return Err(ModuleError::NotInImage { remainder: rem.to_strings() });
        }
        Ok(self.combine(&quots))
    }

    /// Generators of the syzygies of the input generators (Schreyer).
    fn schreyer_syzygies(&self, gens: &[ModuleElement]) -> Vec<ModuleElement> {
        let mut out = Vec::new();
        let one = Coeff::one();
        for b in 0..self.basis.len() {
            for a in 0..b {
                let (la, lb) = (&self.basis[a].v[0], &self.basis[b].v[0]);
                if la.pos != lb.pos {
                    continue;
                }
                let l = la.mon.lcm(&lb.mon);
                let ma = l.checked_div(&la.mon).expect("lcm");
                let mb = l.checked_div(&lb.mon).expect("lcm");
                let sa: Vec<Term> = self.basis[a]
                    .v
                    .iter()
                    .map(|t| Term { pos: t.pos, mon: t.mon.mul(&ma), c: t.c.clone() })
                    .collect();
                let s = self.ctx.sub_scaled(&sa, &one, &mb, &self.basis[b].v);
                let (mut quots, rem) = self.divide_vec(s);
                debug_assert!(rem.is_zero(), "S-vector of a Gröbner basis reduces to zero");
                quots[a] = &quots[a] - &Poly::term(&self.ring, ma, Coeff::one());
                quots[b] = &quots[b] + &Poly::term(&self.ring, mb, Coeff::one());
                // Σ q_k g_k - ma g_a + mb g_b = 0, negate for a conventional sign
                out.push(self.combine(&quots).scale(&Poly::int(&self.ring, -1)));
            }
        }
        for (i, g) in gens.iter().enumerate() {
            let (quots, rem) = self.divide_vec(self.ctx.from_polys(&g.0));
            debug_assert!(rem.is_zero());
            let mut col = self.combine(&quots).scale(&Poly::int(&self.ring, -1));
            col.0[i] = &col.0[i] + &Poly::one(&self.ring);
            out.push(col);
        }
        out
    }
}

fn normalize_column(c: &ModuleElement) -> ModuleElement {
    match c.0.iter().find(|p| !p.is_zero()) {
        Some(p) => {
            let inv = p.terms()[0].1.inv().expect("nonzero");
            ModuleElement(c.0.iter().map(|q| q.scale(&inv)).collect())
        }
        None => c.clone(),
    }
}

/// Drop zero and redundant columns: keeps a generating set of the same
/// module in which no column lies in the span of the others.
pub fn prune_generators(ring: &RingRef, rank: usize, cols: Vec<ModuleElement>) -> Vec<ModuleElement> {
    let mut cand: Vec<ModuleElement> = Vec::new();
    for c in cols {
        if c.is_zero() {
            continue;
        }
        let n = normalize_column(&c);
        if !cand.iter().any(|d| normalize_column(d) == n) {
            cand.push(n);
        }
    }
    cand.sort_by_key(|c| (c.max_degree(), c.0.iter().map(Poly::num_terms).sum::<usize>()));
    let mut kept: Vec<ModuleElement> = Vec::new();
    for c in cand {
        if kept.is_empty() || !ModuleGb::new(ring, rank, &kept).contains(&c) {
            kept.push(c);
        }
    }
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        if kept.len() < 2 {
            break;
        }
        let others: Vec<ModuleElement> =
            kept.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, c)| c.clone()).collect();
        if ModuleGb::new(ring, rank, &others).contains(&kept[i]) {
            kept.remove(i);
        }
    }
    kept
}

/// Matrix whose columns generate `ker M` (Schreyer's construction from a
/// module Gröbner basis of the columns, then pruned).
pub fn syzygy_matrix(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring();
    let gens = m.columns();
    if gens.is_empty() {
        return PolyMatrix::zeros(ring, 0, 0);
    }
    let gb = ModuleGb::new(ring, m.rows(), &gens);
    let syz = gb.schreyer_syzygies(&gens);
    let kept = prune_generators(ring, m.cols(), syz);
    PolyMatrix::from_columns(ring, m.cols(), &kept).expect("consistent shapes")
}

/// Solve `M x = b` exactly, or report the nonzero remainder of `b`.
pub fn lift_through(b: &ModuleElement, m: &PolyMatrix) -> Result<ModuleElement, ModuleError> {
    Lifter::new(m).lift(b)
}

/// Repeated lifting through a fixed matrix.
pub struct Lifter<'a> {
    m: &'a PolyMatrix,
    gb: ModuleGb,
}

impl<'a> Lifter<'a> {
    pub fn new(m: &'a PolyMatrix) -> Self {
        Lifter { m, gb: ModuleGb::of_matrix(m) }
    }

    pub fn lift(&self, b: &ModuleElement) -> Result<ModuleElement, ModuleError> {
        if b.rank() != self.m.rows() {
            return Err(ModuleError::Shape(format!("vector of length {} for {} rows", b.rank(), self.m.rows())));
        }
        if self.m.cols() == 0 {
            return if b.is_zero() {
                Ok(ModuleElement(Vec::new()))
            } else {
                Err(ModuleError::NotInImage { remainder: b.to_strings() })
            };
        }
        let x = self.gb.lift(b)?;
        let back = self.m.mul_vec(&x)?;
        assert!(back == *b, "lift does not reproduce the target");
        Ok(x)
    }

    pub fn contains(&self, b: &ModuleElement) -> bool {
        if self.m.cols() == 0 {
            return b.is_zero();
        }
        self.gb.contains(b)
    }
}

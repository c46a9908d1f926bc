//! Division, Buchberger's algorithm, and ideal operations.

pub(crate) mod engine;

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::error::PolyError;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::RingRef;
use engine::{Ctx, GbInput};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("empty generator list")]
    Empty,
    #[error("colon by the zero ideal")]
    ZeroDivisorIdeal,
    #[error("inexact division while computing a colon: {0}")]
    InexactColon(String),
    #[error("elimination of {k} variables in a ring with {n}")]
    TooManyEliminated { k: usize, n: usize },
}

/// Quotients and remainder of a multivariate division.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

fn check_rings(ps: &[Poly]) -> Result<(), PolyError> {
    if let Some(first) = ps.first() {
        for p in &ps[1..] {
            first.check_ring(p)?;
        }
    }
    Ok(())
}

/// Divide `f` by `basis` under `order`: `f = Σ q_i g_i + r`, and no term of
/// `r` is divisible by a leading term of the basis.
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Result<DivisionResult, GroebnerError> {
    if basis.is_empty() {
        return Err(GroebnerError::Empty);
    }
    for g in basis {
        f.check_ring(g)?;
    }
    let ctx = Ctx::new(order.clone());
    let vs: Vec<_> = basis.iter().map(|g| ctx.from_poly(g)).collect();
    let refs: Vec<&[engine::Term]> = vs.iter().map(|v| &v[..]).collect();
    let (quots, rem) = ctx.divide(ctx.from_poly(f), &refs);
    Ok(DivisionResult {
        quotients: quots.into_iter().map(|q| Poly::from_terms(f.ring(), q)).collect(),
        remainder: ctx.to_poly(&rem, f.ring()),
    })
}

/// Remainder only; for use against a Gröbner basis (possibly empty).
pub fn reduce(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    if basis.is_empty() {
        return f.clone();
    }
    normal_form(f, basis, order).expect("matching rings").remainder
}

/// Reduced Gröbner basis, sorted ascending by leading monomial. Zero
/// generators are discarded; all-zero input gives the empty basis.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>, GroebnerError> {
    let Some(first) = gens.first() else {
        return Err(GroebnerError::Empty);
    };
    check_rings(gens)?;
    let ring = first.ring().clone();
    let ctx = Ctx::new(order.clone());
    let out = ctx.groebner(GbInput {
        ring: &ring,
        gens: gens.iter().map(|g| ctx.from_poly(g)).collect(),
        track: false,
        rank: 1,
    });
    Ok(out.iter().map(|e| ctx.to_poly(&e.v, &ring)).collect())
}

/// Leading monomial of `p` under `order`.
pub fn leading_monomial(p: &Poly, order: &MonomialOrder) -> Option<Monomial> {
    p.leading(order).map(|(m, _)| m.clone())
}

/// Ideal in a polynomial ring, with a lazily computed grevlex basis.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Self, PolyError> {
        let probe = Poly::zero(ring);
        for g in &gens {
            probe.check_ring(g)?;
        }
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    /// Panics on ring mismatch.
    pub fn from_gens(gens: Vec<Poly>) -> Self {
        let ring = gens.first().expect("at least one generator").ring().clone();
        Self::new(&ring, gens).expect("generators share a ring")
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal::new(ring, vec![Poly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Nonzero generators.
    pub fn nonzero_gens(&self) -> Vec<Poly> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// Reduced grevlex Gröbner basis (cached).
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            let nz = self.nonzero_gens();
            if nz.is_empty() {
                Vec::new()
            } else {
                buchberger(&nz, &MonomialOrder::grevlex()).expect("same ring")
            }
        })
    }

    pub fn groebner_in(&self, order: &MonomialOrder) -> Vec<Poly> {
        if *order == MonomialOrder::grevlex() {
            return self.groebner().to_vec();
        }
        let nz = self.nonzero_gens();
        if nz.is_empty() {
            Vec::new()
        } else {
            buchberger(&nz, order).expect("same ring")
        }
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant())
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        reduce(f, self.groebner(), &MonomialOrder::grevlex())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality of ideals by double inclusion.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Ideal generated by this ideal's generators plus `extra`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal { ring: self.ring.clone(), gens: g, gb: OnceLock::new() }
    }

    /// Generators printed in the canonical grammar.
    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Reduced grevlex basis printed in the canonical grammar.
    pub fn gb_strings(&self) -> Vec<String> {
        self.groebner().iter().map(|g| g.to_string()).collect()
    }
}

/// `g ∈ I` by reduction against the reduced Gröbner basis of `I`.
pub fn ideal_member(g: &Poly, ideal: &Ideal) -> Result<bool, GroebnerError> {
    Poly::zero(ideal.ring()).check_ring(g)?;
    Ok(ideal.contains(g))
}

/// `I ∩ Q[x_{k+1}, …, x_n]` via a block elimination order.
pub fn eliminate(ideal: &Ideal, k: usize) -> Result<Ideal, GroebnerError> {
    let n = ideal.ring().nvars();
    if k > n {
        return Err(GroebnerError::TooManyEliminated { k, n });
    }
    let gb = ideal.groebner_in(&MonomialOrder::block(k));
    let kept: Vec<Poly> = gb.into_iter().filter(|g| (0..k).all(|i| !g.involves(i))).collect();
    Ok(Ideal::new(ideal.ring(), kept)?)
}

/// `I ∩ J` by eliminating `t` from `t·I + (1-t)·J`.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, GroebnerError> {
    Poly::zero(a.ring()).check_ring(&Poly::zero(b.ring()))?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let t_name = ring.fresh_name("t");
    let ext = ring.with_leading_var(&t_name);
    let lift = |p: &Poly| -> Poly {
        let terms = p.terms().iter().map(|(m, c)| {
            let mut e = vec![0];
            e.extend_from_slice(m.exps());
            (Monomial::from_exps(e), c.clone())
        });
        Poly::from_terms(&ext, terms)
    };
    let t = Poly::var(&ext, 0);
    let one_minus_t = &Poly::one(&ext) - &t;
    let mut gens: Vec<Poly> = a.nonzero_gens().iter().map(|g| &t * &lift(g)).collect();
    gens.extend(b.nonzero_gens().iter().map(|g| &one_minus_t * &lift(g)));
    let elim = eliminate(&Ideal::new(&ext, gens)?, 1)?;
    let back: Vec<Poly> = elim
        .gens()
        .iter()
        .map(|p| {
            let terms = p.terms().iter().map(|(m, c)| (Monomial::from_exps(m.exps()[1..].to_vec()), c.clone()));
            Poly::from_terms(ring, terms)
        })
        .collect();
    let gb = if back.is_empty() { back } else { buchberger(&back, &MonomialOrder::grevlex())? };
    Ok(Ideal::new(ring, gb)?)
}

/// `I : J = ∩_g (I ∩ (g)) / g` over the generators `g` of `J`.
pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Result<Ideal, GroebnerError> {
    Poly::zero(i.ring()).check_ring(&Poly::zero(j.ring()))?;
    let ring = i.ring();
    let jg = j.nonzero_gens();
    if jg.is_empty() {
        return Err(GroebnerError::ZeroDivisorIdeal);
    }
    let mut acc: Option<Ideal> = None;
    for g in &jg {
        let part = colon_by(i, g)?;
        acc = Some(match acc {
            None => part,
            Some(a) => ideal_intersect(&a, &part)?,
        });
    }
    let res = acc.expect("nonempty");
    let gens = res.nonzero_gens();
    let gb = if gens.is_empty() { gens } else { buchberger(&gens, &MonomialOrder::grevlex())? };
    Ok(Ideal::new(ring, gb)?)
}

fn colon_by(i: &Ideal, g: &Poly) -> Result<Ideal, GroebnerError> {
    let ring = i.ring();
    let principal = Ideal::new(ring, vec![g.clone()])?;
    let cap = ideal_intersect(i, &principal)?;
    let quots = cap
        .gens()
        .iter()
        .map(|h| h.div_exact(g).ok_or_else(|| GroebnerError::InexactColon(format!("({h}) / ({g})"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ring, quots)?)
}

/// Codimension from the leading-term ideal: `n - dim`, where `dim` is the
/// size of a largest variable subset containing no leading monomial's
/// support. The unit ideal reports `n + 1`, the zero ideal `0`.
pub fn ideal_codim(ideal: &Ideal) -> usize {
    let n = ideal.ring().nvars();
    let gb = ideal.groebner();
    if gb.is_empty() {
        return 0;
    }
    if gb.iter().any(|g| g.is_constant()) {
        return n + 1;
    }
    let order = MonomialOrder::grevlex();
    let supports: Vec<u64> = gb
        .iter()
        .map(|g| {
            let m = leading_monomial(g, &order).expect("nonzero");
            m.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |s, (i, _)| s | (1 << i))
        })
        .collect();
    assert!(n < 64, "too many variables for subset enumeration");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    n - best
}

/// Serializable snapshot of an ideal.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealReport {
    pub ring: String,
    pub generators: Vec<String>,
    pub groebner_basis: Vec<String>,
}

impl From<&Ideal> for IdealReport {
    fn from(i: &Ideal) -> Self {
        IdealReport { ring: i.ring().to_string(), generators: i.gen_strings(), groebner_basis: i.gb_strings() }
    }
}

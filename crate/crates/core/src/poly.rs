//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::PolyError;
use crate::monomial::{grevlex_cmp, Monomial, MonomialOrder};
use crate::qpoly::QPoly;
use crate::ring::RingRef;

/// A polynomial in `ring`. Terms are stored with nonzero coefficients in
/// descending grevlex order, which makes equality and printing canonical.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn int(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, Coeff::int(n))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::int(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), Coeff::one())
    }

    pub fn term(ring: &RingRef, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(ring: &RingRef, terms: I) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            if c.is_zero() {
                continue;
            }
            let e = acc.entry(m).or_insert_with(Coeff::zero);
            *e = e.add(&c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Build from terms already sorted descending in grevlex with no
    /// repeats or zeros.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| grevlex_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The coefficient of the monomial `1`.
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    /// Value at the origin (variables and parameters zero).
    pub fn at_origin(&self) -> Option<BigRational> {
        self.constant_coeff().at_origin()
    }

    /// Whether the constant term is nonzero, i.e. the polynomial is a unit
    /// in the local ring at the origin.
    pub fn is_local_unit(&self) -> bool {
        self.at_origin().is_some_and(|v| !v.is_zero())
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|(t, _)| grevlex_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Coeff::zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.iter().map(|(m, _)| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grevlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { c.neg() } else { c.clone() })),
        );
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Coeff::zero);
                *e = e.add(&c1.mul(c2));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiply by a single term; order is preserved since monomial orders
    /// are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// Make the grevlex-leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Coefficients of `var^k`, `k = 0..=deg`, each free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exps()[var] as usize;
            let mut e = m.exps().to_vec();
            e[var] = 0;
            parts[k].push((Monomial::from_exps(e), c.clone()));
        }
        parts.into_iter().map(|t| Poly::from_terms(&self.ring, t)).collect()
    }

    /// `Σ cs[k] * var^k`.
    pub fn from_coeffs_in(ring: &RingRef, var: usize, cs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in cs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.exps().to_vec();
                e[var] += k as u32;
                terms.push((Monomial::from_exps(e), v.clone()));
            }
        }
        Poly::from_terms(ring, terms)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.terms[0].clone();
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.checked_div(&dm)?;
            let qc = c.mul(&dinv);
            rem = rem.merge(&d.mul_term(&qm, &qc), true);
            q.push((qm, qc));
        }
        // quotient terms were produced in descending order
        Some(Poly::from_sorted(&self.ring, q))
    }

    /// Substitute `x_i -> images[i]` (all in `target`).
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&p.ring), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Move the given variables into the coefficient field.
    pub fn promote(&self, which: &[usize]) -> Poly {
        let (ring, map) = self.ring.promote(which);
        self.promote_into(&ring, which, &map)
    }

    pub(crate) fn promote_into(&self, ring: &RingRef, which: &[usize], map: &[Option<usize>]) -> Poly {
        let base = self.ring.params().len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            let mut pe = vec![0u32; base + which.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                match map[i] {
                    Some(j) => e[j] = x,
                    None => {
                        let k = which.iter().position(|&w| w == i).unwrap();
                        pe[base + k] = x;
                    }
                }
            }
            let pc = Coeff::from_qpoly(QPoly::monomial(pe, BigRational::from_integer(1.into())));
            terms.push((Monomial::from_exps(e), c.mul(&pc)));
        }
        Poly::from_terms(ring, terms)
    }

    /// Reinterpret in a ring with the same variables (by position) and a
    /// parameter block that extends this ring's parameters.
    pub fn embed(&self, target: &RingRef) -> Result<Poly, PolyError> {
        let ok = target.nvars() == self.ring.nvars()
            && target.params().len() >= self.ring.params().len()
            && target.params()[..self.ring.params().len()] == *self.ring.params();
        if !ok {
            return Err(PolyError::RingMismatch(self.ring.to_string(), target.to_string()));
        }
        Ok(Poly { ring: target.clone(), terms: self.terms.clone() })
    }

    /// Rename ring (same shape). Used after coordinate changes.
    pub fn with_ring(&self, target: &RingRef) -> Result<Poly, PolyError> {
        if target.nvars() != self.ring.nvars() || target.params() != self.ring.params() {
            return Err(PolyError::RingMismatch(self.ring.to_string(), target.to_string()));
        }
        Ok(Poly { ring: target.clone(), terms: self.terms.clone() })
    }

    /// Whether every coefficient is a rational number.
    pub fn has_rational_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_rational())
    }

    /// Least common multiple of the coefficient denominators (as parameter
    /// polynomials).
    pub fn denominator_lcm(&self) -> QPoly {
        let mut l = QPoly::one();
        for (_, c) in &self.terms {
            l = l.lcm(&c.denom());
        }
        l
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mon: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
                .collect();
            let mon = mon.join("*");
            match c {
                Coeff::Rat(r) => crate::coeff::write_rational_term(f, r, &mon, k == 0)?,
                Coeff::Frac(_) => {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", c.display(self.ring.params()))?;
                    if !mon.is_empty() {
                        write!(f, "*{mon}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn r3() -> RingRef {
        Ring::rational(&["x", "y", "z"])
    }

    #[test]
    fn difference_of_squares() {
        let r = r3();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert!((&p * &Poly::zero(&r)).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::var(&r3(), 0);
        let b = Poly::var(&Ring::rational(&["x", "y"]), 0);
        assert!(matches!(a.try_mul(&b), Err(PolyError::RingMismatch(..))));
    }

    #[test]
    fn exact_division_and_failure() {
        let r = r3();
        let (x, y, z) = (Poly::var(&r, 0), Poly::var(&r, 1), Poly::var(&r, 2));
        let a = &(&y.pow(2) - &(&x * &z)) * &(&x + &Poly::int(&r, 3));
        assert_eq!(a.div_exact(&(&x + &Poly::int(&r, 3))), Some(&y.pow(2) - &(&x * &z)));
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn coeffs_split_and_join() {
        let r = r3();
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let p = &(&x.pow(3) * &y) + &(&x * &y.pow(2));
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs_in(&r, 0, &cs), p);
    }

    #[test]
    fn promote_to_parameters() {
        let r = Ring::rational(&["X", "Y", "Z"]);
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let p = &(&Poly::one(&r) - &y) * &x.pow(2);
        let q = p.promote(&[1]);
        assert_eq!(q.ring().to_string(), "ring X,Z over QQ(Y)");
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.degree_in(0), 2);
    }
}

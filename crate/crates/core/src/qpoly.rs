//! Multivariate polynomials over `Q` in the parameter block of a ring.
//!
//! These are the numerators and denominators of fraction-field
//! coefficients. Exponent vectors are stored with trailing zeros trimmed so
//! polynomials over different parameter counts compare and combine without
//! padding; lexicographic comparison of trimmed vectors agrees with the
//! comparison of the padded ones.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Exps = Vec<u32>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

fn sub_exps(a: &[u32], b: &[u32]) -> Option<Exps> {
    if b.len() > a.len() {
        return None;
    }
    let mut v = a.to_vec();
    for (i, &e) in b.iter().enumerate() {
        v[i] = v[i].checked_sub(e)?;
    }
    Some(trim(v))
}

/// Sparse polynomial over `Q`, terms keyed by (trimmed) exponent vectors in
/// lexicographic order; the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: BTreeMap<Exps, BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The parameter `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Exps, c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(exps), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// Number of parameter slots actually used.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e.get(i).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(add_exps(e1, e2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    fn mul_term(&self, e: &[u32], c: &BigRational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e2, c2)| (add_exps(e, e2), c * c2))
                .collect(),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        // a quotient term can never exceed these per-parameter degrees
        let w = self.width().max(d.width());
        let bound: Vec<u32> = (0..w)
            .map(|i| self.degree_in(i).checked_sub(d.degree_in(i)))
            .collect::<Option<_>>()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let m = sub_exps(e, &de)?;
            if m.iter().zip(&bound).any(|(a, b)| a > b) {
                return None;
            }
            let c = c / &dc;
            rem = rem.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Evaluate at the origin of the parameter space.
    pub fn at_origin(&self) -> BigRational {
        self.constant_term()
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            s += t;
        }
        s
    }

    /// Scale to integer coefficients with unit content and a positive leading
    /// coefficient. Returns the normalized polynomial and the factor applied.
    pub fn primitive(&self) -> (Self, BigRational) {
        if self.is_zero() {
            return (Self::zero(), BigRational::one());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut f = BigRational::new(den_lcm, num_gcd);
        if self.leading_coeff().is_negative() {
            f = -f;
        }
        (self.scale(&f), f)
    }

    /// Split into coefficients of powers of parameter `i`.
    fn coeffs_in(&self, i: usize) -> Vec<QPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![QPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0) as usize;
            let mut e2 = e.clone();
            if i < e2.len() {
                e2[i] = 0;
            }
            out[k].add_term(trim(e2), c.clone());
        }
        out
    }

    fn from_coeffs_in(i: usize, cs: &[QPoly]) -> QPoly {
        let mut r = QPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                if e2.len() <= i {
                    e2.resize(i + 1, 0);
                }
                e2[i] += k as u32;
                r.add_term(trim(e2), v.clone());
            }
        }
        r
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.width()).find(|&i| self.degree_in(i) > 0)
    }

    /// Greatest common divisor, normalized by [`QPoly::primitive`].
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive().0;
        }
        if other.is_zero() {
            return self.primitive().0;
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            let (m, p) = if self.num_terms() == 1 { (self, other) } else { (other, self) };
            let mut e = m.leading().unwrap().0.clone();
            for pe in p.terms.keys() {
                for (i, k) in e.iter_mut().enumerate() {
                    *k = (*k).min(pe.get(i).copied().unwrap_or(0));
                }
            }
            return QPoly::monomial(e, BigRational::one());
        }
        if other.div_exact(self).is_some() {
            return self.primitive().0;
        }
        if self.div_exact(other).is_some() {
            return other.primitive().0;
        }
        let v = match (self.first_var(), other.first_var()) {
            (None, _) | (_, None) => return QPoly::one(),
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(h) = heuristic_gcd(&self.primitive().0, &other.primitive().0) {
            return h.primitive().0;
        }
        let ca = self.coeffs_in(v);
        let cb = other.coeffs_in(v);
        let cont_a = content(&ca);
        let cont_b = content(&cb);
        let cont = cont_a.gcd(&cont_b);
        let pa: Vec<QPoly> = ca.iter().map(|c| c.div_exact(&cont_a).unwrap()).collect();
        let pb: Vec<QPoly> = cb.iter().map(|c| c.div_exact(&cont_b).unwrap()).collect();
        let g = primitive_prs(pa, pb);
        QPoly::from_coeffs_in(v, &g).mul(&cont).primitive().0
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.mul(other).div_exact(&g).expect("gcd divides product").primitive().0
    }
}

/// Integer content of a polynomial with integer coefficients.
fn int_content(p: &QPoly) -> BigInt {
    p.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
}

fn max_norm(p: &QPoly) -> BigInt {
    p.terms.values().map(|c| c.numer().abs()).max().unwrap_or_default()
}

/// Substitute the integer `xi` for parameter `v`.
fn eval_at(p: &QPoly, v: usize, xi: &BigInt) -> QPoly {
    let mut powers: Vec<BigInt> = vec![BigInt::one()];
    let mut r = QPoly::zero();
    for (e, c) in &p.terms {
        let k = e.get(v).copied().unwrap_or(0) as usize;
        while powers.len() <= k {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        let mut e2 = e.clone();
        if v < e2.len() {
            e2[v] = 0;
        }
        r.add_term(trim(e2), c * BigRational::from_integer(powers[k].clone()));
    }
    r
}

/// Undo [`eval_at`] through the balanced `xi`-adic expansion of each coefficient.
fn interpolate(mut h: QPoly, v: usize, xi: &BigInt) -> QPoly {
    let half = xi / 2;
    let mut out = QPoly::zero();
    let mut k = 0u32;
    while !h.is_zero() {
        let mut digit = QPoly::zero();
        for (e, c) in &h.terms {
            let mut d = c.numer().mod_floor(xi);
            if d > half {
                d -= xi;
            }
            digit.add_term(e.clone(), BigRational::from_integer(d));
        }
        h = h.sub(&digit);
        let inv = BigRational::new(BigInt::one(), xi.clone());
        h = h.scale(&inv);
        for (e, c) in digit.terms {
            let mut e2 = e;
            if e2.len() <= v {
                e2.resize(v + 1, 0);
            }
            e2[v] = k;
            out.add_term(trim(e2), c);
        }
        k += 1;
    }
    out
}

/// Gcd of integer polynomials by evaluation at a large integer, recursion on
/// the remaining parameters and balanced interpolation. `None` when the
/// evaluation points tried were all unlucky; every answer is checked by
/// exact division.
fn heuristic_gcd(f: &QPoly, g: &QPoly) -> Option<QPoly> {
    let v = (0..f.width().max(g.width())).rev().find(|&i| f.degree_in(i) > 0 || g.degree_in(i) > 0);
    let (cf, cg) = (int_content(f), int_content(g));
    let c = BigRational::from_integer(cf.gcd(&cg));
    let Some(v) = v else {
        return Some(QPoly::constant(c));
    };
    let f = f.scale(&BigRational::new(BigInt::one(), cf));
    let g = g.scale(&BigRational::new(BigInt::one(), cg));
    let (nf, ng) = (max_norm(&f), max_norm(&g));
    let b = BigInt::from(2) * (&nf).min(&ng) + BigInt::from(29);
    let lf = f.leading_coeff().numer().abs();
    let lg = g.leading_coeff().numer().abs();
    let floor = BigInt::from(2) * (&nf / lf).min(&ng / lg) + BigInt::from(2);
    let mut xi = (&b).min(&(BigInt::from(99) * num_integer::Roots::sqrt(&b))).clone().max(floor);
    for _ in 0..6 {
        let (ff, gg) = (eval_at(&f, v, &xi), eval_at(&g, v, &xi));
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(hh) = heuristic_gcd(&ff, &gg) {
                let h = interpolate(hh, v, &xi);
                if !h.is_zero() {
                    let h = h.scale(&BigRational::new(BigInt::one(), int_content(&h)));
                    if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                        return Some(h.scale(&c));
                    }
                }
            }
        }
        let root = num_integer::Roots::sqrt(&num_integer::Roots::sqrt(&xi));
        xi = &xi * BigInt::from(73794) * root / BigInt::from(27011);
    }
    None
}

fn content(cs: &[QPoly]) -> QPoly {
    let mut g = QPoly::zero();
    for c in cs {
        if g.is_zero() {
            g = c.primitive().0;
        } else {
            g = g.gcd(c);
        }
        if g.is_constant() && !g.is_zero() {
            return QPoly::one();
        }
    }
    g
}

fn degree(v: &[QPoly]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn strip(mut v: Vec<QPoly>) -> Vec<QPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn pseudo_rem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = strip(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<QPoly> = r.iter().map(|c| c.mul(lb)).collect();
        for (k, c) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&c.mul(&lr));
        }
        r = strip(next);
    }
    r
}

/// Divide out the polynomial content and the numeric content, so
/// remainder coefficients stay small.
fn primitive_part(v: Vec<QPoly>) -> Vec<QPoly> {
    let c = content(&v);
    if c.is_zero() {
        return v;
    }
    let v: Vec<QPoly> = v.iter().map(|x| x.div_exact(&c).unwrap()).collect();
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for x in &v {
        for c in x.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    for x in &v {
        for c in x.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
    }
    let f = BigRational::new(den_lcm, num_gcd);
    v.iter().map(|x| x.scale(&f)).collect()
}

fn primitive_prs(a: Vec<QPoly>, b: Vec<QPoly>) -> Vec<QPoly> {
    let (mut r0, mut r1) = (strip(a), strip(b));
    if degree(&r0) < degree(&r1) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        match degree(&r1) {
            None => return r0,
            Some(0) => return vec![QPoly::one()],
            Some(_) => {}
        }
        let r = pseudo_rem(&r0, &r1);
        r0 = r1;
        r1 = primitive_part(r);
    }
}

impl QPoly {
    /// Render with the given parameter names; terms in descending order.
    pub fn display<'a>(&'a self, names: &'a [String]) -> QPolyDisplay<'a> {
        QPolyDisplay { p: self, names }
    }
}

pub struct QPolyDisplay<'a> {
    p: &'a QPoly,
    names: &'a [String],
}

impl fmt::Display for QPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // descending total degree, then descending lex
        let mut terms: Vec<_> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], x)
                    }
                })
                .collect();
            crate::coeff::write_rational_term(f, c, &mon.join("*"), k == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.width()).map(|i| format!("p{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

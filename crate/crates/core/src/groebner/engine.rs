//! Buchberger's algorithm over free modules `R^r`, position-over-term.
//!
//! Ideals are the rank-one case. Elements optionally carry their
//! representation in terms of the input generators, which is what
//! quotient extraction (lifting) and Schreyer syzygies need.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::coeff::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::RingRef;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mon: Monomial,
    pub c: Coeff,
}

/// Module element as terms sorted descending under the POT order.
pub(crate) type Vector = Vec<Term>;

pub(crate) struct Ctx {
    pub order: MonomialOrder,
}

impl Ctx {
    pub fn new(order: MonomialOrder) -> Self {
        Ctx { order }
    }

    /// Position-over-term: a lower position index is larger.
    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.order.cmp(a.1, b.1))
    }

    pub fn from_polys(&self, comps: &[Poly]) -> Vector {
        let mut v: Vector = comps
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().iter().map(move |(m, c)| Term { pos, mon: m.clone(), c: c.clone() })
            })
            .collect();
        v.sort_by(|a, b| self.cmp((b.pos, &b.mon), (a.pos, &a.mon)));
        v
    }

    pub fn from_poly(&self, p: &Poly) -> Vector {
        self.from_polys(std::slice::from_ref(p))
    }

    pub fn to_polys(&self, v: &Vector, ring: &RingRef, rank: usize) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in v {
            parts[t.pos].push((t.mon.clone(), t.c.clone()));
        }
        parts.into_iter().map(|t| Poly::from_terms(ring, t)).collect()
    }

    pub fn to_poly(&self, v: &Vector, ring: &RingRef) -> Poly {
        self.to_polys(v, ring, 1).pop().expect("rank one")
    }

    /// `f - c * m * g`.
    pub fn sub_scaled(&self, f: &[Term], c: &Coeff, m: &Monomial, g: &[Term]) -> Vector {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut gj: Option<Term> = None;
        let next_g = |j: usize| -> Option<Term> {
            g.get(j).map(|t| Term { pos: t.pos, mon: t.mon.mul(m), c: t.c.mul(c) })
        };
        if j < g.len() {
            gj = next_g(j);
        }
        while i < f.len() || gj.is_some() {
            match (f.get(i), gj.as_ref()) {
                (Some(a), Some(b)) => match self.cmp((a.pos, &a.mon), (b.pos, &b.mon)) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let b = gj.take().unwrap();
                        out.push(Term { c: b.c.neg(), ..b });
                        j += 1;
                        gj = next_g(j);
                    }
                    Ordering::Equal => {
                        let c2 = a.c.sub(&b.c);
                        if !c2.is_zero() {
                            out.push(Term { pos: a.pos, mon: a.mon.clone(), c: c2 });
                        }
                        i += 1;
                        j += 1;
                        gj = next_g(j);
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let b = gj.take().unwrap();
                    out.push(Term { c: b.c.neg(), ..b });
                    j += 1;
                    gj = next_g(j);
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    pub fn scale(&self, v: &[Term], c: &Coeff) -> Vector {
        v.iter().map(|t| Term { pos: t.pos, mon: t.mon.clone(), c: t.c.mul(c) }).collect()
    }

    /// Full division of `f` by `basis`: returns per-divisor quotient terms
    /// and the remainder. The first divisor (by index) whose leading term
    /// divides is used.
    pub fn divide(&self, f: Vector, basis: &[&[Term]]) -> (Vec<Vec<(Monomial, Coeff)>>, Vector) {
        let mut quots = vec![Vec::new(); basis.len()];
        let mut rem = Vec::new();
        let mut p = f;
        let mut start = 0;
        let lead_inv: Vec<Option<Coeff>> = basis.iter().map(|g| g.first().and_then(|t| t.c.inv())).collect();
        while start < p.len() {
            let lt = &p[start];
            let hit = basis.iter().enumerate().find(|(_, g)| {
                g.first().is_some_and(|h| h.pos == lt.pos && h.mon.divides(&lt.mon))
            });
            match hit {
                Some((k, g)) => {
                    let m = lt.mon.checked_div(&g[0].mon).expect("divides");
                    let c = lt.c.mul(lead_inv[k].as_ref().expect("nonzero lead"));
                    p = self.sub_scaled(&p[start..], &c, &m, g);
                    start = 0;
                    quots[k].push((m, c));
                }
                None => {
                    rem.push(lt.clone());
                    start += 1;
                }
            }
        }
        (quots, rem)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vector,
    /// Coefficients expressing `v` in the input generators.
    pub rep: Option<Vec<Poly>>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct GbInput<'a> {
    pub ring: &'a RingRef,
    pub gens: Vec<Vector>,
    pub track: bool,
    /// Module rank; the product criterion is only applied when it is one.
    pub rank: usize,
}

fn lincomb(ring: &RingRef, coeffs: &[(Poly, &[Poly])], len: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(ring); len];
    for (q, rep) in coeffs {
        if q.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(rep.iter()) {
            if !r.is_zero() {
                *o = &*o + &(q * r);
            }
        }
    }
    out
}

impl Ctx {
    fn monic(&self, e: &mut Elem) {
        if let Some(t) = e.v.first() {
            if !t.c.is_one() {
                let inv = t.c.inv().expect("nonzero");
                e.v = self.scale(&e.v, &inv);
                if let Some(rep) = &mut e.rep {
                    for r in rep.iter_mut() {
                        *r = r.scale(&inv);
                    }
                }
            }
        }
    }

    /// Reduce `e` by `basis` and update its representation.
    fn reduce_elem(&self, ring: &RingRef, e: Elem, basis: &[Elem], skip: Option<usize>) -> Elem {
        let refs: Vec<&[Term]> = basis
            .iter()
            .enumerate()
            .map(|(k, b)| if Some(k) == skip { &[][..] } else { &b.v[..] })
            .collect();
        let (quots, rem) = self.divide(e.v, &refs);
        let rep = e.rep.map(|rep| {
            let len = rep.len();
            let qs: Vec<(Poly, &[Poly])> = quots
                .into_iter()
                .enumerate()
                .filter(|(_, q)| !q.is_empty())
                .map(|(k, q)| (-Poly::from_terms(ring, q), basis[k].rep.as_deref().expect("tracked")))
                .collect();
            let delta = lincomb(ring, &qs, len);
            rep.iter().zip(delta.iter()).map(|(a, b)| a + b).collect()
        });
        Elem { v: rem, rep }
    }

    /// Reduced Gröbner basis, sorted ascending by leading term.
    pub fn groebner(&self, input: GbInput<'_>) -> Vec<Elem> {
        let ring = input.ring;
        let s = input.gens.len();
        let mut basis: Vec<Elem> = Vec::new();
        for (k, g) in input.gens.into_iter().enumerate() {
            if g.is_empty() {
                continue;
            }
            let rep = input.track.then(|| {
                (0..s).map(|i| if i == k { Poly::one(ring) } else { Poly::zero(ring) }).collect()
            });
            let mut e = Elem { v: g, rep };
            self.monic(&mut e);
            basis.push(e);
        }
        let mut pairs: Vec<Pair> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                self.push_pair(&basis, &mut pairs, &mut pending, i, j);
            }
        }
        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.lcm
                        .degree()
                        .cmp(&pb.lcm.degree())
                        .then_with(|| pa.lcm.exps().cmp(pb.lcm.exps()))
                        .then_with(|| basis[pa.i].v[0].pos.cmp(&basis[pb.i].v[0].pos))
                        .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            pending.remove(&(pair.i, pair.j));
            let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
            let (li, lj) = (&gi.v[0], &gj.v[0]);
            if input.rank == 1 && li.mon.coprime(&lj.mon) {
                continue;
            }
            let chain = (0..basis.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && basis[k].v[0].pos == li.pos
                    && basis[k].v[0].mon.divides(&pair.lcm)
                    && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                    && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
            });
            if chain {
                continue;
            }
            let mi = pair.lcm.checked_div(&li.mon).unwrap();
            let mj = pair.lcm.checked_div(&lj.mon).unwrap();
            // leads are monic
            let sv = self.sub_scaled(&self.scale_mon(&gi.v, &mi), &Coeff::one(), &mj, &gj.v);
            let rep = match (&gi.rep, &gj.rep) {
                (Some(ri), Some(rj)) => {
                    let ti = Poly::term(ring, mi.clone(), Coeff::one());
                    let tj = Poly::term(ring, mj.clone(), Coeff::one().neg());
                    Some(lincomb(ring, &[(ti, ri), (tj, rj)], s))
                }
                _ => None,
            };
            let mut h = self.reduce_elem(ring, Elem { v: sv, rep }, &basis, None);
            if h.v.is_empty() {
                continue;
            }
            self.monic(&mut h);
            basis.push(h);
            let k = basis.len() - 1;
            for i in 0..k {
                self.push_pair(&basis, &mut pairs, &mut pending, i, k);
            }
        }
        self.reduce_basis(ring, basis)
    }

    fn scale_mon(&self, v: &[Term], m: &Monomial) -> Vector {
        v.iter().map(|t| Term { pos: t.pos, mon: t.mon.mul(m), c: t.c.clone() }).collect()
    }

    fn push_pair(
        &self,
        basis: &[Elem],
        pairs: &mut Vec<Pair>,
        pending: &mut HashSet<(usize, usize)>,
        i: usize,
        j: usize,
    ) {
        let (a, b) = (&basis[i].v[0], &basis[j].v[0]);
        if a.pos != b.pos {
            return;
        }
        pairs.push(Pair { i, j, lcm: a.mon.lcm(&b.mon) });
        pending.insert((i, j));
    }

    /// Minimalize and interreduce.
    fn reduce_basis(&self, ring: &RingRef, basis: Vec<Elem>) -> Vec<Elem> {
        let n = basis.len();
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let li = &basis[i].v[0];
                !(0..n).any(|j| {
                    let lj = &basis[j].v[0];
                    j != i && lj.pos == li.pos && lj.mon.divides(&li.mon) && (lj.mon != li.mon || j < i)
                })
            })
            .collect();
        let mut g: Vec<Elem> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
        g.sort_by(|a, b| self.cmp((a.v[0].pos, &a.v[0].mon), (b.v[0].pos, &b.v[0].mon)));
        for i in 0..g.len() {
            let e = g[i].clone();
            let mut r = self.reduce_elem(ring, e, &g, Some(i));
            self.monic(&mut r);
            g[i] = r;
        }
        g
    }
}

//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Exponent vector over the ambient polynomial variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exps(e: Vec<u32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / d`, if exact.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(d.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u32]>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Block(usize),
}

/// A monomial order, optionally applied after permuting the variables.
///
/// With a permutation `perm`, the variable ranked `r`-th is `perm[r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Option<Arc<[usize]>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        Self { kind: OrderKind::Lex, perm: None }
    }

    pub fn grevlex() -> Self {
        Self { kind: OrderKind::Grevlex, perm: None }
    }

    pub fn block(k: usize) -> Self {
        Self { kind: OrderKind::Block(k), perm: None }
    }

    pub fn with_permutation(mut self, perm: Vec<usize>) -> Self {
        self.perm = Some(perm.into());
        self
    }

    pub fn name(&self) -> String {
        match self.kind {
            OrderKind::Lex => "lex".into(),
            OrderKind::Grevlex => "grevlex".into(),
            OrderKind::Block(k) => format!("block({k})"),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match &self.perm {
            None => cmp_kind(self.kind, a.len(), |i| a[i], |i| b[i]),
            Some(p) => cmp_kind(self.kind, a.len(), |i| a[p[i]], |i| b[p[i]]),
        }
    }
}

fn cmp_kind(kind: OrderKind, n: usize, a: impl Fn(usize) -> u32, b: impl Fn(usize) -> u32) -> Ordering {
    match kind {
        OrderKind::Lex => (0..n).map(|i| a(i).cmp(&b(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal),
        OrderKind::Grevlex => grevlex_range(0, n, &a, &b),
        OrderKind::Block(k) => {
            let k = k.min(n);
            grevlex_range(0, k, &a, &b).then_with(|| grevlex_range(k, n, &a, &b))
        }
    }
}

fn grevlex_range(lo: usize, hi: usize, a: &impl Fn(usize) -> u32, b: &impl Fn(usize) -> u32) -> Ordering {
    let da: u32 = (lo..hi).map(a).sum();
    let db: u32 = (lo..hi).map(b).sum();
    da.cmp(&db).then_with(|| {
        (lo..hi)
            .rev()
            .map(|i| b(i).cmp(&a(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// The canonical storage order of [`crate::Poly`] terms.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    grevlex_range(0, ea.len(), &|i| ea[i], &|i| eb[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
        // x*z^0*y^2 vs x^2*z: same degree, last variable decides
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_first_variable_dominates() {
        let o = MonomialOrder::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::block(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn permutation_reranks_variables() {
        let o = MonomialOrder::lex().with_permutation(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::lex(),
            MonomialOrder::grevlex(),
            MonomialOrder::block(1),
            MonomialOrder::block(2),
            MonomialOrder::grevlex().with_permutation(vec![2, 0, 1]),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_monomial_orders(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
            c in proptest::collection::vec(0u32..5, 3),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for o in orders() {
                // 1 is least
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
                // total and antisymmetric
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // multiplicative
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            }
        }
    }
}

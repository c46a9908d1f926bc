//! Exact coefficients: rationals, or rational functions in a parameter block.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qpoly::QPoly;

/// Reduced quotient of two parameter polynomials.
///
/// `den` has integer coefficients with unit content and a positive leading
/// coefficient, and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self { num, den: QPoly::one() });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (den, f) = den.primitive();
        Some(Self { num: num.scale(&f), den })
    }

    /// Build from a numerator and denominator already known to be coprime.
    fn coprime(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: QPoly::one() };
        }
        let (den, f) = den.primitive();
        Self { num: num.scale(&f), den }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }
}

/// A coefficient of a [`crate::Poly`].
///
/// The `Frac` variant is only used for non-constant rational functions, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Frac(Box<RatFunc>),
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Coeff::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Coeff::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Coeff::Rat(BigRational::new(n.into(), d.into()))
    }

    /// The parameter with index `i`.
    pub fn param(i: usize) -> Self {
        Coeff::from_qpoly(QPoly::var(i))
    }

    pub fn from_qpoly(p: QPoly) -> Self {
        Self::from_ratfunc(RatFunc { num: p, den: QPoly::one() })
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        if r.num.is_constant() && r.den.is_constant() {
            Coeff::Rat(r.num.constant_term() / r.den.constant_term())
        } else {
            Coeff::Frac(Box::new(r))
        }
    }

    pub fn frac(num: QPoly, den: QPoly) -> Option<Self> {
        RatFunc::new(num, den).map(Self::from_ratfunc)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Coeff::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Frac(_) => None,
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        match self {
            Coeff::Rat(r) => RatFunc { num: QPoly::constant(r.clone()), den: QPoly::one() },
            Coeff::Frac(f) => (**f).clone(),
        }
    }

    pub fn numer(&self) -> QPoly {
        match self {
            Coeff::Rat(r) => QPoly::constant(r.clone()),
            Coeff::Frac(f) => f.num.clone(),
        }
    }

    pub fn denom(&self) -> QPoly {
        match self {
            Coeff::Rat(_) => QPoly::one(),
            Coeff::Frac(f) => f.den.clone(),
        }
    }

    /// Value at the origin of the parameter space, `None` if a pole sits there.
    pub fn at_origin(&self) -> Option<BigRational> {
        match self {
            Coeff::Rat(r) => Some(r.clone()),
            Coeff::Frac(f) => {
                let d = f.den.at_origin();
                if d.is_zero() {
                    None
                } else {
                    Some(f.num.at_origin() / d)
                }
            }
        }
    }

    pub fn param_width(&self) -> usize {
        match self {
            Coeff::Rat(_) => 0,
            Coeff::Frac(f) => f.num.width().max(f.den.width()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Coeff::Rat(r) => Coeff::Rat(-r),
            Coeff::Frac(f) => Coeff::Frac(Box::new(RatFunc { num: f.num.neg(), den: f.den.clone() })),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => {
                let (a, b) = (self.to_ratfunc(), o.to_ratfunc());
                let g = a.den.gcd(&b.den);
                let (ad, bd) = (a.den.div_exact(&g).unwrap(), b.den.div_exact(&g).unwrap());
                let t = a.num.mul(&bd).add(&b.num.mul(&ad));
                // a common factor of the sum and the denominator divides g
                let r = if g.is_constant() {
                    RatFunc::coprime(t, ad.mul(&b.den))
                } else {
                    let h = t.gcd(&g);
                    let den = ad.mul(&b.den).div_exact(&h).unwrap();
                    RatFunc::coprime(t.div_exact(&h).unwrap(), den)
                };
                Self::from_ratfunc(r)
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Rat(a), Coeff::Frac(f)) | (Coeff::Frac(f), Coeff::Rat(a)) => {
                if a.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::Frac(Box::new(RatFunc { num: f.num.scale(a), den: f.den.clone() }))
                }
            }
            (Coeff::Frac(a), Coeff::Frac(b)) => {
                let g1 = a.num.gcd(&b.den);
                let g2 = b.num.gcd(&a.den);
                let q = |x: &QPoly, g: &QPoly| x.div_exact(g).unwrap();
                Self::from_ratfunc(RatFunc::coprime(
                    q(&a.num, &g1).mul(&q(&b.num, &g2)),
                    q(&a.den, &g2).mul(&q(&b.den, &g1)),
                ))
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Coeff::Rat(r) if r.is_zero() => None,
            Coeff::Rat(r) => Some(Coeff::Rat(r.recip())),
            Coeff::Frac(f) => Some(Self::from_ratfunc(RatFunc::new(f.den.clone(), f.num.clone())?)),
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Coeff::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Render with the given parameter names.
    pub fn display<'a>(&'a self, params: &'a [String]) -> CoeffDisplay<'a> {
        CoeffDisplay { c: self, params }
    }
}

pub struct CoeffDisplay<'a> {
    c: &'a Coeff,
    params: &'a [String],
}

impl fmt::Display for CoeffDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.c {
            Coeff::Rat(r) => write_rational(f, r),
            Coeff::Frac(rf) => {
                write!(f, "({})", rf.num.display(self.params))?;
                if !rf.den.is_constant() {
                    write!(f, "/({})", rf.den.display(self.params))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.param_width()).map(|i| format!("p{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Write `c*mon` as the next term of a sum, with canonical sign placement.
pub(crate) fn write_rational_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    mon: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let a = c.abs();
    if mon.is_empty() {
        write_rational(f, &a)
    } else if a.is_one() {
        write!(f, "{mon}")
    } else {
        write_rational(f, &a)?;
        write!(f, "*{mon}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> Coeff {
        // 1 - Y
        Coeff::one().sub(&Coeff::param(0))
    }

    #[test]
    fn fractions_reduce() {
        let y = Coeff::param(0);
        let a = y.mul(&g()).div(&g()).unwrap();
        assert_eq!(a, y);
        let one = g().div(&g()).unwrap();
        assert!(one.is_one());
    }

    #[test]
    fn denominator_sign_is_canonical() {
        let c = Coeff::one().div(&g()).unwrap();
        match &c {
            Coeff::Frac(f) => {
                assert!(f.den().leading_coeff() > BigRational::zero());
                assert_eq!(f.num().constant_term(), BigRational::from_integer((-1).into()));
            }
            _ => panic!("expected a fraction"),
        }
        assert_eq!(c.at_origin(), Some(BigRational::one()));
    }

    #[test]
    fn inverse_of_zero() {
        assert!(Coeff::zero().inv().is_none());
    }

    #[test]
    fn pole_at_origin() {
        let c = Coeff::one().div(&Coeff::param(0)).unwrap();
        assert_eq!(c.at_origin(), None);
    }
}

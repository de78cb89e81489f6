//! Rational functions in reduced form: `gcd(num, den) = 1`, `den` monic.

use super::field::{Embed, ExactDiv, Field, Ring, Scalar};
use super::gcd::gcd;
use super::poly::MultiPoly;
use super::var::VarIdx;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Scalar> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

/// Degree with the convention `deg(0) = -inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn add(self, o: Degree) -> Degree {
        match (self, o) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl<F: Scalar> RatFunc<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact_poly(&g).expect("gcd divides"), den.div_exact_poly(&g).expect("gcd divides"))
        };
        Ok(Self::normalize_lc(num, den))
    }

    /// Builds from parts the caller guarantees to be coprime.
    pub(crate) fn from_coprime(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn num(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarIdx> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Formal partial derivative by the quotient rule.
    pub fn derivative(&self, v: VarIdx) -> Self {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RatFunc::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        RatFunc::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Degree and leading coefficient with respect to `v`; the leading
    /// coefficient lives in the field of the remaining variables.
    pub fn degree_lc(&self, v: VarIdx) -> (Degree, RatFunc<F>) {
        if self.num.is_zero() {
            return (Degree::NegInfinity, Self::zero());
        }
        let dn = self.num.degree_in(v).unwrap() as i64;
        let dd = self.den.degree_in(v).unwrap() as i64;
        let lc = RatFunc::new(self.num.lc_in(v), self.den.lc_in(v)).expect("nonzero leading coefficient");
        (Degree::Finite(dn - dd), lc)
    }

    pub fn eval<E: Scalar + Embed<F>>(&self, assign: &dyn Fn(VarIdx) -> Option<E>) -> Result<E> {
        let n = self.num.eval(assign).ok_or(Error::UnassignedVariable)?;
        let d = self.den.eval(assign).ok_or(Error::UnassignedVariable)?;
        n.div(&d).ok_or(Error::DenominatorVanishes)
    }
}

impl<F: Scalar> Ring for RatFunc<F> {
    fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }
    fn one() -> Self {
        RatFunc { num: MultiPoly::one(), den: MultiPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return RatFunc::new(num, self.den.clone()).expect("nonzero");
        }
        let g = gcd(&self.den, &o.den);
        let bd = self.den.div_exact_poly(&g).expect("gcd divides");
        let dd = o.den.div_exact_poly(&g).expect("gcd divides");
        let num = self.num.mul(&dd).add(&o.num.mul(&bd));
        let den = self.den.mul(&dd);
        if g.is_one() {
            return Self::from_coprime(num, den);
        }
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Self::from_coprime(num, den)
        } else {
            Self::from_coprime(num.div_exact_poly(&g2).unwrap(), den.div_exact_poly(&g2).unwrap())
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact_poly(&g1).unwrap();
        let d2 = o.den.div_exact_poly(&g1).unwrap();
        let n2 = o.num.div_exact_poly(&g2).unwrap();
        let d1 = self.den.div_exact_poly(&g2).unwrap();
        Self::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(v))
    }
    fn characteristic() -> u64 {
        F::characteristic()
    }
}

impl<F: Scalar> Field for RatFunc<F> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }
}

impl<F: Scalar> ExactDiv for RatFunc<F> {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, F2, F101};
    use crate::algebra::var::VarId;

    fn x<F: Scalar>(i: u16, j: u16) -> MultiPoly<F> {
        MultiPoly::var(VarId::A(i, j))
    }

    #[test]
    fn inverse_law() {
        let f = x::<F101>(1, 1).mul(&x(1, 2)).add(&MultiPoly::one());
        let g = x::<F101>(1, 1).add(&x(2, 1));
        let r = RatFunc::new(f.clone(), g.clone()).unwrap();
        let s = RatFunc::new(g, f).unwrap();
        assert_eq!(r.mul(&s), RatFunc::one());
        assert_eq!(r.mul(&r.inv().unwrap()), RatFunc::one());
    }

    #[test]
    fn reduction_cancels_common_factor() {
        let f = x::<Rational>(1, 1).add(&x(1, 2));
        let g = x::<Rational>(1, 1).sub(&x(1, 2));
        let r = RatFunc::new(f.mul(&g), g.mul(&g).scale(&Rational::from_i64(3))).unwrap();
        assert_eq!(r.den(), &g.monic());
        assert!(r.den().lc().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = RatFunc::new(x::<F2>(1, 1), MultiPoly::zero());
        assert!(matches!(r, Err(Error::DivisionByZeroPoly)));
    }

    #[test]
    fn degree_and_leading_coefficient() {
        // (a11^2 + a12) / (a11 + 1): degree 1, leading coefficient 1
        let v = VarId::A(1, 1).index();
        let num = x::<Rational>(1, 1).mul(&x(1, 1)).add(&x(1, 2));
        let den = x::<Rational>(1, 1).add(&MultiPoly::one());
        let r = RatFunc::new(num, den).unwrap();
        let (d, l) = r.degree_lc(v);
        assert_eq!(d, Degree::Finite(1));
        assert_eq!(l, RatFunc::one());
        let (d0, l0) = RatFunc::<Rational>::zero().degree_lc(v);
        assert_eq!(d0, Degree::NegInfinity);
        assert!(l0.is_zero());
    }

    #[test]
    fn quotient_rule() {
        let v = VarId::A(1, 1).index();
        // d/dx (1/x) = -1/x^2
        let r = RatFunc::new(MultiPoly::<Rational>::one(), x(1, 1)).unwrap();
        let d = r.derivative(v);
        let expect = RatFunc::new(MultiPoly::from_i64(-1), x::<Rational>(1, 1).mul(&x(1, 1))).unwrap();
        assert_eq!(d, expect);
    }
}

//! Reduced fractions of sparse multivariate polynomials: the field K = F(X).
//!
//! Invariants: the denominator is nonzero, coprime to the numerator, and
//! monic under the canonical term order; zero is 0/1. Equality of reduced
//! representations is therefore field equality.

use super::field::Scalar;
use super::multipoly::{poly_gcd, Monomial, MultiPoly};
use super::vars::VarId;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug)]
pub enum ArithError {
    DivisionByZero,
    /// A substitution sent the denominator to the zero function.
    ZeroDenominator,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => write!(f, "division by the zero function"),
            ArithError::ZeroDenominator => write!(f, "substituted denominator is identically zero"),
        }
    }
}

impl std::error::Error for ArithError {}

/// A rational function in reduced normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<S: Scalar> {
    num: MultiPoly<S>,
    den: MultiPoly<S>,
}

impl<S: Scalar> RatFunc<S> {
    /// Build `num/den`, reducing to normal form.
    pub fn new(num: MultiPoly<S>, den: MultiPoly<S>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g == MultiPoly::one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("field scalar");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly<S>) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(S::from_ratio(num, den))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly<S> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == MultiPoly::one() && self.den == MultiPoly::one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den == MultiPoly::one()
    }

    pub fn constant_value(&self) -> Option<S> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominators nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominators nonzero")
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Self::one().div(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator nonzero")
    }

    pub fn support(&self) -> BTreeSet<VarId> {
        let mut s = self.num.support();
        s.extend(self.den.support());
        s
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Exact image under the field homomorphism sending each variable to its
    /// assigned value; unassigned variables map to themselves.
    pub fn substitute<F>(&self, assign: &F) -> Result<Self, ArithError>
    where
        F: Fn(VarId) -> Option<RatFunc<S>>,
    {
        let num = substitute_poly(&self.num, assign)?;
        let den = substitute_poly(&self.den, assign)?;
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        num.div(&den).map_err(|_| ArithError::ZeroDenominator)
    }

    /// Numerator coefficients grouped by power of `v` (denominator must be
    /// free of `v`; callers uphold that). Entry `i` is the coefficient of
    /// `v^i` as a rational function without `v`.
    pub fn coeffs_of(&self, v: VarId) -> Vec<RatFunc<S>> {
        debug_assert!(!self.den.contains_var(v));
        let cs = self.num.coeffs_in(v);
        cs.into_iter()
            .map(|p| Self::new(p, self.den.clone()).expect("denominator nonzero"))
            .collect()
    }
}

fn substitute_poly<S: Scalar, F>(p: &MultiPoly<S>, assign: &F) -> Result<RatFunc<S>, ArithError>
where
    F: Fn(VarId) -> Option<RatFunc<S>>,
{
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut term = RatFunc::constant(c.clone());
        for &(v, e) in m.exponents() {
            let img = assign(v).unwrap_or_else(|| RatFunc::var(v));
            term = term.mul(&img.pow(e));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl<S: Scalar> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 && !self.num.leading_coeff().map_or(false, |c| c.displays_negative()) {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Single-term helper used in renders and tests.
pub fn monomial<S: Scalar>(c: S, vars: &[(VarId, u32)]) -> RatFunc<S> {
    let mut m = Monomial::one();
    for &(v, e) in vars {
        m = m.mul(&Monomial::var_pow(v, e));
    }
    RatFunc::from_poly(MultiPoly::from_term(c, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;

    fn x(i: u32) -> R {
        R::var(VarId::X(i))
    }

    fn int(n: i64) -> R {
        R::from_i64(n)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (x0^2 - 1)/(x0 - 1) = x0 + 1, verified by multiplying back.
        let p = x(0).mul(&x(0)).sub(&int(1));
        let q = x(0).sub(&int(1));
        let r = p.div(&q).unwrap();
        assert_eq!(r, x(0).add(&int(1)));
        assert_eq!(r.mul(&q), p);
    }

    #[test]
    fn denominator_is_monic() {
        // 1 / (2 x0) normalizes to (1/2) / x0.
        let r = int(1).div(&x(0).scale(&BigRational::from_i64(2))).unwrap();
        assert!(r.den().leading_coeff().unwrap().is_one());
        assert_eq!(r.mul(&x(0)), R::from_ratio(1, 2));
    }

    #[test]
    fn identities_and_inverses() {
        let a = x(0).add(&int(1)).div(&x(1)).unwrap();
        assert_eq!(a.add(&R::zero()), a);
        assert_eq!(x(0).mul(&x(0).inv().unwrap()), R::one());
        assert!(R::zero().inv().is_err());
    }

    #[test]
    fn substitution_is_exact() {
        // x0 + 1/x1 with x0 -> x1^2, x1 -> x2^3 gives x1^2 + 1/x2^3.
        let f = x(0).add(&int(1).div(&x(1)).unwrap());
        let img = f
            .substitute(&|v| match v {
                VarId::X(0) => Some(x(1).pow(2)),
                VarId::X(1) => Some(x(2).pow(3)),
                _ => None,
            })
            .unwrap();
        let expected = x(1).pow(2).add(&int(1).div(&x(2).pow(3)).unwrap());
        assert_eq!(img, expected);
    }

    #[test]
    fn substitution_fixes_constants_and_detects_zero_denominators() {
        let c = R::from_ratio(-7, 3);
        assert_eq!(c.substitute(&|_| Some(x(5))).unwrap(), c);
        let f = int(1).div(&x(0)).unwrap();
        let err = f.substitute(&|_| Some(R::zero()));
        assert!(matches!(err, Err(ArithError::ZeroDenominator)));
    }

    #[test]
    fn coeffs_of_groups_by_power() {
        // (t^2 + x0 t + x1) / x2 grouped by t.
        let t = R::var(VarId::T);
        let f = t
            .pow(2)
            .add(&x(0).mul(&t))
            .add(&x(1))
            .div(&x(2))
            .unwrap();
        let cs = f.coeffs_of(VarId::T);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], x(1).div(&x(2)).unwrap());
        assert_eq!(cs[1], x(0).div(&x(2)).unwrap());
        assert_eq!(cs[2], int(1).div(&x(2)).unwrap());
    }
}

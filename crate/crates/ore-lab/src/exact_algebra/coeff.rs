//! The coefficient ring A: either the field K itself, or K[t] with the
//! maximal ideal P = (t).
//!
//! Elements are carried as rational functions whose reduced denominator is
//! free of `t` (so `t` occurs polynomially); in the field case `t` may not
//! occur at all. Closure under ring operations is then automatic, and the
//! canonical quotient map A -> A/P = K is evaluation at t = 0.

use super::field::Scalar;
use super::ratfunc::RatFunc;
use super::unipoly::UniPoly;
use super::vars::VarId;
use std::fmt;

/// Which coefficient ring a scenario uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffRing {
    /// A = K, P = 0; the bar map is the identity.
    Field,
    /// A = K[t], P = (t); the bar map evaluates t at 0.
    PolyT,
}

impl CoeffRing {
    pub fn has_t(&self) -> bool {
        matches!(self, CoeffRing::PolyT)
    }
}

#[derive(Clone, Debug)]
pub enum CoeffError {
    /// The value is not in A: its reduced denominator involves t.
    DenominatorHasT,
    /// Field mode: t may not occur at all.
    TNotAllowed,
    /// Inverse of a non-unit requested.
    NotAUnit,
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DenominatorHasT => write!(f, "denominator involves t: not in K[t]"),
            CoeffError::TNotAllowed => write!(f, "t does not exist in this coefficient ring"),
            CoeffError::NotAUnit => write!(f, "element is not a unit of the coefficient ring"),
        }
    }
}

impl std::error::Error for CoeffError {}

/// An element of A, normalized as a reduced rational function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffElem<S: Scalar> {
    value: RatFunc<S>,
}

impl<S: Scalar> CoeffElem<S> {
    /// Admit a rational function into A, checking the mode's invariant.
    pub fn new(value: RatFunc<S>, mode: CoeffRing) -> Result<Self, CoeffError> {
        match mode {
            CoeffRing::Field => {
                if value.contains_var(VarId::T) {
                    return Err(CoeffError::TNotAllowed);
                }
            }
            CoeffRing::PolyT => {
                if value.den().contains_var(VarId::T) {
                    return Err(CoeffError::DenominatorHasT);
                }
            }
        }
        Ok(CoeffElem { value })
    }

    /// Embed an element of K (t-free by contract).
    pub fn from_k(value: RatFunc<S>) -> Self {
        debug_assert!(!value.contains_var(VarId::T));
        CoeffElem { value }
    }

    pub fn zero() -> Self {
        CoeffElem { value: RatFunc::zero() }
    }

    pub fn one() -> Self {
        CoeffElem { value: RatFunc::one() }
    }

    pub fn t() -> Self {
        CoeffElem { value: RatFunc::var(VarId::T) }
    }

    pub fn value(&self) -> &RatFunc<S> {
        &self.value
    }

    pub fn into_value(self) -> RatFunc<S> {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        CoeffElem { value: self.value.add(&other.value) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CoeffElem { value: self.value.sub(&other.value) }
    }

    pub fn neg(&self) -> Self {
        CoeffElem { value: self.value.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CoeffElem { value: self.value.mul(&other.value) }
    }

    /// Degree in t (0 in field mode).
    pub fn t_degree(&self) -> u32 {
        self.value.num().degree_of(VarId::T)
    }

    /// The canonical image in K = A/P: evaluate t at 0. Total on A.
    pub fn bar(&self) -> RatFunc<S> {
        if !self.value.contains_var(VarId::T) {
            return self.value.clone();
        }
        self.value
            .substitute(&|v| if v == VarId::T { Some(RatFunc::zero()) } else { None })
            .expect("denominator is t-free")
    }

    /// Is this a unit of A? In the field case any nonzero element; in K[t]
    /// the nonzero elements of K.
    pub fn is_unit(&self, mode: CoeffRing) -> bool {
        !self.value.is_zero() && (mode == CoeffRing::Field || !self.value.contains_var(VarId::T))
    }

    pub fn inv(&self, mode: CoeffRing) -> Result<Self, CoeffError> {
        if !self.is_unit(mode) {
            return Err(CoeffError::NotAUnit);
        }
        Ok(CoeffElem {
            value: self.value.inv().expect("nonzero"),
        })
    }

    /// Exact division in A: `Some(g)` with `self = q * g`, `None` when `q`
    /// does not divide `self` in A. Panics when `q` is zero.
    pub fn exact_div(&self, q: &Self, mode: CoeffRing) -> Option<Self> {
        assert!(!q.is_zero(), "division by zero in A");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let quotient = self.value.div(&q.value).expect("nonzero divisor");
        match CoeffElem::new(quotient, mode) {
            Ok(g) => Some(g),
            Err(_) => None,
        }
    }

    pub fn divides(&self, other: &Self, mode: CoeffRing) -> bool {
        other.exact_div(self, mode).is_some()
    }

    /// The t-coefficients as elements of K: entry `i` is the coefficient of
    /// `t^i`. Field-mode elements give a single entry.
    pub fn t_coeffs(&self) -> Vec<RatFunc<S>> {
        self.value.coeffs_of(VarId::T)
    }

    /// Rebuild from t-coefficients.
    pub fn from_t_coeffs(coeffs: &[RatFunc<S>]) -> Self {
        let t = RatFunc::var(VarId::T);
        let mut acc = RatFunc::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&t).add(c);
        }
        CoeffElem { value: acc }
    }

    /// View a polynomial over A in the Ore variable as a `UniPoly` whose
    /// coefficients are the underlying rational functions.
    pub fn poly_to_unipoly(coeffs: &[CoeffElem<S>]) -> UniPoly<S> {
        UniPoly::from_coeffs(coeffs.iter().map(|c| c.value.clone()).collect())
    }
}

impl<S: Scalar> fmt::Display for CoeffElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type C = CoeffElem<BigRational>;
    type R = RatFunc<BigRational>;

    fn x(i: u32) -> R {
        R::var(VarId::X(i))
    }

    #[test]
    fn admission_rules() {
        let t = R::var(VarId::T);
        assert!(C::new(t.clone(), CoeffRing::Field).is_err());
        assert!(C::new(t.clone(), CoeffRing::PolyT).is_ok());
        let inv_t = R::one().div(&t).unwrap();
        assert!(matches!(
            C::new(inv_t, CoeffRing::PolyT),
            Err(CoeffError::DenominatorHasT)
        ));
        // t / x0 is fine: denominator is t-free.
        let mixed = t.div(&x(0)).unwrap();
        assert!(C::new(mixed, CoeffRing::PolyT).is_ok());
    }

    #[test]
    fn bar_evaluates_t_at_zero() {
        // bar(t^2 + x0 t + x1) = x1, bar(t) = 0, bar is the identity on K.
        let t = C::t();
        let f = t
            .mul(&t)
            .add(&C::from_k(x(0)).mul(&t))
            .add(&C::from_k(x(1)));
        assert_eq!(f.bar(), x(1));
        assert_eq!(C::t().bar(), R::zero());
        assert_eq!(C::from_k(x(0)).bar(), x(0));
    }

    #[test]
    fn units_and_divisibility() {
        let t = C::t();
        assert!(!t.is_unit(CoeffRing::PolyT));
        assert!(C::from_k(x(0)).is_unit(CoeffRing::PolyT));
        // t does not divide 1 in K[t], but anything nonzero divides in K.
        assert!(!t.divides(&C::one(), CoeffRing::PolyT));
        assert!(t.mul(&t).exact_div(&t, CoeffRing::PolyT).is_some());
        assert!(C::from_k(x(0)).divides(&C::one(), CoeffRing::Field));
    }

    #[test]
    fn t_coefficient_round_trip() {
        let t = C::t();
        let f = t.mul(&t).add(&C::from_k(x(2)).mul(&t)).add(&C::one());
        let cs = f.t_coeffs();
        assert_eq!(cs.len(), 3);
        assert_eq!(C::from_t_coeffs(&cs), f);
    }
}

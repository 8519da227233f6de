//! Dense univariate polynomials with rational-function coefficients.
//!
//! Used for the x-components of the T decomposition (K[x] and A[x] viewed
//! inside F(X,t)[x]) and for exact division in one distinguished variable.

use super::field::Scalar;
use super::ratfunc::RatFunc;
use std::fmt;

/// Polynomial in one distinguished variable; `coeffs[k]` is the coefficient
/// of the k-th power, trailing zeros trimmed, empty = zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<S: Scalar> {
    coeffs: Vec<RatFunc<S>>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc<S>) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The distinguished variable itself.
    pub fn gen() -> Self {
        Self::from_coeffs(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn from_coeffs(coeffs: Vec<RatFunc<S>>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RatFunc<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> &[RatFunc<S>] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&RatFunc<S>> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&other.coeff(k)));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &RatFunc<S>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|k| k.mul(c)).collect())
    }

    /// Multiply by the k-th power of the variable.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![RatFunc::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: out }
    }

    /// Evaluate at a rational function.
    pub fn eval(&self, point: &RatFunc<S>) -> RatFunc<S> {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(point).add(c);
        }
        acc
    }

    pub fn map_coeffs<F>(&self, f: F) -> Self
    where
        F: Fn(&RatFunc<S>) -> RatFunc<S>,
    {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Long division over field coefficients: `(quotient, remainder)`.
    /// Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = vec![RatFunc::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem
                .leading_coeff()
                .unwrap()
                .div(&lc)
                .expect("leading coefficient nonzero");
            quo[rd - dd] = c.clone();
            rem = rem.sub(&divisor.scale(&c).shift(rd - dd));
        }
        (Self::from_coeffs(quo), rem)
    }

    /// Quotient when the division is exact, `None` otherwise.
    /// Non-divisibility is a normal outcome, not an error.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({})", c)?;
            } else if k == 1 {
                write!(f, "({})*X", c)?;
            } else {
                write!(f, "({})*X^{}", c, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::vars::VarId;
    use num_rational::BigRational;

    type U = UniPoly<BigRational>;
    type R = RatFunc<BigRational>;

    fn x1() -> R {
        R::var(VarId::X(1))
    }

    #[test]
    fn exact_division_trivial_cases() {
        let p = U::gen().add(&U::constant(x1()));
        assert_eq!(p.exact_div(&p).unwrap(), U::one());
        assert_eq!(U::zero().exact_div(&p).unwrap(), U::zero());
    }

    #[test]
    fn exact_division_with_multiply_back() {
        // (X^2 - x1^2) / (X - x1) = X + x1 in K[X].
        let p = U::gen().mul(&U::gen()).sub(&U::constant(x1().pow(2)));
        let d = U::gen().sub(&U::constant(x1()));
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, U::gen().add(&U::constant(x1())));
        assert_eq!(q.mul(&d), p);
    }

    #[test]
    fn non_divisibility_is_a_normal_outcome() {
        let p = U::gen().add(&U::one());
        let d = U::gen().sub(&U::constant(x1()));
        assert!(p.exact_div(&d).is_none());
        let (q, r) = p.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
    }

    #[test]
    fn eval_is_a_homomorphism_point() {
        let p = U::gen().mul(&U::gen()).add(&U::constant(R::from_i64(3)));
        let at = x1().add(&R::one());
        assert_eq!(p.eval(&at), at.mul(&at).add(&R::from_i64(3)));
    }
}

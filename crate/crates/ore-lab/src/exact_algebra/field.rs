//! Base field scalars: arbitrary-precision rationals and odd prime fields.
//!
//! Everything above this layer (polynomials, rational functions, rings) is
//! generic over [`Scalar`]. The default base field is `Q`; `Fp` is an
//! alternative for faster runs, selected by the scenario file.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::cell::Cell;
use std::fmt::{Debug, Display};

/// Exact field scalar. All operations are total except `inv` on zero.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self) -> Option<Self>;
    /// Image of an integer under the canonical map Z -> F.
    fn from_bigint(n: &BigInt) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Draw a small scalar with numerator/denominator bounded by `bound`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self {
        let d = Self::from_i64(den).inv().expect("zero denominator");
        Self::from_i64(num).mul(&d)
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// A common scalar factor of the given values, used to keep coefficient
    /// bit-size polynomial along remainder sequences. Dividing every value by
    /// it must leave the collection "normalized"; returning 1 is always
    /// sound. For rationals this is gcd(numerators)/lcm(denominators).
    fn scalar_content<'a, I: Iterator<Item = &'a Self>>(_values: I) -> Self
    where
        Self: 'a,
    {
        Self::one()
    }
    /// True when `Display` renders this scalar with a leading minus sign.
    fn displays_negative(&self) -> bool {
        false
    }
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let b = bound.max(1) as i64;
        let num = rng.gen_range(-b..=b);
        let den = rng.gen_range(1..=b);
        Self::from_ratio(num, den)
    }
    fn scalar_content<'a, I: Iterator<Item = &'a Self>>(values: I) -> Self {
        use num_integer::Integer;
        let mut num_gcd = num_bigint::BigInt::from(0);
        let mut den_lcm = num_bigint::BigInt::from(1);
        for v in values {
            num_gcd = num_gcd.gcd(v.numer());
            den_lcm = den_lcm.lcm(v.denom());
        }
        if num_traits::Zero::is_zero(&num_gcd) {
            return <Self as Scalar>::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }
    fn displays_negative(&self) -> bool {
        self.is_negative()
    }
}

thread_local! {
    static FP_MODULUS: Cell<u64> = const { Cell::new(0) };
}

/// Install the prime modulus used by all `Fp` values on this thread.
pub fn set_fp_modulus(p: u64) {
    assert!(p >= 2 && p < (1 << 31), "modulus out of range");
    FP_MODULUS.with(|m| m.set(p));
}

fn fp_modulus() -> u64 {
    let p = FP_MODULUS.with(|m| m.get());
    assert!(p != 0, "Fp used before set_fp_modulus");
    p
}

/// Prime field F_p for p < 2^31. The modulus is thread-local state installed
/// once per scenario via [`set_fp_modulus`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn new(value: i64) -> Self {
        let p = fp_modulus() as i64;
        Fp(value.rem_euclid(p) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}p", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % fp_modulus())
    }
    fn sub(&self, other: &Self) -> Self {
        let p = fp_modulus();
        Fp((p + self.0 - other.0) % p)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % fp_modulus())
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(fp_modulus() - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let m = fp_modulus() as i128;
        let (mut r0, mut r1) = (self.0 as i128, m);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1, "modulus is not prime");
        Some(Fp(s0.rem_euclid(m) as u64))
    }
    fn from_bigint(n: &BigInt) -> Self {
        let p = BigInt::from(fp_modulus());
        let r = ((n % &p) + &p) % &p;
        let digit = r.magnitude().iter_u64_digits().next().unwrap_or(0);
        Fp(digit)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let b = bound.max(1) as i64;
        Fp::new(rng.gen_range(-b..=b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        set_fp_modulus(101);
        for v in 1..101 {
            let x = Fp::new(v);
            let inv = x.inv().unwrap();
            assert!(x.mul(&inv).is_one());
        }
    }

    #[test]
    fn fp_from_bigint_reduces_negatives() {
        set_fp_modulus(7);
        assert_eq!(Fp::from_bigint(&BigInt::from(-3)), Fp::new(4));
    }

    #[test]
    fn rational_ratio() {
        let half = <BigRational as Scalar>::from_ratio(1, 2);
        let two = <BigRational as Scalar>::from_i64(2);
        assert!(Scalar::is_one(&Scalar::mul(&half, &two)));
    }
}

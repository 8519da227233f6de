//! Seeded random sampling of field and ring elements.
//!
//! Distributions are deliberately small: coefficients with numerator and
//! denominator bounded by 20, supports of at most 3 variables, degrees at
//! most 3. Denominators are usually trivial so exact arithmetic stays fast
//! while cancellation still gets exercised.

use super::coeff::{CoeffElem, CoeffRing};
use super::field::Scalar;
use super::multipoly::{Monomial, MultiPoly};
use super::ratfunc::RatFunc;
use super::vars::VarId;
use rand::Rng;

/// Bounds that shape every sampled value; fixed by the scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBounds {
    /// Variables drawn per polynomial (from the scenario's generators).
    pub max_vars: usize,
    /// Maximum exponent per variable.
    pub max_degree: u32,
    /// Maximum number of terms per polynomial.
    pub max_terms: usize,
    /// Bound on coefficient numerators/denominators.
    pub coeff_bound: u32,
    /// Maximum degree in t for coefficient-ring elements.
    pub max_t_degree: u32,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_vars: 3,
            max_degree: 3,
            max_terms: 3,
            coeff_bound: 20,
            max_t_degree: 2,
        }
    }
}

/// Random sparse polynomial in the given generators (possibly zero).
pub fn sample_poly<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &SampleBounds,
    generators: &[VarId],
) -> MultiPoly<S> {
    let nterms = rng.gen_range(0..=bounds.max_terms);
    let mut p = MultiPoly::zero();
    for _ in 0..nterms {
        let c = S::sample(rng, bounds.coeff_bound);
        let mut m = Monomial::one();
        let nvars = rng.gen_range(0..=bounds.max_vars.min(generators.len()));
        for _ in 0..nvars {
            let v = generators[rng.gen_range(0..generators.len())];
            let e = rng.gen_range(1..=bounds.max_degree.max(1));
            m = m.mul(&Monomial::var_pow(v, e));
        }
        p.add_term(m, c);
    }
    p
}

fn sample_nonzero_poly<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &SampleBounds,
    generators: &[VarId],
) -> MultiPoly<S> {
    loop {
        let p = sample_poly::<S, R>(rng, bounds, generators);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random element of K over the given generators. Denominators are 1 most of
/// the time, occasionally a single term or a small binomial.
pub fn sample_ratfunc<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &SampleBounds,
    generators: &[VarId],
) -> RatFunc<S> {
    let num = sample_poly::<S, R>(rng, bounds, generators);
    let den = match rng.gen_range(0..10) {
        0..=6 => MultiPoly::one(),
        7 | 8 => {
            let v = if generators.is_empty() {
                return RatFunc::from_poly(num);
            } else {
                generators[rng.gen_range(0..generators.len())]
            };
            let e = rng.gen_range(1..=bounds.max_degree.max(1));
            MultiPoly::from_term(S::one(), Monomial::var_pow(v, e))
        }
        _ => {
            let mut tight = *bounds;
            tight.max_terms = 2;
            tight.max_vars = 1;
            sample_nonzero_poly::<S, R>(rng, &tight, generators)
        }
    };
    RatFunc::new(num, den).expect("denominator nonzero")
}

pub fn sample_nonzero_ratfunc<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &SampleBounds,
    generators: &[VarId],
) -> RatFunc<S> {
    loop {
        let f = sample_ratfunc::<S, R>(rng, bounds, generators);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random element of the coefficient ring A: a K-element in field mode, a
/// small polynomial in t with K-coefficients otherwise.
pub fn sample_coeff<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &SampleBounds,
    generators: &[VarId],
    mode: CoeffRing,
) -> CoeffElem<S> {
    match mode {
        CoeffRing::Field => CoeffElem::from_k(sample_ratfunc::<S, R>(rng, bounds, generators)),
        CoeffRing::PolyT => {
            let deg = rng.gen_range(0..=bounds.max_t_degree);
            let mut tight = *bounds;
            tight.max_terms = 2;
            let coeffs: Vec<RatFunc<S>> = (0..=deg)
                .map(|_| sample_ratfunc::<S, R>(rng, &tight, generators))
                .collect();
            CoeffElem::from_t_coeffs(&coeffs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let gens = [VarId::X(0), VarId::X(1)];
        let bounds = SampleBounds::default();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let fa = sample_ratfunc::<num_rational::BigRational, _>(&mut a, &bounds, &gens);
            let fb = sample_ratfunc::<num_rational::BigRational, _>(&mut b, &bounds, &gens);
            assert_eq!(fa, fb);
        }
    }

    #[test]
    fn coeff_samples_respect_the_mode() {
        let gens = [VarId::X(0)];
        let bounds = SampleBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = sample_coeff::<num_rational::BigRational, _>(
                &mut rng,
                &bounds,
                &gens,
                CoeffRing::Field,
            );
            assert!(!a.value().contains_var(VarId::T));
            let b = sample_coeff::<num_rational::BigRational, _>(
                &mut rng,
                &bounds,
                &gens,
                CoeffRing::PolyT,
            );
            assert!(!b.value().den().contains_var(VarId::T));
        }
    }
}

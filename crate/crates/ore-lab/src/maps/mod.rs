//! Symbolic homomorphisms: the injective endomorphism phi of the coefficient
//! ring, its extension to polynomials in the Ore variable, and classifiers
//! for image membership and transcendence over the subfield generated by the
//! image.
//!
//! Membership and transcendence are undecidable for arbitrary rule sets, so
//! certified Yes/No answers are only produced inside the monomial
//! substitution class (every rule image a single variable power, pairwise
//! distinct targets); everything else reports `Unknown`. Fresh-variable
//! certificates are sound for any rule set and are used whenever available.

mod endo;
mod membership;

pub use endo::{Affine, EndoSpec, InjectivityVerdict, MapError, RuleText};
pub use membership::{
    image_membership, transcendence_over_image, ImageMembership, MembershipCertificate,
    Transcendence, TranscendenceCertificate,
};

use crate::exact_algebra::{RatFunc, Scalar, UniPoly, VarId};

/// Exact image of a coefficient-ring element (carried as a rational function
/// with t occurring polynomially) under phi.
pub fn apply_phi<S: Scalar>(spec: &EndoSpec<S>, a: &RatFunc<S>) -> Result<RatFunc<S>, MapError> {
    let mut images = std::collections::BTreeMap::new();
    for v in a.support() {
        images.insert(v, spec.image_of_var(v)?);
    }
    a.substitute(&|v| images.get(&v).cloned())
        .map_err(MapError::Arith)
}

/// The extension phi_omega of phi to polynomials over A in the Ore variable,
/// sending the variable itself to omega: f = sum a_k X^k maps to
/// sum phi(a_k) omega^k in K.
pub fn phi_omega<S: Scalar>(
    spec: &EndoSpec<S>,
    f: &UniPoly<S>,
    omega: &RatFunc<S>,
) -> Result<RatFunc<S>, MapError> {
    let mut acc = RatFunc::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(omega).add(&apply_phi(spec, c)?);
    }
    Ok(acc)
}

/// Coefficientwise canonical image of a polynomial over A in K[x]: evaluate
/// t at 0, fix the polynomial variable.
pub fn bar_poly<S: Scalar>(f: &UniPoly<S>) -> UniPoly<S> {
    f.map_coeffs(|c| {
        if c.contains_var(VarId::T) {
            c.substitute(&|v| (v == VarId::T).then(RatFunc::zero))
                .expect("denominator is t-free")
        } else {
            c.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::CoeffElem;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;

    fn x(i: u32) -> R {
        R::var(VarId::X(i))
    }

    fn final_example_spec() -> EndoSpec<BigRational> {
        EndoSpec::parse_rules(&[("x{i}", "x{i+1}^{i+1}")]).unwrap()
    }

    fn example_41_spec() -> EndoSpec<BigRational> {
        EndoSpec::parse_rules(&[("t", "x1"), ("x{i}", "x{i+2}")]).unwrap()
    }

    fn asano_spec() -> EndoSpec<BigRational> {
        EndoSpec::parse_rules(&[("x0", "x0^2")]).unwrap()
    }

    #[test]
    fn family_rule_images() {
        let spec = final_example_spec();
        // phi(x1) = x2^2, phi(1) = 1.
        assert_eq!(apply_phi(&spec, &x(1)).unwrap(), x(2).pow(2));
        assert_eq!(apply_phi(&spec, &R::one()).unwrap(), R::one());
        assert_eq!(apply_phi(&spec, &x(0)).unwrap(), x(1));
    }

    #[test]
    fn t_rule_composes_with_family() {
        // phi(t * x0) = x1 * x2, assembled from the two rules.
        let spec = example_41_spec();
        let t = R::var(VarId::T);
        let a = t.mul(&x(0));
        let expected = apply_phi(&spec, &t)
            .unwrap()
            .mul(&apply_phi(&spec, &x(0)).unwrap());
        assert_eq!(apply_phi(&spec, &a).unwrap(), expected);
        assert_eq!(apply_phi(&spec, &a).unwrap(), x(1).mul(&x(2)));
    }

    #[test]
    fn phi_is_a_ring_homomorphism_on_samples() {
        use crate::exact_algebra::sample::{sample_ratfunc, SampleBounds};
        use rand::SeedableRng;
        let spec = final_example_spec();
        let gens = [VarId::X(0), VarId::X(1), VarId::X(2)];
        let bounds = SampleBounds::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let a = sample_ratfunc::<BigRational, _>(&mut rng, &bounds, &gens);
            let b = sample_ratfunc::<BigRational, _>(&mut rng, &bounds, &gens);
            let sum = apply_phi(&spec, &a.add(&b)).unwrap();
            assert_eq!(
                sum,
                apply_phi(&spec, &a).unwrap().add(&apply_phi(&spec, &b).unwrap())
            );
            let prod = apply_phi(&spec, &a.mul(&b)).unwrap();
            assert_eq!(
                prod,
                apply_phi(&spec, &a).unwrap().mul(&apply_phi(&spec, &b).unwrap())
            );
        }
    }

    #[test]
    fn uncovered_variable_is_an_error() {
        let spec = asano_spec();
        assert!(apply_phi(&spec, &x(0)).is_ok());
        assert!(matches!(
            apply_phi(&spec, &x(1)),
            Err(MapError::Uncovered(VarId::X(1)))
        ));
    }

    #[test]
    fn injectivity_certificates() {
        assert_eq!(
            final_example_spec().check_injectivity(),
            InjectivityVerdict::InjectiveCertified
        );
        assert_eq!(
            example_41_spec().check_injectivity(),
            InjectivityVerdict::InjectiveCertified
        );
        assert_eq!(
            asano_spec().check_injectivity(),
            InjectivityVerdict::InjectiveCertified
        );
        let identity = EndoSpec::<BigRational>::parse_rules(&[("x{i}", "x{i}")]).unwrap();
        assert_eq!(
            identity.check_injectivity(),
            InjectivityVerdict::InjectiveCertified
        );
        assert!(identity.is_identity());
        // Non-monomial images fall outside the certified class.
        let odd =
            EndoSpec::<BigRational>::parse_rules(&[("x0", "x1 + x2"), ("x1", "x1*x2")]).unwrap();
        assert_eq!(odd.check_injectivity(), InjectivityVerdict::Unknown);
        assert!(!final_example_spec().is_identity());
    }

    #[test]
    fn overlapping_targets_are_uncertified() {
        // Family targets {1,2,...} and a concrete t-rule targeting x1 collide.
        let spec =
            EndoSpec::<BigRational>::parse_rules(&[("t", "x1"), ("x{i}", "x{i+1}")]).unwrap();
        assert_eq!(spec.check_injectivity(), InjectivityVerdict::Unknown);
    }

    #[test]
    fn phi_omega_values() {
        let spec = final_example_spec();
        // phi_omega(X) = omega.
        let xpoly = UniPoly::gen();
        let omega = x(2);
        assert_eq!(phi_omega(&spec, &xpoly, &omega).unwrap(), omega);
        // Degree-0 polynomials go to phi of the constant.
        let c = UniPoly::constant(x(1));
        assert_eq!(phi_omega(&spec, &c, &omega).unwrap(), x(2).pow(2));
        // omega = x2: X^2 - x1 cancels exactly since phi(x1) = x2^2.
        let f = UniPoly::gen()
            .mul(&UniPoly::gen())
            .sub(&UniPoly::constant(x(1)));
        assert_eq!(phi_omega(&spec, &f, &omega).unwrap(), R::zero());
    }

    #[test]
    fn phi_omega_is_a_ring_homomorphism_on_samples() {
        use crate::exact_algebra::sample::{sample_coeff, SampleBounds};
        use crate::exact_algebra::CoeffRing;
        use rand::SeedableRng;
        let spec = example_41_spec();
        let gens = [VarId::X(0), VarId::X(1)];
        let bounds = SampleBounds::default();
        let omega = x(0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let mut draw = || {
                UniPoly::from_coeffs(
                    (0..3)
                        .map(|_| {
                            sample_coeff::<BigRational, _>(
                                &mut rng,
                                &bounds,
                                &gens,
                                CoeffRing::PolyT,
                            )
                            .into_value()
                        })
                        .collect(),
                )
            };
            let f = draw();
            let g = draw();
            let lhs = phi_omega(&spec, &f.mul(&g), &omega).unwrap();
            let rhs = phi_omega(&spec, &f, &omega)
                .unwrap()
                .mul(&phi_omega(&spec, &g, &omega).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = phi_omega(&spec, &f.add(&g), &omega).unwrap();
            let rhs = phi_omega(&spec, &f, &omega)
                .unwrap()
                .add(&phi_omega(&spec, &g, &omega).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bar_poly_kills_the_ideal() {
        let t = CoeffElem::<BigRational>::t();
        let f = UniPoly::from_coeffs(vec![
            t.mul(&t).value().clone(),
            t.mul(&CoeffElem::from_k(x(0))).value().clone(),
            x(1),
        ]);
        let barred = bar_poly(&f);
        assert_eq!(barred.coeff(0), R::zero());
        assert_eq!(barred.coeff(1), R::zero());
        assert_eq!(barred.coeff(2), x(1));
    }
}

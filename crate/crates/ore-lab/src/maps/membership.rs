//! Certified image membership and transcendence over the subfield generated
//! by the image.
//!
//! Soundness of the two certificate kinds:
//! - Fresh variable: every rule image lies in a rational function field that
//!   omits the variable, hence so does the subfield generated by the image;
//!   a purely transcendental extension's base field is algebraically closed
//!   in it, so an element whose reduced form touches the fresh variable is
//!   neither in the image nor algebraic over it.
//! - Exponent lattice (monomial specs): a monomial substitution with
//!   algebraically independent single-variable targets preserves coprimality,
//!   so reduced forms map to reduced forms and membership forces every
//!   exponent of a target variable to be a multiple of its rule exponent.

use super::endo::{EndoSpec, MapError};
use super::apply_phi;
use crate::exact_algebra::{CoeffRing, Monomial, MultiPoly, RatFunc, Scalar, VarId};
use std::fmt;

/// Machine-checkable reason an element is not in phi(A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipCertificate {
    /// The reduced form uses a variable absent from every rule image.
    FreshVariable(VarId),
    /// Some exponent of a target variable is not a multiple of the rule
    /// exponent, so the element is not even in the generated subfield image.
    ExponentLattice {
        var: VarId,
        exponent: u32,
        required_multiple: u32,
    },
    /// The preimage exists in Frac(A) but its denominator involves t, so the
    /// element is in phi(Frac A) without being in phi(A).
    PreimageDenominator { preimage: String },
}

impl fmt::Display for MembershipCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipCertificate::FreshVariable(v) => {
                write!(f, "variable {} occurs in no rule image", v)
            }
            MembershipCertificate::ExponentLattice {
                var,
                exponent,
                required_multiple,
            } => write!(
                f,
                "exponent {} of {} is not a multiple of {}",
                exponent, var, required_multiple
            ),
            MembershipCertificate::PreimageDenominator { preimage } => write!(
                f,
                "preimage {} has t in its denominator, so it lies outside A",
                preimage
            ),
        }
    }
}

/// Result of deciding whether an element of K lies in phi(A).
#[derive(Clone, Debug)]
pub enum ImageMembership<S: Scalar> {
    /// A verified preimage in A: applying phi reproduces the query exactly.
    InImage(RatFunc<S>),
    NotInImage(MembershipCertificate),
    Unknown,
}

impl<S: Scalar> ImageMembership<S> {
    pub fn is_in(&self) -> bool {
        matches!(self, ImageMembership::InImage(_))
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, ImageMembership::NotInImage(_))
    }
}

/// Decide `k in phi(A)`. The query must lie in K (no t).
pub fn image_membership<S: Scalar>(
    spec: &EndoSpec<S>,
    k: &RatFunc<S>,
    mode: CoeffRing,
) -> ImageMembership<S> {
    assert!(!k.contains_var(VarId::T), "membership queries live in K");

    // Fresh-variable certificate, sound for every rule set.
    for v in k.support() {
        if let VarId::X(j) = v {
            if spec.is_fresh_variable(j) {
                return ImageMembership::NotInImage(MembershipCertificate::FreshVariable(v));
            }
        }
    }

    let Some(view) = spec.monomial_view() else {
        return ImageMembership::Unknown;
    };

    // Lattice check on the reduced numerator and denominator.
    for poly in [k.num(), k.den()] {
        for (m, _) in poly.terms() {
            for &(v, e) in m.exponents() {
                let VarId::X(j) = v else {
                    return ImageMembership::Unknown;
                };
                let Some((_, rule_exp)) = view.source_of(j) else {
                    // Non-fresh yet not a target cannot happen for monomial
                    // specs; stay honest if it does.
                    return ImageMembership::Unknown;
                };
                if e % rule_exp != 0 {
                    return ImageMembership::NotInImage(MembershipCertificate::ExponentLattice {
                        var: v,
                        exponent: e,
                        required_multiple: rule_exp,
                    });
                }
            }
        }
    }

    // Invert the substitution term by term.
    let unsub = |poly: &MultiPoly<S>| -> MultiPoly<S> {
        let mut out = MultiPoly::zero();
        for (m, c) in poly.terms() {
            let mut pre = Monomial::one();
            for &(v, e) in m.exponents() {
                let VarId::X(j) = v else { unreachable!() };
                let (src, rule_exp) = view.source_of(j).expect("checked above");
                pre = pre.mul(&Monomial::var_pow(src, e / rule_exp));
            }
            out.add_term(pre, c.clone());
        }
        out
    };
    let preimage = match RatFunc::new(unsub(k.num()), unsub(k.den())) {
        Ok(p) => p,
        Err(_) => return ImageMembership::Unknown,
    };

    if mode == CoeffRing::PolyT && preimage.den().contains_var(VarId::T) {
        return ImageMembership::NotInImage(MembershipCertificate::PreimageDenominator {
            preimage: preimage.to_string(),
        });
    }

    // Round-trip verification is part of the contract.
    match apply_phi(spec, &preimage) {
        Ok(image) if image == *k => ImageMembership::InImage(preimage),
        _ => ImageMembership::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscendenceCertificate {
    FreshVariable(VarId),
}

impl fmt::Display for TranscendenceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranscendenceCertificate::FreshVariable(v) => write!(
                f,
                "variable {} occurs in no rule image, and the base of a purely \
                 transcendental extension is algebraically closed in it",
                v
            ),
        }
    }
}

/// Result of probing whether omega is transcendental over the subfield of K
/// generated by phi(A).
#[derive(Clone, Debug)]
pub enum Transcendence<S: Scalar> {
    Transcendental(TranscendenceCertificate),
    /// A pure-power relation omega^degree = phi(preimage), verified exactly.
    /// `degree` is minimal among pure powers up to the search bound; for
    /// monomial specs the lattice argument makes it the algebraic degree.
    AlgebraicWitness {
        degree: u32,
        preimage: RatFunc<S>,
        image: RatFunc<S>,
    },
    Unknown,
}

/// Search for pure-power relations `omega^d in phi(A)` for d up to
/// `degree_bound` (which must be >= 1); a fresh variable in omega's reduced
/// support certifies transcendence outright.
pub fn transcendence_over_image<S: Scalar>(
    spec: &EndoSpec<S>,
    omega: &RatFunc<S>,
    degree_bound: u32,
    mode: CoeffRing,
) -> Result<Transcendence<S>, MapError> {
    assert!(degree_bound >= 1, "degree_bound must be >= 1");
    assert!(!omega.contains_var(VarId::T), "omega lives in K");

    for v in omega.support() {
        if let VarId::X(j) = v {
            if spec.is_fresh_variable(j) {
                return Ok(Transcendence::Transcendental(
                    TranscendenceCertificate::FreshVariable(v),
                ));
            }
        }
    }

    for d in 1..=degree_bound {
        let power = omega.pow(d);
        if let ImageMembership::InImage(preimage) = image_membership(spec, &power, mode) {
            let image = apply_phi(spec, &preimage)?;
            debug_assert_eq!(image, power);
            return Ok(Transcendence::AlgebraicWitness {
                degree: d,
                preimage,
                image,
            });
        }
    }
    Ok(Transcendence::Unknown)
}

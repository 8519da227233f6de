//! The corner ring R = A + vK.
//!
//! A is a commutative domain (K itself, or K[t] with P = (t)), K = A/P, and
//! vK is a one-dimensional right K-space made into an (A,A)-bimodule by
//! a.vk = v phi(a) k and vk.a = vk abar. Squaring kills vK, and
//!
//!   (a + v lbar)(b + v mbar) = ab + v(phi(a) mbar + lbar bbar).
//!
//! sigma projects onto the A-part; the sigma-derivations live in
//! [`derivation`], duo diagnostics in [`duo`].

pub mod derivation;
pub mod duo;

pub use derivation::{
    apply_derivation, check_sigma_derivation, classify_derivation, ClassifyError,
    DerivationClass, DerivationError, DerivationSpec, LeibnizReport,
};
pub use duo::{
    left_duo_counterexample, principal_right_ideal_membership, right_duo_probe, DuoProbeReport,
    IdealMembership, LeftDuoOutcome,
};

use crate::exact_algebra::sample::{sample_coeff, sample_ratfunc, SampleBounds};
use crate::exact_algebra::{CoeffElem, CoeffRing, RatFunc, Scalar, VarId, VarRegistry};
use crate::maps::{self, EndoSpec, InjectivityVerdict, MapError};
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// An element a + v.mbar of R, both components normalized; equality is
/// componentwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElem<S: Scalar> {
    /// The A-part.
    pub a: CoeffElem<S>,
    /// The K-part: the coefficient of v.
    pub m: RatFunc<S>,
}

impl<S: Scalar> RingElem<S> {
    pub fn new(a: CoeffElem<S>, m: RatFunc<S>) -> Self {
        debug_assert!(!m.contains_var(VarId::T));
        RingElem { a, m }
    }

    pub fn zero() -> Self {
        RingElem { a: CoeffElem::zero(), m: RatFunc::zero() }
    }

    pub fn one() -> Self {
        RingElem { a: CoeffElem::one(), m: RatFunc::zero() }
    }

    pub fn v() -> Self {
        RingElem { a: CoeffElem::zero(), m: RatFunc::one() }
    }

    /// Embed an element of A.
    pub fn from_a(a: CoeffElem<S>) -> Self {
        RingElem { a, m: RatFunc::zero() }
    }

    /// The element v.k for k in K.
    pub fn from_vk(k: RatFunc<S>) -> Self {
        RingElem { a: CoeffElem::zero(), m: k }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.m.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        RingElem {
            a: self.a.add(&other.a),
            m: self.m.add(&other.m),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RingElem {
            a: self.a.sub(&other.a),
            m: self.m.sub(&other.m),
        }
    }

    pub fn neg(&self) -> Self {
        RingElem { a: self.a.neg(), m: self.m.neg() }
    }
}

impl<S: Scalar> fmt::Display for RingElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.m.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "v*({})", self.m);
        }
        write!(f, "{} + v*({})", self.a, self.m)
    }
}

#[derive(Clone, Debug)]
pub enum RingError {
    Map(MapError),
    /// Input mentions a variable the scenario's phi does not cover.
    NotCovered(VarId),
    /// t appeared where the coefficient ring has none.
    TNotInRing,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::Map(e) => write!(f, "{}", e),
            RingError::NotCovered(v) => write!(f, "variable {} is not covered by phi", v),
            RingError::TNotInRing => write!(f, "t does not exist in this coefficient ring"),
        }
    }
}

impl std::error::Error for RingError {}

impl From<MapError> for RingError {
    fn from(e: MapError) -> Self {
        RingError::Map(e)
    }
}

/// Everything the ring operations need: the coefficient-ring mode, phi, the
/// declared field generators, and the variable registry.
pub struct RingCtx<S: Scalar> {
    pub mode: CoeffRing,
    pub phi: EndoSpec<S>,
    pub generators: Vec<u32>,
    pub registry: Arc<VarRegistry>,
}

impl<S: Scalar> RingCtx<S> {
    pub fn new(mode: CoeffRing, phi: EndoSpec<S>, generators: Vec<u32>) -> Result<Self, RingError> {
        if mode == CoeffRing::PolyT && !phi.has_t_rule() {
            return Err(RingError::Map(MapError::InvalidSpec(
                "coefficient ring K[t] requires an image for t".into(),
            )));
        }
        let registry = Arc::new(VarRegistry::new());
        for &g in &generators {
            registry.note(VarId::X(g));
        }
        if mode == CoeffRing::PolyT {
            registry.note(VarId::T);
        }
        Ok(RingCtx { mode, phi, generators, registry })
    }

    pub fn gen_vars(&self) -> Vec<VarId> {
        self.generators.iter().map(|&g| VarId::X(g)).collect()
    }

    pub fn injectivity(&self) -> InjectivityVerdict {
        self.phi.check_injectivity()
    }

    /// Check that a value only uses variables phi covers (and t only when the
    /// coefficient ring has it). CLI inputs go through this.
    pub fn check_covered(&self, f: &RatFunc<S>) -> Result<(), RingError> {
        for v in f.support() {
            match v {
                VarId::T => {
                    if self.mode != CoeffRing::PolyT {
                        return Err(RingError::TNotInRing);
                    }
                }
                VarId::X(_) => {
                    self.phi
                        .image_of_var(v)
                        .map_err(|_| RingError::NotCovered(v))?;
                }
            }
        }
        Ok(())
    }

    /// phi on an element of A, growing the registry as family rules demand
    /// fresh variables.
    pub fn apply_phi(&self, a: &CoeffElem<S>) -> RatFunc<S> {
        let img = maps::apply_phi(&self.phi, a.value()).expect("scenario covers its elements");
        for v in img.support() {
            self.registry.note(v);
        }
        img
    }

    /// The canonical image of a in K = A/P.
    pub fn bar(&self, a: &CoeffElem<S>) -> RatFunc<S> {
        a.bar()
    }

    /// (a + v lbar)(b + v mbar) = ab + v(phi(a) mbar + lbar bbar), exact.
    pub fn mul(&self, r1: &RingElem<S>, r2: &RingElem<S>) -> RingElem<S> {
        let a_part = r1.a.mul(&r2.a);
        let m_part = if r2.m.is_zero() && r1.m.is_zero() {
            RatFunc::zero()
        } else {
            let left = if r2.m.is_zero() {
                RatFunc::zero()
            } else {
                self.apply_phi(&r1.a).mul(&r2.m)
            };
            let right = if r1.m.is_zero() {
                RatFunc::zero()
            } else {
                r1.m.mul(&self.bar(&r2.a))
            };
            left.add(&right)
        };
        RingElem { a: a_part, m: m_part }
    }

    /// sigma(a + v lbar) = a: the projection onto the A-part.
    pub fn sigma(&self, r: &RingElem<S>) -> RingElem<S> {
        RingElem::from_a(r.a.clone())
    }

    /// a + v mbar is a unit iff a is a unit of A.
    pub fn is_unit(&self, r: &RingElem<S>) -> bool {
        r.a.is_unit(self.mode)
    }

    /// Inverse of a unit: (a + v mbar)^-1 = a^-1 - v phi(a)^-1 mbar abar^-1.
    pub fn inverse(&self, r: &RingElem<S>) -> Option<RingElem<S>> {
        if !self.is_unit(r) {
            return None;
        }
        let a_inv = r.a.inv(self.mode).ok()?;
        let m = if r.m.is_zero() {
            RatFunc::zero()
        } else {
            let phi_a = self.apply_phi(&r.a);
            let bar_a_inv = self.bar(&a_inv);
            phi_a
                .inv()
                .expect("phi is injective on a nonzero unit")
                .mul(&r.m)
                .mul(&bar_a_inv)
                .neg()
        };
        Some(RingElem { a: a_inv, m })
    }

    /// Random ring element within the sampling bounds.
    pub fn sample_elem<R: Rng + ?Sized>(&self, rng: &mut R, bounds: &SampleBounds) -> RingElem<S> {
        let gens = self.gen_vars();
        RingElem {
            a: sample_coeff(rng, bounds, &gens, self.mode),
            m: sample_ratfunc(rng, bounds, &gens),
        }
    }

    /// Random element with a nonzero A-part.
    pub fn sample_nonzero_a<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        bounds: &SampleBounds,
    ) -> RingElem<S> {
        loop {
            let r = self.sample_elem(rng, bounds);
            if !r.a.is_zero() {
                return r;
            }
        }
    }

    /// The scenario's canonical probe elements: 1, v, t (when present), and
    /// the declared generators embedded in A.
    pub fn probe_elems(&self) -> Vec<RingElem<S>> {
        let mut out = vec![RingElem::one(), RingElem::v()];
        if self.mode == CoeffRing::PolyT {
            out.push(RingElem::from_a(CoeffElem::t()));
        }
        for v in self.gen_vars() {
            out.push(RingElem::from_a(CoeffElem::from_k(RatFunc::var(v))));
        }
        out
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn v_squares_to_zero() {
        let ctx = final_example_ctx();
        let v = RingElem::v();
        assert!(ctx.mul(&v, &v).is_zero());
    }

    #[test]
    fn left_action_twists_by_phi() {
        // a.v = v phi(a): x0 . v = v x1 under the final-example rules.
        let ctx = final_example_ctx();
        let a = a_elem(&ctx, "x0");
        let av = ctx.mul(&a, &RingElem::v());
        assert_eq!(av, RingElem::from_vk(xvar(1)));
        // Right action goes through bar: v.x0 = v x0.
        let va = ctx.mul(&RingElem::v(), &a);
        assert_eq!(va, RingElem::from_vk(xvar(0)));
        // The commutator witnesses noncommutativity: x0 v - v x0 = v(x1 - x0).
        let comm = av.sub(&va);
        assert_eq!(comm, RingElem::from_vk(xvar(1).sub(&xvar(0))));
        assert!(!comm.is_zero());
    }

    #[test]
    fn sigma_is_an_idempotent_projection() {
        let ctx = example_41_ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bounds = SampleBounds::default();
        for _ in 0..40 {
            let r = ctx.sample_elem(&mut rng, &bounds);
            let s = ctx.sigma(&r);
            assert_eq!(s.a, r.a);
            assert!(s.m.is_zero());
            assert_eq!(ctx.sigma(&s), s);
        }
        assert!(ctx.sigma(&RingElem::v()).is_zero());
    }

    #[test]
    fn sigma_is_a_ring_homomorphism() {
        let ctx = example_41_ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let bounds = SampleBounds::default();
        for _ in 0..40 {
            let r = ctx.sample_elem(&mut rng, &bounds);
            let s = ctx.sample_elem(&mut rng, &bounds);
            assert_eq!(
                ctx.sigma(&ctx.mul(&r, &s)),
                ctx.mul(&ctx.sigma(&r), &ctx.sigma(&s))
            );
            assert_eq!(ctx.sigma(&r.add(&s)), ctx.sigma(&r).add(&ctx.sigma(&s)));
        }
    }

    #[test]
    fn multiplication_is_associative_and_distributive() {
        for ctx in [final_example_ctx(), example_41_ctx(), asano_ctx()] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let bounds = SampleBounds {
                max_terms: 2,
                max_degree: 2,
                ..SampleBounds::default()
            };
            for _ in 0..60 {
                let r = ctx.sample_elem(&mut rng, &bounds);
                let s = ctx.sample_elem(&mut rng, &bounds);
                let t = ctx.sample_elem(&mut rng, &bounds);
                let lhs = ctx.mul(&ctx.mul(&r, &s), &t);
                let rhs = ctx.mul(&r, &ctx.mul(&s, &t));
                assert_eq!(lhs, rhs);
                let d1 = ctx.mul(&r, &s.add(&t));
                let d2 = ctx.mul(&r, &s).add(&ctx.mul(&r, &t));
                assert_eq!(d1, d2);
                let one = RingElem::one();
                assert_eq!(ctx.mul(&r, &one), r);
                assert_eq!(ctx.mul(&one, &r), r);
            }
        }
    }

    #[test]
    fn units_invert() {
        let ctx = example_41_ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let bounds = SampleBounds::default();
        let mut tested = 0;
        while tested < 25 {
            let r = ctx.sample_elem(&mut rng, &bounds);
            if !ctx.is_unit(&r) {
                assert!(ctx.inverse(&r).is_none());
                continue;
            }
            let inv = ctx.inverse(&r).unwrap();
            assert_eq!(ctx.mul(&r, &inv), RingElem::one());
            assert_eq!(ctx.mul(&inv, &r), RingElem::one());
            tested += 1;
        }
        // t is not a unit of K[t].
        let t = RingElem::from_a(CoeffElem::t());
        assert!(!ctx.is_unit(&t));
    }

    #[test]
    fn coverage_validation() {
        let ctx = asano_ctx();
        assert!(ctx.check_covered(&xvar(0)).is_ok());
        assert!(matches!(
            ctx.check_covered(&xvar(1)),
            Err(RingError::NotCovered(VarId::X(1)))
        ));
        assert!(matches!(
            ctx.check_covered(&RatFunc::var(VarId::T)),
            Err(RingError::TNotInRing)
        ));
    }

    #[test]
    fn registry_grows_lazily_under_phi() {
        let ctx = final_example_ctx();
        let before = ctx.registry.x_count();
        assert_eq!(before, 4); // x0..x3 declared
        let a = CoeffElem::from_k(xvar(3));
        let img = ctx.apply_phi(&a);
        assert_eq!(img, xvar(4).pow(4));
        assert_eq!(ctx.registry.x_count(), 5); // x4 was minted
    }
}

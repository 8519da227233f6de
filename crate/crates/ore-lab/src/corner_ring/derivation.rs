//! sigma-derivations of R = A + vK: the maps delta_omega, the inner
//! derivations d_y, sums, the commutative field-derivation case, and custom
//! generator tables; plus validation against the sigma-Leibniz law and the
//! classification delta = delta_omega + d_y.

use super::{RingCtx, RingElem};
use crate::exact_algebra::sample::SampleBounds;
use crate::exact_algebra::{CoeffElem, CoeffRing, MultiPoly, RatFunc, Scalar, VarId};
use crate::maps::{image_membership, ImageMembership, MapError};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Symbolic description of a sigma-derivation.
#[derive(Clone, Debug)]
pub enum DerivationSpec<S: Scalar> {
    /// delta_omega(a + v lbar) = v omega lbar.
    DeltaOmega(RatFunc<S>),
    /// The inner derivation d_y(r) = y r - sigma(r) y.
    Inner(RingElem<S>),
    /// Pointwise sum.
    Sum(Vec<DerivationSpec<S>>),
    /// Commutative case R = K + vK (phi = id): delta(a + vb) = v d(a) for a
    /// derivation d of K given on generators.
    CommutativeField(BTreeMap<u32, RatFunc<S>>),
    /// Images of v, of t (when present), and of each declared generator;
    /// everything else is derived by the sigma-Leibniz rule.
    Custom {
        v_image: RingElem<S>,
        t_image: Option<RingElem<S>>,
        images: BTreeMap<u32, RingElem<S>>,
    },
}

impl<S: Scalar> DerivationSpec<S> {
    pub fn zero() -> Self {
        DerivationSpec::DeltaOmega(RatFunc::zero())
    }

    /// Spell out which rule this is, for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            DerivationSpec::DeltaOmega(_) => "delta_omega",
            DerivationSpec::Inner(_) => "inner",
            DerivationSpec::Sum(_) => "sum",
            DerivationSpec::CommutativeField(_) => "commutative_field",
            DerivationSpec::Custom { .. } => "custom",
        }
    }

    /// The omega of a plain delta_omega spec, if that is what this is.
    pub fn plain_omega(&self) -> Option<&RatFunc<S>> {
        match self {
            DerivationSpec::DeltaOmega(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum DerivationError {
    /// CommutativeField requires phi = id over A = K.
    NotCommutative,
    /// A custom or field table has no image for this variable.
    MissingImage(VarId),
    /// omega or a table entry mentions t or an uncovered variable.
    InvalidSpec(String),
    Map(MapError),
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationError::NotCommutative => {
                write!(f, "commutative_field derivations require phi = id over A = K")
            }
            DerivationError::MissingImage(v) => write!(f, "no derivation image for {}", v),
            DerivationError::InvalidSpec(m) => write!(f, "invalid derivation spec: {}", m),
            DerivationError::Map(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for DerivationError {}

/// Validate a spec against the scenario before use.
pub fn validate_spec<S: Scalar>(
    ctx: &RingCtx<S>,
    spec: &DerivationSpec<S>,
) -> Result<(), DerivationError> {
    match spec {
        DerivationSpec::DeltaOmega(w) => {
            if w.contains_var(VarId::T) {
                return Err(DerivationError::InvalidSpec("omega must lie in K".into()));
            }
            Ok(())
        }
        DerivationSpec::Inner(_) => Ok(()),
        DerivationSpec::Sum(parts) => {
            for p in parts {
                validate_spec(ctx, p)?;
            }
            Ok(())
        }
        DerivationSpec::CommutativeField(_) => {
            if ctx.mode != CoeffRing::Field || !ctx.phi.is_identity() {
                return Err(DerivationError::NotCommutative);
            }
            Ok(())
        }
        DerivationSpec::Custom { t_image, .. } => {
            if t_image.is_some() && ctx.mode != CoeffRing::PolyT {
                return Err(DerivationError::InvalidSpec(
                    "t image given but the coefficient ring has no t".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Apply a sigma-derivation to a ring element, exactly.
pub fn apply_derivation<S: Scalar>(
    ctx: &RingCtx<S>,
    spec: &DerivationSpec<S>,
    r: &RingElem<S>,
) -> Result<RingElem<S>, DerivationError> {
    match spec {
        DerivationSpec::DeltaOmega(omega) => Ok(RingElem::from_vk(omega.mul(&r.m))),
        DerivationSpec::Inner(y) => {
            let yr = ctx.mul(y, r);
            let sy = ctx.mul(&ctx.sigma(r), y);
            Ok(yr.sub(&sy))
        }
        DerivationSpec::Sum(parts) => {
            let mut acc = RingElem::zero();
            for p in parts {
                acc = acc.add(&apply_derivation(ctx, p, r)?);
            }
            Ok(acc)
        }
        DerivationSpec::CommutativeField(table) => {
            validate_spec(ctx, spec)?;
            let d = extend_field_derivation(table, r.a.value())?;
            Ok(RingElem::from_vk(d))
        }
        DerivationSpec::Custom { v_image, t_image, images } => {
            validate_spec(ctx, spec)?;
            // delta(v lbar) = delta(v) lbar: sigma(v) = 0 kills the other term.
            let from_vk = if r.m.is_zero() {
                RingElem::zero()
            } else {
                ctx.mul(v_image, &RingElem::from_a(CoeffElem::from_k(r.m.clone())))
            };
            let from_a = custom_on_a(ctx, t_image, images, &r.a)?;
            Ok(from_vk.add(&from_a))
        }
    }
}

/// Extend a derivation of K given on generators to any rational function by
/// linearity, Leibniz, and the quotient rule.
pub fn extend_field_derivation<S: Scalar>(
    table: &BTreeMap<u32, RatFunc<S>>,
    f: &RatFunc<S>,
) -> Result<RatFunc<S>, DerivationError> {
    if f.contains_var(VarId::T) {
        return Err(DerivationError::NotCommutative);
    }
    let dn = field_derivation_poly(table, f.num())?;
    let dd = field_derivation_poly(table, f.den())?;
    // d(n/q) = (d(n) q - n d(q)) / q^2
    let num = dn
        .mul(&RatFunc::from_poly(f.den().clone()))
        .sub(&RatFunc::from_poly(f.num().clone()).mul(&dd));
    num.div(&RatFunc::from_poly(f.den().mul(f.den())))
        .map_err(|e| DerivationError::InvalidSpec(e.to_string()))
}

fn field_derivation_poly<S: Scalar>(
    table: &BTreeMap<u32, RatFunc<S>>,
    p: &MultiPoly<S>,
) -> Result<RatFunc<S>, DerivationError> {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        // d(c * prod x^e) = c * sum_i e_i x_i^(e_i - 1) d(x_i) * rest
        for &(v, e) in m.exponents() {
            let VarId::X(j) = v else {
                return Err(DerivationError::NotCommutative);
            };
            let dv = table
                .get(&j)
                .ok_or(DerivationError::MissingImage(v))?
                .clone();
            if dv.is_zero() {
                continue;
            }
            let rest = MultiPoly::from_term(c.clone(), m.without(v).mul(&crate::exact_algebra::Monomial::var_pow(v, e - 1)));
            let term = RatFunc::from_poly(rest)
                .scale(&S::from_i64(e as i64))
                .mul(&dv);
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// delta on A for custom tables, by the sigma-Leibniz rule (sigma fixes A, so
/// this is delta(pq) = p delta(q) + delta(p) q with ring products).
fn custom_on_a<S: Scalar>(
    ctx: &RingCtx<S>,
    t_image: &Option<RingElem<S>>,
    images: &BTreeMap<u32, RingElem<S>>,
    a: &CoeffElem<S>,
) -> Result<RingElem<S>, DerivationError> {
    let dn = custom_on_poly(ctx, t_image, images, a.value().num())?;
    let dq = custom_on_poly(ctx, t_image, images, a.value().den())?;
    // a = n/q with q a unit of A (t-free denominator).
    let q = CoeffElem::from_k(RatFunc::from_poly(a.value().den().clone()));
    let q_inv = RingElem::from_a(
        q.inv(ctx.mode)
            .map_err(|e| DerivationError::InvalidSpec(e.to_string()))?,
    );
    // delta(n) = delta(a q) = a delta(q) + delta(a) q, so
    // delta(a) = (delta(n) - a delta(q)) q^{-1}.
    let a_elem = RingElem::from_a(a.clone());
    let num = dn.sub(&ctx.mul(&a_elem, &dq));
    Ok(ctx.mul(&num, &q_inv))
}

fn custom_on_poly<S: Scalar>(
    ctx: &RingCtx<S>,
    t_image: &Option<RingElem<S>>,
    images: &BTreeMap<u32, RingElem<S>>,
    p: &MultiPoly<S>,
) -> Result<RingElem<S>, DerivationError> {
    let var_image = |v: VarId| -> Result<RingElem<S>, DerivationError> {
        match v {
            VarId::T => t_image.clone().ok_or(DerivationError::MissingImage(VarId::T)),
            VarId::X(j) => images
                .get(&j)
                .cloned()
                .ok_or(DerivationError::MissingImage(v)),
        }
    };
    let mut acc = RingElem::zero();
    for (m, c) in p.terms() {
        // delta of the monomial, then scale by the constant c (delta is
        // F-linear since delta(1) = 0).
        let mut dm = RingElem::zero();
        let mut prefix = RingElem::one(); // product of the first factors
        let factors: Vec<(VarId, u32)> = m
            .exponents()
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat(v).take(e as usize).map(move |v| (v, 1)))
            .collect();
        for (idx, &(v, _)) in factors.iter().enumerate() {
            // delta(prefix * v * suffix) contribution: prefix * delta(v) * suffix
            let dv = var_image(v)?;
            let mut term = ctx.mul(&prefix, &dv);
            let mut suffix = RingElem::one();
            for &(w, _) in &factors[idx + 1..] {
                suffix = ctx.mul(&suffix, &var_elem::<S>(w));
            }
            term = ctx.mul(&term, &suffix);
            dm = dm.add(&term);
            prefix = ctx.mul(&prefix, &var_elem::<S>(v));
        }
        let c_elem = RingElem::from_a(CoeffElem::from_k(RatFunc::constant(c.clone())));
        acc = acc.add(&ctx.mul(&c_elem, &dm));
    }
    Ok(acc)
}

fn var_elem<S: Scalar>(v: VarId) -> RingElem<S> {
    match v {
        VarId::T => RingElem::from_a(CoeffElem::t()),
        VarId::X(_) => RingElem::from_a(CoeffElem::from_k(RatFunc::var(v))),
    }
}

/// Outcome of sampling the sigma-Leibniz law.
#[derive(Clone, Debug)]
pub struct LeibnizReport<S: Scalar> {
    pub pairs_checked: usize,
    pub additive_checked: usize,
    /// First failing pair, with both sides of the law.
    pub counterexample: Option<LeibnizCounterexample<S>>,
}

#[derive(Clone, Debug)]
pub struct LeibnizCounterexample<S: Scalar> {
    pub r: RingElem<S>,
    pub s: RingElem<S>,
    pub lhs: RingElem<S>,
    pub rhs: RingElem<S>,
}

impl<S: Scalar> LeibnizReport<S> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check additivity and delta(rs) = sigma(r) delta(s) + delta(r) s exactly on
/// the canonical probe pairs plus `sample_count` random pairs.
pub fn check_sigma_derivation<S: Scalar, R: Rng + ?Sized>(
    ctx: &RingCtx<S>,
    spec: &DerivationSpec<S>,
    rng: &mut R,
    bounds: &SampleBounds,
    sample_count: usize,
) -> Result<LeibnizReport<S>, DerivationError> {
    assert!(sample_count >= 1);
    let probes = ctx.probe_elems();
    let mut pairs: Vec<(RingElem<S>, RingElem<S>)> = Vec::new();
    for r in &probes {
        for s in &probes {
            pairs.push((r.clone(), s.clone()));
        }
    }
    for _ in 0..sample_count {
        pairs.push((ctx.sample_elem(rng, bounds), ctx.sample_elem(rng, bounds)));
    }

    let mut report = LeibnizReport {
        pairs_checked: 0,
        additive_checked: 0,
        counterexample: None,
    };
    for (r, s) in pairs {
        let lhs = apply_derivation(ctx, spec, &ctx.mul(&r, &s))?;
        let rhs = ctx
            .mul(&ctx.sigma(&r), &apply_derivation(ctx, spec, &s)?)
            .add(&ctx.mul(&apply_derivation(ctx, spec, &r)?, &s));
        if lhs != rhs {
            report.counterexample = Some(LeibnizCounterexample { r, s, lhs, rhs });
            return Ok(report);
        }
        report.pairs_checked += 1;

        let sum_lhs = apply_derivation(ctx, spec, &r.add(&s))?;
        let sum_rhs =
            apply_derivation(ctx, spec, &r)?.add(&apply_derivation(ctx, spec, &s)?);
        if sum_lhs != sum_rhs {
            report.counterexample = Some(LeibnizCounterexample {
                r,
                s,
                lhs: sum_lhs,
                rhs: sum_rhs,
            });
            return Ok(report);
        }
        report.additive_checked += 1;
    }
    Ok(report)
}

/// Result of classifying a sigma-derivation.
#[derive(Clone, Debug)]
pub enum DerivationClass<S: Scalar> {
    Zero,
    /// delta = d_y, inner.
    InnerOnly { y: RingElem<S> },
    /// delta = delta_omega + d_y; membership of omega decides outerness.
    OuterSum {
        omega: RatFunc<S>,
        y: RingElem<S>,
        membership: ImageMembership<S>,
    },
    /// Commutative R: delta(a + vb) = v d(a), d given on generators.
    CommutativeOuter { d: BTreeMap<u32, RatFunc<S>> },
}

#[derive(Clone, Debug)]
pub enum ClassifyError {
    /// delta(v) has a nonzero A-part, so this is not a sigma-derivation.
    NotASigmaDerivation(String),
    /// The spec evaluates fine but does not match any classified shape.
    Unreconstructible(String),
    Derivation(DerivationError),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotASigmaDerivation(m) => write!(f, "not a sigma-derivation: {}", m),
            ClassifyError::Unreconstructible(m) => {
                write!(f, "outside the classified shapes: {}", m)
            }
            ClassifyError::Derivation(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<DerivationError> for ClassifyError {
    fn from(e: DerivationError) -> Self {
        ClassifyError::Derivation(e)
    }
}

/// Classify delta: extract omega from delta(v) = v omega, split off
/// delta' = delta - delta_omega, verify delta'(vK) = 0, and reconstruct
/// either an inner d_y or (in the commutative case) a field derivation.
/// The reconstruction is re-verified pointwise on the probe elements and
/// `sample_count` random elements.
pub fn classify_derivation<S: Scalar, R: Rng + ?Sized>(
    ctx: &RingCtx<S>,
    spec: &DerivationSpec<S>,
    rng: &mut R,
    bounds: &SampleBounds,
    sample_count: usize,
) -> Result<DerivationClass<S>, ClassifyError> {
    let dv = apply_derivation(ctx, spec, &RingElem::v())?;
    if !dv.a.is_zero() {
        return Err(ClassifyError::NotASigmaDerivation(format!(
            "delta(v) = {} has a nonzero A-part",
            dv
        )));
    }
    let omega = dv.m.clone();

    let mut elems = ctx.probe_elems();
    for _ in 0..sample_count {
        elems.push(ctx.sample_elem(rng, bounds));
    }

    // delta' = delta - delta_omega must kill vK.
    let delta_prime = |r: &RingElem<S>| -> Result<RingElem<S>, DerivationError> {
        let d = apply_derivation(ctx, spec, r)?;
        Ok(d.sub(&RingElem::from_vk(omega.mul(&r.m))))
    };
    for e in &elems {
        let vk = RingElem::from_vk(e.m.clone());
        if e.m.is_zero() {
            continue;
        }
        let d = delta_prime(&vk)?;
        if !d.is_zero() {
            return Err(ClassifyError::NotASigmaDerivation(format!(
                "(delta - delta_omega)(v*({})) = {} is nonzero",
                e.m, d
            )));
        }
    }

    // Probe A-parts for a witness of delta' != 0.
    let mut witness: Option<(CoeffElem<S>, RatFunc<S>)> = None;
    let mut any_nonzero = false;
    for e in &elems {
        let a = RingElem::from_a(e.a.clone());
        let d = delta_prime(&a)?;
        if !d.a.is_zero() {
            return Err(ClassifyError::NotASigmaDerivation(format!(
                "delta({}) has a nonzero A-part",
                a
            )));
        }
        if d.m.is_zero() {
            continue;
        }
        any_nonzero = true;
        let c = ctx.bar(&e.a).sub(&ctx.apply_phi(&e.a));
        if !c.is_zero() {
            witness = Some((e.a.clone(), d.m.clone()));
            break;
        }
    }

    let y = match (&witness, any_nonzero) {
        (_, false) => RingElem::zero(),
        (Some((a0, s_bar)), _) => {
            let c = ctx.bar(a0).sub(&ctx.apply_phi(a0));
            let k = s_bar.div(&c).expect("witness has invertible difference");
            RingElem::from_vk(k)
        }
        (None, true) => {
            // delta' is nonzero but bar = phi on every probe: the
            // commutative case, or outside the classified shapes.
            if ctx.mode == CoeffRing::Field && ctx.phi.is_identity() {
                let mut d = BTreeMap::new();
                for &g in &ctx.generators {
                    let dg = delta_prime(&RingElem::from_a(CoeffElem::from_k(RatFunc::var(
                        VarId::X(g),
                    ))))?;
                    d.insert(g, dg.m);
                }
                // Verify delta(a + vb) = v omega b + v d(a) on all elements.
                for e in &elems {
                    let expect = RingElem::from_vk(
                        omega
                            .mul(&e.m)
                            .add(&extend_field_derivation(&d, e.a.value())?),
                    );
                    let got = apply_derivation(ctx, spec, e)?;
                    if got != expect {
                        return Err(ClassifyError::Unreconstructible(format!(
                            "field-derivation reconstruction mismatches at {}",
                            e
                        )));
                    }
                }
                if omega.is_zero() {
                    return Ok(DerivationClass::CommutativeOuter { d });
                }
                // In the commutative case delta_omega is inner, but the d
                // part keeps the derivation outer; report the mixed shape.
                return Ok(DerivationClass::CommutativeOuter { d });
            }
            return Err(ClassifyError::Unreconstructible(
                "delta' is nonzero but every probed a has abar = phi(a)".into(),
            ));
        }
    };

    // Re-verify delta = delta_omega + d_y on all elements.
    let inner = DerivationSpec::Inner(y.clone());
    for e in &elems {
        let got = apply_derivation(ctx, spec, e)?;
        let expect = RingElem::from_vk(omega.mul(&e.m))
            .add(&apply_derivation(ctx, &inner, e)?);
        if got != expect {
            return Err(ClassifyError::Unreconstructible(format!(
                "delta != delta_omega + d_y at {}",
                e
            )));
        }
    }

    if omega.is_zero() && y.is_zero() {
        return Ok(DerivationClass::Zero);
    }

    // Outerness reduces to omega in phi(A).
    match image_membership(&ctx.phi, &omega, ctx.mode) {
        ImageMembership::InImage(c_pre) => {
            // delta_omega = d_c for phi(c) = omega, so delta = d_{c + y}.
            let c = RingElem::from_a(
                CoeffElem::new(c_pre, ctx.mode)
                    .map_err(|e| ClassifyError::Unreconstructible(e.to_string()))?,
            );
            let y_total = c.add(&y);
            if y_total.is_zero() {
                return Ok(DerivationClass::Zero);
            }
            Ok(DerivationClass::InnerOnly { y: y_total })
        }
        membership => Ok(DerivationClass::OuterSum { omega, y, membership }),
    }
}

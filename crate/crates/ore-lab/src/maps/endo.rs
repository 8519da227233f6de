//! The endomorphism specification: finite rule lists with an optional
//! indexed family `x{i} -> x{i+s}^{e(i)}`.

use crate::exact_algebra::parser::{parse_expr, EvalError};
use crate::exact_algebra::{ArithError, RatFunc, Scalar, VarId};
use std::fmt;

#[derive(Clone, Debug)]
pub enum MapError {
    /// phi has no rule for this variable.
    Uncovered(VarId),
    Arith(ArithError),
    InvalidSpec(String),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Uncovered(v) => write!(f, "no rule covers variable {}", v),
            MapError::Arith(e) => write!(f, "{}", e),
            MapError::InvalidSpec(m) => write!(f, "invalid rule set: {}", m),
        }
    }
}

impl std::error::Error for MapError {}

/// Integer-affine function of the family index: `coeff_i * i + constant`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Affine {
    pub coeff_i: i64,
    pub constant: i64,
}

impl Affine {
    pub const fn constant(c: i64) -> Self {
        Affine { coeff_i: 0, constant: c }
    }

    pub fn eval(&self, i: u32) -> i64 {
        self.coeff_i * i64::from(i) + self.constant
    }

    /// Parse forms like "i", "i+2", "2i+1", "2*i-1", "3".
    pub fn parse(text: &str) -> Result<Affine, MapError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || MapError::InvalidSpec(format!("cannot parse affine index {:?}", text));
        if s.is_empty() {
            return Err(bad());
        }
        let (head, tail) = match s.find(['+', '-'].as_ref()) {
            // A leading sign belongs to the head.
            Some(0) => match s[1..].find(['+', '-'].as_ref()) {
                Some(p) => s.split_at(p + 1),
                None => (s.as_str(), ""),
            },
            Some(p) => s.split_at(p),
            None => (s.as_str(), ""),
        };
        let parse_head = |h: &str| -> Result<Affine, MapError> {
            if let Some(stripped) = h.strip_suffix('i') {
                let c = match stripped.trim_end_matches('*') {
                    "" | "+" => 1,
                    "-" => -1,
                    other => other.parse().map_err(|_| bad())?,
                };
                Ok(Affine { coeff_i: c, constant: 0 })
            } else {
                Ok(Affine::constant(h.parse().map_err(|_| bad())?))
            }
        };
        let mut out = parse_head(head)?;
        if !tail.is_empty() {
            let c: i64 = tail.parse().map_err(|_| bad())?;
            if out.coeff_i == 0 {
                return Err(bad());
            }
            out.constant = c;
        }
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff_i, self.constant) {
            (0, c) => write!(f, "{}", c),
            (1, 0) => write!(f, "i"),
            (1, c) if c > 0 => write!(f, "i+{}", c),
            (1, c) => write!(f, "i{}", c),
            (a, 0) => write!(f, "{}i", a),
            (a, c) if c > 0 => write!(f, "{}i+{}", a, c),
            (a, c) => write!(f, "{}i{}", a, c),
        }
    }
}

/// One rule's pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Pattern {
    T,
    Concrete(u32),
    /// `x{i}`: binds every x-index.
    Family,
}

#[derive(Clone, Debug)]
enum Image<S: Scalar> {
    Expr(RatFunc<S>),
    /// `x{i+shift}^{exp(i)}`.
    FamilyMonomial { shift: u32, exp: Affine },
}

/// A rule as it appears in a scenario file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleText {
    pub pattern: String,
    pub image: String,
}

#[derive(Clone, Debug)]
struct Rule<S: Scalar> {
    pattern: Pattern,
    image: Image<S>,
}

/// The symbolic description of phi: a finite list of rules, at most one of
/// which is an indexed family.
#[derive(Clone, Debug)]
pub struct EndoSpec<S: Scalar> {
    rules: Vec<Rule<S>>,
    texts: Vec<RuleText>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InjectivityVerdict {
    /// All rule images are powers of pairwise distinct single variables, so
    /// the images are algebraically independent and phi is injective.
    InjectiveCertified,
    Unknown,
}

/// Inverse view of a monomial-class spec: which source produces each target
/// variable, and with which exponent.
pub(crate) struct MonomialView {
    /// target x-index -> (source variable, exponent)
    pub concrete: std::collections::BTreeMap<u32, (VarId, u32)>,
    /// Family `x{i} -> x{i+shift}^{exp(i)}`.
    pub family: Option<(u32, Affine)>,
}

impl MonomialView {
    /// Source and exponent for target x{j}, if j is an image target.
    pub fn source_of(&self, j: u32) -> Option<(VarId, u32)> {
        if let Some(&hit) = self.concrete.get(&j) {
            return Some(hit);
        }
        if let Some((shift, exp)) = self.family {
            if j >= shift {
                let i = j - shift;
                let e = exp.eval(i);
                debug_assert!(e >= 1);
                return Some((VarId::X(i), e as u32));
            }
        }
        None
    }
}

impl<S: Scalar> EndoSpec<S> {
    /// Build a spec from `(pattern, image)` strings, e.g.
    /// `("x{i}", "x{i+1}^{i+1}")`, `("t", "x1")`, `("x0", "x0^2")`.
    pub fn parse_rules(rules: &[(&str, &str)]) -> Result<Self, MapError> {
        let texts: Vec<RuleText> = rules
            .iter()
            .map(|(p, i)| RuleText {
                pattern: p.to_string(),
                image: i.to_string(),
            })
            .collect();
        Self::from_rule_texts(&texts)
    }

    pub fn from_rule_texts(texts: &[RuleText]) -> Result<Self, MapError> {
        let mut rules = Vec::new();
        for rt in texts {
            let pattern = parse_pattern(&rt.pattern)?;
            let image = match pattern {
                Pattern::Family => parse_family_image(&rt.image)?,
                _ => {
                    let expr = parse_expr::<S>(&rt.image).map_err(|e| match e {
                        EvalError::Arith(a) => MapError::Arith(a),
                        other => MapError::InvalidSpec(format!(
                            "image {:?}: {}",
                            rt.image, other
                        )),
                    })?;
                    if expr.is_zero() {
                        return Err(MapError::InvalidSpec(format!(
                            "image of {:?} is the zero function",
                            rt.pattern
                        )));
                    }
                    if expr.contains_var(VarId::T) {
                        return Err(MapError::InvalidSpec(format!(
                            "image of {:?} must lie in K (no t)",
                            rt.pattern
                        )));
                    }
                    Image::Expr(expr)
                }
            };
            rules.push(Rule { pattern, image });
        }
        let spec = EndoSpec { rules, texts: texts.to_vec() };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), MapError> {
        let mut seen_t = false;
        let mut seen_family = false;
        let mut concrete = std::collections::BTreeSet::new();
        for r in &self.rules {
            match r.pattern {
                Pattern::T => {
                    if seen_t {
                        return Err(MapError::InvalidSpec("duplicate rule for t".into()));
                    }
                    seen_t = true;
                }
                Pattern::Family => {
                    if seen_family {
                        return Err(MapError::InvalidSpec("duplicate family rule".into()));
                    }
                    seen_family = true;
                }
                Pattern::Concrete(j) => {
                    if !concrete.insert(j) {
                        return Err(MapError::InvalidSpec(format!(
                            "duplicate rule for x{}",
                            j
                        )));
                    }
                }
            }
        }
        if seen_family && !concrete.is_empty() {
            // A family binds every x-index, so a concrete x-rule would give
            // some variable two applicable rules.
            return Err(MapError::InvalidSpec(
                "a family rule x{i} cannot coexist with concrete x-rules".into(),
            ));
        }
        Ok(())
    }

    pub fn rule_texts(&self) -> &[RuleText] {
        &self.texts
    }

    pub fn has_t_rule(&self) -> bool {
        self.rules.iter().any(|r| r.pattern == Pattern::T)
    }

    /// The image of a single variable; lazily materializes family instances.
    pub fn image_of_var(&self, v: VarId) -> Result<RatFunc<S>, MapError> {
        match v {
            VarId::T => {
                for r in &self.rules {
                    if r.pattern == Pattern::T {
                        if let Image::Expr(e) = &r.image {
                            return Ok(e.clone());
                        }
                    }
                }
                Err(MapError::Uncovered(VarId::T))
            }
            VarId::X(j) => {
                for r in &self.rules {
                    match (&r.pattern, &r.image) {
                        (Pattern::Concrete(k), Image::Expr(e)) if *k == j => {
                            return Ok(e.clone());
                        }
                        (Pattern::Family, Image::FamilyMonomial { shift, exp }) => {
                            let e = exp.eval(j);
                            debug_assert!(e >= 1);
                            return Ok(RatFunc::var(VarId::X(j + shift)).pow(e as u32));
                        }
                        _ => {}
                    }
                }
                Err(MapError::Uncovered(v))
            }
        }
    }

    /// The inverse monomial view when every image is a single variable power
    /// with coefficient 1 and the targets are pairwise distinct.
    pub(crate) fn monomial_view(&self) -> Option<MonomialView> {
        let mut concrete = std::collections::BTreeMap::new();
        let mut family = None;
        for r in &self.rules {
            match (&r.pattern, &r.image) {
                (Pattern::Family, Image::FamilyMonomial { shift, exp }) => {
                    family = Some((*shift, *exp));
                }
                (pat, Image::Expr(e)) => {
                    let (target, exp) = single_variable_power(e)?;
                    let source = match pat {
                        Pattern::T => VarId::T,
                        Pattern::Concrete(j) => VarId::X(*j),
                        Pattern::Family => unreachable!(),
                    };
                    if concrete.insert(target, (source, exp)).is_some() {
                        return None; // two rules share a target
                    }
                }
                _ => return None,
            }
        }
        if let Some((shift, _)) = family {
            // Concrete targets may not collide with the family's targets
            // {shift, shift+1, ...}.
            if concrete.keys().any(|&j| j >= shift) {
                return None;
            }
        }
        Some(MonomialView { concrete, family })
    }

    pub fn check_injectivity(&self) -> InjectivityVerdict {
        match self.monomial_view() {
            Some(_) => InjectivityVerdict::InjectiveCertified,
            None => InjectivityVerdict::Unknown,
        }
    }

    /// Certified identity map: family `x{i} -> x{i}` (and concrete rules that
    /// fix their variable), no t-rule.
    pub fn is_identity(&self) -> bool {
        if self.has_t_rule() {
            return false;
        }
        let Some(view) = self.monomial_view() else {
            return false;
        };
        let family_ok = match view.family {
            None => false, // without a family, only finitely many vars are covered
            Some((shift, exp)) => shift == 0 && exp == Affine::constant(1),
        };
        family_ok && view.concrete.iter().all(|(&j, &(src, e))| src == VarId::X(j) && e == 1)
    }

    /// Is x{j} outside the support of every rule image? Sound for any rule
    /// set: images then live in a rational function field omitting x{j}.
    pub fn is_fresh_variable(&self, j: u32) -> bool {
        for r in &self.rules {
            match &r.image {
                Image::Expr(e) => {
                    if e.contains_var(VarId::X(j)) {
                        return false;
                    }
                }
                Image::FamilyMonomial { shift, .. } => {
                    if j >= *shift {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn parse_pattern(text: &str) -> Result<Pattern, MapError> {
    let s = text.trim();
    if s == "t" {
        return Ok(Pattern::T);
    }
    if s == "x{i}" {
        return Ok(Pattern::Family);
    }
    match VarId::parse(s) {
        Some(VarId::X(j)) => Ok(Pattern::Concrete(j)),
        _ => Err(MapError::InvalidSpec(format!(
            "pattern must be \"t\", \"x<k>\" or \"x{{i}}\", got {:?}",
            text
        ))),
    }
}

/// Parse `x{<affine>}` optionally followed by `^<int>` or `^{<affine>}`,
/// where the index affine must be `i + s` with `s >= 0` and the exponent
/// affine must be >= 1 for every i >= 0.
fn parse_family_image<S: Scalar>(text: &str) -> Result<Image<S>, MapError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| MapError::InvalidSpec(format!("family image {:?}: {}", text, m));
    let rest = s.strip_prefix("x{").ok_or_else(|| bad("must start with x{"))?;
    let close = rest.find('}').ok_or_else(|| bad("missing }"))?;
    let index = Affine::parse(&rest[..close])?;
    if index.coeff_i != 1 || index.constant < 0 {
        return Err(bad("index must have the form i+s with s >= 0"));
    }
    let shift = index.constant as u32;
    let tail = &rest[close + 1..];
    let exp = if tail.is_empty() {
        Affine::constant(1)
    } else if let Some(e) = tail.strip_prefix("^{") {
        let close = e.find('}').ok_or_else(|| bad("missing } in exponent"))?;
        if !e[close + 1..].is_empty() {
            return Err(bad("trailing input"));
        }
        Affine::parse(&e[..close])?
    } else if let Some(e) = tail.strip_prefix('^') {
        Affine::constant(e.parse().map_err(|_| bad("exponent must be an integer"))?)
    } else {
        return Err(bad("trailing input"));
    };
    if exp.coeff_i < 0 || exp.constant < 1 {
        return Err(bad("exponent must be >= 1 for every i >= 0"));
    }
    Ok(Image::FamilyMonomial { shift, exp })
}

/// `Some((j, e))` when the value is exactly x{j}^e with coefficient 1.
fn single_variable_power<S: Scalar>(f: &RatFunc<S>) -> Option<(u32, u32)> {
    if !f.is_polynomial() || f.num().num_terms() != 1 {
        return None;
    }
    let (m, c) = f.num().leading_term()?;
    if !c.is_one() {
        return None;
    }
    match m.exponents() {
        [(VarId::X(j), e)] => Some((*j, *e)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn affine_parsing() {
        assert_eq!(Affine::parse("i").unwrap(), Affine { coeff_i: 1, constant: 0 });
        assert_eq!(Affine::parse("i+2").unwrap(), Affine { coeff_i: 1, constant: 2 });
        assert_eq!(Affine::parse("2i+1").unwrap(), Affine { coeff_i: 2, constant: 1 });
        assert_eq!(Affine::parse("2*i-1").unwrap(), Affine { coeff_i: 2, constant: -1 });
        assert_eq!(Affine::parse("7").unwrap(), Affine::constant(7));
        assert!(Affine::parse("i+i").is_err());
        assert!(Affine::parse("").is_err());
    }

    #[test]
    fn family_image_parsing() {
        let img = parse_family_image::<BigRational>("x{i+1}^{i+1}").unwrap();
        match img {
            Image::FamilyMonomial { shift, exp } => {
                assert_eq!(shift, 1);
                assert_eq!(exp, Affine { coeff_i: 1, constant: 1 });
            }
            _ => panic!(),
        }
        assert!(parse_family_image::<BigRational>("x{i+2}").is_ok());
        assert!(parse_family_image::<BigRational>("x{i}^2").is_ok());
        assert!(parse_family_image::<BigRational>("x{2i}").is_err());
        assert!(parse_family_image::<BigRational>("x{i-1}").is_err());
        assert!(parse_family_image::<BigRational>("x{i}^{i}").is_err()); // exp 0 at i=0
    }

    #[test]
    fn family_and_concrete_x_rules_conflict() {
        let err = EndoSpec::<BigRational>::parse_rules(&[("x{i}", "x{i+1}"), ("x0", "x1")]);
        assert!(err.is_err());
    }

    #[test]
    fn zero_image_is_rejected() {
        assert!(EndoSpec::<BigRational>::parse_rules(&[("x0", "x1 - x1")]).is_err());
    }

    #[test]
    fn fresh_variable_detection() {
        let spec = EndoSpec::<BigRational>::parse_rules(&[("t", "x1"), ("x{i}", "x{i+2}")]).unwrap();
        assert!(spec.is_fresh_variable(0));
        assert!(!spec.is_fresh_variable(1));
        assert!(!spec.is_fresh_variable(5));
    }
}

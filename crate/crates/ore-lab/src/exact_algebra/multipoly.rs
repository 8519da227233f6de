//! Sparse multivariate polynomials over the base field.
//!
//! Terms live in a `BTreeMap` keyed by monomials under graded lexicographic
//! order (total degree first, then exponents compared along ascending
//! `VarId`). The map never stores zero coefficients and monomials never store
//! zero exponents, so structural equality is polynomial equality.

use super::field::Scalar;
use super::vars::VarId;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Exponent vector: sorted, sparse, no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise quotient, `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(v, e) in &other.0 {
            while i < self.0.len() && self.0[i].0 < v {
                out.push(self.0[i]);
                i += 1;
            }
            if i >= self.0.len() || self.0[i].0 != v || self.0[i].1 < e {
                return None;
            }
            if self.0[i].1 > e {
                out.push((v, self.0[i].1 - e));
            }
            i += 1;
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    /// Componentwise minimum with another monomial.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            while j < other.0.len() && other.0[j].0 < v {
                j += 1;
            }
            if j < other.0.len() && other.0[j].0 == v {
                out.push((v, e.min(other.0[j].1)));
            }
        }
        Monomial(out)
    }

    /// Drop the given variable from the exponent vector.
    pub fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, then the first differing exponent
    /// along ascending `VarId` decides (bigger exponent is greater).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // A missing entry is exponent zero on a later variable.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match e.cmp(&f) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// Sparse multivariate polynomial with field coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Self::from_term(S::one(), Monomial::var(v))
    }

    pub fn from_term(c: S, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(S::from_i64(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value when this polynomial has no variables.
    pub fn constant_value(&self) -> Option<S> {
        if self.is_zero() {
            Some(S::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::one()).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.degree_of(v)).max().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.degree_of(v) > 0)
    }

    /// Leading term under the canonical graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&S> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, c: &S, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Make the leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("field scalar");
                self.scale(&inv)
            }
        }
    }

    /// Exact division: `Some(g)` with `self = q * g`, or `None` when `q` does
    /// not divide `self`. Panics when `q` is zero.
    pub fn exact_div(&self, q: &Self) -> Option<Self> {
        let (lq_m, lq_c) = q.leading_term().expect("division by zero polynomial");
        let lq_m = lq_m.clone();
        let lq_c = lq_c.clone();
        let lq_inv = lq_c.inv().expect("field scalar");
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let m = lm.try_div(&lq_m)?;
            let c = lc.mul(&lq_inv);
            quo.add_term(m.clone(), c.clone());
            rem = rem.sub(&q.mul_term(&c, &m));
        }
        Some(quo)
    }

    /// View as a univariate polynomial in `v`: dense coefficient list, index
    /// = exponent of `v`, entries in the remaining variables.
    pub fn coeffs_in(&self, v: VarId) -> Vec<MultiPoly<S>> {
        let d = self.degree_of(v) as usize;
        let mut out = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.degree_of(v) as usize;
            out[e].add_term(m.without(v), c.clone());
        }
        out
    }

    fn from_coeffs_in(v: VarId, coeffs: &[MultiPoly<S>]) -> Self {
        let mut out = Self::zero();
        for (e, p) in coeffs.iter().enumerate() {
            let vm = Monomial::var_pow(v, e as u32);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&vm), c.clone());
            }
        }
        out
    }
}

/// Greatest common divisor, normalized monic under the canonical term order.
///
/// Primitive PRS with structural fast paths: the common monomial factor is
/// split off first, single-term and disjoint-support cases return
/// immediately, and small divisibility probes catch the frequent
/// "one argument divides the other" case before any remainder sequence runs.
pub fn poly_gcd<S: Scalar>(p: &MultiPoly<S>, q: &MultiPoly<S>) -> MultiPoly<S> {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one();
    }

    let mp = monomial_content(p);
    let mq = monomial_content(q);
    let common = mp.gcd(&mq);
    let ps = strip_monomial(p, &mp);
    let qs = strip_monomial(q, &mq);
    let common_poly = MultiPoly::from_term(S::one(), common);

    if ps.is_constant() || qs.is_constant() {
        return common_poly.monic();
    }
    if ps.support().intersection(&qs.support()).next().is_none() {
        // Nonconstant divisors of ps and qs live in disjoint variables.
        return common_poly.monic();
    }
    if ps == qs {
        return ps.mul(&common_poly).monic();
    }
    if qs.num_terms() <= ps.num_terms() {
        if ps.exact_div(&qs).is_some() {
            return qs.mul(&common_poly).monic();
        }
    } else if qs.exact_div(&ps).is_some() {
        return ps.mul(&common_poly).monic();
    }

    // Main variable: common to both, smallest worst-case degree.
    let pv = ps.support();
    let qv = qs.support();
    let v = pv
        .intersection(&qv)
        .copied()
        .min_by_key(|&v| ps.degree_of(v).max(qs.degree_of(v)))
        .expect("supports intersect");

    let pc = ps.coeffs_in(v);
    let qc = qs.coeffs_in(v);
    let cont_p = content(&pc);
    let cont_q = content(&qc);
    let pp_p: Vec<_> = pc
        .iter()
        .map(|c| c.exact_div(&cont_p).expect("content divides"))
        .collect();
    let pp_q: Vec<_> = qc
        .iter()
        .map(|c| c.exact_div(&cont_q).expect("content divides"))
        .collect();
    let cont_gcd = poly_gcd(&cont_p, &cont_q);

    let prim = gcd_in_variable(pp_p, pp_q);
    MultiPoly::from_coeffs_in(v, &prim)
        .mul(&cont_gcd)
        .mul(&common_poly)
        .monic()
}

/// Primitive polynomial remainder sequence in the chosen variable. Taking the
/// primitive part after every pseudo-remainder keeps coefficient growth
/// polynomial; the content gcds recurse on strictly fewer variables.
fn gcd_in_variable<S: Scalar>(a: Vec<MultiPoly<S>>, b: Vec<MultiPoly<S>>) -> Vec<MultiPoly<S>> {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    loop {
        if is_zero_coeffs(&b) {
            return make_primitive(a);
        }
        if deg(&b) == 0 {
            // Nonzero constant in the main variable: coprime there.
            return vec![MultiPoly::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = make_primitive(r);
    }
}

/// Pseudo-remainder of `a` by `b` in the main variable: a scalar-polynomial
/// multiple of `a mod b` with degree below deg b.
fn pseudo_rem<S: Scalar>(a: &[MultiPoly<S>], b: &[MultiPoly<S>]) -> Vec<MultiPoly<S>> {
    let da = deg(a);
    let db = deg(b);
    debug_assert!(db >= 1 && da >= db);
    let lb = b[db].clone();
    let mut r: Vec<MultiPoly<S>> = a.to_vec();
    r.resize(da + 1, MultiPoly::zero());
    for k in (db..=da).rev() {
        let lead = r[k].clone();
        if lead.is_zero() {
            continue;
        }
        for entry in r.iter_mut() {
            *entry = entry.mul(&lb);
        }
        for j in 0..=db {
            let s = lead.mul(&b[j]);
            r[k - db + j] = r[k - db + j].sub(&s);
        }
        debug_assert!(r[k].is_zero());
    }
    r.truncate(db.max(1));
    r
}

/// Greatest monomial dividing every term.
fn monomial_content<S: Scalar>(p: &MultiPoly<S>) -> Monomial {
    let mut it = p.terms.keys();
    let mut acc = it.next().expect("nonzero").clone();
    for m in it {
        if acc.is_one() {
            break;
        }
        acc = acc.gcd(m);
    }
    acc
}

fn strip_monomial<S: Scalar>(p: &MultiPoly<S>, m: &Monomial) -> MultiPoly<S> {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly {
        terms: p
            .terms
            .iter()
            .map(|(k, c)| (k.try_div(m).expect("monomial content divides"), c.clone()))
            .collect(),
    }
}

fn content<S: Scalar>(coeffs: &[MultiPoly<S>]) -> MultiPoly<S> {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if !c.is_zero() {
            g = poly_gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                return MultiPoly::one();
            }
        }
    }
    g
}

fn deg<S: Scalar>(c: &[MultiPoly<S>]) -> usize {
    c.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
}

fn is_zero_coeffs<S: Scalar>(c: &[MultiPoly<S>]) -> bool {
    c.iter().all(|p| p.is_zero())
}

fn make_primitive<S: Scalar>(c: Vec<MultiPoly<S>>) -> Vec<MultiPoly<S>> {
    if is_zero_coeffs(&c) {
        return vec![MultiPoly::zero()];
    }
    let cont = content(&c);
    let mut out: Vec<_> = c
        .iter()
        .map(|p| p.exact_div(&cont).expect("content divides"))
        .collect();
    out.truncate(deg(&out) + 1);
    // Strip the common scalar factor too, so coefficient bit-size stays
    // polynomial along remainder sequences.
    let sc = S::scalar_content(out.iter().flat_map(|p| p.terms.values()));
    if !sc.is_one() && !sc.is_zero() {
        let inv = sc.inv().expect("nonzero");
        for p in out.iter_mut() {
            *p = p.scale(&inv);
        }
    }
    out
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Leading term first.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.displays_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { c.neg() } else { c.clone() };
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                let mut sep = false;
                for (v, e) in m.exponents() {
                    if sep {
                        write!(f, "*")?;
                    }
                    sep = true;
                    if *e == 1 {
                        write!(f, "{}", v)?;
                    } else {
                        write!(f, "{}^{}", v, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = MultiPoly<BigRational>;

    fn x(i: u32) -> P {
        P::var(VarId::X(i))
    }

    fn int(n: i64) -> P {
        P::from_i64(n)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x0 = Monomial::var(VarId::X(0));
        let x1 = Monomial::var(VarId::X(1));
        let x0x0 = x0.mul(&x0);
        assert!(x0 > x1); // same degree, earlier variable wins
        assert!(x0x0 > x1); // degree dominates
        assert!(Monomial::var(VarId::T) > x0);
    }

    #[test]
    fn arithmetic_basics() {
        let p = x(0).add(&int(1));
        let q = x(0).sub(&int(1));
        let prod = p.mul(&q);
        assert_eq!(prod, x(0).mul(&x(0)).sub(&int(1)));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = x(0).mul(&x(0)).sub(&int(1));
        let q = x(0).sub(&int(1));
        let g = p.exact_div(&q).unwrap();
        assert_eq!(g, x(0).add(&int(1)));
        assert!(p.exact_div(&x(1)).is_none());
        assert_eq!(P::zero().exact_div(&q).unwrap(), P::zero());
    }

    #[test]
    fn gcd_zero_and_coprime_cases() {
        let p = x(0).mul(&int(2)).add(&int(2));
        assert_eq!(poly_gcd(&p, &P::zero()), p.monic());
        let a = x(0).sub(&int(1));
        let b = x(1).sub(&int(1));
        assert_eq!(poly_gcd(&a, &b), P::one());
    }

    #[test]
    fn gcd_with_common_factor() {
        // gcd(x0^2 - 1, x0^2 - 2 x0 + 1) = x0 - 1, checked by both divisions
        // and coprimality of the cofactors.
        let p = x(0).pow(2).sub(&int(1));
        let q = x(0).pow(2).sub(&x(0).scale(&BigRational::from_i64(2))).add(&int(1));
        let g = poly_gcd(&p, &q);
        assert_eq!(g, x(0).sub(&int(1)));
        let cp = p.exact_div(&g).unwrap();
        let cq = q.exact_div(&g).unwrap();
        assert_eq!(cp.mul(&g), p);
        assert_eq!(cq.mul(&g), q);
        assert_eq!(poly_gcd(&cp, &cq), P::one());
    }

    #[test]
    fn gcd_multivariate() {
        // common factor (x0 + x1)
        let r = x(0).add(&x(1));
        let p = r.mul(&x(0).sub(&int(3)));
        let q = r.mul(&x(1).pow(2).add(&int(1)));
        assert_eq!(poly_gcd(&p, &q), r.monic());
    }

    #[test]
    fn gcd_is_multiplicative_up_to_normalization() {
        let r = x(0).add(&x(1)).scale(&BigRational::from_i64(3));
        let p = x(0).pow(2).sub(&int(1));
        let q = x(0).pow(2).sub(&x(0).scale(&BigRational::from_i64(2))).add(&int(1));
        let lhs = poly_gcd(&p.mul(&r), &q.mul(&r));
        let rhs = poly_gcd(&p, &q).mul(&r).monic();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_renders_signs() {
        let p = x(0).pow(2).sub(&x(1).scale(&BigRational::from_ratio(3, 4)));
        assert_eq!(p.to_string(), "x0^2 - 3/4*x1");
        assert_eq!(P::zero().to_string(), "0");
    }
}

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};

use super::element::{Monomial, RingElement};
use super::grading::GradingSpec;
use super::parse::{parse_formal, FormalPolynomial};
use crate::coeff::{CoefficientRing, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

impl Generator {
    pub fn new(name: &str, degree: i64, weight: i64) -> Self {
        Generator { name: name.to_string(), degree, weight }
    }
}

/// How weight slices of a ring look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceKind {
    /// The zero ring.
    Zero,
    /// No inverted generators: slices vanish in negative weight and are
    /// finite-dimensional.
    BoundedBelow,
    /// One inverted generator of weight `period` and a nilpotent remainder:
    /// multiplication by the unit identifies slice `w` with slice
    /// `w + period`.
    Periodic { generator: usize, period: i64 },
}

/// A monomial quotient of a polynomial algebra over an exact coefficient
/// ring, possibly with some generators inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialRing {
    grading: GradingSpec,
    coeff: CoefficientRing,
    generators: Vec<Generator>,
    relations: Vec<Monomial>,
    inverted: Vec<bool>,
}

fn minimalize(mut rels: Vec<Monomial>) -> Vec<Monomial> {
    rels.sort_by_key(|m| (m.0.iter().sum::<i64>(), m.clone()));
    rels.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for r in rels {
        if !out.iter().any(|o| o.divides_exactly(&r)) {
            out.push(r);
        }
    }
    out.sort();
    out
}

impl MonomialRing {
    pub fn new(
        grading: GradingSpec,
        coeff: CoefficientRing,
        generators: Vec<Generator>,
        relations: Vec<Monomial>,
        inverted: Vec<bool>,
    ) -> Result<Self> {
        coeff.validate()?;
        let n = generators.len();
        if inverted.len() != n {
            return Err(Error::Parse("inverted flags must match the generator list".into()));
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::Parse(format!("duplicate generator `{}`", g.name)));
            }
            if g.weight < 1 {
                return Err(Error::Parse(format!("generator `{}` must have weight >= 1", g.name)));
            }
            if grading.parity(g.degree).is_odd() {
                return Err(Error::OddGenerator(g.name.clone()));
            }
        }
        let mut stripped = Vec::new();
        for r in relations {
            if r.len() != n {
                return Err(Error::Parse("relation has the wrong number of exponents".into()));
            }
            if let Some(i) = r.0.iter().position(|e| *e < 0) {
                return Err(Error::NegativeExponentOfNonInverted(generators[i].name.clone()));
            }
            let m = Monomial(r.0.iter().enumerate().map(|(i, e)| if inverted[i] { 0 } else { *e }).collect());
            stripped.push(m);
        }
        let generators = generators
            .into_iter()
            .map(|g| Generator { degree: grading.normalize(g.degree), ..g })
            .collect();
        Ok(MonomialRing { grading, coeff, generators, relations: minimalize(stripped), inverted })
    }

    /// `Q[names]` with default grading, degree 0 and weight 1 generators.
    pub fn polynomial(names: &[&str]) -> Self {
        let gens = names.iter().map(|n| Generator::new(n, 0, 1)).collect();
        Self::new(GradingSpec::default(), CoefficientRing::Rationals, gens, vec![], vec![false; names.len()])
            .expect("valid polynomial ring")
    }

    /// Adds monomial relations given as strings, e.g. `"x*y"`.
    pub fn with_relations(&self, rels: &[&str]) -> Result<Self> {
        let mut relations = self.relations.clone();
        for r in rels {
            relations.push(self.parse_monomial(r)?);
        }
        Self::new(self.grading, self.coeff.clone(), self.generators.clone(), relations, self.inverted.clone())
    }

    pub fn with_relation_monomials(&self, extra: &[Monomial]) -> Result<Self> {
        let mut relations = self.relations.clone();
        relations.extend(extra.iter().cloned());
        Self::new(self.grading, self.coeff.clone(), self.generators.clone(), relations, self.inverted.clone())
    }

    pub fn with_coefficients(&self, coeff: CoefficientRing) -> Result<Self> {
        Self::new(self.grading, coeff, self.generators.clone(), self.relations.clone(), self.inverted.clone())
    }

    pub fn grading(&self) -> &GradingSpec {
        &self.grading
    }

    pub fn coeff(&self) -> &CoefficientRing {
        &self.coeff
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn is_inverted(&self, i: usize) -> bool {
        self.inverted[i]
    }

    pub fn inverted(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ngens()).filter(|i| self.inverted[*i])
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.relations.iter().any(|r| r.is_one())
    }

    /// A generator whose bare self is a relation reduces to zero.
    pub fn is_killed(&self, i: usize) -> bool {
        self.relations.iter().any(|r| r.0.iter().enumerate().all(|(j, e)| if j == i { *e == 1 } else { *e == 0 }))
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.0.iter().zip(&self.generators).map(|(e, g)| e * g.weight).sum()
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        self.grading.normalize(m.0.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.relations.iter().any(|r| r.divides(m))
    }

    pub fn var(&self, i: usize) -> RingElement {
        self.reduce_monomial(Monomial::var(self.ngens(), i), Rational::one())
    }

    pub fn one(&self) -> RingElement {
        self.reduce_monomial(Monomial::one(self.ngens()), Rational::one())
    }

    pub fn constant(&self, c: Rational) -> RingElement {
        self.reduce_monomial(Monomial::one(self.ngens()), c)
    }

    fn reduce_monomial(&self, m: Monomial, c: Rational) -> RingElement {
        if self.is_standard(&m) {
            RingElement::monomial(m, c)
        } else {
            RingElement::zero()
        }
    }

    /// Reduces a formal polynomial: monomials divisible by a relation vanish.
    pub fn normal_form(&self, raw: &FormalPolynomial) -> Result<RingElement> {
        let mut out = Vec::new();
        for (e, c) in raw {
            if e.len() != self.ngens() {
                return Err(Error::Parse("exponent vector of the wrong length".into()));
            }
            if let Some(i) = e.iter().enumerate().position(|(i, x)| *x < 0 && !self.inverted[i]) {
                return Err(Error::NegativeExponentOfNonInverted(self.generators[i].name.clone()));
            }
            if !self.coeff.contains(c) {
                return Err(Error::Parse(format!("coefficient {c} is not in {}", self.coeff)));
            }
            let m = Monomial(e.clone());
            if self.is_standard(&m) {
                out.push((m, c.clone()));
            }
        }
        Ok(RingElement::from_terms(out))
    }

    pub fn parse_formal(&self, s: &str) -> Result<FormalPolynomial> {
        parse_formal(s, self.ngens(), &|n| self.gen_index(n))
    }

    pub fn parse(&self, s: &str) -> Result<RingElement> {
        self.normal_form(&self.parse_formal(s)?)
    }

    /// Parses a single monomial with unit coefficient, such as `x^2*y`.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let p = self.parse_formal(s)?;
        match p.iter().next() {
            Some((e, c)) if p.len() == 1 && c.is_one() => Ok(Monomial(e.clone())),
            _ => Err(Error::NonMonomial(s.to_string())),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let m = ma.mul(mb);
                if self.is_standard(&m) {
                    out.push((m, ca * cb));
                }
            }
        }
        RingElement::from_terms(out)
    }

    pub fn mul_monomial(&self, a: &RingElement, m: &Monomial) -> RingElement {
        RingElement::from_terms(
            a.terms().map(|(ma, c)| (ma.mul(m), c.clone())).filter(|(mm, _)| self.is_standard(mm)),
        )
    }

    pub fn pow(&self, a: &RingElement, k: u32) -> RingElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Weight of a weight-homogeneous nonzero element.
    pub fn element_weight(&self, a: &RingElement) -> Option<i64> {
        let mut ws = a.terms().map(|(m, _)| self.weight(m));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn element_degree(&self, a: &RingElement) -> Option<i64> {
        let mut ds = a.terms().map(|(m, _)| self.degree(m));
        let d = ds.next()?;
        ds.all(|x| x == d).then_some(d)
    }

    /// Homogeneity check for an entry that must have the given degree and
    /// weight. Zero is homogeneous of every degree.
    pub fn is_homogeneous_of(&self, a: &RingElement, degree: i64, weight: i64) -> bool {
        let degree = self.grading.normalize(degree);
        a.terms().all(|(m, _)| self.weight(m) == weight && self.degree(m) == degree)
    }

    pub fn is_unit_monomial(&self, m: &Monomial) -> bool {
        m.0.iter().enumerate().all(|(i, e)| *e == 0 || self.inverted[i])
    }

    /// Inverts a generator. Relations lose their factors of that generator;
    /// a relation that becomes a bare generator kills it.
    pub fn localize(&self, name: &str) -> Result<Self> {
        let g = self.gen_index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        self.localize_index(g)
    }

    pub fn localize_index(&self, g: usize) -> Result<Self> {
        if self.inverted[g] {
            return Err(Error::AlreadyInverted(self.generators[g].name.clone()));
        }
        let mut inverted = self.inverted.clone();
        inverted[g] = true;
        Self::new(self.grading, self.coeff.clone(), self.generators.clone(), self.relations.clone(), inverted)
    }

    /// Generators that are neither inverted nor killed.
    pub fn live_polynomial_generators(&self) -> Vec<usize> {
        (0..self.ngens()).filter(|i| !self.inverted[*i] && !self.is_killed(*i)).collect()
    }

    fn nilpotency_bound(&self, i: usize) -> Option<i64> {
        self.relations
            .iter()
            .filter(|r| r.0.iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|r| r.0[i])
            .min()
    }

    pub fn slice_kind(&self) -> Result<SliceKind> {
        if self.is_zero_ring() {
            return Ok(SliceKind::Zero);
        }
        let inv: Vec<usize> = self.inverted().collect();
        match inv.as_slice() {
            [] => Ok(SliceKind::BoundedBelow),
            [g] => {
                for t in self.live_polynomial_generators() {
                    if self.nilpotency_bound(t).is_none() {
                        return Err(Error::UnboundedSlice(format!(
                            "`{}` is inverted while `{}` is not nilpotent",
                            self.generators[*g].name, self.generators[t].name
                        )));
                    }
                }
                Ok(SliceKind::Periodic { generator: *g, period: self.generators[*g].weight })
            }
            _ => Err(Error::UnboundedSlice("more than one inverted generator".into())),
        }
    }

    /// Enumerates exponent vectors over `gens` with prescribed weight, keeping
    /// standard monomials only.
    fn enumerate(&self, gens: &[usize], weight: i64, caps: &[Option<i64>], out: &mut Vec<Monomial>) {
        fn rec(
            ring: &MonomialRing,
            gens: &[usize],
            caps: &[Option<i64>],
            k: usize,
            remaining: i64,
            cur: &mut Vec<i64>,
            out: &mut Vec<Monomial>,
        ) {
            if k == gens.len() {
                if remaining == 0 {
                    let m = Monomial(cur.clone());
                    if ring.is_standard(&m) {
                        out.push(m);
                    }
                }
                return;
            }
            let i = gens[k];
            let w = ring.generators[i].weight;
            let mut e = 0;
            while e * w <= remaining && caps[k].is_none_or(|c| e < c) {
                cur[i] = e;
                if ring.is_standard(&Monomial(cur.clone())) {
                    rec(ring, gens, caps, k + 1, remaining - e * w, cur, out);
                } else {
                    cur[i] = 0;
                    break;
                }
                e += 1;
            }
            cur[i] = 0;
        }
        if weight < 0 {
            return;
        }
        let mut cur = vec![0; self.ngens()];
        rec(self, gens, caps, 0, weight, &mut cur, out);
    }

    /// Normal-form monomial basis of the weight-`w` slice.
    pub fn slice_monomials(&self, w: i64) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        match self.slice_kind()? {
            SliceKind::Zero => {}
            SliceKind::BoundedBelow => {
                let gens = self.live_polynomial_generators();
                let caps = vec![None; gens.len()];
                self.enumerate(&gens, w, &caps, &mut out);
            }
            SliceKind::Periodic { generator, period } => {
                let gens = self.live_polynomial_generators();
                let caps: Vec<Option<i64>> = gens.iter().map(|t| self.nilpotency_bound(*t)).collect();
                let max_t: i64 = gens
                    .iter()
                    .zip(&caps)
                    .map(|(t, c)| (c.unwrap_or(1) - 1).max(0) * self.generators[*t].weight)
                    .sum();
                for t in 0..=max_t {
                    if (w - t).rem_euclid(period) != 0 {
                        continue;
                    }
                    let mut part = Vec::new();
                    self.enumerate(&gens, t, &caps, &mut part);
                    for mut m in part {
                        m.0[generator] = (w - t) / period;
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| {
                let name = &self.generators[i].name;
                if *e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable form that `parse` accepts back.
    pub fn format(&self, a: &RingElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        // highest weight first, then exponent order
        let mut terms: Vec<(&Monomial, &Rational)> = a.terms().collect();
        terms.sort_by(|(m1, _), (m2, _)| self.weight(m2).cmp(&self.weight(m1)).then(m2.cmp(m1)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if mono == "1" {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }

    /// The polynomial ring on the same generators: drops relations and
    /// inversions.
    pub fn cover_polynomial_ring(&self) -> Self {
        Self::new(self.grading, self.coeff.clone(), self.generators.clone(), vec![], vec![false; self.ngens()])
            .expect("valid")
    }
}

impl fmt::Display for MonomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| if self.inverted[i] { format!("{0},{0}^-1", g.name) } else { g.name.clone() })
            .collect();
        write!(f, "{}[{}]", self.coeff, gens.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format_monomial(r)).collect();
            write!(f, "/({})", rels.join(","))?;
        }
        Ok(())
    }
}

/// A presented ring: a single monomial quotient or a finite product of them
/// sharing one grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GradedRing {
    Single(MonomialRing),
    Product(Vec<MonomialRing>),
}

/// Answer of `is_connected` together with its justification.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Connectedness {
    pub connected: bool,
    pub reason: String,
}

impl GradedRing {
    pub fn product(components: Vec<MonomialRing>) -> Result<Self> {
        if let Some(first) = components.first() {
            if components.iter().any(|c| c.grading() != first.grading()) {
                return Err(Error::GradingMismatch("product components must share a grading".into()));
            }
        }
        Ok(GradedRing::Product(components))
    }

    pub fn components(&self) -> &[MonomialRing] {
        match self {
            GradedRing::Single(r) => std::slice::from_ref(r),
            GradedRing::Product(rs) => rs,
        }
    }

    pub fn single(&self) -> Result<&MonomialRing> {
        match self {
            GradedRing::Single(r) => Ok(r),
            GradedRing::Product(_) => Err(Error::ProductRingUnsupported),
        }
    }

    pub fn two_is_unit(&self) -> bool {
        self.components().iter().all(|c| c.is_zero_ring() || c.coeff().two_is_unit())
    }

    /// Within the supported class, a single monomial quotient over a domain
    /// has only the idempotents 0 and 1: an idempotent is its weight-0 part
    /// plus higher terms, and the highest-weight term of a nonzero
    /// positive-weight part would survive in `e^2 - e`. A product splits
    /// into its nonzero components.
    pub fn is_connected(&self) -> Connectedness {
        match self {
            GradedRing::Single(r) => {
                if r.is_zero_ring() {
                    Connectedness { connected: true, reason: "zero ring has no non-trivial idempotent".into() }
                } else {
                    Connectedness {
                        connected: r.coeff().is_connected(),
                        reason: format!(
                            "monomial quotient over the domain {}: idempotents are 0 and 1",
                            r.coeff()
                        ),
                    }
                }
            }
            GradedRing::Product(rs) => {
                let nonzero = rs.iter().filter(|r| !r.is_zero_ring()).count();
                if nonzero >= 2 {
                    Connectedness {
                        connected: false,
                        reason: format!("product of {nonzero} nonzero rings: (1,0,...) is a non-trivial idempotent"),
                    }
                } else {
                    Connectedness {
                        connected: true,
                        reason: "product with at most one nonzero component".into(),
                    }
                }
            }
        }
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedRing::Single(r) => write!(f, "{r}"),
            GradedRing::Product(rs) => {
                let parts: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

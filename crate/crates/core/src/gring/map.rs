use num_traits::One;

use super::element::{Monomial, RingElement};
use super::ring::MonomialRing;
use crate::error::{Error, Result};

/// A ring homomorphism between monomial rings, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: MonomialRing,
    target: MonomialRing,
    images: Vec<RingElement>,
}

impl RingMap {
    /// Checks that images are homogeneous of the generator's degree and
    /// weight, that inverted generators go to units and that relations die.
    pub fn new(source: MonomialRing, target: MonomialRing, images: Vec<RingElement>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::IllFormedAlgebraMap("one image per generator is required".into()));
        }
        if source.coeff() != target.coeff() {
            return Err(Error::IllFormedAlgebraMap(format!(
                "coefficient rings differ: {} vs {}",
                source.coeff(),
                target.coeff()
            )));
        }
        if source.grading() != target.grading() {
            return Err(Error::IllFormedAlgebraMap("gradings differ".into()));
        }
        for (i, (g, img)) in source.generators().iter().zip(&images).enumerate() {
            if !target.is_homogeneous_of(img, g.degree, g.weight) {
                return Err(Error::IllFormedAlgebraMap(format!(
                    "image `{}` of `{}` is not homogeneous of weight {}",
                    target.format(img),
                    g.name,
                    g.weight
                )));
            }
            if source.is_inverted(i) {
                let unit = img.as_monomial().is_some_and(|(m, _)| target.is_unit_monomial(m));
                if !unit && !target.is_zero_ring() {
                    return Err(Error::IllFormedAlgebraMap(format!(
                        "inverted generator `{}` must map to a unit",
                        g.name
                    )));
                }
            }
        }
        let map = RingMap { source, target, images };
        for r in map.source.relations() {
            if !map.apply_monomial(r).is_zero() {
                return Err(Error::IllFormedAlgebraMap(format!(
                    "relation {} does not map to zero",
                    map.source.format_monomial(r)
                )));
            }
        }
        Ok(map)
    }

    /// Parses generator images such as `{"x": "x", "y": "0"}`; generators
    /// not mentioned map to the target generator of the same name.
    pub fn from_strings(source: &MonomialRing, target: &MonomialRing, pairs: &[(String, String)]) -> Result<Self> {
        let mut images = Vec::with_capacity(source.ngens());
        for g in source.generators() {
            let img = match pairs.iter().find(|(n, _)| *n == g.name) {
                Some((_, s)) => target.parse(s)?,
                None => match target.gen_index(&g.name) {
                    Some(j) => target.var(j),
                    None => {
                        return Err(Error::IllFormedAlgebraMap(format!("no image given for `{}`", g.name)))
                    }
                },
            };
            images.push(img);
        }
        for (n, _) in pairs {
            if source.gen_index(n).is_none() {
                return Err(Error::UnknownGenerator(n.clone()));
            }
        }
        Self::new(source.clone(), target.clone(), images)
    }

    /// Same-named generators: the identity, a localization or a quotient map.
    pub fn canonical(source: &MonomialRing, target: &MonomialRing) -> Result<Self> {
        Self::from_strings(source, target, &[])
    }

    pub fn identity(ring: &MonomialRing) -> Self {
        let images = (0..ring.ngens()).map(|i| ring.var(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &MonomialRing {
        &self.source
    }

    pub fn target(&self) -> &MonomialRing {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    fn image_power(&self, i: usize, e: i64) -> RingElement {
        if e >= 0 {
            return self.target.pow(&self.images[i], e as u32);
        }
        match self.images[i].as_monomial() {
            Some((m, c)) => {
                let inv = RingElement::monomial(m.pow(-1), c.recip());
                self.target.pow(&inv, (-e) as u32)
            }
            None => RingElement::zero(),
        }
    }

    pub fn apply_monomial(&self, m: &Monomial) -> RingElement {
        let mut acc = self.target.one();
        for (i, e) in m.0.iter().enumerate() {
            if *e != 0 {
                acc = self.target.mul(&acc, &self.image_power(i, *e));
                if acc.is_zero() {
                    break;
                }
            }
        }
        acc
    }

    pub fn apply(&self, a: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (m, c) in a.terms() {
            out.add_assign_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.images.iter().enumerate().all(|(i, img)| {
                img.as_monomial().is_some_and(|(m, c)| c.is_one() && *m == Monomial::var(self.source.ngens(), i))
                    || (img.is_zero() && self.source.is_killed(i))
            })
    }

    pub fn compose(&self, first: &RingMap) -> Result<RingMap> {
        if first.target != self.source {
            return Err(Error::RingMismatch("cannot compose ring maps".into()));
        }
        let images = first.images.iter().map(|a| self.apply(a)).collect();
        Ok(RingMap { source: first.source.clone(), target: self.target.clone(), images })
    }
}

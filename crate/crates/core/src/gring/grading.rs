use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bool(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Group law of `Z/2`.
    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bool(self.is_odd() != other.is_odd())
    }

    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn as_z2(self) -> i64 {
        i64::from(self.is_odd())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GradingGroup {
    Z,
    #[serde(rename = "Z/2")]
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityKind {
    /// `n -> (-1)^n`; on `Z/2` this is the canonical isomorphism.
    Koszul,
    Trivial,
}

/// A grading group together with its parity homomorphism to `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingSpec {
    pub group: GradingGroup,
    pub parity: ParityKind,
}

impl Default for GradingSpec {
    fn default() -> Self {
        GradingSpec { group: GradingGroup::Z, parity: ParityKind::Koszul }
    }
}

impl GradingSpec {
    pub fn new(group: GradingGroup, parity: ParityKind) -> Result<Self> {
        if group == GradingGroup::Z2 && parity == ParityKind::Trivial {
            return Err(Error::Parse("the Z/2 grading carries the canonical parity".into()));
        }
        Ok(GradingSpec { group, parity })
    }

    pub fn z2() -> Self {
        GradingSpec { group: GradingGroup::Z2, parity: ParityKind::Koszul }
    }

    pub fn normalize(&self, d: i64) -> i64 {
        match self.group {
            GradingGroup::Z => d,
            GradingGroup::Z2 => d.rem_euclid(2),
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    pub fn neg(&self, a: i64) -> i64 {
        self.normalize(-a)
    }

    pub fn parity(&self, d: i64) -> Parity {
        match self.parity {
            ParityKind::Trivial => Parity::Even,
            ParityKind::Koszul => Parity::from_bool(d.rem_euclid(2) == 1),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.parity == ParityKind::Trivial
    }
}

/// Pushes a multiset of degrees forward along the parity map to `Z/2`.
pub fn parity_pushforward(grading: &GradingSpec, degrees: &[i64]) -> Result<Vec<Parity>> {
    if grading.is_trivial() {
        return Err(Error::TrivialParity);
    }
    Ok(degrees.iter().map(|d| grading.parity(*d)).collect())
}

//! Exact coefficient rings: the rationals and localizations of the integers.
//!
//! Every coefficient is stored as a reduced `BigRational`. A localization of
//! `Z` is a subring of `Q`, so membership is a condition on denominators.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Serialized form `num/den`, used in every report.
pub fn rat_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CoefficientRing {
    Rationals,
    /// `Z[1/s]` for the finite set of primes `s`.
    IntegersInverting { primes: Vec<u64> },
    /// `Z_(p)`: fractions whose denominator is prime to `p`.
    IntegersLocalAt { prime: u64 },
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut f = BigInt::from(2);
    while &f * &f <= n {
        if (&n % &f).is_zero() {
            out.push(f.clone());
            while (&n % &f).is_zero() {
                n /= &f;
            }
        }
        f += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CoefficientRing {
    pub fn validate(&self) -> Result<()> {
        let bad = match self {
            Self::Rationals => None,
            Self::IntegersInverting { primes } => primes.iter().copied().find(|p| !is_prime(*p)),
            Self::IntegersLocalAt { prime } => (!is_prime(*prime)).then_some(*prime),
        };
        match bad {
            Some(p) => Err(Error::Parse(format!("{p} is not a prime"))),
            None => Ok(()),
        }
    }

    /// Parses `Q`, `Z[1/2]`, `Z[1/2,1/3]`, `Z_(5)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let ring = if s == "Q" {
            Self::Rationals
        } else if let Some(inner) = s.strip_prefix("Z[").and_then(|r| r.strip_suffix(']')) {
            let primes = inner
                .split(',')
                .map(|t| t.strip_prefix("1/").and_then(|p| p.parse::<u64>().ok()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("bad coefficient ring {s}")))?;
            let mut primes = primes;
            primes.sort_unstable();
            primes.dedup();
            Self::IntegersInverting { primes }
        } else if let Some(p) = s.strip_prefix("Z_(").and_then(|r| r.strip_suffix(')')) {
            let prime = p.parse().map_err(|_| Error::Parse(format!("bad coefficient ring {s}")))?;
            Self::IntegersLocalAt { prime }
        } else {
            return Err(Error::Parse(format!("unknown coefficient ring {s}")));
        };
        ring.validate()?;
        Ok(ring)
    }

    fn allowed(&self, n: &BigInt) -> bool {
        match self {
            Self::Rationals => !n.is_zero(),
            Self::IntegersInverting { primes } => {
                !n.is_zero() && prime_factors(n).iter().all(|f| primes.iter().any(|p| BigInt::from(*p) == *f))
            }
            Self::IntegersLocalAt { prime } => !(n % BigInt::from(*prime)).is_zero(),
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.allowed(q.denom())
    }

    pub fn is_unit(&self, q: &Rational) -> bool {
        !q.is_zero() && self.contains(q) && self.allowed(q.numer())
    }

    pub fn two_is_unit(&self) -> bool {
        self.is_unit(&rat(2))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Self::Rationals)
    }

    /// Local in the ungraded sense: `Q` and `Z_(p)`.
    pub fn is_local(&self) -> bool {
        matches!(self, Self::Rationals | Self::IntegersLocalAt { .. })
    }

    /// All supported coefficient rings are domains, hence connected.
    pub fn is_connected(&self) -> bool {
        true
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rationals => write!(f, "Q"),
            Self::IntegersInverting { primes } => {
                let inv: Vec<String> = primes.iter().map(|p| format!("1/{p}")).collect();
                write!(f, "Z[{}]", inv.join(","))
            }
            Self::IntegersLocalAt { prime } => write!(f, "Z_({prime})"),
        }
    }
}

/// Serde support for rationals as strings such as `-3/4`.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, rat_to_string, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`")))
    }
}

pub mod serde_opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, rat_to_string, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&rat_to_string(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let t: Option<String> = Option::deserialize(d)?;
        t.map(|t| parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`")))).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_is_unit_flag() {
        assert!(CoefficientRing::Rationals.two_is_unit());
        assert!(CoefficientRing::parse("Z[1/2]").unwrap().two_is_unit());
        assert!(!CoefficientRing::parse("Z[1/3]").unwrap().two_is_unit());
        assert!(CoefficientRing::parse("Z_(3)").unwrap().two_is_unit());
        assert!(CoefficientRing::parse("Z_(5)").unwrap().two_is_unit());
        assert!(!CoefficientRing::parse("Z_(2)").unwrap().two_is_unit());
    }

    #[test]
    fn membership() {
        let z2 = CoefficientRing::parse("Z[1/2]").unwrap();
        assert!(z2.contains(&rat_frac(3, 4)));
        assert!(!z2.contains(&rat_frac(1, 3)));
        assert!(!z2.is_unit(&rat(3)));
        let z5 = CoefficientRing::parse("Z_(5)").unwrap();
        assert!(z5.contains(&rat_frac(1, 3)));
        assert!(!z5.contains(&rat_frac(1, 5)));
        assert!(!z5.is_unit(&rat(10)));
        assert!(CoefficientRing::parse("Z_(4)").is_err());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat_frac(6, -4)), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(rat_frac(-3, 2)));
        assert_eq!(parse_rational("5"), Some(rat(5)));
        assert_eq!(parse_rational("1/0"), None);
    }
}

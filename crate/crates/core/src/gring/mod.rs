//! Presented graded commutative rings: monomial quotients of polynomial
//! algebras, their localizations at generators, and finite products.

mod element;
mod grading;
mod map;
mod parse;
mod ring;
mod spectrum;

pub use element::{Monomial, RingElement};
pub use grading::{parity_pushforward, GradingGroup, GradingSpec, Parity, ParityKind};
pub use map::RingMap;
pub use parse::{parse_formal, FormalPolynomial};
pub use ring::{Connectedness, GradedRing, Generator, MonomialRing, SliceKind};
pub use spectrum::{basic_open_contains, monomial_primes, spec_monomial_primes, MonomialPrime, SpecPoint};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::gring::{GradingSpec, Parity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub parity: Parity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

/// A finite-dimensional super vector space with an ordered basis of
/// homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperSpace {
    basis: Vec<BasisElement>,
}

impl SuperSpace {
    /// `Q^{p|q}` with basis `e1..ep` (even) then `f1..fq` (odd).
    pub fn standard(p: usize, q: usize) -> Self {
        let even = (1..=p).map(|i| (format!("e{i}"), Parity::Even));
        let odd = (1..=q).map(|i| (format!("f{i}"), Parity::Odd));
        Self::from_lines(even.chain(odd))
    }

    pub fn from_lines<S: Into<String>>(lines: impl IntoIterator<Item = (S, Parity)>) -> Self {
        SuperSpace {
            basis: lines.into_iter().map(|(l, p)| BasisElement { label: l.into(), parity: p, degree: None }).collect(),
        }
    }

    /// Lines of the given degrees, with parities pushed forward along the
    /// grading.
    pub fn from_degrees(grading: &GradingSpec, lines: &[(String, i64)]) -> Self {
        SuperSpace {
            basis: lines
                .iter()
                .map(|(l, d)| BasisElement { label: l.clone(), parity: grading.parity(*d), degree: Some(grading.normalize(*d)) })
                .collect(),
        }
    }

    /// `p|q`, optionally followed by named lines: `1|1,Y:even`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(str::trim);
        let head = parts.next().unwrap_or("");
        let (p, q) = head.split_once('|').ok_or_else(|| Error::Parse(format!("expected `p|q`, got `{head}`")))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension `{t}`")));
        let mut space = Self::standard(num(p)?, num(q)?);
        for extra in parts.filter(|t| !t.is_empty()) {
            let (label, par) =
                extra.split_once(':').ok_or_else(|| Error::Parse(format!("expected `name:parity`, got `{extra}`")))?;
            let parity = match par.trim() {
                "even" | "0" => Parity::Even,
                "odd" | "1" => Parity::Odd,
                other => return Err(Error::Parse(format!("unknown parity `{other}`"))),
            };
            space.basis.push(BasisElement { label: label.trim().to_string(), parity, degree: None });
        }
        Ok(space)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn even_dim(&self) -> usize {
        self.basis.iter().filter(|b| !b.parity.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Checks that attached degrees push forward to the stored parities.
    pub fn check_degrees(&self, grading: &GradingSpec) -> Result<()> {
        for b in &self.basis {
            if let Some(d) = b.degree {
                if grading.parity(d) != b.parity {
                    return Err(Error::GradingMismatch(format!("line {} has degree {d} but parity {:?}", b.label, b.parity)));
                }
            }
        }
        Ok(())
    }

    pub fn word_parities(&self, word: &[usize]) -> Vec<Parity> {
        word.iter().map(|&i| self.basis[i].parity).collect()
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.dim()) {
            Some(i) => Err(Error::MalformedWord(format!("basis index {i} out of range for dimension {}", self.dim()))),
            None => Ok(()),
        }
    }

    /// Number of basis words of length `n`, saturating.
    pub fn word_count(&self, n: usize) -> u64 {
        (self.dim() as u64).saturating_pow(n as u32)
    }

    /// All basis words of length `n` in lexicographic order.
    pub fn words(&self, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let d = self.dim();
        let total = if d == 0 && n > 0 { 0 } else { self.word_count(n) };
        (0..total).map(move |mut k| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().rev() {
                *slot = (k % d as u64) as usize;
                k /= d as u64;
            }
            w
        })
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        let s: Vec<&str> = word.iter().map(|&i| self.basis[i].label.as_str()).collect();
        s.join("⊗")
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q^{{{}|{}}}", self.even_dim(), self.odd_dim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorWord {
    pub factors: Vec<usize>,
    #[serde(with = "crate::coeff::serde_rational")]
    pub coefficient: Rational,
}

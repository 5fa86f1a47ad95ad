use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::gring::{GradingSpec, Parity};

/// A line `L_d` in a free module type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeEntry {
    pub degree: i64,
    pub parity: Parity,
}

impl TypeEntry {
    pub fn new(grading: &GradingSpec, degree: i64) -> Self {
        TypeEntry { degree: grading.normalize(degree), parity: grading.parity(degree) }
    }
}

pub fn type_of(grading: &GradingSpec, degrees: &[i64]) -> Vec<TypeEntry> {
    let mut t: Vec<TypeEntry> = degrees.iter().map(|d| TypeEntry::new(grading, *d)).collect();
    t.sort();
    t
}

fn check(grading: &GradingSpec, ty: &[TypeEntry]) -> Result<()> {
    for e in ty {
        if grading.parity(e.degree) != e.parity {
            return Err(Error::GradingMismatch(format!("degree {} does not have parity {:?}", e.degree, e.parity)));
        }
    }
    Ok(())
}

/// The lines of `Sym^n` of a free module, by expanding the direct-sum
/// formula; an empty result means `Sym^n = 0`.
pub fn sym_type(grading: &GradingSpec, coeff: &CoefficientRing, ty: &[TypeEntry], n: usize) -> Result<Vec<TypeEntry>> {
    if !coeff.two_is_unit() {
        return Err(Error::TwoNotInvertible);
    }
    check(grading, ty)?;
    let mut out = Vec::new();
    expand(grading, ty, n, 0, &mut out);
    out.sort();
    Ok(out)
}

fn expand(grading: &GradingSpec, ty: &[TypeEntry], rem: usize, acc: i64, out: &mut Vec<TypeEntry>) {
    let Some((first, rest)) = ty.split_first() else {
        if rem == 0 {
            out.push(TypeEntry::new(grading, acc));
        }
        return;
    };
    let top = if first.parity.is_odd() { rem.min(1) } else { rem };
    for k in 0..=top {
        expand(grading, rest, rem - k, acc + k as i64 * first.degree, out);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdamsStageEntry {
    pub j: usize,
    pub dual: bool,
    pub lines: Vec<TypeEntry>,
    pub zero: bool,
}

/// Types of `Sym^j(L_i^{-1} ⊗ M)` and `Sym^j((L_i^{-1} ⊗ M)^∨)` for
/// `1 ≤ j ≤ J`.
pub fn adams_stage_types(
    grading: &GradingSpec,
    coeff: &CoefficientRing,
    m: &[TypeEntry],
    i: i64,
    max_j: usize,
) -> Result<Vec<AdamsStageEntry>> {
    check(grading, m)?;
    let twisted: Vec<i64> = m.iter().map(|e| e.degree - i).collect();
    let dual: Vec<i64> = twisted.iter().map(|d| -d).collect();
    let (t, tv) = (type_of(grading, &twisted), type_of(grading, &dual));
    let mut out = Vec::new();
    for j in 1..=max_j {
        for (is_dual, base) in [(false, &t), (true, &tv)] {
            let lines = sym_type(grading, coeff, base, j)?;
            out.push(AdamsStageEntry { j, dual: is_dual, zero: lines.is_empty(), lines });
        }
    }
    Ok(out)
}

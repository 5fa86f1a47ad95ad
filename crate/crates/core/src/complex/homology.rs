use serde::{Deserialize, Serialize};

use super::chain::{ChainComplex, ChainMap};
use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::gmod::{columns_to_matrix, kernel, kernel_generators, lift, require_rational, PresentedModule, Shift};
use crate::gring::Monomial;
use crate::linalg::{QMatrix, Subquotient};

/// `H_n(X)` in one weight slice, with the slice basis of `X_n`.
#[derive(Clone, Debug)]
pub struct SliceHomology {
    pub weight: i64,
    pub basis: Vec<(usize, Monomial)>,
    pub sub: Subquotient,
}

impl SliceHomology {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

pub fn slice_homology(x: &ChainComplex, n: i64, w: i64) -> Result<SliceHomology> {
    require_rational(x.ring())?;
    let xn = x.term(n);
    let basis = xn.slice_basis(w)?;
    let dn = x.differential(n);
    let out = dn.slice_with_bases(&basis, &x.term(n - 1).slice_basis(w)?)?;
    let up = x.differential(n + 1);
    let inc = up.slice_with_bases(&x.term(n + 1).slice_basis(w)?, &basis)?;
    let sub = Subquotient::new(basis.len(), &out.kernel(), &inc.columns());
    Ok(SliceHomology { weight: w, basis, sub })
}

/// Rank of multiplication by one ring generator between homology slices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub generator: String,
    pub weight: i64,
    /// `ranks[k]` is the rank of `H_{start+k} → H_{start+k+weight}`, for
    /// targets inside the truncation.
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub degree: i64,
    pub start: i64,
    pub truncation: i64,
    /// `dims[k] = dim H_n` in weight `start + k`.
    pub dims: Vec<usize>,
    pub actions: Vec<GeneratorAction>,
}

impl HomologyEntry {
    pub fn dim_at(&self, w: i64) -> usize {
        if w < self.start {
            return 0;
        }
        self.dims.get((w - self.start) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    /// Nonzero slice dimensions keyed by weight.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.dims.iter().enumerate().filter(|(_, d)| **d > 0).map(|(k, d)| (self.start + k as i64, *d)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub truncation: i64,
    pub degrees: Vec<HomologyEntry>,
}

/// Slice dimensions of `H_n(X)` for weights from the lowest generator
/// weight of `X_n` up to `w_max`, with generator actions.
pub fn homology(x: &ChainComplex, n: i64, w_max: i64) -> Result<HomologyEntry> {
    require_rational(x.ring())?;
    let Some(start) = x.start_weight(n) else {
        return Ok(HomologyEntry { degree: n, start: 0, truncation: w_max, dims: vec![], actions: vec![] });
    };
    let top = x.max_generator_weight(n).expect("nonzero term");
    if top > w_max {
        return Err(Error::TruncationTooSmall { w: w_max, needed: top });
    }
    let slices: Vec<SliceHomology> = (start..=w_max).map(|w| slice_homology(x, n, w)).collect::<Result<_>>()?;
    let dims = slices.iter().map(SliceHomology::dim).collect();
    let ring = x.ring().clone();
    let xn = x.term(n);
    let mut actions = Vec::new();
    for (g, gen) in ring.generators().iter().enumerate() {
        if ring.is_killed(g) || gen.weight == 0 {
            continue;
        }
        let mono = Monomial::var(ring.ngens(), g);
        let mut ranks = Vec::new();
        for (k, h) in slices.iter().enumerate() {
            let t = k as i64 + gen.weight;
            if t < 0 || t as usize >= slices.len() {
                continue;
            }
            let target = &slices[t as usize];
            let cols: Vec<Vec<Rational>> = h
                .sub
                .representatives()
                .iter()
                .map(|z| {
                    let v = xn.from_slice_vector(z, &h.basis);
                    let gv: Vec<_> = v.iter().map(|a| ring.mul_monomial(a, &mono)).collect();
                    let img = xn.to_slice_vector(&gv, &target.basis);
                    target.sub.coords(&img).expect("cycles map to cycles")
                })
                .collect();
            ranks.push(QMatrix::from_columns(target.dim(), &cols).rank());
        }
        actions.push(GeneratorAction { generator: gen.name.clone(), weight: gen.weight, ranks });
    }
    Ok(HomologyEntry { degree: n, start, truncation: w_max, dims, actions })
}

/// Homology in every degree of the support.
pub fn homology_report(x: &ChainComplex, w_max: i64) -> Result<HomologyReport> {
    let degrees = match x.support() {
        None => vec![],
        Some((lo, hi)) => (lo..=hi).map(|n| homology(x, n, w_max)).collect::<Result<_>>()?,
    };
    Ok(HomologyReport { truncation: w_max, degrees })
}

/// The matrix of `H_n(f)` in weight `w`, in the subquotient coordinates.
pub fn induced_slice_map(f: &ChainMap, n: i64, w: i64) -> Result<(SliceHomology, SliceHomology, QMatrix)> {
    let hx = slice_homology(f.source(), n, w)?;
    let hy = slice_homology(f.target(), n, w)?;
    let fm = f.component(n).slice_with_bases(&hx.basis, &hy.basis)?;
    let cols: Vec<Vec<Rational>> = hx
        .sub
        .representatives()
        .iter()
        .map(|z| hy.sub.coords(&fm.apply(z)).expect("chain maps send cycles to cycles"))
        .collect();
    let m = QMatrix::from_columns(hy.dim(), &cols);
    Ok((hx, hy, m))
}

/// `H_n(X)` as a presented module: cycles modulo boundaries.
pub fn homology_module(x: &ChainComplex, n: i64) -> Result<PresentedModule> {
    Ok(homology_presentation(x, n)?.1)
}

/// `coker(H_n f)`: the presentation of `H_n(Y)` with the lifted images
/// of the cycle generators of `X_n` added as relations.
pub fn homology_cokernel(f: &ChainMap, n: i64) -> Result<PresentedModule> {
    let (cycles, h) = homology_presentation(f.target(), n)?;
    let fk = cycles.source().clone();
    let fc = f.component(n);
    let mut cols = Vec::new();
    for (s, z) in kernel_generators(&f.source().differential(n))? {
        let v = fc.apply(&z);
        if v.iter().all(|a| a.is_zero()) {
            continue;
        }
        let l = lift(&cycles, &v)?.ok_or_else(|| Error::NotAChainMap(format!("a cycle in degree {n} maps to a non-cycle")))?;
        cols.push((s, l));
    }
    let image = columns_to_matrix(&fk, cols)?;
    PresentedModule::new(h.presentation().hconcat(&image)?)
}

fn homology_presentation(x: &ChainComplex, n: i64) -> Result<(crate::gmod::GradedMatrix, PresentedModule)> {
    let cycles = kernel(&x.differential(n))?;
    let fk = cycles.source().clone();
    let up = x.differential(n + 1);
    let mut cols = Vec::with_capacity(up.cols());
    for j in 0..up.cols() {
        let v = up.column(j);
        let l = lift(&cycles, &v)?.ok_or_else(|| Error::DSquaredNonzero(n + 1))?;
        cols.push((up.source().shifts()[j], l));
    }
    let boundaries = columns_to_matrix(&fk, cols)?;
    let relations = kernel(&cycles)?;
    let m = PresentedModule::new(boundaries.hconcat(&relations)?)?;
    Ok((cycles, m))
}

/// Whether `H_n(f)` is onto, decided on the generators of `H_n(Y)`.
pub fn surjective_on_homology(f: &ChainMap, n: i64) -> Result<bool> {
    let y = f.target();
    for (s, g) in kernel_generators(&y.differential(n))? {
        let (_, hy, m) = induced_slice_map(f, n, s.weight)?;
        let c = hy.sub.coords(&y.term(n).to_slice_vector(&g, &hy.basis)).expect("generator is a cycle");
        if m.solve(&c).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exactness of `U --a--> V --b--> W` at `V`, with `dim V = dim_v`.
pub fn exact_at(a: &QMatrix, b: &QMatrix, dim_v: usize) -> bool {
    b.mul(a).is_zero() && a.rank() + b.rank() == dim_v
}

/// Checks that every weight slice of a free module shift list is not
/// above the truncation.
pub fn check_truncation(shifts: &[Shift], w_max: i64) -> Result<()> {
    match shifts.iter().map(|s| s.weight).max() {
        Some(top) if top > w_max => Err(Error::TruncationTooSmall { w: w_max, needed: top }),
        _ => Ok(()),
    }
}

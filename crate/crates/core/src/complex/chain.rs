use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::rat;
use crate::error::{Error, Result};
use crate::gmod::{same_ring, tensor_map, FreeGradedModule, GradedMatrix, Shift};
use crate::gring::{MonomialRing, RingMap};

/// A bounded complex of finitely generated free modules with degree-zero
/// differentials `d_n : X_n → X_{n-1}`. Missing terms are zero; missing
/// differentials between present terms are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Arc<MonomialRing>,
    terms: BTreeMap<i64, FreeGradedModule>,
    diffs: BTreeMap<i64, GradedMatrix>,
}

impl ChainComplex {
    /// Builds a complex; zero terms are dropped. Differentials must go
    /// between the listed terms. `d² = 0` is not checked here; see
    /// [`ChainComplex::validate`].
    pub fn new(
        ring: Arc<MonomialRing>,
        terms: BTreeMap<i64, FreeGradedModule>,
        diffs: BTreeMap<i64, GradedMatrix>,
    ) -> Result<Self> {
        let terms: BTreeMap<i64, FreeGradedModule> = terms.into_iter().filter(|(_, m)| m.rank() > 0).collect();
        for m in terms.values() {
            if !same_ring(m.ring(), &ring) {
                return Err(Error::RingMismatch("complex terms live over different rings".into()));
            }
        }
        let mut kept = BTreeMap::new();
        for (n, d) in diffs {
            if d.degree() != Shift::ZERO {
                return Err(Error::NonHomogeneous { row: 0, col: 0, detail: format!("d_{n} must have degree zero") });
            }
            let src = terms.get(&n).cloned().unwrap_or_else(|| FreeGradedModule::zero(ring.clone()));
            let tgt = terms.get(&(n - 1)).cloned().unwrap_or_else(|| FreeGradedModule::zero(ring.clone()));
            if *d.source() != src || *d.target() != tgt {
                return Err(Error::DimensionMismatch(format!("d_{n} does not map X_{n} to X_{}", n - 1)));
            }
            if !d.is_zero() {
                kept.insert(n, d);
            }
        }
        Ok(ChainComplex { ring, terms, diffs: kept })
    }

    pub fn zero(ring: Arc<MonomialRing>) -> Self {
        ChainComplex { ring, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// `M` concentrated in degree `n`.
    pub fn concentrated(module: FreeGradedModule, n: i64) -> Self {
        let ring = module.ring().clone();
        Self::new(ring, [(n, module)].into(), BTreeMap::new()).expect("well formed")
    }

    /// The unit: `R` in degree zero.
    pub fn unit(ring: Arc<MonomialRing>) -> Self {
        Self::concentrated(FreeGradedModule::line(ring, Shift::ZERO), 0)
    }

    /// The two-term complex `source → target` in degrees `n`, `n - 1`.
    pub fn two_term(d: GradedMatrix, n: i64) -> Result<Self> {
        let ring = d.ring().clone();
        Self::new(ring, [(n, d.source().clone()), (n - 1, d.target().clone())].into(), [(n, d)].into())
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i64, FreeGradedModule> {
        &self.terms
    }

    pub fn term(&self, n: i64) -> FreeGradedModule {
        self.terms.get(&n).cloned().unwrap_or_else(|| FreeGradedModule::zero(self.ring.clone()))
    }

    pub fn differential(&self, n: i64) -> GradedMatrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(self.term(n), self.term(n - 1), Shift::ZERO))
    }

    pub fn differentials(&self) -> &BTreeMap<i64, GradedMatrix> {
        &self.diffs
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Checks `d_{n-1} ∘ d_n = 0` and reports the first failing `n`.
    pub fn validate(&self) -> Result<()> {
        for (n, d) in &self.diffs {
            if let Some(e) = self.diffs.get(&(n - 1)) {
                if !e.compose(d)?.is_zero() {
                    return Err(Error::DSquaredNonzero(*n));
                }
            }
        }
        Ok(())
    }

    /// `X[k]_n = X_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
        ChainComplex {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, m)| (n + k, m.clone())).collect(),
            diffs: self.diffs.iter().map(|(n, d)| (n + k, d.scale(&sign))).collect(),
        }
    }

    /// `(X^∨)_{-n} = X_n^∨`, with `(-1)^{n+1} d_n^T` leaving degree `1 - n`.
    pub fn dual(&self) -> Self {
        ChainComplex {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, m)| (-n, m.dual())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(n, d)| {
                    let sign = if (n + 1).rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
                    (1 - n, d.dual().scale(&sign))
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_rings(self, other)?;
        let degrees: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in degrees {
            terms.insert(n, self.term(n).direct_sum(&other.term(n)));
            diffs.insert(n, self.differential(n).direct_sum(&other.differential(n))?);
        }
        Self::new(self.ring.clone(), terms, diffs)
    }

    /// `(X⊗Y)_n = ⊕_{i+j=n} X_i ⊗ Y_j` (ascending `i`) with
    /// `d = d_X ⊗ 1 + (-1)^i 1 ⊗ d_Y`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_rings(self, other)?;
        let mut blocks: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for &i in self.terms.keys() {
            for &j in other.terms.keys() {
                blocks.entry(i + j).or_default().push((i, j));
            }
        }
        let offsets = |n: i64| -> (FreeGradedModule, BTreeMap<(i64, i64), usize>) {
            let mut m = FreeGradedModule::zero(self.ring.clone());
            let mut off = BTreeMap::new();
            for &(i, j) in blocks.get(&n).map(Vec::as_slice).unwrap_or(&[]) {
                off.insert((i, j), m.rank());
                m = m.direct_sum(&self.term(i).tensor(&other.term(j)));
            }
            (m, off)
        };
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &n in blocks.keys() {
            let (src, src_off) = offsets(n);
            let (tgt, tgt_off) = offsets(n - 1);
            let mut entries = vec![vec![crate::gring::RingElement::zero(); src.rank()]; tgt.rank()];
            for (&(i, j), &so) in &src_off {
                let mut place = |m: &GradedMatrix, to: (i64, i64)| {
                    if let Some(&to_off) = tgt_off.get(&to) {
                        for (r, row) in m.entries().iter().enumerate() {
                            for (c, a) in row.iter().enumerate() {
                                if !a.is_zero() {
                                    entries[to_off + r][so + c] = a.clone();
                                }
                            }
                        }
                    }
                };
                let dx = tensor_map(&self.differential(i), &GradedMatrix::identity(&other.term(j)))?;
                place(&dx, (i - 1, j));
                let sign = if i.rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
                let dy = tensor_map(&GradedMatrix::identity(&self.term(i)), &other.differential(j))?.scale(&sign);
                place(&dy, (i, j - 1));
            }
            terms.insert(n, src.clone());
            diffs.insert(n, GradedMatrix::new(src, tgt, Shift::ZERO, entries)?);
        }
        Self::new(self.ring.clone(), terms, diffs)
    }

    /// Termwise base change along a ring map.
    pub fn base_change(&self, map: &RingMap) -> Result<Self> {
        if *map.source() != *self.ring {
            return Err(Error::IllFormedAlgebraMap("map source is not the ring of the complex".into()));
        }
        let target = Arc::new(map.target().clone());
        let terms = self.terms.iter().map(|(n, m)| (*n, m.base_change(map, target.clone()))).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(n, d)| Ok((*n, d.base_change(map, &target)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(target, terms, diffs)
    }

    /// Lowest generator weight of `X_n`.
    pub fn start_weight(&self, n: i64) -> Option<i64> {
        self.terms.get(&n)?.shifts().iter().map(|s| s.weight).min()
    }

    pub fn max_generator_weight(&self, n: i64) -> Option<i64> {
        self.terms.get(&n)?.shifts().iter().map(|s| s.weight).max()
    }
}

fn check_rings(a: &ChainComplex, b: &ChainComplex) -> Result<()> {
    if same_ring(&a.ring, &b.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)))
    }
}

/// Degree-zero chain map with components `f_n : X_n → Y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, GradedMatrix>,
}

impl ChainMap {
    /// Checks shapes and `f_{n-1} d_n = d_n f_n`.
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i64, GradedMatrix>) -> Result<Self> {
        check_rings(&source, &target)?;
        let mut kept = BTreeMap::new();
        for (n, f) in components {
            if *f.source() != source.term(n) || *f.target() != target.term(n) || f.degree() != Shift::ZERO {
                return Err(Error::NotAChainMap(format!("component {n} has the wrong shape")));
            }
            if !f.is_zero() {
                kept.insert(n, f);
            }
        }
        let m = ChainMap { source, target, components: kept };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let degrees: Vec<i64> = self.source.terms.keys().chain(self.target.terms.keys()).copied().collect();
        for n in degrees {
            let lhs = self.component(n - 1).compose(&self.source.differential(n))?;
            let rhs = self.target.differential(n).compose(&self.component(n))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("square at degree {n} does not commute")));
            }
        }
        Ok(())
    }

    pub fn identity(x: &ChainComplex) -> Self {
        let components = x.terms.iter().map(|(n, m)| (*n, GradedMatrix::identity(m))).collect();
        ChainMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    /// A map between complexes concentrated in degree `n`.
    pub fn in_degree(f: GradedMatrix, n: i64) -> Self {
        let source = ChainComplex::concentrated(f.source().clone(), n);
        let target = ChainComplex::concentrated(f.target().clone(), n);
        let components = if f.is_zero() { BTreeMap::new() } else { [(n, f)].into() };
        ChainMap { source, target, components }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<i64, GradedMatrix> {
        &self.components
    }

    pub fn component(&self, n: i64) -> GradedMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(self.source.term(n), self.target.term(n), Shift::ZERO))
    }

    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::NotAChainMap("composable maps need matching complexes".into()));
        }
        let degrees: Vec<i64> = first.source.terms.keys().copied().collect();
        let mut components = BTreeMap::new();
        for n in degrees {
            components.insert(n, self.component(n).compose(&first.component(n))?);
        }
        ChainMap::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn base_change(&self, map: &RingMap) -> Result<ChainMap> {
        let source = self.source.base_change(map)?;
        let tgt = self.target.base_change(map)?;
        let components = self
            .components
            .iter()
            .map(|(n, f)| Ok((*n, f.base_change(map, &source.ring)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::new(source, tgt, components)
    }

    /// `f[k]` on `X[k] → Y[k]`; components are unchanged.
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            components: self.components.iter().map(|(n, f)| (n + k, f.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(n, f)| (*n, f.neg())).collect(),
        }
    }

    /// `(f g) : X ⊕ Z → Y` for maps with a common target.
    pub fn hconcat(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.target {
            return Err(Error::NotAChainMap("hconcat needs a common target".into()));
        }
        let source = self.source.direct_sum(&other.source)?;
        let mut comps = BTreeMap::new();
        for &n in source.terms.keys() {
            comps.insert(n, self.component(n).hconcat(&other.component(n))?);
        }
        ChainMap::new(source, self.target.clone(), comps)
    }

    /// `f^∨ : Y^∨ → X^∨`, componentwise transpose.
    pub fn dual(&self) -> ChainMap {
        ChainMap {
            source: self.target.dual(),
            target: self.source.dual(),
            components: self.components.iter().map(|(n, f)| (-n, f.dual())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let degrees: Vec<i64> = source.terms.keys().chain(target.terms.keys()).copied().collect();
        let mut comps = BTreeMap::new();
        for n in degrees {
            comps.insert(n, self.component(n).direct_sum(&other.component(n))?);
        }
        ChainMap::new(source, target, comps)
    }
}

/// `cone(f)_n = X_{n-1} ⊕ Y_n` with `d = [[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    let (x, y) = (&f.source, &f.target);
    let ring = x.ring.clone();
    let degrees: Vec<i64> = x.terms.keys().map(|n| n + 1).chain(y.terms.keys().copied()).collect();
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in degrees {
        terms.insert(n, x.term(n - 1).direct_sum(&y.term(n)));
        let top = x.differential(n - 1).neg().hconcat(&GradedMatrix::zero(y.term(n), x.term(n - 2), Shift::ZERO))?;
        let bottom = f.component(n - 1).hconcat(&y.differential(n))?;
        diffs.insert(n, top.vconcat(&bottom)?);
    }
    // terms of the target of d_n for the lowest n
    let lows: Vec<i64> = terms.keys().map(|n| n - 1).collect();
    for n in lows {
        terms.entry(n).or_insert_with(|| x.term(n - 1).direct_sum(&y.term(n)));
    }
    ChainComplex::new(ring, terms, diffs)
}

/// `fiber(f) = cone(f)[-1]`.
pub fn fiber(f: &ChainMap) -> Result<ChainComplex> {
    Ok(cone(f)?.shift(-1))
}

/// The inclusion `Y → cone(f)`.
pub fn cone_inclusion(f: &ChainMap) -> Result<ChainMap> {
    let c = cone(f)?;
    let y = &f.target;
    let mut comps = BTreeMap::new();
    for (&n, m) in &y.terms {
        let z = GradedMatrix::zero(m.clone(), f.source.term(n - 1), Shift::ZERO);
        comps.insert(n, z.vconcat(&GradedMatrix::identity(m))?);
    }
    ChainMap::new(y.clone(), c, comps)
}

/// The projection `cone(f) → X[1]`.
pub fn cone_projection(f: &ChainMap) -> Result<ChainMap> {
    let c = cone(f)?;
    let x1 = f.source.shift(1);
    let mut comps = BTreeMap::new();
    for &n in c.terms.keys() {
        let xm = f.source.term(n - 1);
        let p = GradedMatrix::identity(&xm).hconcat(&GradedMatrix::zero(f.target.term(n), xm.clone(), Shift::ZERO))?;
        comps.insert(n, p);
    }
    ChainMap::new(c, x1, comps)
}

/// The projection `fiber(f) → X` onto the first summand.
pub fn fiber_projection(f: &ChainMap) -> Result<ChainMap> {
    let fib = fiber(f)?;
    let mut comps = BTreeMap::new();
    for &n in fib.terms.keys() {
        let xn = f.source.term(n);
        let p = GradedMatrix::identity(&xn).hconcat(&GradedMatrix::zero(f.target.term(n + 1), xn.clone(), Shift::ZERO))?;
        comps.insert(n, p);
    }
    ChainMap::new(fib, f.source.clone(), comps)
}

/// Projection of `X ⊕ Y` (as built by [`ChainComplex::direct_sum`]) onto
/// one summand.
pub fn summand_projection(x: &ChainComplex, y: &ChainComplex, second: bool) -> Result<ChainMap> {
    let sum = x.direct_sum(y)?;
    let mut comps = BTreeMap::new();
    for &n in sum.terms.keys() {
        let (xn, yn) = (x.term(n), y.term(n));
        let p = if second {
            GradedMatrix::zero(xn, yn.clone(), Shift::ZERO).hconcat(&GradedMatrix::identity(&yn))?
        } else {
            GradedMatrix::identity(&xn).hconcat(&GradedMatrix::zero(yn, xn.clone(), Shift::ZERO))?
        };
        comps.insert(n, p);
    }
    ChainMap::new(sum, if second { y.clone() } else { x.clone() }, comps)
}

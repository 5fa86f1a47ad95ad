//! Buchberger's algorithm for submodules of a free module over a polynomial
//! ring, position-over-term with a weighted reverse-lexicographic order
//! inside each component. Lower component indices dominate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::coeff::Rational;
use crate::gring::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub wdeg: i64,
    pub mono: Monomial,
}

impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        o.comp
            .cmp(&self.comp)
            .then(self.wdeg.cmp(&o.wdeg))
            .then_with(|| {
                // reverse lexicographic: smaller trailing exponent is larger
                for (a, b) in self.mono.0.iter().zip(&o.mono.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub(crate) type Vector = BTreeMap<Term, Rational>;

pub(crate) struct Weights<'a>(pub &'a [i64]);

impl Weights<'_> {
    pub fn of(&self, m: &Monomial) -> i64 {
        m.0.iter().zip(self.0).map(|(e, w)| e * w).sum()
    }
}

fn lead(v: &Vector) -> Option<(&Term, &Rational)> {
    v.last_key_value()
}

fn mul_term(v: &Vector, m: &Monomial, c: &Rational, w: &Weights) -> Vector {
    let dw = w.of(m);
    v.iter()
        .map(|(t, a)| (Term { comp: t.comp, wdeg: t.wdeg + dw, mono: t.mono.mul(m) }, a * c))
        .collect()
}

fn add_scaled(acc: &mut Vector, v: &Vector) {
    for (t, a) in v {
        let e = acc.entry(t.clone()).or_insert_with(Rational::zero);
        *e += a;
        if e.is_zero() {
            acc.remove(t);
        }
    }
}

fn top_reduce(mut v: Vector, basis: &[Vector], w: &Weights) -> Vector {
    'outer: loop {
        let Some((lt, lc)) = lead(&v) else { return v };
        let (lt, lc) = (lt.clone(), lc.clone());
        for g in basis {
            let (gt, gc) = lead(g).expect("basis elements are nonzero");
            if gt.comp == lt.comp && gt.mono.divides_exactly(&lt.mono) {
                let q = lt.mono.div(&gt.mono);
                let c = -(&lc / gc);
                add_scaled(&mut v, &mul_term(g, &q, &c, w));
                continue 'outer;
            }
        }
        return v;
    }
}

fn make_monic(v: Vector) -> Vector {
    let lc = lead(&v).expect("nonzero").1.clone();
    v.into_iter().map(|(t, a)| (t, a / &lc)).collect()
}

/// Gröbner basis of the submodule generated by `gens`.
pub(crate) fn groebner_basis(gens: Vec<Vector>, weights: &[i64]) -> Vec<Vector> {
    let w = Weights(weights);
    let mut basis: Vec<Vector> = Vec::new();
    for g in gens {
        let r = top_reduce(g, &basis, &w);
        if !r.is_empty() {
            basis.push(make_monic(r));
        }
    }
    let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let lcm_weight = |a: &Vector, b: &Vector| {
        let (ta, tb) = (lead(a).unwrap().0, lead(b).unwrap().0);
        (ta.comp == tb.comp).then(|| w.of(&ta.mono.lcm(&tb.mono)))
    };
    for j in 0..basis.len() {
        for i in 0..j {
            if let Some(d) = lcm_weight(&basis[i], &basis[j]) {
                pairs.insert((d, i, j));
            }
        }
    }
    while let Some(p) = pairs.iter().next().cloned() {
        pairs.remove(&p);
        let (_, i, j) = p;
        let (ti, tj) = (lead(&basis[i]).unwrap().0.clone(), lead(&basis[j]).unwrap().0.clone());
        let l = ti.mono.lcm(&tj.mono);
        // chain criterion
        let pending = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pairs.iter().any(|(_, x, y)| *x == a && *y == b)
        };
        let skip = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let tk = lead(&basis[k]).unwrap().0;
            tk.comp == ti.comp
                && tk.mono.divides_exactly(&l)
                && tk.mono.lcm(&ti.mono) != l
                && tk.mono.lcm(&tj.mono) != l
                && !pending(i, k)
                && !pending(j, k)
        });
        if skip {
            continue;
        }
        let mut s = mul_term(&basis[i], &l.div(&ti.mono), &Rational::one(), &w);
        add_scaled(&mut s, &mul_term(&basis[j], &l.div(&tj.mono), &-Rational::one(), &w));
        let r = top_reduce(s, &basis, &w);
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r);
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            if let Some(d) = lcm_weight(&basis[k], &basis[n]) {
                pairs.insert((d, k, n));
            }
        }
    }
    basis
}

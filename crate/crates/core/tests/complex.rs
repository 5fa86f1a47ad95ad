use std::sync::Arc;

use gradedhom::complex::*;
use gradedhom::gmod::{FreeGradedModule, GradedMatrix, Shift};
use gradedhom::gring::{MonomialRing, RingMap};
use gradedhom::linalg::QMatrix;
use gradedhom::Error;
use proptest::prelude::*;

fn node() -> Arc<MonomialRing> {
    Arc::new(MonomialRing::polynomial(&["x", "y"]).with_relations(&["x*y"]).unwrap())
}

fn line(r: &Arc<MonomialRing>, w: i64) -> FreeGradedModule {
    FreeGradedModule::line(r.clone(), Shift::weight(w))
}

/// A 1×k matrix `R(w_1) ⊕ … → R(0)` with the given entries.
fn row(r: &Arc<MonomialRing>, entries: &[&str]) -> GradedMatrix {
    GradedMatrix::from_target(line(r, 0), vec![entries.iter().map(|s| r.parse(s).unwrap()).collect()]).unwrap()
}

fn koszul(r: &Arc<MonomialRing>, e: &str) -> ChainComplex {
    ChainComplex::two_term(row(r, &[e]), 1).unwrap()
}

/// A small catalog of complexes and maps over the node.
fn catalog(r: &Arc<MonomialRing>) -> (Vec<ChainComplex>, Vec<ChainMap>) {
    let unit = ChainComplex::unit(r.clone());
    let kx = koszul(r, "x");
    let ky = koszul(r, "y");
    let p = ChainMap::in_degree(row(r, &["x", "y"]), 0);
    let y = ChainMap::in_degree(row(r, &["y"]), 0);
    let x = ChainMap::in_degree(row(r, &["x"]), 0);
    let objects = vec![
        unit.clone(),
        kx.clone(),
        ky.clone(),
        kx.tensor(&ky).unwrap(),
        cone(&p).unwrap(),
        ky.dual(),
        ky.shift(2),
        unit.direct_sum(&ky).unwrap(),
    ];
    let maps = vec![
        p.clone(),
        y.clone(),
        x.clone(),
        ChainMap::identity(&ky),
        ChainMap::zero(&kx, &ky),
        cone_inclusion(&y).unwrap(),
        cone_projection(&x).unwrap(),
        y.direct_sum(&x).unwrap(),
        fiber_projection(&p).unwrap(),
    ];
    (objects, maps)
}

#[test]
fn tor_table_over_the_node() {
    let r = node();
    let y = [r.parse("y").unwrap()];
    let dims = |n| tor(r.clone(), &y, &y, n, 10).unwrap().entry;
    assert_eq!(dims(0).dims, vec![1; 11]);
    assert_eq!(dims(1).nonzero(), vec![(1, 1)]);
    assert!(dims(2).is_zero());
    assert_eq!(dims(3).nonzero(), vec![(3, 1)]);
}

#[test]
fn resolution_of_a_cusp_like_quotient() {
    let r = Arc::new(MonomialRing::polynomial(&["x", "y"]).with_relations(&["x^2*y"]).unwrap());
    let res = cyclic_resolution(r.clone(), &[r.parse("y").unwrap()], 3, 8).unwrap();
    let d: Vec<String> = res.differential_entries().iter().map(|m| m[0][0].clone()).collect();
    assert_eq!(d, vec!["y", "x^2", "y"]);
}

#[test]
fn validation_examples() {
    let r = node();
    let y = row(&r, &["y"]);
    let x = row(&r, &["x"]).with_modules(line(&r, 2), line(&r, 1), Shift::ZERO).unwrap();
    let ok = ChainComplex::new(
        r.clone(),
        [(0, line(&r, 0)), (1, line(&r, 1)), (2, line(&r, 2))].into(),
        [(1, y.clone()), (2, x)].into(),
    )
    .unwrap();
    assert!(ok.validate().is_ok());
    let yy = row(&r, &["y"]).with_modules(line(&r, 2), line(&r, 1), Shift::ZERO).unwrap();
    let bad =
        ChainComplex::new(r.clone(), [(0, line(&r, 0)), (1, line(&r, 1)), (2, line(&r, 2))].into(), [(1, y), (2, yy)].into())
            .unwrap();
    assert_eq!(bad.validate(), Err(Error::DSquaredNonzero(2)));
}

#[test]
fn cone_of_identity_is_acyclic() {
    let r = node();
    for x in catalog(&r).0 {
        let c = cone(&ChainMap::identity(&x)).unwrap();
        assert!(homology_report(&c, 6).unwrap().degrees.iter().all(HomologyEntry::is_zero));
    }
}

#[test]
fn fiber_of_the_row_x_y() {
    let r = node();
    let p = ChainMap::in_degree(row(&r, &["x", "y"]), 0);
    let f = fiber(&p).unwrap();
    // F_0 = R(1)², F_1 = R, so the fiber is the cone shifted down
    assert_eq!(f.term(0).rank(), 2);
    assert_eq!(f.term(1).rank(), 0);
    assert_eq!(f.term(-1).rank(), 1);
    assert_eq!(f, cone(&p).unwrap().shift(-1));
}

#[test]
fn double_dual_negates_the_differential() {
    let r = node();
    for x in catalog(&r).0 {
        let dd = x.dual().dual();
        assert_eq!(dd.terms(), x.terms());
        for (n, d) in x.differentials() {
            assert_eq!(dd.differential(*n), d.neg());
        }
    }
}

#[test]
fn koszul_complex_of_a_regular_sequence() {
    let q = Arc::new(MonomialRing::polynomial(&["x", "y"]));
    let k = koszul(&q, "x").tensor(&koszul(&q, "y")).unwrap();
    let h = homology_report(&k, 2).unwrap();
    assert_eq!(h.degrees[0].dims, vec![1, 0, 0]);
    assert!(h.degrees[1..].iter().all(HomologyEntry::is_zero));
}

#[test]
fn unit_is_neutral_for_tensor() {
    let r = node();
    let unit = ChainComplex::unit(r.clone());
    for x in catalog(&r).0 {
        assert_eq!(x.tensor(&unit).unwrap(), x);
        assert_eq!(unit.tensor(&x).unwrap(), x);
    }
}

#[test]
fn base_change_to_components() {
    let r = node();
    let ky = koszul(&r, "y");
    let a = r.with_relations(&["y"]).unwrap();
    let ka = ky.base_change(&RingMap::canonical(&r, &a).unwrap()).unwrap();
    // A --0--> A
    assert!(ka.differentials().is_empty());
    assert_eq!(ka.support(), Some((0, 1)));
    let rx = r.localize("x").unwrap();
    let kx = ky.base_change(&RingMap::canonical(&r, &rx).unwrap()).unwrap();
    assert!(kx.differentials().is_empty());
    let ry = r.localize("y").unwrap();
    let ky_y = ky.base_change(&RingMap::canonical(&r, &ry).unwrap()).unwrap();
    assert!(homology_report(&ky_y, 4).unwrap().degrees.iter().all(HomologyEntry::is_zero));
}

/// Slice rank data for `H_n(X) → H_n(Y) → H_n(C) → H_{n-1}(X) → H_{n-1}(Y)`.
fn les_exact(f: &ChainMap, n: i64, w: i64) -> bool {
    let inc = cone_inclusion(f).unwrap();
    let proj = cone_projection(f).unwrap();
    let (_, hy, hf) = induced_slice_map(f, n, w).unwrap();
    let (_, hc, hi) = induced_slice_map(&inc, n, w).unwrap();
    let (_, _, hp) = induced_slice_map(&proj, n, w).unwrap();
    let (hx1, _, hf1) = induced_slice_map(f, n - 1, w).unwrap();
    exact_at(&hf, &hi, hy.dim()) && exact_at(&hi, &hp, hc.dim()) && exact_at(&hp, &hf1, hx1.dim())
}

#[test]
fn cone_long_exact_sequence_on_the_catalog() {
    let r = node();
    for f in catalog(&r).1 {
        let (lo, hi) = {
            let c = cone(&f).unwrap();
            c.support().unwrap_or((0, 0))
        };
        for n in lo - 1..=hi + 1 {
            for w in -3..=6 {
                assert!(les_exact(&f, n, w), "degree {n} weight {w}");
            }
        }
    }
}

#[test]
fn tor_balance_on_catalog_ideals() {
    let r = node();
    let ideals: Vec<Vec<&str>> = vec![vec!["y"], vec!["x"], vec!["x", "y"], vec!["x^2"], vec!["y^2", "x"]];
    let parse = |i: &[&str]| i.iter().map(|s| r.parse(s).unwrap()).collect::<Vec<_>>();
    for a in &ideals {
        for b in &ideals {
            for n in 0..3 {
                let ab = tor(r.clone(), &parse(a), &parse(b), n, 7).unwrap().entry;
                let ba = tor(r.clone(), &parse(b), &parse(a), n, 7).unwrap().entry;
                let w: Vec<usize> = (0..=7).map(|w| ab.dim_at(w)).collect();
                let v: Vec<usize> = (0..=7).map(|w| ba.dim_at(w)).collect();
                assert_eq!(w, v, "Tor_{n}({a:?}, {b:?})");
            }
        }
    }
}

#[test]
fn homology_of_the_zero_complex() {
    let r = node();
    let h = homology(&ChainComplex::zero(r), 3, 5).unwrap();
    assert!(h.is_zero());
}

fn slice_dims(x: &ChainComplex, n: i64, ws: std::ops::RangeInclusive<i64>) -> Vec<usize> {
    ws.map(|w| slice_homology(x, n, w).unwrap().dim()).collect()
}

fn random_map(r: &Arc<MonomialRing>) -> impl Strategy<Value = ChainMap> {
    let r = r.clone();
    let choices: Vec<&'static str> = vec!["1", "x", "y", "x^2", "y^2"];
    (proptest::collection::vec(proptest::sample::select(choices), 1..=3), 0usize..3).prop_map(move |(es, kind)| {
        let f = ChainMap::in_degree(row(&r, &es), 0);
        match kind {
            0 => f,
            1 => cone_inclusion(&f).unwrap(),
            _ => f.direct_sum(&ChainMap::identity(&koszul(&r, "y"))).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_relabels_homology(f in random_map(&node()), k in -2i64..3) {
        let c = cone(&f).unwrap();
        let s = c.shift(k);
        for n in -1..=2 {
            prop_assert_eq!(slice_dims(&c, n, -2..=5), slice_dims(&s, n + k, -2..=5));
        }
    }

    #[test]
    fn euler_characteristic_per_slice(f in random_map(&node())) {
        let c = cone(&f).unwrap();
        let (lo, hi) = c.support().unwrap_or((0, 0));
        for w in -2..=6 {
            let mut chain = 0i64;
            let mut hom = 0i64;
            for n in lo..=hi {
                let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                chain += sign * c.term(n).slice_dim(w).unwrap() as i64;
                hom += sign * slice_homology(&c, n, w).unwrap().dim() as i64;
            }
            prop_assert_eq!(chain, hom);
        }
    }

    #[test]
    fn tensor_squares_to_zero(f in random_map(&node()), g in random_map(&node())) {
        let t = cone(&f).unwrap().tensor(&cone(&g).unwrap()).unwrap();
        prop_assert!(t.validate().is_ok());
    }

    #[test]
    fn long_exact_sequence_of_random_cones(f in random_map(&node())) {
        for n in -1..=2 {
            for w in 0..=4 {
                prop_assert!(les_exact(&f, n, w));
            }
        }
    }
}

#[test]
fn exact_at_rejects_nonzero_composites() {
    let one = QMatrix::identity(1);
    assert!(!exact_at(&one, &one, 1));
    assert!(exact_at(&QMatrix::zeros(1, 0), &one, 1));
}

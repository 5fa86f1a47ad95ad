use std::sync::Arc;

use gradedhom::complex::{cone, cone_inclusion, exact_at, induced_slice_map, ChainComplex, ChainMap};
use gradedhom::gmod::{FreeGradedModule, GradedMatrix, Shift};
use gradedhom::gring::MonomialRing;
use gradedhom::site::*;
use gradedhom::Error;

const W: i64 = 10;

fn site() -> NodeSite {
    node_site(W).unwrap()
}

fn line(r: &Arc<MonomialRing>, w: i64) -> FreeGradedModule {
    FreeGradedModule::line(r.clone(), Shift::weight(w))
}

fn row(r: &Arc<MonomialRing>, entries: &[&str]) -> GradedMatrix {
    GradedMatrix::from_target(line(r, 0), vec![entries.iter().map(|s| r.parse(s).unwrap()).collect()]).unwrap()
}

fn shifts(ws: &[i64]) -> Vec<Shift> {
    ws.iter().map(|w| Shift::weight(*w)).collect()
}

fn types(v: &DualVerdict) -> Vec<(i64, usize, Vec<Shift>)> {
    match v {
        DualVerdict::HDual { types } => types.iter().map(|t| (t.degree, t.component, t.shifts.clone())).collect(),
        other => panic!("expected an H-dual, got {other:?}"),
    }
}

#[test]
fn koszul_y_is_dual_under_both_theories() {
    let s = site();
    let ky = s.seeds.object("K(y)").unwrap();
    let a = classify_dual(&s.quotient, ky, "K(y)").unwrap();
    assert_eq!(types(&a.verdict), vec![(0, 0, shifts(&[0])), (1, 0, shifts(&[1]))]);
    let r = classify_dual(&s.localizations, ky, "K(y)").unwrap();
    // the R_y factor sees an acyclic complex
    assert_eq!(
        types(&r.verdict),
        vec![(0, 0, shifts(&[0])), (1, 0, shifts(&[1])), (0, 1, vec![]), (1, 1, vec![])]
    );
}

#[test]
fn cone_of_p_is_not_dual_under_the_quotient() {
    let s = site();
    let p = s.seeds.map("p").unwrap();
    let c = classify_dual(&s.quotient, &cone(p).unwrap(), "cone(p)").unwrap();
    assert!(matches!(c.verdict, DualVerdict::NotHDual { degree: 0, component: 0, .. }), "{:?}", c.verdict);
}

#[test]
fn koszul_y_is_not_dual_over_the_base() {
    let s = site();
    let id = HomologyTheory::identity("R", s.base.clone(), W).unwrap();
    let c = classify_dual(&id, s.seeds.object("K(y)").unwrap(), "K(y)").unwrap();
    assert!(c.verdict.is_not_dual());
}

#[test]
fn classify_dual_needs_enough_truncation() {
    let s = site();
    let low = HomologyTheory::quotient("A", s.base.clone(), &["y"], 0).unwrap();
    let r = classify_dual(&low, s.seeds.object("K(y)").unwrap(), "K(y)");
    assert_eq!(r.unwrap_err(), Error::TruncationTooSmall { w: 0, needed: 1 });
}

#[test]
fn epi_verdicts_on_p() {
    let s = site();
    let p = s.seeds.map("p").unwrap();
    assert!(classify_epi(&s.localizations, p, "p").unwrap().is_epi());
    let a = classify_epi(&s.quotient, p, "p").unwrap();
    assert_eq!(a.verdict, EpiVerdict::NotEpi { degree: 0, component: 0 });
    for h in [&s.quotient, &s.localizations] {
        for o in &s.seeds.objects {
            assert!(classify_epi(h, &ChainMap::identity(&o.complex), "id").unwrap().is_epi());
        }
    }
}

#[test]
fn unit_sanity_and_ill_formed_theories() {
    let s = site();
    let q = Arc::new(MonomialRing::polynomial(&["z"]));
    let other = HomologyTheory::identity("Q[z]", q, W).unwrap();
    assert!(HomologyTheory::new("bad", s.base.clone(), other.components().to_vec(), W).is_err());
    assert!(HomologyTheory::new("empty", s.base.clone(), vec![], W).is_err());
}

#[test]
fn cofiber_closure_examples() {
    let s = site();
    let unit = ChainComplex::unit(s.base.clone());
    let zero = cofiber_closure_check(&s.quotient, &ChainMap::zero(&unit, &unit), "0").unwrap();
    assert!(zero.ok);
    assert_eq!(zero.cokernel_types.iter().filter(|t| !t.shifts.is_empty()).count(), 1);
    let id = cofiber_closure_check(&s.localizations, &ChainMap::identity(&unit), "id").unwrap();
    assert!(id.ok);
    assert_eq!(id.retraction_slices, 0);
    let y = s.seeds.map("y").unwrap();
    let r = cofiber_closure_check(&s.localizations, y, "y").unwrap();
    assert!(r.ok && r.split && r.retraction_slices > 0, "{r:?}");
    assert!(r.cone.is_dual());
}

#[test]
fn cofiber_closure_rejects_non_projective_cokernels() {
    let s = site();
    // under A, x : R(1) → R has cokernel A/x = Q
    let x = ChainMap::in_degree(row(&s.base, &["x"]), 0);
    let r = cofiber_closure_check(&s.quotient, &x, "x");
    assert!(matches!(r, Err(Error::HypothesisFailed(_))), "{r:?}");
}

fn split_projection(r: &Arc<MonomialRing>) -> ChainMap {
    let src = FreeGradedModule::new(r.clone(), shifts(&[0, 1]));
    let m = GradedMatrix::new(src, line(r, 0), Shift::ZERO, vec![vec![r.one(), r.parse("0").unwrap()]]).unwrap();
    ChainMap::in_degree(m, 0)
}

#[test]
fn cover_pullback_examples() {
    let s = site();
    let unit = ChainComplex::unit(s.base.clone());
    let y = s.seeds.map("y").unwrap();
    let id = ChainMap::identity(&unit);
    let c = cover_pullback(&s.quotient, &id, y, ("id", "y")).unwrap();
    assert!(c.report.p_prime.is_epi() && c.report.square_commutes_up_to_homotopy);
    let c = cover_pullback(&s.quotient, &split_projection(&s.base), y, ("(1 0)", "y")).unwrap();
    assert!(c.report.p_prime.is_epi() && c.report.square_commutes_up_to_homotopy);
    let x = ChainMap::in_degree(row(&s.base, &["x"]), 0);
    let p = s.seeds.map("p").unwrap();
    let c = cover_pullback(&s.localizations, p, &x, ("p", "x")).unwrap();
    assert!(c.report.p_prime.is_epi() && c.report.square_commutes_up_to_homotopy);
    assert_eq!(c.p_prime.target(), x.source());
    assert_eq!(c.f_prime.target(), p.source());
    assert!(matches!(cover_pullback(&s.quotient, p, &x, ("p", "x")), Err(Error::NotAnEpi(_))));
}

#[test]
fn exactness_of_cover_examples() {
    let s = site();
    let unit = ChainComplex::unit(s.base.clone());
    for (h, p) in [
        (&s.quotient, ChainMap::identity(&unit)),
        (&s.quotient, split_projection(&s.base)),
        (&s.localizations, s.seeds.map("p").unwrap().clone()),
    ] {
        let r = exactness_of_cover(h, &p, "p").unwrap();
        assert!(r.epi && r.exact && r.slices_checked > 0, "{r:?}");
    }
    let r = exactness_of_cover(&s.quotient, s.seeds.map("p").unwrap(), "p").unwrap();
    assert!(!r.epi && !r.exact);
}

#[test]
fn comparison_reproduces_the_counterexample() {
    let s = site();
    let r = compare_theories(&s.quotient, &s.localizations, &s.seeds).unwrap();
    assert_eq!(r.verdict.as_deref(), Some(CONDITION_I_VIOLATED));
    assert!(r.discrepancies.contains(&Discrepancy::Epi {
        map: "p".into(),
        epi_under: "R'".into(),
        not_epi_under: "A".into()
    }));
    for h in [&s.quotient, &s.localizations] {
        let same = compare_theories(h, h, &s.seeds).unwrap();
        assert!(same.discrepancies.is_empty() && same.verdict.is_none());
    }
}

#[test]
fn comparison_with_the_base_finds_a_dual_discrepancy() {
    let s = site();
    let id = HomologyTheory::identity("R", s.base.clone(), W).unwrap();
    let r = compare_theories(&s.quotient, &id, &s.seeds).unwrap();
    assert!(r.discrepancies.contains(&Discrepancy::Dual {
        object: "K(y)".into(),
        dual_under: "A".into(),
        not_dual_under: "R".into()
    }));
}

#[test]
fn closure_examples() {
    let s = site();
    let mut unit = Catalog::new();
    unit.add_object("R", ChainComplex::unit(s.base.clone()));
    let c = catalog_closure(&unit, 1).unwrap();
    let ids: Vec<&str> = c.objects.iter().map(|o| o.id.as_str()).collect();
    assert_eq!(ids, vec!["R", "R[1]", "R[-1]"]);
    let mut with_y = unit.clone();
    with_y.add_map("y", s.seeds.map("y").unwrap().clone());
    let c = catalog_closure(&with_y, 1).unwrap();
    assert_eq!(c.object("cone(y)"), s.seeds.object("K(y)"));
    let c = catalog_closure(&s.seeds, 2).unwrap();
    assert_eq!((c.objects.len(), c.maps.len()), (40, 22));
    assert!(matches!(catalog_closure(&s.seeds, MAX_CATALOG_DEPTH + 1), Err(Error::BoundExceeded(_))));
}

#[test]
fn partitions_cover_maps_between_duals_once() {
    let s = site();
    let cat = catalog_closure(&s.seeds, 1).unwrap();
    let r = classify_catalog(&[&s.quotient, &s.localizations], &cat, true).unwrap();
    for (t, part) in r.partitions.iter().enumerate() {
        for m in &r.maps {
            let n = [&part.epi, &part.not_epi, &part.unknown].iter().filter(|l| l.contains(&m.id)).count();
            assert_eq!(n, usize::from(m.epis[t].is_some()), "{}", m.id);
        }
    }
    assert!(r.covers.iter().all(|c| c.exact), "{:?}", r.covers);
}

#[test]
fn homology_is_homological_on_the_catalog() {
    let s = site();
    let cat = catalog_closure(&s.seeds, 1).unwrap();
    for h in [&s.quotient, &s.localizations] {
        for m in &cat.maps {
            for f in h.apply_map(&m.map).unwrap() {
                let inc = cone_inclusion(&f).unwrap();
                for n in -2..=3 {
                    for w in -2..=6 {
                        let (_, hy, a) = induced_slice_map(&f, n, w).unwrap();
                        let (_, _, b) = induced_slice_map(&inc, n, w).unwrap();
                        assert!(exact_at(&a, &b, hy.dim()), "{} {n} {w}", m.id);
                    }
                }
            }
        }
    }
}

#[test]
fn verdicts_are_shift_invariant() {
    let s = site();
    for h in [&s.quotient, &s.localizations] {
        for o in &s.seeds.objects {
            let v = classify_dual(h, &o.complex, &o.id).unwrap().verdict;
            for k in [-2, 1, 3] {
                let u = classify_dual(h, &o.complex.shift(k), &o.id).unwrap().verdict;
                match (&v, &u) {
                    (DualVerdict::HDual { types: a }, DualVerdict::HDual { types: b }) => {
                        let relabel: Vec<_> =
                            a.iter().map(|t| (t.degree + k, t.component, t.shifts.clone())).collect();
                        let got: Vec<_> = b.iter().map(|t| (t.degree, t.component, t.shifts.clone())).collect();
                        assert_eq!(relabel, got);
                    }
                    (DualVerdict::NotHDual { degree: a, .. }, DualVerdict::NotHDual { degree: b, .. }) => {
                        assert_eq!(a + k, *b)
                    }
                    _ => panic!("verdict changed under shift"),
                }
            }
        }
    }
}

#[test]
fn dual_closure_for_maps_with_projective_cokernel() {
    let s = site();
    let cat = catalog_closure(&s.seeds, 1).unwrap();
    let mut checked = 0;
    for h in [&s.quotient, &s.localizations] {
        for m in &cat.maps {
            match cofiber_closure_check(h, &m.map, &m.id) {
                Ok(r) => {
                    assert!(r.ok, "{r:?}");
                    checked += 1;
                }
                Err(Error::HypothesisFailed(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(checked > 0);
}

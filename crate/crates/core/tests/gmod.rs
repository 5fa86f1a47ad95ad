use std::sync::Arc;

use gradedhom::gmod::{
    free_rank_type, kernel, nakayama_is_zero, slice_rank, submodule_slice, FreeGradedModule, FreenessVerdict,
    GradedMatrix, PresentedModule, Shift,
};
use gradedhom::gring::MonomialRing;
use gradedhom::linalg::QMatrix;
use proptest::prelude::*;

fn node() -> Arc<MonomialRing> {
    Arc::new(MonomialRing::polynomial(&["x", "y"]).with_relations(&["x*y"]).unwrap())
}

fn plane() -> Arc<MonomialRing> {
    Arc::new(MonomialRing::polynomial(&["x", "y"]))
}

fn monomial(a: i64, b: i64) -> String {
    format!("x^{a}*y^{b}")
}

/// A row `⊕ R(a_i + b_i) → R` with entries `x^a_i y^b_i`, possibly zero
/// in the ring.
fn row(r: &Arc<MonomialRing>, exps: &[(i64, i64)]) -> GradedMatrix {
    let target = FreeGradedModule::line(r.clone(), Shift::ZERO);
    let source = FreeGradedModule::new(r.clone(), exps.iter().map(|&(a, b)| Shift::weight(a + b)).collect());
    let entries = vec![exps.iter().map(|&(a, b)| r.parse(&monomial(a, b)).unwrap()).collect()];
    GradedMatrix::new(source, target, Shift::ZERO, entries).unwrap()
}

fn exps() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((0i64..3, 0i64..3), 1..4)
}

proptest! {
    /// `φ ∘ ker φ = 0` and the kernel's generators span a slice of
    /// dimension `dim source_w − rank φ_w`.
    #[test]
    fn kernel_satisfies_rank_nullity(e in exps(), plane_ring in any::<bool>()) {
        let r = if plane_ring { plane() } else { node() };
        let phi = row(&r, &e);
        let k = kernel(&phi).unwrap();
        prop_assert!(phi.compose(&k).unwrap().is_zero());
        let gens: Vec<_> = (0..k.cols()).map(|j| (k.source().shifts()[j], k.column(j))).collect();
        for w in 0..=6 {
            let basis = phi.source().slice_basis(w).unwrap();
            let span = submodule_slice(phi.source(), &gens, w, &basis, false).unwrap();
            let dim = QMatrix::from_columns(basis.len(), &span).rank();
            prop_assert_eq!(dim, basis.len() - slice_rank(&phi, w).unwrap(), "weight {}", w);
        }
    }

    /// Free modules over the node are recognized with their shifts.
    #[test]
    fn free_modules_recover_their_type(mut ws in proptest::collection::vec(0i64..3, 0..4)) {
        ws.sort();
        let shifts: Vec<Shift> = ws.iter().map(|w| Shift::weight(*w)).collect();
        let m = PresentedModule::free(FreeGradedModule::new(node(), shifts.clone()));
        let cert = free_rank_type(&m, 6).unwrap();
        prop_assert_eq!(cert.free_type(), Some(&shifts[..]));
    }

    /// `R/(m)` for a monomial `m` is free only when `m = 1`.
    #[test]
    fn cyclic_quotients_are_not_projective(a in 0i64..3, b in 0i64..3) {
        let r = plane();
        let m = PresentedModule::cyclic(r.clone(), &[r.parse(&monomial(a, b)).unwrap()]).unwrap();
        let v = free_rank_type(&m, 6).unwrap().verdict;
        if a + b == 0 {
            prop_assert_eq!(v, FreenessVerdict::Free { ty: vec![] });
        } else {
            let ok = matches!(v, FreenessVerdict::NotProjective { witness_weight, .. } if witness_weight == a + b);
            prop_assert!(ok, "{:?}", v);
        }
    }

    #[test]
    fn duality_is_an_involution(e in exps()) {
        let phi = row(&node(), &e);
        prop_assert_eq!(phi.dual().dual(), phi.clone());
        prop_assert_eq!(phi.source().dual().dual(), phi.source().clone());
    }
}

#[test]
fn slices_of_cyclic_modules_count_monomials() {
    let r = plane();
    let m = PresentedModule::cyclic(r.clone(), &[r.parse("x^2").unwrap(), r.parse("y^3").unwrap()]).unwrap();
    for w in 0..=6 {
        let brute = (0..=w).filter(|&a| a < 2 && w - a < 3).count();
        assert_eq!(m.slice_dim(w).unwrap(), brute, "weight {w}");
    }
    let nk = nakayama_is_zero(&m).unwrap();
    assert!(!nk.zero);
}

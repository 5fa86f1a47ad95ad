use std::collections::BTreeMap;

use gradedhom::coeff::{rat, CoefficientRing};
use gradedhom::gring::{GradingGroup, GradingSpec, Parity, ParityKind};
use gradedhom::sympow::*;
use proptest::prelude::*;

fn bounds() -> SymBounds {
    SymBounds::default()
}

fn young(p: usize, q: usize, m: usize, n: usize) -> (SuperSpace, SignedPermutationOperator) {
    let x = SuperSpace::standard(p, q);
    let s = young_symmetrizer(&x, YoungShape::new(m, n), &bounds()).unwrap();
    (x, s)
}

#[test]
fn young_vanishing_on_the_frontier() {
    for (p, q) in [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2)] {
        let (x, s) = young(p, q, q + 1, p + 1);
        assert!(operator_is_zero(&s, &x), "Q^{{{p}|{q}}} shape {}x{}", q + 1, p + 1);
        if p > 0 {
            let (x, s) = young(p, q, q + 1, p);
            assert!(!operator_is_zero(&s, &x));
        }
        if q > 0 {
            let (x, s) = young(p, q, q, p + 1);
            assert!(!operator_is_zero(&s, &x));
        }
    }
}

#[test]
fn frontier_for_two_two_with_raised_bounds() {
    let x = SuperSpace::standard(2, 2);
    let wide = SymBounds { max_boxes: 9, ..bounds() };
    let s = young_symmetrizer(&x, YoungShape::new(3, 3), &wide).unwrap();
    assert!(operator_is_zero(&s, &x));
}

#[test]
fn frontier_for_two_two_is_beyond_default_bounds() {
    let x = SuperSpace::standard(2, 2);
    let r = young_symmetrizer(&x, YoungShape::new(3, 3), &bounds());
    assert!(matches!(r, Err(gradedhom::Error::BoundExceeded(_))));
    for (m, n) in [(3, 2), (2, 3)] {
        let s = young_symmetrizer(&x, YoungShape::new(m, n), &bounds()).unwrap();
        assert!(!operator_is_zero(&s, &x));
    }
}

#[test]
fn antisymmetrizer_on_one_one() {
    let (x, s) = young(1, 1, 1, 2);
    // e⊗f survives; brute force over all four words
    let alive: Vec<Vec<usize>> = x.words(2).filter(|w| !s.apply(&x, &[(w.clone(), 1)].into()).is_empty()).collect();
    assert!(alive.contains(&vec![0, 1]));
    // the signed swap fixes f⊗f up to -1, so the antisymmetrizer doubles it
    assert_eq!(s.apply_word(&x, &[1, 1]).unwrap(), [(vec![1, 1], 2)].into());
    assert!(s.apply_word(&x, &[0, 0]).unwrap().is_empty());
}

#[test]
fn exterior_cube_of_a_plane() {
    let x = SuperSpace::standard(2, 0);
    let a = antisymmetrizer(&x, 3, &bounds()).unwrap();
    assert!(operator_is_zero(&a, &x));
}

#[test]
fn trivial_operators() {
    let x = SuperSpace::standard(1, 1);
    assert!(operator_is_zero(&SignedPermutationOperator::zero(3), &x));
    assert!(!operator_is_zero(&SignedPermutationOperator::identity(3), &x));
}

#[test]
fn quasi_idempotence_constant_is_the_hook_product() {
    for (p, q, m, n) in [(1, 1, 1, 2), (2, 0, 2, 2), (1, 1, 2, 1), (2, 1, 2, 2), (1, 2, 3, 1), (2, 1, 1, 3)] {
        let (x, s) = young(p, q, m, n);
        let r = quasi_idempotence(&s, &x);
        assert!(!r.zero);
        assert_eq!(r.scalar_c, Some(rat(YoungShape::new(m, n).hook_product() as i64)), "{p}|{q} {m}x{n}");
        assert_eq!(r.checked_words, x.word_count(m * n));
    }
    let (x, s) = young(1, 1, 2, 2);
    let r = quasi_idempotence(&s, &x);
    assert!(r.zero);
    assert_eq!(r.scalar_c, None);
}

#[test]
fn identity_factorizations() {
    let x = SuperSpace::from_lines([("L0", Parity::Even), ("L0'", Parity::Even), ("Y", Parity::Even)]);
    let w = [0, 1, 2];
    let a = antisymmetrizer(&x, 3, &bounds()).unwrap();
    assert!(identity_factorization(&x, &a, &w).unwrap().identity);
    let s = symmetrizer(&x, 3, &bounds()).unwrap();
    assert!(identity_factorization(&x, &s, &w).unwrap().identity);
    assert!(matches!(identity_factorization(&x, &s, &[0, 1]), Err(gradedhom::Error::MalformedWord(_))));
    assert!(matches!(identity_factorization(&x, &s, &[0, 1, 7]), Err(gradedhom::Error::MalformedWord(_))));

    for y in [Parity::Even, Parity::Odd] {
        let x = SuperSpace::from_lines([("Le", Parity::Even), ("Lo", Parity::Odd), ("Y", y)]);
        let shape = YoungShape::new(2, 2);
        let s = young_symmetrizer(&x, shape, &bounds()).unwrap();
        let report = identity_factorization(&x, &s, &shape.staircase_word()).unwrap();
        assert_eq!(report.word, vec!["Le", "Lo", "Lo", "Y"]);
        assert!(report.identity, "{report:?}");
    }
}

#[test]
fn staircase_words_detect_the_extra_summand() {
    // p even and q odd lines plus Y, shape (q+1) x (p+1)
    for (p, q) in [(0, 1), (1, 0), (2, 1), (1, 2)] {
        let mut lines: Vec<(String, Parity)> = (0..p).map(|i| (format!("E{i}"), Parity::Even)).collect();
        lines.extend((0..q).map(|i| (format!("O{i}"), Parity::Odd)));
        lines.push(("Y".into(), Parity::Even));
        let x = SuperSpace::from_lines(lines);
        let shape = YoungShape::new(q + 1, p + 1);
        let s = young_symmetrizer(&x, shape, &bounds()).unwrap();
        assert!(identity_factorization(&x, &s, &shape.staircase_word()).unwrap().identity);
    }
}

#[test]
fn type_arithmetic_examples() {
    let z = GradingSpec::new(GradingGroup::Z, ParityKind::Koszul).unwrap();
    let q = CoefficientRing::Rationals;
    let d = |t: Vec<TypeEntry>| t.into_iter().map(|e| e.degree).collect::<Vec<_>>();
    assert_eq!(d(sym_type(&z, &q, &type_of(&z, &[4]), 3).unwrap()), vec![12]);
    assert_eq!(d(sym_type(&z, &q, &type_of(&z, &[-3]), 2).unwrap()), Vec::<i64>::new());
    assert_eq!(d(sym_type(&z, &q, &type_of(&z, &[1, 5]), 2).unwrap()), vec![6]);
    for e in adams_stage_types(&z, &q, &type_of(&z, &[3]), 3, 4).unwrap() {
        assert_eq!(d(e.lines), vec![0]);
    }
}

fn parity_word() -> impl Strategy<Value = Vec<Parity>> {
    (1usize..=4).prop_flat_map(|n| proptest::collection::vec(prop_oneof![Just(Parity::Even), Just(Parity::Odd)], n))
}

fn perm_of(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(Perm)
}

/// Hilbert series oracle: product of (1 - t q^d)^{-1} over even lines and
/// (1 + t q^d) over odd lines, truncated at t-degree `top`.
fn hilbert_oracle(degrees: &[i64], top: usize) -> BTreeMap<(usize, i64), u64> {
    let mut acc: BTreeMap<(usize, i64), u64> = [((0, 0), 1)].into();
    for &d in degrees {
        let mut next = BTreeMap::new();
        for (&(t, s), &c) in &acc {
            let max_k = if d.rem_euclid(2) == 1 { 1 } else { top };
            for k in 0..=max_k {
                if t + k > top {
                    break;
                }
                *next.entry((t + k, s + k as i64 * d)).or_insert(0) += c;
            }
        }
        acc = next;
    }
    acc
}

proptest! {
    #[test]
    fn cocycle_identity((w, s, t) in parity_word().prop_flat_map(|w| { let n = w.len(); (Just(w), perm_of(n), perm_of(n)) })) {
        let tw = t.act(&w);
        let lhs = koszul_sign(&s.compose(&t), &w).unwrap();
        let rhs = koszul_sign(&s, &tw).unwrap() * koszul_sign(&t, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn representation_property(
        (word, s, t) in (1usize..=4).prop_flat_map(|n| (proptest::collection::vec(0usize..3, n), perm_of(n), perm_of(n)))
    ) {
        let x = SuperSpace::standard(1, 2);
        let st = SignedPermutationOperator::permutation(s.compose(&t));
        let both = SignedPermutationOperator::permutation(s.clone()).compose(&SignedPermutationOperator::permutation(t.clone())).unwrap();
        prop_assert_eq!(st.apply_word(&x, &word).unwrap(), both.apply_word(&x, &word).unwrap());
    }

    #[test]
    fn sym_and_alt_are_orthogonal_in_degree_two(p in 0usize..3, q in 0usize..3) {
        let x = SuperSpace::standard(p, q);
        let s = symmetrizer(&x, 2, &bounds()).unwrap();
        let a = antisymmetrizer(&x, 2, &bounds()).unwrap();
        prop_assert!(operator_is_zero(&s.compose(&a).unwrap(), &x));
        prop_assert!(operator_is_zero(&a.compose(&s).unwrap(), &x));
    }

    #[test]
    fn sym_type_matches_hilbert_series(degrees in proptest::collection::vec(-3i64..4, 0..4)) {
        let z = GradingSpec::new(GradingGroup::Z, ParityKind::Koszul).unwrap();
        let oracle = hilbert_oracle(&degrees, 6);
        let ty = type_of(&z, &degrees);
        let mut got: BTreeMap<(usize, i64), u64> = BTreeMap::new();
        for n in 0..=6 {
            for e in sym_type(&z, &CoefficientRing::Rationals, &ty, n).unwrap() {
                *got.entry((n, e.degree)).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(got, oracle);
    }
}

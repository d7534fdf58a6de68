//! Property tests for the invariants shared across modules.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tcat_core::document::{parse_document, serialize_workspace, Workspace};
use tcat_core::ladder::random_structure;
use tcat_core::nerve::{check_sa_axioms, check_segal, nerve, LadderLevel};
use tcat_core::powers::{copower, standard_simplex};
use tcat_core::simplex::*;
use tcat_core::tcat::TCatData;
use tcat_core::{Element, FiniteSet, MonadSpec, Monoid};

fn map(max: usize) -> impl Strategy<Value = SimplexMap> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort();
            SimplexMap::new(n, v).unwrap()
        })
    })
}

fn maps_into(m: usize, n: usize) -> impl Strategy<Value = SimplexMap> {
    proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
        v.sort();
        SimplexMap::new(n, v).unwrap()
    })
}

fn chain() -> impl Strategy<Value = (SimplexMap, SimplexMap, SimplexMap)> {
    (0..=3usize, 0..=3usize, 0..=3usize, 0..=3usize)
        .prop_flat_map(|(a, b, c, d)| (maps_into(a, b), maps_into(b, c), maps_into(c, d)))
}

fn monad(k: usize) -> MonadSpec {
    match k {
        0 => MonadSpec::identity(),
        1 => MonadSpec::maybe(),
        _ => MonadSpec::writer(Monoid::z2()),
    }
}

fn tcategory(seed: u64, m: usize) -> TCatData {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        if let Some(d) = random_structure(LadderLevel::TCategory, &monad(m), &mut |k| rng.gen_range(0..k)).unwrap() {
            return d;
        }
    }
}

fn element() -> impl Strategy<Value = Element> {
    let leaf = "[a-z]{1,3}".prop_map(|s| Element::atom(&s));
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..3).prop_map(Element::Tuple),
            proptest::collection::vec(inner.clone(), 0..3).prop_map(Element::List),
            ("[a-z]{1,3}", inner).prop_map(|(l, e)| Element::tag(&l, e)),
        ]
    })
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in chain()) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn factorization_reconstructs(phi in map(5)) {
        let (k, psi) = factorize(&phi);
        prop_assert!(psi.is_top_preserving());
        prop_assert_eq!(compose(&initial_inclusion(k, phi.cod()).unwrap(), &psi).unwrap(), phi);
    }

    #[test]
    fn cosimplicial_identities(n in 0usize..5, i in 0usize..7, j in 0usize..7) {
        prop_assume!(i < j && j <= n + 2);
        let lhs = compose(&SimplexMap::face(n + 1, j).unwrap(), &SimplexMap::face(n, i).unwrap()).unwrap();
        let rhs = compose(&SimplexMap::face(n + 1, i).unwrap(), &SimplexMap::face(n, j - 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monad_laws_on_small_sets(k in 0usize..3, size in 0usize..4) {
        let x = FiniteSet::new((0..size).map(|i| Element::atom(&format!("x{i}"))));
        prop_assert!(monad(k).check_laws(&x, 10_000).is_ok());
    }

    #[test]
    fn element_json_roundtrips(e in element()) {
        prop_assert_eq!(Element::from_json(&e.to_json()).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_tcategories_have_segal_nerves(seed in any::<u64>(), m in 0usize..3) {
        let x = nerve(&tcategory(seed, m), 3).unwrap();
        let sa = check_sa_axioms(&x);
        prop_assert!(sa.violations.is_empty(), "{:?}", sa.violations.first());
        prop_assert!(check_segal(&x).unwrap());
    }

    #[test]
    fn copower_by_interval_scales_levels(seed in any::<u64>(), m in 0usize..3) {
        let y = nerve(&tcategory(seed, m), 2).unwrap();
        let c = copower(&standard_simplex(1, 2, Which::Delta).unwrap(), &y).unwrap();
        let expected: Vec<usize> = y.sizes().iter().enumerate().map(|(n, s)| (n + 2) * s).collect();
        prop_assert_eq!(c.sizes(), expected);
        prop_assert!(check_sa_axioms(&c).violations.is_empty());
    }

    #[test]
    fn documents_roundtrip_canonically(seed in any::<u64>(), m in 0usize..3, level in 0usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let level = LadderLevel::ALL[level];
        let data = loop {
            if let Some(d) = random_structure(level, &monad(m), &mut |k| rng.gen_range(0..k)).unwrap() {
                break d;
            }
        };
        let w = Workspace { name: "random".into(), tcat: data, depth: Some(2), deletions: vec![] };
        let text = serialize_workspace(&w).unwrap();
        let back = parse_document(&text).unwrap();
        prop_assert!(back.tcat.canonical_eq(&w.tcat));
        prop_assert_eq!(serialize_workspace(&back).unwrap(), text);
    }
}

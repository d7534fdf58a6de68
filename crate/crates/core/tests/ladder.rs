//! Ladder fuzz: claimed identities hold on random structures, and each identity a level
//! does not claim has a bundled structure at that level where it fails.

use std::collections::BTreeSet;
use std::path::Path;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tcat_core::document::parse_document;
use tcat_core::ladder::{is_at_level, sample_level};
use tcat_core::nerve::{check_sa_axioms, derived_identity_suite, nerve, LadderLevel};
use tcat_core::{MonadSpec, Monoid};

const PER_LEVEL: usize = 200;
const DEPTH: usize = 3;

fn monads() -> Vec<MonadSpec> {
    vec![MonadSpec::identity(), MonadSpec::maybe(), MonadSpec::writer(Monoid::z2())]
}

fn counterexamples() -> Vec<(LadderLevel, &'static str, &'static str)> {
    vec![
        (LadderLevel::Magmoid, "SA1/adjacent", "magmoid_sa1_adjacent"),
        (LadderLevel::ReflexiveMagmoid, "SA1/adjacent", "reflexive_magmoid_sa1_adjacent"),
        (LadderLevel::ReflexiveMagmoid, "SA6/other", "reflexive_magmoid_sa6_other"),
        (LadderLevel::UnitalMagmoid, "SA1/adjacent", "unital_magmoid_sa1_adjacent"),
        (LadderLevel::ReflexiveSemicategory, "SA6/other", "reflexive_semicategory_sa6_other"),
    ]
}

#[test]
fn claimed_identities_hold_on_random_structures() {
    let mut rng = StdRng::seed_from_u64(0x1add3);
    for monad in monads() {
        for level in LadderLevel::ALL {
            let got = sample_level(level, &monad, PER_LEVEL, 200 * PER_LEVEL, &mut |k| rng.gen_range(0..k)).unwrap();
            assert_eq!(got.len(), PER_LEVEL, "{level:?} over {}", monad.name());
            for d in &got {
                let r = derived_identity_suite(d, level, DEPTH).unwrap();
                assert!(r.passed, "{level:?} over {}: {:?}", monad.name(), r.failures.first());
            }
        }
    }
}

#[test]
fn bundled_counterexamples_break_unclaimed_identities() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/counterexamples");
    for (level, family, file) in counterexamples() {
        let text = std::fs::read_to_string(dir.join(format!("{file}.json"))).unwrap();
        let w = parse_document(&text).unwrap();
        assert!(is_at_level(&w.tcat, level).unwrap(), "{file} is not at {level:?}");
        assert!(!level.claims().contains(&family));
        let report = check_sa_axioms(&nerve(&w.tcat, DEPTH).unwrap());
        assert!(report.violations.iter().any(|v| v.family == family), "{file} does not break {family}");
        assert!(derived_identity_suite(&w.tcat, level, DEPTH).unwrap().passed);
    }
}

#[test]
fn every_exercised_unclaimed_identity_has_a_counterexample() {
    let bundled: BTreeSet<(LadderLevel, &str)> = counterexamples().into_iter().map(|(l, f, _)| (l, f)).collect();
    let mut rng = StdRng::seed_from_u64(0xc0de);
    for level in LadderLevel::ALL {
        for monad in monads() {
            for d in sample_level(level, &monad, 50, 10_000, &mut |k| rng.gen_range(0..k)).unwrap() {
                let report = check_sa_axioms(&nerve(&d, DEPTH).unwrap());
                for (family, &n) in &report.checked {
                    if n > 0 && !level.claims().contains(family) && *family != "SA-typing" {
                        assert!(bundled.contains(&(level, *family)), "{level:?} exercises {family} with no counterexample");
                    }
                }
            }
        }
    }
}

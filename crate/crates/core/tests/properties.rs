//! Randomized invariants over the enumeration and admissibility machinery.

use proptest::prelude::*;

use welbound_core::collection::{lemma2_check, HSeg, RowCollection, Side, SidePartition};
use welbound_core::construct::{family_sample, FamilyConfig};
use welbound_core::oracle::{enumerate_proper, OracleConfig};
use welbound_core::system::{
    count_markings, enumerate_markings, is_admissible, validate_proper,
};
use welbound_core::{Family, Interval, PolygonSpec, ProperSystem};

fn small_spec() -> impl Strategy<Value = PolygonSpec> {
    prop_oneof![
        (1u32..=4, 1u32..=2).prop_map(|(d, n)| PolygonSpec::square(d, n)),
        (2u32..=4, 1u32..=2)
            .prop_flat_map(|(d, n)| (Just(d), 1..d, Just(n)))
            .prop_map(|(d, d1, n)| PolygonSpec::pentagon(d, d1, n)),
        (2u32..=4, 1u32..=2)
            .prop_flat_map(|(d, n)| (Just(d), 1..d, Just(n)))
            .prop_map(|(d, d1, n)| PolygonSpec::hexagon_d(d, d1, n)),
        (3u32..=4)
            .prop_flat_map(|d| (Just(d), 1..d))
            .prop_flat_map(|(d, d1)| (Just(d), Just(d1), 1..=d1))
            .prop_map(|(d, d1, d2)| PolygonSpec::hexagon_c(d, d1, d2, 1))
            .prop_filter("staircase must fit", |spec| {
                welbound_core::construct::family_count(spec).is_ok()
            }),
    ]
}

fn arbitrary_intervals() -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0i64..=6, 0i64..=6), 1..=6).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(a, b)| Interval::new(a.min(b), a.max(b)))
            .collect()
    })
}

fn arbitrary_collection() -> impl Strategy<Value = RowCollection> {
    prop::collection::vec((0i64..=3, 0i64..=6, 0i64..=6), 1..=6).prop_map(|rows| {
        let mut segments: Vec<HSeg> = Vec::new();
        for (level, a, b) in rows {
            let cand = HSeg::new(level, a.min(b), a.max(b));
            let overlaps = segments
                .iter()
                .any(|s| s.level == cand.level && s.xl <= cand.xr && cand.xl <= s.xr);
            if !overlaps {
                segments.push(cand);
            }
        }
        RowCollection::new(segments, vec![]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_profile_matches_generic(spec in small_spec()) {
        let generic = spec.profile().unwrap();
        let (m, sigma) = welbound_core::polygon::closed_form_profile(&spec).unwrap();
        prop_assert_eq!(generic.m, m);
        prop_assert_eq!(generic.sigma, sigma);
    }

    #[test]
    fn coverage_double_count(spec in small_spec().prop_filter("desk scale", |s| {
        s.n == 1 && s.profile().map(|p| p.m <= 6).unwrap_or(false)
    })) {
        let profile = spec.profile().unwrap();
        let systems = enumerate_proper(&profile, &OracleConfig::default()).unwrap();
        for system in systems {
            let covered: u64 = system.intervals().iter().map(|iv| iv.len()).sum();
            prop_assert_eq!(covered, profile.sigma_sum());
        }
    }

    #[test]
    fn canonical_bytes_order_independent(intervals in arbitrary_intervals(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = intervals.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let a = ProperSystem::new(intervals);
        let b = ProperSystem::new(shuffled);
        prop_assert_eq!(a.canonical_bytes(), b.canonical_bytes());
        prop_assert_eq!(is_admissible(&a, 6), is_admissible(&b, 6));
    }

    #[test]
    fn marking_count_matches_enumeration(intervals in arbitrary_intervals()) {
        let system = ProperSystem::new(intervals);
        let marked = enumerate_markings(&system);
        let distinct: std::collections::HashSet<_> =
            marked.iter().map(|ms| ms.canonical_bytes()).collect();
        prop_assert_eq!(distinct.len(), marked.len());
        prop_assert_eq!(num::BigUint::from(marked.len() as u64), count_markings(&system));
    }

    #[test]
    fn sampled_members_project_admissibly(
        spec in small_spec(),
        seed in any::<u64>(),
        index in 0u64..16,
    ) {
        let coll = family_sample(&spec, seed, index).unwrap();
        let profile = spec.profile().unwrap();
        let system = welbound_core::collection::project_to_system(&coll, &profile).unwrap();
        prop_assert!(validate_proper(&system, &profile).is_ok());
        prop_assert!(is_admissible(&system, profile.m));
    }

    #[test]
    fn lemma2_verdict_is_pure(coll in arbitrary_collection(), mask in any::<u64>()) {
        let labels: Vec<Side> = (0..coll.segments.len())
            .map(|i| if mask >> (i % 64) & 1 == 1 { Side::R } else { Side::L })
            .collect();
        let partition = SidePartition { labels };
        prop_assert_eq!(lemma2_check(&coll, &partition), lemma2_check(&coll, &partition));
    }

    #[test]
    fn family_sample_deterministic(spec in small_spec(), seed in any::<u64>(), index in 0u64..8) {
        prop_assert_eq!(
            family_sample(&spec, seed, index).unwrap(),
            family_sample(&spec, seed, index).unwrap()
        );
    }
}

#[test]
fn family_sample_lands_in_family() {
    let cfg = FamilyConfig::default();
    for spec in [
        PolygonSpec::square(5, 1),
        PolygonSpec::pentagon(3, 2, 1),
        PolygonSpec::hexagon_d(3, 1, 2),
    ] {
        let members = welbound_core::construct::family_iterate(&spec, &cfg).unwrap();
        for index in 0..20 {
            let s = family_sample(&spec, 11, index).unwrap();
            assert!(members.contains(&s), "{spec:?} index {index}");
        }
    }
}

// The hexagonC sampler varies the staircase shape, so membership in the
// canonical-staircase enumeration is not expected; validity still is.
#[test]
fn hexagon_c_samples_are_valid() {
    let spec = PolygonSpec::hexagon_c(3, 2, 1, 1);
    assert_eq!(spec.family, Family::HexagonC);
    let profile = spec.profile().unwrap();
    for index in 0..20 {
        let coll = family_sample(&spec, 11, index).unwrap();
        let system =
            welbound_core::collection::project_to_system(&coll, &profile).unwrap();
        assert!(is_admissible(&system, profile.m), "index {index}");
    }
}

//! The square-family generator: perforated triangle rows under a rectangle
//! ladder, with cut-permute-glue of the right-hand row parts.

use num::BigUint;
use rand_chacha::ChaCha8Rng;

use crate::collection::{HSeg, RowCollection};
use crate::error::Result;
use crate::system::{Interval, MarkedSystem};

use super::ladder::{rectangle_ladder, RectangleLadder};
use super::{
    all_permutations, check_cap, factorial, identity_permutation, random_permutation,
    FamilyConfig,
};

/// Per-rectangle choices: a hole bijection (level offset -> column offset)
/// and a level permutation for the cut-and-glue step.
#[derive(Debug, Clone)]
pub struct SquareChoice {
    pub hole_perms: Vec<Vec<usize>>,
    pub level_perms: Vec<Vec<usize>>,
}

impl SquareChoice {
    pub fn identity(ladder: &RectangleLadder) -> Self {
        let id: Vec<Vec<usize>> = (1..=ladder.k)
            .map(|i| identity_permutation(ladder.delta(i) as usize))
            .collect();
        SquareChoice { hole_perms: id.clone(), level_perms: id }
    }

    pub fn random(ladder: &RectangleLadder, rng: &mut ChaCha8Rng) -> Self {
        let mut draw = |_| {
            (1..=ladder.k)
                .map(|i| random_permutation(rng, ladder.delta(i) as usize))
                .collect::<Vec<_>>()
        };
        let hole_perms = draw(());
        let level_perms = draw(());
        SquareChoice { hole_perms, level_perms }
    }
}

/// M(n, d): perforated collections with injective hole columns in every
/// rectangle.
pub fn plan_count(n: u32, d: u32) -> BigUint {
    let ladder = rectangle_ladder((n as i64) * (d as i64));
    (1..=ladder.k).map(|i| factorial(ladder.delta(i) as u64)).product()
}

/// The family size: plans times level permutations.
pub fn count(n: u32, d: u32) -> BigUint {
    let m = plan_count(n, d);
    &m * &m
}

/// Restricted markings per collection.
pub fn marked_per_collection(n: u32, d: u32) -> BigUint {
    count(n, d)
}

/// Total marked family size.
pub fn marked_count(n: u32, d: u32) -> BigUint {
    let m = plan_count(n, d);
    let m2 = &m * &m;
    &m2 * &m2
}

/// Builds the collection for one choice. Level 0 carries the apex point;
/// level j carries the left-of-hole and (permuted) right-of-hole segments.
pub fn build(n: u32, d: u32, choice: &SquareChoice) -> RowCollection {
    let apex = (n as i64) * (d as i64);
    let ladder = rectangle_ladder(apex);
    let mut segments = vec![HSeg::new(0, apex, apex)];
    let mut holes = Vec::new();
    for j in 1..apex {
        let (hole, glued_level) = match ladder.rectangle_of_level(j) {
            Some(i) => {
                let offset = (j - (ladder.y[i] + 1)) as usize;
                let column = ladder.apex + choice.hole_perms[i - 1][offset] as i64;
                let glued = ladder.y[i] + 1 + choice.level_perms[i - 1][offset] as i64;
                (column, glued)
            }
            // Below every rectangle the hole is forced against the apex.
            None => (apex, j),
        };
        segments.push(HSeg::new(j, apex - j, hole));
        segments.push(HSeg::new(j, hole + 1, apex + glued_level));
        holes.push((j, hole));
    }
    RowCollection::new(segments, holes).expect("square construction produces disjoint rows")
}

pub fn canonical(n: u32, d: u32) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * (d as i64));
    build(n, d, &SquareChoice::identity(&ladder))
}

pub fn sample(n: u32, d: u32, rng: &mut ChaCha8Rng) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * (d as i64));
    build(n, d, &SquareChoice::random(&ladder, rng))
}

/// Every member, odometer order over (hole perm, level perm) slots.
pub fn iterate(n: u32, d: u32, cfg: &FamilyConfig) -> Result<Vec<RowCollection>> {
    check_cap(&count(n, d), cfg.iterate_cap, "square")?;
    let ladder = rectangle_ladder((n as i64) * (d as i64));
    let mut out = Vec::new();
    for choice in all_choices(&ladder) {
        out.push(build(n, d, &choice));
    }
    Ok(out)
}

pub(crate) fn all_choices(ladder: &RectangleLadder) -> Vec<SquareChoice> {
    let per_slot: Vec<Vec<Vec<usize>>> = (1..=ladder.k)
        .map(|i| all_permutations(ladder.delta(i) as usize))
        .collect();
    let mut out = Vec::new();
    let mut slots: Vec<Vec<usize>> = Vec::new();
    odometer(&per_slot, 0, &mut slots, &mut |hole_perms| {
        let mut inner: Vec<Vec<usize>> = Vec::new();
        odometer(&per_slot, 0, &mut inner, &mut |level_perms| {
            out.push(SquareChoice {
                hole_perms: hole_perms.to_vec(),
                level_perms: level_perms.to_vec(),
            });
        });
    });
    out
}

fn odometer(
    per_slot: &[Vec<Vec<usize>>],
    idx: usize,
    acc: &mut Vec<Vec<usize>>,
    sink: &mut dyn FnMut(&[Vec<usize>]),
) {
    if idx == per_slot.len() {
        sink(acc);
        return;
    }
    for perm in &per_slot[idx] {
        acc.push(perm.clone());
        odometer(per_slot, idx + 1, acc, sink);
        acc.pop();
    }
}

/// Allowed marks for one segment of a square-family collection, under the
/// marking restrictions (level-1 marks avoid the apex column; rectangle
/// levels mark outside the wide rows below their rectangle).
pub fn allowed_marks(n: u32, d: u32, seg: &HSeg) -> Vec<i64> {
    let apex = (n as i64) * (d as i64);
    let ladder = rectangle_ladder(apex);
    let range = seg.xl..=seg.xr;
    match ladder.rectangle_of_level(seg.level) {
        Some(i) => {
            let excl = ladder.mark_exclusion(i);
            range.filter(|x| !excl.contains(x)).collect()
        }
        None if seg.level == 1 => range.filter(|&x| x != apex).collect(),
        None => range.collect(),
    }
}

/// All restricted markings of one collection, as marked systems over the
/// x-projections.
pub fn marked_instances(n: u32, d: u32, collection: &RowCollection) -> Vec<MarkedSystem> {
    let per_segment: Vec<Vec<i64>> = collection
        .segments
        .iter()
        .map(|seg| allowed_marks(n, d, seg))
        .collect();
    let mut out = Vec::new();
    let mut marks = Vec::with_capacity(per_segment.len());
    product(&per_segment, 0, &mut marks, &mut |marks| {
        out.push(MarkedSystem::new(
            collection
                .segments
                .iter()
                .zip(marks)
                .map(|(seg, &mark)| (Interval::new(seg.xl, seg.xr), mark))
                .collect(),
        ));
    });
    out
}

fn product(
    per_segment: &[Vec<i64>],
    idx: usize,
    acc: &mut Vec<i64>,
    sink: &mut dyn FnMut(&Vec<i64>),
) {
    if idx == per_segment.len() {
        sink(acc);
        return;
    }
    for &mark in &per_segment[idx] {
        acc.push(mark);
        product(per_segment, idx + 1, acc, sink);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn segs(coll: &RowCollection) -> Vec<(i64, i64, i64)> {
        let mut v: Vec<_> = coll.segments.iter().map(|s| (s.level, s.xl, s.xr)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn unique_collection_for_d3() {
        let fam = iterate(1, 3, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(
            segs(&fam[0]),
            vec![(0, 3, 3), (1, 2, 3), (1, 4, 4), (2, 1, 3), (2, 4, 5)]
        );
    }

    #[test]
    fn d2_unique_plan() {
        let fam = iterate(1, 2, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(segs(&fam[0]), vec![(0, 2, 2), (1, 1, 2), (1, 3, 3)]);
        assert_eq!(fam[0].holes, vec![(1, 2)]);
    }

    #[test]
    fn d5_family_size() {
        assert_eq!(plan_count(1, 5), BigUint::from(2u32));
        assert_eq!(count(1, 5), BigUint::from(4u32));
        let fam = iterate(1, 5, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.len(), 4);
        let distinct: HashSet<_> = fam.iter().map(segs).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn marked_counts_small() {
        // d=3: every mark forced.
        let fam = iterate(1, 3, &FamilyConfig::default()).unwrap();
        let marked = marked_instances(1, 3, &fam[0]);
        assert_eq!(marked.len(), 1);
        let mut pairs: Vec<_> = marked[0]
            .pairs()
            .iter()
            .map(|&(iv, mark)| ((iv.a, iv.b), mark))
            .collect();
        pairs.sort_unstable();
        assert_eq!(
            pairs,
            vec![((1, 3), 1), ((2, 3), 2), ((3, 3), 3), ((4, 4), 4), ((4, 5), 5)]
        );

        // d=2: forced as well.
        let fam = iterate(1, 2, &FamilyConfig::default()).unwrap();
        assert_eq!(marked_instances(1, 2, &fam[0]).len(), 1);

        // d=5: (2! * 1!)^2 = 4 per collection, 16 total.
        let fam = iterate(1, 5, &FamilyConfig::default()).unwrap();
        let mut all = HashSet::new();
        for coll in &fam {
            let marked = marked_instances(1, 5, coll);
            assert_eq!(marked.len(), 4);
            all.extend(marked.into_iter().map(|ms| ms.canonical_bytes()));
        }
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn sample_is_deterministic() {
        use crate::polygon::PolygonSpec;
        let spec = PolygonSpec::square(5, 1);
        let a = super::super::family_sample(&spec, 7, 3).unwrap();
        let b = super::super::family_sample(&spec, 7, 3).unwrap();
        assert_eq!(a, b);
        let c = super::super::family_sample(&spec, 8, 3).unwrap();
        let fam = iterate(1, 5, &FamilyConfig::default()).unwrap();
        assert!(fam.contains(&a));
        assert!(fam.contains(&c));
    }
}

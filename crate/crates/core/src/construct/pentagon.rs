//! The pentagon-family generator: a square sub-instance topped by wide rows
//! whose holes run along a staircase of side-n squares.

use num::BigUint;
use rand_chacha::ChaCha8Rng;

use crate::collection::{HSeg, RowCollection};
use crate::error::Result;

use super::ladder::rectangle_ladder;
use super::square::{self, SquareChoice};
use super::{
    all_permutations, check_cap, factorial, identity_permutation, random_permutation,
    FamilyConfig,
};

/// Per-member choices: the square sub-instance plus one column bijection per
/// staircase square.
#[derive(Debug, Clone)]
pub struct PentagonChoice {
    pub sub: SquareChoice,
    /// d1 permutations of 0..n, one per staircase square, bottom-up.
    pub stair_perms: Vec<Vec<usize>>,
}

pub fn count(n: u32, d: u32, d1: u32) -> BigUint {
    square::count(n, d - d1) * factorial(n as u64).pow(d1)
}

/// Builds the collection: the square sub-instance occupies levels
/// 0 ..= M0-1; level j in M0 ..= nd-1 is the row [0, M0+j] cut at the
/// staircase hole.
pub fn build(n: u32, d: u32, d1: u32, choice: &PentagonChoice) -> RowCollection {
    let m0 = (n as i64) * ((d - d1) as i64);
    let nd = (n as i64) * (d as i64);
    let sub = square::build(n, d - d1, &choice.sub);
    let mut segments = sub.segments;
    let mut holes = sub.holes;
    for j in m0..nd {
        let s = ((j - m0) / (n as i64)) as usize;
        let offset = ((j - m0) % (n as i64)) as usize;
        let base = m0 + (s as i64) * (n as i64);
        let hole = base + choice.stair_perms[s][offset] as i64;
        segments.push(HSeg::new(j, 0, hole));
        segments.push(HSeg::new(j, hole + 1, m0 + j));
        holes.push((j, hole));
    }
    RowCollection::new(segments, holes).expect("pentagon construction produces disjoint rows")
}

pub fn canonical(n: u32, d: u32, d1: u32) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let choice = PentagonChoice {
        sub: SquareChoice::identity(&ladder),
        stair_perms: vec![identity_permutation(n as usize); d1 as usize],
    };
    build(n, d, d1, &choice)
}

pub fn sample(n: u32, d: u32, d1: u32, rng: &mut ChaCha8Rng) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let choice = PentagonChoice {
        sub: SquareChoice::random(&ladder, rng),
        stair_perms: (0..d1).map(|_| random_permutation(rng, n as usize)).collect(),
    };
    build(n, d, d1, &choice)
}

pub fn iterate(n: u32, d: u32, d1: u32, cfg: &FamilyConfig) -> Result<Vec<RowCollection>> {
    check_cap(&count(n, d, d1), cfg.iterate_cap, "pentagon")?;
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let perms = all_permutations(n as usize);
    let mut out = Vec::new();
    for sub in square::all_choices(&ladder) {
        let mut stair: Vec<Vec<usize>> = Vec::new();
        stair_odometer(&perms, d1 as usize, &mut stair, &mut |stair_perms| {
            out.push(build(
                n,
                d,
                d1,
                &PentagonChoice { sub: sub.clone(), stair_perms: stair_perms.to_vec() },
            ));
        });
    }
    Ok(out)
}

pub(crate) fn stair_odometer(
    perms: &[Vec<usize>],
    slots: usize,
    acc: &mut Vec<Vec<usize>>,
    sink: &mut dyn FnMut(&[Vec<usize>]),
) {
    if acc.len() == slots {
        sink(acc);
        return;
    }
    for perm in perms {
        acc.push(perm.clone());
        stair_odometer(perms, slots, acc, sink);
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
    fn d2_d1_unique() {
        let fam = iterate(1, 2, 1, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(segs(&fam[0]), vec![(0, 1, 1), (1, 0, 1), (1, 2, 2)]);
        assert_eq!(fam[0].holes, vec![(1, 1)]);
    }

    #[test]
    fn n2_count_and_distinct() {
        // n=2, d=2, d1=1: square(2,2) count is 1, times (2!)^1.
        assert_eq!(count(2, 2, 1), BigUint::from(2u32));
        let fam = iterate(2, 2, 1, &FamilyConfig::default()).unwrap();
        assert_eq!(fam.len(), 2);
        let distinct: HashSet<_> = fam.iter().map(segs).collect();
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn segment_budget() {
        for (n, d, d1) in [(1, 2, 1), (1, 3, 1), (1, 3, 2), (2, 2, 1), (2, 3, 2)] {
            let coll = canonical(n, d, d1);
            assert_eq!(
                coll.segments.len() as i64,
                2 * (n as i64) * (d as i64) - 1,
                "n={n} d={d} d1={d1}"
            );
        }
    }
}

//! The first hexagon-family generator: a pentagon sub-instance topped by
//! full-width rows punctured along a staircase of width-1 boxes.

use num::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::collection::{HSeg, RowCollection};
use crate::error::{Error, Result};

use super::ladder::rectangle_ladder;
use super::pentagon::{self, PentagonChoice};
use super::square::SquareChoice;
use super::{check_cap, identity_permutation, random_permutation, FamilyConfig};

/// Columns of the width-1 boxes, one entry per upper level (bottom-up, so
/// a box of height h contributes h consecutive equal entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub columns: Vec<i64>,
}

/// Minimal feasible box height for the canonical staircase.
pub fn min_box_height(d: u32, d1: u32, d2: u32) -> i64 {
    num::Integer::div_ceil(&(2 * d2 as i64), &((2 * d - d1 - d2) as i64)) + 1
}

/// Box heights for the canonical staircase: full boxes of the minimal
/// feasible height, then the remainder.
fn box_heights(n: u32, d: u32, d1: u32, d2: u32) -> Vec<i64> {
    let rows = (n as i64) * (d2 as i64);
    let a = min_box_height(d, d1, d2);
    let mut heights = Vec::new();
    let mut left = rows;
    while left > 0 {
        let h = left.min(a);
        heights.push(h);
        left -= h;
    }
    heights
}

fn staircase_from_heights(
    n: u32,
    d: u32,
    d1: u32,
    d2: u32,
    x0: i64,
    heights: &[i64],
) -> Result<Staircase> {
    let w = (n as i64) * ((2 * d - d1 - d2) as i64);
    let k = heights.len() as i64;
    if x0 < 0 || x0 + k > 3 * w / 4 - 1 {
        return Err(Error::Infeasible(format!(
            "staircase of {k} boxes starting at column {x0} does not fit left of \
             column {} (width {w})",
            3 * w / 4
        )));
    }
    let mut columns = Vec::new();
    for (t, &h) in heights.iter().enumerate() {
        columns.extend(std::iter::repeat(x0 + t as i64).take(h as usize));
    }
    Ok(Staircase { columns })
}

pub fn canonical_staircase(n: u32, d: u32, d1: u32, d2: u32) -> Result<Staircase> {
    let w = (n as i64) * ((2 * d - d1 - d2) as i64);
    staircase_from_heights(n, d, d1, d2, w / 4, &box_heights(n, d, d1, d2))
}

fn random_staircase(
    n: u32,
    d: u32,
    d1: u32,
    d2: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Staircase> {
    let w = (n as i64) * ((2 * d - d1 - d2) as i64);
    let rows = (n as i64) * (d2 as i64);
    // Random composition of the row count into box heights, then a random
    // feasible starting column; falls back to the canonical shape if the
    // drawn composition has too many boxes to fit.
    let mut heights = Vec::new();
    let mut left = rows;
    while left > 0 {
        let h = rng.gen_range(1..=left);
        heights.push(h);
        left -= h;
    }
    let slack = 3 * w / 4 - 1 - heights.len() as i64;
    if slack < 0 {
        return canonical_staircase(n, d, d1, d2);
    }
    let x0 = rng.gen_range(0..=slack);
    staircase_from_heights(n, d, d1, d2, x0, &heights)
}

pub fn count(n: u32, d: u32, d1: u32, d2: u32) -> Result<BigUint> {
    // Validate feasibility of the canonical staircase up front.
    canonical_staircase(n, d, d1, d2)?;
    Ok(pentagon::count(n, d - d2, d1 - d2))
}

fn build(
    n: u32,
    d: u32,
    d1: u32,
    d2: u32,
    sub: &PentagonChoice,
    stairs: &Staircase,
) -> RowCollection {
    let w = (n as i64) * ((2 * d - d1 - d2) as i64);
    let base = (n as i64) * ((d - d2) as i64);
    let lower = pentagon::build(n, d - d2, d1 - d2, sub);
    let mut segments = lower.segments;
    let mut holes = lower.holes;
    for (t, &c) in stairs.columns.iter().enumerate() {
        let j = base + t as i64;
        segments.push(HSeg::new(j, 0, c));
        segments.push(HSeg::new(j, c + 1, w));
        holes.push((j, c));
    }
    RowCollection::new(segments, holes).expect("hexagon construction produces disjoint rows")
}

fn sub_identity(n: u32, d: u32, d1: u32, d2: u32) -> PentagonChoice {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    PentagonChoice {
        sub: SquareChoice::identity(&ladder),
        stair_perms: vec![identity_permutation(n as usize); (d1 - d2) as usize],
    }
}

pub fn canonical(n: u32, d: u32, d1: u32, d2: u32) -> Result<RowCollection> {
    let stairs = canonical_staircase(n, d, d1, d2)?;
    Ok(build(n, d, d1, d2, &sub_identity(n, d, d1, d2), &stairs))
}

pub fn sample(
    n: u32,
    d: u32,
    d1: u32,
    d2: u32,
    rng: &mut ChaCha8Rng,
) -> Result<RowCollection> {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let sub = PentagonChoice {
        sub: SquareChoice::random(&ladder, rng),
        stair_perms: (0..(d1 - d2))
            .map(|_| random_permutation(rng, n as usize))
            .collect(),
    };
    let stairs = random_staircase(n, d, d1, d2, rng)?;
    Ok(build(n, d, d1, d2, &sub, &stairs))
}

pub fn iterate(
    n: u32,
    d: u32,
    d1: u32,
    d2: u32,
    cfg: &FamilyConfig,
) -> Result<Vec<RowCollection>> {
    check_cap(&count(n, d, d1, d2)?, cfg.iterate_cap, "hexagonC")?;
    let stairs = canonical_staircase(n, d, d1, d2)?;
    let subs = pentagon::iterate(n, d - d2, d1 - d2, cfg)?;
    // Re-derive the choices rather than the built collections: rebuild each
    // pentagon member with the upper rows attached.
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let perms = super::all_permutations(n as usize);
    let mut out = Vec::new();
    for sub in super::square::all_choices(&ladder) {
        let mut stair: Vec<Vec<usize>> = Vec::new();
        pentagon::stair_odometer(&perms, (d1 - d2) as usize, &mut stair, &mut |sp| {
            out.push(build(
                n,
                d,
                d1,
                d2,
                &PentagonChoice { sub: sub.clone(), stair_perms: sp.to_vec() },
                &stairs,
            ));
        });
    }
    debug_assert_eq!(out.len(), subs.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segs(coll: &RowCollection) -> Vec<(i64, i64, i64)> {
        let mut v: Vec<_> = coll.segments.iter().map(|s| (s.level, s.xl, s.xr)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn worked_example_d3() {
        let coll = canonical(1, 3, 2, 1).unwrap();
        assert_eq!(
            segs(&coll),
            vec![(0, 1, 1), (1, 0, 1), (1, 2, 2), (2, 0, 0), (2, 1, 3)]
        );
        assert!(coll.holes.contains(&(2, 0)));
    }

    #[test]
    fn segment_budget() {
        for (n, d, d1, d2) in [(1, 3, 2, 1), (1, 3, 1, 1), (2, 3, 2, 1), (1, 4, 3, 2)] {
            let coll = canonical(n, d, d1, d2).unwrap();
            assert_eq!(
                coll.segments.len() as i64,
                2 * (n as i64) * (d as i64) - 1,
                "n={n} d={d} d1={d1} d2={d2}"
            );
        }
    }

    #[test]
    fn equal_shape_parameters_use_square_sub() {
        // d1 == d2 leaves no staircase squares in the sub-instance.
        let coll = canonical(1, 3, 1, 1).unwrap();
        assert_eq!(coll.segments.len(), 5);
        assert_eq!(count(1, 3, 1, 1).unwrap(), BigUint::from(1u32));
    }
}

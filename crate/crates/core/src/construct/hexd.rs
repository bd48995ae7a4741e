//! The second hexagon-family generator: a square instance cut at its apex
//! column and re-glued around an inserted strip of staircase squares.

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

/// One side-n square of the inserted staircases: its leftmost column and
/// bottom level. Square level t holds the hole gap at column
/// `x + perm[t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StairSquare {
    pub x: i64,
    pub base_level: i64,
}

/// The d1 staircase squares filling the strip, left to right. Staircases
/// climb in side-n steps while they fit under the cut row block, then
/// restart at the bottom.
pub fn strip_squares(n: u32, d: u32, d1: u32) -> Vec<StairSquare> {
    let n = n as i64;
    let m0 = n * ((d - d1) as i64);
    let mut squares = Vec::new();
    let mut x = m0;
    let mut lvl = 0;
    for _ in 0..d1 {
        squares.push(StairSquare { x, base_level: lvl });
        x += n;
        lvl += n;
        if lvl + n > m0 {
            lvl = 0;
        }
    }
    squares
}

/// Squares per staircase, in order: d - d1 for every full staircase, the
/// remainder (if any) for the last.
pub fn staircase_lengths(d: u32, d1: u32) -> Vec<u32> {
    let full = d - d1;
    let mut out = vec![full; (d1 / full) as usize];
    if d1 % full != 0 {
        out.push(d1 % full);
    }
    out
}

#[derive(Debug, Clone)]
pub struct HexDChoice {
    pub sub: SquareChoice,
    /// One level-to-column bijection per staircase square.
    pub square_perms: Vec<Vec<usize>>,
}

pub fn count(n: u32, d: u32, d1: u32) -> BigUint {
    square::count(n, d - d1) * factorial(n as u64).pow(d1)
}

/// Hole columns of the strip, grouped by level: `strip_holes[j]` is the
/// sorted list of gap columns c (gap between c and c+1) at level j.
fn strip_holes(n: u32, d: u32, d1: u32, choice: &HexDChoice) -> Vec<Vec<i64>> {
    let m0 = (n as i64) * ((d - d1) as i64);
    let mut holes: Vec<Vec<i64>> = vec![Vec::new(); m0 as usize];
    for (s, sq) in strip_squares(n, d, d1).iter().enumerate() {
        for t in 0..n as usize {
            let level = sq.base_level + t as i64;
            holes[level as usize].push(sq.x + choice.square_perms[s][t] as i64);
        }
    }
    for row in &mut holes {
        row.sort_unstable();
    }
    holes
}

/// Splits the span [xl, xr] at the given gap columns (each gap (c, c+1)
/// assumed inside the span).
fn split_at_gaps(level: i64, xl: i64, xr: i64, gaps: &[i64]) -> Vec<HSeg> {
    let mut out = Vec::with_capacity(gaps.len() + 1);
    let mut start = xl;
    for &c in gaps {
        out.push(HSeg::new(level, start, c));
        start = c + 1;
    }
    out.push(HSeg::new(level, start, xr));
    out
}

pub fn build(n: u32, d: u32, d1: u32, choice: &HexDChoice) -> RowCollection {
    let m0 = (n as i64) * ((d - d1) as i64);
    let shift = (n as i64) * (d1 as i64);
    let nd = m0 + shift;
    let sub = square::build(n, d - d1, &choice.sub);
    let gaps = strip_holes(n, d, d1, choice);

    let mut segments = Vec::new();
    let mut holes = Vec::new();
    // Apex row: the point [m0, m0] stretches across the strip.
    segments.extend(split_at_gaps(0, m0, nd, &gaps[0]));
    for j in 1..m0 {
        let h = sub
            .holes
            .iter()
            .find(|&&(level, _)| level == j)
            .map(|&(_, h)| h)
            .expect("square rows above the apex always carry a hole");
        let right = sub
            .segments
            .iter()
            .find(|s| s.level == j && s.xl == h + 1)
            .expect("square rows split at the hole");
        segments.extend(split_at_gaps(j, m0 - j, h + shift, &gaps[j as usize]));
        segments.push(HSeg::new(j, h + 1 + shift, right.xr + shift));
        holes.push((j, h + shift));
    }
    for (j, row) in gaps.iter().enumerate() {
        holes.extend(row.iter().map(|&c| (j as i64, c)));
    }
    RowCollection::new(segments, holes).expect("strip insertion produces disjoint rows")
}

pub fn canonical(n: u32, d: u32, d1: u32) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let choice = HexDChoice {
        sub: SquareChoice::identity(&ladder),
        square_perms: vec![identity_permutation(n as usize); d1 as usize],
    };
    build(n, d, d1, &choice)
}

pub fn sample(n: u32, d: u32, d1: u32, rng: &mut ChaCha8Rng) -> RowCollection {
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let choice = HexDChoice {
        sub: SquareChoice::random(&ladder, rng),
        square_perms: (0..d1).map(|_| random_permutation(rng, n as usize)).collect(),
    };
    build(n, d, d1, &choice)
}

pub fn iterate(n: u32, d: u32, d1: u32, cfg: &FamilyConfig) -> Result<Vec<RowCollection>> {
    check_cap(&count(n, d, d1), cfg.iterate_cap, "hexagonD")?;
    let ladder = rectangle_ladder((n as i64) * ((d - d1) as i64));
    let perms = all_permutations(n as usize);
    let mut out = Vec::new();
    for sub in square::all_choices(&ladder) {
        let mut acc: Vec<Vec<usize>> = Vec::new();
        super::pentagon::stair_odometer(&perms, d1 as usize, &mut acc, &mut |sp| {
            out.push(build(
                n,
                d,
                d1,
                &HexDChoice { sub: sub.clone(), square_perms: sp.to_vec() },
            ));
        });
    }
    Ok(out)
}

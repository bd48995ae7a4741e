//! The four generator families of admissible systems, with exact family
//! counts, marking rules, and seeded sampling.

pub mod hexc;
pub mod hexd;
pub mod ladder;
pub mod pentagon;
pub mod square;
pub mod verify;

use itertools::Itertools;
use num::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::collection::RowCollection;
use crate::error::{Error, Result};
use crate::polygon::{Family, PolygonSpec};

pub use ladder::{rectangle_ladder, RectangleLadder};
pub use verify::{family_verify, VerifyReport};

/// Iteration cap for exhaustive family generation.
#[derive(Debug, Clone, Copy)]
pub struct FamilyConfig {
    pub iterate_cap: u64,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig { iterate_cap: 1_000_000 }
    }
}

pub fn factorial(k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

/// All permutations of 0..len in lexicographic order.
pub(crate) fn all_permutations(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    (0..len).permutations(len).collect()
}

pub(crate) fn identity_permutation(len: usize) -> Vec<usize> {
    (0..len).collect()
}

/// Deterministic generator keyed by (seed, family, parameters, instance
/// index), so samples are reproducible regardless of evaluation order.
pub(crate) fn instance_rng(seed: u64, spec: &PolygonSpec, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = match spec.family {
        Family::Square => 1,
        Family::Pentagon => 2,
        Family::HexagonC => 3,
        Family::HexagonD => 4,
    };
    key[12..16].copy_from_slice(&spec.d.to_le_bytes());
    key[16..20].copy_from_slice(&spec.d1().to_le_bytes());
    key[20..24].copy_from_slice(&spec.d2().to_le_bytes());
    key[24..28].copy_from_slice(&spec.n.to_le_bytes());
    key[28..32].copy_from_slice(&(index as u32).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub(crate) fn random_permutation(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(rng);
    perm
}

pub(crate) fn check_cap(count: &BigUint, cap: u64, what: &str) -> Result<()> {
    if count > &BigUint::from(cap) {
        return Err(Error::ResourceCap(format!(
            "{what} family has {count} members, above the iteration cap {cap}"
        )));
    }
    Ok(())
}

/// Exact family size for the given polygon parameters.
pub fn family_count(spec: &PolygonSpec) -> Result<BigUint> {
    spec.validate()?;
    match spec.family {
        Family::Square => Ok(square::count(spec.n, spec.d)),
        Family::Pentagon => Ok(pentagon::count(spec.n, spec.d, spec.d1.unwrap())),
        Family::HexagonC => {
            hexc::count(spec.n, spec.d, spec.d1.unwrap(), spec.d2.unwrap())
        }
        Family::HexagonD => Ok(hexd::count(spec.n, spec.d, spec.d1.unwrap())),
    }
}

/// Every member of the family, in a fixed deterministic order.
pub fn family_iterate(spec: &PolygonSpec, cfg: &FamilyConfig) -> Result<Vec<RowCollection>> {
    spec.validate()?;
    match spec.family {
        Family::Square => square::iterate(spec.n, spec.d, cfg),
        Family::Pentagon => pentagon::iterate(spec.n, spec.d, spec.d1.unwrap(), cfg),
        Family::HexagonC => {
            hexc::iterate(spec.n, spec.d, spec.d1.unwrap(), spec.d2.unwrap(), cfg)
        }
        Family::HexagonD => hexd::iterate(spec.n, spec.d, spec.d1.unwrap(), cfg),
    }
}

/// One family member drawn uniformly (over the per-slot choices) by the
/// keyed deterministic generator.
pub fn family_sample(spec: &PolygonSpec, seed: u64, index: u64) -> Result<RowCollection> {
    spec.validate()?;
    let mut rng = instance_rng(seed, spec, index);
    match spec.family {
        Family::Square => Ok(square::sample(spec.n, spec.d, &mut rng)),
        Family::Pentagon => Ok(pentagon::sample(spec.n, spec.d, spec.d1.unwrap(), &mut rng)),
        Family::HexagonC => {
            hexc::sample(spec.n, spec.d, spec.d1.unwrap(), spec.d2.unwrap(), &mut rng)
        }
        Family::HexagonD => Ok(hexd::sample(spec.n, spec.d, spec.d1.unwrap(), &mut rng)),
    }
}

/// The deterministic first member (identity choices, canonical staircase),
/// used for golden tests and rendering examples.
pub fn family_canonical(spec: &PolygonSpec) -> Result<RowCollection> {
    spec.validate()?;
    match spec.family {
        Family::Square => Ok(square::canonical(spec.n, spec.d)),
        Family::Pentagon => Ok(pentagon::canonical(spec.n, spec.d, spec.d1.unwrap())),
        Family::HexagonC => {
            hexc::canonical(spec.n, spec.d, spec.d1.unwrap(), spec.d2.unwrap())
        }
        Family::HexagonD => Ok(hexd::canonical(spec.n, spec.d, spec.d1.unwrap())),
    }
}

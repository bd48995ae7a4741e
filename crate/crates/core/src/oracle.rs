//! Exhaustive ground-truth enumeration of proper / admissible / marked
//! admissible systems at desk scale.
//!
//! Two independent strategies are kept on purpose: a pruned left-to-right
//! sweep (the workhorse) and a naive multiset sweep (the cross-check).

use std::collections::HashSet;

use num::BigUint;

use crate::error::{Error, Result};
use crate::polygon::SigmaProfile;
use crate::system::{
    count_markings, is_admissible, validate_proper, Interval, ProperSystem,
};

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Branch-node budget; exceeding it is an error, never a truncation.
    pub node_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { node_budget: 100_000_000 }
    }
}

/// Exact counts for one profile.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub proper_count: BigUint,
    pub admissible_count: BigUint,
    pub marked_admissible_count: BigUint,
    /// The admissible systems themselves, for containment checks.
    pub admissible_systems: Vec<ProperSystem>,
}

/// Every proper system of the profile, each exactly once, by a left-to-right
/// sweep over the integer points 0..m that keeps coverage equal to σ at
/// every step.
pub fn enumerate_proper(profile: &SigmaProfile, cfg: &OracleConfig) -> Result<Vec<ProperSystem>> {
    let m = profile.m;
    let sigma = &profile.sigma;
    let budget = profile.interval_budget();

    // Suffix bounds on how many intervals must / can still be opened.
    let mut min_suffix = vec![0u64; m + 2];
    let mut max_suffix = vec![0u64; m + 2];
    for i in (0..=m).rev() {
        let prev = if i == 0 { 0 } else { sigma[i - 1] };
        min_suffix[i] = min_suffix[i + 1] + sigma[i].saturating_sub(prev);
        max_suffix[i] = max_suffix[i + 1] + sigma[i];
    }

    let mut search = Sweep {
        sigma,
        m,
        budget,
        min_suffix,
        max_suffix,
        nodes: 0,
        node_budget: cfg.node_budget,
        out: Vec::new(),
    };
    let mut finished = Vec::new();
    search.step(0, &[], &mut finished, 0)?;
    Ok(search.out)
}

struct Sweep<'a> {
    sigma: &'a [u64],
    m: usize,
    budget: usize,
    min_suffix: Vec<u64>,
    max_suffix: Vec<u64>,
    nodes: u64,
    node_budget: u64,
    out: Vec<ProperSystem>,
}

impl Sweep<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::ResourceCap(format!(
                "proper-system sweep exceeded {} branch nodes",
                self.node_budget
            )));
        }
        Ok(())
    }

    /// `open` is the multiset of start points still open after point i-1,
    /// run-length encoded and sorted by start.
    fn step(
        &mut self,
        i: usize,
        open: &[(i64, usize)],
        finished: &mut Vec<Interval>,
        opened: usize,
    ) -> Result<()> {
        self.tick()?;
        if i > self.m {
            if opened == self.budget {
                let mut intervals = finished.clone();
                for &(a, c) in open {
                    for _ in 0..c {
                        intervals.push(Interval::new(a, self.m as i64));
                    }
                }
                self.out.push(ProperSystem::new(intervals));
            }
            return Ok(());
        }
        // Branch over how many copies of each open start close at b = i-1,
        // then open fresh intervals at a = i to hit coverage σ(i) exactly.
        self.choose(i, 0, open, &mut Vec::new(), finished, opened, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        i: usize,
        idx: usize,
        open: &[(i64, usize)],
        kept: &mut Vec<(i64, usize)>,
        finished: &mut Vec<Interval>,
        opened: usize,
        kept_total: usize,
    ) -> Result<()> {
        if idx == open.len() {
            let sigma_i = self.sigma[i] as usize;
            if kept_total > sigma_i {
                return Ok(());
            }
            let fresh = sigma_i - kept_total;
            let opened_next = opened + fresh;
            if opened_next > self.budget {
                return Ok(());
            }
            let remaining_min = self.min_suffix.get(i + 1).copied().unwrap_or(0) as usize;
            let remaining_max = self.max_suffix.get(i + 1).copied().unwrap_or(0) as usize;
            if opened_next + remaining_min > self.budget
                || opened_next + remaining_max < self.budget
            {
                return Ok(());
            }
            let mut next_open = kept.clone();
            if fresh > 0 {
                next_open.push((i as i64, fresh));
            }
            return self.step(i + 1, &next_open, finished, opened_next);
        }
        let (start, count) = open[idx];
        for close in 0..=count {
            let keep = count - close;
            for _ in 0..close {
                finished.push(Interval::new(start, i as i64 - 1));
            }
            if keep > 0 {
                kept.push((start, keep));
            }
            self.choose(i, idx + 1, open, kept, finished, opened, kept_total + keep)?;
            if keep > 0 {
                kept.pop();
            }
            for _ in 0..close {
                finished.pop();
            }
        }
        Ok(())
    }
}

/// Independent oracle: sweep over every multiset of candidate intervals of
/// the required cardinality and keep the ones that validate.
pub fn enumerate_proper_naive(
    profile: &SigmaProfile,
    cfg: &OracleConfig,
) -> Result<Vec<ProperSystem>> {
    let m = profile.m as i64;
    let budget = profile.interval_budget();
    let mut candidates = Vec::new();
    for a in 0..=m {
        for b in a..=m {
            candidates.push(Interval::new(a, b));
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(budget);
    let mut nodes = 0u64;
    multiset_rec(
        &candidates,
        0,
        budget,
        &mut chosen,
        &mut |system| {
            if validate_proper(system, profile).is_ok() {
                out.push(system.clone());
            }
        },
        &mut nodes,
        cfg.node_budget,
    )?;
    Ok(out)
}

fn multiset_rec(
    candidates: &[Interval],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<Interval>,
    sink: &mut dyn FnMut(&ProperSystem),
    nodes: &mut u64,
    node_budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > node_budget {
        return Err(Error::ResourceCap(format!(
            "naive multiset sweep exceeded {node_budget} nodes"
        )));
    }
    if remaining == 0 {
        sink(&ProperSystem::new(chosen.clone()));
        return Ok(());
    }
    for idx in from..candidates.len() {
        chosen.push(candidates[idx]);
        multiset_rec(candidates, idx, remaining - 1, chosen, sink, nodes, node_budget)?;
        chosen.pop();
    }
    Ok(())
}

/// Runs the sweep enumerator and totals markings over admissible systems.
pub fn count_marked_admissible(
    profile: &SigmaProfile,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let systems = enumerate_proper(profile, cfg)?;
    report_from_systems(profile, systems)
}

/// Same report via the independent naive sweep.
pub fn count_marked_admissible_naive(
    profile: &SigmaProfile,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let systems = enumerate_proper_naive(profile, cfg)?;
    report_from_systems(profile, systems)
}

fn report_from_systems(
    profile: &SigmaProfile,
    systems: Vec<ProperSystem>,
) -> Result<OracleReport> {
    let mut seen = HashSet::new();
    for system in &systems {
        debug_assert_eq!(validate_proper(system, profile), Ok(()));
        if !seen.insert(system.canonical_bytes()) {
            return Err(Error::InternalConsistency(
                "enumerator emitted a proper system twice".into(),
            ));
        }
    }
    let mut admissible = Vec::new();
    let mut marked = BigUint::from(0u32);
    for system in &systems {
        if is_admissible(system, profile.m) {
            marked += count_markings(system);
            admissible.push(system.clone());
        }
    }
    Ok(OracleReport {
        proper_count: BigUint::from(systems.len()),
        admissible_count: BigUint::from(admissible.len()),
        marked_admissible_count: marked,
        admissible_systems: admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSpec;

    fn canon(mut systems: Vec<ProperSystem>) -> Vec<Vec<u8>> {
        let mut v: Vec<Vec<u8>> = systems.drain(..).map(|s| s.canonical_bytes()).collect();
        v.sort();
        v
    }

    #[test]
    fn square_d1_unique_system() {
        let profile = PolygonSpec::square(1, 1).profile().unwrap();
        let systems = enumerate_proper(&profile, &OracleConfig::default()).unwrap();
        assert_eq!(canon(systems), vec![b"1,1".to_vec()]);
    }

    #[test]
    fn square_d2_two_systems() {
        let profile = PolygonSpec::square(2, 1).profile().unwrap();
        let systems = enumerate_proper(&profile, &OracleConfig::default()).unwrap();
        assert_eq!(
            canon(systems),
            vec![b"1,1;2,2;2,3".to_vec(), b"1,2;2,2;3,3".to_vec()]
        );
    }

    #[test]
    fn hexagon_d_forced_points() {
        let profile = PolygonSpec::hexagon_d(2, 1, 1).profile().unwrap();
        let systems = enumerate_proper(&profile, &OracleConfig::default()).unwrap();
        assert_eq!(canon(systems), vec![b"1,1;2,2".to_vec()]);
    }

    #[test]
    fn ground_truth_reports() {
        let cases = [
            (PolygonSpec::square(1, 1), (1u32, 1u32, 1u32)),
            (PolygonSpec::square(2, 1), (2, 2, 4)),
            (PolygonSpec::pentagon(2, 1, 1), (2, 2, 4)),
            (PolygonSpec::hexagon_d(2, 1, 1), (1, 1, 1)),
        ];
        for (spec, (proper, adm, marked)) in cases {
            let profile = spec.profile().unwrap();
            let report = count_marked_admissible(&profile, &OracleConfig::default()).unwrap();
            assert_eq!(report.proper_count, BigUint::from(proper), "{spec:?}");
            assert_eq!(report.admissible_count, BigUint::from(adm), "{spec:?}");
            assert_eq!(report.marked_admissible_count, BigUint::from(marked), "{spec:?}");
        }
    }

    #[test]
    fn pentagon_systems_match_expected() {
        let profile = PolygonSpec::pentagon(2, 1, 1).profile().unwrap();
        let systems = enumerate_proper(&profile, &OracleConfig::default()).unwrap();
        assert_eq!(
            canon(systems),
            vec![b"0,0;1,1;1,2".to_vec(), b"0,1;1,1;2,2".to_vec()]
        );
    }

    #[test]
    fn double_oracle_agreement_small_grid() {
        let mut specs = vec![
            PolygonSpec::square(1, 1),
            PolygonSpec::square(2, 1),
            PolygonSpec::square(3, 1),
            PolygonSpec::square(1, 2),
            PolygonSpec::pentagon(2, 1, 1),
            PolygonSpec::pentagon(3, 1, 1),
            PolygonSpec::pentagon(3, 2, 1),
            PolygonSpec::hexagon_c(3, 2, 1, 1),
            PolygonSpec::hexagon_d(2, 1, 1),
            PolygonSpec::hexagon_d(3, 1, 1),
            PolygonSpec::hexagon_d(3, 2, 1),
        ];
        specs.retain(|s| s.profile().unwrap().m <= 6);
        for spec in specs {
            let profile = spec.profile().unwrap();
            let cfg = OracleConfig::default();
            let fast = enumerate_proper(&profile, &cfg).unwrap();
            let naive = enumerate_proper_naive(&profile, &cfg).unwrap();
            assert_eq!(canon(fast), canon(naive), "{spec:?}");
        }
    }

    #[test]
    fn node_budget_is_an_error_not_a_truncation() {
        let profile = PolygonSpec::square(3, 1).profile().unwrap();
        let err = enumerate_proper(&profile, &OracleConfig { node_budget: 5 });
        assert!(matches!(err, Err(Error::ResourceCap(_))));
    }

    #[test]
    fn admissible_at_most_proper() {
        for spec in [
            PolygonSpec::square(3, 1),
            PolygonSpec::pentagon(3, 1, 1),
            PolygonSpec::hexagon_d(3, 1, 1),
        ] {
            let profile = spec.profile().unwrap();
            let report = count_marked_admissible(&profile, &OracleConfig::default()).unwrap();
            assert!(report.admissible_count <= report.proper_count);
        }
    }
}

//! End-to-end family verification: every member projects to a valid proper
//! system, every projection is admissible, projections are pairwise
//! distinct, and the generated count matches the closed-form count.

use std::collections::HashSet;

use num::BigUint;

use crate::collection::{find_partition, lemma2_check, project_to_system};
use crate::error::{Error, Result};
use crate::polygon::PolygonSpec;
use crate::system::is_admissible;

use super::{family_count, family_iterate, FamilyConfig};

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub generated: u64,
    pub expected: BigUint,
    pub distinct_projections: u64,
    /// Members whose hole-side partition passes the two-sided criterion.
    pub partition_passes: u64,
}

pub fn family_verify(spec: &PolygonSpec, cfg: &FamilyConfig) -> Result<VerifyReport> {
    let profile = spec.profile()?;
    let expected = family_count(spec)?;
    let members = family_iterate(spec, cfg)?;

    let mut projections = HashSet::new();
    let mut partition_passes = 0u64;
    for (idx, coll) in members.iter().enumerate() {
        let system = project_to_system(coll, &profile).map_err(|v| {
            Error::InternalConsistency(format!(
                "member {idx} of {spec:?} fails profile validation: {v}"
            ))
        })?;
        if !is_admissible(&system, profile.m) {
            return Err(Error::InternalConsistency(format!(
                "member {idx} of {spec:?} projects to an inadmissible system"
            )));
        }
        if let Some(p) = find_partition(coll)? {
            debug_assert!(lemma2_check(coll, &p).is_ok());
            partition_passes += 1;
        }
        projections.insert(system.canonical_bytes());
    }

    if BigUint::from(members.len() as u64) != expected {
        return Err(Error::InternalConsistency(format!(
            "{spec:?}: generated {} members, closed form says {expected}",
            members.len()
        )));
    }
    Ok(VerifyReport {
        generated: members.len() as u64,
        expected,
        distinct_projections: projections.len() as u64,
        partition_passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSpec;

    fn verify(spec: PolygonSpec) -> VerifyReport {
        family_verify(&spec, &FamilyConfig::default()).unwrap()
    }

    #[test]
    fn small_square_instances() {
        for (n, d) in [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (2, 3), (3, 2)] {
            let report = verify(PolygonSpec::square(d, n));
            assert_eq!(report.generated, report.distinct_projections, "n={n} d={d}");
            assert_eq!(report.generated, report.partition_passes, "n={n} d={d}");
        }
    }

    #[test]
    fn small_pentagon_instances() {
        for (n, d, d1) in [(1, 2, 1), (1, 3, 1), (1, 3, 2), (1, 4, 2), (2, 2, 1), (2, 3, 1)] {
            let report = verify(PolygonSpec::pentagon(d, d1, n));
            assert_eq!(report.generated, report.distinct_projections, "n={n} d={d} d1={d1}");
            // The two-sided criterion needs one more used vertical strip than
            // there are segments; for this family that pins n·d1 = 1. Larger
            // parameters stay admissible (checked above) but carry no witness.
            if n * d1 == 1 {
                assert_eq!(report.generated, report.partition_passes, "n={n} d={d} d1={d1}");
            } else {
                assert_eq!(report.partition_passes, 0, "n={n} d={d} d1={d1}");
            }
        }
    }

    #[test]
    fn small_hexagon_instances() {
        for (n, d, d1, d2) in [(1, 3, 2, 1), (1, 3, 1, 1), (1, 4, 2, 1), (2, 3, 2, 1)] {
            let report = verify(PolygonSpec::hexagon_c(d, d1, d2, n));
            assert_eq!(
                report.generated, report.distinct_projections,
                "C n={n} d={d} d1={d1} d2={d2}"
            );
            // Strip counting pins the partition witness to n·d1 = n·d2 = 1.
            if n * d1 == 1 && n * d2 == 1 {
                assert_eq!(
                    report.generated, report.partition_passes,
                    "C n={n} d={d} d1={d1} d2={d2}"
                );
            }
        }
        for (n, d, d1) in [(1, 2, 1), (1, 3, 1), (1, 3, 2), (1, 4, 2), (2, 2, 1), (1, 5, 3)] {
            let report = verify(PolygonSpec::hexagon_d(d, d1, n));
            assert_eq!(report.generated, report.distinct_projections, "D n={n} d={d} d1={d1}");
            assert_eq!(report.generated, report.partition_passes, "D n={n} d={d} d1={d1}");
        }
    }
}

//! The four lattice polygon families, their scalings and σ-profiles.
//!
//! Every polygon here is reflection-symmetric across the bisectrix y = x.
//! Tracing, for each boundary lattice point, the line x + y = const through
//! the point and its mirror image cuts the bisectrix chord into `m` pieces;
//! the σ-profile records the lattice length of each traced chord.

use num::integer::gcd;
use num::rational::Ratio;

use crate::error::{Error, Result};

/// One of the four polygon families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Square,
    Pentagon,
    HexagonC,
    HexagonD,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Pentagon => "pentagon",
            Family::HexagonC => "hexagonC",
            Family::HexagonD => "hexagonD",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Family::Square),
            "pentagon" => Ok(Family::Pentagon),
            "hexagonC" | "hexagonc" | "hexc" => Ok(Family::HexagonC),
            "hexagonD" | "hexagond" | "hexd" => Ok(Family::HexagonD),
            other => Err(Error::InvalidParams(format!("unknown family `{other}`"))),
        }
    }
}

/// A polygon family member together with the scale factor `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolygonSpec {
    pub family: Family,
    pub d: u32,
    /// Absent for the square family.
    pub d1: Option<u32>,
    /// Present for hexagonC only.
    pub d2: Option<u32>,
    pub n: u32,
}

impl PolygonSpec {
    pub fn square(d: u32, n: u32) -> Self {
        PolygonSpec { family: Family::Square, d, d1: None, d2: None, n }
    }

    pub fn pentagon(d: u32, d1: u32, n: u32) -> Self {
        PolygonSpec { family: Family::Pentagon, d, d1: Some(d1), d2: None, n }
    }

    pub fn hexagon_c(d: u32, d1: u32, d2: u32, n: u32) -> Self {
        PolygonSpec { family: Family::HexagonC, d, d1: Some(d1), d2: Some(d2), n }
    }

    pub fn hexagon_d(d: u32, d1: u32, n: u32) -> Self {
        PolygonSpec { family: Family::HexagonD, d, d1: Some(d1), d2: None, n }
    }

    /// Checks every parameter constraint, naming the violated one.
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParams("scale factor n must be >= 1".into()));
        }
        match self.family {
            Family::Square => {
                if self.d < 1 {
                    return Err(Error::InvalidParams("square requires d >= 1".into()));
                }
                if self.d1.is_some() || self.d2.is_some() {
                    return Err(Error::InvalidParams("square takes no d1/d2".into()));
                }
            }
            Family::Pentagon | Family::HexagonD => {
                let d1 = self.d1.ok_or_else(|| {
                    Error::InvalidParams(format!("{} requires d1", self.family.name()))
                })?;
                if !(1 <= d1 && d1 < self.d) {
                    return Err(Error::InvalidParams(format!(
                        "{} requires 1 <= d1 < d, got d1={d1}, d={}",
                        self.family.name(),
                        self.d
                    )));
                }
                if self.d2.is_some() {
                    return Err(Error::InvalidParams(format!(
                        "{} takes no d2",
                        self.family.name()
                    )));
                }
            }
            Family::HexagonC => {
                let d1 = self
                    .d1
                    .ok_or_else(|| Error::InvalidParams("hexagonC requires d1".into()))?;
                let d2 = self
                    .d2
                    .ok_or_else(|| Error::InvalidParams("hexagonC requires d2".into()))?;
                if !(1 <= d2 && d2 <= d1 && d1 < self.d) {
                    return Err(Error::InvalidParams(format!(
                        "hexagonC requires 1 <= d2 <= d1 < d, got d2={d2}, d1={d1}, d={}",
                        self.d
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn d1(&self) -> u32 {
        self.d1.unwrap_or(0)
    }

    pub fn d2(&self) -> u32 {
        self.d2.unwrap_or(0)
    }

    /// σ-profile of the scaled polygon, computed from the lattice geometry.
    pub fn profile(&self) -> Result<SigmaProfile> {
        sigma_profile(&build_polygon(self)?)
    }
}

/// Counterclockwise vertex cycle of the scaled polygon nΔ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPolygon {
    pub vertices: Vec<(i64, i64)>,
}

/// Builds the counterclockwise lattice vertex cycle of nΔ.
pub fn build_polygon(spec: &PolygonSpec) -> Result<ScaledPolygon> {
    spec.validate()?;
    let n = spec.n as i64;
    let d = spec.d as i64;
    let d1 = spec.d1() as i64;
    let d2 = spec.d2() as i64;
    let unscaled: Vec<(i64, i64)> = match spec.family {
        Family::Square => vec![(0, 0), (d, 0), (d, d), (0, d)],
        Family::Pentagon => vec![(d, d), (0, d), (0, d1), (d1, 0), (d, 0)],
        Family::HexagonC => {
            vec![(0, d1), (d1, 0), (d, 0), (d, d - d2), (d - d2, d), (0, d)]
        }
        Family::HexagonD => {
            vec![(0, 0), (d - d1, 0), (d, d1), (d, d), (d1, d), (0, d - d1)]
        }
    };
    Ok(ScaledPolygon {
        vertices: unscaled.into_iter().map(|(x, y)| (n * x, n * y)).collect(),
    })
}

impl ScaledPolygon {
    /// Sum over edges of gcd(|dx|, |dy|).
    pub fn boundary_integer_length(&self) -> u64 {
        self.edges()
            .map(|(p, q)| gcd((q.0 - p.0).unsigned_abs(), (q.1 - p.1).unsigned_abs()))
            .sum()
    }

    fn edges(&self) -> impl Iterator<Item = ((i64, i64), (i64, i64))> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn contains(&self, pt: (i64, i64)) -> bool {
        // CCW convex polygon: the point is inside iff it is on or left of
        // every directed edge.
        self.edges()
            .all(|(p, q)| (q.0 - p.0) * (pt.1 - p.1) - (q.1 - p.1) * (pt.0 - p.0) >= 0)
    }

    /// All lattice points on the boundary.
    pub fn boundary_lattice_points(&self) -> Vec<(i64, i64)> {
        let mut pts = Vec::new();
        for (p, q) in self.edges() {
            let g = gcd((q.0 - p.0).unsigned_abs(), (q.1 - p.1).unsigned_abs()) as i64;
            if g == 0 {
                continue;
            }
            let step = ((q.0 - p.0) / g, (q.1 - p.1) / g);
            for t in 0..g {
                pts.push((p.0 + t * step.0, p.1 + t * step.1));
            }
        }
        pts
    }

    fn bounding_box(&self) -> ((i64, i64), (i64, i64)) {
        let xs: Vec<i64> = self.vertices.iter().map(|v| v.0).collect();
        let ys: Vec<i64> = self.vertices.iter().map(|v| v.1).collect();
        (
            (*xs.iter().min().unwrap(), *ys.iter().min().unwrap()),
            (*xs.iter().max().unwrap(), *ys.iter().max().unwrap()),
        )
    }

    /// Exact x-extent of the chord cut by the line x + y = c, as rationals.
    /// Returns None when the line misses the polygon.
    fn chord_x_extent(&self, c: i64) -> Option<(Ratio<i64>, Ratio<i64>)> {
        let mut lo: Option<Ratio<i64>> = None;
        let mut hi: Option<Ratio<i64>> = None;
        let mut push = |x: Ratio<i64>| {
            lo = Some(match lo {
                Some(v) => v.min(x),
                None => x,
            });
            hi = Some(match hi {
                Some(v) => v.max(x),
                None => x,
            });
        };
        for (p, q) in self.edges() {
            let sp = p.0 + p.1;
            let sq = q.0 + q.1;
            if sp == sq {
                // Edge parallel to the traced line; it contributes iff it
                // lies on the line itself.
                if sp == c {
                    push(Ratio::from_integer(p.0));
                    push(Ratio::from_integer(q.0));
                }
                continue;
            }
            // t = (c - sp) / (sq - sp) must land in [0, 1].
            let num = c - sp;
            let den = sq - sp;
            let t = Ratio::new(num, den);
            if t >= Ratio::from_integer(0) && t <= Ratio::from_integer(1) {
                let x = Ratio::from_integer(p.0) + t * Ratio::from_integer(q.0 - p.0);
                push(x);
            }
        }
        lo.zip(hi)
    }
}

/// The (m, σ) data of a polygon: one entry per traced line, indexed by the
/// position of the line's bisectrix intersection along the bisectrix chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub m: usize,
    /// σ(i) for i in [0, m].
    pub sigma: Vec<u64>,
    /// Sorted distinct sums c = x + y of the traced lines.
    pub levels: Vec<i64>,
    /// |∂(nΔ)|, kept so the interval budget is derivable from the profile.
    pub boundary_length: u64,
}

impl SigmaProfile {
    /// |∂(nΔ)| − m − 1, the cardinality of every proper system.
    pub fn interval_budget(&self) -> usize {
        self.boundary_length as usize - self.m - 1
    }

    pub fn sigma_sum(&self) -> u64 {
        self.sigma.iter().sum()
    }
}

/// Computes the σ-profile of a scaled polygon from its lattice geometry.
pub fn sigma_profile(poly: &ScaledPolygon) -> Result<SigmaProfile> {
    let mut levels: Vec<i64> = poly
        .boundary_lattice_points()
        .iter()
        .map(|&(x, y)| x + y)
        .collect();
    levels.sort_unstable();
    levels.dedup();

    // The bisectrix chord endpoints must themselves be cut by traced lines.
    let vmin = poly.vertices.iter().map(|&(x, y)| x + y).min().unwrap();
    let vmax = poly.vertices.iter().map(|&(x, y)| x + y).max().unwrap();
    if levels.first() != Some(&vmin) || levels.last() != Some(&vmax) {
        return Err(Error::InternalConsistency(format!(
            "bisectrix chord endpoints not cut by traced lines: levels span \
             [{:?}, {:?}], polygon spans [{vmin}, {vmax}]",
            levels.first(),
            levels.last()
        )));
    }

    let ((xmin, _), (xmax, _)) = poly.bounding_box();
    let mut sigma = Vec::with_capacity(levels.len());
    for &c in &levels {
        let count = (xmin..=xmax)
            .filter(|&x| poly.contains((x, c - x)))
            .count() as u64;
        let (lo, hi) = poly.chord_x_extent(c).ok_or_else(|| {
            Error::InternalConsistency(format!("traced line x+y={c} misses the polygon"))
        })?;
        if !lo.is_integer() || !hi.is_integer() {
            return Err(Error::InternalConsistency(format!(
                "chord of x+y={c} has a non-lattice endpoint: x in [{lo}, {hi}]"
            )));
        }
        let length = (hi - lo).to_integer() as u64;
        if length + 1 != count {
            return Err(Error::InternalConsistency(format!(
                "chord of x+y={c}: lattice count {count} disagrees with extent {length}"
            )));
        }
        sigma.push(length);
    }

    Ok(SigmaProfile {
        m: levels.len() - 1,
        sigma,
        levels,
        boundary_length: poly.boundary_integer_length(),
    })
}

/// Family closed forms for (m, σ), as functions of (n, d, d1, d2).
pub fn closed_form_profile(spec: &PolygonSpec) -> Result<(usize, Vec<u64>)> {
    spec.validate()?;
    let n = spec.n as i64;
    let d = spec.d as i64;
    let d1 = spec.d1() as i64;
    let d2 = spec.d2() as i64;
    let (m, f): (i64, Box<dyn Fn(i64) -> i64>) = match spec.family {
        Family::Square => (2 * n * d, Box::new(move |i| (i).min(2 * n * d - i))),
        Family::Pentagon => (
            n * (2 * d - d1),
            Box::new(move |i| (n * d1 + i).min(2 * n * d - n * d1 - i)),
        ),
        Family::HexagonC => (
            n * (2 * d - d1 - d2),
            Box::new(move |i| (n * d1 + i).min(2 * n * d - n * d1 - i)),
        ),
        Family::HexagonD => {
            let m = n * (2 * d - d1);
            (m, Box::new(move |i| i.min(n * (d - d1)).min(m - i)))
        }
    };
    Ok((m as usize, (0..=m).map(|i| f(i) as u64).collect()))
}

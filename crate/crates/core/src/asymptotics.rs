//! Log-domain evaluation of the family lower bounds and the n·ln n
//! coefficient fit.

use num::BigUint;

use crate::construct::{factorial, hexc, hexd, rectangle_ladder};
use crate::error::{Error, Result};
use crate::polygon::{Family, PolygonSpec};

/// Threshold below which ln(x!) is computed by exact summation; beyond it
/// the Stirling series carries an error well under 1e-9.
const EXACT_LOG_FACTORIAL_LIMIT: u64 = 1_000_000;

/// Largest apex for which the arbitrary-precision exact count is also
/// materialized alongside its logarithm.
const EXACT_COUNT_LIMIT: u64 = 256;

pub fn log_factorial(x: u64) -> f64 {
    if x <= EXACT_LOG_FACTORIAL_LIMIT {
        return (2..=x).map(|k| (k as f64).ln()).sum();
    }
    let x = x as f64;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

/// Natural log of an arbitrary-precision integer.
pub fn log_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let v: u64 = x.try_into().unwrap();
        return (v as f64).ln();
    }
    // Top 64 bits as mantissa, rest as a power of two.
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// A count carried exactly (when affordable) and in the log domain.
#[derive(Debug, Clone)]
pub struct CountValue {
    pub exact: Option<BigUint>,
    pub log_value: f64,
}

fn square_term_log(apex: i64) -> f64 {
    let ladder = rectangle_ladder(apex);
    4.0 * (1..=ladder.k)
        .map(|i| log_factorial(ladder.delta(i) as u64))
        .sum::<f64>()
}

fn square_term_exact(apex: i64) -> BigUint {
    let ladder = rectangle_ladder(apex);
    let m: BigUint = (1..=ladder.k).map(|i| factorial(ladder.delta(i) as u64)).product();
    m.pow(4)
}

/// Natural log of the marked-family lower bound for one parameter set.
pub fn lower_bound_log(spec: &PolygonSpec) -> Result<CountValue> {
    spec.validate()?;
    let n = spec.n as u64;
    let d = spec.d as u64;
    let d1 = spec.d1() as u64;
    let d2 = spec.d2() as u64;
    let want_exact = n * d <= EXACT_COUNT_LIMIT;

    let pentagon_parts = |d: u64, d1: u64| -> (f64, BigUint) {
        let apex = (n * (d - d1)) as i64;
        let log = square_term_log(apex)
            + d1 as f64 * log_factorial(n)
            + 2.0 * log_factorial(n * d1);
        let exact = if want_exact {
            square_term_exact(apex) * factorial(n).pow(d1 as u32) * factorial(n * d1).pow(2)
        } else {
            BigUint::from(0u32)
        };
        (log, exact)
    };

    let (log_value, exact) = match spec.family {
        Family::Square => {
            let apex = (n * d) as i64;
            (square_term_log(apex), want_exact.then(|| square_term_exact(apex)))
        }
        Family::Pentagon => {
            let (log, exact) = pentagon_parts(d, d1);
            (log, want_exact.then_some(exact))
        }
        Family::HexagonC => {
            let w = n * (2 * d - d1 - d2);
            let cell = w / 4;
            if cell < 1 {
                return Err(Error::Infeasible(format!(
                    "width {w} leaves no room for the staircase cell"
                )));
            }
            let a = hexc::min_box_height(spec.d, spec.d1(), spec.d2()) as u64;
            let (sub, _) = pentagon_parts(d - d2, d1 - d2);
            let log = sub
                + 2.0 * (n * d2) as f64 * ((cell as f64).ln() - log_factorial(a));
            // The (a!)^{-2nd2} correction is not integral in general.
            (log, None)
        }
        Family::HexagonD => {
            let apex = (n * (d - d1)) as i64;
            let stair_sum: f64 = hexd::staircase_lengths(spec.d, spec.d1())
                .iter()
                .map(|&b| log_factorial(n * b as u64))
                .sum();
            let log = square_term_log(apex) + d1 as f64 * log_factorial(n) + stair_sum;
            let exact = want_exact.then(|| {
                hexd::staircase_lengths(spec.d, spec.d1())
                    .iter()
                    .map(|&b| factorial(n * b as u64))
                    .product::<BigUint>()
                    * square_term_exact(apex)
                    * factorial(n).pow(spec.d1())
            });
            (log, exact)
        }
    };
    Ok(CountValue { exact, log_value })
}

#[derive(Debug, Clone)]
pub struct BoundRow {
    pub n: u32,
    pub log_lb: f64,
    pub n_ln_n: f64,
    pub ratio: f64,
}

/// Least-squares fit of ratio = A - B / ln n.
#[derive(Debug, Clone)]
pub struct CoefficientFit {
    pub a: f64,
    pub b: f64,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub spec_family: Family,
    pub rows: Vec<BoundRow>,
    /// None when fewer than two distinct n were supplied.
    pub fit: Option<CoefficientFit>,
    /// The n·ln n coefficient this family approaches: the boundary integer
    /// length of the unscaled polygon.
    pub target: f64,
}

pub fn target_coefficient(spec: &PolygonSpec) -> Result<f64> {
    let unscaled = PolygonSpec { n: 1, ..*spec };
    Ok(unscaled.profile()?.boundary_length as f64)
}

pub fn bound_table(spec: &PolygonSpec, n_list: &[u32]) -> Result<BoundReport> {
    let mut n_sorted = n_list.to_vec();
    n_sorted.sort_unstable();
    n_sorted.dedup();
    if n_sorted.is_empty() {
        return Err(Error::InvalidParams("empty n list".into()));
    }
    let target = target_coefficient(spec)?;
    let mut rows = Vec::with_capacity(n_sorted.len());
    for &n in &n_sorted {
        let inst = PolygonSpec { n, ..*spec };
        let log_lb = lower_bound_log(&inst)?.log_value;
        let n_ln_n = n as f64 * (n as f64).ln();
        let ratio = if n_ln_n > 0.0 { log_lb / n_ln_n } else { f64::NAN };
        rows.push(BoundRow { n, log_lb, n_ln_n, ratio });
    }
    let fit = fit_rows(&rows);
    Ok(BoundReport { spec_family: spec.family, rows, fit, target })
}

fn fit_rows(rows: &[BoundRow]) -> Option<CoefficientFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.ratio.is_finite())
        .map(|r| (1.0 / (r.n as f64).ln(), r.ratio))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residuals = pts
        .iter()
        .map(|&(x, y)| y - (intercept + slope * x))
        .collect();
    Some(CoefficientFit { a: intercept, b: -slope, residuals })
}

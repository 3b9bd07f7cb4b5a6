use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcrep::YoungExpr;
use crate::scalar::{log_grid, Scalar};

/// Point where unboundedness is probed, and the level it must exceed there.
pub const UNBOUNDED_PROBE: f64 = 1e12;
pub const UNBOUNDED_LEVEL: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    ZeroAtOrigin,
    Positive,
    StrictlyIncreasing,
    DensityPositive,
    DensityNonIncreasing,
    Concavity,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: Check,
    /// Grid point where the check first failed.
    pub witness: f64,
    pub detail: String,
}

/// Outcome of [`validate`]. Passed exactly when no violations were recorded.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    fn record(&mut self, check: Check, witness: f64, detail: String) {
        if !self.violations.iter().any(|v| v.check == check) {
            self.violations.push(Violation {
                check,
                witness,
                detail,
            });
        }
    }
}

/// 61 log-spaced points on `[1e-3, 1e3]`.
pub fn default_grid<T: Scalar>() -> Vec<T> {
    log_grid(1e-3, 1e3, 61)
}

pub(crate) fn check_grid<T: Scalar>(grid: &[T], min_len: usize, lo: f64, hi: f64) -> Result<()> {
    if grid.len() < min_len {
        return Err(Error::Grid(format!(
            "need at least {min_len} points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !(*x > T::zero()) || !x.is_finite()) {
        return Err(Error::Grid("points must be positive and finite".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Grid("points must be strictly increasing".into()));
    }
    if grid[0] > T::of(lo) || grid[grid.len() - 1] < T::of(hi) {
        return Err(Error::Grid(format!("grid must span [{lo:e}, {hi:e}]")));
    }
    Ok(())
}

/// Runs the sampled necessary conditions for membership of `expr` in the
/// concave Young-function class on `grid`.
///
/// The grid must be sorted, positive, hold at least 8 points and cover
/// `[1e-3, 1e3]`. Only the first violation of each check is recorded.
pub fn validate<T: Scalar>(expr: &YoungExpr<T>, grid: &[T]) -> Result<ValidationReport> {
    check_grid(grid, 8, 1e-3, 1e3)?;
    let mut report = ValidationReport::default();
    let eps = T::epsilon() * T::of(16.0);

    let at0 = expr.eval(T::zero());
    if at0 != T::zero() {
        report.record(Check::ZeroAtOrigin, 0.0, format!("value at 0 is {at0}"));
    }

    let values: Vec<T> = grid.iter().map(|&x| expr.eval(x)).collect();
    for (x, v) in grid.iter().zip(&values) {
        if !(*v > T::zero()) || !v.is_finite() {
            report.record(Check::Positive, x.to_f64_lossy(), format!("value {v}"));
        }
    }
    for i in 1..grid.len() {
        if !(values[i] > values[i - 1]) {
            report.record(
                Check::StrictlyIncreasing,
                grid[i].to_f64_lossy(),
                format!("{} then {}", values[i - 1], values[i]),
            );
        }
    }

    let mut densities = Vec::with_capacity(grid.len());
    for &x in grid {
        match expr.density(x) {
            Ok(d) => densities.push(Some(d)),
            Err(e) => {
                report.record(Check::DensityPositive, x.to_f64_lossy(), e.to_string());
                densities.push(None);
            }
        }
    }
    let mut prev: Option<(T, T)> = None;
    for (&x, d) in grid.iter().zip(&densities) {
        let Some(d) = *d else { continue };
        if let Some((_, pd)) = prev {
            if d > pd + eps * pd.abs().max(d.abs()) {
                report.record(
                    Check::DensityNonIncreasing,
                    x.to_f64_lossy(),
                    format!("density rises from {pd} to {d}"),
                );
            }
        }
        prev = Some((x, d));
    }

    for i in 2..grid.len() {
        let (x, y, z) = (grid[i - 2], grid[i - 1], grid[i]);
        let (fx, fy, fz) = (values[i - 2], values[i - 1], values[i]);
        let left = (fy - fx) / (y - x);
        let right = (fz - fy) / (z - y);
        // rounding in the two differences, scaled by their denominators
        let noise = eps * ((fx.abs() + fy.abs()) / (y - x) + (fy.abs() + fz.abs()) / (z - y));
        if right > left + noise {
            report.record(
                Check::Concavity,
                y.to_f64_lossy(),
                format!("slope rises from {left} to {right}"),
            );
        }
    }

    // Slowly growing atoms (ln(1 + 1e12) ≈ 27.6) miss the probe level; the
    // structural guarantee takes precedence over the sample.
    let far = expr.eval(T::of(UNBOUNDED_PROBE));
    if !(far > T::of(UNBOUNDED_LEVEL)) && !expr.analytically_unbounded() {
        report.record(
            Check::Unbounded,
            UNBOUNDED_PROBE,
            format!("value {far} does not exceed {UNBOUNDED_LEVEL:e}"),
        );
    }
    Ok(report)
}

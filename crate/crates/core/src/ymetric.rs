//! The μ-weighted L² norm and metric, the density-level functional, and the
//! proportionality relation.

use serde::Serialize;

use crate::error::Result;
use crate::funcrep::{check_grid, YoungExpr};
use crate::quad::{integrate_mu, tail_integral, QuadResult, Verdict};
use crate::scalar::{log_grid, Scalar};

/// Anything that can be sampled on `[0, ∞)`.
pub trait Evaluable<T> {
    fn value_at(&self, x: T) -> T;
}

impl<T: Scalar> Evaluable<T> for YoungExpr<T> {
    fn value_at(&self, x: T) -> T {
        self.eval(x)
    }
}

impl<T, F: Fn(T) -> T> Evaluable<T> for F {
    fn value_at(&self, x: T) -> T {
        self(x)
    }
}

/// `∫ f² dμ`
pub fn squared_norm_mu<T: Scalar, F: Evaluable<T> + ?Sized>(
    f: &F,
    tol: T,
) -> Result<QuadResult<T>> {
    integrate_mu(
        |x| {
            let y = f.value_at(x);
            y * y
        },
        tol,
    )
}

/// `‖Φ‖ = sqrt(∫ Φ² dμ)`. An unconverged integral is an error.
pub fn norm_mu<T: Scalar, F: Evaluable<T> + ?Sized>(f: &F, tol: T) -> Result<T> {
    Ok(squared_norm_mu(f, tol)?
        .converged_value()?
        .max(T::zero())
        .sqrt())
}

/// `d(f, g) = sqrt(∫ (f - g)² dμ)`.
pub fn metric_d<T, F, G>(f: &F, g: &G, tol: T) -> Result<T>
where
    T: Scalar,
    F: Evaluable<T> + ?Sized,
    G: Evaluable<T> + ?Sized,
{
    let r = integrate_mu(
        |x| {
            let diff = f.value_at(x) - g.value_at(x);
            diff * diff
        },
        tol,
    )?;
    Ok(r.converged_value()?.max(T::zero()).sqrt())
}

/// Symmetric matrix of pairwise distances; the diagonal is zero.
pub fn pairwise_distances<T: Scalar>(members: &[YoungExpr<T>], tol: T) -> Result<Vec<Vec<T>>> {
    let n = members.len();
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = metric_d(&members[i], &members[j], tol)?;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    InA,
    NotInA,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSource {
    AnalyticFlag,
    Numeric,
}

/// Value of `∫_1^∞ φ(t)/t dt` and the resulting class membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelVerdict<T> {
    /// Finite whenever membership is `InA`; `+∞` for `NotInA`.
    pub a_value: T,
    pub membership: Membership,
    pub source: LevelSource,
    /// The numeric tail integral, kept regardless of which source decided.
    pub numeric: QuadResult<T>,
}

/// Numeric-only classification from the tail integral of `φ(t)/t`.
pub fn density_level_numeric<T: Scalar>(phi: &YoungExpr<T>, tol: T) -> Result<LevelVerdict<T>> {
    let numeric = level_integral(phi, tol)?;
    let (a_value, membership) = match numeric.verdict {
        Verdict::Converged => (numeric.value, Membership::InA),
        Verdict::Divergent => (T::infinity(), Membership::NotInA),
        Verdict::Inconclusive => (numeric.value, Membership::Unknown),
    };
    Ok(LevelVerdict {
        a_value,
        membership,
        source: LevelSource::Numeric,
        numeric,
    })
}

fn level_integral<T: Scalar>(phi: &YoungExpr<T>, tol: T) -> Result<QuadResult<T>> {
    tail_integral(
        |t| match phi.density(t) {
            Ok(d) => d / t,
            Err(_) => T::nan(),
        },
        tol,
    )
}

/// Density-level classification. Analytic flags carried by the tree decide
/// membership when present; the numeric tail integral is the fallback and
/// always supplies the reported value when it converged.
pub fn density_level<T: Scalar>(phi: &YoungExpr<T>, tol: T) -> Result<LevelVerdict<T>> {
    let numeric_verdict = density_level_numeric(phi, tol)?;
    let Some(flag) = phi.a_flag() else {
        return Ok(numeric_verdict);
    };
    let numeric = numeric_verdict.numeric;
    let (a_value, membership) = if flag {
        (numeric.value, Membership::InA)
    } else {
        (T::infinity(), Membership::NotInA)
    };
    Ok(LevelVerdict {
        a_value,
        membership,
        source: LevelSource::AnalyticFlag,
        numeric,
    })
}

/// Relative tolerance for a constant ratio.
pub const PROPORTIONAL_RTOL: f64 = 1e-9;

/// 25 points over six decades, `[1e-2, 1e4]`.
pub fn proportionality_grid<T: Scalar>() -> Vec<T> {
    log_grid(1e-2, 1e4, 25)
}

/// Returns `c` with `ψ = c·φ` on the grid, or `None`.
///
/// The grid needs at least 16 positive points spanning four decades.
pub fn proportional<T: Scalar>(
    phi: &YoungExpr<T>,
    psi: &YoungExpr<T>,
    grid: &[T],
) -> Result<Option<T>> {
    let lo = grid.first().map(|x| x.to_f64_lossy()).unwrap_or(1.0);
    check_grid(grid, 16, lo, lo * 1e4)?;
    let ratios: Vec<T> = grid.iter().map(|&x| psi.eval(x) / phi.eval(x)).collect();
    if ratios.iter().any(|r| !r.is_finite() || !(*r > T::zero())) {
        return Ok(None);
    }
    let c = ratios[0];
    let rtol = T::tol(PROPORTIONAL_RTOL);
    if ratios.iter().all(|r| ((*r - c) / c).abs() <= rtol) {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

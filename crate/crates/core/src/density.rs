//! Explicit approximating sequences from the density-level class inside
//! `b`-fixed families, and a harness that measures their convergence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_b::{member_fixed, scale_to_b};
use crate::funcrep::{Node, YoungExpr};
use crate::scalar::Scalar;
use crate::ymetric::metric_d;

/// `Ψ_n = b·Φ^{n/(n+1)} / Φ(b)^{n/(n+1)}`.
///
/// Every term fixes `b` and carries the density-level flag; the sequence
/// converges to `b·Φ/Φ(b)` in the μ-metric.
pub fn power_approximant<T: Scalar>(phi: &YoungExpr<T>, b: T, n: usize) -> Result<YoungExpr<T>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            expected: "n >= 1",
        });
    }
    let exponent = T::of(n as f64) / T::of(n as f64 + 1.0);
    scale_to_b(&phi.clone().power_of(exponent)?, b)
}

/// `x ↦ (b^{1/j}·x)^{j/(j+1)}`, a `b`-fixed member of the density-level class.
pub fn root_map<T: Scalar>(b: T, j: usize) -> Result<YoungExpr<T>> {
    if j == 0 {
        return Err(Error::OutOfRange {
            name: "j",
            value: 0.0,
            expected: "j >= 1",
        });
    }
    let jf = T::of(j as f64);
    YoungExpr::id()
        .scale(b.powf(T::one() / jf))?
        .power_of(jf / (jf + T::one()))
}

/// Approximant `Δ_j` of a `b`-fixed hierarchy member `Δ`.
///
/// A convex node at the root is treated summand-wise,
/// `Δ_j = Σ t_i (Ψ_j ∘ Φ_i)`; any other tree is treated as a composition,
/// `Δ_j = Ψ_j ∘ Δ`, with `Ψ_j` from [`root_map`].
pub fn composition_approximant<T: Scalar>(
    delta: &YoungExpr<T>,
    b: T,
    j: usize,
) -> Result<YoungExpr<T>> {
    if !member_fixed(delta, b) {
        return Err(Error::NotFixed {
            b: b.to_f64_lossy(),
            value: delta.eval(b).to_f64_lossy(),
        });
    }
    let psi = root_map(b, j)?;
    match delta.node() {
        Node::Convex { weights, args } => YoungExpr::convex(
            weights.clone(),
            args.iter()
                .map(|a| YoungExpr::compose(psi.clone(), a.clone()))
                .collect(),
        ),
        _ => Ok(YoungExpr::compose(psi, delta.clone())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceVerdict {
    Converged,
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport<T> {
    /// `(n, d(target, seq(n)))` in increasing `n`.
    pub pairs: Vec<(usize, T)>,
    /// Smallest index from which the distances never increase, when that
    /// run covers at least the last two entries.
    pub monotone_from: Option<usize>,
    pub final_distance: T,
    pub threshold: T,
    pub verdict: ConvergenceVerdict,
}

impl<T: Scalar> ConvergenceReport<T> {
    fn from_pairs(pairs: Vec<(usize, T)>, threshold: T) -> Self {
        let last = pairs.len() - 1;
        let mut start = last;
        while start > 0 && pairs[start].1 <= pairs[start - 1].1 {
            start -= 1;
        }
        let monotone_from = if start < last || pairs.len() == 1 {
            Some(pairs[start].0)
        } else {
            None
        };
        let final_distance = pairs[last].1;
        let verdict = if final_distance <= threshold && monotone_from.is_some() {
            ConvergenceVerdict::Converged
        } else {
            ConvergenceVerdict::Stalled
        };
        Self {
            pairs,
            monotone_from,
            final_distance,
            threshold,
            verdict,
        }
    }

    pub fn distance_at(&self, n: usize) -> Option<T> {
        self.pairs.iter().find(|(i, _)| *i == n).map(|(_, d)| *d)
    }
}

/// Fibonacci indices `1, 2, 3, 5, 8, …` not exceeding `n_max`, with `n_max`
/// appended.
pub fn log_indices(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut a, mut b) = (1usize, 2usize);
    while a <= n_max {
        out.push(a);
        let next = a + b;
        a = b;
        b = next;
    }
    if out.last() != Some(&n_max) && n_max > 0 {
        out.push(n_max);
    }
    out
}

/// Distances `d(target, seq(n))` over [`log_indices`]`(n_max)`.
pub fn verify_convergence<T, S>(
    target: &YoungExpr<T>,
    seq: S,
    n_max: usize,
    threshold: T,
    tol: T,
) -> Result<ConvergenceReport<T>>
where
    T: Scalar,
    S: Fn(usize) -> Result<YoungExpr<T>>,
{
    if n_max < 10 {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: n_max as f64,
            expected: "n_max >= 10",
        });
    }
    verify_convergence_at(target, seq, &log_indices(n_max), threshold, tol)
}

/// Same as [`verify_convergence`] on an explicit increasing index list.
pub fn verify_convergence_at<T, S>(
    target: &YoungExpr<T>,
    seq: S,
    indices: &[usize],
    threshold: T,
    tol: T,
) -> Result<ConvergenceReport<T>>
where
    T: Scalar,
    S: Fn(usize) -> Result<YoungExpr<T>>,
{
    if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "indices must be non-empty and strictly increasing".into(),
        ));
    }
    let pairs = indices
        .iter()
        .map(|&n| Ok((n, metric_d(target, &seq(n)?, tol)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_pairs(pairs, threshold))
}

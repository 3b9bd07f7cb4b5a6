//! Finite measure spaces and the Lp identities built from the
//! positive-slope subclass of concave Young-functions.
//!
//! Infima over the whole subclass are certified from both sides: every
//! roster pair `(Δ, c)` with `cΔ > id` gives an upper witness, and the
//! explicit sequence `Δ_n = id + (1 - e^{-id})/n` with `c = 1` attains the
//! limit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcrep::YoungExpr;
use crate::scalar::{log_grid, Scalar};

/// Atoms with strictly positive finite weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasureSpace<T> {
    labels: Vec<String>,
    weights: Vec<T>,
}

impl<T: Scalar> DiscreteMeasureSpace<T> {
    pub fn new(atoms: Vec<(String, T)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Space("no atoms".into()));
        }
        if let Some((l, w)) = atoms
            .iter()
            .find(|(_, w)| !(*w > T::zero()) || !w.is_finite())
        {
            return Err(Error::Space(format!("atom `{l}` has weight {w}")));
        }
        let mut labels: Vec<&String> = atoms.iter().map(|(l, _)| l).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Space("duplicate atom labels".into()));
        }
        let (labels, weights) = atoms.into_iter().unzip();
        Ok(Self { labels, weights })
    }

    /// Unlabelled atoms named `a0, a1, …`.
    pub fn from_weights(weights: Vec<T>) -> Result<Self> {
        Self::new(
            weights
                .into_iter()
                .enumerate()
                .map(|(i, w)| (format!("a{i}"), w))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `λ(Ω)`
    pub fn total_mass(&self) -> T {
        self.weights.iter().copied().sum()
    }

    /// Measure of the atoms selected by `pred`, summed in atom order.
    pub fn measure_where(&self, values: &[T], pred: impl Fn(T) -> bool) -> T {
        self.weights
            .iter()
            .zip(values)
            .filter(|(_, v)| pred(**v))
            .map(|(w, _)| *w)
            .sum()
    }
}

/// Real values aligned with the atoms of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurableFn<T> {
    values: Vec<T>,
}

impl<T: Scalar> MeasurableFn<T> {
    pub fn new(space: &DiscreteMeasureSpace<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Space(format!(
                "{} values for {} atoms",
                values.len(),
                space.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Space("function values must be finite".into()));
        }
        Ok(Self { values })
    }

    /// Aligns `(label, value)` pairs with the atoms of `space`.
    pub fn from_labelled(space: &DiscreteMeasureSpace<T>, pairs: &[(String, T)]) -> Result<Self> {
        let values = space
            .labels()
            .iter()
            .map(|l| {
                let mut hits = pairs.iter().filter(|(k, _)| k == l);
                match (hits.next(), hits.next()) {
                    (Some((_, v)), None) => Ok(*v),
                    (None, _) => Err(Error::Space(format!("no value for atom `{l}`"))),
                    (Some(_), Some(_)) => Err(Error::Space(format!("atom `{l}` given twice"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if pairs.len() != values.len() {
            return Err(Error::Space("values given for unknown atoms".into()));
        }
        Self::new(space, values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn abs(&self) -> Vec<T> {
        self.values.iter().map(|v| v.abs()).collect()
    }
}

fn check_p<T: Scalar>(p: T) -> Result<()> {
    if p >= T::one() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "p",
            value: p.to_f64_lossy(),
            expected: "[1, inf)",
        })
    }
}

/// `(Σ λ_i |v_i|^p)^{1/p}` for raw atom values.
fn norm_of<T: Scalar>(space: &DiscreteMeasureSpace<T>, values: &[T], p: T) -> T {
    let s: T = space
        .weights()
        .iter()
        .zip(values)
        .map(|(w, v)| *w * v.abs().powf(p))
        .sum();
    s.powf(T::one() / p)
}

/// `‖f‖_p = (Σ λ_i |f_i|^p)^{1/p}`, `p ≥ 1`.
pub fn lp_norm<T: Scalar>(space: &DiscreteMeasureSpace<T>, f: &MeasurableFn<T>, p: T) -> Result<T> {
    check_p(p)?;
    Ok(norm_of(space, f.values(), p))
}

/// `Δ_n = id + (1 - e^{-id})/n`.
pub fn witness_fn<T: Scalar>(n: usize) -> Result<YoungExpr<T>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            expected: "n >= 1",
        });
    }
    YoungExpr::id_plus_soft(T::one() / T::of(n as f64))
}

/// Relative agreement required of the last five ratios `Φ(t)/t`.
pub const SLOPE_RTOL: f64 = 1e-6;
/// Slope above which a function counts as having positive slope.
pub const SLOPE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeEstimate<T> {
    /// `Φ(t)/t` at `t = 2^40`.
    pub last_ratio: T,
    /// Whether the last five sampled ratios agree to [`SLOPE_RTOL`].
    pub numeric_stable: bool,
    /// Structural limit from the tree.
    pub analytic: T,
    /// The reported slope: analytic.
    pub slope: T,
    pub positive: bool,
}

/// `lim Φ(t)/t`, sampled at `t = 2^k` for `k = 20..=40` and cross-checked
/// against the structural limit carried by the tree, which decides.
pub fn asymptotic_slope<T: Scalar>(phi: &YoungExpr<T>) -> SlopeEstimate<T> {
    let ratios: Vec<T> = (20..=40)
        .map(|k| {
            let t = T::of(2f64.powi(k));
            phi.eval(t) / t
        })
        .collect();
    let tail = &ratios[ratios.len() - 5..];
    let last_ratio = tail[4];
    let numeric_stable = last_ratio > T::zero()
        && tail
            .iter()
            .all(|r| ((*r - last_ratio) / last_ratio).abs() <= T::tol(SLOPE_RTOL));
    let analytic = phi.analytic_slope();
    SlopeEstimate {
        last_ratio,
        numeric_stable,
        analytic,
        slope: analytic,
        positive: analytic > T::of(SLOPE_FLOOR),
    }
}

/// Numeric-only slope; an error when the sampled ratios do not settle.
pub fn asymptotic_slope_numeric<T: Scalar>(phi: &YoungExpr<T>) -> Result<T> {
    let est = asymptotic_slope(phi);
    if est.numeric_stable {
        Ok(est.last_ratio)
    } else if est.last_ratio <= T::of(SLOPE_FLOOR) {
        Ok(T::zero())
    } else {
        Err(Error::SlopeInconclusive)
    }
}

/// `T_Δ = {c ≥ 1 : cΔ > id on (0, ∞)}` as its infimum and whether the
/// infimum itself belongs to the set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingWindow<T> {
    pub c_inf: T,
    pub attained: bool,
}

impl<T: Scalar> ScalingWindow<T> {
    /// A member of `T_Δ`: `c_inf` when attained, otherwise `c_inf·(1 + 1e-6)`.
    pub fn member(&self) -> T {
        if self.attained {
            self.c_inf
        } else {
            self.c_inf * T::of(1.0 + 1e-6)
        }
    }
}

/// Grid used for pointwise checks against the identity: 121 points on `[1e-6, 1e12]`.
pub fn verification_grid<T: Scalar>() -> Vec<T> {
    log_grid(1e-6, 1e12, 121)
}

/// `c_inf = max(1, sup_t t/Δ(t), 1/L)` with `L` the asymptotic slope.
pub fn min_scaling<T: Scalar>(delta: &YoungExpr<T>) -> Result<ScalingWindow<T>> {
    let slope = asymptotic_slope(delta);
    if !slope.positive {
        return Err(Error::ZeroSlope);
    }
    let grid = verification_grid::<T>();
    let sup = grid
        .iter()
        .map(|&t| t / delta.eval(t))
        .fold(T::zero(), T::max);
    let c_inf = T::one().max(sup).max(T::one() / slope.slope);
    let attained = grid.iter().all(|&t| c_inf * delta.eval(t) > t);
    Ok(ScalingWindow { c_inf, attained })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition<T> {
    pub c: T,
    /// `Δ(0) = 0` for `Δ = cΦ - id`.
    pub vanishes_at_origin: bool,
    pub positive: bool,
    /// `(y-x)δ(y) ≤ Δ(y) - Δ(x) ≤ (y-x)δ(x)` on consecutive grid pairs.
    pub slope_chain: bool,
    /// Strict concavity: the chain holds and `δ` is not constant.
    pub strict: bool,
    /// First grid point where a check failed.
    pub witness: Option<T>,
}

impl<T: Scalar> Decomposition<T> {
    pub fn passed(&self) -> bool {
        self.vanishes_at_origin && self.positive && self.slope_chain
    }
}

/// Checks `cΦ = id + Δ` with `Δ` concave, positive and vanishing at 0.
///
/// Fails with [`Error::NotAboveIdentity`] when `cΦ(t) ≤ t` somewhere on the
/// verification grid.
pub fn decompose<T: Scalar>(phi: &YoungExpr<T>, c: T) -> Result<Decomposition<T>> {
    if !(c >= T::one()) || !c.is_finite() {
        return Err(Error::OutOfRange {
            name: "c",
            value: c.to_f64_lossy(),
            expected: "[1, inf)",
        });
    }
    let grid = verification_grid::<T>();
    if let Some(&t) = grid.iter().find(|&&t| !(c * phi.eval(t) > t)) {
        return Err(Error::NotAboveIdentity {
            t: t.to_f64_lossy(),
        });
    }
    let big_delta = |t: T| c * phi.eval(t) - t;
    let small_delta = |t: T| phi.density(t).map(|d| c * d - T::one());
    let eps = T::epsilon() * T::of(16.0);

    let vanishes_at_origin = big_delta(T::zero()) == T::zero();
    let mut witness = None;
    let positive = grid.iter().all(|&t| {
        let ok = big_delta(t) > T::zero();
        if !ok {
            witness.get_or_insert(t);
        }
        ok
    });

    let mut slope_chain = true;
    for w in grid.windows(2) {
        let (x, y) = (w[0], w[1]);
        let (dx, dy) = (small_delta(x)?, small_delta(y)?);
        let rise = big_delta(y) - big_delta(x);
        // cancellation in cΦ(t) - t dominates the rounding of `rise`
        let noise = eps * (c * (phi.eval(x) + phi.eval(y)) + x + y);
        if rise < (y - x) * dy - noise || rise > (y - x) * dx + noise {
            slope_chain = false;
            witness.get_or_insert(y);
        }
    }
    let strict = slope_chain && !phi.is_linear();
    Ok(Decomposition {
        c,
        vanishes_at_origin,
        positive,
        slope_chain,
        strict,
        witness,
    })
}

/// Default positive-slope roster: catalog members plus fast-saturating
/// members `Δ_{k,m}(x) = mx + k(1 - e^{-mx})` that push `Φ(x)/Φ(1)` towards 1
/// for small `x`, and `id + k(1 - e^{-id})` for `k` up to `n_max`.
pub fn stress_roster<T: Scalar>(n_max: usize) -> Result<Vec<YoungExpr<T>>> {
    let mut out = vec![
        YoungExpr::id(),
        YoungExpr::id().scale(T::of(0.5))?,
        YoungExpr::sum(vec![YoungExpr::id(), YoungExpr::log1p()])?,
        YoungExpr::sum(vec![YoungExpr::id(), YoungExpr::power(T::of(0.5))?])?,
        YoungExpr::compose(
            YoungExpr::id_plus_soft(T::one())?,
            YoungExpr::id_plus_soft(T::of(5.0))?,
        ),
    ];
    let mut k = 1usize;
    while k <= n_max.max(1) {
        out.push(YoungExpr::id_plus_soft(T::of(k as f64))?);
        k *= 10;
    }
    for (k, m) in [(1e2, 1e1), (1e4, 1e2), (1e6, 1e3), (1e8, 1e4)] {
        out.push(YoungExpr::compose(
            YoungExpr::id_plus_soft(T::of(k))?,
            YoungExpr::id().scale(T::of(m))?,
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport<T> {
    pub norm: T,
    /// `Φ(1)^{-1}‖Φ∘|f|‖_p` for the identity.
    pub identity_value: T,
    /// `‖f‖_p + λ(Ω)^{1/p}`
    pub upper_bound: T,
    /// `‖f‖_p + λ(Ω)`, checked informationally.
    pub printed_bound: T,
    /// Normalised value per roster member.
    pub values: Vec<T>,
    pub sup_value: T,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// Roster indices whose value exceeds `printed_bound`.
    pub printed_bound_violations: Vec<usize>,
}

impl<T: Scalar> SandwichReport<T> {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `‖f‖_p ≤ sup_Φ Φ(1)^{-1}‖Φ∘|f|‖_p ≤ ‖f‖_p + λ(Ω)^{1/p}` over `roster`.
pub fn sandwich_check<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    f: &MeasurableFn<T>,
    p: T,
    roster: &[YoungExpr<T>],
) -> Result<SandwichReport<T>> {
    let norm = lp_norm(space, f, p)?;
    let abs = f.abs();
    let value = |phi: &YoungExpr<T>| {
        let mapped: Vec<T> = abs.iter().map(|&v| phi.eval(v)).collect();
        norm_of(space, &mapped, p) / phi.eval(T::one())
    };
    let identity_value = value(&YoungExpr::id());
    let mass = space.total_mass();
    let upper_bound = norm + mass.powf(T::one() / p);
    let printed_bound = norm + mass;
    let values: Vec<T> = roster.iter().map(value).collect();
    let sup_value = values.iter().copied().fold(identity_value, T::max);
    let slack = T::tol(1e-12) * upper_bound.max(T::one());
    let upper_ok = values.iter().all(|v| *v <= upper_bound + slack);
    let printed_bound_violations = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > printed_bound + slack)
        .map(|(i, _)| i)
        .collect();
    Ok(SandwichReport {
        norm,
        identity_value,
        upper_bound,
        printed_bound,
        values,
        sup_value,
        lower_ok: (identity_value - norm).abs() <= T::tol(1e-12) * norm.max(T::one()),
        upper_ok,
        printed_bound_violations,
    })
}

/// `λ(Δ∘|f| ≥ ε/c)`
pub fn tail_measure<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    f: &MeasurableFn<T>,
    delta: &YoungExpr<T>,
    c: T,
    eps: T,
) -> T {
    let mapped: Vec<T> = f.values().iter().map(|v| delta.eval(v.abs())).collect();
    let level = eps / c;
    space.measure_where(&mapped, |v| v >= level)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailReport<T> {
    /// `λ(|f| ≥ ε)`
    pub direct: T,
    /// `(n, λ(Δ_n∘|f| ≥ ε))`
    pub witnesses: Vec<(usize, T)>,
    pub infimum: T,
    /// First `n` at which the infimum equals the direct value.
    pub reached_at: Option<usize>,
    /// Every witness and roster pair is bounded below by the direct value.
    pub one_sided_ok: bool,
}

impl<T: Scalar> TailReport<T> {
    pub fn passed(&self) -> bool {
        self.one_sided_ok && self.reached_at.is_some()
    }
}

/// Tail identity `λ(|f| ≥ ε) = inf_{Δ, c∈T_Δ} λ(Δ∘|f| ≥ ε/c)`, checked with
/// the witness sequence for `n = 1..=n_max` and with every roster member at
/// `c` in its scaling window.
pub fn tail_identity<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    f: &MeasurableFn<T>,
    eps: T,
    n_max: usize,
    roster: &[YoungExpr<T>],
) -> Result<TailReport<T>> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: 0.0,
            expected: "n_max >= 1",
        });
    }
    if !(eps >= T::zero()) || !eps.is_finite() {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps.to_f64_lossy(),
            expected: "[0, inf)",
        });
    }
    let abs = f.abs();
    let direct = space.measure_where(&abs, |v| v >= eps);
    let slack = T::tol(1e-12);
    let mut witnesses = Vec::with_capacity(n_max);
    let mut infimum = T::infinity();
    let mut reached_at = None;
    let mut one_sided_ok = true;
    for n in 1..=n_max {
        let w = tail_measure(space, f, &witness_fn(n)?, T::one(), eps);
        one_sided_ok &= w >= direct - slack;
        infimum = infimum.min(w);
        if reached_at.is_none() && infimum == direct {
            reached_at = Some(n);
        }
        witnesses.push((n, w));
    }
    for delta in roster {
        for c in scaling_choices(delta)? {
            one_sided_ok &= tail_measure(space, f, delta, c, eps) >= direct - slack;
        }
    }
    Ok(TailReport {
        direct,
        witnesses,
        infimum,
        reached_at,
        one_sided_ok,
    })
}

/// Scaling constants probed per roster member: the smallest member of the
/// window, then 2× and 10× it.
fn scaling_choices<T: Scalar>(delta: &YoungExpr<T>) -> Result<[T; 3]> {
    let c = min_scaling(delta)?.member();
    Ok([c, c * T::of(2.0), c * T::of(10.0)])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormIdentityReport<T> {
    pub norm: T,
    /// `(n, ‖Δ_n∘|f|‖_p)` with `c = 1`.
    pub witnesses: Vec<(usize, T)>,
    pub monotone: bool,
    /// `max(1e-9, 2λ(Ω)^{1/p}/n_max)`
    pub tolerance: T,
    pub final_gap: T,
    /// `c‖Δ∘|f|‖_p ≥ ‖f‖_p` for all witness and roster pairs.
    pub one_sided_ok: bool,
}

impl<T: Scalar> NormIdentityReport<T> {
    pub fn passed(&self) -> bool {
        self.monotone && self.one_sided_ok && self.final_gap <= self.tolerance
    }
}

/// `‖f‖_p = inf_{Δ, c∈T_Δ} c‖Δ∘|f|‖_p` via the witness sequence and roster.
pub fn norm_identity<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    f: &MeasurableFn<T>,
    p: T,
    n_max: usize,
    roster: &[YoungExpr<T>],
) -> Result<NormIdentityReport<T>> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: 0.0,
            expected: "n_max >= 1",
        });
    }
    let norm = lp_norm(space, f, p)?;
    let abs = f.abs();
    let scaled_norm = |delta: &YoungExpr<T>, c: T| {
        let mapped: Vec<T> = abs.iter().map(|&v| delta.eval(v)).collect();
        c * norm_of(space, &mapped, p)
    };
    let slack = T::tol(1e-12) * norm.max(T::one());
    let mut witnesses = Vec::with_capacity(n_max);
    let mut one_sided_ok = true;
    for n in 1..=n_max {
        let w = scaled_norm(&witness_fn(n)?, T::one());
        one_sided_ok &= w >= norm - slack;
        witnesses.push((n, w));
    }
    for delta in roster {
        for c in scaling_choices(delta)? {
            one_sided_ok &= scaled_norm(delta, c) >= norm - slack;
        }
    }
    let monotone = witnesses.windows(2).all(|w| w[1].1 <= w[0].1);
    let tolerance =
        T::tol(1e-9).max(T::of(2.0) * space.total_mass().powf(T::one() / p) / T::of(n_max as f64));
    let final_gap = witnesses[n_max - 1].1 - norm;
    Ok(NormIdentityReport {
        norm,
        witnesses,
        monotone,
        tolerance,
        final_gap,
        one_sided_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoverReport<T> {
    pub y: T,
    /// `min_{n ≤ n_max} Δ_n(y) = Δ_{n_max}(y)`
    pub value: T,
    pub gap: T,
    pub within: bool,
}

/// Recovers `y ≥ 0` as the infimum of `Δ_n(y)`; the gap lies in `[0, 1/n_max]`.
pub fn scalar_recover<T: Scalar>(y: T, n_max: usize) -> Result<RecoverReport<T>> {
    if !(y >= T::zero()) || !y.is_finite() {
        return Err(Error::OutOfRange {
            name: "y",
            value: y.to_f64_lossy(),
            expected: "[0, inf)",
        });
    }
    if n_max == 0 {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: 0.0,
            expected: "n_max >= 1",
        });
    }
    let value = (1..=n_max)
        .map(|n| witness_fn::<T>(n).map(|d| d.eval(y)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(T::infinity(), T::min);
    let gap = value - y;
    // the subtraction is exact only to an ulp of y
    let slack = T::of(4.0) * T::epsilon() * y;
    Ok(RecoverReport {
        y,
        value,
        gap,
        within: gap >= -slack && gap <= T::one() / T::of(n_max as f64) + slack,
    })
}

/// The same recovery through the norm of the constant function `y` on
/// `space`, divided by `λ(Ω)^{1/p}`.
pub fn scalar_recover_via_space<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    y: T,
    p: T,
    n_max: usize,
) -> Result<T> {
    check_p(p)?;
    let f = MeasurableFn::new(space, vec![y; space.len()])?;
    let report = norm_identity(space, &f, p, n_max, &[])?;
    let best = report
        .witnesses
        .iter()
        .map(|(_, w)| *w)
        .fold(T::infinity(), T::min);
    Ok(best / space.total_mass().powf(T::one() / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type E = YoungExpr<f64>;

    fn two_atoms() -> (DiscreteMeasureSpace<f64>, MeasurableFn<f64>) {
        let s = DiscreteMeasureSpace::from_weights(vec![1.0, 1.0]).unwrap();
        let f = MeasurableFn::new(&s, vec![3.0, 4.0]).unwrap();
        (s, f)
    }

    #[test]
    fn norms() {
        let (s, f) = two_atoms();
        assert_eq!(lp_norm(&s, &f, 1.0).unwrap(), 7.0);
        assert_eq!(lp_norm(&s, &f, 2.0).unwrap(), 5.0);
        assert!(lp_norm(&s, &f, 0.5).is_err());
        let one = DiscreteMeasureSpace::from_weights(vec![1.0]).unwrap();
        let g = MeasurableFn::new(&one, vec![2.0]).unwrap();
        assert_eq!(lp_norm(&one, &g, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn space_validation() {
        assert!(DiscreteMeasureSpace::from_weights(vec![1.0, 0.0]).is_err());
        assert!(DiscreteMeasureSpace::<f64>::from_weights(vec![]).is_err());
        assert!(DiscreteMeasureSpace::new(vec![("a".into(), 1.0), ("a".into(), 2.0)]).is_err());
        let s = DiscreteMeasureSpace::new(vec![("x".into(), 1.0), ("y".into(), 2.0)]).unwrap();
        let f = MeasurableFn::from_labelled(&s, &[("y".into(), 5.0), ("x".into(), 4.0)]).unwrap();
        assert_eq!(f.values(), &[4.0, 5.0]);
        assert!(MeasurableFn::from_labelled(&s, &[("x".into(), 1.0)]).is_err());
        assert!(MeasurableFn::new(&s, vec![1.0]).is_err());
    }

    #[test]
    fn slopes() {
        assert_eq!(asymptotic_slope(&E::id()).slope, 1.0);
        let p = asymptotic_slope(&E::power(0.5).unwrap());
        assert_eq!(p.slope, 0.0);
        assert!(!p.positive);
        let s = asymptotic_slope(&E::id_plus_soft(1.0).unwrap());
        assert_eq!(s.slope, 1.0);
        assert!(s.numeric_stable);
        assert_relative_eq!(
            asymptotic_slope_numeric(&E::id_plus_soft(1.0).unwrap()).unwrap(),
            1.0,
            max_relative = 1e-9
        );
        assert!(asymptotic_slope_numeric(&E::power(0.5).unwrap()).is_err());
    }

    #[test]
    fn scaling_windows() {
        let w = min_scaling(&E::id_plus_soft(1.0).unwrap()).unwrap();
        assert_eq!(
            w,
            ScalingWindow {
                c_inf: 1.0,
                attained: true
            }
        );
        let w = min_scaling(&E::id().scale(0.5).unwrap()).unwrap();
        assert_eq!(
            w,
            ScalingWindow {
                c_inf: 2.0,
                attained: false
            }
        );
        let w = min_scaling(&E::id()).unwrap();
        assert_eq!(
            w,
            ScalingWindow {
                c_inf: 1.0,
                attained: false
            }
        );
        assert_eq!(min_scaling(&E::power(0.5).unwrap()), Err(Error::ZeroSlope));
    }

    #[test]
    fn decompositions() {
        let d = decompose(&E::id_plus_soft(1.0).unwrap(), 1.0).unwrap();
        assert!(d.passed() && d.strict, "{d:?}");
        let d = decompose(&E::id(), 2.0).unwrap();
        assert!(d.passed() && !d.strict);
        assert!(matches!(
            decompose(&E::power(0.5).unwrap(), 5.0),
            Err(Error::NotAboveIdentity { .. })
        ));
    }

    #[test]
    fn sandwich_examples() {
        let one = DiscreteMeasureSpace::from_weights(vec![1.0]).unwrap();
        let f = MeasurableFn::new(&one, vec![1.0]).unwrap();
        let r = sandwich_check(&one, &f, 1.0, &stress_roster(100).unwrap()).unwrap();
        assert_eq!((r.norm, r.identity_value, r.upper_bound), (1.0, 1.0, 2.0));
        assert!(r.passed());

        let (s, f) = two_atoms();
        let r = sandwich_check(&s, &f, 1.0, &stress_roster(100).unwrap()).unwrap();
        assert!(r.passed());
        assert!(r.values.iter().all(|v| *v <= 9.0 + 1e-12));
    }

    #[test]
    fn tail_examples() {
        let (s, f) = two_atoms();
        let r = tail_identity(&s, &f, 3.5, 16, &[]).unwrap();
        assert_eq!(r.direct, 1.0);
        assert_eq!(r.witnesses[0], (1, 2.0));
        assert_eq!(r.witnesses[1], (2, 1.0));
        assert_eq!(r.reached_at, Some(2));
        assert!(r.passed());
        let z = tail_identity(&s, &f, 0.0, 3, &[]).unwrap();
        assert_eq!((z.direct, z.infimum), (2.0, 2.0));
        let zero = MeasurableFn::new(&s, vec![0.0, 0.0]).unwrap();
        let r0 = tail_identity(&s, &zero, 1.0, 3, &[]).unwrap();
        assert_eq!((r0.direct, r0.infimum), (0.0, 0.0));
    }

    #[test]
    fn norm_identity_examples() {
        let (s, f) = two_atoms();
        let r = norm_identity(&s, &f, 1.0, 10, &stress_roster(10).unwrap()).unwrap();
        assert_relative_eq!(r.witnesses[9].1, 7.193_189_7, max_relative = 1e-8);
        assert!(r.passed());
        let zero = MeasurableFn::new(&s, vec![0.0, 0.0]).unwrap();
        let r0 = norm_identity(&s, &zero, 2.0, 5, &[]).unwrap();
        assert_eq!(r0.norm, 0.0);
        assert!(r0.witnesses.iter().all(|(_, w)| *w == 0.0));
    }

    #[test]
    fn recover_examples() {
        let r = scalar_recover(5.0, 100).unwrap();
        assert_relative_eq!(
            r.value,
            5.0 + (1.0 - (-5f64).exp()) / 100.0,
            max_relative = 1e-15
        );
        assert!(r.within);
        assert_eq!(scalar_recover(0.0, 10).unwrap().value, 0.0);
        assert_relative_eq!(
            scalar_recover(1.0, 1).unwrap().value,
            1.632_120_6,
            max_relative = 1e-7
        );
        assert!(scalar_recover(-1.0, 3).is_err());
        let s = DiscreteMeasureSpace::from_weights(vec![0.3, 0.2]).unwrap();
        assert_relative_eq!(
            scalar_recover_via_space(&s, 5.0, 2.0, 100).unwrap(),
            scalar_recover(5.0, 100).unwrap().value,
            max_relative = 1e-14
        );
    }
}

//! Quadrature against the finite measure `dμ = dx/(x+1)^4` on `[0, ∞)` and
//! tail integrals on `[1, ∞)` with a convergence/divergence verdict.
//!
//! Finite intervals use globally adaptive bisection driven by a 7/15-point
//! Gauss–Kronrod pair. The μ-integral is mapped onto `[0, 1]` with
//! `x = 1/v - 1`, which turns `dx/(x+1)^4` into `v² dv` exactly. Tails are
//! summed over dyadic blocks `[2^{k-1}, 2^k]`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Maximum number of panels held by one adaptive integration.
pub const PANEL_BUDGET: usize = 20_000;

/// Number of dyadic blocks summed by [`tail_integral`].
pub const TAIL_DOUBLINGS: usize = 48;

/// Increment ratio below which tail blocks are treated as geometrically decaying.
pub const DECAY_RATIO: f64 = 0.9;

/// Increment ratio that, held over [`DIVERGENCE_RUN`] doublings, marks a divergent tail.
pub const HARMONIC_RATIO: f64 = 0.69;
pub const DIVERGENCE_RUN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Divergent,
    Inconclusive,
}

/// Integral value, error estimate and verdict. A divergent result carries the
/// last partial integral as its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error_est: T,
    pub verdict: Verdict,
}

impl<T: Scalar> QuadResult<T> {
    pub fn is_converged(&self) -> bool {
        self.verdict == Verdict::Converged
    }

    /// The value, or an error when the verdict is not `Converged`.
    pub fn converged_value(&self) -> Result<T> {
        if self.is_converged() {
            Ok(self.value)
        } else {
            Err(Error::QuadratureInconclusive {
                estimate: self.value.to_f64_lossy(),
                error: self.abs_error_est.to_f64_lossy(),
            })
        }
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
    /// Rounding level `50·eps·∫|f|` below which `err` is never reported.
    floor: T,
}

impl<T: Scalar> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Panel<T> {}
impl<T: Scalar> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Panel<T> {
    // Largest reducible error first; ties broken by position so the heap
    // order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.err - self.floor)
            .partial_cmp(&(other.err - other.floor))
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn gauss_kronrod<T, F>(f: &F, a: T, b: T) -> Result<Panel<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let half = T::of(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let eval = |x: T| -> Result<T> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand {
                at: x.to_f64_lossy(),
            })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * T::of(WGK[7]);
    let mut gauss = fc * T::of(WG[3]);
    let mut abs_sum = fc.abs() * T::of(WGK[7]);
    for j in 0..7 {
        let dx = radius * T::of(XGK[j]);
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        kronrod = kronrod + T::of(WGK[j]) * (f1 + f2);
        abs_sum = abs_sum + T::of(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::of(WG[j / 2]) * (f1 + f2);
        }
    }
    let value = kronrod * radius;
    let diff = ((kronrod - gauss) * radius).abs();
    let floor = T::of(50.0) * T::epsilon() * abs_sum * radius.abs();
    Ok(Panel {
        a,
        b,
        value,
        err: diff.max(floor),
        floor,
    })
}

/// Adaptive integral of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Panels are split at their midpoint, largest reducible error first, until
/// the summed error estimate falls below `tol` or [`PANEL_BUDGET`] panels
/// exist. The final sum runs left to right over the panels.
///
/// Each panel's error is bounded below by its rounding floor
/// `50·eps·∫|f|`; `tol` applies to the part of the estimate above that
/// floor, which is negligible unless the integral is large.
pub fn integrate<T, F>(f: F, a: T, b: T, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !(tol > T::zero()) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol.to_f64_lossy(),
            expected: "(0, inf)",
        });
    }
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Precondition(format!(
            "integration bounds [{a}, {b}] must be finite and ordered"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_error_est: T::zero(),
            verdict: Verdict::Converged,
        });
    }

    let first = gauss_kronrod(&f, a, b)?;
    let mut total_err = first.err;
    let mut total_floor = first.floor;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let half = T::of(0.5);

    while total_err > tol + total_floor && heap.len() < PANEL_BUDGET {
        let worst = heap.pop().expect("non-empty heap");
        let mid = half * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot split further in this precision
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        total_err = total_err - worst.err + left.err + right.err;
        total_floor = total_floor - worst.floor + left.floor + right.floor;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let value = panels.iter().map(|p| p.value).sum();
    // recompute to avoid drift from the running update
    let abs_error_est: T = panels.iter().map(|p| p.err).sum();
    let floor: T = panels.iter().map(|p| p.floor).sum();
    let verdict = if abs_error_est <= tol + floor {
        Verdict::Converged
    } else {
        Verdict::Inconclusive
    };
    Ok(QuadResult {
        value,
        abs_error_est,
        verdict,
    })
}

/// `∫ g dμ = ∫_0^∞ g(x)/(x+1)^4 dx`, computed as `∫_0^1 g(1/v - 1) v² dv`.
///
/// `g` must be defined on `[0, ∞)` and grow at most quadratically so that the
/// transformed integrand stays bounded. A non-finite integrand value aborts
/// with the offending `v`.
pub fn integrate_mu<T, F>(g: F, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let transformed = |v: T| {
        let x = T::one() / v - T::one();
        g(x) * v * v
    };
    integrate(transformed, T::zero(), T::one(), tol)
}

/// `∫_1^∞ ψ(t) dt` for positive non-increasing `ψ`, by dyadic blocks.
///
/// Block `k` covers `[2^{k-1}, 2^k]`. While consecutive block ratios `r`
/// stay below [`DECAY_RATIO`] the remaining tail is extrapolated
/// geometrically as `J_k·r/(1-r)`; the result is `Converged` once two
/// successive extrapolated totals differ by less than the tolerance left
/// after the blocks' own quadrature error. A run of [`DIVERGENCE_RUN`]
/// ratios at or above [`HARMONIC_RATIO`] without convergence is reported as
/// `Divergent` (a harmonic tail has ratio 1); blocks whose extrapolated
/// totals are still contracting geometrically do not count towards the run,
/// since `t^{-1-s}` tails with `s < 0.53` also have ratios above 0.69. Ratios above 2 cannot come from
/// a non-increasing `ψ` and yield `Inconclusive`.
pub fn tail_integral<T, F>(psi: F, tol: T) -> Result<QuadResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !(tol > T::zero()) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol.to_f64_lossy(),
            expected: "(0, inf)",
        });
    }
    let block_tol = tol / T::of(4.0 * TAIL_DOUBLINGS as f64);
    let two = T::of(2.0);
    let decay = T::of(DECAY_RATIO);
    let harmonic = T::of(HARMONIC_RATIO);

    let mut partial = T::zero();
    let mut quad_err = T::zero();
    let mut prev_block: Option<T> = None;
    let mut prev_estimate: Option<T> = None;
    let mut prev_change: Option<T> = None;
    let mut streak = 0usize;
    let mut lo = T::one();

    for _ in 1..=TAIL_DOUBLINGS {
        let hi = lo * two;
        let block = integrate(&psi, lo, hi, block_tol)?;
        if !block.is_converged() {
            return Ok(QuadResult {
                value: partial + block.value,
                abs_error_est: quad_err + block.abs_error_est,
                verdict: Verdict::Inconclusive,
            });
        }
        partial = partial + block.value;
        quad_err = quad_err + block.abs_error_est;
        let j = block.value;
        lo = hi;

        let Some(pj) = prev_block.replace(j) else {
            continue;
        };
        if !(pj > T::zero()) || j < T::zero() {
            return Ok(QuadResult {
                value: partial,
                abs_error_est: quad_err,
                verdict: Verdict::Inconclusive,
            });
        }
        let r = j / pj;
        if r > two * (T::one() + T::tol(1e-9)) {
            return Ok(QuadResult {
                value: partial,
                abs_error_est: quad_err,
                verdict: Verdict::Inconclusive,
            });
        }

        let mut contracting = false;
        if r < decay {
            let estimate = partial + j * r / (T::one() - r);
            if let Some(pe) = prev_estimate {
                let change = (estimate - pe).abs();
                if change + quad_err <= tol {
                    return Ok(QuadResult {
                        value: estimate,
                        abs_error_est: change + quad_err,
                        verdict: Verdict::Converged,
                    });
                }
                contracting = prev_change.is_some_and(|pc| change <= decay * pc);
                prev_change = Some(change);
            }
            prev_estimate = Some(estimate);
        } else {
            prev_estimate = None;
            prev_change = None;
        }

        if r >= harmonic && !contracting {
            streak += 1;
            if streak >= DIVERGENCE_RUN {
                return Ok(QuadResult {
                    value: partial,
                    abs_error_est: quad_err,
                    verdict: Verdict::Divergent,
                });
            }
        } else {
            streak = 0;
        }
    }

    Ok(QuadResult {
        value: prev_estimate.unwrap_or(partial),
        abs_error_est: quad_err,
        verdict: Verdict::Inconclusive,
    })
}

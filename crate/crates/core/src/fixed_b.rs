//! Families of functions fixing a point `b`, their composition/convex
//! hierarchies, set distances between finite rosters, and the order and
//! separation structure across different `b`.
//!
//! Infinite families are represented by finite rosters; suprema and infima
//! are exact over the listed members only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcrep::{WeightVector, YoungExpr};
use crate::scalar::Scalar;
use crate::ymetric::{metric_d, pairwise_distances};

/// Relative tolerance (scaled by `max(1, b)`) for `Φ(b) = b`.
pub const FIXED_TOL: f64 = 1e-9;

/// Upper limit on members produced by one [`gen_hierarchy`] call.
pub const HIERARCHY_CAP: usize = 512;

/// Caveat attached to every report computed over rosters.
pub const ROSTER_CAVEAT: &str =
    "sup/inf taken over the finite roster only; not a statement about the full family";

/// Finite list of functions standing in for a family, optionally fixing `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct FnRoster<T> {
    label: String,
    b: Option<T>,
    members: Vec<YoungExpr<T>>,
}

impl<T: Scalar> FnRoster<T> {
    /// Checks that the roster is non-empty and, when `b` is given, that every
    /// member fixes it.
    pub fn new(label: impl Into<String>, b: Option<T>, members: Vec<YoungExpr<T>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyOperands("roster"));
        }
        if let Some(b) = b {
            check_b(b)?;
            if let Some(m) = members.iter().find(|m| !member_fixed(m, b)) {
                return Err(Error::NotFixed {
                    b: b.to_f64_lossy(),
                    value: m.eval(b).to_f64_lossy(),
                });
            }
        }
        Ok(Self {
            label: label.into(),
            b,
            members,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn b(&self) -> Option<T> {
        self.b
    }

    pub fn members(&self) -> &[YoungExpr<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_b<T: Scalar>(b: T) -> Result<()> {
    if b > T::zero() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "b",
            value: b.to_f64_lossy(),
            expected: "(0, inf)",
        })
    }
}

/// `b·Φ/Φ(b)`, the member of the `b`-fixed family proportional to `Φ`.
pub fn scale_to_b<T: Scalar>(phi: &YoungExpr<T>, b: T) -> Result<YoungExpr<T>> {
    check_b(b)?;
    let at_b = phi.eval(b);
    if !(at_b > T::zero()) || !at_b.is_finite() {
        return Err(Error::Precondition(format!(
            "Φ(b) = {at_b} must be positive and finite"
        )));
    }
    phi.clone().scale(b / at_b)
}

/// `|Φ(b) - b| ≤ 1e-9·max(1, b)`.
pub fn member_fixed<T: Scalar>(phi: &YoungExpr<T>, b: T) -> bool {
    (phi.eval(b) - b).abs() <= T::tol(FIXED_TOL) * b.max(T::one())
}

/// Output of [`gen_hierarchy`].
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy<T> {
    pub roster: FnRoster<T>,
    /// Analytic density-level flag per member.
    pub in_a: Vec<bool>,
    /// Members that would have been produced without the cap, when the cap
    /// was hit. `None` in the count means it overflowed `u64`.
    pub truncated: Option<Option<u64>>,
}

impl<T: Scalar> Hierarchy<T> {
    /// Members carrying the density-level flag.
    pub fn a_members(&self) -> Vec<&YoungExpr<T>> {
        self.roster
            .members()
            .iter()
            .zip(&self.in_a)
            .filter_map(|(m, f)| f.then_some(m))
            .collect()
    }
}

/// Level-`n` roster generated from `b`-fixed seeds.
///
/// Level 1 returns the seeds. For `n ≥ 2` every `n`-fold composition
/// `s_{i1} ∘ … ∘ s_{in}` is emitted in lexicographic index order, followed
/// (when `weights` has `k ≥ 2` entries) by the convex combination with
/// those weights of every `k`-subset of the compositions, again in
/// lexicographic order. At most [`HIERARCHY_CAP`] members are produced and
/// truncation is reported.
pub fn gen_hierarchy<T: Scalar>(
    n: usize,
    seeds: &FnRoster<T>,
    weights: &WeightVector<T>,
) -> Result<Hierarchy<T>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            expected: "n >= 1",
        });
    }
    let b = seeds
        .b()
        .ok_or_else(|| Error::Precondition("seed roster must fix a point b".into()))?;
    let label = format!("{}^({n})", seeds.label());
    if n == 1 {
        let in_a = seeds
            .members()
            .iter()
            .map(|m| m.a_flag() == Some(true))
            .collect();
        return Ok(Hierarchy {
            roster: FnRoster::new(label, Some(b), seeds.members().to_vec())?,
            in_a,
            truncated: None,
        });
    }

    let m = seeds.len();
    let k = weights.len();
    let compositions_total = (m as u64).checked_pow(n as u32);
    let combos_total = compositions_total.and_then(|c| {
        if k >= 2 {
            binomial(c, k as u64)
        } else {
            Some(0)
        }
    });
    let full_total = compositions_total
        .zip(combos_total)
        .and_then(|(a, c)| a.checked_add(c));

    let mut members = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        if members.len() >= HIERARCHY_CAP {
            break;
        }
        let mut expr = seeds.members()[idx[n - 1]].clone();
        for &i in idx[..n - 1].iter().rev() {
            expr = YoungExpr::compose(seeds.members()[i].clone(), expr);
        }
        members.push(expr);
        // odometer increment, last position fastest
        for pos in (0..n).rev() {
            idx[pos] += 1;
            if idx[pos] < m {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    let compositions = members.len();

    if k >= 2 && compositions >= k {
        let mut pick: Vec<usize> = (0..k).collect();
        while members.len() < HIERARCHY_CAP {
            let args = pick.iter().map(|&i| members[i].clone()).collect();
            members.push(YoungExpr::convex(weights.clone(), args)?);
            // next k-subset of 0..compositions
            let mut pos = k;
            while pos > 0 && pick[pos - 1] == compositions - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            pick[pos - 1] += 1;
            for q in pos..k {
                pick[q] = pick[q - 1] + 1;
            }
        }
    }

    let truncated = match full_total {
        Some(t) if t as usize <= members.len() => None,
        other => Some(other),
    };
    let in_a = members.iter().map(|m| m.a_flag() == Some(true)).collect();
    Ok(Hierarchy {
        roster: FnRoster::new(label, Some(b), members)?,
        in_a,
        truncated,
    })
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Directed sup-inf distances between two rosters and their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SetDistanceReport<T> {
    /// `sup_{Φ∈F} inf_{Ψ∈G} d(Φ, Ψ)`
    pub forward: T,
    /// `sup_{Ψ∈G} inf_{Φ∈F} d(Φ, Ψ)`
    pub backward: T,
    pub hausdorff: T,
}

pub fn set_distance<T: Scalar>(
    f: &FnRoster<T>,
    g: &FnRoster<T>,
    tol: T,
) -> Result<SetDistanceReport<T>> {
    let rows: Vec<Vec<T>> = f
        .members()
        .iter()
        .map(|a| {
            g.members()
                .iter()
                .map(|b| metric_d(a, b, tol))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let forward = rows
        .iter()
        .map(|r| r.iter().copied().fold(T::infinity(), T::min))
        .fold(T::zero(), T::max);
    let backward = (0..g.len())
        .map(|j| rows.iter().map(|r| r[j]).fold(T::infinity(), T::min))
        .fold(T::zero(), T::max);
    Ok(SetDistanceReport {
        forward,
        backward,
        hausdorff: forward.max(backward),
    })
}

/// Comparison of a `b1`-fixed and a `b2`-fixed function on `[b1, b2]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport<T> {
    /// `Φ1(x) ≤ x ≤ Φ2(x)` at every grid point in `[b1, b2]`.
    pub sandwich_holds: bool,
    /// Both inequalities strict at every interior grid point.
    pub strict_interior: bool,
    /// First grid point where the sandwich failed.
    pub first_violation: Option<T>,
    /// `(Φ1(b2), Φ2(b1))`.
    pub raw_pair: (T, T),
    /// Whether `Φ1(b2) < Φ2(b1)`; reported, not asserted.
    pub raw_pair_strictly_ordered: bool,
}

/// Checks the sandwich `Φ1 ≤ id ≤ Φ2` on `[b1, b2]` and reports the raw pair
/// `(Φ1(b2), Φ2(b1))`. Grid points outside `[b1, b2]` are ignored.
pub fn order_witness<T: Scalar>(
    b1: T,
    b2: T,
    phi1: &YoungExpr<T>,
    phi2: &YoungExpr<T>,
    grid: &[T],
) -> Result<OrderReport<T>> {
    check_b(b1)?;
    check_b(b2)?;
    if !(b1 < b2) {
        return Err(Error::Precondition(format!(
            "need b1 < b2, got {b1} and {b2}"
        )));
    }
    for (phi, b) in [(phi1, b1), (phi2, b2)] {
        if !member_fixed(phi, b) {
            return Err(Error::NotFixed {
                b: b.to_f64_lossy(),
                value: phi.eval(b).to_f64_lossy(),
            });
        }
    }
    let slack = |x: T| T::tol(FIXED_TOL) * x.max(T::one());
    let mut sandwich_holds = true;
    let mut strict_interior = true;
    let mut first_violation = None;
    for &x in grid.iter().filter(|&&x| x >= b1 && x <= b2) {
        let (lo, hi) = (phi1.eval(x), phi2.eval(x));
        if lo > x + slack(x) || hi < x - slack(x) {
            sandwich_holds = false;
            first_violation.get_or_insert(x);
        }
        if x > b1 && x < b2 && !(lo < x && x < hi) {
            strict_interior = false;
        }
    }
    let raw_pair = (phi1.eval(b2), phi2.eval(b1));
    Ok(OrderReport {
        sandwich_holds,
        strict_interior,
        first_violation,
        raw_pair,
        raw_pair_strictly_ordered: raw_pair.0 < raw_pair.1,
    })
}

/// `h_b(x) = x + b`, the affine majorant of every `b`-fixed member.
pub fn h_b<T: Scalar>(b: T, x: T) -> T {
    x + b
}

/// `C_b = ∫ h_b² dμ = (b² + b + 1)/3`.
pub fn c_b<T: Scalar>(b: T) -> T {
    (b * b + b + T::one()) / T::of(3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiameterReport<T> {
    /// `(i, j, d)` for every `i < j`.
    pub pairs: Vec<(usize, usize, T)>,
    pub max_pairwise: T,
    /// `sqrt(2·C_b)`
    pub bound: T,
    pub within_bound: bool,
    /// `(member, x)` where `Φ(x) > x + b`; first hit per member.
    pub majorant_violations: Vec<(usize, T)>,
}

impl<T: Scalar> DiameterReport<T> {
    pub fn passed(&self) -> bool {
        self.within_bound && self.majorant_violations.is_empty()
    }
}

/// Maximum pairwise distance of a `b`-fixed roster against `sqrt(2·C_b)`,
/// plus the pointwise bound `Φ(x) ≤ x + b` on `grid`.
pub fn diameter_check<T: Scalar>(f: &FnRoster<T>, grid: &[T], tol: T) -> Result<DiameterReport<T>> {
    let b = f
        .b()
        .ok_or_else(|| Error::Precondition("roster must fix a point b".into()))?;
    let dist = pairwise_distances(f.members(), tol)?;
    let mut pairs = Vec::new();
    let mut max_pairwise = T::zero();
    for (i, row) in dist.iter().enumerate() {
        for (j, &d) in row.iter().enumerate().skip(i + 1) {
            pairs.push((i, j, d));
            max_pairwise = max_pairwise.max(d);
        }
    }
    let bound = (T::of(2.0) * c_b(b)).sqrt();
    let mut majorant_violations = Vec::new();
    for (i, m) in f.members().iter().enumerate() {
        if let Some(&x) = grid
            .iter()
            .find(|&&x| m.eval(x) > h_b(b, x) * (T::one() + T::tol(1e-12)))
        {
            majorant_violations.push((i, x));
        }
    }
    Ok(DiameterReport {
        pairs,
        max_pairwise,
        bound,
        within_bound: max_pairwise <= bound + T::tol(1e-6),
        majorant_violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationReport<T> {
    pub min_distance: T,
    pub argmin: usize,
    /// Minimum exceeds the combined quadrature uncertainty.
    pub positive: bool,
}

/// Smallest distance from a `b1`-fixed roster to a function fixing `b2 ≠ b1`.
///
/// Members fixing both points (the identity fixes every point) make the
/// question degenerate and are rejected.
pub fn separation_check<T: Scalar>(
    f: &FnRoster<T>,
    phi2: &YoungExpr<T>,
    b2: T,
    tol: T,
) -> Result<SeparationReport<T>> {
    let b1 = f
        .b()
        .ok_or_else(|| Error::Precondition("roster must fix a point b".into()))?;
    check_b(b2)?;
    if b1 == b2 {
        return Err(Error::Precondition("b1 and b2 must differ".into()));
    }
    if !member_fixed(phi2, b2) {
        return Err(Error::NotFixed {
            b: b2.to_f64_lossy(),
            value: phi2.eval(b2).to_f64_lossy(),
        });
    }
    if member_fixed(phi2, b1) || f.members().iter().any(|m| member_fixed(m, b2)) {
        return Err(Error::Precondition(
            "a function fixes both b1 and b2; separation is undefined".into(),
        ));
    }
    let mut min_distance = T::infinity();
    let mut argmin = 0;
    for (i, m) in f.members().iter().enumerate() {
        let d = metric_d(m, phi2, tol)?;
        if d < min_distance {
            min_distance = d;
            argmin = i;
        }
    }
    // d² carries absolute error ≤ tol
    Ok(SeparationReport {
        min_distance,
        argmin,
        positive: min_distance * min_distance > tol,
    })
}

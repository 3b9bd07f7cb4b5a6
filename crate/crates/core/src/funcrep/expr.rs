use crate::error::{Error, Result};
use crate::funcrep::WeightVector;
use crate::scalar::Scalar;

/// One node of a concave Young-function expression tree.
///
/// Nodes can be inspected freely but only enter a [`YoungExpr`] through
/// [`YoungExpr::from_node`] or the named constructors, which check the
/// parameter ranges.
#[derive(Debug, Clone, PartialEq)]
pub enum Node<T> {
    /// `x`
    Id,
    /// `x^alpha`, `alpha ∈ (0, 1]`
    Power { alpha: T },
    /// `ln(1 + x)`
    Log1p,
    /// `x + c(1 - e^{-x})`, `c > 0`
    IdPlusSoft { c: T },
    /// `c·arg(x)`, `c > 0`
    Scale { c: T, arg: Box<YoungExpr<T>> },
    /// `arg(x)^alpha`, `alpha ∈ (0, 1)`
    PowerOf { alpha: T, arg: Box<YoungExpr<T>> },
    /// `outer(inner(x))`
    Compose {
        outer: Box<YoungExpr<T>>,
        inner: Box<YoungExpr<T>>,
    },
    /// `Σ args(x)`, at least two terms
    Sum(Vec<YoungExpr<T>>),
    /// `Σ t_i args_i(x)` with simplex weights
    Convex {
        weights: WeightVector<T>,
        args: Vec<YoungExpr<T>>,
    },
}

/// Immutable expression tree for a member of the concave Young-function class.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungExpr<T> {
    node: Node<T>,
}

/// Result of a checked evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    pub overflow: bool,
}

/// Tag for [`combine`].
#[derive(Debug, Clone, PartialEq)]
pub enum Combinator<T> {
    Scale(T),
    PowerOf(T),
    Compose,
    Sum,
    Convex(WeightVector<T>),
}

/// Builds a combined tree from operands. `Scale` and `PowerOf` take exactly
/// one operand, `Compose` takes `[outer, inner]`.
pub fn combine<T: Scalar>(kind: Combinator<T>, parts: Vec<YoungExpr<T>>) -> Result<YoungExpr<T>> {
    if parts.is_empty() {
        return Err(Error::EmptyOperands(match kind {
            Combinator::Scale(_) => "scale",
            Combinator::PowerOf(_) => "power_of",
            Combinator::Compose => "compose",
            Combinator::Sum => "sum",
            Combinator::Convex(_) => "convex",
        }));
    }
    let single = |mut parts: Vec<YoungExpr<T>>, what: &str| {
        if parts.len() != 1 {
            return Err(Error::Arity(format!(
                "{what} takes one operand, got {}",
                parts.len()
            )));
        }
        Ok(parts.pop().unwrap())
    };
    match kind {
        Combinator::Scale(c) => single(parts, "scale")?.scale(c),
        Combinator::PowerOf(alpha) => single(parts, "power_of")?.power_of(alpha),
        Combinator::Compose => {
            if parts.len() != 2 {
                return Err(Error::Arity(format!(
                    "compose takes [outer, inner], got {} operands",
                    parts.len()
                )));
            }
            let mut it = parts.into_iter();
            let outer = it.next().unwrap();
            let inner = it.next().unwrap();
            Ok(YoungExpr::compose(outer, inner))
        }
        Combinator::Sum => YoungExpr::sum(parts),
        Combinator::Convex(w) => YoungExpr::convex(w, parts),
    }
}

fn check_param<T: Scalar>(
    name: &'static str,
    value: T,
    ok: bool,
    expected: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: value.to_f64_lossy(),
            expected,
        })
    }
}

impl<T: Scalar> YoungExpr<T> {
    /// Validates the node's own parameters and wraps it. Children are
    /// already valid by construction.
    pub fn from_node(node: Node<T>) -> Result<Self> {
        match &node {
            Node::Power { alpha } => check_param(
                "alpha",
                *alpha,
                *alpha > T::zero() && *alpha <= T::one(),
                "(0, 1]",
            )?,
            Node::PowerOf { alpha, .. } => check_param(
                "alpha",
                *alpha,
                *alpha > T::zero() && *alpha < T::one(),
                "(0, 1)",
            )?,
            Node::IdPlusSoft { c } | Node::Scale { c, .. } => {
                check_param("c", *c, *c > T::zero(), "(0, inf)")?
            }
            Node::Sum(args) => {
                if args.len() < 2 {
                    return Err(Error::Arity(format!(
                        "sum needs at least two terms, got {}",
                        args.len()
                    )));
                }
            }
            Node::Convex { weights, args } => {
                if args.is_empty() {
                    return Err(Error::EmptyOperands("convex"));
                }
                if weights.len() != args.len() {
                    return Err(Error::Arity(format!(
                        "{} weights for {} functions",
                        weights.len(),
                        args.len()
                    )));
                }
            }
            Node::Id | Node::Log1p | Node::Compose { .. } => {}
        }
        Ok(Self { node })
    }

    pub fn node(&self) -> &Node<T> {
        &self.node
    }

    pub fn id() -> Self {
        Self { node: Node::Id }
    }

    pub fn log1p() -> Self {
        Self { node: Node::Log1p }
    }

    pub fn power(alpha: T) -> Result<Self> {
        Self::from_node(Node::Power { alpha })
    }

    pub fn id_plus_soft(c: T) -> Result<Self> {
        Self::from_node(Node::IdPlusSoft { c })
    }

    /// `c·self`
    pub fn scale(self, c: T) -> Result<Self> {
        Self::from_node(Node::Scale {
            c,
            arg: Box::new(self),
        })
    }

    /// `self^alpha`
    pub fn power_of(self, alpha: T) -> Result<Self> {
        Self::from_node(Node::PowerOf {
            alpha,
            arg: Box::new(self),
        })
    }

    /// `outer ∘ inner`
    pub fn compose(outer: Self, inner: Self) -> Self {
        Self {
            node: Node::Compose {
                outer: Box::new(outer),
                inner: Box::new(inner),
            },
        }
    }

    pub fn sum(args: Vec<Self>) -> Result<Self> {
        Self::from_node(Node::Sum(args))
    }

    pub fn convex(weights: WeightVector<T>, args: Vec<Self>) -> Result<Self> {
        Self::from_node(Node::Convex { weights, args })
    }

    /// Evaluates `Φ(x)`. The argument is assumed finite and non-negative;
    /// use [`try_eval`](Self::try_eval) for checked input.
    pub fn eval(&self, x: T) -> T {
        match &self.node {
            Node::Id => x,
            Node::Power { alpha } => {
                if x == T::zero() {
                    T::zero()
                } else {
                    x.powf(*alpha)
                }
            }
            Node::Log1p => x.ln_1p(),
            Node::IdPlusSoft { c } => x - *c * (-x).exp_m1(),
            Node::Scale { c, arg } => *c * arg.eval(x),
            Node::PowerOf { alpha, arg } => {
                let g = arg.eval(x);
                if g == T::zero() {
                    T::zero()
                } else {
                    g.powf(*alpha)
                }
            }
            Node::Compose { outer, inner } => outer.eval(inner.eval(x)),
            Node::Sum(args) => args.iter().map(|a| a.eval(x)).sum(),
            Node::Convex { weights, args } => weights
                .as_slice()
                .iter()
                .zip(args)
                .map(|(t, a)| *t * a.eval(x))
                .sum(),
        }
    }

    /// Evaluates with a domain check; overflow is reported as `+∞` with the flag set.
    pub fn try_eval(&self, x: T) -> Result<Evaluation<T>> {
        if !(x >= T::zero()) || !x.is_finite() {
            return Err(Error::Domain {
                x: x.to_f64_lossy(),
            });
        }
        let value = self.eval(x);
        if value.is_nan() {
            return Err(Error::Domain {
                x: x.to_f64_lossy(),
            });
        }
        let overflow = value.is_infinite();
        Ok(Evaluation {
            value: if overflow { T::infinity() } else { value },
            overflow,
        })
    }

    /// Closed-form right derivative; may be non-finite at the origin.
    fn density_closed(&self, x: T) -> T {
        match &self.node {
            Node::Id => T::one(),
            Node::Power { alpha } => *alpha * x.powf(*alpha - T::one()),
            Node::Log1p => T::one() / (T::one() + x),
            Node::IdPlusSoft { c } => T::one() + *c * (-x).exp(),
            Node::Scale { c, arg } => *c * arg.density_closed(x),
            Node::PowerOf { alpha, arg } => {
                *alpha * arg.eval(x).powf(*alpha - T::one()) * arg.density_closed(x)
            }
            Node::Compose { outer, inner } => {
                outer.density_closed(inner.eval(x)) * inner.density_closed(x)
            }
            Node::Sum(args) => args.iter().map(|a| a.density_closed(x)).sum(),
            Node::Convex { weights, args } => weights
                .as_slice()
                .iter()
                .zip(args)
                .filter(|(t, _)| **t > T::zero())
                .map(|(t, a)| *t * a.density_closed(x))
                .sum(),
        }
    }

    /// The density `φ(x)`, i.e. the right derivative of `Φ` at `x`.
    ///
    /// Closed forms are used throughout; if they fail to produce a positive
    /// finite number at some `x > 0` (underflow in a deep tree) a one-sided
    /// forward difference is used instead. At `x = 0` the closed form is
    /// returned when finite and the call is rejected otherwise.
    pub fn density(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) || !x.is_finite() {
            return Err(Error::Domain {
                x: x.to_f64_lossy(),
            });
        }
        let d = self.density_closed(x);
        if d.is_finite() && d > T::zero() {
            return Ok(d);
        }
        if x == T::zero() {
            return Err(Error::DensityDivergesAtOrigin);
        }
        let fd = self.right_difference(x);
        if fd.is_finite() && fd > T::zero() {
            Ok(fd)
        } else {
            Err(Error::DensityFailure {
                x: x.to_f64_lossy(),
            })
        }
    }

    /// One-sided forward difference with step `max(1e-7, 1e-7·x)`.
    pub fn right_difference(&self, x: T) -> T {
        let h = T::of(1e-7).max(T::of(1e-7) * x);
        let h = (x + h) - x;
        (self.eval(x + h) - self.eval(x)) / h
    }

    /// Analytic membership in the density-level class, where decidable.
    pub fn a_flag(&self) -> Option<bool> {
        match &self.node {
            Node::Id => Some(false),
            Node::Power { alpha } => Some(*alpha < T::one()),
            Node::Log1p => Some(true),
            Node::IdPlusSoft { .. } => Some(false),
            Node::Scale { arg, .. } => arg.a_flag(),
            Node::PowerOf { .. } => Some(true),
            Node::Compose { outer, inner } => match (outer.a_flag(), inner.a_flag()) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Node::Sum(args) => all_flags(args.iter()),
            Node::Convex { weights, args } => all_flags(
                weights
                    .as_slice()
                    .iter()
                    .zip(args)
                    .filter(|(t, _)| **t > T::zero())
                    .map(|(_, a)| a),
            ),
        }
    }

    /// `lim Φ(t)/t` computed structurally from the atoms.
    pub fn analytic_slope(&self) -> T {
        match &self.node {
            Node::Id | Node::IdPlusSoft { .. } => T::one(),
            Node::Power { alpha } => {
                if *alpha == T::one() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Node::Log1p | Node::PowerOf { .. } => T::zero(),
            Node::Scale { c, arg } => *c * arg.analytic_slope(),
            Node::Compose { outer, inner } => outer.analytic_slope() * inner.analytic_slope(),
            Node::Sum(args) => args.iter().map(|a| a.analytic_slope()).sum(),
            Node::Convex { weights, args } => weights
                .as_slice()
                .iter()
                .zip(args)
                .map(|(t, a)| *t * a.analytic_slope())
                .sum(),
        }
    }

    /// True when the tree is a linear function `a·x`, i.e. its density is
    /// constant. Every other tree is strictly concave.
    pub fn is_linear(&self) -> bool {
        match &self.node {
            Node::Id => true,
            Node::Power { alpha } => *alpha == T::one(),
            Node::Log1p | Node::IdPlusSoft { .. } | Node::PowerOf { .. } => false,
            Node::Scale { arg, .. } => arg.is_linear(),
            Node::Compose { outer, inner } => outer.is_linear() && inner.is_linear(),
            Node::Sum(args) => args.iter().all(Self::is_linear),
            Node::Convex { weights, args } => weights
                .as_slice()
                .iter()
                .zip(args)
                .filter(|(t, _)| **t > T::zero())
                .all(|(_, a)| a.is_linear()),
        }
    }

    /// Structural guarantee that `Φ(x) → ∞`: every atom is unbounded and
    /// each combinator preserves it (a convex node needs one positive weight).
    pub fn analytically_unbounded(&self) -> bool {
        match &self.node {
            Node::Id | Node::Power { .. } | Node::Log1p | Node::IdPlusSoft { .. } => true,
            Node::Scale { arg, .. } | Node::PowerOf { arg, .. } => arg.analytically_unbounded(),
            Node::Compose { outer, inner } => {
                outer.analytically_unbounded() && inner.analytically_unbounded()
            }
            Node::Sum(args) => args.iter().any(Self::analytically_unbounded),
            Node::Convex { weights, args } => weights
                .as_slice()
                .iter()
                .zip(args)
                .any(|(t, a)| *t > T::zero() && a.analytically_unbounded()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match &self.node {
            Node::Id | Node::Power { .. } | Node::Log1p | Node::IdPlusSoft { .. } => 0,
            Node::Scale { arg, .. } | Node::PowerOf { arg, .. } => arg.size(),
            Node::Compose { outer, inner } => outer.size() + inner.size(),
            Node::Sum(args) | Node::Convex { args, .. } => args.iter().map(Self::size).sum(),
        }
    }

    /// Converts the tree to another scalar type.
    pub fn cast<U: Scalar>(&self) -> YoungExpr<U> {
        let c = |v: T| U::of(v.to_f64_lossy());
        let node = match &self.node {
            Node::Id => Node::Id,
            Node::Power { alpha } => Node::Power { alpha: c(*alpha) },
            Node::Log1p => Node::Log1p,
            Node::IdPlusSoft { c: k } => Node::IdPlusSoft { c: c(*k) },
            Node::Scale { c: k, arg } => Node::Scale {
                c: c(*k),
                arg: Box::new(arg.cast()),
            },
            Node::PowerOf { alpha, arg } => Node::PowerOf {
                alpha: c(*alpha),
                arg: Box::new(arg.cast()),
            },
            Node::Compose { outer, inner } => Node::Compose {
                outer: Box::new(outer.cast()),
                inner: Box::new(inner.cast()),
            },
            Node::Sum(args) => Node::Sum(args.iter().map(Self::cast).collect()),
            Node::Convex { weights, args } => Node::Convex {
                weights: weights.cast(),
                args: args.iter().map(Self::cast).collect(),
            },
        };
        YoungExpr { node }
    }
}

fn all_flags<'a, T: Scalar>(args: impl Iterator<Item = &'a YoungExpr<T>>) -> Option<bool> {
    let mut unknown = false;
    for a in args {
        match a.a_flag() {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

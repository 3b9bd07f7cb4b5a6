//! JSON descriptor documents for expression trees.
//!
//! ```json
//! {"kind":"compose","outer":{"kind":"power","alpha":0.5},"inner":{"kind":"id"}}
//! ```
//!
//! `kind` is one of `id`, `power`, `log1p`, `id_plus_soft`, `scale`,
//! `power_of`, `compose`, `sum`, `convex`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcrep::{Node, WeightVector, YoungExpr};
use crate::scalar::Scalar;

/// Wire form of a [`YoungExpr`]; parameters are plain `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Descriptor {
    Id {},
    Power {
        alpha: f64,
    },
    Log1p {},
    IdPlusSoft {
        c: f64,
    },
    Scale {
        c: f64,
        arg: Box<Descriptor>,
    },
    PowerOf {
        alpha: f64,
        arg: Box<Descriptor>,
    },
    Compose {
        outer: Box<Descriptor>,
        inner: Box<Descriptor>,
    },
    Sum {
        args: Vec<Descriptor>,
    },
    Convex {
        weights: Vec<f64>,
        args: Vec<Descriptor>,
    },
}

impl Descriptor {
    pub fn to_expr<T: Scalar>(&self) -> Result<YoungExpr<T>> {
        let node = match self {
            Descriptor::Id {} => Node::Id,
            Descriptor::Power { alpha } => Node::Power {
                alpha: T::of(*alpha),
            },
            Descriptor::Log1p {} => Node::Log1p,
            Descriptor::IdPlusSoft { c } => Node::IdPlusSoft { c: T::of(*c) },
            Descriptor::Scale { c, arg } => Node::Scale {
                c: T::of(*c),
                arg: Box::new(arg.to_expr()?),
            },
            Descriptor::PowerOf { alpha, arg } => Node::PowerOf {
                alpha: T::of(*alpha),
                arg: Box::new(arg.to_expr()?),
            },
            Descriptor::Compose { outer, inner } => Node::Compose {
                outer: Box::new(outer.to_expr()?),
                inner: Box::new(inner.to_expr()?),
            },
            Descriptor::Sum { args } => Node::Sum(
                args.iter()
                    .map(Descriptor::to_expr)
                    .collect::<Result<_>>()?,
            ),
            Descriptor::Convex { weights, args } => Node::Convex {
                weights: WeightVector::new(weights.iter().map(|w| T::of(*w)).collect())?,
                args: args
                    .iter()
                    .map(Descriptor::to_expr)
                    .collect::<Result<_>>()?,
            },
        };
        YoungExpr::from_node(node)
    }

    pub fn from_expr<T: Scalar>(expr: &YoungExpr<T>) -> Self {
        let f = |v: &T| v.to_f64_lossy();
        match expr.node() {
            Node::Id => Descriptor::Id {},
            Node::Power { alpha } => Descriptor::Power { alpha: f(alpha) },
            Node::Log1p => Descriptor::Log1p {},
            Node::IdPlusSoft { c } => Descriptor::IdPlusSoft { c: f(c) },
            Node::Scale { c, arg } => Descriptor::Scale {
                c: f(c),
                arg: Box::new(Self::from_expr(arg)),
            },
            Node::PowerOf { alpha, arg } => Descriptor::PowerOf {
                alpha: f(alpha),
                arg: Box::new(Self::from_expr(arg)),
            },
            Node::Compose { outer, inner } => Descriptor::Compose {
                outer: Box::new(Self::from_expr(outer)),
                inner: Box::new(Self::from_expr(inner)),
            },
            Node::Sum(args) => Descriptor::Sum {
                args: args.iter().map(Self::from_expr).collect(),
            },
            Node::Convex { weights, args } => Descriptor::Convex {
                weights: weights.as_slice().iter().map(f).collect(),
                args: args.iter().map(Self::from_expr).collect(),
            },
        }
    }
}

pub(crate) fn syntax_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
    }
}

/// Parses a descriptor document into a validated tree.
pub fn parse_descriptor<T: Scalar>(text: &str) -> Result<YoungExpr<T>> {
    let d: Descriptor = serde_json::from_str(text).map_err(syntax_error)?;
    d.to_expr()
}

/// Compact JSON descriptor for `expr`.
pub fn serialize<T: Scalar>(expr: &YoungExpr<T>) -> String {
    serde_json::to_string(&Descriptor::from_expr(expr)).expect("descriptor serialization")
}

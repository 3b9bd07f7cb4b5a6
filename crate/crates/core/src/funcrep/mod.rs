//! Expression trees for concave Young-functions: construction, evaluation,
//! densities, analytic class flags, descriptor I/O and grid validation.

mod descriptor;
mod expr;
mod validate;
mod weights;

pub(crate) use descriptor::syntax_error;
pub use descriptor::{parse_descriptor, serialize, Descriptor};
pub use expr::{combine, Combinator, Evaluation, Node, YoungExpr};
pub(crate) use validate::check_grid;
pub use validate::{default_grid, validate, Check, ValidationReport, Violation};
pub use weights::WeightVector;

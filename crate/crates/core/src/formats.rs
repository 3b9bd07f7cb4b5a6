//! JSON documents for rosters, measure spaces and functions on them.
//!
//! ```json
//! {"label":"Y_1","b":1.0,"members":[{"kind":"id"}]}
//! {"atoms":[{"label":"a","weight":1.0},{"label":"b","weight":1.0}]}
//! {"values":[{"label":"a","value":3.0},{"label":"b","value":4.0}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fixed_b::FnRoster;
use crate::funcrep::{syntax_error, Descriptor};
use crate::lpspace::{DiscreteMeasureSpace, MeasurableFn};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RosterDoc {
    pub label: String,
    #[serde(default)]
    pub b: Option<f64>,
    pub members: Vec<Descriptor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Value {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub values: Vec<Value>,
}

pub fn parse_roster<T: Scalar>(text: &str) -> Result<FnRoster<T>> {
    let doc: RosterDoc = serde_json::from_str(text).map_err(syntax_error)?;
    let members = doc
        .members
        .iter()
        .map(Descriptor::to_expr)
        .collect::<Result<Vec<_>>>()?;
    FnRoster::new(doc.label, doc.b.map(T::of), members)
}

pub fn roster_to_json<T: Scalar>(roster: &FnRoster<T>) -> String {
    let doc = RosterDoc {
        label: roster.label().to_string(),
        b: roster.b().map(|b| b.to_f64_lossy()),
        members: roster.members().iter().map(Descriptor::from_expr).collect(),
    };
    serde_json::to_string(&doc).expect("roster serialization")
}

pub fn parse_space<T: Scalar>(text: &str) -> Result<DiscreteMeasureSpace<T>> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(syntax_error)?;
    DiscreteMeasureSpace::new(
        doc.atoms
            .into_iter()
            .map(|a| (a.label, T::of(a.weight)))
            .collect(),
    )
}

/// Parses a function document and aligns it with the atoms of `space`.
pub fn parse_function<T: Scalar>(
    space: &DiscreteMeasureSpace<T>,
    text: &str,
) -> Result<MeasurableFn<T>> {
    let doc: FunctionDoc = serde_json::from_str(text).map_err(syntax_error)?;
    let pairs: Vec<(String, T)> = doc
        .values
        .into_iter()
        .map(|v| (v.label, T::of(v.value)))
        .collect();
    MeasurableFn::from_labelled(space, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn space_and_function() {
        let s =
            parse_space::<f64>(r#"{"atoms":[{"label":"a","weight":1},{"label":"b","weight":2}]}"#)
                .unwrap();
        assert_eq!(s.total_mass(), 3.0);
        let f = parse_function(
            &s,
            r#"{"values":[{"label":"b","value":4},{"label":"a","value":3}]}"#,
        )
        .unwrap();
        assert_eq!(f.values(), &[3.0, 4.0]);
        assert!(matches!(
            parse_space::<f64>(r#"{"atoms":[{"label":"a","weight":-1}]}"#),
            Err(Error::Space(_))
        ));
        assert!(matches!(
            parse_space::<f64>(r#"{"atoms":"#),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn roster_round_trip() {
        let text = r#"{"label":"Y_1","b":1.0,"members":[{"kind":"id"},{"kind":"scale","c":1.4426950408889634,"arg":{"kind":"log1p"}}]}"#;
        let r = parse_roster::<f64>(text).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(roster_to_json(&r), text);
        let bad = r#"{"label":"x","b":2.0,"members":[{"kind":"id"},{"kind":"log1p"}]}"#;
        assert!(parse_roster::<f64>(bad).is_err());
    }
}

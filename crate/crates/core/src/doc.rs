//! JSON series documents.
//!
//! ```json
//! {"kind": "explicit", "coeffs": ["1", "1", "1/2"]}
//! {"kind": "builtin", "name": "exp"}
//! {"kind": "rational", "num": ["1"], "den": ["1", "-1"]}
//! {"kind": "sum", "parts": [{"kind": "builtin", "name": "exp"}, ...]}
//! ```
//!
//! Rational literals are `"p"` or `"p/q"` strings and are parsed exactly.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::{builtin_series, series_of_rational_function, Builtin, PowerSeries};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeriesDoc {
    Explicit { coeffs: Vec<Rational> },
    Builtin { name: String },
    Rational { num: Vec<Rational>, den: Vec<Rational> },
    Sum { parts: Vec<SeriesDoc> },
}

// Hand-written so that every error, including a bad `kind` or a missing
// field, is raised while the parser still knows its position: messages then
// end in "at line L column C".
impl<'de> Deserialize<'de> for SeriesDoc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(DocVisitor)
    }
}

struct DocVisitor;

const FIELDS: &[&str] = &["kind", "coeffs", "name", "num", "den", "parts"];

impl<'de> Visitor<'de> for DocVisitor {
    type Value = SeriesDoc;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a series document object")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<SeriesDoc, A::Error> {
        let mut kind: Option<String> = None;
        let mut coeffs: Option<Vec<Rational>> = None;
        let mut name: Option<String> = None;
        let mut num: Option<Vec<Rational>> = None;
        let mut den: Option<Vec<Rational>> = None;
        let mut parts: Option<Vec<SeriesDoc>> = None;
        while let Some(key) = map.next_key::<String>()? {
            let dup = match key.as_str() {
                "kind" => kind.replace(map.next_value()?).is_some(),
                "coeffs" => coeffs.replace(map.next_value()?).is_some(),
                "name" => name.replace(map.next_value()?).is_some(),
                "num" => num.replace(map.next_value()?).is_some(),
                "den" => den.replace(map.next_value()?).is_some(),
                "parts" => parts.replace(map.next_value()?).is_some(),
                other => return Err(de::Error::unknown_field(other, FIELDS)),
            };
            if dup {
                return Err(de::Error::custom(format!("duplicate field `{key}`")));
            }
        }
        let kind = kind.ok_or_else(|| de::Error::missing_field("kind"))?;
        let allowed: &[&str] = match kind.as_str() {
            "explicit" => &["coeffs"],
            "builtin" => &["name"],
            "rational" => &["num", "den"],
            "sum" => &["parts"],
            other => return Err(de::Error::unknown_variant(other, &["explicit", "builtin", "rational", "sum"])),
        };
        let present = [
            ("coeffs", coeffs.is_some()),
            ("name", name.is_some()),
            ("num", num.is_some()),
            ("den", den.is_some()),
            ("parts", parts.is_some()),
        ];
        if let Some((field, _)) = present.iter().find(|(f, p)| *p && !allowed.contains(f)) {
            return Err(de::Error::custom(format!("field `{field}` does not belong to kind `{kind}`")));
        }
        Ok(match kind.as_str() {
            "explicit" => SeriesDoc::Explicit { coeffs: coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))? },
            "builtin" => SeriesDoc::Builtin { name: name.ok_or_else(|| de::Error::missing_field("name"))? },
            "rational" => SeriesDoc::Rational {
                num: num.ok_or_else(|| de::Error::missing_field("num"))?,
                den: den.ok_or_else(|| de::Error::missing_field("den"))?,
            },
            _ => SeriesDoc::Sum { parts: parts.ok_or_else(|| de::Error::missing_field("parts"))? },
        })
    }
}

impl SeriesDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn builtin(name: &str) -> Self {
        SeriesDoc::Builtin { name: name.to_string() }
    }

    /// Expand through `z^order`. Explicit lists must supply enough
    /// coefficients.
    pub fn to_series(&self, order: usize) -> Result<PowerSeries> {
        match self {
            SeriesDoc::Explicit { coeffs } => PowerSeries::new(coeffs.clone())?.truncate(order),
            SeriesDoc::Builtin { name } => Ok(builtin_series(&name.parse::<Builtin>()?, order)),
            SeriesDoc::Rational { .. } => series_of_rational_function(&self.rational_function()?, order),
            SeriesDoc::Sum { parts } => {
                let mut it = parts.iter();
                let first = it.next().ok_or(Error::EmptyInput("sum has no parts"))?;
                it.try_fold(first.to_series(order)?, |acc, part| Ok(acc.add(&part.to_series(order)?)))
            }
        }
    }

    /// The rational function described by a `rational` document.
    pub fn rational_function(&self) -> Result<RationalFunction> {
        match self {
            SeriesDoc::Rational { num, den } => {
                RationalFunction::new(Polynomial::new(num.clone()), Polynomial::new(den.clone()))
                    .map_err(|_| Error::InvalidDocument("rational document has a zero denominator".into()))
            }
            _ => Err(Error::InvalidDocument("not a rational document".into())),
        }
    }
}

/// JSON schema of the series document, printed by `--emit-schema`.
pub fn series_schema() -> serde_json::Value {
    serde_json::json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "series",
        "$defs": {
            "rational": {"type": "string", "pattern": "^\\s*-?[0-9]+(\\s*/\\s*-?[0-9]+)?\\s*$"},
            "series": {
                "oneOf": [
                    {"type": "object", "required": ["kind", "coeffs"], "additionalProperties": false,
                     "properties": {"kind": {"const": "explicit"},
                                    "coeffs": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/rational"}}}},
                    {"type": "object", "required": ["kind", "name"], "additionalProperties": false,
                     "properties": {"kind": {"const": "builtin"},
                                    "name": {"type": "string", "description": "exp | geometric | geometric(a)"}}},
                    {"type": "object", "required": ["kind", "num", "den"], "additionalProperties": false,
                     "properties": {"kind": {"const": "rational"},
                                    "num": {"type": "array", "items": {"$ref": "#/$defs/rational"}},
                                    "den": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/rational"}}}},
                    {"type": "object", "required": ["kind", "parts"], "additionalProperties": false,
                     "properties": {"kind": {"const": "sum"},
                                    "parts": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/series"}}}}
                ]
            }
        },
        "$ref": "#/$defs/series"
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parse_all_kinds() {
        let d = SeriesDoc::from_json(r#"{"kind":"explicit","coeffs":["1","1","1/2"]}"#).unwrap();
        assert_eq!(d.to_series(2).unwrap().coeffs(), &[q(1, 1), q(1, 1), q(1, 2)]);
        assert!(matches!(d.to_series(3), Err(Error::InsufficientCoefficients { .. })));

        let d = SeriesDoc::from_json(r#"{"kind":"builtin","name":"exp"}"#).unwrap();
        assert_eq!(d.to_series(3).unwrap().coeff(3), &q(1, 6));

        let d = SeriesDoc::from_json(r#"{"kind":"rational","num":["1"],"den":["1","-1"]}"#).unwrap();
        assert_eq!(d.to_series(2).unwrap(), PowerSeries::from_ints(&[1, 1, 1]));

        let d = SeriesDoc::from_json(
            r#"{"kind":"sum","parts":[{"kind":"builtin","name":"exp"},{"kind":"rational","num":["1"],"den":["1","-1"]}]}"#,
        )
        .unwrap();
        assert_eq!(d.to_series(3).unwrap().coeffs(), &[q(2, 1), q(2, 1), q(3, 2), q(7, 6)]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = SeriesDoc::from_json("{\"kind\": \"explicit\",\n \"coeffs\": [1]}").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let e = SeriesDoc::from_json("{\n\"kind\": \"mystery\"\n}").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        let e = SeriesDoc::from_json("{\"kind\": \"sum\", \"parts\": [\n\n{\"kind\": \"builtin\"}]}").unwrap_err().to_string();
        assert!(e.contains("missing field `name`") && e.contains("line 3"), "{e}");
    }

    #[test]
    fn round_trips_through_serde() {
        let d = SeriesDoc::Sum { parts: vec![SeriesDoc::builtin("exp"), SeriesDoc::Explicit { coeffs: vec![q(1, 2)] }] };
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(SeriesDoc::from_json(&text).unwrap(), d);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(SeriesDoc::from_json(r#"{"kind":"explicit","coeffs":[1, 2]}"#).is_err());
        assert!(SeriesDoc::from_json(r#"{"kind":"explicit","coeffs":["1/0"]}"#).is_err());
        assert!(SeriesDoc::from_json(r#"{"kind":"mystery"}"#).is_err());
        assert!(SeriesDoc::from_json(r#"{"kind":"builtin","name":"exp","coeffs":["1"]}"#).is_err());
        assert!(SeriesDoc::from_json(r#"{"kind":"builtin","name":"exp","name":"exp"}"#).is_err());
        assert!(SeriesDoc::from_json(r#"{"name":"exp"}"#).is_err());
        let d = SeriesDoc::from_json(r#"{"kind":"rational","num":["1"],"den":["0"]}"#).unwrap();
        assert!(d.to_series(2).is_err());
        let d = SeriesDoc::from_json(r#"{"kind":"builtin","name":"gamma"}"#).unwrap();
        assert_eq!(d.to_series(2), Err(Error::UnknownBuiltin("gamma".into())));
    }
}

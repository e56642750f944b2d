//! The JSON complex file format.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::level::parse_rational;
use super::{FilteredComplex, Generator};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    top_degree: i64,
    generators: Vec<GeneratorFile>,
    #[serde(default)]
    differential: IndexMap<String, Vec<(String, Coefficient)>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    id: String,
    degree: i64,
    action: String,
}

/// Small coefficients are JSON numbers; anything outside `i64` is a string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Small(i64),
    Big(String),
}

impl Coefficient {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Coefficient::Small(n) => Ok(BigInt::from(*n)),
            Coefficient::Big(s) => {
                s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
            }
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Coefficient::Small(v),
            None => Coefficient::Big(n.to_string()),
        }
    }
}

/// Parses a complex. Structural errors (unknown ids, duplicates, malformed
/// numbers) are errors; invariant violations are left to `validate`.
pub fn from_json(text: &str) -> Result<FilteredComplex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    let generators = file
        .generators
        .into_iter()
        .map(|g| {
            Ok(Generator {
                action: parse_rational(&g.action)
                    .map_err(|_| Error::Parse(format!("action of `{}`: `{}`", g.id, g.action)))?,
                id: g.id,
                degree: g.degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let differential = file
        .differential
        .into_iter()
        .map(|(src, terms)| {
            let terms = terms
                .into_iter()
                .map(|(dst, c)| Ok((dst, c.to_bigint()?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((src, terms))
        })
        .collect::<Result<Vec<_>>>()?;
    FilteredComplex::new(file.top_degree, generators, &differential)
}

/// Canonical pretty JSON: generators in order, boundaries listed in
/// generator order, zero boundaries omitted.
pub fn to_json(c: &FilteredComplex) -> String {
    let generators = c
        .generators()
        .iter()
        .map(|g| GeneratorFile { id: g.id.clone(), degree: g.degree, action: g.action.to_string() })
        .collect();
    let mut differential = IndexMap::new();
    for (i, g) in c.generators().iter().enumerate() {
        let b = c.boundary_of(i);
        if !b.is_empty() {
            let terms = b
                .iter()
                .map(|(t, coef)| (c.generators()[*t].id.clone(), Coefficient::from_bigint(coef)))
                .collect();
            differential.insert(g.id.clone(), terms);
        }
    }
    let file = ComplexFile { top_degree: c.top_degree(), generators, differential };
    let mut s = serde_json::to_string_pretty(&file).expect("complex serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::e1;
    use super::*;

    const E1: &str = r#"{
      "top_degree": 1,
      "generators": [ {"id":"u","degree":0,"action":"0"}, {"id":"v","degree":0,"action":"1"}, {"id":"x","degree":1,"action":"3"} ],
      "differential": { "x": [["u", 1], ["v", -2]] }
    }"#;

    #[test]
    fn reads_documented_example() {
        assert_eq!(from_json(E1).unwrap(), e1());
    }

    #[test]
    fn round_trip_is_stable() {
        let s = to_json(&e1());
        assert_eq!(from_json(&s).unwrap(), e1());
        assert_eq!(to_json(&from_json(&s).unwrap()), s);
    }

    #[test]
    fn big_coefficients_and_fractions() {
        let text = r#"{"top_degree": 1,
          "generators": [{"id":"a","degree":0,"action":"-1/2"}, {"id":"b","degree":1,"action":"4/6"}],
          "differential": {"b": [["a", "123456789012345678901234567890"]]}}"#;
        let c = from_json(text).unwrap();
        assert!(c.validate().is_empty());
        let s = to_json(&c);
        assert!(s.contains("\"2/3\""));
        assert!(s.contains("\"123456789012345678901234567890\""));
        assert_eq!(from_json(&s).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json(r#"{"top_degree": 1, "generators": [], "extra": 1}"#).is_err());
        assert!(from_json(r#"{"top_degree": 1, "generators": [{"id":"a","degree":0,"action":"x"}]}"#).is_err());
        assert!(from_json(r#"{"top_degree": 1, "generators": [{"id":"a","degree":0,"action":"1","w":2}]}"#).is_err());
        assert!(from_json(r#"{"top_degree": 1, "generators": [], "differential": {"a": []}}"#).is_err());
        let c = from_json(r#"{"top_degree": 1, "generators": [{"id":"a","degree":0,"action":"1"}]}"#).unwrap();
        assert_eq!(c.len(), 1);
    }
}

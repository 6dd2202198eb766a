//! Instance and allocation documents.
//!
//! ```json
//! {"n": 2, "m": 2, "valuations": [
//!   {"type": "additive", "values": ["100", "1"]},
//!   {"type": "table", "entries": {"1": "1", "2": "1", "1,2": "1"}}]}
//! ```
//!
//! Goods are 1-based in documents. Scalars are written as `"p/q"` strings (or
//! bare integers); JSON floats are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::goods::{GoodSet, MAX_GOODS};
use crate::model::instance::{Allocation, Instance};
use crate::model::valuation::{Valuation, ValuationKind, MAX_TABLE_GOODS};
use crate::scalar::Scalar;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    n: usize,
    m: usize,
    valuations: Vec<ValuationDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ValuationDoc {
    Additive { values: Vec<Value> },
    Table { entries: BTreeMap<String, Value> },
}

fn parse_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses one scalar from a JSON string (`"p/q"`, `"p"`) or integer.
pub fn parse_scalar<S: Scalar>(value: &Value, path: &str) -> Result<S> {
    let text = match value {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::Number(n) => {
            return Err(parse_error(
                path,
                format!("{n} is not exact; write rationals as \"p/q\" strings"),
            ))
        }
        other => return Err(parse_error(path, format!("expected a rational, got {other}"))),
    };
    text.parse::<S>()
        .map_err(|_| parse_error(path, format!("cannot parse {text:?} as a rational")))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_error(path, e.into_inner().to_string())
    })
}

/// Table key: sorted, comma-joined 1-based labels; `""` for the empty set.
fn parse_table_key(key: &str, m: usize, path: &str) -> Result<GoodSet> {
    if key.trim().is_empty() {
        return Ok(GoodSet::EMPTY);
    }
    let mut labels = Vec::new();
    for part in key.split(',') {
        let label: usize = part
            .trim()
            .parse()
            .map_err(|_| parse_error(path, format!("bad good label {part:?}")))?;
        if label == 0 || label > m {
            return Err(parse_error(path, format!("good {label} out of range 1..={m}")));
        }
        labels.push(label - 1);
    }
    GoodSet::from_indices(labels, m).map_err(|e| parse_error(path, e.to_string()))
}

fn table_key(set: GoodSet) -> String {
    set.labels()
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_instance<S: Scalar>(text: &str) -> Result<Instance<S>> {
    let doc: InstanceDoc = parse_json(text)?;
    if doc.valuations.len() != doc.n {
        return Err(parse_error(
            "valuations",
            format!("{} valuations for n = {}", doc.valuations.len(), doc.n),
        ));
    }
    if doc.m > MAX_GOODS {
        return Err(parse_error("m", format!("at most {MAX_GOODS} goods supported")));
    }
    let mut valuations = Vec::with_capacity(doc.n);
    for (i, vdoc) in doc.valuations.iter().enumerate() {
        let base = format!("valuations[{i}]");
        let valuation = match vdoc {
            ValuationDoc::Additive { values } => {
                if values.len() != doc.m {
                    return Err(parse_error(
                        format!("{base}.values"),
                        format!("{} values for m = {}", values.len(), doc.m),
                    ));
                }
                let parsed = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| parse_scalar::<S>(v, &format!("{base}.values[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                Valuation::additive(parsed)
            }
            ValuationDoc::Table { entries } => {
                if doc.m > MAX_TABLE_GOODS {
                    return Err(parse_error(
                        format!("{base}.entries"),
                        format!("tables support at most {MAX_TABLE_GOODS} goods"),
                    ));
                }
                let mut table: Vec<Option<S>> = vec![None; 1 << doc.m];
                table[0] = Some(S::zero());
                for (key, v) in entries {
                    let path = format!("{base}.entries[{key:?}]");
                    let set = parse_table_key(key, doc.m, &path)?;
                    let parsed = parse_scalar::<S>(v, &path)?;
                    if set.is_empty() && !parsed.is_zero() {
                        return Err(parse_error(path, "value of the empty set must be 0"));
                    }
                    table[set.bits() as usize] = Some(parsed);
                }
                let mut full = Vec::with_capacity(table.len());
                for (bits, entry) in table.into_iter().enumerate() {
                    match entry {
                        Some(v) => full.push(v),
                        None => {
                            return Err(parse_error(
                                format!("{base}.entries"),
                                format!(
                                    "missing entry for subset {:?}",
                                    table_key(GoodSet::from_bits(bits as u64))
                                ),
                            ))
                        }
                    }
                }
                Valuation::table(doc.m, full)
            }
        }
        .map_err(|e| parse_error(base.clone(), e.to_string()))?;
        valuations.push(valuation);
    }
    if doc.n == 0 {
        return Err(parse_error("n", "at least one agent is required"));
    }
    Instance::new(valuations)
}

/// Canonical text form: pretty JSON, scalars as strings, table keys in
/// lexicographic order, trailing newline.
pub fn serialize_instance<S: Scalar>(inst: &Instance<S>) -> String {
    let mut text = serde_json::to_string_pretty(&to_doc(inst)).expect("instance serializes");
    text.push('\n');
    text
}

impl<S: Scalar> Serialize for Instance<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        to_doc(self).serialize(s)
    }
}

fn to_doc<S: Scalar>(inst: &Instance<S>) -> InstanceDoc {
    let valuations = inst
        .valuations()
        .iter()
        .map(|v| match v.kind() {
            ValuationKind::Additive(values) => ValuationDoc::Additive {
                values: values.iter().map(|x| Value::String(x.to_string())).collect(),
            },
            ValuationKind::Table(entries) => ValuationDoc::Table {
                entries: entries
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(bits, x)| {
                        (
                            table_key(GoodSet::from_bits(bits as u64)),
                            Value::String(x.to_string()),
                        )
                    })
                    .collect(),
            },
        })
        .collect();
    InstanceDoc {
        n: inst.agents(),
        m: inst.goods(),
        valuations,
    }
}

pub fn parse_allocation(text: &str, m: usize) -> Result<Allocation> {
    let raw: Allocation = parse_json(text)?;
    Allocation::new(raw.bundles, m)
}

pub fn serialize_allocation(alloc: &Allocation) -> String {
    let mut text = serde_json::to_string(alloc).expect("allocation serializes");
    text.push('\n');
    text
}

/// `serialize_with` helpers writing scalars as strings.
pub mod scalar_text {
    use super::*;

    pub fn one<S: Scalar, Ser: Serializer>(x: &S, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn many<S: Scalar, Ser: Serializer>(xs: &[S], s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn maybe<S: Scalar, Ser: Serializer>(
        x: &Option<S>,
        s: Ser,
    ) -> Result<Ser::Ok, Ser::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// `serialize_with` helpers writing 0-based indices as 1-based labels.
pub mod one_based {
    use serde::Serializer;

    pub fn one<Ser: Serializer>(i: &usize, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_u64(*i as u64 + 1)
    }

    pub fn many<Ser: Serializer>(xs: &[usize], s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_seq(xs.iter().map(|i| i + 1))
    }

    pub fn maybe_many<Ser: Serializer>(xs: &[Option<usize>], s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_seq(xs.iter().map(|i| i.map(|i| i + 1)))
    }

    pub fn pairs<Ser: Serializer>(xs: &[(usize, usize)], s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_seq(xs.iter().map(|(a, b)| [a + 1, b + 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const EXAMPLE1: &str = r#"{"n": 2, "m": 2, "valuations": [
        {"type": "additive", "values": ["100", 1]},
        {"type": "additive", "values": [1, "100"]}]}"#;

    #[test]
    fn parses_crossed_pair() {
        let inst: Instance<Rational> = parse_instance(EXAMPLE1).unwrap();
        assert_eq!(inst.agents(), 2);
        assert_eq!(inst.goods(), 2);
        assert_eq!(inst.value(0, GoodSet::from_labels([1])), Rational::from_integer(100.into()));
        assert_eq!(inst.value(1, GoodSet::from_labels([1])), Rational::from_integer(1.into()));
    }

    #[test]
    fn canonical_round_trip() {
        let inst: Instance<Rational> = parse_instance(EXAMPLE1).unwrap();
        let text = serialize_instance(&inst);
        let again: Instance<Rational> = parse_instance(&text).unwrap();
        assert_eq!(again, inst);
        assert_eq!(serialize_instance(&again), text);
    }

    #[test]
    fn table_round_trip_and_missing_entry() {
        let text = r#"{"n":1,"m":2,"valuations":[{"type":"table","entries":{"1":"1","2":"1/2","1,2":"1"}}]}"#;
        let inst: Instance<Rational> = parse_instance(text).unwrap();
        let canonical = serialize_instance(&inst);
        assert_eq!(serialize_instance(&parse_instance::<Rational>(&canonical).unwrap()), canonical);

        let missing = r#"{"n":1,"m":2,"valuations":[{"type":"table","entries":{"1":"1","2":"1"}}]}"#;
        let err = parse_instance::<Rational>(missing).unwrap_err();
        assert!(err.to_string().contains("missing entry"), "{err}");
    }

    #[test]
    fn floats_and_garbage_rejected() {
        let text = r#"{"n":1,"m":1,"valuations":[{"type":"additive","values":[0.5]}]}"#;
        let err = parse_instance::<Rational>(text).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "valuations[0].values[0]"));
        let text = r#"{"n":1,"m":1,"valuations":[{"type":"additive","values":["x/2"]}]}"#;
        assert!(parse_instance::<Rational>(text).is_err());
        let text = r#"{"n":1,"m":1,"valuations":[{"type":"cubic","values":["1"]}]}"#;
        assert!(parse_instance::<Rational>(text).is_err());
    }

    #[test]
    fn worthless_good_reported_with_path() {
        let text = r#"{"n":2,"m":2,"valuations":[
            {"type":"additive","values":["1","0"]},
            {"type":"additive","values":["1","0"]}]}"#;
        let err = parse_instance::<Rational>(text).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance { ref path, .. } if path == "goods[2]"));
    }

    #[test]
    fn count_mismatch_rejected() {
        let text = r#"{"n":3,"m":1,"valuations":[{"type":"additive","values":["1"]}]}"#;
        assert!(parse_instance::<Rational>(text).is_err());
    }

    #[test]
    fn allocation_documents() {
        let alloc = parse_allocation(r#"{"bundles": [[2, 6], [1, 3, 4, 5]]}"#, 6).unwrap();
        assert_eq!(alloc.bundle(0), GoodSet::from_labels([2, 6]));
        assert_eq!(serialize_allocation(&alloc), "{\"bundles\":[[2,6],[1,3,4,5]]}\n");
        assert!(parse_allocation(r#"{"bundles": [[1, 1], [2]]}"#, 2).is_err());
        assert!(parse_allocation(r#"{"bundles": [[1], [1, 2]]}"#, 2).is_err());
        assert!(parse_allocation(r#"{"bundles": [[1]]}"#, 2).is_err());
    }
}

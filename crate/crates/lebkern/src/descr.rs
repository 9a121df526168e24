//! JSON descriptors for measures, sets, and functions: the wire format of
//! the command-line interface.
//!
//! Numeric values are exact rational text (`p/q`, `p`, `inf`, `-inf`).
//! Finite-space descriptors use element labels (`e0`, `e1`, ...); real-line
//! descriptors use the interval grammar `[a,b)`, and a counting or Dirac
//! descriptor is taken on the real line exactly when its points parse as
//! rationals rather than labels.

use crate::intervals::{Interval, IntervalSet};
use crate::lebint::{MeasurableFn, PwlPiece};
use crate::measures::{
    tensor_measure, BoxSet, FiniteSpace, Measure, MeasurableSet, MeasurableSpace, Point,
};
use crate::product::StepFn2D;
use crate::setsys::{FiniteUniverse, SubsetFamily};
use crate::simplefn::{Repr, SimpleFn, Term};
use crate::xreal::{parse_rat, Rat, XReal};
use serde_json::Value;

/// A descriptor error: malformed JSON shape or unparseable field.
#[derive(Clone, Debug, thiserror::Error)]
#[error("descriptor error: {0}")]
pub struct DescrError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, DescrError> {
    Err(DescrError(msg.into()))
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value, DescrError> {
    v.get(name)
        .ok_or_else(|| DescrError(format!("missing field {name:?}")))
}

fn as_str<'v>(v: &'v Value, what: &str) -> Result<&'v str, DescrError> {
    v.as_str()
        .ok_or_else(|| DescrError(format!("{what} must be a string")))
}

fn rat_of(v: &Value, what: &str) -> Result<Rat, DescrError> {
    let s = as_str(v, what)?;
    parse_rat(s).map_err(|e| DescrError(format!("{what}: {e}")))
}

fn xreal_of(v: &Value, what: &str) -> Result<XReal, DescrError> {
    let s = as_str(v, what)?;
    s.parse::<XReal>()
        .map_err(|e| DescrError(format!("{what}: {e}")))
}

/// Whether every entry looks like an element label rather than a number.
fn all_labels(entries: &[&str]) -> bool {
    entries
        .iter()
        .all(|s| s.starts_with('e') && s[1..].chars().all(|c| c.is_ascii_digit()) && s.len() > 1)
}

fn label_index(label: &str) -> Result<usize, DescrError> {
    if !label.starts_with('e') {
        return err(format!("bad element label {label:?}"));
    }
    label[1..]
        .parse::<usize>()
        .map_err(|_| DescrError(format!("bad element label {label:?}")))
}

/// Parses a measurable-set descriptor: an array of labels (finite space of
/// the given size), an array of interval strings (real line), or
/// `{"boxes": [[sides1, sides2], ...]}`.
pub fn parse_set(v: &Value, finite_size: Option<usize>) -> Result<MeasurableSet, DescrError> {
    if let Some(obj) = v.as_object() {
        let boxes = obj
            .get("boxes")
            .and_then(Value::as_array)
            .ok_or_else(|| DescrError("box set needs a \"boxes\" array".into()))?;
        let mut rects = Vec::with_capacity(boxes.len());
        for b in boxes {
            let pair = b
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| DescrError("each box is a [side1, side2] pair".into()))?;
            rects.push((parse_interval_set(&pair[0])?, parse_interval_set(&pair[1])?));
        }
        return BoxSet::new(rects)
            .map(MeasurableSet::Boxes)
            .map_err(|e| DescrError(e.to_string()));
    }
    let arr = v
        .as_array()
        .ok_or_else(|| DescrError("set descriptor must be an array or a box object".into()))?;
    let strings: Vec<&str> = arr
        .iter()
        .map(|e| as_str(e, "set entry"))
        .collect::<Result<_, _>>()?;
    if strings.is_empty() {
        return Ok(match finite_size {
            Some(_) => MeasurableSet::Finite(0),
            None => MeasurableSet::Real(IntervalSet::empty()),
        });
    }
    if strings.iter().any(|s| s.contains(',')) || finite_size.is_none() && !all_labels(&strings) {
        let set = IntervalSet::from_strings(&strings).map_err(|e| DescrError(e.to_string()))?;
        return Ok(MeasurableSet::Real(set));
    }
    let mut mask = 0u32;
    let mut max_index = 0usize;
    for s in &strings {
        let i = label_index(s)?;
        max_index = max_index.max(i);
        mask |= 1 << i;
    }
    if let Some(size) = finite_size {
        if max_index >= size && !strings.is_empty() {
            return err(format!("label e{max_index} outside universe of size {size}"));
        }
    }
    Ok(MeasurableSet::Finite(mask))
}

fn parse_interval_set(v: &Value) -> Result<IntervalSet, DescrError> {
    let arr = v
        .as_array()
        .ok_or_else(|| DescrError("interval set must be an array of interval strings".into()))?;
    let strings: Vec<&str> = arr
        .iter()
        .map(|e| as_str(e, "interval"))
        .collect::<Result<_, _>>()?;
    IntervalSet::from_strings(&strings).map_err(|e| DescrError(e.to_string()))
}

/// Parses a measure descriptor.
pub fn parse_measure(v: &Value) -> Result<Measure, DescrError> {
    let kind = as_str(field(v, "kind")?, "measure kind")?;
    match kind {
        "lebesgue" => Ok(Measure::lebesgue()),
        "table" => {
            let weights = field(v, "weights")?
                .as_object()
                .ok_or_else(|| DescrError("table weights must be an object".into()))?;
            let mut indexed: Vec<(usize, XReal)> = Vec::with_capacity(weights.len());
            for (label, value) in weights {
                indexed.push((label_index(label)?, xreal_of(value, "weight")?));
            }
            indexed.sort_by_key(|(i, _)| *i);
            let size = indexed.len();
            if indexed.iter().enumerate().any(|(k, (i, _))| k != *i) {
                return err("table weights must cover e0..e{n-1} exactly");
            }
            let table: Vec<XReal> = indexed.into_iter().map(|(_, w)| w).collect();
            Measure::finite_table(FiniteSpace::discrete(size), table)
                .map_err(|e| DescrError(e.to_string()))
        }
        "counting" => {
            let ys = field(v, "Y")?
                .as_array()
                .ok_or_else(|| DescrError("counting Y must be an array".into()))?;
            let strings: Vec<&str> = ys
                .iter()
                .map(|e| as_str(e, "counting point"))
                .collect::<Result<_, _>>()?;
            if all_labels(&strings) && !strings.is_empty() {
                let mut mask = 0u32;
                let mut max_index = 0usize;
                for s in &strings {
                    let i = label_index(s)?;
                    mask |= 1 << i;
                    max_index = max_index.max(i);
                }
                let size = v
                    .get("universe")
                    .and_then(Value::as_u64)
                    .map(|n| n as usize)
                    .unwrap_or(max_index + 1);
                Measure::counting_finite(FiniteSpace::discrete(size), mask)
                    .map_err(|e| DescrError(e.to_string()))
            } else {
                let points = strings
                    .iter()
                    .map(|s| parse_rat(s).map_err(|e| DescrError(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Measure::counting_real(points))
            }
        }
        "dirac" => {
            let at = as_str(field(v, "at")?, "dirac point")?;
            if all_labels(&[at]) {
                let i = label_index(at)?;
                let size = v
                    .get("universe")
                    .and_then(Value::as_u64)
                    .map(|n| n as usize)
                    .unwrap_or(i + 1);
                Measure::dirac_finite(FiniteSpace::discrete(size), i)
                    .map_err(|e| DescrError(e.to_string()))
            } else {
                let r = parse_rat(at).map_err(|e| DescrError(e.to_string()))?;
                Ok(Measure::dirac_real(r))
            }
        }
        "tensor" => {
            let left = parse_measure(field(v, "left")?)?;
            let right = parse_measure(field(v, "right")?)?;
            tensor_measure(&left, &right).map_err(|e| DescrError(e.to_string()))
        }
        "restricted" => {
            let base = parse_measure(field(v, "base")?)?;
            let size = match base.space() {
                MeasurableSpace::Finite(fs) => Some(fs.size()),
                _ => None,
            };
            let y = parse_set(field(v, "Y")?, size)?;
            Measure::restricted(base, y).map_err(|e| DescrError(e.to_string()))
        }
        "trace" => {
            let base = parse_measure(field(v, "base")?)?;
            let size = match base.space() {
                MeasurableSpace::Finite(fs) => Some(fs.size()),
                _ => None,
            };
            let y = parse_set(field(v, "Y")?, size)?;
            Measure::trace(base, y).map_err(|e| DescrError(e.to_string()))
        }
        other => err(format!("unknown measure kind {other:?}")),
    }
}

/// Parses a function descriptor: `step`, `pwl`, or `map`.
pub fn parse_fn(v: &Value) -> Result<MeasurableFn, DescrError> {
    let kind = as_str(field(v, "kind")?, "function kind")?;
    match kind {
        "step" => {
            let f = parse_simplefn_real(v)?;
            MeasurableFn::step(f).map_err(|e| DescrError(e.to_string()))
        }
        "pwl" => {
            let pieces_v = field(v, "pieces")?
                .as_array()
                .ok_or_else(|| DescrError("pwl pieces must be an array".into()))?;
            let mut pieces = Vec::with_capacity(pieces_v.len());
            let mut domain = IntervalSet::empty();
            for p in pieces_v {
                let interval: Interval = as_str(field(p, "interval")?, "interval")?
                    .parse()
                    .map_err(|e| DescrError(format!("{e}")))?;
                let slope = rat_of(field(p, "a")?, "slope")?;
                let intercept = rat_of(field(p, "b")?, "intercept")?;
                domain = domain.union(&IntervalSet::from_interval(interval.clone()));
                pieces.push(PwlPiece {
                    interval,
                    slope,
                    intercept,
                });
            }
            MeasurableFn::piecewise_linear(domain, pieces).map_err(|e| DescrError(e.to_string()))
        }
        "map" => {
            let values = field(v, "values")?
                .as_object()
                .ok_or_else(|| DescrError("map values must be an object".into()))?;
            let mut indexed: Vec<(usize, XReal)> = Vec::with_capacity(values.len());
            for (label, value) in values {
                indexed.push((label_index(label)?, xreal_of(value, "value")?));
            }
            indexed.sort_by_key(|(i, _)| *i);
            let size = indexed.len();
            if indexed.iter().enumerate().any(|(k, (i, _))| k != *i) {
                return err("map values must cover e0..e{n-1} exactly");
            }
            let table: Vec<XReal> = indexed.into_iter().map(|(_, w)| w).collect();
            MeasurableFn::finite_map(FiniteSpace::discrete(size), table)
                .map_err(|e| DescrError(e.to_string()))
        }
        other => err(format!("unknown function kind {other:?}")),
    }
}

/// Parses the embedded simple-function term list of a `step` descriptor:
/// `{"terms": [{"coef": "p/q", "support": [intervals]}], "repr"?: ...}`.
fn parse_simplefn_real(v: &Value) -> Result<SimpleFn, DescrError> {
    let terms_v = field(v, "terms")?
        .as_array()
        .ok_or_else(|| DescrError("terms must be an array".into()))?;
    let mut terms = Vec::with_capacity(terms_v.len());
    for t in terms_v {
        let coef = rat_of(field(t, "coef")?, "coef")?;
        let support = MeasurableSet::Real(parse_interval_set(field(t, "support")?)?);
        terms.push(Term { coef, support });
    }
    let f = SimpleFn::new(MeasurableSpace::RealLine, terms)
        .map_err(|e| DescrError(e.to_string()))?;
    match v.get("repr").and_then(Value::as_str) {
        None | Some("simple") => Ok(f),
        Some("disjoint") | Some("canonical") => Ok(f.canonicalize()),
        Some(other) => err(format!("unknown repr {other:?}")),
    }
}

/// Parses a 2-D step function `{"xs": [...], "ys": [...], "cells": [[...]]}`.
pub fn parse_step2d(v: &Value) -> Result<StepFn2D, DescrError> {
    let axis = |name: &str| -> Result<Vec<Rat>, DescrError> {
        field(v, name)?
            .as_array()
            .ok_or_else(|| DescrError(format!("{name} must be an array")))?
            .iter()
            .map(|e| rat_of(e, name))
            .collect()
    };
    let xs = axis("xs")?;
    let ys = axis("ys")?;
    let cells_v = field(v, "cells")?
        .as_array()
        .ok_or_else(|| DescrError("cells must be an array of rows".into()))?;
    let mut cells = Vec::with_capacity(cells_v.len());
    for row in cells_v {
        let row_v = row
            .as_array()
            .ok_or_else(|| DescrError("each cell row must be an array".into()))?;
        cells.push(
            row_v
                .iter()
                .map(|e| rat_of(e, "cell"))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    StepFn2D::new(xs, ys, cells).map_err(|e| DescrError(e.to_string()))
}

/// Parses a subset family over an explicit universe:
/// `{"universe": 3, "generators": [["e0"], ["e1","e2"]]}`-style arrays.
pub fn parse_family(universe: usize, v: &Value) -> Result<SubsetFamily, DescrError> {
    let arr = v
        .as_array()
        .ok_or_else(|| DescrError("family must be an array of label arrays".into()))?;
    let mut sets = Vec::with_capacity(arr.len());
    for entry in arr {
        let labels = entry
            .as_array()
            .ok_or_else(|| DescrError("each member must be an array of labels".into()))?
            .iter()
            .map(|l| as_str(l, "label").map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        sets.push(labels);
    }
    let u = FiniteUniverse::new(universe).map_err(|e| DescrError(e.to_string()))?;
    SubsetFamily::from_label_sets(u, &sets).map_err(|e| DescrError(e.to_string()))
}

/// Renders a family as the label-array JSON used by `sigma-gen`.
pub fn family_to_json(fam: &SubsetFamily) -> Value {
    Value::Array(
        fam.to_label_sets()
            .into_iter()
            .map(|s| Value::Array(s.into_iter().map(Value::String).collect()))
            .collect(),
    )
}

/// Renders a point for diagnostics.
pub fn point_to_string(p: &Point) -> String {
    match p {
        Point::Elem(x) => format!("e{x}"),
        Point::Real(r) => crate::xreal::format_rat(r),
    }
}

/// Renders a simple function's terms in the wire shape (used by reports).
pub fn simplefn_to_json(f: &SimpleFn) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| {
            let support = match &t.support {
                MeasurableSet::Real(s) => Value::Array(
                    s.to_strings().into_iter().map(Value::String).collect(),
                ),
                MeasurableSet::Finite(m) => Value::Array(
                    (0..32)
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| Value::String(format!("e{i}")))
                        .collect(),
                ),
                MeasurableSet::Boxes(_) => Value::Null,
            };
            serde_json::json!({
                "coef": crate::xreal::format_rat(&t.coef),
                "support": support,
            })
        })
        .collect();
    serde_json::json!({
        "terms": terms,
        "repr": match f.repr() {
            Repr::Simple => "simple",
            Repr::Disjoint => "disjoint",
            Repr::Canonical => "canonical",
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parse_measures_round() {
        let m = parse_measure(&json!({"kind": "lebesgue"})).unwrap();
        assert_eq!(m.kind_name(), "lebesgue");
        let m = parse_measure(&json!({"kind": "dirac", "at": "3/4"})).unwrap();
        assert_eq!(m.kind_name(), "dirac");
        let m = parse_measure(&json!({"kind": "dirac", "at": "e1", "universe": 3})).unwrap();
        assert_eq!(m.kind_name(), "dirac");
        let m = parse_measure(
            &json!({"kind": "table", "weights": {"e0": "1/2", "e1": "inf"}}),
        )
        .unwrap();
        assert_eq!(m.kind_name(), "table");
        let m = parse_measure(&json!({"kind": "counting", "Y": ["0", "1/2"]})).unwrap();
        assert_eq!(m.kind_name(), "counting");
        let m = parse_measure(&json!({
            "kind": "restricted",
            "base": {"kind": "lebesgue"},
            "Y": ["[0,1]"],
        }))
        .unwrap();
        assert_eq!(m.kind_name(), "restricted");
        let m = parse_measure(&json!({
            "kind": "tensor",
            "left": {"kind": "table", "weights": {"e0": "1"}},
            "right": {"kind": "table", "weights": {"e0": "2"}},
        }))
        .unwrap();
        assert_eq!(m.kind_name(), "tensor");
        assert!(parse_measure(&json!({"kind": "nope"})).is_err());
    }

    #[test]
    fn parse_functions() {
        let f = parse_fn(&json!({
            "kind": "pwl",
            "pieces": [{"interval": "[0,1]", "a": "1", "b": "0"}],
        }))
        .unwrap();
        assert!(matches!(f, MeasurableFn::PiecewiseLinear { .. }));
        let f = parse_fn(&json!({
            "kind": "step",
            "terms": [{"coef": "3/2", "support": ["[0,2)"]}],
        }))
        .unwrap();
        assert!(matches!(f, MeasurableFn::Step(_)));
        let f = parse_fn(&json!({
            "kind": "map",
            "values": {"e0": "1", "e1": "inf"},
        }))
        .unwrap();
        assert!(matches!(f, MeasurableFn::FiniteMap { .. }));
        assert!(parse_fn(&json!({"kind": "map", "values": {"e0": "1", "e2": "2"}})).is_err());
    }

    #[test]
    fn parse_sets_disambiguates() {
        let s = parse_set(&json!(["e0", "e2"]), Some(3)).unwrap();
        assert_eq!(s, MeasurableSet::Finite(0b101));
        let s = parse_set(&json!(["[0,1)", "(2,inf)"]), None).unwrap();
        assert!(matches!(s, MeasurableSet::Real(_)));
        let s = parse_set(
            &json!({"boxes": [[["[0,1]"], ["[0,2]"]]]}),
            None,
        )
        .unwrap();
        assert!(matches!(s, MeasurableSet::Boxes(_)));
    }

    #[test]
    fn family_round_trip() {
        let fam = parse_family(3, &json!([["e0"], ["e1", "e2"]])).unwrap();
        let back = family_to_json(&fam);
        assert_eq!(back, json!([["e0"], ["e1", "e2"]]));
    }
}

//! Canonical JSON form of an element:
//!
//! ```json
//! {"ring":"onplus:3","kind":"central","terms":[{"label":1,"re":"1","im":"0"}]}
//! ```
//!
//! Terms are sorted by label and list nonzero coefficients only. Coefficients are
//! decimal strings in shortest round-trip form, so the text is a stable cache key.
//! Labels are levels (integers), words (`"aB"`, `"e"`) or integer arrays.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::{make_element, Element, Payload};
use crate::error::{domain, Result};
use crate::fusion::{IrrLabel, RingId, Word};

fn label_value(l: &IrrLabel) -> Value {
    match l {
        IrrLabel::Level(k) => json!(k),
        IrrLabel::Word(w) => json!(w.to_string()),
        IrrLabel::Vector(v) => json!(v),
    }
}

fn term(l: &IrrLabel, z: &Complex64) -> String {
    format!(
        "{{\"label\":{},\"re\":\"{:?}\",\"im\":\"{:?}\"}}",
        label_value(l),
        z.re,
        z.im
    )
}

pub fn element_to_json(e: &Element) -> String {
    let (kind, terms): (&str, Vec<String>) = match e.payload() {
        Payload::Central(c) => (
            "central",
            c.iter()
                .enumerate()
                .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
                .map(|(k, z)| term(&IrrLabel::Level(k as u32), z))
                .collect(),
        ),
        Payload::Points(m) => ("points", m.iter().map(|(l, z)| term(l, z)).collect()),
    };
    // Written by hand to keep the key order fixed.
    format!(
        "{{\"ring\":{},\"kind\":\"{kind}\",\"terms\":[{}]}}",
        Value::String(e.ring().to_string()),
        terms.join(",")
    )
}

fn parse_number(v: &Value, what: &str) -> Result<f64> {
    match v {
        Value::String(s) => s.trim().parse::<f64>().or_else(|_| domain(format!("{what}: {s:?} is not a number"))),
        Value::Number(n) => n.as_f64().map_or_else(|| domain(format!("{what}: bad number")), Ok),
        Value::Null => Ok(0.0),
        _ => domain(format!("{what}: expected a decimal string")),
    }
}

fn parse_label(v: &Value) -> Result<IrrLabel> {
    match v {
        Value::Number(n) => match n.as_u64() {
            Some(k) if k <= u32::MAX as u64 => Ok(IrrLabel::Level(k as u32)),
            _ => domain(format!("level label {n} must be a nonnegative integer")),
        },
        Value::String(s) => Ok(IrrLabel::Word(Word::parse(s)?)),
        Value::Array(items) => items
            .iter()
            .map(|x| x.as_i64().map_or_else(|| domain("vector labels hold integers"), Ok))
            .collect::<Result<Vec<i64>>>()
            .map(IrrLabel::Vector),
        _ => domain(format!("unrecognized label {v}")),
    }
}

pub fn element_from_json(text: &str) -> Result<Element> {
    let v: Value = serde_json::from_str(text).or_else(|e| domain(format!("element JSON: {e}")))?;
    let obj = v.as_object().map_or_else(|| domain("element JSON must be an object"), Ok)?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "ring" | "kind" | "terms") {
            return domain(format!("unknown element key {key:?}"));
        }
    }
    let ring: RingId = obj
        .get("ring")
        .and_then(Value::as_str)
        .map_or_else(|| domain("missing \"ring\""), Ok)?
        .parse()?;
    let kind = obj.get("kind").and_then(Value::as_str).unwrap_or(if ring.is_level_ring() {
        "central"
    } else {
        "points"
    });
    let terms = obj.get("terms").and_then(Value::as_array).map_or_else(|| domain("missing \"terms\""), Ok)?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_object().map_or_else(|| domain("terms must be objects"), Ok)?;
        for key in t.keys() {
            if !matches!(key.as_str(), "label" | "re" | "im") {
                return domain(format!("unknown term key {key:?}"));
            }
        }
        let label = parse_label(t.get("label").map_or_else(|| domain("term without label"), Ok)?)?;
        let re = parse_number(t.get("re").unwrap_or(&Value::Null), "re")?;
        let im = parse_number(t.get("im").unwrap_or(&Value::Null), "im")?;
        parsed.push((label, Complex64::new(re, im)));
    }
    match kind {
        "central" => {
            let mut c: Vec<Complex64> = Vec::new();
            for (l, z) in parsed {
                let IrrLabel::Level(k) = l else {
                    return domain(format!("central element has non-level label {l}"));
                };
                let k = k as usize;
                if k >= 1 << 24 {
                    return domain(format!("level {k} is too large"));
                }
                if c.len() <= k {
                    c.resize(k + 1, Complex64::new(0.0, 0.0));
                }
                c[k] += z;
            }
            make_element(ring, Payload::Central(c))
        }
        "points" => {
            let mut m = BTreeMap::new();
            for (l, z) in parsed {
                *m.entry(l).or_insert(Complex64::new(0.0, 0.0)) += z;
            }
            make_element(ring, Payload::Points(m))
        }
        other => domain(format!("unknown element kind {other:?}")),
    }
}

//! The JSON space-model file format.
//!
//! ```json
//! {
//!   "name": "S2@4",
//!   "truncation": 4,
//!   "groups": {"2": {"orders": [0]}, "3": {"orders": [0]}, "4": {"orders": [2]}},
//!   "brackets": [
//!     {"a": [2, 0], "b": [2, 0], "value": {"degree": 3, "coeffs": [2]}, "note": "..."}
//!   ]
//! }
//! ```
//!
//! Brackets given in one order only are mirrored with the graded sign before
//! validation. Coefficients are arbitrary-precision integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use super::{FgAbelianGroup, Generator, PiElement, SpaceModel};
use crate::error::{Error, Result};

/// Parses, mirrors and validates a space-model document.
pub fn load_space(document: &str) -> Result<SpaceModel> {
    let root = parse_json(document)?;
    let obj = expect_object(&root, "$")?;
    check_keys(obj, "$", &["name", "truncation", "groups", "brackets"], &["name", "truncation", "groups"])?;

    let name = match &obj["name"] {
        Value::String(s) => s.clone(),
        _ => return Err(Error::schema("name", "expected a string")),
    };
    let truncation = expect_u32(&obj["truncation"], "truncation")?;
    if truncation < 2 {
        return Err(Error::schema("truncation", "truncation must be at least 2"));
    }

    let groups_obj = expect_object(&obj["groups"], "groups")?;
    let mut groups = Vec::new();
    for (key, value) in groups_obj {
        let loc = format!("groups.\"{key}\"");
        let degree: u32 = key
            .parse()
            .map_err(|_| Error::schema(&loc, "degree keys must be decimal integers"))?;
        if degree < 2 {
            return Err(Error::schema(&loc, format!("degree {degree} is below 2; models are simply connected")));
        }
        if degree > truncation {
            return Err(Error::schema(&loc, format!("degree {degree} exceeds truncation {truncation}")));
        }
        let g = expect_object(value, &loc)?;
        check_keys(g, &loc, &["orders"], &["orders"])?;
        let orders_loc = format!("{loc}.orders");
        let orders = expect_array(&g["orders"], &orders_loc)?
            .iter()
            .enumerate()
            .map(|(i, v)| expect_u64(v, &format!("{orders_loc}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = orders.iter().position(|&d| d == 1) {
            return Err(Error::schema(format!("{orders_loc}[{i}]"), "a factor of order 1 is not allowed"));
        }
        groups.push((degree, FgAbelianGroup { orders }));
    }
    let mut model = SpaceModel::new(name, truncation, groups).map_err(|e| Error::schema("groups", e.to_string()))?;

    let empty = Vec::new();
    let brackets = match obj.get("brackets") {
        Some(v) => expect_array(v, "brackets")?,
        None => &empty,
    };
    let mut seen = BTreeSet::new();
    for (i, entry) in brackets.iter().enumerate() {
        let loc = format!("brackets[{i}]");
        let e = expect_object(entry, &loc)?;
        check_keys(e, &loc, &["a", "b", "value", "note"], &["a", "b", "value"])?;
        let a = expect_generator(&e["a"], &format!("{loc}.a"))?;
        let b = expect_generator(&e["b"], &format!("{loc}.b"))?;
        if !seen.insert((a, b)) {
            return Err(Error::schema(&loc, format!("duplicate entry for [{a},{b}]")));
        }
        let value = expect_value(&model, &e["value"], &format!("{loc}.value"))?;
        let note = match e.get("note") {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(Error::schema(format!("{loc}.note"), "expected a string")),
        };
        model.set_bracket(a, b, value, note);
    }

    model.complete_symmetry();
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(Error::Validation(violations))
    }
}

/// Writes a model in the file format, every bracket entry in both orders.
pub fn serialize_space(model: &SpaceModel) -> String {
    let mut groups = Map::new();
    for (d, g) in model.groups() {
        let orders = g.orders().iter().map(|&o| Value::from(o)).collect();
        let mut obj = Map::new();
        obj.insert("orders".into(), Value::Array(orders));
        groups.insert(d.to_string(), Value::Object(obj));
    }
    let brackets = model
        .brackets()
        .iter()
        .map(|(a, b, v)| {
            let mut obj = Map::new();
            obj.insert("a".into(), generator_json(a));
            obj.insert("b".into(), generator_json(b));
            let mut value = Map::new();
            value.insert("degree".into(), Value::from(v.degree()));
            value.insert("coeffs".into(), coeffs_json(v.coeffs()));
            obj.insert("value".into(), Value::Object(value));
            if let Some(note) = model.note(a, b) {
                obj.insert("note".into(), Value::String(note.to_string()));
            }
            Value::Object(obj)
        })
        .collect();
    let mut root = Map::new();
    root.insert("name".into(), Value::String(model.name().to_string()));
    root.insert("truncation".into(), Value::from(model.truncation()));
    root.insert("groups".into(), Value::Object(groups));
    root.insert("brackets".into(), Value::Array(brackets));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values always serialize");
    out.push('\n');
    out
}

/// Parses JSON text, turning syntax errors into [`Error::Parse`].
pub(crate) fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.find(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub(crate) fn coeffs_json(coeffs: &[BigInt]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|c| Value::Number(c.to_string().parse::<Number>().expect("integers are JSON numbers")))
            .collect(),
    )
}

fn generator_json(g: Generator) -> Value {
    Value::Array(vec![Value::from(g.degree), Value::from(g.index)])
}

pub(crate) fn expect_object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(loc, "expected an object"))
}

pub(crate) fn expect_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(loc, "expected an array"))
}

fn check_keys(obj: &Map<String, Value>, loc: &str, allowed: &[&str], required: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::schema(loc, format!("unknown field `{key}`")));
        }
    }
    for key in required {
        if !obj.contains_key(*key) {
            return Err(Error::schema(loc, format!("missing field `{key}`")));
        }
    }
    Ok(())
}

pub(crate) fn expect_bigint(v: &Value, loc: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::schema(loc, format!("expected an integer, got {n}"))),
        _ => Err(Error::schema(loc, "expected an integer")),
    }
}

fn expect_u64(v: &Value, loc: &str) -> Result<u64> {
    let n = expect_bigint(v, loc)?;
    u64::try_from(&n).map_err(|_| Error::schema(loc, format!("expected a nonnegative integer, got {n}")))
}

fn expect_u32(v: &Value, loc: &str) -> Result<u32> {
    let n = expect_bigint(v, loc)?;
    u32::try_from(&n).map_err(|_| Error::schema(loc, format!("expected a small nonnegative integer, got {n}")))
}

fn expect_generator(v: &Value, loc: &str) -> Result<Generator> {
    let arr = expect_array(v, loc)?;
    if arr.len() != 2 {
        return Err(Error::schema(loc, "expected [degree, generator index]"));
    }
    let degree = expect_u32(&arr[0], &format!("{loc}[0]"))?;
    let index = expect_u32(&arr[1], &format!("{loc}[1]"))? as usize;
    Ok(Generator::new(degree, index))
}

fn expect_value(model: &SpaceModel, v: &Value, loc: &str) -> Result<PiElement> {
    let obj = expect_object(v, loc)?;
    check_keys(obj, loc, &["degree", "coeffs"], &["degree", "coeffs"])?;
    let degree = expect_u32(&obj["degree"], &format!("{loc}.degree"))?;
    let coeffs_loc = format!("{loc}.coeffs");
    let coeffs = expect_array(&obj["coeffs"], &coeffs_loc)?
        .iter()
        .enumerate()
        .map(|(i, c)| expect_bigint(c, &format!("{coeffs_loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    model
        .element(degree, coeffs)
        .map_err(|e| Error::schema(coeffs_loc, e.to_string()))
}

//! JSON schemas for the file-level interfaces.
//!
//! Groups:      {"free_rank": n, "torsion": [d1, d2, ...]}
//! Matrices:    arrays of integer arrays (row-major); entries that do not
//!              fit in 53 bits are written as decimal strings and accepted
//!              in either form
//! Homs:        {"source": group, "target": group, "matrix": matrix}
//! Q/Z values:  "p/q" strings in reduced form, 0 <= p < q
//! Characters:  arrays of "p/q" strings indexed by torsion generators
//! Extensions:  {"E": group, "iota": hom, "pi": hom}
//! Families:    {"bound": M, "psi": {"m": [values mod m]}}
//! Complex matrices: arrays of rows of [re, im] pairs

use crate::error::{Error, Result};
use crate::group::{torsion_subgroup, FgGroup, GroupHom};
use crate::lambda::LambdaFamily;
use crate::matrix::IntMatrix;
use crate::pairing::ExtensionClass;
use crate::qz::{QZHom, QZValue};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

fn bad(path: &str, what: &str) -> Error {
    Error::Input(format!("{path}: {what}"))
}

fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= (1 << 53) => json!(x),
        _ => json!(v.to_string()),
    }
}

fn bigint_from_json(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(bad(path, "expected an integer"))
            }
        }
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| bad(path, &format!("bad integer literal {s:?}")))
        }
        _ => Err(bad(path, "expected an integer or integer string")),
    }
}

pub fn group_to_json(g: &FgGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.invariant_factors().iter().map(bigint_to_json).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value, path: &str) -> Result<FgGroup> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a group object"))?;
    let free_rank =
        obj.get("free_rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad(&format!("{path}.free_rank"), "expected a count"))? as usize;
    let torsion = obj
        .get("torsion")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(&format!("{path}.torsion"), "expected an array"))?;
    let factors = torsion
        .iter()
        .enumerate()
        .map(|(i, t)| bigint_from_json(t, &format!("{path}.torsion[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    FgGroup::new(free_rank, factors)
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| bigint_to_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(path, "expected an array of rows"))?;
    let mut data: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected a row array"))?;
        data.push(
            row.iter()
                .enumerate()
                .map(|(j, e)| bigint_from_json(e, &format!("{path}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let r = data.len();
    let c = data.first().map_or(0, Vec::len);
    if data.iter().any(|row| row.len() != c) {
        return Err(bad(path, "rows have unequal lengths"));
    }
    Ok(IntMatrix::from_fn(r, c, |i, j| data[i][j].clone()))
}

pub fn hom_to_json(h: &GroupHom) -> Value {
    json!({
        "source": group_to_json(h.source()),
        "target": group_to_json(h.target()),
        "matrix": matrix_to_json(h.matrix()),
    })
}

pub fn hom_from_json(v: &Value, path: &str) -> Result<GroupHom> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a hom object"))?;
    let source = group_from_json(
        obj.get("source")
            .ok_or_else(|| bad(path, "missing source"))?,
        &format!("{path}.source"),
    )?;
    let target = group_from_json(
        obj.get("target")
            .ok_or_else(|| bad(path, "missing target"))?,
        &format!("{path}.target"),
    )?;
    let matrix = matrix_from_json(
        obj.get("matrix")
            .ok_or_else(|| bad(path, "missing matrix"))?,
        &format!("{path}.matrix"),
    )?;
    GroupHom::new(source, target, matrix)
}

pub fn qz_values_to_json(values: &[QZValue]) -> Value {
    Value::Array(values.iter().map(|v| json!(v.to_string())).collect())
}

pub fn qz_values_from_json(v: &Value, path: &str) -> Result<Vec<QZValue>> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(path, "expected an array of \"p/q\" strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected a string"))?
                .parse::<QZValue>()
        })
        .collect()
}

pub fn qzhom_to_json(h: &QZHom) -> Value {
    json!({
        "source": group_to_json(h.source()),
        "values": qz_values_to_json(h.values()),
    })
}

pub fn extension_to_json(x: &ExtensionClass) -> Value {
    json!({
        "E": group_to_json(x.e_group()),
        "iota": hom_to_json(x.iota()),
        "pi": hom_to_json(x.pi()),
    })
}

pub fn extension_from_json(v: &Value, path: &str) -> Result<ExtensionClass> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected an extension object"))?;
    let e = group_from_json(
        obj.get("E").ok_or_else(|| bad(path, "missing E"))?,
        &format!("{path}.E"),
    )?;
    let iota = hom_from_json(
        obj.get("iota").ok_or_else(|| bad(path, "missing iota"))?,
        &format!("{path}.iota"),
    )?;
    let pi = hom_from_json(
        obj.get("pi").ok_or_else(|| bad(path, "missing pi"))?,
        &format!("{path}.pi"),
    )?;
    ExtensionClass::new(e, iota, pi)
}

pub fn family_to_json(f: &LambdaFamily) -> Result<Value> {
    let mut psi = Map::new();
    for m in f.stored_stages() {
        psi.insert(m.to_string(), hom_to_json(&f.psi(m)?));
    }
    Ok(json!({
        "k1": group_to_json(f.k1()),
        "bound": f.bound(),
        "psi": Value::Object(psi),
    }))
}

pub fn family_from_json(v: &Value, path: &str) -> Result<LambdaFamily> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a family object"))?;
    let k1 = group_from_json(
        obj.get("k1").ok_or_else(|| bad(path, "missing k1"))?,
        &format!("{path}.k1"),
    )?;
    let bound = obj
        .get("bound")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(&format!("{path}.bound"), "expected a positive integer"))?;
    let psi_obj = obj
        .get("psi")
        .and_then(Value::as_object)
        .ok_or_else(|| bad(&format!("{path}.psi"), "expected an object keyed by stage"))?;
    let mut psi = BTreeMap::new();
    for (k, val) in psi_obj {
        let m: u64 = k
            .parse()
            .map_err(|_| bad(&format!("{path}.psi.{k}"), "stage keys must be integers"))?;
        // either a full hom object (the emitted form) or a bare value row
        let row = match val {
            Value::Object(o) => o
                .get("matrix")
                .and_then(Value::as_array)
                .and_then(|rows| rows.first())
                .cloned()
                .ok_or_else(|| bad(&format!("{path}.psi.{k}"), "hom object needs a matrix"))?,
            other => other.clone(),
        };
        let arr = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}.psi.{k}"), "expected an array of values"))?;
        let values = arr
            .iter()
            .enumerate()
            .map(|(i, e)| bigint_from_json(e, &format!("{path}.psi.{k}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        psi.insert(m, values);
    }
    LambdaFamily::from_parts(&k1, bound, psi)
}

/// A character of the torsion subgroup of `k1`, read as a bare value array.
pub fn delta_from_json(k1: &FgGroup, v: &Value, path: &str) -> Result<QZHom> {
    let (tk1, _) = torsion_subgroup(k1);
    QZHom::new(tk1, qz_values_from_json(v, path)?)
}

pub fn cmatrix_to_json(m: &crate::detpair::CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn cmatrix_from_json(v: &Value, path: &str) -> Result<crate::detpair::CMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(path, "expected an array of rows"))?;
    let mut data: Vec<Vec<num_complex::Complex64>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected a row array"))?;
        let mut out = Vec::new();
        for (j, e) in row.iter().enumerate() {
            let p = format!("{path}[{i}][{j}]");
            let pair = e
                .as_array()
                .ok_or_else(|| bad(&p, "expected an [re, im] pair"))?;
            if pair.len() != 2 {
                return Err(bad(&p, "expected exactly two numbers"));
            }
            let re = pair[0].as_f64().ok_or_else(|| bad(&p, "bad real part"))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| bad(&p, "bad imaginary part"))?;
            out.push(num_complex::Complex64::new(re, im));
        }
        data.push(out);
    }
    let r = data.len();
    let c = data.first().map_or(0, Vec::len);
    if r == 0 || data.iter().any(|row| row.len() != c) {
        return Err(bad(path, "matrix must be rectangular and nonempty"));
    }
    Ok(crate::detpair::CMatrix::from_fn(r, c, |i, j| data[i][j]))
}

//! Built-in example families and a JSON exchange format for bundles.

use crate::algebra::{FqField, Ring};
use crate::bundle::ConicBundle;
use crate::error::{Error, Result};
use crate::poly::{ring_from_json, ring_to_json, Polynomial, VarSet};
use serde_json::{json, Value};

pub const BASE_NAMES: [&str; 3] = ["u", "v", "w"];
const COEFF_KEYS: [&str; 6] = ["xx", "yy", "zz", "xy", "xz", "yz"];

/// The symmetric polar matrix of the main integral example, with
/// quadratic entries in `u, v, w`.
pub fn primary_matrix() -> [[Polynomial; 3]; 3] {
    let vars = VarSet::new(&BASE_NAMES);
    let p = |t: &str| Polynomial::parse(t, &vars, &Ring::Int).unwrap();
    [
        [
            p("2*u*v+4*v^2+2*u*w+2*w^2"),
            p("u^2+u*w+w^2"),
            p("u*v"),
        ],
        [
            p("u^2+u*w+w^2"),
            p("2*u^2+2*v*w+2*w^2"),
            p("u^2+v*w+w^2"),
        ],
        [
            p("u*v"),
            p("u^2+v*w+w^2"),
            p("2*v^2+2*u*w+2*w^2"),
        ],
    ]
}

/// The main example as a bundle over the integers.
pub fn primary_bundle() -> ConicBundle {
    ConicBundle::from_polar_matrix(&primary_matrix()).expect("built-in matrix is well formed")
}

/// A small companion family over F_2 with linear coefficients and
/// discriminant `u w (u + w)`: three line components meeting in one
/// point and no cubic component.
pub fn companion_bundle() -> ConicBundle {
    let field = FqField::new(2, 1).expect("F_2 exists");
    let ring = Ring::Fq(field);
    let vars = VarSet::new(&BASE_NAMES);
    let p = |t: &str| Polynomial::parse(t, &vars, &ring).unwrap();
    ConicBundle::new([p("u"), p("w"), p("v"), p("0"), p("u"), p("w")])
        .expect("built-in coefficients are well formed")
}

/// Serializes a bundle as `{ ring, vars, coefficients: { xx, ... } }`
/// with human-readable polynomial strings.
pub fn bundle_to_json(bundle: &ConicBundle) -> Value {
    let coeffs: serde_json::Map<String, Value> = COEFF_KEYS
        .iter()
        .zip(bundle.coefficients())
        .map(|(k, p)| (k.to_string(), Value::String(p.to_string())))
        .collect();
    json!({
        "ring": ring_to_json(bundle.ring()),
        "vars": bundle.base_vars().names(),
        "coefficients": coeffs,
    })
}

/// Reads a bundle from JSON. Accepts either a `coefficients` object
/// (missing keys default to zero) or a symmetric 3x3 `matrix` of the
/// polar form, both with polynomial strings in the declared variables.
pub fn bundle_from_json(v: &Value) -> Result<ConicBundle> {
    let ring = ring_from_json(
        v.get("ring")
            .ok_or_else(|| Error::data("fixture is missing \"ring\""))?,
    )?;
    let names: Vec<String> = v
        .get("vars")
        .and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .map(|x| x.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
        })
        .flatten()
        .ok_or_else(|| Error::data("fixture is missing a \"vars\" array of strings"))?;
    if names.len() != 3 {
        return Err(Error::data("fixture must declare exactly three base variables"));
    }
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let vars = VarSet::new(&name_refs);
    let parse = |t: &str| Polynomial::parse(t, &vars, &ring);
    if let Some(c) = v.get("coefficients") {
        let obj = c
            .as_object()
            .ok_or_else(|| Error::data("\"coefficients\" must be an object"))?;
        for key in obj.keys() {
            if !COEFF_KEYS.contains(&key.as_str()) {
                return Err(Error::data(format!("unknown coefficient key {key:?}")));
            }
        }
        let mut coeffs = Vec::with_capacity(6);
        for key in COEFF_KEYS {
            let text = match obj.get(key) {
                None => "0",
                Some(Value::String(s)) => s.as_str(),
                Some(_) => {
                    return Err(Error::data(format!(
                        "coefficient {key:?} must be a polynomial string"
                    )))
                }
            };
            coeffs.push(parse(text)?);
        }
        return ConicBundle::new(coeffs.try_into().unwrap());
    }
    if let Some(mat) = v.get("matrix") {
        let rows = mat
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::data("\"matrix\" must be a 3x3 array"))?;
        let mut entries: Vec<Vec<Polynomial>> = Vec::with_capacity(3);
        for row in rows {
            let cells = row
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::data("\"matrix\" must be a 3x3 array"))?;
            let mut out = Vec::with_capacity(3);
            for cell in cells {
                let text = cell
                    .as_str()
                    .ok_or_else(|| Error::data("matrix entries must be polynomial strings"))?;
                out.push(parse(text)?);
            }
            entries.push(out);
        }
        let m: [[Polynomial; 3]; 3] = [
            entries[0].clone().try_into().unwrap(),
            entries[1].clone().try_into().unwrap(),
            entries[2].clone().try_into().unwrap(),
        ];
        return ConicBundle::from_polar_matrix(&m);
    }
    Err(Error::data(
        "fixture needs either a \"coefficients\" object or a \"matrix\"",
    ))
}

pub fn bundle_from_json_str(text: &str) -> Result<ConicBundle> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::data(format!("invalid fixture JSON: {e}")))?;
    bundle_from_json(&v)
}

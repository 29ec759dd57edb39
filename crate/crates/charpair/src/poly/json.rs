//! JSON envelopes for polynomials and coefficient rings.
//!
//! A ring is `{"p": 0, "k": 0}` for the integers, `{"p": 0, "k": 1}` for
//! the rationals, and `{"p": p, "k": k}` for the field with `p^k`
//! elements. A polynomial is carried as
//! `{"vars": ["u", "v"], "ring": {...}, "poly": "u^2+v"}` with the text in
//! the format of the parser module.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{FqField, Ring};
use crate::error::{Error, Result};

use super::{Polynomial, VarSet};

pub fn ring_to_json(ring: &Ring) -> Value {
    match ring {
        Ring::Int => json!({"p": 0, "k": 0}),
        Ring::Rat => json!({"p": 0, "k": 1}),
        Ring::Fq(f) => json!({"p": f.characteristic(), "k": f.degree()}),
    }
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    let p = v
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::data("ring object needs a numeric field \"p\""))?;
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::data("ring object needs a numeric field \"k\""))?;
    match (p, k) {
        (0, 0) => Ok(Ring::Int),
        (0, 1) => Ok(Ring::Rat),
        (0, _) => Err(Error::data("characteristic 0 admits only k = 0 or k = 1")),
        (p, k) => Ok(Ring::Fq(FqField::new(p, k as usize)?)),
    }
}

pub fn polynomial_to_json(poly: &Polynomial) -> Value {
    json!({
        "vars": poly.vars().names(),
        "ring": ring_to_json(poly.ring()),
        "poly": poly.to_string(),
    })
}

pub fn polynomial_from_json(v: &Value) -> Result<Polynomial> {
    let names: Vec<&str> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::data("polynomial object needs an array field \"vars\""))?
        .iter()
        .map(|x| {
            x.as_str()
                .ok_or_else(|| Error::data("variable names must be strings"))
        })
        .collect::<Result<_>>()?;
    if names.is_empty() {
        return Err(Error::data("empty variable list"));
    }
    let ring = ring_from_json(
        v.get("ring")
            .ok_or_else(|| Error::data("polynomial object needs a field \"ring\""))?,
    )?;
    let text = v
        .get("poly")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::data("polynomial object needs a string field \"poly\""))?;
    let vars: Arc<VarSet> = VarSet::new(&names);
    Polynomial::parse(text, &vars, &ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_codes_round_trip() {
        for ring in [
            Ring::Int,
            Ring::Rat,
            Ring::Fq(FqField::new(2, 3).unwrap()),
            Ring::Fq(FqField::new(5, 1).unwrap()),
        ] {
            let v = ring_to_json(&ring);
            assert_eq!(ring_from_json(&v).unwrap(), ring);
        }
        assert!(ring_from_json(&json!({"p": 0, "k": 2})).is_err());
        assert!(ring_from_json(&json!({"p": 4, "k": 1})).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let v = json!({
            "vars": ["u", "v", "w"],
            "ring": {"p": 2, "k": 2},
            "poly": "(g+1)*u*v+w^2",
        });
        let f = polynomial_from_json(&v).unwrap();
        let back = polynomial_to_json(&f);
        assert_eq!(polynomial_from_json(&back).unwrap(), f);
        assert_eq!(back["vars"], json!(["u", "v", "w"]));
    }
}

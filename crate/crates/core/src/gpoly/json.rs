use serde_json::{json, Value};

use super::{Family, Monomial, Poly, Var};
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

fn var_to_json(v: &Var, exp: u32) -> Value {
    let mut obj = json!({
        "family": v.family.code(),
        "index": v.index,
        "slot": v.slot().unwrap_or(0),
        "exp": exp,
    });
    if v.family == Family::X {
        obj["degree"] = json!(v.weight);
    }
    obj
}

fn var_from_json(v: &Value) -> Result<(Var, u32)> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("variable missing {k:?}")));
    let uint = |k: &str| -> Result<u64> {
        field(k)?.as_u64().ok_or_else(|| Error::Parse(format!("variable field {k:?} must be a non-negative integer")))
    };
    let family = field("family")?.as_str().ok_or_else(|| Error::Parse("family must be a string".into()))?;
    let index = uint("index")? as u32;
    let exp = uint("exp")? as u32;
    let slot = v.get("slot").and_then(Value::as_u64).unwrap_or(0);
    let var = match family {
        "v" => Var::v(index),
        "V" => Var::big_v(index),
        "t" if slot <= 2 => Var::t(index, slot as u8),
        "x" => Var::x(index, v.get("degree").and_then(Value::as_u64).unwrap_or(0) as u32),
        other => return Err(Error::Parse(format!("unknown variable family {other:?} (slot {slot})"))),
    };
    Ok((var, exp))
}

/// Serializes terms in canonical order as `[{"coeff": …, "vars": […]}, …]`.
pub fn poly_to_json<R: CoeffRing>(p: &Poly<R>) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                json!({
                    "coeff": p.ring().to_json(c),
                    "vars": m.pairs().iter().map(|(v, e)| var_to_json(v, *e)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn poly_from_json<R: CoeffRing>(ring: &R, v: &Value) -> Result<Poly<R>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be an array of terms".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let coeff = ring.from_json(t.get("coeff").ok_or_else(|| Error::Parse("term missing coeff".into()))?)?;
        let vars = t
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term missing vars".into()))?
            .iter()
            .map(var_from_json)
            .collect::<Result<Vec<_>>>()?;
        terms.push((Monomial::from_pairs(vars), coeff));
    }
    Ok(Poly::from_terms(ring, terms))
}

//! JSON encodings of exact values.

use nichols_core::exactnum::Cyclotomic;
use nichols_core::weylgpd::Weight;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Integers beyond `i64` become decimal strings.
fn bigint(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(n.to_string()),
    }
}

/// `{"conductor": N, "coeffs": [[num, den], ...]}` in the power basis of `ζ_N`.
pub fn cyclotomic(c: &Cyclotomic) -> Value {
    let coeffs: Vec<Value> = c.coeffs().iter().map(|(n, d)| json!([bigint(n), bigint(d)])).collect();
    json!({ "conductor": c.conductor(), "coeffs": coeffs })
}

pub fn weight(w: &Weight, rank: usize) -> Value {
    Value::from(w[..rank].to_vec())
}

pub fn order(n: u32) -> Value {
    if n == u32::MAX {
        Value::Null
    } else {
        Value::from(n)
    }
}

//! BigInt <-> JSON bridging. Values that fit in an i64 are written as JSON
//! numbers; anything larger falls back to a decimal string, and the parsers
//! accept both forms.

use num_bigint::BigInt;
use serde_json::Value;
use std::str::FromStr;

pub fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => Value::from(n),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn value_to_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(BigInt::from(i))
            } else {
                n.as_u64().map(BigInt::from)
            }
        }
        Value::String(s) => BigInt::from_str(s).ok(),
        _ => None,
    }
}

pub fn vec_to_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(bigint_to_value).collect())
}

pub fn value_to_vec(v: &Value) -> Option<Vec<BigInt>> {
    v.as_array()?.iter().map(value_to_bigint).collect()
}

//! Bit-exact encoding of binary64 values as C99 hexadecimal strings
//! (`0x1.8p+1` = 3.0), applied to every float of a JSON document.

use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn to_hex(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 {
        (0, -1022)
    } else {
        (1, exp - 1023)
    };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let dot = if digits.is_empty() { "" } else { "." };
    let esign = if e < 0 { '-' } else { '+' };
    format!("{sign}0x{lead}{dot}{digits}p{esign}{}", e.abs())
}

pub fn from_hex(s: &str) -> Result<f64> {
    match s {
        "nan" => return Ok(f64::NAN),
        "inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    hexf_parse::parse_hexf64(s, false)
        .map_err(|e| Error::Malformed(format!("bad hex float `{s}`: {e}")))
}

/// Replaces every floating-point number of `v` by its hex string.
/// Integers are left alone.
pub fn hexify(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => Value::String(to_hex(n.as_f64().expect("f64"))),
        Value::Array(a) => Value::Array(a.iter().map(hexify).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), hexify(v))).collect()),
        other => other.clone(),
    }
}

/// Inverse of [`hexify`]: strings that parse as hex floats become
/// numbers. Non-finite values stay as the strings `inf`, `-inf`, `nan`.
pub fn dehexify(v: &Value) -> Result<Value> {
    Ok(match v {
        Value::String(s) if is_hex(s) => {
            let x = from_hex(s)?;
            Value::Number(Number::from_f64(x).expect("finite"))
        }
        Value::Array(a) => Value::Array(a.iter().map(dehexify).collect::<Result<_>>()?),
        Value::Object(o) => Value::Object(
            o.iter()
                .map(|(k, v)| Ok((k.clone(), dehexify(v)?)))
                .collect::<Result<_>>()?,
        ),
        other => other.clone(),
    })
}

fn is_hex(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    t.starts_with("0x") || t.starts_with("0X")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        assert_eq!(to_hex(1.0), "0x1p+0");
        assert_eq!(to_hex(3.0), "0x1.8p+1");
        assert_eq!(to_hex(-0.5), "-0x1p-1");
        assert_eq!(to_hex(0.0), "0x0p+0");
        assert_eq!(to_hex(0.1), "0x1.999999999999ap-4");
    }

    #[test]
    fn round_trips_bit_exactly() {
        let cases = [
            0.1,
            -0.0,
            2f64.sqrt(),
            f64::MAX,
            f64::MIN_POSITIVE,
            5e-324,
            1.0 / 3.0,
            -123456.789,
        ];
        for v in cases {
            assert_eq!(from_hex(&to_hex(v)).unwrap().to_bits(), v.to_bits(), "{v}");
        }
    }

    #[test]
    fn json_walk() {
        let v: Value = serde_json::json!({"x": [0.1, 2.5], "dim": 3, "name": "A"});
        let h = hexify(&v);
        assert_eq!(h["x"][0], "0x1.999999999999ap-4");
        assert_eq!(h["dim"], 3);
        assert_eq!(dehexify(&h).unwrap(), v);
    }
}

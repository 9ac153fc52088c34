//! JSON encoding of exact scalars.
//!
//! * rational: the string `"p/q"` (`q > 0`, reduced); plain integers `"p"` and
//!   JSON integers are accepted on input
//! * [`BaseElement`]: array of rationals indexed by λ-degree; constants are
//!   written (and accepted) as a bare rational
//! * [`Scalar`]: `{"re": …, "im": …}`; real scalars are written (and
//!   accepted) as a bare base element
//! * [`FracScalar`]: a scalar when the denominator is `1`, otherwise
//!   `{"num": scalar, "den": base}`

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{BaseElement, FracScalar, Scalar};
use crate::error::{Error, Result};

fn malformed(path: &str, message: impl Into<String>) -> Error {
    Error::MalformedScalar {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|m| malformed(path, m)),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| malformed(path, "non-integer JSON number; use a \"p/q\" string")),
        _ => Err(malformed(path, "expected a rational string \"p/q\"")),
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|e| format!("bad integer {s:?}: {e}")),
    }
}

/// Constants are written as a single rational.
pub fn base_to_json(b: &BaseElement) -> Value {
    if b.is_constant() {
        rational_to_json(&b.constant_term())
    } else {
        Value::Array(b.coeffs().iter().map(rational_to_json).collect())
    }
}

pub fn base_from_json(v: &Value, path: &str) -> Result<BaseElement> {
    match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(k, c)| rational_from_json(c, &format!("{path}[{k}]")))
            .collect::<Result<Vec<_>>>()
            .map(BaseElement::from_coeffs),
        other => rational_from_json(other, path).map(BaseElement::from_rational),
    }
}

/// Real scalars are written as their real part.
pub fn scalar_to_json(z: &Scalar) -> Value {
    if z.im.is_zero() {
        base_to_json(&z.re)
    } else {
        json!({ "re": base_to_json(&z.re), "im": base_to_json(&z.im) })
    }
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::Object(map) => {
            for key in map.keys() {
                if key != "re" && key != "im" {
                    return Err(malformed(path, format!("unexpected key {key:?} in scalar")));
                }
            }
            let re = match map.get("re") {
                Some(r) => base_from_json(r, &format!("{path}.re"))?,
                None => BaseElement::zero(),
            };
            let im = match map.get("im") {
                Some(i) => base_from_json(i, &format!("{path}.im"))?,
                None => BaseElement::zero(),
            };
            Ok(Scalar::new(re, im))
        }
        other => base_from_json(other, path).map(Scalar::real),
    }
}

pub fn frac_to_json(z: &FracScalar) -> Value {
    if z.denominator().is_one() {
        scalar_to_json(z.numerator())
    } else {
        json!({ "num": scalar_to_json(z.numerator()), "den": base_to_json(z.denominator()) })
    }
}

pub fn frac_from_json(v: &Value, path: &str) -> Result<FracScalar> {
    if let Value::Object(map) = v {
        if map.contains_key("num") || map.contains_key("den") {
            let num = match map.get("num") {
                Some(n) => scalar_from_json(n, &format!("{path}.num"))?,
                None => return Err(malformed(path, "fraction without \"num\"")),
            };
            let den = match map.get("den") {
                Some(d) => base_from_json(d, &format!("{path}.den"))?,
                None => BaseElement::one(),
            };
            return FracScalar::new(num, den).map_err(|_| malformed(path, "zero denominator"));
        }
    }
    scalar_from_json(v, path).map(FracScalar::from)
}

//! Small helpers shared by the JSON encoders.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};

/// Integers that fit in `i64` become JSON numbers; larger ones become decimal strings.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(n.to_string()),
    }
}

/// Rationals print as `p/q`, or as an integer when `q = 1`.
pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    let bad = || Error::Parse {
        input: v.to_string(),
        expected: "an integer or a decimal string".to_string(),
    };
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Value::String(s) => s.trim().parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) if s.contains('/') => s.trim().parse().map_err(|_| Error::Parse {
            input: s.clone(),
            expected: "a rational p/q".to_string(),
        }),
        _ => parse_int(v).map(BigRational::from_integer),
    }
}

/// `{r, c1, ch2, chi}` with `c1` as a divisor expression.
pub fn character(v: &ChernCharacter) -> Value {
    serde_json::json!({
        "r": int(v.rank()),
        "c1": v.c1().to_string(),
        "ch2": rational(v.ch2()),
        "chi": rational(&v.chi()),
    })
}

pub(crate) fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse {
        input: obj.to_string(),
        expected: format!("an object with a \"{key}\" field"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_and_small() {
        assert_eq!(int(&BigInt::from(-3)), Value::from(-3));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&big), Value::String(big.to_string()));
        assert_eq!(parse_int(&int(&big)).unwrap(), big);
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(rational(&half), Value::String("-1/2".into()));
        assert_eq!(parse_rational(&rational(&half)).unwrap(), half);
    }
}

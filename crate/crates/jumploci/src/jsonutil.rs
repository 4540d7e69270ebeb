//! Shared JSON helpers: exact rationals travel as integers or "p/q" strings.

use crate::exactnum::Rat;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;
use std::str::FromStr;

pub fn parse_rat(v: &Value) -> Result<Rat, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else {
                Err(format!("non-integer numeric literal {n}; write rationals as \"p/q\""))
            }
        }
        Value::String(s) => parse_rat_str(s),
        other => Err(format!("expected rational, got {other}")),
    }
}

pub fn parse_rat_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

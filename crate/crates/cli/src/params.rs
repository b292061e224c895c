use std::collections::BTreeMap;

use prodxform_core::lattice::Ratio;
use prodxform_core::Float;
use rug::float::Constant;

use crate::error::{HarnessError, HarnessResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Real,
    Integer,
    /// A positive rational `p` or `p/q`.
    Ratio,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(Float),
    Integer(u32),
    Ratio(Ratio),
}

/// Splits `k=v`.
pub fn parse_assignment(text: &str) -> HarnessResult<(String, String)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| HarnessError::MalformedParam(format!("{text:?} is not of the form name=value")))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() {
        return Err(HarnessError::MalformedParam(format!("{text:?} has an empty side")));
    }
    Ok((k.to_string(), v.to_string()))
}

fn atom(text: &str, prec: u32) -> HarnessResult<Float> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let v = if body.eq_ignore_ascii_case("pi") {
        Float::with_val(prec, Constant::Pi)
    } else {
        let parsed = Float::parse(body)
            .map_err(|e| HarnessError::MalformedParam(format!("{text:?}: {e}")))?;
        Float::with_val(prec, parsed)
    };
    Ok(if neg { -v } else { v })
}

/// A real from a decimal, `pi`, or a product/quotient chain such as
/// `1/3`, `pi/6` or `2*pi`, evaluated left to right at `prec` bits.
pub fn parse_real(text: &str, prec: u32) -> HarnessResult<Float> {
    let mut acc: Option<Float> = None;
    let mut op = '*';
    let mut start = 0;
    let bytes: Vec<char> = text.chars().collect();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if at_end || bytes[i] == '*' || bytes[i] == '/' {
            let piece: String = bytes[start..i].iter().collect();
            if piece.trim().is_empty() {
                return Err(HarnessError::MalformedParam(format!("{text:?} has an empty operand")));
            }
            let v = atom(&piece, prec)?;
            acc = Some(match acc {
                None => v,
                Some(a) if op == '*' => a * v,
                Some(a) => a / v,
            });
            if !at_end {
                op = bytes[i];
            }
            start = i + 1;
        }
    }
    let v = acc.ok_or_else(|| HarnessError::MalformedParam("empty value".into()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(HarnessError::MalformedParam(format!("{text:?} is not finite")))
    }
}

pub fn parse_integer(text: &str) -> HarnessResult<u32> {
    text.trim()
        .parse::<u32>()
        .map_err(|e| HarnessError::MalformedParam(format!("{text:?} is not a non-negative integer: {e}")))
}

pub fn parse_ratio(text: &str) -> HarnessResult<Ratio> {
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (parse_integer(p)?, parse_integer(q)?),
        None => (parse_integer(text)?, 1),
    };
    Ratio::new(num, den).map_err(|e| HarnessError::MalformedParam(e.to_string()))
}

impl ParamValue {
    pub fn parse(kind: ParamKind, text: &str, prec: u32) -> HarnessResult<Self> {
        Ok(match kind {
            ParamKind::Real => ParamValue::Real(parse_real(text, prec)?),
            ParamKind::Integer => ParamValue::Integer(parse_integer(text)?),
            ParamKind::Ratio => ParamValue::Ratio(parse_ratio(text)?),
        })
    }
}

/// Parameters after parsing, keyed by name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedParams {
    values: BTreeMap<String, ParamValue>,
}

impl ParsedParams {
    pub fn insert(&mut self, name: &str, value: ParamValue) {
        self.values.insert(name.to_string(), value);
    }

    fn get(&self, name: &str) -> &ParamValue {
        // presence and kind are checked against the descriptor before evaluation
        self.values.get(name).unwrap_or_else(|| panic!("parameter {name} was not validated"))
    }

    pub fn real(&self, name: &str) -> &Float {
        match self.get(name) {
            ParamValue::Real(v) => v,
            other => panic!("parameter {name} is {other:?}, not real"),
        }
    }

    pub fn integer(&self, name: &str) -> u32 {
        match self.get(name) {
            ParamValue::Integer(v) => *v,
            other => panic!("parameter {name} is {other:?}, not an integer"),
        }
    }

    pub fn ratio(&self, name: &str) -> Ratio {
        match self.get(name) {
            ParamValue::Ratio(v) => *v,
            other => panic!("parameter {name} is {other:?}, not a ratio"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let pi = Float::with_val(256, Constant::Pi);
        assert_eq!(parse_real("pi/6", 256).unwrap(), Float::with_val(256, &pi / 6u32));
        assert_eq!(parse_real("2*pi", 256).unwrap(), Float::with_val(256, &pi * 2u32));
        assert_eq!(parse_real("1/3", 256).unwrap(), Float::with_val(256, 1u32) / 3u32);
        assert_eq!(parse_real("-0.5", 256).unwrap(), -0.5f64);
        assert_eq!(parse_real("1e-3", 256).unwrap(), Float::with_val(256, Float::parse("1e-3").unwrap()));
        for bad in ["", "1/", "abc", "1/0", "*2"] {
            assert!(parse_real(bad, 256).is_err(), "{bad}");
        }
    }

    #[test]
    fn assignments_and_kinds() {
        assert_eq!(parse_assignment("alpha = 2").unwrap(), ("alpha".into(), "2".into()));
        assert!(parse_assignment("alpha").is_err());
        assert!(parse_assignment("=2").is_err());
        assert_eq!(ParamValue::parse(ParamKind::Integer, "7", 64).unwrap(), ParamValue::Integer(7));
        assert!(ParamValue::parse(ParamKind::Integer, "2.5", 64).is_err());
        assert_eq!(ParamValue::parse(ParamKind::Ratio, "3/2", 64).unwrap(), ParamValue::Ratio(Ratio { num: 3, den: 2 }));
        assert!(ParamValue::parse(ParamKind::Ratio, "0", 64).is_err());
    }
}

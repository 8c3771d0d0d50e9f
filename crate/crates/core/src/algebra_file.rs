//! JSON files holding structure constants.
//!
//! ```json
//! { "dim": 2, "name": "unit-extended",
//!   "product": [[["1","0"], ["0","1"]], [["0","1"], ["0","0"]]] }
//! ```
//!
//! `product[i][j]` is the coefficient vector of `e_{i+1} · e_{j+1}`;
//! coefficients are integers or `"p/q"` strings.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Coeff;
use crate::prelie::PreLieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn to_coeff(&self) -> Result<Coeff> {
        match self {
            RationalText::Int(i) => Ok(Coeff::from_integer(BigInt::from(*i))),
            RationalText::Text(s) => parse_rational(s),
        }
    }

    pub fn from_coeff(c: &Coeff) -> Self {
        if c.is_integer() {
            if let Ok(i) = c.to_integer().try_into() {
                return RationalText::Int(i);
            }
        }
        RationalText::Text(c.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<Coeff> {
    let bad = || Error::InvalidAlgebra(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Coeff::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub product: Vec<Vec<Vec<RationalText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<PreLieAlgebra> {
        if self.product.len() != self.dim {
            return Err(Error::InvalidAlgebra(format!(
                "dim is {} but product has {} rows",
                self.dim,
                self.product.len()
            )));
        }
        let constants = self
            .product
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(RationalText::to_coeff).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let a = PreLieAlgebra::new(constants)?;
        Ok(match &self.name {
            Some(name) => a.with_name(name.clone()),
            None => a,
        })
    }

    pub fn from_algebra(a: &PreLieAlgebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            product: a
                .constants()
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(RationalText::from_coeff).collect()).collect())
                .collect(),
            name: a.name().map(str::to_string),
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<PreLieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.to_algebra()
}

pub fn load_algebra(path: &Path) -> Result<PreLieAlgebra> {
    parse_algebra(&fs::read_to_string(path)?)
}

pub fn algebra_to_json(a: &PreLieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("algebra files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};

    #[test]
    fn parses_mixed_coefficients() {
        let a = parse_algebra(r#"{"dim": 1, "product": [[["1/1"]]], "name": "line"}"#).unwrap();
        assert_eq!(a, PreLieAlgebra::idempotent_line().with_name("line"));
        let a = parse_algebra(r#"{"dim": 1, "product": [[[ "-3/6" ]]]}"#).unwrap();
        assert_eq!(a.product(0, 0), &[ratio(-1, 2)]);
        let a = parse_algebra(r#"{"dim": 1, "product": [[[2]]]}"#).unwrap();
        assert_eq!(a.product(0, 0), &[int(2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_algebra(r#"{"dim": 2, "product": [[["1"]]]}"#),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            parse_algebra(r#"{"dim": 1, "product": [[["1/0"]]]}"#),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            parse_algebra(r#"{"dim": 1, "product": [[["one"]]]}"#),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(parse_algebra("{"), Err(Error::Json(_))));
    }

    #[test]
    fn round_trip() {
        let a = PreLieAlgebra::unit_extended();
        assert_eq!(parse_algebra(&algebra_to_json(&a)).unwrap(), a);
    }
}

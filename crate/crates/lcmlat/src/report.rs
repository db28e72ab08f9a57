//! Machine-readable result documents. Every rational is serialized exactly as
//! a `"num/den"` string and every integer as a decimal string, so re-parsing
//! reproduces identical values; reports for the same inputs are byte-identical
//! (timings are opt-in for that reason).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::gcdset::GcdSet;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<PsiEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

#[derive(Serialize)]
pub struct PsiEntry {
    pub element: String,
    pub value: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_owned(),
            inputs,
            psi: None,
            verdict: None,
            determinant: None,
            witnesses: None,
            details: None,
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn rational_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = s.split_once('/')?;
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn psi_table(set: &GcdSet, exponent: u32) -> Vec<PsiEntry> {
    let psi = set.psi(exponent);
    set.elements()
        .iter()
        .zip(&psi.values)
        .map(|(x, v)| PsiEntry {
            element: x.to_string(),
            value: rational_string(v),
        })
        .collect()
}

pub fn set_inputs(set: &GcdSet) -> Value {
    serde_json::json!({
        "name": set.name(),
        "elements": set.elements().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_strings_round_trip() {
        let v = BigRational::new(BigInt::from(-208), BigInt::from(525));
        let s = rational_string(&v);
        assert_eq!(s, "-208/525");
        assert_eq!(parse_rational(&s).unwrap(), v);
        assert_eq!(parse_rational("0/1").unwrap(), BigRational::zero());
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn reports_serialize_deterministically() {
        let set = crate::catalog::closure_of_four();
        let build = || {
            let mut r = Report::new("verify", set_inputs(&set));
            r.psi = Some(psi_table(&set, 1));
            r.verdict = Some("singular".into());
            r.to_json()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn psi_entries_reparse_exactly() {
        let set = crate::catalog::singular_cube_8();
        let table = psi_table(&set, 1);
        let psi = set.psi(1);
        for (entry, value) in table.iter().zip(&psi.values) {
            assert_eq!(&parse_rational(&entry.value).unwrap(), value);
        }
    }
}

//! JSON encoding of truncated series. Coefficients are written as decimal
//! strings so that big rationals survive the round trip.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::sym::{Partition, Rat, SymFunc};
use crate::wreath::{S2Class, WreathMonomial, WreathSymFunc};

#[derive(Debug, Serialize, Deserialize)]
struct SymTerm {
    partition: Partition,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct SymDoc {
    truncation: usize,
    terms: Vec<SymTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Factor {
    k: u32,
    class: S2Class,
    exp: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct WreathTerm {
    monomial: Vec<Factor>,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct WreathDoc {
    truncation: usize,
    terms: Vec<WreathTerm>,
}

fn split(c: &Rat) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn join(num: &str, den: &str) -> Result<Rat, String> {
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator {den:?}"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

pub fn sym_to_json(f: &SymFunc) -> serde_json::Value {
    let doc = SymDoc {
        truncation: f.truncation(),
        terms: f
            .iter()
            .map(|(partition, c)| {
                let (num, den) = split(c);
                SymTerm {
                    partition: partition.clone(),
                    num,
                    den,
                }
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("series serializes")
}

pub fn sym_from_json(value: &serde_json::Value) -> Result<SymFunc, String> {
    let doc: SymDoc = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
    let mut out = SymFunc::zero(doc.truncation);
    for t in doc.terms {
        if t.partition.weight() > doc.truncation {
            return Err(format!("term {} lies above the truncation", t.partition));
        }
        out.add_term(t.partition, join(&t.num, &t.den)?);
    }
    Ok(out)
}

pub fn wreath_to_json(w: &WreathSymFunc) -> serde_json::Value {
    let doc = WreathDoc {
        truncation: w.truncation(),
        terms: w
            .iter()
            .map(|(m, c)| {
                let (num, den) = split(c);
                WreathTerm {
                    monomial: m
                        .exponents()
                        .into_iter()
                        .map(|(k, class, exp)| Factor { k, class, exp })
                        .collect(),
                    num,
                    den,
                }
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("series serializes")
}

pub fn wreath_from_json(value: &serde_json::Value) -> Result<WreathSymFunc, String> {
    let doc: WreathDoc = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
    let mut out = WreathSymFunc::zero(doc.truncation);
    for t in doc.terms {
        let m = WreathMonomial::from_factors(
            t.monomial
                .iter()
                .flat_map(|f| std::iter::repeat_n((f.k, f.class), f.exp as usize)),
        );
        out.add_term(m, join(&t.num, &t.den)?);
    }
    Ok(out)
}

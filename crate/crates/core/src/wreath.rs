//! Wreath-product symmetric functions `Λ(S2)`.
//!
//! Generated by power sums `𝔭_k` (identity class of `S2`) and `𝔮_k`
//! (non-identity class), each of degree `k`. The ∘_{S2} action on ordinary
//! symmetric functions sends `𝔭_k ↦ ψ_k(f″)` and `𝔮_k ↦ 2ψ_k(ḟ)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::sym::{self, adams, Monomial, Partition, Rat, SymError, SymFunc, Truncated};

/// Conjugacy class in `S2`; the tag keeps the key type open to larger groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum S2Class {
    #[serde(rename = "e")]
    Identity,
    #[serde(rename = "t")]
    Twisted,
}

/// A generalized power sum `p_k(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerSum {
    pub k: u32,
    pub class: S2Class,
}

/// A monomial in the `𝔭_k`, `𝔮_k`; factors kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WreathMonomial {
    factors: Vec<PowerSum>,
}

impl WreathMonomial {
    pub fn from_factors<I: IntoIterator<Item = (u32, S2Class)>>(factors: I) -> Self {
        let mut factors: Vec<PowerSum> = factors
            .into_iter()
            .map(|(k, class)| {
                assert!(k >= 1, "power sums are indexed from 1");
                PowerSum { k, class }
            })
            .collect();
        factors.sort_unstable_by(|a, b| b.cmp(a));
        WreathMonomial { factors }
    }

    pub fn factors(&self) -> &[PowerSum] {
        &self.factors
    }

    /// `(k, class, exponent)` triples in canonical order.
    pub fn exponents(&self) -> Vec<(u32, S2Class, u32)> {
        let mut out: Vec<(u32, S2Class, u32)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((k, c, e)) if *k == f.k && *c == f.class => *e += 1,
                _ => out.push((f.k, f.class, 1)),
            }
        }
        out
    }

    /// The `𝔭` and `𝔮` parts as partitions.
    pub fn split(&self) -> (Partition, Partition) {
        let pick = |class| {
            Partition::from_parts(
                self.factors
                    .iter()
                    .filter(|f| f.class == class)
                    .map(|f| f.k)
                    .collect(),
            )
        };
        (pick(S2Class::Identity), pick(S2Class::Twisted))
    }
}

impl Monomial for WreathMonomial {
    fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.k as usize).sum()
    }

    fn one() -> Self {
        WreathMonomial::default()
    }

    fn times(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable_by(|a, b| b.cmp(a));
        WreathMonomial { factors }
    }
}

impl Ord for WreathMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.factors.cmp(&self.factors))
    }
}

impl PartialOrd for WreathMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WreathMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|(k, c, e)| {
                let name = match c {
                    S2Class::Identity => "P",
                    S2Class::Twisted => "Q",
                };
                if e == 1 {
                    format!("{name}{k}")
                } else {
                    format!("{name}{k}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for WreathMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type WreathSymFunc = Truncated<WreathMonomial>;

/// `𝔭_k`.
pub fn pp(k: u32, truncation: usize) -> WreathSymFunc {
    WreathSymFunc::monomial(
        WreathMonomial::from_factors([(k, S2Class::Identity)]),
        Rat::one(),
        truncation,
    )
}

/// `𝔮_k`.
pub fn qq(k: u32, truncation: usize) -> WreathSymFunc {
    WreathSymFunc::monomial(
        WreathMonomial::from_factors([(k, S2Class::Twisted)]),
        Rat::one(),
        truncation,
    )
}

/// Closed form of `ch Ind_{Dn}^{S2≀Sn} 1`: rotations contribute
/// `(1/2n) Σ_{d|n} φ(d) 𝔭_d^{n/d}`; reflections contribute `½ 𝔮1 𝔭2^{(n-1)/2}`
/// for odd `n` and `¼ (𝔮1² 𝔭2^{n/2-1} + 𝔭2^{n/2})` for even `n`.
pub fn dih_char_closed(n: usize, truncation: usize) -> Result<WreathSymFunc, SymError> {
    if n == 0 || n > truncation {
        return Err(SymError::DegreeAboveTruncation {
            degree: n,
            truncation,
        });
    }
    let t = truncation;
    let mut out = WreathSymFunc::zero(t);
    for d in sym::divisors(n as u64) {
        let coeff = sym::rat(sym::euler_phi(d) as i64, 2 * n as i64);
        out = &out + &pp(d as u32, t).pow(n / d as usize).scale(&coeff);
    }
    let reflections = if n % 2 == 1 {
        (&qq(1, t) * &pp(2, t).pow((n - 1) / 2)).scale(&sym::rat(1, 2))
    } else {
        let with_fixed = &qq(1, t).pow(2) * &pp(2, t).pow(n / 2 - 1);
        (&with_fixed + &pp(2, t).pow(n / 2)).scale(&sym::rat(1, 4))
    };
    Ok(&out + &reflections)
}

/// `-½ Σ_n φ(n)/n log(1 - 𝔭_n) + (½𝔮1(1 + ½𝔮1) + ¼𝔭2) / (1 - 𝔭2)`, truncated.
pub fn dih_series_closed(truncation: usize) -> WreathSymFunc {
    let t = truncation;
    let mut rotations = WreathSymFunc::zero(t);
    for n in 1..=t {
        let coeff = sym::rat(sym::euler_phi(n as u64) as i64, 2 * n as i64);
        let log = pp(n as u32, t).log_inv().expect("𝔭_n has no constant term");
        rotations = &rotations + &log.scale(&coeff);
    }
    let half_q = qq(1, t).scale(&sym::rat(1, 2));
    let numerator =
        &(&half_q * &(&WreathSymFunc::one(t) + &half_q)) + &pp(2, t).scale(&sym::rat(1, 4));
    let reflections = &numerator * &pp(2, t).geom().expect("𝔭2 has no constant term");
    &rotations + &reflections
}

/// The ∘_{S2} action of `w` on `f⁽²⁾`: `𝔭_k ↦ ψ_k(f″)`, `𝔮_k ↦ 2ψ_k(ḟ)`.
///
/// `f` must be known two degrees beyond `w`, and `f″`, `ḟ` must have no
/// constant term; the result has the truncation of `w`.
pub fn specialize_s2(w: &WreathSymFunc, f: &SymFunc) -> Result<SymFunc, SymError> {
    let n = w.truncation();
    if f.truncation() < n + 2 {
        return Err(SymError::InsufficientTruncation {
            needed: n + 2,
            got: f.truncation(),
        });
    }
    let second = sym::lower(&sym::prime(&sym::prime(f)), n);
    let twisted = sym::lower(&sym::dot(f), n).scale(&sym::int(2));
    if second.has_constant_term() || twisted.has_constant_term() {
        return Err(SymError::ConstantTerm);
    }
    let mut cache: BTreeMap<PowerSum, SymFunc> = BTreeMap::new();
    let mut out = SymFunc::zero(n);
    for (m, c) in w.iter() {
        let mut term = SymFunc::constant(c.clone(), n);
        for ps in m.factors() {
            let image = cache.entry(*ps).or_insert_with(|| match ps.class {
                S2Class::Identity => adams(ps.k, &second),
                S2Class::Twisted => adams(ps.k, &twisted),
            });
            term = &term * image;
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// `Λ(Sk)¹ → Λ^k`: the class with cycle type `λ` goes to `p_λ`.
pub fn deg1_iso(lambda: &Partition, truncation: usize) -> Result<SymFunc, SymError> {
    if lambda.weight() > truncation {
        return Err(SymError::DegreeAboveTruncation {
            degree: lambda.weight(),
            truncation,
        });
    }
    Ok(sym::p_lambda(lambda, truncation))
}

/// `f ∘_{Sk} g⁽ᵏ⁾` for `f` homogeneous of degree `k`, computed as `D(f) g`.
pub fn plethysm_deg1(f: &SymFunc, g: &SymFunc) -> Result<SymFunc, SymError> {
    let (Some(lo), Some(hi)) = (f.valuation(), f.max_degree()) else {
        return Ok(SymFunc::zero(g.truncation()));
    };
    if lo != hi {
        return Err(SymError::NotHomogeneous);
    }
    Ok(sym::d_operator(f, g))
}

//! Generating series for a test module: `a_g`, the `Ass` series, cyclic and
//! dihedral necklace series, genus-zero rooted trees, and `b_1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{self, GroupError};
use crate::sym::{self, adams, h_lambda, plethysm, Partition, SymError, SymFunc};
use crate::wreath;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid module spec: {0}")]
    InvalidSpec(String),
    #[error("tree fixed point did not stabilise within {0} iterations")]
    NoConvergence(usize),
    #[error("a0 must have lowest degree at least 3")]
    Valuation,
}

/// A test module: for each `(g, n)` a direct sum of Young permutation modules
/// `Ind_{S_λ}^{S_n} 1`, one per listed partition `λ ⊢ n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default)]
    pub genus0: BTreeMap<u32, Vec<Partition>>,
    #[serde(default)]
    pub genus1: BTreeMap<u32, Vec<Partition>>,
}

impl ModuleSpec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Trivial modules in genus 0 for `3 ≤ n ≤ 6`, plus `h2²` at `n = 4`;
    /// trivial modules in genus 1 for `1 ≤ n ≤ 4`.
    pub fn standard() -> Self {
        let mut spec = ModuleSpec::default();
        for n in 3..=6 {
            spec.genus0.insert(n, vec![Partition::single(n)]);
        }
        spec.genus0
            .get_mut(&4)
            .expect("inserted above")
            .push(Partition::from_parts(vec![2, 2]));
        for n in 1..=4 {
            spec.genus1.insert(n, vec![Partition::single(n)]);
        }
        spec
    }

    pub fn from_json(text: &str) -> Result<Self, SeriesError> {
        let spec: ModuleSpec =
            serde_json::from_str(text).map_err(|e| SeriesError::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        for (genus, map, min) in [(0, &self.genus0, 3), (1, &self.genus1, 1)] {
            for (&n, parts) in map {
                if n < min {
                    return Err(SeriesError::InvalidSpec(format!(
                        "genus {genus} entries need n >= {min}, got n = {n}"
                    )));
                }
                if let Some(bad) = parts.iter().find(|l| l.weight() != n as usize) {
                    return Err(SeriesError::InvalidSpec(format!(
                        "partition {bad:?} listed at genus {genus}, n = {n} has the wrong weight"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn modules(&self, genus: u8, n: usize) -> &[Partition] {
        let map = if genus == 0 {
            &self.genus0
        } else {
            &self.genus1
        };
        u32::try_from(n)
            .ok()
            .and_then(|n| map.get(&n))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Valences carrying at least one module in the given genus, ascending.
    pub fn valences(&self, genus: u8) -> Vec<usize> {
        let map = if genus == 0 {
            &self.genus0
        } else {
            &self.genus1
        };
        map.iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&n, _)| n as usize)
            .collect()
    }
}

/// `a_g = Σ_n Σ_λ h_λ` through degree `truncation`.
pub fn a_series(spec: &ModuleSpec, genus: u8, truncation: usize) -> Result<SymFunc, SeriesError> {
    spec.validate()?;
    let map = match genus {
        0 => &spec.genus0,
        1 => &spec.genus1,
        g => {
            return Err(SeriesError::InvalidSpec(format!(
                "genus {g} is not supported"
            )))
        }
    };
    let mut out = SymFunc::zero(truncation);
    for (&n, parts) in map {
        if n as usize > truncation {
            continue;
        }
        for lambda in parts {
            out = &out + &h_lambda(lambda, truncation)?;
        }
    }
    Ok(out)
}

/// `-Σ_n φ(n)/n log(1 - p_n)`.
pub fn ass_series_closed(truncation: usize) -> SymFunc {
    let mut out = SymFunc::zero(truncation);
    for n in 1..=truncation {
        let coeff = sym::rat(sym::euler_phi(n as u64) as i64, n as i64);
        let log = sym::p(n as u32, truncation)
            .log_inv()
            .expect("p_n has no constant term");
        out = &out + &log.scale(&coeff);
    }
    out
}

/// `Σ_n ch Ind_{Z/n}^{S_n} 1` by Burnside sums over the cyclic groups.
pub fn ass_series_burnside(truncation: usize) -> SymFunc {
    let mut out = SymFunc::zero(truncation);
    for n in 1..=truncation {
        let ch = group::ind_trivial_char(&group::cyclic_subgroup(n), truncation)
            .expect("degree within truncation");
        out = &out + &ch;
    }
    out
}

fn require_known(a0: &SymFunc, needed: usize) -> Result<(), SeriesError> {
    if a0.truncation() < needed {
        return Err(SymError::InsufficientTruncation {
            needed,
            got: a0.truncation(),
        }
        .into());
    }
    Ok(())
}

fn require_stable_genus0(a0: &SymFunc) -> Result<(), SeriesError> {
    match a0.valuation() {
        Some(v) if v < 3 => Err(SeriesError::Valuation),
        _ => Ok(()),
    }
}

fn second_derivative(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    require_known(a0, truncation + 2)?;
    require_stable_genus0(a0)?;
    Ok(sym::lower(&sym::prime(&sym::prime(a0)), truncation))
}

/// `-Σ_n φ(n)/n log(1 - ψ_n(a0″))`: cyclically ordered necklaces.
///
/// `a0` must be known through `truncation + 2`.
pub fn cyclic_necklace_series(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    let second = second_derivative(a0, truncation)?;
    let mut out = SymFunc::zero(truncation);
    for n in 1..=truncation {
        let coeff = sym::rat(sym::euler_phi(n as u64) as i64, n as i64);
        out = &out + &adams(n as u32, &second).log_inv()?.scale(&coeff);
    }
    Ok(out)
}

fn necklace_direct(
    a0: &SymFunc,
    truncation: usize,
    correction: bool,
) -> Result<SymFunc, SeriesError> {
    let n = truncation;
    let second = second_derivative(a0, n)?;
    let a0dot = sym::lower(&sym::dot(a0), n);
    let rotations = cyclic_necklace_series(a0, n)?.scale(&sym::rat(1, 2));
    let psi2 = adams(2, &second);
    let mut numerator = &a0dot * &(&SymFunc::one(n) + &a0dot);
    if correction {
        numerator = &numerator + &psi2.scale(&sym::rat(1, 4));
    }
    let reflections = &numerator * &psi2.geom()?;
    Ok(&rotations + &reflections)
}

/// Unordered necklaces of genus-zero vertices:
/// `-½ Σ φ(n)/n log(1 - ψ_n(a0″)) + (ȧ0(1 + ȧ0) + ¼ψ2(a0″)) / (1 - ψ2(a0″))`.
pub fn necklace_series(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    necklace_direct(a0, truncation, true)
}

/// The same series obtained by letting the closed-form `Dih` series act on `a0⁽²⁾`.
pub fn necklace_series_wreath(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    require_known(a0, truncation + 2)?;
    require_stable_genus0(a0)?;
    let a0 = sym::lower(a0, truncation + 2);
    Ok(wreath::specialize_s2(
        &wreath::dih_series_closed(truncation),
        &a0,
    )?)
}

/// The necklace formula without the `¼ψ2(a0″)` reflection term. Kept only as a
/// regression target: it disagrees with the orbit census.
pub fn necklace_series_without_correction(
    a0: &SymFunc,
    truncation: usize,
) -> Result<SymFunc, SeriesError> {
    necklace_direct(a0, truncation, false)
}

/// `Σ_n ch Ind_{Dn ≤ Sn}^{Sn} 1 ∘ a0″`: dihedral symmetry acting only on the
/// vertices. Not the necklace series; used as a negative control.
pub fn naive_dihedral_series(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    let second = second_derivative(a0, truncation)?;
    let mut dih = SymFunc::zero(truncation);
    for n in 1..=truncation {
        dih = &dih + &group::ind_trivial_char(&group::dihedral_in_sym(n), truncation)?;
    }
    Ok(plethysm(&dih, &second)?)
}

/// The series `f = h1 + b0′` of genus-zero trees with a distinguished root leg,
/// the unique solution of `f = p1 + a0′ ∘ f`. `a0` must be known through
/// `truncation + 1`.
pub fn tree_fixed_point(a0: &SymFunc, truncation: usize) -> Result<SymFunc, SeriesError> {
    require_known(a0, truncation + 1)?;
    require_stable_genus0(a0)?;
    let n = truncation;
    let a0p = sym::lower(&sym::prime(a0), n);
    let root = sym::p(1, n);
    let mut f = root.clone();
    // each round fixes at least one more degree
    for _ in 0..=n + 1 {
        let next = &root + &plethysm(&a0p, &f)?;
        if next == f {
            return Ok(f);
        }
        f = next;
    }
    Err(SeriesError::NoConvergence(n + 2))
}

/// The series attached to one test module at one truncation.
#[derive(Clone, Debug)]
pub struct GenSeries {
    pub truncation: usize,
    /// Known through `truncation + 2`.
    pub a0: SymFunc,
    pub a1: SymFunc,
    pub a0_second: SymFunc,
    pub a0_dot: SymFunc,
    pub b0_prime: SymFunc,
    pub b1: SymFunc,
}

impl GenSeries {
    pub fn new(spec: &ModuleSpec, truncation: usize) -> Result<Self, SeriesError> {
        let n = truncation;
        let a0 = a_series(spec, 0, n + 2)?;
        let a1 = a_series(spec, 1, n)?;
        let a0_second = second_derivative(&a0, n)?;
        let a0_dot = sym::lower(&sym::dot(&a0), n);
        let trees = tree_fixed_point(&a0, n)?;
        let b0_prime = &trees - &sym::p(1, n);
        let necklaces = necklace_series(&a0, n)?;
        let b1 = plethysm(&(&a1 + &necklaces), &trees)?;
        Ok(GenSeries {
            truncation: n,
            a0,
            a1,
            a0_second,
            a0_dot,
            b0_prime,
            b1,
        })
    }
}

/// `b1 = (a1 + necklaces) ∘ (h1 + b0′)`.
pub fn b1_series(spec: &ModuleSpec, truncation: usize) -> Result<SymFunc, SeriesError> {
    Ok(GenSeries::new(spec, truncation)?.b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{h, p, rat};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn spec0(entries: &[(u32, &[&[u32]])]) -> ModuleSpec {
        let mut spec = ModuleSpec::empty();
        for (n, parts) in entries {
            spec.genus0
                .insert(*n, parts.iter().map(|l| part(l)).collect());
        }
        spec
    }

    #[test]
    fn a_series_examples() {
        let spec = spec0(&[(3, &[&[3]]), (4, &[&[4]])]);
        assert_eq!(
            a_series(&spec, 0, 6).unwrap(),
            &h(3, 6).unwrap() + &h(4, 6).unwrap()
        );
        let spec = spec0(&[(4, &[&[2, 2]])]);
        assert_eq!(a_series(&spec, 0, 6).unwrap(), h(2, 6).unwrap().pow(2));
        assert!(a_series(&ModuleSpec::empty(), 0, 6).unwrap().is_zero());
        // entries above the truncation are dropped
        let spec = spec0(&[(3, &[&[3]]), (7, &[&[7]])]);
        assert_eq!(a_series(&spec, 0, 6).unwrap(), h(3, 6).unwrap());
    }

    #[test]
    fn spec_validation() {
        let bad = spec0(&[(2, &[&[2]])]);
        assert!(bad.validate().is_err());
        let bad = spec0(&[(4, &[&[3]])]);
        assert!(bad.validate().is_err());
        let mut bad = ModuleSpec::empty();
        bad.genus1.insert(0, vec![Partition::empty()]);
        assert!(bad.validate().is_err());
        assert!(ModuleSpec::standard().validate().is_ok());
        assert!(ModuleSpec::from_json(r#"{"genus0": {"3": [[2, 1]], "4": [[3, 1]]}}"#).is_ok());
        assert!(ModuleSpec::from_json(r#"{"genus0": {"3": [[1, 2]]}}"#).is_err());
        assert!(ModuleSpec::from_json("not json").is_err());
    }

    #[test]
    fn spec_json_shape() {
        let text = r#"{"genus0": {"3": [[3]], "4": [[4],[2,2]]}, "genus1": {"1": [[1]]}}"#;
        let spec = ModuleSpec::from_json(text).unwrap();
        assert_eq!(spec.modules(0, 4), &[part(&[4]), part(&[2, 2])]);
        assert_eq!(spec.modules(1, 1), &[part(&[1])]);
        assert_eq!(ModuleSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert_eq!(spec.valences(0), vec![3, 4]);
    }

    #[test]
    fn ass_low_degrees() {
        let s = ass_series_closed(4);
        assert_eq!(s.homogeneous_part(1), p(1, 4));
        assert_eq!(s.homogeneous_part(2), h(2, 4).unwrap());
        let deg4 = SymFunc::from_terms(
            [
                (part(&[1, 1, 1, 1]), rat(1, 4)),
                (part(&[2, 2]), rat(1, 4)),
                (part(&[4]), rat(1, 2)),
            ],
            4,
        );
        assert_eq!(s.homogeneous_part(4), deg4);
        assert_eq!(s, ass_series_burnside(4));
    }

    #[test]
    fn cyclic_necklaces_for_trivalent_vertices() {
        let a0 = h(3, 5).unwrap();
        assert!(cyclic_necklace_series(&SymFunc::zero(5), 3)
            .unwrap()
            .is_zero());
        let s = cyclic_necklace_series(&a0, 3).unwrap();
        assert_eq!(s.homogeneous_part(1), p(1, 3));
        assert_eq!(s.homogeneous_part(2), h(2, 3).unwrap());
        assert!(cyclic_necklace_series(&a0, 4).is_err());
    }

    #[test]
    fn cyclic_series_is_ass_composed_with_second_derivative() {
        let a0 = a_series(&ModuleSpec::standard(), 0, 8).unwrap();
        let second = sym::lower(&sym::prime(&sym::prime(&a0)), 6);
        let ass = ass_series_burnside(6);
        assert_eq!(
            cyclic_necklace_series(&a0, 6).unwrap(),
            plethysm(&ass, &second).unwrap()
        );
    }

    #[test]
    fn necklace_paths_agree() {
        let n = 5;
        let a0 = &(&h(3, n + 2).unwrap() + &h(4, n + 2).unwrap()) + &h(5, n + 2).unwrap();
        assert_eq!(
            necklace_series(&a0, n).unwrap(),
            necklace_series_wreath(&a0, n).unwrap()
        );
        let a0 = a_series(&ModuleSpec::standard(), 0, 8).unwrap();
        assert_eq!(
            necklace_series(&a0, 6).unwrap(),
            necklace_series_wreath(&a0, 6).unwrap()
        );
        assert!(necklace_series(&SymFunc::zero(6), 4).unwrap().is_zero());
    }

    #[test]
    fn valuation_violations_rejected() {
        let a0 = h(2, 6).unwrap();
        assert_eq!(necklace_series(&a0, 4).unwrap_err(), SeriesError::Valuation);
        assert_eq!(
            tree_fixed_point(&a0, 4).unwrap_err(),
            SeriesError::Valuation
        );
    }

    #[test]
    fn trees_for_trivalent_vertices() {
        assert_eq!(tree_fixed_point(&SymFunc::zero(5), 4).unwrap(), p(1, 4));
        let a0 = h(3, 4).unwrap();
        let h2 = h(2, 3).unwrap();
        let expected = &(&p(1, 3) + &h2) + &(&p(1, 3) * &h2);
        assert_eq!(tree_fixed_point(&a0, 3).unwrap(), expected);
    }

    #[test]
    fn tree_series_solves_its_equation() {
        let a0 = a_series(&ModuleSpec::standard(), 0, 7).unwrap();
        let f = tree_fixed_point(&a0, 6).unwrap();
        let a0p = sym::lower(&sym::prime(&a0), 6);
        assert_eq!(f, &p(1, 6) + &plethysm(&a0p, &f).unwrap());
    }

    #[test]
    fn b1_small_cases() {
        let mut spec = ModuleSpec::empty();
        spec.genus1.insert(1, vec![part(&[1])]);
        assert_eq!(b1_series(&spec, 4).unwrap(), p(1, 4));
        let spec = spec0(&[(3, &[&[3]])]);
        let b1 = b1_series(&spec, 1).unwrap();
        assert_eq!(b1, p(1, 1));
        assert!(b1_series(&ModuleSpec::empty(), 4).unwrap().is_zero());
    }

    #[test]
    fn gen_series_fields() {
        let gs = GenSeries::new(&ModuleSpec::standard(), 4).unwrap();
        assert_eq!(gs.a0.truncation(), 6);
        assert_eq!(gs.a1.homogeneous_part(1), p(1, 4));
        assert_eq!(gs.a0_second.homogeneous_part(1), p(1, 4));
        // only h3 reaches degree 1 in ȧ0
        assert_eq!(gs.a0_dot.homogeneous_part(1), p(1, 4).scale(&rat(1, 2)));
        assert_eq!(gs.b0_prime.homogeneous_part(2), h(2, 4).unwrap());
        assert_eq!(gs.b1.truncation(), 4);
        assert_eq!(gs.b1.homogeneous_part(0), SymFunc::zero(4));
    }
}

//! Characteristics of censuses by counting classes fixed under leg relabeling.

use std::io::{self, Write};

use serde_json::json;

use super::canon::canonical_code;
use super::enumerate::{enumerate_decorated_with, Budget, Family, IsoClassSet};
use super::GraphError;
use crate::exec::{self, Strategy};
use crate::group::Perm;
use crate::series::ModuleSpec;
use crate::sym::{self, partitions_of, z_rat, SymFunc};

/// `Σ_λ Fix(π_λ)/z_λ · p_λ`, with `π_λ` acting on legs `1..=n` (leg 0 is fixed).
pub fn char_of_census(classes: &IsoClassSet, truncation: usize) -> Result<SymFunc, GraphError> {
    char_of_census_with(classes, truncation, Strategy::default())
}

pub fn char_of_census_with(
    classes: &IsoClassSet,
    truncation: usize,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    let n = classes.n;
    if n > truncation || classes.is_empty() {
        return Ok(SymFunc::zero(truncation));
    }
    let mut out = SymFunc::zero(truncation);
    for lambda in partitions_of(n) {
        let fix = fix_count_with(classes, &Perm::with_cycle_type(&lambda), strategy)?;
        let coeff = sym::int(fix as i64) / z_rat(&lambda);
        out.add_term(lambda, coeff);
    }
    Ok(out)
}

/// Number of classes isomorphic to their relabeling by `pi` (acting on `0..n` as legs `1..=n`).
pub fn fix_count(classes: &IsoClassSet, pi: &Perm) -> Result<usize, GraphError> {
    fix_count_with(classes, pi, Strategy::default())
}

pub fn fix_count_with(
    classes: &IsoClassSet,
    pi: &Perm,
    strategy: Strategy,
) -> Result<usize, GraphError> {
    let fixed = exec::map_slice(&classes.classes, strategy, |class| {
        let moved = class.graph.relabel_legs(|l| {
            if l == 0 {
                0
            } else {
                pi.apply(l as usize - 1) as u32 + 1
            }
        });
        canonical_code(&moved).map(|code| code == class.code)
    });
    fixed
        .into_iter()
        .try_fold(0, |n, f| Ok(n + usize::from(f?)))
}

fn family_char(
    spec: &ModuleSpec,
    family: Family,
    n: usize,
    truncation: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    let census = enumerate_decorated_with(spec, family, n, budget, strategy)?;
    char_of_census_with(&census, truncation, strategy)
}

/// Characteristic of the genus-one stable graphs with `n` legs.
pub fn mv_char(
    spec: &ModuleSpec,
    n: usize,
    truncation: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    family_char(spec, Family::Genus1Stable, n, truncation, budget, strategy)
}

/// Characteristic of the unordered necklaces with `n` legs.
pub fn necklace_char_oracle(
    spec: &ModuleSpec,
    n: usize,
    truncation: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    family_char(spec, Family::Necklace, n, truncation, budget, strategy)
}

/// Characteristic of the cyclically oriented necklaces with `n` legs.
pub fn cyclic_necklace_char_oracle(
    spec: &ModuleSpec,
    n: usize,
    truncation: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    family_char(
        spec,
        Family::OrientedNecklace,
        n,
        truncation,
        budget,
        strategy,
    )
}

/// Characteristic of the rooted trees with legs `1..=n` besides the root.
pub fn tree_char_oracle(
    spec: &ModuleSpec,
    n: usize,
    truncation: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SymFunc, GraphError> {
    family_char(spec, Family::RootedTree, n, truncation, budget, strategy)
}

/// One JSON object per class, then a summary line.
pub fn write_census_jsonl<W: Write>(census: &IsoClassSet, mut out: W) -> io::Result<()> {
    for class in &census.classes {
        let line = json!({
            "family": census.family,
            "n": census.n,
            "code": class.code,
            "graph": class.graph,
        });
        writeln!(out, "{line}")?;
    }
    let summary = json!({
        "summary": true,
        "family": census.family,
        "n": census.n,
        "classes": census.len(),
    });
    writeln!(out, "{summary}")
}

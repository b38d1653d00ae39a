//! Verification suites: each compares a closed form against an independent
//! computation and reports the first degree where they disagree.

use std::fmt;

use thiserror::Error;

use crate::exec::Strategy;
use crate::graph::{self, Budget, Family, GraphError};
use crate::group::{hyperoct_dihedral, ind_trivial_char_wreath_with, GroupError};
use crate::series::{
    a_series, ass_series_burnside, ass_series_closed, b1_series, cyclic_necklace_series,
    naive_dihedral_series, necklace_series, necklace_series_without_correction,
    necklace_series_wreath, ModuleSpec, SeriesError,
};
use crate::sym::{self, h_lambda, p, Partition, SymError, SymFunc, Truncated};
use crate::wreath::{dih_char_closed, dih_series_closed, plethysm_deg1, WreathSymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Bb,
    Generating,
    Deg1,
    Cyclic,
    Necklaces,
    Theorem,
    NegativeDih,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Bb,
        Suite::Generating,
        Suite::Deg1,
        Suite::Cyclic,
        Suite::Necklaces,
        Suite::Theorem,
        Suite::NegativeDih,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bb => "bb",
            Suite::Generating => "generating",
            Suite::Deg1 => "deg1",
            Suite::Cyclic => "cyclic",
            Suite::Necklaces => "necklaces",
            Suite::Theorem => "theorem",
            Suite::NegativeDih => "negative-dih",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn default_degree(self) -> usize {
        match self {
            Suite::Bb => 12,
            Suite::Generating => 10,
            Suite::Deg1 => 5,
            Suite::Cyclic | Suite::Necklaces | Suite::NegativeDih => 6,
            Suite::Theorem => 4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Input(String),
}

impl From<GraphError> for VerifyError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded(why) => VerifyError::Budget(why),
            other => VerifyError::Input(other.to_string()),
        }
    }
}

impl From<SeriesError> for VerifyError {
    fn from(e: SeriesError) -> Self {
        VerifyError::Input(e.to_string())
    }
}

impl From<SymError> for VerifyError {
    fn from(e: SymError) -> Self {
        VerifyError::Input(e.to_string())
    }
}

impl From<GroupError> for VerifyError {
    fn from(e: GroupError) -> Self {
        VerifyError::Input(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub spec: ModuleSpec,
    /// Overrides each suite's default degree.
    pub max_degree: Option<usize>,
    /// Overrides the per-degree census budgets.
    pub budget: Option<Budget>,
    pub strategy: Strategy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            spec: ModuleSpec::standard(),
            max_degree: None,
            budget: None,
            strategy: Strategy::default(),
        }
    }
}

/// One comparison. For `expect_equal = false` the check passes when the two
/// sides differ somewhere.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub expect_equal: bool,
    pub first_difference: Option<usize>,
    /// Degree parts of both sides at the first difference.
    pub left: Option<String>,
    pub right: Option<String>,
}

impl Check {
    fn compare<M: sym::Monomial + fmt::Display>(
        label: impl Into<String>,
        expect_equal: bool,
        left: &Truncated<M>,
        right: &Truncated<M>,
    ) -> Check {
        let first_difference = left.first_difference(right);
        let (l, r) = match first_difference {
            Some(d) => (
                Some(left.homogeneous_part(d).to_string()),
                Some(right.homogeneous_part(d).to_string()),
            ),
            None => (None, None),
        };
        Check {
            label: label.into(),
            expect_equal,
            first_difference,
            left: l,
            right: r,
        }
    }

    pub fn passed(&self) -> bool {
        self.first_difference.is_none() == self.expect_equal
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub degree: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite.name(),
            "degree": self.degree,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "label": c.label,
                "expect_equal": c.expect_equal,
                "passed": c.passed(),
                "first_difference": c.first_difference,
                "left": c.left,
                "right": c.right,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} (degree <= {})", self.suite, self.degree)?;
        for c in &self.checks {
            let verdict = if c.passed() { "ok" } else { "FAILED" };
            match c.first_difference {
                None => writeln!(f, "  {verdict}: {} (equal)", c.label)?,
                Some(d) => {
                    writeln!(
                        f,
                        "  {verdict}: {} (first difference at degree {d})",
                        c.label
                    )?;
                    if !c.passed() || !c.expect_equal {
                        writeln!(f, "    left:  {}", c.left.as_deref().unwrap_or(""))?;
                        writeln!(f, "    right: {}", c.right.as_deref().unwrap_or(""))?;
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport, VerifyError> {
    let n = config.max_degree.unwrap_or_else(|| suite.default_degree());
    let checks = match suite {
        Suite::Bb => bb(n),
        Suite::Generating => generating(n, config.strategy)?,
        Suite::Deg1 => deg1(n)?,
        Suite::Cyclic => cyclic(n, config)?,
        Suite::Necklaces => necklaces(n, config)?,
        Suite::Theorem => theorem(n, config)?,
        Suite::NegativeDih => negative_dih(n, config)?,
    };
    Ok(SuiteReport {
        suite,
        degree: n,
        checks,
    })
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>, VerifyError> {
    Suite::ALL
        .into_iter()
        .map(|s| run_suite(s, config))
        .collect()
}

fn bb(n: usize) -> Vec<Check> {
    vec![Check::compare(
        "closed form vs Burnside over cyclic subgroups",
        true,
        &ass_series_closed(n),
        &ass_series_burnside(n),
    )]
}

fn generating(n: usize, strategy: Strategy) -> Result<Vec<Check>, VerifyError> {
    let mut burnside = WreathSymFunc::zero(n);
    let mut closed = WreathSymFunc::zero(n);
    for k in 1..=n {
        burnside = &burnside + &ind_trivial_char_wreath_with(&hyperoct_dihedral(k), n, strategy)?;
        closed = &closed + &dih_char_closed(k, n)?;
    }
    let series = dih_series_closed(n);
    Ok(vec![
        Check::compare(
            "Burnside vs per-degree closed form",
            true,
            &burnside,
            &closed,
        ),
        Check::compare(
            "per-degree closed form vs generating function",
            true,
            &closed,
            &series,
        ),
    ])
}

fn deg1(n: usize) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    let top = n.max(2);
    let fs = [
        ("p1^2", &p(1, top) * &p(1, top)),
        ("p2", p(2, top)),
        ("h2", sym::h(2, top)?),
    ];
    for lambda in [Partition::single(4), Partition::from_parts(vec![3, 2])] {
        let m = lambda.weight();
        if m > n {
            continue;
        }
        let g = h_lambda(&lambda, m)?;
        for (name, f) in &fs {
            let f = f.with_truncation(m)?;
            let formula = plethysm_deg1(&f, &g)?;
            let orbits = graph::hom_char(&f, &lambda, m - 2)?;
            checks.push(Check::compare(
                format!("D({name}) h{:?} vs orbit count", lambda.parts()),
                true,
                &formula,
                &orbits,
            ));
        }
    }
    Ok(checks)
}

fn budget_for(config: &VerifyConfig, family: Family, k: usize) -> Budget {
    config
        .budget
        .unwrap_or_else(|| Budget::sufficient_for(&config.spec, family, k))
}

type Oracle = fn(&ModuleSpec, usize, usize, &Budget, Strategy) -> Result<SymFunc, GraphError>;

fn census_sum(
    oracle: Oracle,
    family: Family,
    n: usize,
    config: &VerifyConfig,
) -> Result<SymFunc, VerifyError> {
    let mut out = SymFunc::zero(n);
    for k in 1..=n {
        let budget = budget_for(config, family, k);
        out = &out + &oracle(&config.spec, k, n, &budget, config.strategy)?;
    }
    Ok(out)
}

fn cyclic(n: usize, config: &VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let a0 = a_series(&config.spec, 0, n + 2)?;
    let census = census_sum(
        graph::cyclic_necklace_char_oracle,
        Family::OrientedNecklace,
        n,
        config,
    )?;
    Ok(vec![Check::compare(
        "cyclic necklace series vs oriented-necklace census",
        true,
        &cyclic_necklace_series(&a0, n)?,
        &census,
    )])
}

fn necklaces(n: usize, config: &VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let a0 = a_series(&config.spec, 0, n + 2)?;
    let census = census_sum(graph::necklace_char_oracle, Family::Necklace, n, config)?;
    let low = n.min(4);
    let uncorrected = necklace_series_without_correction(&a0, low)?;
    Ok(vec![
        Check::compare(
            "direct necklace series vs census",
            true,
            &necklace_series(&a0, n)?,
            &census,
        ),
        Check::compare(
            "wreath necklace series vs census",
            true,
            &necklace_series_wreath(&a0, n)?,
            &census,
        ),
        Check::compare(
            "series without the quarter psi2 term must disagree with the census",
            false,
            &uncorrected,
            &census.with_truncation(low)?,
        ),
    ])
}

fn theorem(n: usize, config: &VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let census = census_sum(graph::mv_char, Family::Genus1Stable, n, config)?;
    Ok(vec![Check::compare(
        "genus-one series vs stable-graph census",
        true,
        &b1_series(&config.spec, n)?,
        &census,
    )])
}

fn negative_dih(n: usize, config: &VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let a0 = a_series(&config.spec, 0, n + 2)?;
    let census = census_sum(graph::necklace_char_oracle, Family::Necklace, n, config)?;
    Ok(vec![Check::compare(
        "vertex-only dihedral plethysm must disagree with the necklace census",
        false,
        &naive_dihedral_series(&a0, n)?,
        &census,
    )])
}

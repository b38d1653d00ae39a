//! Truncated symmetric functions in the power-sum basis.
//!
//! A [`SymFunc`] is a polynomial in `p1, p2, ...` with exact rational
//! coefficients, cut off above a fixed degree. Plethysm, Adams operations,
//! formal derivatives in the `p_k` and the differential operator
//! `D(f) = f(∂/∂p1, 2∂/∂p2, 3∂/∂p3, ...)` all live here.
//!
//! Derivatives lower the exact range of a series: differentiating in `p_k`
//! a series known through degree `N` yields a series known through `N - k`,
//! and the result carries that smaller truncation.

mod partition;
mod trunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use partition::{partitions_of, z_of, z_rat, Partition};
pub use trunc::{Monomial, Truncated};

pub type Rat = BigRational;

pub type SymFunc = Truncated<Partition>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("cannot raise truncation from {from} to {to}")]
    TruncationRaise { from: usize, to: usize },
    #[error("argument has a constant term")]
    ConstantTerm,
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeAboveTruncation { degree: usize, truncation: usize },
    #[error("series needs truncation at least {needed}, got {got}")]
    InsufficientTruncation { needed: usize, got: usize },
    #[error("expected a homogeneous symmetric function")]
    NotHomogeneous,
}

impl Monomial for Partition {
    fn degree(&self) -> usize {
        self.weight()
    }

    fn one() -> Self {
        Partition::empty()
    }

    fn times(&self, other: &Self) -> Self {
        self.union(other)
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The power sum `p_k`.
pub fn p(k: u32, truncation: usize) -> SymFunc {
    SymFunc::monomial(Partition::single(k), Rat::one(), truncation)
}

/// The monomial `p_λ`.
pub fn p_lambda(lambda: &Partition, truncation: usize) -> SymFunc {
    SymFunc::monomial(lambda.clone(), Rat::one(), truncation)
}

/// Complete homogeneous `h_n = Σ_{λ ⊢ n} p_λ / z_λ`.
pub fn h(n: usize, truncation: usize) -> Result<SymFunc, SymError> {
    if n > truncation {
        return Err(SymError::DegreeAboveTruncation {
            degree: n,
            truncation,
        });
    }
    Ok(SymFunc::from_terms(
        partitions_of(n).into_iter().map(|l| {
            let c = z_rat(&l).recip();
            (l, c)
        }),
        truncation,
    ))
}

/// `h_λ = h_{λ1} h_{λ2} ...`, the characteristic of a Young permutation module.
pub fn h_lambda(lambda: &Partition, truncation: usize) -> Result<SymFunc, SymError> {
    if lambda.weight() > truncation {
        return Err(SymError::DegreeAboveTruncation {
            degree: lambda.weight(),
            truncation,
        });
    }
    let mut out = SymFunc::one(truncation);
    for &k in lambda.parts() {
        out = &out * &h(k as usize, truncation)?;
    }
    Ok(out)
}

/// The Adams operation `ψ_k`, i.e. `p_j ↦ p_{jk}`.
pub fn adams(k: u32, f: &SymFunc) -> SymFunc {
    assert!(k >= 1, "Adams operations are indexed from 1");
    f.map_monomials(|l| l.scaled(k))
}

/// Plethysm `f ∘ g`; `g` must have no constant term.
pub fn plethysm(f: &SymFunc, g: &SymFunc) -> Result<SymFunc, SymError> {
    if f.truncation() != g.truncation() {
        return Err(SymError::TruncationMismatch(f.truncation(), g.truncation()));
    }
    if g.has_constant_term() {
        return Err(SymError::ConstantTerm);
    }
    let n = f.truncation();
    let mut out = SymFunc::zero(n);
    let Some(val) = g.valuation() else {
        // g = 0: only the constant term of f survives
        out.add_term(Partition::empty(), f.constant_term());
        return Ok(out);
    };
    // ψ_k(g) for each k that can still land inside the truncation
    let mut adams_cache: Vec<Option<SymFunc>> = vec![None; n / val + 1];
    for (lambda, c) in f.iter() {
        if lambda.weight() * val > n {
            continue;
        }
        let mut term = SymFunc::constant(c.clone(), n);
        for &k in lambda.parts() {
            let slot = &mut adams_cache[k as usize];
            let gk = slot.get_or_insert_with(|| adams(k, g));
            term = &term * gk;
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Formal `∂f/∂p_k`, exact through degree `truncation - k`.
pub fn partial_p(k: u32, f: &SymFunc) -> SymFunc {
    let lowered = f.truncation().saturating_sub(k as usize);
    let mut out = SymFunc::zero(lowered);
    for (lambda, c) in f.iter() {
        let m = lambda.multiplicity(k);
        if m == 0 {
            continue;
        }
        let rest = lambda.without_part(k).expect("part present");
        out.add_term(rest, c * int(m as i64));
    }
    out
}

/// `f′ = ∂f/∂p1`.
pub fn prime(f: &SymFunc) -> SymFunc {
    partial_p(1, f)
}

/// `ḟ = ∂f/∂p2`.
pub fn dot(f: &SymFunc) -> SymFunc {
    partial_p(2, f)
}

/// Applies `D(f) = f(∂/∂p1, 2∂/∂p2, 3∂/∂p3, ...)` to `g`.
///
/// The result is exact through `g.truncation() - deg(f)`, where `deg(f)` is the
/// largest degree occurring in `f`.
pub fn d_operator(f: &SymFunc, g: &SymFunc) -> SymFunc {
    let top = f.max_degree().unwrap_or(0);
    let target = g.truncation().saturating_sub(top);
    let mut out = SymFunc::zero(target);
    for (lambda, c) in f.iter() {
        let mut acc = g.clone();
        for &k in lambda.parts() {
            acc = partial_p(k, &acc).scale(&int(k as i64));
        }
        let acc = acc
            .with_truncation(target)
            .expect("derivative truncation bounded below by target");
        out = &out + &acc.scale(c);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exact lowering to truncation `n`; panics if `f` is known to less than `n`.
pub(crate) fn lower(f: &SymFunc, n: usize) -> SymFunc {
    f.with_truncation(n)
        .expect("series known to the requested degree")
}

/// Sum of the coefficients after `p_k ↦ 1` for every `k`.
pub fn evaluate_at_ones(f: &SymFunc) -> Rat {
    f.iter().fold(Rat::zero(), |acc, (_, c)| acc + c)
}

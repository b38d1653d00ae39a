//! Orbit counting for `f ∘_{Sk} h_λ⁽ᵏ⁾`.
//!
//! `h_λ` is the permutation module on ordered set partitions of `{0..m}` with
//! block sizes `λ`. Its restriction to `Sk × S(m-k)` is paired with the class
//! function `f` on the first `k` points: at `π ∈ S(m-k)` the character is
//! `Σ_μ [p_μ]f · Fix(σ_μ × π)`.

use super::enumerate::block_assignments;
use crate::group::Perm;
use crate::sym::{partitions_of, z_rat, Partition, Rat, SymError, SymFunc};

pub fn hom_char(f: &SymFunc, lambda: &Partition, truncation: usize) -> Result<SymFunc, SymError> {
    let m = lambda.weight();
    let (Some(k), Some(top)) = (f.valuation(), f.max_degree()) else {
        return Ok(SymFunc::zero(truncation));
    };
    if k != top {
        return Err(SymError::NotHomogeneous);
    }
    if k > m {
        return Ok(SymFunc::zero(truncation));
    }
    let points = block_assignments(lambda);
    let mut out = SymFunc::zero(truncation);
    for nu in partitions_of(m - k) {
        let pi = Perm::with_cycle_type(&nu);
        let mut coeff = Rat::from_integer(0.into());
        for (mu, c) in f.iter() {
            let sigma = Perm::with_cycle_type(mu);
            let fixed = points
                .iter()
                .filter(|b| (0..m).all(|i| b[act(&sigma, &pi, k, i)] == b[i]))
                .count();
            coeff += c * Rat::from_integer(fixed.into());
        }
        out.add_term(nu.clone(), coeff / z_rat(&nu));
    }
    Ok(out)
}

fn act(sigma: &Perm, pi: &Perm, k: usize, i: usize) -> usize {
    if i < k {
        sigma.apply(i)
    } else {
        k + pi.apply(i - k)
    }
}

//! Permutations, signed permutations and the finite subgroups used to build
//! induced trivial characters.
//!
//! Points are 0-based internally. Products compose as functions:
//! `x.compose(y)` means "apply `y`, then `x`".

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::sym::{Partition, Rat, SymFunc};
use crate::wreath::{S2Class, WreathMonomial, WreathSymFunc};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation: {0:?}")]
    NotBijection(Vec<usize>),
    #[error("sign vector has length {signs}, permutation has degree {perm}")]
    LengthMismatch { signs: usize, perm: usize },
    #[error("generators act on different numbers of points")]
    DegreeMismatch,
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("empty group")]
    Empty,
    #[error("element list is not closed under composition")]
    NotClosed,
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeAboveTruncation { degree: usize, truncation: usize },
}

/// Operations shared by [`Perm`] and [`SignedPerm`].
pub trait GroupElement: Clone + Eq + Ord + Hash + Send + Sync {
    fn identity(degree: usize) -> Self;
    fn degree(&self) -> usize;
    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijection(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `{1..n}` from 1-based cycles, e.g. `&[&[1, 2], &[3, 4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(GroupError::NotBijection(cycle.to_vec()));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    /// The rotation `i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Perm {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    /// The reflection `i ↦ n + 1 - i` (1-based).
    pub fn reflection(n: usize) -> Self {
        Perm {
            images: (0..n).map(|i| n - 1 - i).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Cycles as lists of points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// A fixed permutation of `{0..n}` with the given cycle type, cycles laid out consecutively.
    pub fn with_cycle_type(lambda: &Partition) -> Self {
        let n = lambda.weight();
        let mut images = vec![0; n];
        let mut start = 0;
        for &k in lambda.parts() {
            let k = k as usize;
            for j in 0..k {
                images[start + j] = start + (j + 1) % k;
            }
            start += k;
        }
        Perm { images }
    }
}

impl GroupElement for Perm {
    fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    fn degree(&self) -> usize {
        self.images.len()
    }

    fn compose(&self, other: &Self) -> Self {
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// An element `(s, x)` of the hyperoctahedral group `S2 ≀ Sn = (S2)^n ⋊ Sn`.
///
/// Multiplication: `(s, x)·(t, y) = (s · x(t), x∘y)` where `x(t)_j = t_{x⁻¹(j)}`.
/// This is the group acting on `{±1} × {1..n}` by `(s, x)·(ε, i) = (s_{x(i)} ε, x(i))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    /// `true` means the sign `-1`.
    flips: Vec<bool>,
    perm: Perm,
}

impl SignedPerm {
    pub fn new(signs: &[i8], perm: Perm) -> Result<Self, GroupError> {
        if signs.len() != perm.degree() {
            return Err(GroupError::LengthMismatch {
                signs: signs.len(),
                perm: perm.degree(),
            });
        }
        Ok(SignedPerm {
            flips: signs.iter().map(|&s| s < 0).collect(),
            perm,
        })
    }

    /// `(±1, ..., ±1; x)` with a constant sign.
    pub fn uniform(negative: bool, perm: Perm) -> Self {
        SignedPerm {
            flips: vec![negative; perm.degree()],
            perm,
        }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn signs(&self) -> Vec<i8> {
        self.flips.iter().map(|&f| if f { -1 } else { 1 }).collect()
    }

    /// For each cycle of the underlying permutation: its length and whether the
    /// product of signs along it is `-1`.
    pub fn signed_cycles(&self) -> Vec<(u32, S2Class)> {
        self.perm
            .cycles()
            .into_iter()
            .map(|c| {
                let odd = c.iter().filter(|&&i| self.flips[i]).count() % 2 == 1;
                let class = if odd {
                    S2Class::Twisted
                } else {
                    S2Class::Identity
                };
                (c.len() as u32, class)
            })
            .collect()
    }
}

impl GroupElement for SignedPerm {
    fn identity(degree: usize) -> Self {
        SignedPerm {
            flips: vec![false; degree],
            perm: Perm::identity(degree),
        }
    }

    fn degree(&self) -> usize {
        self.perm.degree()
    }

    fn compose(&self, other: &Self) -> Self {
        let n = self.degree();
        let mut flips = self.flips.clone();
        for i in 0..n {
            // other's sign at i moves to position x(i)
            flips[self.perm.apply(i)] ^= other.flips[i];
        }
        SignedPerm {
            flips,
            perm: self.perm.compose(&other.perm),
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let flips = (0..self.degree())
            .map(|j| self.flips[self.perm.apply(j)])
            .collect();
        SignedPerm { flips, perm: inv }
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .flips
            .iter()
            .map(|&b| if b { '-' } else { '+' })
            .collect();
        write!(f, "({s}; {:?})", self.perm)
    }
}

/// A finite group given by the list of its elements, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElements<G> {
    degree: usize,
    elements: Vec<G>,
}

impl<G: GroupElement> GroupElements<G> {
    /// Checks closure under composition; finite closure implies a subgroup.
    pub fn from_elements(mut elements: Vec<G>) -> Result<Self, GroupError> {
        let first = elements.first().ok_or(GroupError::Empty)?;
        let degree = first.degree();
        if elements.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        elements.sort();
        elements.dedup();
        let set: HashSet<&G> = elements.iter().collect();
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(GroupError::NotClosed);
                }
            }
        }
        Ok(GroupElements { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[G] {
        &self.elements
    }

    pub fn contains(&self, g: &G) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Breadth-first closure of `generators` (plus the identity of the given degree).
pub fn closure<G: GroupElement>(
    degree: usize,
    generators: &[G],
    cap: usize,
) -> Result<GroupElements<G>, GroupError> {
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch);
    }
    let id = G::identity(degree);
    let mut seen: HashSet<G> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<G> = seen.into_iter().collect();
    elements.sort();
    Ok(GroupElements { degree, elements })
}

/// `Z/n ≤ Sn` generated by the rotation `(1 2 ... n)`.
pub fn cyclic_subgroup(n: usize) -> GroupElements<Perm> {
    closure(n, &[Perm::rotation(n)], DEFAULT_CLOSURE_CAP).expect("cyclic group fits the cap")
}

/// `Dn ≤ Sn` generated by the rotation and the reflection `i ↦ n + 1 - i`.
pub fn dihedral_in_sym(n: usize) -> GroupElements<Perm> {
    closure(
        n,
        &[Perm::rotation(n), Perm::reflection(n)],
        DEFAULT_CLOSURE_CAP,
    )
    .expect("dihedral group fits the cap")
}

/// `Dn ≤ S2 ≀ Sn` generated by `(+1, rotation)` and `(-1, reflection)`.
pub fn hyperoct_dihedral(n: usize) -> GroupElements<SignedPerm> {
    closure(
        n,
        &[
            SignedPerm::uniform(false, Perm::rotation(n)),
            SignedPerm::uniform(true, Perm::reflection(n)),
        ],
        DEFAULT_CLOSURE_CAP,
    )
    .expect("dihedral group fits the cap")
}

/// The cycle map `Sn → Λ`: the monomial `p_λ` for `λ` the cycle type.
pub fn cycle_map_sym(x: &Perm, truncation: usize) -> Result<SymFunc, GroupError> {
    check_degree(x.degree(), truncation)?;
    Ok(SymFunc::monomial(x.cycle_type(), Rat::one(), truncation))
}

/// The wreath cycle map into `Λ(S2)`.
pub fn wreath_cycle_map(x: &SignedPerm, truncation: usize) -> Result<WreathSymFunc, GroupError> {
    check_degree(x.degree(), truncation)?;
    Ok(WreathSymFunc::monomial(
        WreathMonomial::from_factors(x.signed_cycles()),
        Rat::one(),
        truncation,
    ))
}

fn check_degree(degree: usize, truncation: usize) -> Result<(), GroupError> {
    if degree > truncation {
        return Err(GroupError::DegreeAboveTruncation { degree, truncation });
    }
    Ok(())
}

/// `ch Ind_H^{Sn} 1 = (1/|H|) Σ_{h ∈ H} p_{cycle type(h)}`.
pub fn ind_trivial_char(h: &GroupElements<Perm>, truncation: usize) -> Result<SymFunc, GroupError> {
    ind_trivial_char_with(h, truncation, Strategy::default())
}

pub fn ind_trivial_char_with(
    h: &GroupElements<Perm>,
    truncation: usize,
    strategy: Strategy,
) -> Result<SymFunc, GroupError> {
    check_degree(h.degree(), truncation)?;
    let counts = burnside_counts(h.elements(), strategy, Perm::cycle_type);
    let order = Rat::from_integer(BigInt::from(h.order()));
    Ok(SymFunc::from_terms(
        counts
            .into_iter()
            .map(|(l, c)| (l, Rat::from_integer(BigInt::from(c)) / &order)),
        truncation,
    ))
}

/// `ch Ind_H^{S2≀Sn} 1 = (1/|H|) Σ_{h ∈ H} Ψ(h)` in `Λ(S2)`.
pub fn ind_trivial_char_wreath(
    h: &GroupElements<SignedPerm>,
    truncation: usize,
) -> Result<WreathSymFunc, GroupError> {
    ind_trivial_char_wreath_with(h, truncation, Strategy::default())
}

pub fn ind_trivial_char_wreath_with(
    h: &GroupElements<SignedPerm>,
    truncation: usize,
    strategy: Strategy,
) -> Result<WreathSymFunc, GroupError> {
    check_degree(h.degree(), truncation)?;
    let counts = burnside_counts(h.elements(), strategy, |x| {
        WreathMonomial::from_factors(x.signed_cycles())
    });
    let order = Rat::from_integer(BigInt::from(h.order()));
    Ok(WreathSymFunc::from_terms(
        counts
            .into_iter()
            .map(|(m, c)| (m, Rat::from_integer(BigInt::from(c)) / &order)),
        truncation,
    ))
}

/// Number of elements per cycle-map monomial.
pub fn burnside_counts<G, K, F>(elements: &[G], strategy: Strategy, key: F) -> BTreeMap<K, u64>
where
    G: Sync,
    K: Ord + Send,
    F: Fn(&G) -> K + Sync + Send,
{
    let keys = exec::map_slice(elements, strategy, key);
    let mut counts = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_insert(0u64) += 1;
    }
    counts
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rat, SymError};

/// A monomial in some graded polynomial ring of power sums.
pub trait Monomial: Clone + Ord + fmt::Debug + fmt::Display {
    fn degree(&self) -> usize;
    fn one() -> Self;
    fn times(&self, other: &Self) -> Self;
}

/// A polynomial truncated above a fixed total degree, with exact rational coefficients.
///
/// Every stored key has degree at most `truncation` and every stored coefficient is nonzero.
/// Binary operations require equal truncations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Truncated<M: Monomial> {
    truncation: usize,
    terms: BTreeMap<M, Rat>,
}

impl<M: Monomial> Truncated<M> {
    pub fn zero(truncation: usize) -> Self {
        Truncated {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, truncation: usize) -> Self {
        Self::monomial(M::one(), c, truncation)
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(Rat::one(), truncation)
    }

    /// `c · m`, or zero if `m` lies above the truncation.
    pub fn monomial(m: M, c: Rat, truncation: usize) -> Self {
        let mut out = Self::zero(truncation);
        out.add_term(m, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Rat)>>(terms: I, truncation: usize) -> Self {
        let mut out = Self::zero(truncation);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (by degree, then by the monomial order).
    pub fn iter(&self) -> impl Iterator<Item = (&M, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &M) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&M::one())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&M::one())
    }

    /// Smallest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c · m` in place; terms above the truncation are dropped.
    pub fn add_term(&mut self, m: M, c: Rat) {
        if c.is_zero() || m.degree() > self.truncation {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        Truncated {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops everything above `truncation`, which may not exceed the current one.
    pub fn with_truncation(&self, truncation: usize) -> Result<Self, SymError> {
        if truncation > self.truncation {
            return Err(SymError::TruncationRaise {
                from: self.truncation,
                to: truncation,
            });
        }
        Ok(Truncated {
            truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= truncation)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        Truncated {
            truncation: self.truncation,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Applies `f` to every monomial, collecting like terms and truncating.
    pub fn map_monomials(&self, mut f: impl FnMut(&M) -> M) -> Self {
        let mut out = Self::zero(self.truncation);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), SymError> {
        if self.truncation != other.truncation {
            return Err(SymError::TruncationMismatch(
                self.truncation,
                other.truncation,
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SymError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SymError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SymError> {
        self.check(other)?;
        let n = self.truncation;
        let mut out = Self::zero(n);
        for (a, x) in &self.terms {
            let da = a.degree();
            for (b, y) in &other.terms {
                if da + b.degree() > n {
                    continue;
                }
                out.add_term(a.times(b), x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.truncation);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn require_positive_valuation(&self) -> Result<(), SymError> {
        if self.has_constant_term() {
            return Err(SymError::ConstantTerm);
        }
        Ok(())
    }

    /// `-log(1 - f) = Σ_{k≥1} f^k / k`.
    pub fn log_inv(&self) -> Result<Self, SymError> {
        self.require_positive_valuation()?;
        let mut out = Self::zero(self.truncation);
        let Some(v) = self.valuation() else {
            return Ok(out);
        };
        let mut power = self.clone();
        for k in 1..=self.truncation / v {
            out = &out + &power.scale(&Rat::new(1.into(), k.into()));
            power = &power * self;
        }
        Ok(out)
    }

    /// `1 / (1 - f) = Σ_{k≥0} f^k`.
    pub fn geom(&self) -> Result<Self, SymError> {
        self.require_positive_valuation()?;
        let mut out = Self::one(self.truncation);
        let Some(v) = self.valuation() else {
            return Ok(out);
        };
        let mut power = self.clone();
        for _ in 1..=self.truncation / v {
            out = &out + &power;
            power = &power * self;
        }
        Ok(out)
    }

    /// Lowest degree at which `self` and `other` differ, ignoring truncation.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let top = self.truncation.max(other.truncation);
        (0..=top).find(|&d| {
            let a: Vec<_> = self.terms.iter().filter(|(m, _)| m.degree() == d).collect();
            let b: Vec<_> = other
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .collect();
            a != b
        })
    }
}

impl<M: Monomial> Add for &Truncated<M> {
    type Output = Truncated<M>;
    fn add(self, rhs: Self) -> Truncated<M> {
        self.checked_add(rhs)
            .expect("truncation mismatch in addition")
    }
}

impl<M: Monomial> Sub for &Truncated<M> {
    type Output = Truncated<M>;
    fn sub(self, rhs: Self) -> Truncated<M> {
        self.checked_sub(rhs)
            .expect("truncation mismatch in subtraction")
    }
}

impl<M: Monomial> Mul for &Truncated<M> {
    type Output = Truncated<M>;
    fn mul(self, rhs: Self) -> Truncated<M> {
        self.checked_mul(rhs)
            .expect("truncation mismatch in product")
    }
}

impl<M: Monomial> Add for Truncated<M> {
    type Output = Truncated<M>;
    fn add(self, rhs: Self) -> Truncated<M> {
        &self + &rhs
    }
}

impl<M: Monomial> Sub for Truncated<M> {
    type Output = Truncated<M>;
    fn sub(self, rhs: Self) -> Truncated<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Mul for Truncated<M> {
    type Output = Truncated<M>;
    fn mul(self, rhs: Self) -> Truncated<M> {
        &self * &rhs
    }
}

impl<M: Monomial> Neg for &Truncated<M> {
    type Output = Truncated<M>;
    fn neg(self) -> Truncated<M> {
        self.scale(&-Rat::one())
    }
}

impl<M: Monomial> fmt::Display for Truncated<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for Truncated<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [O(deg > {})]", self, self.truncation)
    }
}

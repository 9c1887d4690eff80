//! Integer polynomials in the Chern-class variables `c_1, c_2, ...`, graded by
//! giving `c_k` weight `k`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector; entry `k` is the exponent of `c_{k+1}`. Trailing zeros are
/// never stored, so a monomial does not depend on how many variables are in
/// scope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// The variable `c_k`, `k >= 1`.
    pub fn chern(k: usize) -> Self {
        assert!(k >= 1, "c_0 is the constant 1, not a variable");
        let mut e = vec![0; k];
        e[k - 1] = 1;
        Self(e)
    }

    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &e)| (k as u64 + 1) * u64::from(e))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut e = long.clone();
        for (slot, &x) in e.iter_mut().zip(short) {
            *slot += x;
        }
        Self(e)
    }
}

// Graded lexicographic: weighted degree first, then exponents of c_1, c_2, ...
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            (0..len)
                .map(|i| {
                    let a = self.0.get(i).copied().unwrap_or(0);
                    let b = other.0.get(i).copied().unwrap_or(0);
                    a.cmp(&b)
                })
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "c{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with big-integer coefficients in the `c_k`, with an
/// optional weighted-degree truncation. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
    truncation: Option<u64>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(value: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), value);
        p
    }

    /// The Chern class `c_k` with the conventions `c_0 = 1` and `c_k = 0` for
    /// negative `k`.
    pub fn chern(k: i64) -> Self {
        match k.cmp(&0) {
            Ordering::Less => Self::zero(),
            Ordering::Equal => Self::one(),
            Ordering::Greater => {
                let mut p = Self::zero();
                p.add_term(Monomial::chern(k as usize), BigInt::one());
                p
            }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Drops every monomial of weighted degree above `degree`, and keeps doing
    /// so through later products.
    pub fn with_truncation(mut self, degree: u64) -> Self {
        self.truncation = Some(degree);
        self.terms.retain(|m, _| m.weight() <= degree);
        self
    }

    pub fn truncation(&self) -> Option<u64> {
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

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The common weighted degree of all terms, or `None` when the terms have
    /// mixed degrees or there are none.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(Monomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || self.truncation.is_some_and(|t| m.weight() > t) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn combined_truncation(&self, other: &Self) -> Option<u64> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out.truncation = self.combined_truncation(rhs);
        if let Some(t) = out.truncation {
            out.terms.retain(|m, _| m.weight() <= t);
        }
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            truncation: self.truncation,
        }
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial {
            terms: BTreeMap::new(),
            truncation: self.combined_truncation(rhs),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

/// Highest term first, e.g. `c1^2 - c2`.
impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

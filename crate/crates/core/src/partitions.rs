//! Counting partitions that fit inside an `m x A` box.
//!
//! An `(m, A)`-partition of `n` is a nonincreasing sequence
//! `A >= y_1 >= ... >= y_m >= 0` with `y_1 + ... + y_m = n`. Two counts are
//! exposed:
//!
//! - [`count_strict`]: all `m` parts nonzero (exactly `m` parts),
//! - [`count_at_most`]: at most `m` nonzero parts.
//!
//! Multi-block counts ([`count_multi`]) are convolutions of the per-block
//! distributions `i -> count_at_most(i, m_j, A_j)`. Brute-force enumerators
//! ([`enumerate_bounded`], [`count_multi_brute_force`]) are kept public so the
//! verification suites can compare against them.
//!
//! The empty partition is counted: `count_at_most(0, m, A) = 1`, while
//! `count_strict(0, m, A) = 0` for every `m >= 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Bound on the number of parts and on the size of each part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionConstraint {
    max_parts: u32,
    max_part: u32,
}

impl PartitionConstraint {
    pub fn new(max_parts: u32, max_part: u32) -> Result<Self> {
        if max_parts == 0 || max_part == 0 {
            return Err(Error::InvalidConstraint {
                max_parts,
                max_part,
            });
        }
        Ok(Self {
            max_parts,
            max_part,
        })
    }

    pub fn max_parts(&self) -> u32 {
        self.max_parts
    }

    pub fn max_part(&self) -> u32 {
        self.max_part
    }

    /// Largest weight that fits, `m * A`.
    pub fn max_weight(&self) -> u64 {
        u64::from(self.max_parts) * u64::from(self.max_part)
    }
}

impl fmt::Display for PartitionConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.max_parts, self.max_part)
    }
}

/// A partition together with the box it was drawn from. Only the nonzero
/// parts are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedPartition {
    parts: Vec<u32>,
    bound: PartitionConstraint,
}

impl BoundedPartition {
    pub fn new(mut parts: Vec<u32>, bound: PartitionConstraint) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not nonincreasing"
            )));
        }
        if parts.len() > bound.max_parts as usize {
            return Err(Error::InvalidPartition(format!(
                "{} nonzero parts exceed the bound {}",
                parts.len(),
                bound.max_parts
            )));
        }
        if parts.first().is_some_and(|&p| p > bound.max_part) {
            return Err(Error::InvalidPartition(format!(
                "largest part {} exceeds the bound {}",
                parts[0], bound.max_part
            )));
        }
        Ok(Self { parts, bound })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn bound(&self) -> PartitionConstraint {
        self.bound
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Parts padded with zeros to exactly `max_parts` entries.
    pub fn padded(&self) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(self.bound.max_parts as usize, 0);
        v
    }
}

/// A finitely supported function `i -> count(i)` on the nonnegative integers.
///
/// Trailing zeros are trimmed so that equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CountDistribution {
    values: Vec<BigUint>,
}

impl CountDistribution {
    pub fn from_values(mut values: Vec<BigUint>) -> Self {
        while values.last().is_some_and(|v| v.is_zero()) {
            values.pop();
        }
        Self { values }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::from_values(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self { values: Vec::new() }
    }

    /// The convolution unit: 1 at 0, 0 elsewhere.
    pub fn delta0() -> Self {
        Self {
            values: vec![BigUint::one()],
        }
    }

    /// `count_at_most(i, m, A)` for every `i` (the support ends at `m * A`).
    pub fn of_constraint(c: PartitionConstraint) -> Self {
        let mut counter = PartitionCounter::new();
        counter.distribution(c, c.max_weight())
    }

    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.values.get(i)
    }

    /// Value at `i`; zero outside the support.
    pub fn value(&self, i: usize) -> BigUint {
        self.values.get(i).cloned().unwrap_or_default()
    }

    /// One past the largest index with a nonzero value.
    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn total(&self) -> BigUint {
        self.values.iter().sum()
    }

    pub fn truncated(&self, max_index: usize) -> Self {
        let end = self.values.len().min(max_index.saturating_add(1));
        Self::from_values(self.values[..end].to_vec())
    }

    pub fn convolve(&self, other: &Self) -> Self {
        convolve(self, other)
    }
}

/// `(f * g)(n) = sum_{l=0}^{n} f(n - l) g(l)`.
pub fn convolve(f: &CountDistribution, g: &CountDistribution) -> CountDistribution {
    convolve_truncated(f, g, usize::MAX)
}

/// Convolution restricted to indices `<= max_index`.
pub fn convolve_truncated(
    f: &CountDistribution,
    g: &CountDistribution,
    max_index: usize,
) -> CountDistribution {
    if f.values.is_empty() || g.values.is_empty() {
        return CountDistribution::zero();
    }
    let len = (f.values.len() + g.values.len() - 1).min(max_index.saturating_add(1));
    let mut out = vec![BigUint::zero(); len];
    for (i, a) in f.values.iter().enumerate().take(len) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.values.iter().enumerate().take(len - i) {
            out[i + j] += a * b;
        }
    }
    CountDistribution::from_values(out)
}

/// Memoized evaluator for `count_at_most`, driven by the recurrence
/// `p(n, m, A) = p(n, m - 1, A) + p(n - m, m, A - 1)`.
///
/// The memo is owned by the counter; share one counter across calls that
/// should reuse work, or create one per call.
#[derive(Debug, Default)]
pub struct PartitionCounter {
    memo: HashMap<(u32, u32, u32), BigUint>,
}

impl PartitionCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count_at_most(&mut self, n: u32, m: u32, a: u32) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if m == 0 || a == 0 {
            return BigUint::zero();
        }
        // Neither more than n parts nor parts larger than n can occur.
        let m = m.min(n);
        let a = a.min(n);
        if u64::from(n) > u64::from(m) * u64::from(a) {
            return BigUint::zero();
        }
        // p(n, m, 1) = 1 iff n <= m; after clamping that means m == n.
        if a == 1 {
            return BigUint::from(u32::from(m == n));
        }
        // p(n, 1, A) = 1 iff n <= A, already guaranteed above.
        if m == 1 {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(&(n, m, a)) {
            return v.clone();
        }
        let v = self.count_at_most(n, m - 1, a) + self.count_at_most(n - m, m, a - 1);
        self.memo.insert((n, m, a), v.clone());
        v
    }

    pub fn count_strict(&mut self, n: u32, m: u32, a: u32) -> BigUint {
        if m == 0 {
            return BigUint::from(u32::from(n == 0));
        }
        self.count_at_most(n, m, a) - self.count_at_most(n, m - 1, a)
    }

    /// The distribution `i -> count_at_most(i, m, A)` for `i <= max_index`.
    pub fn distribution(&mut self, c: PartitionConstraint, max_index: u64) -> CountDistribution {
        let top = max_index.min(c.max_weight());
        let top = u32::try_from(top).unwrap_or(u32::MAX);
        CountDistribution::from_values(
            (0..=top)
                .map(|i| self.count_at_most(i, c.max_parts, c.max_part))
                .collect(),
        )
    }
}

/// Number of partitions of `n` into exactly `m` parts, each at most `a`.
pub fn count_strict(n: u32, m: u32, a: u32) -> BigUint {
    PartitionCounter::new().count_strict(n, m, a)
}

/// Number of partitions of `n` into at most `m` parts, each at most `a`.
/// A zero `m` or `a` leaves only the empty partition.
pub fn count_at_most(n: u32, m: u32, a: u32) -> BigUint {
    PartitionCounter::new().count_at_most(n, m, a)
}

/// Every partition of `n` with at most `c.max_parts()` parts, each at most
/// `c.max_part()`, in lexicographically decreasing order.
pub fn enumerate_bounded(n: u32, c: PartitionConstraint) -> Vec<BoundedPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, c.max_parts, c.max_part, &mut current, &mut |parts| {
        out.push(BoundedPartition {
            parts: parts.to_vec(),
            bound: c,
        });
    });
    out
}

fn fill(rest: u32, slots: u32, cap: u32, current: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if rest == 0 {
        emit(current);
        return;
    }
    if slots == 0 || u64::from(rest) > u64::from(slots) * u64::from(cap) {
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        current.push(part);
        fill(rest - part, slots - 1, part, current, emit);
        current.pop();
    }
}

/// Truncated bivariate power series in `x` (part count) and `y` (weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    max_x: usize,
    max_y: usize,
    // coefficients[m][n] is the coefficient of x^m y^n.
    coefficients: Vec<Vec<BigUint>>,
}

impl BivariateSeries {
    pub fn one(max_x: usize, max_y: usize) -> Self {
        let mut coefficients = vec![vec![BigUint::zero(); max_y + 1]; max_x + 1];
        coefficients[0][0] = BigUint::one();
        Self {
            max_x,
            max_y,
            coefficients,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.max_x, self.max_y)
    }

    /// Coefficient of `x^m y^n`; zero outside the truncation window.
    pub fn coefficient(&self, m: usize, n: usize) -> BigUint {
        self.coefficients
            .get(m)
            .and_then(|row| row.get(n))
            .cloned()
            .unwrap_or_default()
    }

    /// Multiplies in place by `1 / (1 - x y^step)`.
    fn divide_by_one_minus_x_y_pow(&mut self, step: usize) {
        for m in 1..=self.max_x {
            for n in step..=self.max_y {
                let (lower, upper) = self.coefficients.split_at_mut(m);
                let add = lower[m - 1][n - step].clone();
                upper[0][n] += add;
            }
        }
    }
}

/// Truncation of `prod_{i=1}^{A} 1 / (1 - x y^i)` to `x^m y^n` with
/// `m <= max_x`, `n <= max_y`. The coefficient of `x^m y^n` is
/// `count_strict(n, m, A)`.
pub fn generating_series(a: u32, max_x: usize, max_y: usize) -> BivariateSeries {
    let mut series = BivariateSeries::one(max_x, max_y);
    for step in 1..=a as usize {
        series.divide_by_one_minus_x_y_pow(step);
    }
    series
}

/// `q(n, (m_1, A_1), ..., (m_r, A_r))`: the number of tuples of partitions,
/// the j-th fitting in an `m_j x A_j` box, of total weight `n`. Computed by
/// convolving the per-block distributions.
pub fn count_multi(n: u32, constraints: &[PartitionConstraint]) -> BigUint {
    multi_distribution(constraints, u64::from(n)).value(n as usize)
}

/// The distribution `i -> q(i, constraints)` for `i <= max_index`. An empty
/// constraint list yields the unit distribution.
pub fn multi_distribution(constraints: &[PartitionConstraint], max_index: u64) -> CountDistribution {
    let mut counter = PartitionCounter::new();
    let cap = usize::try_from(max_index).unwrap_or(usize::MAX);
    constraints
        .iter()
        .fold(CountDistribution::delta0(), |acc, &c| {
            let block = counter.distribution(c, max_index);
            convolve_truncated(&acc, &block, cap)
        })
}

/// Counts the joint solutions of `A_i >= y_{i,1} >= ... >= y_{i,m_i} >= 0`
/// with total weight `n` by walking every tuple of enumerated partitions.
/// Slow; meant as an oracle for [`count_multi`].
pub fn count_multi_brute_force(n: u32, constraints: &[PartitionConstraint]) -> BigUint {
    multi_distribution_brute_force(constraints, u64::from(n)).value(n as usize)
}

/// The weights `0..=max_index` of every tuple of enumerated partitions, one
/// tuple at a time. Oracle for [`multi_distribution`].
pub fn multi_distribution_brute_force(
    constraints: &[PartitionConstraint],
    max_index: u64,
) -> CountDistribution {
    fn walk(acc: u64, max: u64, blocks: &[Vec<u64>], hist: &mut [u64]) {
        let Some((first, tail)) = blocks.split_first() else {
            hist[acc as usize] += 1;
            return;
        };
        for &w in first {
            if acc + w <= max {
                walk(acc + w, max, tail, hist);
            }
        }
    }
    // One entry per partition, holding its weight.
    let weights: Vec<Vec<u64>> = constraints
        .iter()
        .map(|&c| {
            (0..=c.max_weight().min(max_index))
                .flat_map(|w| enumerate_bounded(w as u32, c).into_iter().map(|p| p.weight()))
                .collect()
        })
        .collect();
    let mut hist = vec![0u64; max_index as usize + 1];
    walk(0, max_index, &weights, &mut hist);
    CountDistribution::from_u64s(&hist)
}

//! Schur polynomials `det(c_{λ_i + j - i})` and the partition basis of the
//! Chow groups of a Grassmann bundle.
//!
//! For a rank-`n` bundle and rank-`d` subbundles, the basis elements are
//! indexed by partitions fitting in a `d x (n - d)` box; the element for `λ`
//! sits in codimension `|λ|` above the base.

mod poly;

use std::collections::HashMap;
use std::fmt;

pub use poly::{GradedPolynomial, Monomial};

use crate::error::{Error, Result};

/// A partition with an explicit number of slots; trailing zeros are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not nonincreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn width(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The same partition with `extra` more zero slots.
    pub fn padded(&self, extra: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.resize(parts.len() + extra, 0);
        Self { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The Chern-class index in row `i`, column `j` (both 0-based) of the
/// Giambelli matrix of `λ`: `λ_i + j - i`.
///
/// Row `i` carries part `λ_i`. Putting `λ_j` on column `j` instead makes two
/// columns equal whenever `λ_j + j` repeats (e.g. `λ = (2,1)`), so the
/// determinant would vanish on basis elements.
pub fn jacobi_trudi_index(lambda: &Partition, i: usize, j: usize) -> i64 {
    i64::from(lambda.parts[i]) + j as i64 - i as i64
}

/// `Δ_λ(c) = det(c_{λ_i + j - i})_{1 <= i, j <= d}` with `c_0 = 1` and
/// `c_k = 0` for `k < 0`, where `d` is the width of `λ`.
///
/// Laplace expansion along rows, memoized on the set of columns already used,
/// so the cost is `O(2^d d)` polynomial products.
pub fn schur_determinant(lambda: &Partition) -> GradedPolynomial {
    let d = lambda.width();
    if d == 0 {
        return GradedPolynomial::one();
    }
    assert!(d < 32, "partition width {d} is too large for a determinant");
    let entries: Vec<Vec<GradedPolynomial>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| GradedPolynomial::chern(jacobi_trudi_index(lambda, i, j)))
                .collect()
        })
        .collect();
    let mut memo = HashMap::new();
    minor(&entries, 0, &mut memo)
}

fn minor(
    entries: &[Vec<GradedPolynomial>],
    used: u32,
    memo: &mut HashMap<u32, GradedPolynomial>,
) -> GradedPolynomial {
    let d = entries.len();
    let row = used.count_ones() as usize;
    if row == d {
        return GradedPolynomial::one();
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = GradedPolynomial::zero();
    let mut free_before = 0;
    for col in 0..d {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &entries[row][col];
        if !entry.is_zero() {
            let rest = minor(entries, used | (1 << col), memo);
            let term = entry * &rest;
            acc = if free_before % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        free_before += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// The weighted degree of `p` when it is homogeneous.
pub fn homogeneity_check(p: &GradedPolynomial) -> Option<u64> {
    p.homogeneous_degree()
}

/// Partitions in the `d x (n - d)` box, grouped by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisDescriptor {
    ambient_rank: u32,
    sub_rank: u32,
    by_weight: Vec<Vec<Partition>>,
}

impl BasisDescriptor {
    pub fn ambient_rank(&self) -> u32 {
        self.ambient_rank
    }

    pub fn sub_rank(&self) -> u32 {
        self.sub_rank
    }

    /// Largest weight, `d (n - d)`.
    pub fn max_weight(&self) -> usize {
        self.by_weight.len() - 1
    }

    /// Basis partitions of weight `k` in lexicographically decreasing order.
    pub fn at_weight(&self, k: usize) -> &[Partition] {
        self.by_weight.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_weight.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_weight.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Partition> {
        self.by_weight.iter().flatten()
    }
}

/// All `λ` with `n - d >= λ_1 >= ... >= λ_d >= 0`, each of width `d`.
pub fn enumerate_basis(n: u32, d: u32) -> Result<BasisDescriptor> {
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "basis needs 0 <= d <= n, got n={n}, d={d}"
        )));
    }
    let width = d as usize;
    let cap = n - d;
    let mut by_weight = vec![Vec::new(); width * cap as usize + 1];
    let mut current = Vec::with_capacity(width);
    box_fill(width, cap, &mut current, &mut |parts: &[u32]| {
        let p = Partition {
            parts: parts.to_vec(),
        };
        by_weight[p.weight() as usize].push(p);
    });
    Ok(BasisDescriptor {
        ambient_rank: n,
        sub_rank: d,
        by_weight,
    })
}

fn box_fill(width: usize, cap: u32, current: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if current.len() == width {
        emit(current);
        return;
    }
    for part in (0..=cap).rev() {
        current.push(part);
        box_fill(width, part, current, emit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::count_at_most;
    use num_bigint::{BigInt, BigUint};

    fn lam(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn c(k: i64) -> GradedPolynomial {
        GradedPolynomial::chern(k)
    }

    /// Leibniz expansion over all permutations; independent of the memoized
    /// Laplace expansion.
    fn leibniz(lambda: &Partition) -> GradedPolynomial {
        let d = lambda.width();
        let mut perm: Vec<usize> = (0..d).collect();
        let mut total = GradedPolynomial::zero();
        loop {
            let inversions = (0..d)
                .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let mut term = GradedPolynomial::one();
            for (i, &j) in perm.iter().enumerate() {
                term = &term * &c(jacobi_trudi_index(lambda, i, j));
            }
            total = if inversions % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
            if !next_permutation(&mut perm) {
                return total;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn small_determinants() {
        assert_eq!(schur_determinant(&lam(&[0, 0, 0])), GradedPolynomial::one());
        assert_eq!(schur_determinant(&lam(&[])), GradedPolynomial::one());
        assert_eq!(schur_determinant(&lam(&[1])), c(1));
        let d11 = schur_determinant(&lam(&[1, 1]));
        assert_eq!(d11, &(&c(1) * &c(1)) - &c(2));
        assert_eq!(d11.to_string(), "c1^2 - c2");
        assert_eq!(schur_determinant(&lam(&[2])), c(2));
        // Δ_(2,1) = c2 c1 - c3
        assert_eq!(schur_determinant(&lam(&[2, 1])).to_string(), "c1*c2 - c3");
    }

    #[test]
    fn matches_leibniz_expansion() {
        for d in 1..=4u32 {
            for lambda in enumerate_basis(d + 3, d).unwrap().iter() {
                assert_eq!(schur_determinant(lambda), leibniz(lambda), "λ = {lambda}");
            }
        }
    }

    #[test]
    fn homogeneous_of_degree_weight() {
        for n in 1..=7 {
            for d in 1..=n {
                for lambda in enumerate_basis(n, d).unwrap().iter() {
                    let p = schur_determinant(lambda);
                    assert_eq!(homogeneity_check(&p), Some(lambda.weight()), "λ = {lambda}");
                }
            }
        }
        assert_eq!(homogeneity_check(&(&c(1) + &c(2))), None);
    }

    #[test]
    fn zero_padding_does_not_change_the_polynomial() {
        for lambda in enumerate_basis(6, 3).unwrap().iter() {
            let base = schur_determinant(lambda);
            for extra in 1..=2 {
                assert_eq!(schur_determinant(&lambda.padded(extra)), base, "λ = {lambda}");
            }
        }
    }

    #[test]
    fn one_column_partitions_give_elementary_chern_classes() {
        // Δ_(1,1,1) = c1^3 - 2 c1 c2 + c3
        let p = schur_determinant(&lam(&[1, 1, 1]));
        assert_eq!(p.coefficient(&Monomial::chern(3)), BigInt::from(1));
        assert_eq!(p.coefficient(&Monomial::from_exponents(vec![3])), BigInt::from(1));
        assert_eq!(p.coefficient(&Monomial::from_exponents(vec![1, 1])), BigInt::from(-2));
    }

    #[test]
    fn basis_shapes() {
        let b = enumerate_basis(2, 1).unwrap();
        assert_eq!(b.counts(), vec![1, 1]);
        let b = enumerate_basis(4, 2).unwrap();
        assert_eq!(b.counts(), vec![1, 1, 2, 1, 1]);
        assert_eq!(b.at_weight(2), &[lam(&[2, 0]), lam(&[1, 1])]);
        assert_eq!(b.at_weight(4), &[lam(&[2, 2])]);
        assert!(b.at_weight(5).is_empty());
        let b = enumerate_basis(5, 5).unwrap();
        assert_eq!(b.counts(), vec![1]);
        assert_eq!(b.at_weight(0), &[lam(&[0, 0, 0, 0, 0])]);
        let point = enumerate_basis(3, 0).unwrap();
        assert_eq!(point.counts(), vec![1]);
        assert_eq!(point.at_weight(0)[0].width(), 0);
        assert!(enumerate_basis(3, 4).is_err());
    }

    #[test]
    fn basis_counts_match_bounded_partitions_and_binomials() {
        for n in 1..=10u32 {
            for d in 1..=n {
                let b = enumerate_basis(n, d).unwrap();
                assert_eq!(b.max_weight(), (d * (n - d)) as usize);
                assert_eq!(b.at_weight(b.max_weight()).len(), 1);
                for (k, &count) in b.counts().iter().enumerate() {
                    assert_eq!(
                        BigUint::from(count),
                        count_at_most(k as u32, d, n - d),
                        "n={n} d={d} k={k}"
                    );
                }
                let binom = (0..d).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1));
                assert_eq!(b.total() as u64, binom);
            }
        }
    }
}

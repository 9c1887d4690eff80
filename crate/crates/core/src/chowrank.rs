//! Free-rank profiles of Chow groups of flag bundles and twisted flag
//! varieties.
//!
//! Every fibration handled here decomposes as
//! `CH^k(X) = ⊕_i CH^{k-i}(S)^{n_i}` over a base `S`, with the multiplicities
//! `n_i` given by a multi-block partition count `q(i, blocks)`. The block
//! lists below are the only thing that differs between the cases.
//!
//! Blocks are `(parts, max_part)` pairs. A block with zero parts or zero
//! maximal part only admits the empty partition and contributes the unit
//! distribution.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{convolve, multi_distribution, CountDistribution, PartitionConstraint};

/// Degree `n` of the algebra plus indices `1 <= i_1 < ... < i_r <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagSpec {
    degree: u32,
    indices: Vec<u32>,
}

impl FlagSpec {
    pub fn new(degree: u32, indices: Vec<u32>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidFlagSpec("degree must be positive".into()));
        }
        if indices.is_empty() {
            return Err(Error::InvalidFlagSpec("index list is empty".into()));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFlagSpec(format!(
                "indices must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        if indices[0] == 0 || *indices.last().unwrap() > degree {
            return Err(Error::InvalidFlagSpec(format!(
                "indices must lie in [1, {degree}], got {indices:?}"
            )));
        }
        Ok(Self { degree, indices })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// Dimension of the split flag variety, `sum_s (i_s - i_{s-1})(n - i_s)`.
    pub fn dimension(&self) -> u64 {
        let mut prev = 0;
        let mut dim = 0;
        for &i in &self.indices {
            dim += u64::from(i - prev) * u64::from(self.degree - i);
            prev = i;
        }
        dim
    }
}

impl fmt::Display for FlagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} indices=", self.degree)?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// One `(m, A)` factor of a multi-block count; either entry may be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub parts: u32,
    pub max_part: u32,
}

impl Block {
    pub fn new(parts: u32, max_part: u32) -> Self {
        Self { parts, max_part }
    }

    pub fn is_degenerate(&self) -> bool {
        self.parts == 0 || self.max_part == 0
    }

    /// `None` for degenerate blocks.
    pub fn constraint(&self) -> Option<PartitionConstraint> {
        PartitionConstraint::new(self.parts, self.max_part).ok()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.parts, self.max_part)
    }
}

/// Which decomposition produced a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Untwisted flag bundle of a rank-`n` vector bundle.
    FlagBundle,
    /// Twisted flag variety with `i_1 = 1`, projected to `SB(A)`.
    FirstIndexOne,
    /// Twisted flag variety projected to `SB_{i_s}(A)`.
    General { s: usize },
    /// Fibre product of two flag bundles.
    ProductFibration,
    /// `Flag(1, i_1, ..., i_r; A)` over `SB(A)`, the cover used when `i_1 > 1`.
    SeveriBrauerCover,
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::FlagBundle => "flag_bundle_coefficients".into(),
            Provenance::FirstIndexOne => "twisted_first_index_one".into(),
            Provenance::General { s } => format!("twisted_general(s={s})"),
            Provenance::ProductFibration => "product_fibration_coefficients".into(),
            Provenance::SeveriBrauerCover => "severi_brauer_cover".into(),
        }
    }
}

/// Hypothesis on the index of `A` that the caller asserts; never checked here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexHypothesis {
    /// `gcd(ind A, i_s) = 1` for the chosen `s`.
    CoprimeToChosenIndex,
    /// `ind A` is a prime power, so some admissible `s` exists.
    PrimePowerIndex,
    /// `gcd(ind A, i_1, ..., i_r) = 1`.
    CoprimeToAllIndices,
    /// `A` is split.
    Split,
}

impl IndexHypothesis {
    pub fn label(&self) -> &'static str {
        match self {
            IndexHypothesis::CoprimeToChosenIndex => "gcd(ind A, i_s) = 1",
            IndexHypothesis::PrimePowerIndex => "ind A is a prime power",
            IndexHypothesis::CoprimeToAllIndices => "gcd(ind A, i_1, ..., i_r) = 1",
            IndexHypothesis::Split => "A split",
        }
    }
}

/// The multiplicities `n_i` of a decomposition, with the blocks they came
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationCoefficients {
    blocks: Vec<Block>,
    coefficients: CountDistribution,
    provenance: Provenance,
    hypothesis: Option<IndexHypothesis>,
}

impl FibrationCoefficients {
    fn from_blocks(
        blocks: Vec<Block>,
        provenance: Provenance,
        hypothesis: Option<IndexHypothesis>,
    ) -> Self {
        let constraints: Vec<PartitionConstraint> =
            blocks.iter().filter_map(Block::constraint).collect();
        let top = constraints.iter().map(PartitionConstraint::max_weight).sum();
        let coefficients = multi_distribution(&constraints, top);
        debug_assert!(coefficients.value(0).is_one());
        Self {
            blocks,
            coefficients,
            provenance,
            hypothesis,
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn hypothesis(&self) -> Option<IndexHypothesis> {
        self.hypothesis
    }

    pub fn distribution(&self) -> &CountDistribution {
        &self.coefficients
    }

    /// `n_i`; zero past the fibre dimension.
    pub fn n(&self, i: usize) -> BigUint {
        self.coefficients.value(i)
    }

    /// Relative dimension of the fibration (largest `i` with `n_i != 0`).
    pub fn fiber_dimension(&self) -> usize {
        self.coefficients.support_len().saturating_sub(1)
    }

    pub fn total(&self) -> BigUint {
        self.coefficients.total()
    }
}

/// Ranks of `CH^k` for `k = 0..=dimension`; zero beyond.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankProfile {
    ranks: Vec<BigUint>,
}

impl RankProfile {
    pub fn from_ranks(ranks: Vec<BigUint>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidArgument("rank profile is empty".into()));
        }
        Ok(Self { ranks })
    }

    pub fn from_u64s(ranks: &[u64]) -> Result<Self> {
        Self::from_ranks(ranks.iter().map(|&r| BigUint::from(r)).collect())
    }

    pub fn point() -> Self {
        Self {
            ranks: vec![BigUint::one()],
        }
    }

    /// Projective space of dimension `dim`.
    pub fn projective(dim: u32) -> Self {
        Self {
            ranks: vec![BigUint::one(); dim as usize + 1],
        }
    }

    /// Split Grassmannian of `d`-planes in an `n`-space.
    pub fn grassmannian(n: u32, d: u32) -> Result<Self> {
        let spec = FlagSpec::new(n, vec![d])?;
        Ok(push_through_base(&flag_bundle_coefficients(&spec), &Self::point()))
    }

    pub fn rank(&self, k: usize) -> BigUint {
        self.ranks.get(k).cloned().unwrap_or_default()
    }

    pub fn ranks(&self) -> &[BigUint] {
        &self.ranks
    }

    pub fn dimension(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.ranks.iter().sum()
    }

    /// `rank(k) = rank(dim - k)` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        self.ranks.iter().eq(self.ranks.iter().rev())
    }

    fn as_distribution(&self) -> CountDistribution {
        CountDistribution::from_values(self.ranks.clone())
    }
}

impl fmt::Display for RankProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.ranks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Untwisted flag bundle of a rank-`n` bundle:
/// `n_i = q(i, (i_1, n - i_1), (i_2 - i_1, n - i_2), ..., (i_r - i_{r-1}, n - i_r))`.
pub fn flag_bundle_coefficients(spec: &FlagSpec) -> FibrationCoefficients {
    FibrationCoefficients::from_blocks(flag_bundle_blocks(spec), Provenance::FlagBundle, None)
}

fn flag_bundle_blocks(spec: &FlagSpec) -> Vec<Block> {
    let n = spec.degree;
    let mut prev = 0;
    spec.indices
        .iter()
        .map(|&i| {
            let block = Block::new(i - prev, n - i);
            prev = i;
            block
        })
        .collect()
}

/// `Flag(1, i_2, ..., i_r; A)` over `SB(A)`, with `i_{r+1} = n`:
/// `n_i = q(i, (i_{r+1} - i_r, i_r - 1), ..., (i_3 - i_2, i_2 - 1))`.
///
/// A bare `SB(A)` (`r = 1`) yields the unit distribution.
pub fn twisted_first_index_one(spec: &FlagSpec) -> Result<FibrationCoefficients> {
    Ok(FibrationCoefficients::from_blocks(
        first_index_one_blocks(spec)?,
        Provenance::FirstIndexOne,
        None,
    ))
}

fn first_index_one_blocks(spec: &FlagSpec) -> Result<Vec<Block>> {
    if spec.indices[0] != 1 {
        return Err(Error::InvalidFlagSpec(format!(
            "first index must be 1, got {}",
            spec.indices[0]
        )));
    }
    let mut upper: Vec<u32> = spec.indices[1..].to_vec();
    upper.push(spec.degree);
    Ok(spec.indices[1..]
        .iter()
        .zip(&upper[1..])
        .rev()
        .map(|(&lo, &hi)| Block::new(hi - lo, lo - 1))
        .collect())
}

/// `Flag(i_1, ..., i_r; A)` projected to `SB_{i_s}(A)`, `s` 1-based:
/// `n_i = q(i, (i_1, i_s - i_1), ..., (i_{s-1} - i_{s-2}, i_s - i_{s-1}),
///            (i_{s+1} - i_s, n - i_{s+1}), ..., (i_r - i_{r-1}, n - i_r))`.
///
/// `hypothesis` is recorded, not verified.
pub fn twisted_general(
    spec: &FlagSpec,
    s: usize,
    hypothesis: IndexHypothesis,
) -> Result<FibrationCoefficients> {
    let r = spec.indices.len();
    if s == 0 || s > r {
        return Err(Error::InvalidArgument(format!(
            "projection position s={s} outside 1..={r}"
        )));
    }
    let n = spec.degree;
    let pivot = spec.indices[s - 1];
    let mut blocks = Vec::with_capacity(r - 1);
    let mut prev = 0;
    for &i in &spec.indices[..s - 1] {
        blocks.push(Block::new(i - prev, pivot - i));
        prev = i;
    }
    let mut prev = pivot;
    for &i in &spec.indices[s..] {
        blocks.push(Block::new(i - prev, n - i));
        prev = i;
    }
    Ok(FibrationCoefficients::from_blocks(
        blocks,
        Provenance::General { s },
        Some(hypothesis),
    ))
}

/// Fibre product of a flag bundle of `minus` over a flag bundle of `plus`:
/// the concatenation of both block lists.
pub fn product_fibration_coefficients(minus: &FlagSpec, plus: &FlagSpec) -> FibrationCoefficients {
    let mut blocks = flag_bundle_blocks(minus);
    blocks.extend(flag_bundle_blocks(plus));
    FibrationCoefficients::from_blocks(blocks, Provenance::ProductFibration, None)
}

/// `k -> sum_i n_i * rank_S(k - i)`.
pub fn push_through_base(coeffs: &FibrationCoefficients, base: &RankProfile) -> RankProfile {
    let total = convolve(&coeffs.coefficients, &base.as_distribution());
    let dim = coeffs.fiber_dimension() + base.dimension();
    let ranks = (0..=dim).map(|k| total.value(k)).collect();
    RankProfile { ranks }
}

/// Ranks of `CH^k(Flag(i_1, ..., i_r; A))` for `i_1 > 1`, computed from the
/// ranks of `S = SB(A)` through `Y = Flag(1, i_1, ..., i_r; A)`.
///
/// `Y -> X` forgets the first ideal and is a projective bundle with fibre
/// `P^{i_1 - 1}`, and `Y -> S` decomposes with
/// `n_i = q(i, (n - i_r, i_r - 1), ..., (i_2 - i_1, i_1 - 1))`. Cutting by
/// the relative hyperplane class gives the exact sequence
///
/// `0 -> CH^{k-i_1}(X) -> CH^{k-1}(Y) -> CH^k(Y) -> CH^k(X) -> 0`,
///
/// so `rank CH^k(X) = rank CH^k(Y) - rank CH^{k-1}(Y) + rank CH^{k-i_1}(X)`.
/// A negative value, or a nonzero rank above `dim X`, is reported as an
/// internal inconsistency.
pub fn severi_brauer_pipeline_ranks(
    spec: &FlagSpec,
    base: &RankProfile,
    hypothesis: IndexHypothesis,
) -> Result<RankProfile> {
    Ok(severi_brauer_pipeline(spec, base, hypothesis)?.ranks)
}

/// Intermediate data of [`severi_brauer_pipeline_ranks`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineRanks {
    pub cover_coefficients: FibrationCoefficients,
    pub cover_profile: RankProfile,
    pub ranks: RankProfile,
    pub hypothesis: IndexHypothesis,
}

pub fn severi_brauer_pipeline(
    spec: &FlagSpec,
    base: &RankProfile,
    hypothesis: IndexHypothesis,
) -> Result<PipelineRanks> {
    let first = spec.indices[0];
    if first < 2 {
        return Err(Error::InvalidFlagSpec(
            "the Severi-Brauer pipeline needs i_1 > 1; use the first-index-one decomposition"
                .into(),
        ));
    }
    let mut cover_indices = vec![1];
    cover_indices.extend_from_slice(&spec.indices);
    let cover = FlagSpec::new(spec.degree, cover_indices)?;
    let cover_coefficients = FibrationCoefficients::from_blocks(
        first_index_one_blocks(&cover)?,
        Provenance::SeveriBrauerCover,
        Some(hypothesis),
    );
    let cover_profile = push_through_base(&cover_coefficients, base);

    let y: Vec<BigInt> = cover_profile.ranks.iter().cloned().map(BigInt::from).collect();
    let fibre = first as usize;
    let dim_x = cover_profile.dimension().saturating_sub(fibre - 1);
    let mut x: Vec<BigInt> = Vec::with_capacity(y.len());
    for k in 0..y.len() {
        let mut value = y[k].clone();
        if k >= 1 {
            value -= &y[k - 1];
        }
        if k >= fibre {
            value += &x[k - fibre];
        }
        if value.is_negative() {
            return Err(Error::NegativeRank {
                codim: k,
                value: value.to_string(),
            });
        }
        if k > dim_x && !value.is_zero() {
            return Err(Error::Inconsistent(format!(
                "rank {value} in codimension {k} above the dimension {dim_x}"
            )));
        }
        x.push(value);
    }
    x.truncate(dim_x + 1);
    let ranks = RankProfile {
        ranks: x
            .into_iter()
            .map(|v| v.to_biguint().expect("checked nonnegative"))
            .collect(),
    };
    let fibre_profile = RankProfile::projective(first - 1);
    let rebuilt = convolve(&ranks.as_distribution(), &fibre_profile.as_distribution());
    if rebuilt != cover_profile.as_distribution() {
        return Err(Error::Inconsistent(
            "cover ranks are not those of a projective bundle over the computed ranks".into(),
        ));
    }
    Ok(PipelineRanks {
        cover_coefficients,
        cover_profile,
        ranks,
        hypothesis,
    })
}

/// What the caller knows about the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    /// A Severi-Brauer variety; `CH^0` and `CH^1` are torsion-free.
    SeveriBrauer,
    Other,
}

/// One summand `CH^{k-i}(S)^{n_i}` of `CH^k(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionSummand {
    pub shift: usize,
    pub multiplicity: BigUint,
    pub base_codim: usize,
    pub base_torsion_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimTorsion {
    pub codim: usize,
    pub torsion_free: bool,
    pub summands: Vec<TorsionSummand>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub entries: Vec<CodimTorsion>,
    /// Base codimensions whose caller-supplied flag was overridden to
    /// torsion-free because the base is Severi-Brauer.
    pub overridden: Vec<usize>,
}

impl TorsionReport {
    pub fn torsion_free(&self) -> Vec<bool> {
        self.entries.iter().map(|e| e.torsion_free).collect()
    }

    /// Smallest codimension reported with possible torsion.
    pub fn first_torsion(&self) -> Option<usize> {
        self.entries.iter().find(|e| !e.torsion_free).map(|e| e.codim)
    }
}

/// Reads torsion-freeness of `CH^k(X)` for `k <= max_codim` off the
/// decomposition `CH^k(X) = ⊕_i CH^{k-i}(S)^{n_i}`: the total space is
/// torsion-free in codimension `k` iff every summand with `n_i != 0` is.
///
/// `base_torsion_free[k]` says whether `CH^k(S)` is torsion-free and must
/// cover `0..=max_codim`.
pub fn torsion_free_transfer(
    base_torsion_free: &[bool],
    base_kind: BaseKind,
    coeffs: &FibrationCoefficients,
    max_codim: usize,
) -> Result<TorsionReport> {
    if base_torsion_free.len() <= max_codim {
        return Err(Error::InvalidArgument(format!(
            "base torsion flags cover codimensions 0..{}, need 0..={max_codim}",
            base_torsion_free.len()
        )));
    }
    let mut base = base_torsion_free.to_vec();
    let mut overridden = Vec::new();
    if base_kind == BaseKind::SeveriBrauer {
        for (k, flag) in base.iter_mut().enumerate().take(2) {
            if !*flag {
                *flag = true;
                overridden.push(k);
            }
        }
    }
    let entries = (0..=max_codim)
        .map(|k| {
            let summands: Vec<TorsionSummand> = (0..=k)
                .filter_map(|i| {
                    let multiplicity = coeffs.n(i);
                    (!multiplicity.is_zero()).then(|| TorsionSummand {
                        shift: i,
                        multiplicity,
                        base_codim: k - i,
                        base_torsion_free: base[k - i],
                    })
                })
                .collect();
            CodimTorsion {
                codim: k,
                torsion_free: summands.iter().all(|s| s.base_torsion_free),
                summands,
            }
        })
        .collect();
    Ok(TorsionReport {
        entries,
        overridden,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count_at_most, count_multi_brute_force};

    fn spec(n: u32, idx: &[u32]) -> FlagSpec {
        FlagSpec::new(n, idx.to_vec()).unwrap()
    }

    fn values(c: &FibrationCoefficients) -> Vec<u64> {
        c.distribution()
            .values()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    fn ranks(p: &RankProfile) -> Vec<u64> {
        p.ranks().iter().map(|v| u64::try_from(v).unwrap()).collect()
    }

    /// Coefficients of `prod_{j=1}^{n-1} (1 + t + ... + t^j)` by direct
    /// polynomial multiplication.
    fn q_factorial(n: u32) -> Vec<u64> {
        let mut poly = vec![1u64];
        for j in 1..n as usize {
            let mut next = vec![0u64; poly.len() + j];
            for (a, &c) in poly.iter().enumerate() {
                for b in 0..=j {
                    next[a + b] += c;
                }
            }
            poly = next;
        }
        poly
    }

    /// Solutions of `x_j <= j` for `j = 1..n-1` with `sum x_j = i`.
    fn staircase_solutions(n: u32) -> Vec<u64> {
        let len = (n * (n - 1) / 2) as usize + 1;
        let mut counts = vec![0u64; len];
        fn walk(j: u32, n: u32, sum: usize, counts: &mut [u64]) {
            if j == n {
                counts[sum] += 1;
                return;
            }
            for x in 0..=j as usize {
                walk(j + 1, n, sum + x, counts);
            }
        }
        walk(1, n, 0, &mut counts);
        counts
    }

    fn split_flag_specs(max_n: u32) -> Vec<FlagSpec> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for mask in 1u32..(1 << n) {
                let idx: Vec<u32> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                out.push(spec(n, &idx));
            }
        }
        out
    }

    #[test]
    fn flag_spec_validation() {
        assert!(FlagSpec::new(0, vec![1]).is_err());
        assert!(FlagSpec::new(3, vec![]).is_err());
        assert!(FlagSpec::new(3, vec![0, 1]).is_err());
        assert!(FlagSpec::new(3, vec![2, 2]).is_err());
        assert!(FlagSpec::new(3, vec![2, 1]).is_err());
        assert!(FlagSpec::new(3, vec![4]).is_err());
        assert_eq!(spec(4, &[1, 2, 3, 4]).dimension(), 6);
        assert_eq!(spec(4, &[2]).dimension(), 4);
    }

    #[test]
    fn projective_line_bundle() {
        let c = flag_bundle_coefficients(&spec(2, &[1]));
        assert_eq!(values(&c), vec![1, 1]);
        assert_eq!(c.blocks(), &[Block::new(1, 1)]);
    }

    #[test]
    fn grassmann_bundle_matches_box_counts() {
        for n in 1..=8 {
            for d in 1..=n {
                let c = flag_bundle_coefficients(&spec(n, &[d]));
                for i in 0..=(d * (n - d)) {
                    assert_eq!(c.n(i as usize), count_at_most(i, d, n - d));
                }
            }
        }
    }

    #[test]
    fn complete_flag_bundle_is_q_factorial() {
        for n in 1..=7u32 {
            let idx: Vec<u32> = (1..=n).collect();
            let c = flag_bundle_coefficients(&spec(n, &idx));
            assert_eq!(values(&c), q_factorial(n));
            assert_eq!(c.total(), BigUint::from((1..=u64::from(n)).product::<u64>()));
        }
    }

    #[test]
    fn first_index_one_degenerate_cases() {
        let c = twisted_first_index_one(&spec(5, &[1, 5])).unwrap();
        assert_eq!(values(&c), vec![1]);
        assert_eq!(c.blocks(), &[Block::new(0, 4)]);
        let c = twisted_first_index_one(&spec(5, &[1])).unwrap();
        assert_eq!(values(&c), vec![1]);
        assert!(c.blocks().is_empty());
        assert!(twisted_first_index_one(&spec(5, &[2, 3])).is_err());
    }

    #[test]
    fn first_index_one_complete_flags() {
        // The fibre over SB(A) is the complete flag variety of an
        // (n-1)-dimensional space.
        for n in 2..=7u32 {
            let idx: Vec<u32> = (1..=n).collect();
            let c = twisted_first_index_one(&spec(n, &idx)).unwrap();
            let mut expected_blocks: Vec<Block> = (1..n - 1).rev().map(|j| Block::new(1, j)).collect();
            expected_blocks.insert(0, Block::new(0, n - 1));
            assert_eq!(c.blocks(), expected_blocks.as_slice());
            assert_eq!(values(&c), q_factorial(n - 1));
            assert_eq!(values(&c), staircase_solutions(n - 1));
        }
    }

    #[test]
    fn staircase_blocks_count_complete_flags_over_a_point() {
        for n in 1..=7u32 {
            let blocks: Vec<PartitionConstraint> = (1..n)
                .rev()
                .map(|j| PartitionConstraint::new(1, j).unwrap())
                .collect();
            let top = n * (n - 1) / 2;
            let q: Vec<u64> = (0..=top)
                .map(|i| u64::try_from(crate::partitions::count_multi(i, &blocks)).unwrap())
                .collect();
            assert_eq!(q, q_factorial(n));
            assert_eq!(q, staircase_solutions(n));
            let idx: Vec<u32> = (1..=n).collect();
            assert_eq!(values(&flag_bundle_coefficients(&spec(n, &idx))), q);
        }
    }

    #[test]
    fn general_case_examples() {
        let c = twisted_general(&spec(4, &[1, 2]), 1, IndexHypothesis::Split).unwrap();
        assert_eq!(c.blocks(), &[Block::new(1, 2)]);
        assert_eq!(values(&c), vec![1, 1, 1]);

        // Projecting Flag(2,3) to SB_3 leaves a single (2,1) block: the fibre
        // is the Grassmannian of 2-planes in a 3-space.
        let c = twisted_general(&spec(4, &[2, 3]), 2, IndexHypothesis::CoprimeToChosenIndex)
            .unwrap();
        assert_eq!(c.blocks(), &[Block::new(2, 1)]);
        assert_eq!(values(&c), vec![1, 1, 1]);
        assert_eq!(c.hypothesis(), Some(IndexHypothesis::CoprimeToChosenIndex));

        let two_blocks = [
            PartitionConstraint::new(2, 1).unwrap(),
            PartitionConstraint::new(1, 1).unwrap(),
        ];
        let brute: Vec<BigUint> = (0..4).map(|i| count_multi_brute_force(i, &two_blocks)).collect();
        assert_eq!(brute, vec![1u32, 2, 2, 1].into_iter().map(BigUint::from).collect::<Vec<_>>());

        assert!(twisted_general(&spec(4, &[2, 3]), 0, IndexHypothesis::Split).is_err());
        assert!(twisted_general(&spec(4, &[2, 3]), 3, IndexHypothesis::Split).is_err());
    }

    #[test]
    fn general_case_over_split_grassmannian_gives_flag_profile() {
        for fs in split_flag_specs(6) {
            for s in 1..=fs.indices().len() {
                let c = twisted_general(&fs, s, IndexHypothesis::Split).unwrap();
                let base = RankProfile::grassmannian(fs.degree(), fs.indices()[s - 1]).unwrap();
                let direct = push_through_base(&flag_bundle_coefficients(&fs), &RankProfile::point());
                assert_eq!(push_through_base(&c, &base), direct, "{fs} s={s}");
            }
        }
    }

    #[test]
    fn product_fibration() {
        let c = product_fibration_coefficients(&spec(2, &[1]), &spec(2, &[1]));
        assert_eq!(values(&c), vec![1, 2, 1]);
        let minus = spec(4, &[1, 3]);
        let plus = spec(3, &[2]);
        let c = product_fibration_coefficients(&minus, &plus);
        let conv = flag_bundle_coefficients(&minus)
            .distribution()
            .convolve(flag_bundle_coefficients(&plus).distribution());
        assert_eq!(c.distribution(), &conv);
        assert_eq!(c.provenance(), Provenance::ProductFibration);
    }

    #[test]
    fn push_through_base_examples() {
        let c = flag_bundle_coefficients(&spec(4, &[2]));
        assert_eq!(push_through_base(&c, &RankProfile::point()).ranks(), c.distribution().values());

        for n in 2..=6u32 {
            let idx: Vec<u32> = (1..=n).collect();
            let c = twisted_first_index_one(&spec(n, &idx)).unwrap();
            let total = push_through_base(&c, &RankProfile::projective(n - 1)).total();
            assert_eq!(total, BigUint::from((1..=u64::from(n)).product::<u64>()));
        }

        // Linear in the base.
        let c = flag_bundle_coefficients(&spec(3, &[1, 2]));
        let a = RankProfile::from_u64s(&[1, 2, 0]).unwrap();
        let b = RankProfile::from_u64s(&[0, 1, 3]).unwrap();
        let sum = RankProfile::from_u64s(&[1, 3, 3]).unwrap();
        let pa = ranks(&push_through_base(&c, &a));
        let pb = ranks(&push_through_base(&c, &b));
        let ps = ranks(&push_through_base(&c, &sum));
        let added: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| x + y).collect();
        assert_eq!(ps, added);
    }

    #[test]
    fn pipeline_examples() {
        let g24 = severi_brauer_pipeline_ranks(
            &spec(4, &[2]),
            &RankProfile::projective(3),
            IndexHypothesis::Split,
        )
        .unwrap();
        assert_eq!(ranks(&g24), vec![1, 1, 2, 1, 1]);

        let p = severi_brauer_pipeline(&spec(3, &[2]), &RankProfile::projective(2), IndexHypothesis::Split)
            .unwrap();
        assert_eq!(ranks(&p.ranks), vec![1, 1, 1]);
        assert_eq!(ranks(&p.cover_profile), vec![1, 2, 2, 1]);
        assert!(severi_brauer_pipeline_ranks(
            &spec(3, &[1, 2]),
            &RankProfile::projective(2),
            IndexHypothesis::Split
        )
        .is_err());
    }

    #[test]
    fn pipeline_rejects_inconsistent_base() {
        // A base that is not a projective space makes the cover profile
        // indivisible by the fibre's Poincaré polynomial.
        let err = severi_brauer_pipeline_ranks(
            &spec(4, &[2]),
            &RankProfile::from_u64s(&[1, 0, 2]).unwrap(),
            IndexHypothesis::Split,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeRank { .. } | Error::Inconsistent(_)));
    }

    #[test]
    fn split_cross_checks() {
        for fs in split_flag_specs(6) {
            let n = fs.degree();
            let direct = push_through_base(&flag_bundle_coefficients(&fs), &RankProfile::point());
            assert!(direct.is_palindromic(), "{fs}");
            assert_eq!(direct.dimension() as u64, fs.dimension());
            if fs.indices()[0] == 1 {
                let twisted = twisted_first_index_one(&fs).unwrap();
                assert_eq!(
                    push_through_base(&twisted, &RankProfile::projective(n - 1)),
                    direct,
                    "{fs}"
                );
            } else {
                let piped = severi_brauer_pipeline_ranks(
                    &fs,
                    &RankProfile::projective(n - 1),
                    IndexHypothesis::Split,
                )
                .unwrap();
                assert_eq!(piped, direct, "{fs}");
            }
        }
    }

    #[test]
    fn every_coefficient_table_starts_with_one() {
        for fs in split_flag_specs(5) {
            assert!(flag_bundle_coefficients(&fs).n(0).is_one());
            for s in 1..=fs.indices().len() {
                assert!(twisted_general(&fs, s, IndexHypothesis::Split).unwrap().n(0).is_one());
            }
            if fs.indices()[0] == 1 {
                assert!(twisted_first_index_one(&fs).unwrap().n(0).is_one());
            }
        }
    }

    #[test]
    fn torsion_transfer() {
        let coeffs = twisted_first_index_one(&spec(3, &[1, 2, 3])).unwrap();
        let clean = torsion_free_transfer(&[true; 6], BaseKind::SeveriBrauer, &coeffs, 5).unwrap();
        assert!(clean.torsion_free().iter().all(|&b| b));
        assert!(clean.overridden.is_empty());

        let flags = [true, true, false, false, true, true];
        let report = torsion_free_transfer(&flags, BaseKind::Other, &coeffs, 5).unwrap();
        assert!(coeffs.n(1) >= BigUint::one());
        assert_eq!(report.first_torsion(), Some(2));
        let k2 = &report.entries[2];
        assert!(k2.summands.iter().any(|s| s.shift == 0 && !s.base_torsion_free));
        let k3 = &report.entries[3];
        assert!(k3.summands.iter().any(|s| s.shift == 1 && s.base_codim == 2 && !s.base_torsion_free));
        assert!(k3.summands.iter().any(|s| s.shift == 0 && s.base_codim == 3 && !s.base_torsion_free));

        let bad_low = [false, false, true];
        let sb = torsion_free_transfer(&bad_low, BaseKind::SeveriBrauer, &coeffs, 2).unwrap();
        assert_eq!(sb.overridden, vec![0, 1]);
        assert!(sb.entries[0].torsion_free && sb.entries[1].torsion_free);
        let other = torsion_free_transfer(&bad_low, BaseKind::Other, &coeffs, 2).unwrap();
        assert!(!other.entries[0].torsion_free);

        assert!(torsion_free_transfer(&[true; 2], BaseKind::Other, &coeffs, 4).is_err());
    }
}

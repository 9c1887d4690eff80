//! Invariant suites over the whole library, each reporting pass or fail per
//! invariant with the first counterexample found.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra_lab::bijection::{
    effective_forward, effective_inverse, first_forward, first_inverse, general_forward,
    general_inverse, last_forward, last_inverse, SplitChain,
};
use crate::algebra_lab::enumerate::{
    count_flags, enumerate_all_subspaces, enumerate_subspaces, gaussian_multinomial,
    gaussian_multinomial_polynomial, left_ideal_chains, multinomial, evaluate,
};
use crate::algebra_lab::ideal::{IdealRep, Side};
use crate::algebra_lab::linalg::{combine, Subspace};
use crate::algebra_lab::quotient::{QuotientAlgebra, QuotientMode};
use crate::algebra_lab::{gaussian_binomial, Budget, FiniteField};
use crate::chowrank::{
    flag_bundle_coefficients, push_through_base, severi_brauer_pipeline,
    twisted_first_index_one, FlagSpec, IndexHypothesis, RankProfile,
};
use crate::error::{Error, Result};
use crate::partitions::{
    count_at_most, count_multi, count_strict, generating_series, multi_distribution_brute_force,
    PartitionConstraint, PartitionCounter,
};

use crate::schur::{enumerate_basis, GradedPolynomial, jacobi_trudi_index, schur_determinant, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Partitions,
    Schur,
    Chow,
    Algebra,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Partitions, Suite::Schur, Suite::Chow, Suite::Algebra];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Partitions => "partitions",
            Suite::Schur => "schur",
            Suite::Chow => "chow",
            Suite::Algebra => "algebra",
        }
    }

    /// Parses a suite name; `all` selects every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }

    fn default_n_max(self) -> u32 {
        match self {
            Suite::Partitions => 20,
            Suite::Schur => 8,
            Suite::Chow => 6,
            Suite::Algebra => 3,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.label() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown suite {s:?}; expected partitions, schur, chow, algebra or all"
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One invariant checked over a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{} ({} cases)", self.suite, self.name, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

/// Accumulates cases for one invariant and keeps the first failure.
#[derive(Debug)]
pub struct Tally {
    suite: Suite,
    name: String,
    cases: u64,
    counterexample: Option<String>,
}

impl Tally {
    pub fn new(suite: Suite, name: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            cases: 0,
            counterexample: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    /// Records an operation that must succeed; an error is a failed case.
    pub fn record_result<T>(&mut self, result: Result<T>, describe: impl FnOnce() -> String) -> Option<T> {
        match result {
            Ok(v) => {
                self.cases += 1;
                Some(v)
            }
            Err(e) => {
                self.record(false, || format!("{}: {e}", describe()));
                None
            }
        }
    }

    pub fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    pub fn finish(self) -> Check {
        Check {
            suite: self.suite,
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Sweep bounds shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest size parameter; each suite has its own default.
    pub n_max: Option<u32>,
    /// Field order for the algebra suite.
    pub q: u32,
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_max: None,
            q: 2,
            budget: Budget::default(),
        }
    }
}

/// Runs the selected suites in order. Fails before doing any work when a
/// suite's sweep would exceed the budget.
pub fn run(suites: &[Suite], config: &VerifyConfig) -> Result<Vec<Check>> {
    let field = FiniteField::new(config.q)?;
    for &suite in suites {
        let n = config.n_max.unwrap_or_else(|| suite.default_n_max());
        config.budget.check(&estimate(suite, n, field))?;
    }
    let mut checks = Vec::new();
    for &suite in suites {
        let n = config.n_max.unwrap_or_else(|| suite.default_n_max());
        checks.extend(match suite {
            Suite::Partitions => partitions_suite(n),
            Suite::Schur => schur_suite(n),
            Suite::Chow => chow_suite(n, config.budget)?,
            Suite::Algebra => algebra_suite(field, n as usize, config.budget)?,
        });
    }
    Ok(checks)
}

/// Rough number of objects a suite enumerates.
fn estimate(suite: Suite, n: u32, field: FiniteField) -> BigUint {
    let n_big = BigUint::from(n);
    match suite {
        Suite::Partitions => &n_big * &n_big * 10u32 + 1u32,
        Suite::Schur | Suite::Chow => BigUint::one() << (n.min(60) as usize + 1),
        Suite::Algebra => {
            let n = n as usize;
            let subspaces: BigUint = (0..=n).map(|d| gaussian_binomial(n, d, field.order())).sum();
            // Chains are bounded by the number of complete flags times 2^n.
            let complete: BigUint = (1..=n).map(|k| gaussian_binomial(k, 1, field.order())).product();
            subspaces * 2u32 + (complete << n)
        }
    }
}

// ---------------------------------------------------------------- partitions

pub fn partitions_suite(n_max: u32) -> Vec<Check> {
    vec![
        check_recurrence(n_max, 10),
        check_sum_of_strict(n_max, 10),
        check_generating_series(6, 6, n_max.min(20)),
        check_convolution(n_max.min(12), 3, 4),
    ]
}

/// `p(n, m, A) = p(n, m-1, A) + p(n-m, m, A-1)` for `1 <= m < n <= n_max`,
/// `1 < A <= a_max`.
pub fn check_recurrence(n_max: u32, a_max: u32) -> Check {
    let mut t = Tally::new(Suite::Partitions, "recurrence");
    let mut counter = PartitionCounter::new();
    for n in 2..=n_max {
        for m in 1..n {
            for a in 2..=a_max {
                let lhs = counter.count_at_most(n, m, a);
                let rhs = counter.count_at_most(n, m - 1, a) + counter.count_at_most(n - m, m, a - 1);
                t.record(lhs == rhs, || format!("p({n},{m},{a}) = {lhs}, recurrence gives {rhs}"));
            }
        }
    }
    t.finish()
}

/// `p(n, m, A) = sum_{k <= m} P(n, k, A)`.
pub fn check_sum_of_strict(n_max: u32, a_max: u32) -> Check {
    let mut t = Tally::new(Suite::Partitions, "at-most-is-sum-of-exactly");
    let mut counter = PartitionCounter::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            for a in 1..=a_max {
                let lhs = counter.count_at_most(n, m, a);
                let rhs: BigUint = (0..=m).map(|k| counter.count_strict(n, k, a)).sum();
                t.record(lhs == rhs, || format!("p({n},{m},{a}) = {lhs}, sum of P gives {rhs}"));
            }
        }
    }
    t.finish()
}

/// Coefficients of the truncated `prod_{i<=A} 1/(1 - x y^i)` against
/// `count_strict`.
pub fn check_generating_series(a_max: u32, m_max: u32, n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Partitions, "generating-series");
    for a in 1..=a_max {
        let series = generating_series(a, m_max as usize, n_max as usize);
        for m in 0..=m_max {
            for n in 0..=n_max {
                let got = series.coefficient(m as usize, n as usize);
                let want = count_strict(n, m, a);
                t.record(got == want, || {
                    format!("A={a}: coefficient of x^{m} y^{n} is {got}, count_strict gives {want}")
                });
            }
        }
    }
    t.finish()
}

/// `count_multi` against the tuple-walking oracle for every block list with
/// at most `r_max` blocks bounded by `bound`, and every weight up to `n_max`.
pub fn check_convolution(n_max: u32, r_max: usize, bound: u32) -> Check {
    let mut t = Tally::new(Suite::Partitions, "convolution");
    let blocks: Vec<PartitionConstraint> = (1..=bound)
        .flat_map(|m| (1..=bound).map(move |a| PartitionConstraint::new(m, a).expect("positive")))
        .collect();
    let mut lists: Vec<Vec<PartitionConstraint>> = vec![Vec::new()];
    for _ in 0..r_max {
        let longer: Vec<Vec<PartitionConstraint>> = lists
            .iter()
            .filter(|l| l.len() == lists.last().map_or(0, Vec::len))
            .flat_map(|l| {
                blocks.iter().map(move |&b| {
                    let mut next = l.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
        lists.extend(longer);
    }
    for list in &lists {
        let brute = multi_distribution_brute_force(list, u64::from(n_max));
        for n in 0..=n_max {
            let got = count_multi(n, list);
            let want = brute.value(n as usize);
            t.record(got == want, || {
                let shown: Vec<String> = list.iter().map(ToString::to_string).collect();
                format!("q({n}, {}) = {got}, brute force gives {want}", shown.join(", "))
            });
        }
    }
    t.finish()
}

// --------------------------------------------------------------------- schur

pub fn schur_suite(n_max: u32) -> Vec<Check> {
    vec![
        check_basis_counts(n_max),
        check_schur_homogeneity(n_max, 5),
        check_schur_against_leibniz(n_max, 4),
        check_schur_padding(4),
    ]
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Box partitions of weight `k` number `p(k, d, n-d)`, `C(n, d)` in total.
pub fn check_basis_counts(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Schur, "basis-counts");
    for n in 1..=n_max {
        for d in 0..=n {
            let Some(basis) = t.record_result(enumerate_basis(n, d), || format!("basis({n},{d})")) else {
                continue;
            };
            for (k, &count) in basis.counts().iter().enumerate() {
                let want = count_at_most(k as u32, d, n - d);
                t.record(BigUint::from(count) == want, || {
                    format!("n={n}, d={d}: {count} partitions of weight {k}, p gives {want}")
                });
            }
            let total = BigUint::from(basis.total());
            let want = binomial(n, d);
            t.record(total == want, || format!("n={n}, d={d}: total {total}, C(n,d) = {want}"));
        }
    }
    t.finish()
}

/// `Δ_λ` is homogeneous of degree `|λ|` for box partitions of width at most
/// `max_width`.
pub fn check_schur_homogeneity(n_max: u32, max_width: u32) -> Check {
    let mut t = Tally::new(Suite::Schur, "homogeneity");
    for n in 1..=n_max {
        for d in 1..=n.min(max_width) {
            let Ok(basis) = enumerate_basis(n, d) else { continue };
            for lambda in basis.iter() {
                let p = schur_determinant(lambda);
                let want = if p.is_zero() { None } else { Some(lambda.weight()) };
                let got = p.homogeneous_degree();
                t.record(got == want && !p.is_zero(), || {
                    format!("Δ_{lambda} = {p} has degree {got:?}, expected {}", lambda.weight())
                });
            }
        }
    }
    t.finish()
}

/// `det` as a signed sum over permutations; independent of the Laplace
/// expansion used by [`schur_determinant`].
pub fn leibniz_determinant(lambda: &Partition) -> GradedPolynomial {
    fn permutations(d: usize) -> Vec<(Vec<usize>, bool)> {
        if d == 0 {
            return vec![(Vec::new(), false)];
        }
        let mut out = Vec::new();
        for (perm, odd) in permutations(d - 1) {
            // Insert d-1 at each position; moving it left past k entries
            // flips the sign k times.
            for pos in 0..=perm.len() {
                let mut p = perm.clone();
                p.insert(pos, d - 1);
                out.push((p, odd ^ ((d - 1 - pos) % 2 == 1)));
            }
        }
        out
    }
    let d = lambda.width();
    let mut acc = GradedPolynomial::zero();
    for (perm, odd) in permutations(d) {
        let term = (0..d).fold(GradedPolynomial::one(), |prod, i| {
            &prod * &GradedPolynomial::chern(jacobi_trudi_index(lambda, i, perm[i]))
        });
        acc = if odd { &acc - &term } else { &acc + &term };
    }
    acc
}

pub fn check_schur_against_leibniz(n_max: u32, max_width: u32) -> Check {
    let mut t = Tally::new(Suite::Schur, "determinant-oracle");
    for n in 1..=n_max {
        for d in 1..=n.min(max_width) {
            let Ok(basis) = enumerate_basis(n, d) else { continue };
            for lambda in basis.iter() {
                let fast = schur_determinant(lambda);
                let slow = leibniz_determinant(lambda);
                t.record(fast == slow, || format!("Δ_{lambda}: {fast} vs {slow}"));
            }
        }
    }
    t.finish()
}

/// Appending zero parts leaves `Δ_λ` unchanged.
pub fn check_schur_padding(max_width: u32) -> Check {
    let mut t = Tally::new(Suite::Schur, "zero-padding");
    for d in 1..=max_width {
        let Ok(basis) = enumerate_basis(d + 3, d) else { continue };
        for lambda in basis.iter() {
            let base = schur_determinant(lambda);
            for extra in 1..=2 {
                let padded = lambda.padded(extra);
                let p = schur_determinant(&padded);
                t.record(p == base, || format!("Δ_{padded} = {p} but Δ_{lambda} = {base}"));
            }
        }
    }
    t.finish()
}

// ---------------------------------------------------------------------- chow

fn all_specs(n: u32) -> Vec<FlagSpec> {
    (1u32..(1 << n))
        .map(|mask| {
            let indices = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            FlagSpec::new(n, indices).expect("nonempty increasing subset")
        })
        .collect()
}

pub fn chow_suite(n_max: u32, budget: Budget) -> Result<Vec<Check>> {
    Ok(vec![
        check_unit_coefficient(n_max),
        check_split_cross(n_max),
        check_pipeline(n_max),
        check_complete_flags(n_max.min(8)),
        check_poincare(n_max),
        check_total_rank_vs_flag_count(n_max.min(4), budget)?,
    ])
}

/// `n_0 = 1` for every coefficient table.
pub fn check_unit_coefficient(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Chow, "n0-is-one");
    for n in 1..=n_max {
        for spec in all_specs(n) {
            let c = flag_bundle_coefficients(&spec);
            t.record(c.n(0).is_one(), || format!("flag bundle {spec}: n_0 = {}", c.n(0)));
            if spec.indices()[0] == 1 {
                if let Some(c) = t.record_result(twisted_first_index_one(&spec), || spec.to_string()) {
                    t.record(c.n(0).is_one(), || format!("first index one {spec}: n_0 = {}", c.n(0)));
                }
            }
        }
    }
    t.finish()
}

/// With `i_1 = 1`, the decomposition over `P^{n-1}` and the flag-bundle
/// decomposition over a point give the same profile.
pub fn check_split_cross(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Chow, "split-cross-check");
    for n in 1..=n_max {
        for spec in all_specs(n).into_iter().filter(|s| s.indices()[0] == 1) {
            let Some(twisted) = t.record_result(twisted_first_index_one(&spec), || spec.to_string()) else {
                continue;
            };
            let over_sb = push_through_base(&twisted, &RankProfile::projective(n - 1));
            let direct = push_through_base(&flag_bundle_coefficients(&spec), &RankProfile::point());
            t.record(over_sb == direct, || format!("{spec}: {over_sb} over P^{} vs {direct}", n - 1));
        }
    }
    t.finish()
}

/// For `i_1 > 1` and split base, the exact-sequence pipeline reproduces the
/// direct profile without negative intermediate ranks.
pub fn check_pipeline(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Chow, "exact-sequence-pipeline");
    for n in 2..=n_max {
        for spec in all_specs(n).into_iter().filter(|s| s.indices()[0] > 1) {
            let result = severi_brauer_pipeline(&spec, &RankProfile::projective(n - 1), IndexHypothesis::Split);
            let Some(pipeline) = t.record_result(result, || spec.to_string()) else {
                continue;
            };
            let direct = push_through_base(&flag_bundle_coefficients(&spec), &RankProfile::point());
            t.record(pipeline.ranks == direct, || {
                format!("{spec}: pipeline {} vs direct {direct}", pipeline.ranks)
            });
        }
    }
    t.finish()
}

/// `prod_{j=1}^{n-1} (1 + t + ... + t^j)` as coefficients.
pub fn staircase_product(n: u32) -> Vec<BigUint> {
    let mut acc = vec![BigUint::one()];
    for j in 1..n as usize {
        let mut next = vec![BigUint::zero(); acc.len() + j];
        for (e, c) in acc.iter().enumerate() {
            for slot in &mut next[e..=e + j] {
                *slot += c;
            }
        }
        acc = next;
    }
    acc
}

/// Complete flags: both decompositions give `prod (1 + ... + t^j)`, total `n!`.
pub fn check_complete_flags(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Chow, "complete-flags");
    for n in 1..=n_max {
        let spec = FlagSpec::new(n, (1..=n).collect()).expect("complete flag");
        let want = staircase_product(n);
        let factorial: BigUint = (1..=n).map(BigUint::from).product();
        let bundle = flag_bundle_coefficients(&spec);
        let got: Vec<BigUint> = (0..want.len()).map(|i| bundle.n(i)).collect();
        t.record(got == want && bundle.total() == factorial, || {
            format!("n={n}: coefficients {got:?}, expected {want:?}")
        });
        if let Some(tw) = t.record_result(twisted_first_index_one(&spec), || spec.to_string()) {
            let total = push_through_base(&tw, &RankProfile::projective(n - 1)).total();
            t.record(total == factorial, || format!("n={n}: total over P^(n-1) is {total}"));
        }
    }
    t.finish()
}

/// Split profiles are palindromic.
pub fn check_poincare(n_max: u32) -> Check {
    let mut t = Tally::new(Suite::Chow, "poincare-symmetry");
    for n in 1..=n_max {
        for spec in all_specs(n) {
            let p = push_through_base(&flag_bundle_coefficients(&spec), &RankProfile::point());
            t.record(p.is_palindromic() && p.dimension() as u64 == spec.dimension(), || {
                format!("{spec}: profile {p} is not palindromic of length {}", spec.dimension() + 1)
            });
        }
    }
    t.finish()
}

/// Total split rank equals the multinomial coefficient, the `q = 1` value
/// of the flag-count polynomial, and matches a direct count over `F_2`.
pub fn check_total_rank_vs_flag_count(n_max: u32, budget: Budget) -> Result<Check> {
    let mut t = Tally::new(Suite::Chow, "total-rank-vs-flag-count");
    for n in 1..=n_max {
        for spec in all_specs(n) {
            let idx: Vec<usize> = spec.indices().iter().map(|&i| i as usize).collect();
            let total = push_through_base(&flag_bundle_coefficients(&spec), &RankProfile::point()).total();
            let multi = multinomial(n as usize, &idx)?;
            let poly = gaussian_multinomial_polynomial(n as usize, &idx)?;
            let at_one = evaluate(&poly, 1);
            let count = count_flags(n as usize, &idx, 2, budget)?;
            let at_two = evaluate(&poly, 2);
            t.record(total == multi && multi == at_one && count == at_two, || {
                format!("{spec}: rank total {total}, multinomial {multi}, polynomial at 1 {at_one}, F_2 flags {count} vs {at_two}")
            });
        }
    }
    Ok(t.finish())
}

// ------------------------------------------------------------------- algebra

pub fn algebra_suite(field: FiniteField, n_max: usize, budget: Budget) -> Result<Vec<Check>> {
    let names = [
        "ideal-subspace-correspondence",
        "ideal-surjectivity",
        "double-annihilator",
        "dimension-lemma",
        "quotient-variance",
        "bijection-effective",
        "bijection-first",
        "bijection-last",
        "bijection-general",
        "quotient-tables",
        "canonical-end-maps",
        "flag-count",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(Suite::Algebra, *n)).collect();
    for n in 1..=n_max {
        let [corr, surj, perp, dims, variance, eff, first, last, general, tables, ends, flags] =
            &mut tallies[..]
        else {
            unreachable!("twelve tallies")
        };
        ideal_correspondence(corr, field, n, budget)?;
        if n <= 2 {
            ideal_surjectivity(surj, field, n, budget)?;
        }
        double_annihilator(perp, field, n, budget)?;
        dimension_lemma(dims, field, n, budget)?;
        quotient_variance(variance, field, n, budget)?;
        bijection_effective(eff, field, n, budget)?;
        bijection_first(first, field, n, budget)?;
        bijection_last(last, field, n, budget)?;
        bijection_general(general, field, n, budget)?;
        if n <= 3 {
            quotient_tables(tables, ends, field, n, budget)?;
        }
        flag_count(flags, field, n, budget)?;
    }
    Ok(tallies.into_iter().map(Tally::finish).collect())
}

fn left_ideals(field: FiniteField, n: usize, budget: Budget) -> Result<Vec<IdealRep>> {
    Ok(enumerate_all_subspaces(field, n, budget)?
        .iter()
        .map(|v| IdealRep::from_subspace(v, Side::Left))
        .collect())
}

/// Ideals from subspaces are closed, have the predicted dimension, recover
/// their subspace, and are pairwise distinct.
pub fn ideal_correspondence(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let subspaces = enumerate_all_subspaces(field, n, budget)?;
    for side in [Side::Left, Side::Right] {
        let mut seen = std::collections::HashSet::new();
        for v in &subspaces {
            let ideal = IdealRep::from_subspace(v, side);
            let want_dim = match side {
                Side::Left => n * (n - v.dim()),
                Side::Right => n * v.dim(),
            };
            let closed = IdealRep::new(side, n, ideal.space().clone()).is_ok();
            let back = ideal.subspace();
            t.record(closed && ideal.dim() == want_dim && &back == v, || {
                format!("{side} ideal of {v:?}: closed {closed}, dim {} (want {want_dim}), recovers {back:?}", ideal.dim())
            });
            t.record(seen.insert(ideal.space().clone()), || format!("{side} ideal of {v:?} repeats"));
        }
    }
    Ok(())
}

/// Every left ideal of `M_n` arises from a subspace: the closed subspaces of
/// `F_q^{n^2}` are counted directly.
pub fn ideal_surjectivity(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let expected: usize = enumerate_all_subspaces(field, n, budget)?.len();
    let mut found = 0;
    for i in 0..=n {
        for space in enumerate_subspaces(field, n * n, n * i, budget)? {
            if IdealRep::new(Side::Left, n, space).is_ok() {
                found += 1;
            }
        }
    }
    t.record(found == expected, || {
        format!("M_{n}(F_{}): {found} closed left ideals, {expected} subspaces", field.order())
    });
    Ok(())
}

/// `°(I°) = I` for left ideals and `(°I)° = I` for right ideals.
pub fn double_annihilator(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    for v in enumerate_all_subspaces(field, n, budget)? {
        for side in [Side::Left, Side::Right] {
            let ideal = IdealRep::from_subspace(&v, side);
            let ann = ideal.annihilator();
            let back = ann.annihilator();
            t.record(ann.side() == side.opposite() && back == ideal, || {
                format!("{side} ideal of {v:?}: double annihilator differs")
            });
        }
    }
    Ok(())
}

/// `dim I° = n^2 - n i` and `I°J = I° ∩ J` of dimension `(n - i) j`.
pub fn dimension_lemma(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let ideals = left_ideals(field, n, budget)?;
    let annihilators: Vec<IdealRep> = ideals.iter().map(IdealRep::annihilator).collect();
    for (ideal, ann) in ideals.iter().zip(&annihilators) {
        let i = ideal.dim() / n;
        t.record(ann.dim() == n * n - n * i, || {
            format!("dim of annihilator of {:?} is {}, want {}", ideal.subspace(), ann.dim(), n * n - n * i)
        });
        for other in &ideals {
            let j = other.dim() / n;
            let product = ann.product(other);
            let meet = ann.intersection(other);
            t.record(product == meet && product.dim() == (n - i) * j, || {
                format!(
                    "I from {:?}, J from {:?}: dim I°J = {}, dim I°∩J = {}, want {}",
                    ideal.subspace(),
                    other.subspace(),
                    product.dim(),
                    meet.dim(),
                    (n - i) * j
                )
            });
        }
    }
    Ok(())
}

/// For left ideals `I ⊆ J` with subspaces `V ⊇ W`, the image of `I°J` in
/// `I°/I°I ≅ End(V)` is the set of endomorphisms of `V` vanishing on `W`,
/// so `I°J/I°I ≅ Hom(V/W, V)`.
pub fn quotient_variance(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let ideals = left_ideals(field, n, budget)?;
    for small in &ideals {
        let v = small.subspace();
        let i = small.dim() / n;
        for big in ideals.iter() {
            let w = big.subspace();
            t.record(big.contains(small) == v.contains_subspace(&w), || {
                format!("containment of ideals and of {v:?} ⊇ {w:?} disagree")
            });
            if !big.contains(small) {
                continue;
            }
            let j = big.dim() / n;
            let ann = small.annihilator();
            let excess = ann.product(big).dim() - ann.product(small).dim();
            t.record(excess == (n - i) * (j - i), || {
                format!("dim I°J/I°I = {excess}, want {}", (n - i) * (j - i))
            });
            let image = t.record_result(first_forward(small, std::slice::from_ref(big)), || {
                format!("projecting I°J for {v:?} ⊇ {w:?}")
            });
            if let Some(image) = image {
                let w_in_v: Vec<Vec<u8>> = w
                    .basis()
                    .iter()
                    .map(|x| v.coordinates(x).expect("W inside V"))
                    .collect();
                let want = Subspace::span(field, v.dim(), w_in_v);
                let got = image[0].subspace();
                t.record(got == want, || format!("image kernel {got:?}, want W = {want:?} in V"));
            }
        }
    }
    Ok(())
}

/// `J ↦ J°I` and `W ↦ °(WA)` are mutually inverse for every `I` of reduced
/// dimension 1, every `J ⊇ I` and every `W ⊆ I°I`.
pub fn bijection_effective(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let ideals = left_ideals(field, n, budget)?;
    for i in ideals.iter().filter(|i| i.dim() == n) {
        for j in ideals.iter().filter(|j| j.contains(i)) {
            let jd = j.dim() / n;
            let Some(w) = t.record_result(effective_forward(i, j), || "effective forward".into()) else {
                continue;
            };
            t.record(w.dim() == n - jd, || format!("dim W = {}, want {}", w.dim(), n - jd));
            if let Some(back) = t.record_result(effective_inverse(i, &w), || "effective inverse".into()) {
                t.record(&back == j, || format!("°(WA) for J from {:?} differs", j.subspace()));
            }
        }
        let target = i.annihilator().product(i);
        for d in 0..=target.dim() {
            for local in enumerate_subspaces(field, target.dim(), d, budget)? {
                let vectors = local
                    .basis()
                    .iter()
                    .map(|c| combine(field, c, target.basis(), n * n))
                    .collect();
                let w = Subspace::span(field, n * n, vectors);
                let Some(j) = t.record_result(effective_inverse(i, &w), || "effective inverse".into()) else {
                    continue;
                };
                if let Some(again) = t.record_result(effective_forward(i, &j), || "effective forward".into()) {
                    t.record(again == w, || format!("J°I for W = {w:?} differs"));
                }
            }
        }
    }
    Ok(())
}

fn reduced(ideal: &IdealRep) -> usize {
    ideal.reduced_dim().unwrap_or(usize::MAX)
}

/// Forward then inverse on every chain `I_1 ⊆ ... ⊆ I_r` of `M_n`, and
/// inverse then forward on every chain in `I_1°/I_1°I_1`.
pub fn bijection_first(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    for chain in left_ideal_chains(field, n, 1..=n, budget)? {
        let Some((head, tail)) = chain.split_first() else { continue };
        let Some(images) = t.record_result(first_forward(head, tail), || "first forward".into()) else {
            continue;
        };
        let i1 = reduced(head);
        let dims_ok = images
            .iter()
            .zip(tail)
            .all(|(img, ideal)| img.dim() == (n - i1) * (reduced(ideal) - i1));
        t.record(dims_ok, || "image dimensions differ from (n - i_1)(i_j - i_1)".into());
        if let Some(back) = t.record_result(first_inverse(head, &images), || "first inverse".into()) {
            t.record(back == tail, || "first: inverse of forward is not the identity".into());
        }
    }
    for head in left_ideals(field, n, budget)? {
        let d = n - reduced(&head);
        for images in left_ideal_chains(field, d, 1..=d, budget)? {
            let Some(chain) = t.record_result(first_inverse(&head, &images), || "first inverse".into()) else {
                continue;
            };
            if let Some(again) = t.record_result(first_forward(&head, &chain), || "first forward".into()) {
                t.record(again == images, || "first: forward of inverse is not the identity".into());
            }
        }
    }
    Ok(())
}

/// Forward then inverse on every chain of `M_n`, and inverse then forward on
/// every chain in `I_r/I_r°I_r`.
pub fn bijection_last(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    for chain in left_ideal_chains(field, n, 1..=n, budget)? {
        let Some((tail, head)) = chain.split_last() else { continue };
        let Some(images) = t.record_result(last_forward(tail, head), || "last forward".into()) else {
            continue;
        };
        let ir = reduced(tail);
        let dims_ok = images
            .iter()
            .zip(head)
            .all(|(img, ideal)| img.dim() == ir * reduced(ideal));
        t.record(dims_ok, || "image dimensions differ from i_j i_r".into());
        if let Some(back) = t.record_result(last_inverse(tail, &images), || "last inverse".into()) {
            t.record(back == head, || "last: inverse of forward is not the identity".into());
        }
    }
    for top in left_ideals(field, n, budget)? {
        let d = reduced(&top);
        if d == 0 {
            continue;
        }
        for images in left_ideal_chains(field, d, 1..=d - 1, budget)? {
            let Some(chain) = t.record_result(last_inverse(&top, &images), || "last inverse".into()) else {
                continue;
            };
            if let Some(again) = t.record_result(last_forward(&top, &chain), || "last forward".into()) {
                t.record(again == images, || "last: forward of inverse is not the identity".into());
            }
        }
    }
    Ok(())
}

/// Both round trips of the split at every position `s`.
pub fn bijection_general(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    for chain in left_ideal_chains(field, n, 1..=n, budget)? {
        for s in 1..=chain.len() {
            let Some(split) = t.record_result(general_forward(&chain, s), || format!("general forward s={s}")) else {
                continue;
            };
            if let Some(back) = t.record_result(general_inverse(&chain[s - 1], &split), || "general inverse".into()) {
                t.record(back == chain, || format!("general s={s}: inverse of forward differs"));
            }
        }
    }
    for pivot in left_ideals(field, n, budget)? {
        let i = reduced(&pivot);
        let below_all = if i == 0 { vec![Vec::new()] } else { left_ideal_chains(field, i, 1..=i - 1, budget)? };
        let above_all = left_ideal_chains(field, n - i, 1..=n - i, budget)?;
        for below in &below_all {
            for above in &above_all {
                let split = SplitChain {
                    below: below.clone(),
                    above: above.clone(),
                };
                let Some(chain) = t.record_result(general_inverse(&pivot, &split), || "general inverse".into()) else {
                    continue;
                };
                let s = below.len() + 1;
                if let Some(again) = t.record_result(general_forward(&chain, s), || "general forward".into()) {
                    t.record(again == split, || format!("general s={s}: forward of inverse differs"));
                }
            }
        }
    }
    Ok(())
}

/// Full multiplication tables of both quotients and the canonical maps to
/// module endomorphisms, for every left ideal with `0 < i < n`.
pub fn quotient_tables(tables: &mut Tally, ends: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    for ideal in left_ideals(field, n, budget)? {
        let i = reduced(&ideal);
        if i == 0 || i == n {
            continue;
        }
        for mode in [QuotientMode::AnnihilatorSide, QuotientMode::IdealSide] {
            let want_degree = match mode {
                QuotientMode::AnnihilatorSide => n - i,
                QuotientMode::IdealSide => i,
            };
            let Some(q) = tables.record_result(QuotientAlgebra::new(&ideal, mode), || mode.to_string()) else {
                continue;
            };
            let table = q.verify_multiplication_table();
            tables.record(q.degree() == want_degree && table.passed(), || {
                format!(
                    "{mode} quotient of ideal from {:?}: degree {} (want {want_degree}), {:?}",
                    ideal.subspace(),
                    q.degree(),
                    table.failures.first()
                )
            });
            let end = q.canonical_end_check();
            let orientation = match mode {
                QuotientMode::AnnihilatorSide => end.homomorphism,
                QuotientMode::IdealSide => end.anti_homomorphism,
            };
            ends.record(end.bijective() && orientation && end.end_dimension == want_degree * want_degree, || {
                format!("{mode} canonical map of ideal from {:?}: {end:?}", ideal.subspace())
            });
        }
    }
    Ok(())
}

/// Direct flag counts against the Gaussian multinomial, for every index set.
pub fn flag_count(t: &mut Tally, field: FiniteField, n: usize, budget: Budget) -> Result<()> {
    let q = field.order();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let direct = count_flags(n, &idx, q, budget)?;
        let formula = gaussian_multinomial(n, &idx, q)?;
        let poly = evaluate(&gaussian_multinomial_polynomial(n, &idx)?, q);
        t.record(direct == formula && formula == poly, || {
            format!("n={n}, indices {idx:?}, q={q}: enumerated {direct}, product formula {formula}, polynomial {poly}")
        });
    }
    Ok(())
}

//! Exhaustive enumeration of subspaces and flags of `F_q^n` under a budget,
//! and the Gaussian-binomial formulas that count them.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::field::FiniteField;
use super::ideal::{IdealRep, Side};
use super::linalg::{combine, Subspace};
use crate::error::{Error, Result};

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "TWISTFLAG_ENUM_BUDGET";

/// Hard cap on the number of objects a single enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
}

impl Budget {
    pub const DEFAULT: u64 = 1_000_000;

    pub fn new(limit: u64) -> Self {
        Self { limit }
    }

    /// The budget from the environment, or the default when unset. A value
    /// that is not a nonnegative integer is an error.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw.trim().parse().map(Self::new).map_err(|_| {
                Error::InvalidArgument(format!("{BUDGET_ENV}={raw:?} is not a nonnegative integer"))
            }),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Fails when `requested` objects would exceed the budget.
    pub fn check(&self, requested: &BigUint) -> Result<()> {
        if *requested > BigUint::from(self.limit) {
            return Err(Error::BudgetExceeded {
                requested: requested.to_u128().unwrap_or(u128::MAX),
                budget: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Self::DEFAULT)
    }
}

/// `[n choose d]_q` from the product formula `prod (q^{n-k} - 1)/(q^{k+1} - 1)`.
pub fn gaussian_binomial(n: usize, d: usize, q: u32) -> BigUint {
    if d > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..d {
        num *= q.pow((n - k) as u32) - 1u32;
        den *= q.pow((k + 1) as u32) - 1u32;
    }
    num / den
}

/// Coefficients in `q` of `[n choose d]_q`, from the recurrence
/// `[n, d] = [n-1, d-1] + q^d [n-1, d]`.
pub fn gaussian_binomial_polynomial(n: usize, d: usize) -> Vec<BigUint> {
    if d > n {
        return vec![BigUint::zero()];
    }
    // row[k] holds [m choose k] for the current m.
    let mut row: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut poly = vec![BigUint::zero(); k * (m - k) + 1];
            if k >= 1 {
                for (e, c) in row[k - 1].iter().enumerate() {
                    poly[e] += c;
                }
            }
            if k < m {
                for (e, c) in row[k].iter().enumerate() {
                    poly[e + k] += c;
                }
            }
            next.push(poly);
        }
        row = next;
    }
    row.swap_remove(d)
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn check_indices(n: usize, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::InvalidFlagSpec("index list is empty".into()));
    }
    let mut prev = 0;
    for &i in indices {
        if i <= prev || i > n {
            return Err(Error::InvalidFlagSpec(format!(
                "indices {indices:?} must be strictly increasing within 1..={n}"
            )));
        }
        prev = i;
    }
    Ok(())
}

/// Coefficients in `q` of `prod_j [i_{j+1} choose i_j]_q` with `i_{r+1} = n`.
pub fn gaussian_multinomial_polynomial(n: usize, indices: &[usize]) -> Result<Vec<BigUint>> {
    check_indices(n, indices)?;
    let mut acc = vec![BigUint::one()];
    let tops = indices.iter().skip(1).copied().chain(std::iter::once(n));
    for (&lower, upper) in indices.iter().zip(tops) {
        acc = poly_mul(&acc, &gaussian_binomial_polynomial(upper, lower));
    }
    Ok(acc)
}

/// `prod_j [i_{j+1} choose i_j]_q` with `i_{r+1} = n`.
pub fn gaussian_multinomial(n: usize, indices: &[usize], q: u32) -> Result<BigUint> {
    check_indices(n, indices)?;
    let tops = indices.iter().skip(1).copied().chain(std::iter::once(n));
    Ok(indices
        .iter()
        .zip(tops)
        .map(|(&lower, upper)| gaussian_binomial(upper, lower, q))
        .product())
}

/// `n! / (i_1! (i_2 - i_1)! ... (n - i_r)!)`.
pub fn multinomial(n: usize, indices: &[usize]) -> Result<BigUint> {
    check_indices(n, indices)?;
    let factorial = |k: usize| -> BigUint { (1..=k).map(BigUint::from).product() };
    let mut out = factorial(n);
    let mut prev = 0;
    for &i in indices.iter().chain(std::iter::once(&n)) {
        out /= factorial(i - prev);
        prev = i;
    }
    Ok(out)
}

fn subspaces_unchecked(field: FiniteField, n: usize, d: usize) -> Vec<Subspace> {
    let q = field.order() as u8;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(d);
    pivot_sets(n, d, 0, &mut pivots, &mut |pivots| {
        // Free entries: row r, column c > pivots[r], c not a pivot.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                ((p + 1)..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut values = vec![0u8; slots.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; d];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &v) in slots.iter().zip(&values) {
                rows[r][c] = v;
            }
            out.push(Subspace::span(field, n, rows));
            // Odometer increment, last slot fastest.
            let mut k = slots.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                values[k] += 1;
                if values[k] < q {
                    break;
                }
                values[k] = 0;
            }
        }
    });
    out
}

fn pivot_sets(n: usize, d: usize, start: usize, acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if acc.len() == d {
        visit(acc);
        return;
    }
    for c in start..n {
        if n - c < d - acc.len() {
            break;
        }
        acc.push(c);
        pivot_sets(n, d, c + 1, acc, visit);
        acc.pop();
    }
}

/// All `d`-dimensional subspaces of `F_q^n`, each once, ordered by pivot
/// columns and then by the free echelon entries.
pub fn enumerate_subspaces(field: FiniteField, n: usize, d: usize, budget: Budget) -> Result<Vec<Subspace>> {
    if d > n {
        return Err(Error::InvalidArgument(format!("subspace dimension {d} exceeds ambient {n}")));
    }
    budget.check(&gaussian_binomial(n, d, field.order()))?;
    Ok(subspaces_unchecked(field, n, d))
}

/// All subspaces of `F_q^n`, grouped by increasing dimension.
pub fn enumerate_all_subspaces(field: FiniteField, n: usize, budget: Budget) -> Result<Vec<Subspace>> {
    let total: BigUint = (0..=n).map(|d| gaussian_binomial(n, d, field.order())).sum();
    budget.check(&total)?;
    Ok((0..=n).flat_map(|d| subspaces_unchecked(field, n, d)).collect())
}

/// All flags `V_1 ⊂ V_2 ⊂ ... ⊂ V_r` in `F_q^n` with `dim V_j = dims[j]`,
/// for strictly increasing `dims` in `0..=n`.
pub fn enumerate_flags(field: FiniteField, n: usize, dims: &[usize], budget: Budget) -> Result<Vec<Vec<Subspace>>> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) || dims[dims.len() - 1] > n {
        return Err(Error::InvalidArgument(format!(
            "flag dimensions {dims:?} must be nonempty and strictly increasing within 0..={n}"
        )));
    }
    let tops = dims.iter().skip(1).copied().chain(std::iter::once(n));
    let expected: BigUint = dims
        .iter()
        .zip(tops)
        .map(|(&lower, upper)| gaussian_binomial(upper, lower, field.order()))
        .product();
    budget.check(&expected)?;
    // Build from the top: choose V_r in F_q^n, then V_{r-1} inside V_r, ...
    let mut flags: Vec<Vec<Subspace>> = subspaces_unchecked(field, n, dims[dims.len() - 1])
        .into_iter()
        .map(|v| vec![v])
        .collect();
    for k in (0..dims.len() - 1).rev() {
        let top_dim = dims[k + 1];
        let local = subspaces_unchecked(field, top_dim, dims[k]);
        flags = flags
            .into_iter()
            .flat_map(|flag| {
                let top = flag[0].clone();
                local.iter().map(move |w| {
                    let vectors = w
                        .basis()
                        .iter()
                        .map(|c| combine(field, c, top.basis(), n))
                        .collect();
                    let mut next = Vec::with_capacity(flag.len() + 1);
                    next.push(Subspace::span(field, n, vectors));
                    next.extend(flag.iter().cloned());
                    next
                })
            })
            .collect();
    }
    Ok(flags)
}

/// Every chain `I_1 ⊆ ... ⊆ I_t` of left ideals of `M_n(F_q)` whose reduced
/// dimensions form a strictly increasing sequence drawn from `reduced`,
/// including the empty chain. Chains are grouped by their sequence of reduced
/// dimensions, in lexicographic order of the sequences.
pub fn left_ideal_chains(
    field: FiniteField,
    n: usize,
    reduced: std::ops::RangeInclusive<usize>,
    budget: Budget,
) -> Result<Vec<Vec<IdealRep>>> {
    let choices: Vec<usize> = reduced.filter(|&i| i <= n).collect();
    let mut types: Vec<Vec<usize>> = (0u32..(1 << choices.len()))
        .map(|mask| {
            choices
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i)
                .collect()
        })
        .collect();
    types.sort();
    let mut spent = BigUint::zero();
    let mut out = Vec::new();
    for t in types {
        if t.is_empty() {
            out.push(Vec::new());
            continue;
        }
        // Reduced dimension i corresponds to a subspace of dimension n - i.
        let dims: Vec<usize> = t.iter().rev().map(|&i| n - i).collect();
        let remaining = Budget::new(budget.limit().saturating_sub(spent.to_u64().unwrap_or(u64::MAX)));
        let flags = enumerate_flags(field, n, &dims, remaining)?;
        spent += flags.len();
        out.extend(flags.into_iter().map(|flag| {
            flag.iter()
                .rev()
                .map(|v| IdealRep::from_subspace(v, Side::Left))
                .collect()
        }));
    }
    Ok(out)
}

/// Number of flags of the given type, by direct enumeration.
pub fn count_flags(n: usize, indices: &[usize], q: u32, budget: Budget) -> Result<BigUint> {
    let field = FiniteField::new(q)?;
    Ok(BigUint::from(enumerate_flags(field, n, indices, budget)?.len()))
}

/// Value at `x` of a polynomial with natural-number coefficients.
pub fn evaluate(poly: &[BigUint], x: u32) -> BigUint {
    poly.iter()
        .rev()
        .fold(BigUint::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn f(q: u32) -> FiniteField {
        FiniteField::new(q).unwrap()
    }

    #[test]
    fn small_gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(3, 1, 2), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(3, 2, 2), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(4, 2, 3), BigUint::from(130u32));
        assert_eq!(gaussian_binomial(5, 0, 5), BigUint::one());
        let poly = gaussian_binomial_polynomial(4, 2);
        let expected: Vec<BigUint> = [1u32, 1, 2, 1, 1].into_iter().map(BigUint::from).collect();
        assert_eq!(poly, expected);
        for q in [2, 3, 5] {
            assert_eq!(evaluate(&poly, q), gaussian_binomial(4, 2, q));
        }
    }

    #[test]
    fn enumeration_matches_counts() {
        for q in [2, 3] {
            for n in 0..=4 {
                for d in 0..=n {
                    let subs = enumerate_subspaces(f(q), n, d, Budget::default()).unwrap();
                    assert_eq!(BigUint::from(subs.len()), gaussian_binomial(n, d, q));
                    assert!(subs.iter().all(|s| s.dim() == d));
                    let distinct: HashSet<_> = subs.iter().collect();
                    assert_eq!(distinct.len(), subs.len());
                }
            }
        }
        let zero = enumerate_subspaces(f(2), 3, 0, Budget::default()).unwrap();
        assert_eq!(zero, vec![Subspace::zero(f(2), 3)]);
    }

    #[test]
    fn flag_examples() {
        let b = Budget::default();
        assert_eq!(count_flags(2, &[1], 2, b).unwrap(), BigUint::from(3u32));
        assert_eq!(count_flags(3, &[1, 2], 2, b).unwrap(), BigUint::from(21u32));
        assert_eq!(count_flags(4, &[4], 3, b).unwrap(), BigUint::one());
        for flag in enumerate_flags(f(3), 3, &[1, 2], b).unwrap() {
            assert!(flag[1].contains_subspace(&flag[0]));
            assert_eq!((flag[0].dim(), flag[1].dim()), (1, 2));
        }
    }

    #[test]
    fn multinomial_is_the_value_at_one() {
        let poly = gaussian_multinomial_polynomial(4, &[1, 2, 3]).unwrap();
        assert_eq!(evaluate(&poly, 1), BigUint::from(24u32));
        assert_eq!(multinomial(4, &[1, 2, 3]).unwrap(), BigUint::from(24u32));
        assert_eq!(multinomial(5, &[2]).unwrap(), BigUint::from(10u32));
        assert!(multinomial(3, &[2, 1]).is_err());
    }

    #[test]
    fn ideal_chains_by_type() {
        let chains = left_ideal_chains(f(2), 2, 1..=2, Budget::default()).unwrap();
        // empty, (1) x 3, (1,2) x 3, (2) x 1
        assert_eq!(chains.len(), 8);
        assert!(chains[0].is_empty());
        for chain in &chains {
            for pair in chain.windows(2) {
                assert!(pair[1].contains(&pair[0]));
            }
        }
        assert!(left_ideal_chains(f(2), 4, 1..=4, Budget::new(5)).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_subspaces(f(2), 4, 2, Budget::new(10)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { requested: 35, budget: 10 });
        assert!(count_flags(3, &[1, 2], 2, Budget::new(0)).is_err());
    }
}

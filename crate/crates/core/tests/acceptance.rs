//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//! Exits nonzero if any criterion fails or runs over time.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;

use twistflag::algebra_lab::{Budget, FiniteField};
use twistflag::chowrank::{flag_bundle_coefficients, push_through_base, twisted_first_index_one, FlagSpec, RankProfile};
use twistflag::partitions::{
    count_at_most, count_multi, count_strict, generating_series, multi_distribution_brute_force,
    PartitionConstraint, PartitionCounter,
};
use twistflag::schur::enumerate_basis;
use twistflag::verify::{self, Suite, Tally};

struct Outcome {
    cases: u64,
    failure: Option<String>,
}

impl From<Tally> for Outcome {
    fn from(t: Tally) -> Self {
        let check = t.finish();
        Outcome {
            cases: check.cases,
            failure: check.counterexample,
        }
    }
}

fn run(label: &str, limit_secs: u64, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let in_time = elapsed < limit;
    let passed = outcome.failure.is_none() && in_time;
    let mut line = format!(
        "{} {label}: {} cases in {:.2}s (limit {limit_secs}s)",
        if passed { "PASS" } else { "FAIL" },
        outcome.cases,
        elapsed.as_secs_f64()
    );
    if let Some(f) = &outcome.failure {
        line.push_str(&format!("; counterexample: {f}"));
    }
    if !in_time {
        line.push_str("; over time");
    }
    println!("{line}");
    passed
}

fn tally(name: &str) -> Tally {
    Tally::new(Suite::Partitions, name)
}

fn partition_recurrence() -> Outcome {
    let mut t = tally("recurrence");
    let mut counter = PartitionCounter::new();
    for n in 2..=30u32 {
        for m in 1..n {
            for a in 2..=10u32 {
                let lhs = counter.count_at_most(n, m, a);
                let rhs = count_at_most(n, m - 1, a) + count_at_most(n - m, m, a - 1);
                t.record(lhs == rhs, || format!("p({n},{m},{a}): {lhs} vs {rhs}"));
            }
        }
    }
    t.into()
}

fn generating_function() -> Outcome {
    let mut t = tally("series");
    for a in 1..=6u32 {
        let series = generating_series(a, 6, 20);
        for m in 0..=6u32 {
            for n in 0..=20u32 {
                let got = series.coefficient(m as usize, n as usize);
                let want = count_strict(n, m, a);
                t.record(got == want, || format!("A={a}, x^{m} y^{n}: {got} vs {want}"));
            }
        }
    }
    t.into()
}

fn convolution_theorem() -> Outcome {
    let mut t = tally("convolution");
    let blocks: Vec<PartitionConstraint> = (1..=4)
        .flat_map(|m| (1..=4).map(move |a| PartitionConstraint::new(m, a).unwrap()))
        .collect();
    let mut lists: Vec<Vec<PartitionConstraint>> = blocks.iter().map(|&b| vec![b]).collect();
    let mut frontier = lists.clone();
    for _ in 1..3 {
        frontier = frontier
            .iter()
            .flat_map(|l| {
                blocks.iter().map(move |&b| {
                    let mut next = l.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
        lists.extend(frontier.iter().cloned());
    }
    for list in &lists {
        let brute = multi_distribution_brute_force(list, 12);
        for n in 0..=12u32 {
            let got = count_multi(n, list);
            let want = brute.value(n as usize);
            t.record(got == want, || format!("n={n}, {} blocks: {got} vs {want}", list.len()));
        }
    }
    t.into()
}

fn grassmannian_basis() -> Outcome {
    let mut t = tally("basis");
    for n in 1..=10u32 {
        for d in 0..=n {
            let basis = enumerate_basis(n, d).unwrap();
            let counts = basis.counts();
            for k in 0..=(d * (n - d)) {
                let got = BigUint::from(counts.get(k as usize).copied().unwrap_or(0));
                let want = count_at_most(k, d, n - d);
                t.record(got == want, || format!("n={n}, d={d}, k={k}: {got} vs {want}"));
            }
            let binom: BigUint = (0..d).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1));
            let total = BigUint::from(basis.total());
            t.record(total == binom, || format!("n={n}, d={d}: total {total} vs {binom}"));
        }
    }
    t.into()
}

/// Number of `(x_1, ..., x_{n-1})` with `0 <= x_j <= j` and sum `i`.
fn staircase_solutions(n: u32) -> Vec<BigUint> {
    fn walk(j: u32, last: u32, sum: usize, out: &mut Vec<u64>) {
        if j > last {
            out[sum] += 1;
            return;
        }
        for x in 0..=j {
            walk(j + 1, last, sum + x as usize, out);
        }
    }
    let top = (n * n.saturating_sub(1) / 2) as usize;
    let mut out = vec![0u64; top + 1];
    walk(1, n.saturating_sub(1), 0, &mut out);
    out.into_iter().map(BigUint::from).collect()
}

fn complete_flags() -> Outcome {
    let mut t = tally("complete-flags");
    for n in 1..=8u32 {
        let product = verify::staircase_product(n);
        let solutions = staircase_solutions(n);
        let factorial: BigUint = (1..=n).map(BigUint::from).product();
        let blocks: Vec<PartitionConstraint> = (1..n)
            .rev()
            .map(|a| PartitionConstraint::new(1, a).unwrap())
            .collect();
        let spec = FlagSpec::new(n, (1..=n).collect()).unwrap();
        let bundle = flag_bundle_coefficients(&spec);
        for (i, want) in product.iter().enumerate() {
            let literal = count_multi(i as u32, &blocks);
            t.record(&literal == want && &solutions[i] == want && &bundle.n(i) == want, || {
                format!("n={n}, i={i}: q = {literal}, solutions {}, bundle {}, product {want}", solutions[i], bundle.n(i))
            });
        }
        let sum: BigUint = product.iter().sum();
        t.record(sum == factorial && bundle.total() == factorial, || format!("n={n}: total {sum}"));
        let twisted = twisted_first_index_one(&spec).unwrap();
        let total = push_through_base(&twisted, &RankProfile::projective(n - 1)).total();
        t.record(total == factorial, || format!("n={n}: total over P^(n-1) is {total}"));
    }
    t.into()
}

fn from_check(check: verify::Check) -> Outcome {
    Outcome {
        cases: check.cases,
        failure: check.counterexample,
    }
}

fn algebra<F>(pairs: &[(u32, usize)], f: F) -> Outcome
where
    F: Fn(&mut Tally, FiniteField, usize, Budget) -> twistflag::Result<()>,
{
    let mut t = Tally::new(Suite::Algebra, "algebra");
    for &(q, n_max) in pairs {
        let field = FiniteField::new(q).unwrap();
        for n in 1..=n_max {
            if let Err(e) = f(&mut t, field, n, Budget::default()) {
                t.record(false, || format!("q={q}, n={n}: {e}"));
            }
        }
    }
    t.into()
}

fn bijections() -> Outcome {
    algebra(&[(2, 4), (3, 3)], |t, field, n, budget| {
        verify::ideal_correspondence(t, field, n, budget)?;
        verify::double_annihilator(t, field, n, budget)?;
        verify::dimension_lemma(t, field, n, budget)?;
        verify::quotient_variance(t, field, n, budget)?;
        verify::bijection_effective(t, field, n, budget)?;
        verify::bijection_first(t, field, n, budget)?;
        verify::bijection_last(t, field, n, budget)?;
        verify::bijection_general(t, field, n, budget)?;
        if n <= 2 {
            verify::ideal_surjectivity(t, field, n, budget)?;
        }
        Ok(())
    })
}

fn quotients() -> Outcome {
    algebra(&[(2, 3)], |t, field, n, budget| {
        let mut ends = Tally::new(Suite::Algebra, "ends");
        verify::quotient_tables(t, &mut ends, field, n, budget)?;
        let ends = ends.finish();
        t.record(ends.passed(), || ends.counterexample.clone().unwrap_or_default());
        Ok(())
    })
}

fn flag_counts() -> Outcome {
    algebra(&[(2, 4), (3, 4)], verify::flag_count)
}

fn main() -> ExitCode {
    let results = [
        run("partition recurrence (1 <= m < n <= 30, 1 < A <= 10)", 5, partition_recurrence),
        run("generating series coefficients (A, m <= 6, n <= 20)", 5, generating_function),
        run("convolution vs brute force (n <= 12, r <= 3, m_j, A_j <= 4)", 30, convolution_theorem),
        run("split Grassmannian basis counts (n <= 10)", 5, grassmannian_basis),
        run("complete flag coefficients (n <= 8)", 5, complete_flags),
        run("split cross-check over P^(n-1) vs point (n <= 6)", 10, || {
            from_check(verify::check_split_cross(6))
        }),
        run("exact-sequence pipeline vs direct profiles (n <= 6)", 10, || {
            from_check(verify::check_pipeline(6))
        }),
        run("ideal/subspace bijections (q=2 n<=4, q=3 n<=3)", 120, bijections),
        run("quotient algebra multiplication tables (q=2, n<=3)", 30, quotients),
        run("flag counts vs Gaussian multinomials (q in {2,3}, n<=4)", 60, flag_counts),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

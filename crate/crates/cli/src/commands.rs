//! One function per subcommand: validate, delegate to the library, and fill
//! in a [`Report`].

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{Map, Value};

use twistflag::algebra_lab::{count_flags, gaussian_binomial, gaussian_multinomial, FiniteField};
use twistflag::chowrank::{
    flag_bundle_coefficients, product_fibration_coefficients, push_through_base, severi_brauer_pipeline,
    twisted_first_index_one, twisted_general, FibrationCoefficients, FlagSpec, IndexHypothesis, RankProfile,
};
use twistflag::parse::{parse_base, parse_blocks, parse_flag_spec, parse_indices};
use twistflag::partitions::{count_at_most, count_multi, count_strict, PartitionConstraint};
use twistflag::schur::{enumerate_basis, schur_determinant};
use twistflag::verify::{self, Suite, VerifyConfig};
use twistflag::{Error, Result};

use crate::report::{num, nums, Report};
use crate::{
    resolve_budget, CoeffsArgs, CoeffsCase, FlagsCountArgs, HypothesisArg, PartitionsArgs, RanksArgs,
    RanksMode, SchurBasisArgs, VerifyArgs,
};

/// Largest flag-variety dimension accepted by `ranks` and `coeffs`.
pub const MAX_DIMENSION: u64 = 2_000;

/// Largest ambient dimension accepted by `flags-count`.
pub const MAX_FLAG_AMBIENT: usize = 64;

impl HypothesisArg {
    const ALL: [HypothesisArg; 4] = [
        HypothesisArg::CoprimeChosen,
        HypothesisArg::PrimePower,
        HypothesisArg::CoprimeAll,
        HypothesisArg::Split,
    ];

    fn name(self) -> &'static str {
        match self {
            HypothesisArg::CoprimeChosen => "coprime-chosen",
            HypothesisArg::PrimePower => "prime-power",
            HypothesisArg::CoprimeAll => "coprime-all",
            HypothesisArg::Split => "split",
        }
    }

    fn library(self) -> IndexHypothesis {
        match self {
            HypothesisArg::CoprimeChosen => IndexHypothesis::CoprimeToChosenIndex,
            HypothesisArg::PrimePower => IndexHypothesis::PrimePowerIndex,
            HypothesisArg::CoprimeAll => IndexHypothesis::CoprimeToAllIndices,
            HypothesisArg::Split => IndexHypothesis::Split,
        }
    }
}

/// Echoes the hypotheses a computation relies on, plus any extra ones the
/// caller asserted, and returns the one handed to the library: the first
/// asserted hypothesis among `relevant`, else `relevant[0]`.
fn record_hypotheses(
    report: &mut Report,
    relevant: &[HypothesisArg],
    asserted: &[HypothesisArg],
) -> Option<IndexHypothesis> {
    for h in HypothesisArg::ALL {
        if relevant.contains(&h) || asserted.contains(&h) {
            report.hypothesis(h.name(), h.library().label(), asserted.contains(&h));
        }
    }
    if !relevant.is_empty() && !relevant.iter().any(|h| asserted.contains(h)) {
        let names: Vec<&str> = relevant.iter().map(|h| h.name()).collect();
        report.line(format!(
            "warning: none of [{}] asserted; the result holds only under one of them",
            names.join(", ")
        ));
    }
    let chosen = relevant.iter().find(|h| asserted.contains(h)).or(relevant.first());
    chosen.map(|h| h.library())
}

fn check_dimension(spec: &FlagSpec) -> Result<()> {
    if spec.dimension() > MAX_DIMENSION {
        return Err(Error::InvalidArgument(format!(
            "flag variety of dimension {} exceeds the supported {MAX_DIMENSION}",
            spec.dimension()
        )));
    }
    Ok(())
}

fn require_s(s: Option<usize>) -> Result<usize> {
    s.ok_or_else(|| Error::InvalidArgument("--s is required for the general decomposition".into()))
}

fn blocks_text(coeffs: &FibrationCoefficients) -> String {
    let blocks: Vec<String> = coeffs.blocks().iter().map(ToString::to_string).collect();
    if blocks.is_empty() {
        "none".into()
    } else {
        blocks.join(" ")
    }
}

fn coefficient_values(coeffs: &FibrationCoefficients) -> Vec<BigUint> {
    (0..=coeffs.fiber_dimension()).map(|i| coeffs.n(i)).collect()
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `CH^k(X) = CH^k(S)^{n_0} ⊕ CH^{k-1}(S)^{n_1} ⊕ ...` for `k` up to the fibre
/// dimension, with total space `x` and base `s`.
fn formal_expressions(coeffs: &FibrationCoefficients, x: &str, s: &str) -> Vec<String> {
    (0..=coeffs.fiber_dimension())
        .map(|k| {
            let terms: Vec<String> = (0..=k)
                .filter_map(|i| {
                    let n = coeffs.n(i);
                    (n != BigUint::from(0u32)).then(|| format!("CH^{}({s})^{n}", k - i))
                })
                .collect();
            format!("CH^{k}({x}) = {}", terms.join(" ⊕ "))
        })
        .collect()
}

fn add_coefficients(report: &mut Report, key: &str, coeffs: &FibrationCoefficients) {
    let label = coeffs.provenance().label();
    let values = coefficient_values(coeffs);
    report.entry(key, nums(&values), label.clone());
    report.line(format!("blocks: {}", blocks_text(coeffs)));
    report.line(format!("{:>4}  {}", "i", key));
    for (i, v) in values.iter().enumerate() {
        report.line(format!("{i:>4}  {v}"));
    }
    report.line(format!("total {}", coeffs.total()));
    report.entry(&format!("{key}_total"), num(coeffs.total()), label);
}

fn add_profile(report: &mut Report, key: &str, profile: &RankProfile, provenance: &str) {
    report.line(format!("{:>4}  rank CH^k", "k"));
    for (k, r) in profile.ranks().iter().enumerate() {
        report.line(format!("{k:>4}  {r}"));
    }
    report.line(format!("total {}", profile.total()));
    report.entry(key, nums(profile.ranks()), provenance);
    report.entry(&format!("{key}_total"), num(profile.total()), provenance);
}

pub fn ranks(args: &RanksArgs) -> Result<Report> {
    let spec = parse_flag_spec(args.n, &args.indices)?;
    check_dimension(&spec)?;
    let base = parse_base(&args.base)?;
    let profile = base.profile()?;

    let mut report = Report::new("ranks");
    report
        .param("n", args.n)
        .param("indices", join(spec.indices()))
        .param("base", &base)
        .param("mode", mode_name(args.mode));
    if let Some(s) = args.s {
        report.param("s", s);
    }

    let relevant: &[HypothesisArg] = match args.mode {
        RanksMode::Direct | RanksMode::FirstIndexOne => &[],
        RanksMode::General => &[HypothesisArg::CoprimeChosen, HypothesisArg::PrimePower],
        RanksMode::SbPipeline => &[HypothesisArg::CoprimeAll],
    };
    let hypothesis = record_hypotheses(&mut report, relevant, &args.hypothesis);

    if args.mode == RanksMode::SbPipeline {
        return pipeline(report, &spec, profile, hypothesis.expect("pipeline has a hypothesis"));
    }
    let coeffs = match args.mode {
        RanksMode::Direct => flag_bundle_coefficients(&spec),
        RanksMode::FirstIndexOne => twisted_first_index_one(&spec)?,
        RanksMode::General => twisted_general(
            &spec,
            require_s(args.s)?,
            hypothesis.expect("general mode has a hypothesis"),
        )?,
        RanksMode::SbPipeline => unreachable!("handled above"),
    };
    let base_name = match args.mode {
        RanksMode::Direct => "S".to_string(),
        RanksMode::FirstIndexOne => "SB(A)".to_string(),
        _ => format!("SB_{}(A)", spec.indices()[require_s(args.s)? - 1]),
    };
    add_coefficients(&mut report, "coefficients", &coeffs);
    match profile {
        None => {
            let expressions = formal_expressions(&coeffs, "X", &base_name);
            report.line(format!("CH^k(X) = ⊕_i CH^(k-i)({base_name})^(n_i):"));
            for e in &expressions {
                report.line(format!("  {e}"));
            }
            report.entry("expression", Value::from(expressions), coeffs.provenance().label());
        }
        Some(base_profile) => {
            let ranks = push_through_base(&coeffs, &base_profile);
            add_profile(
                &mut report,
                "ranks",
                &ranks,
                &format!("push_through_base({})", coeffs.provenance().label()),
            );
        }
    }
    Ok(report)
}

fn pipeline(
    mut report: Report,
    spec: &FlagSpec,
    profile: Option<RankProfile>,
    hypothesis: IndexHypothesis,
) -> Result<Report> {
    let Some(base_profile) = profile else {
        let mut cover_indices = vec![1];
        cover_indices.extend_from_slice(spec.indices());
        let cover = FlagSpec::new(spec.degree(), cover_indices)?;
        let coeffs = twisted_first_index_one(&cover)?;
        add_coefficients(&mut report, "cover_coefficients", &coeffs);
        let expressions = formal_expressions(&coeffs, "Y", "SB(A)");
        report.line(format!("Y = Flag(1,{}; A) over SB(A):", join(spec.indices())));
        for e in &expressions {
            report.line(format!("  {e}"));
        }
        report.line(format!(
            "0 -> CH^(k-{i})(X) -> CH^(k-1)(Y) -> CH^k(Y) -> CH^k(X) -> 0",
            i = spec.indices()[0]
        ));
        report.entry("cover_expression", Value::from(expressions), coeffs.provenance().label());
        return Ok(report);
    };
    let result = severi_brauer_pipeline(spec, &base_profile, hypothesis)?;
    add_coefficients(&mut report, "cover_coefficients", &result.cover_coefficients);
    report.line("cover Y = Flag(1, i_1, ..., i_r; A):");
    add_profile(&mut report, "cover_ranks", &result.cover_profile, "push_through_base(severi_brauer_cover)");
    report.line("X:");
    add_profile(&mut report, "ranks", &result.ranks, "severi_brauer_pipeline");
    Ok(report)
}

fn mode_name(mode: RanksMode) -> &'static str {
    match mode {
        RanksMode::Direct => "direct",
        RanksMode::FirstIndexOne => "first-index-one",
        RanksMode::General => "general",
        RanksMode::SbPipeline => "sb-pipeline",
    }
}

pub fn coeffs(args: &CoeffsArgs) -> Result<Report> {
    let spec = parse_flag_spec(args.n, &args.indices)?;
    check_dimension(&spec)?;
    let mut report = Report::new("coeffs");
    report.param("n", args.n).param("indices", join(spec.indices()));
    let case_name = match args.case {
        CoeffsCase::FlagBundle => "flag-bundle",
        CoeffsCase::FirstIndexOne => "first-index-one",
        CoeffsCase::General => "general",
        CoeffsCase::Product => "product",
    };
    report.param("case", case_name);
    if args.case != CoeffsCase::Product && (args.plus_n.is_some() || args.plus_indices.is_some()) {
        return Err(Error::InvalidArgument("--plus-n and --plus-indices belong to the product case".into()));
    }
    let coeffs = match args.case {
        CoeffsCase::FlagBundle => {
            record_hypotheses(&mut report, &[], &args.hypothesis);
            flag_bundle_coefficients(&spec)
        }
        CoeffsCase::FirstIndexOne => {
            record_hypotheses(&mut report, &[], &args.hypothesis);
            twisted_first_index_one(&spec)?
        }
        CoeffsCase::General => {
            let s = require_s(args.s)?;
            report.param("s", s);
            let relevant = [HypothesisArg::CoprimeChosen, HypothesisArg::PrimePower];
            let h = record_hypotheses(&mut report, &relevant, &args.hypothesis).expect("relevant is nonempty");
            twisted_general(&spec, s, h)?
        }
        CoeffsCase::Product => {
            let (Some(plus_n), Some(plus_indices)) = (args.plus_n, args.plus_indices.as_deref()) else {
                return Err(Error::InvalidArgument(
                    "the product case needs --plus-n and --plus-indices".into(),
                ));
            };
            let plus = parse_flag_spec(plus_n, plus_indices)?;
            check_dimension(&plus)?;
            report.param("plus_n", plus_n).param("plus_indices", join(plus.indices()));
            record_hypotheses(&mut report, &[], &args.hypothesis);
            product_fibration_coefficients(&spec, &plus)
        }
    };
    add_coefficients(&mut report, "coefficients", &coeffs);
    let blocks: Vec<Value> = coeffs.blocks().iter().map(|b| Value::String(b.to_string())).collect();
    report.entry("blocks", Value::Array(blocks), coeffs.provenance().label());
    Ok(report)
}

/// Rough number of memoized states for counting partitions of `n` in a box.
fn partition_work(n: u32, c: PartitionConstraint) -> BigUint {
    let n = u64::from(n);
    let m = u64::from(c.max_parts()).min(n).max(1);
    let a = u64::from(c.max_part()).min(n).max(1);
    BigUint::from(n + 1) * m * a
}

pub fn partitions(args: &PartitionsArgs) -> Result<Report> {
    let budget = resolve_budget(None)?;
    let mut report = Report::new("partitions");
    report.param("n", args.n);
    if let Some(text) = &args.blocks {
        let blocks = parse_blocks(text)?;
        let work: BigUint = blocks.iter().map(|&c| partition_work(args.n, c)).sum();
        budget.check(&work)?;
        report.param("blocks", blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join(""));
        let value = count_multi(args.n, &blocks);
        report.line(format!("q({}, {}) = {value}", args.n, join(&blocks)));
        report.entry("count", num(value), "count_multi");
        return Ok(report);
    }
    let (m, a) = (args.m.expect("clap requires --m"), args.a.expect("clap requires --A"));
    report.param("m", m).param("A", a).param("exact", args.exact);
    let work = partition_work(args.n, PartitionConstraint::new(m.max(1), a.max(1))?);
    budget.check(&work)?;
    let (value, provenance, symbol) = if args.exact {
        (count_strict(args.n, m, a), "count_strict", "p_exact")
    } else {
        (count_at_most(args.n, m, a), "count_at_most", "p")
    };
    report.line(format!("{symbol}({}, {m}, {a}) = {value}", args.n));
    report.entry("count", num(value), provenance);
    Ok(report)
}

pub fn schur_basis(args: &SchurBasisArgs) -> Result<Report> {
    let budget = resolve_budget(args.budget)?;
    if args.d > args.n {
        return Err(Error::InvalidArgument(format!(
            "basis needs 0 <= d <= n, got n={}, d={}",
            args.n, args.d
        )));
    }
    let size: BigUint = (0..args.d).fold(BigUint::one(), |acc, i| acc * (args.n - i) / (i + 1));
    let work = if args.polynomials {
        &size << args.d.min(64) as usize
    } else {
        size.clone()
    };
    budget.check(&work)?;
    let basis = enumerate_basis(args.n, args.d)?;

    let mut report = Report::new("schur-basis");
    report
        .param("n", args.n)
        .param("d", args.d)
        .param("polynomials", args.polynomials);
    let counts = basis.counts();
    let mut by_weight = Map::new();
    let mut polynomials = Map::new();
    for (k, count) in counts.iter().enumerate() {
        let parts = basis.at_weight(k);
        let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
        report.line(format!("weight {k:>3}: {count:>4}  {}", names.join(" ")));
        by_weight.insert(format!("{k:04}"), Value::from(names));
        if args.polynomials {
            for p in parts {
                let poly = schur_determinant(p).to_string();
                report.line(format!("    Δ{p} = {poly}"));
                polynomials.insert(p.to_string(), Value::String(poly));
            }
        }
    }
    report.line(format!("total {}", basis.total()));
    report.entry("counts", nums(&counts), "enumerate_basis");
    report.entry("total", num(basis.total()), "enumerate_basis");
    report.entry("basis", Value::Object(by_weight), "enumerate_basis");
    if args.polynomials {
        report.entry("polynomials", Value::Object(polynomials), "schur_determinant");
    }
    Ok(report)
}

pub fn verify(args: &VerifyArgs) -> Result<Report> {
    let suites = Suite::parse_selection(&args.suite)?;
    let budget = resolve_budget(args.budget)?;
    let config = VerifyConfig {
        n_max: args.n_max,
        q: args.q,
        budget,
    };
    let mut report = Report::new("verify");
    report.param("suite", &args.suite).param("q", args.q).param("budget", budget.limit());
    if let Some(n) = args.n_max {
        report.param("n_max", n);
    }
    let checks = verify::run(&suites, &config)?;
    let mut passed = 0;
    for check in &checks {
        report.line(check.to_string());
        let mut value = Map::new();
        value.insert("status".into(), Value::from(if check.passed() { "pass" } else { "fail" }));
        value.insert("cases".into(), num(check.cases));
        value.insert(
            "counterexample".into(),
            check.counterexample.clone().map_or(Value::Null, Value::String),
        );
        report.entry(
            &format!("{}/{}", check.suite, check.name),
            Value::Object(value),
            format!("verify::{}", check.suite),
        );
        passed += usize::from(check.passed());
    }
    report.line(format!("{passed}/{} checks passed", checks.len()));
    report.verification_failed = passed != checks.len();
    Ok(report)
}

pub fn flags_count(args: &FlagsCountArgs) -> Result<Report> {
    let budget = resolve_budget(args.budget)?;
    let field = FiniteField::new(args.q)?;
    if args.n == 0 || args.n > MAX_FLAG_AMBIENT {
        return Err(Error::InvalidArgument(format!(
            "flags-count needs 1 <= n <= {MAX_FLAG_AMBIENT}, got {}",
            args.n
        )));
    }
    let indices: Vec<usize> = parse_indices(&args.indices)?.into_iter().map(|i| i as usize).collect();
    let formula = gaussian_multinomial(args.n, &indices, field.order())?;
    let mut report = Report::new("flags-count");
    report
        .param("n", args.n)
        .param("indices", join(&indices))
        .param("q", args.q)
        .param("budget", budget.limit());
    let enumerated = count_flags(args.n, &indices, args.q, budget)?;
    let factors: Vec<String> = indices
        .iter()
        .zip(indices.iter().skip(1).chain(std::iter::once(&args.n)))
        .map(|(&lo, &hi)| format!("[{hi} choose {lo}]_{} = {}", args.q, gaussian_binomial(hi, lo, args.q)))
        .collect();
    report.line(format!("enumerated: {enumerated}"));
    report.line(format!("formula:    {formula}  ({})", factors.join(" * ")));
    let agree = enumerated == formula;
    report.line(if agree { "PASS counts agree" } else { "FAIL counts differ" });
    report.entry("enumerated", num(&enumerated), "count_flags");
    report.entry("formula", num(&formula), "gaussian_multinomial");
    report.verification_failed = !agree;
    Ok(report)
}

//! Exhaustive machine checks of the identities satisfied by `m_λ(ζ(n, k))`
//! and by the coefficients of `Θ(Z/nZ)^k`, plus an explorer for the
//! prime-power nonvanishing conjecture.
//!
//! Mismatches are data: they land in [`VerificationReport::failures`]. An
//! integrality violation or budget overrun is an error and aborts the run.
//!
//! Sweeps are sharded over a rayon pool of [`VerifyConfig::jobs`] workers and
//! merged in enumeration order, so reports do not depend on the worker count.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::groupdet::{self, ExponentVector};
use crate::msp::{self, EvalInstance};
use crate::partitions::{self, enumerate, format_parts, BoundedPartition};
use crate::poly::{elementary_symmetric_poly, SparsePoly};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub jobs: usize,
    pub dp_budget: u128,
    pub expansion_budget: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            jobs: 1,
            dp_budget: msp::DEFAULT_DP_BUDGET,
            expansion_budget: groupdet::DEFAULT_EXPANSION_BUDGET,
        }
    }
}

impl VerifyConfig {
    /// Maps `f` over `items`, sharded across `jobs` workers, keeping order.
    fn map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        if self.jobs <= 1 {
            return items.iter().map(f).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::precondition(format!("cannot start worker pool: {e}")))?;
        pool.install(|| items.par_iter().map(f).collect())
    }

    fn dp(&self, inst: &EvalInstance) -> Result<BigInt> {
        msp::msp_value_dp_with_budget(inst, self.dp_budget)
    }

    fn dp_partition(&self, lambda: &BoundedPartition, k: u32) -> Result<BigInt> {
        self.dp(&EvalInstance::from_partition(lambda, k)?)
    }

    /// `m_λ` for every `λ` in `Λ(n, k)`.
    fn value_table(&self, n: u32, k: u32) -> Result<HashMap<BoundedPartition, BigInt>> {
        let all: Vec<BoundedPartition> = enumerate(n, (k * n) as usize, false).collect();
        let values = self.map(&all, |l| self.dp_partition(l, k))?;
        Ok(all.into_iter().zip(values).collect())
    }
}

/// A single mismatch, reproducible from its fields alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub lambda: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub instances_checked: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: u32,
    pub k: u32,
    pub instances_checked: u64,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// JSON without the timing field, for determinism comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v.to_string()
    }
}

/// Accumulates check outcomes into a report.
struct ReportBuilder {
    suite: String,
    n: u32,
    k: u32,
    started: Instant,
    checks: Vec<CheckSummary>,
    failures: Vec<Failure>,
}

impl ReportBuilder {
    fn new(suite: impl Into<String>, n: u32, k: u32) -> Self {
        ReportBuilder {
            suite: suite.into(),
            n,
            k,
            started: Instant::now(),
            checks: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, instances: u64, mut failures: Vec<Failure>) {
        self.checks.push(CheckSummary {
            name: name.to_string(),
            instances_checked: instances,
            failures: failures.len() as u64,
        });
        self.failures.append(&mut failures);
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.failures.extend(other.failures);
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            suite: self.suite,
            n: self.n,
            k: self.k,
            instances_checked: self.checks.iter().map(|c| c.instances_checked).sum(),
            checks: self.checks,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

fn failure(
    check: &str,
    lambda: impl fmt::Display,
    expected: impl fmt::Display,
    actual: impl fmt::Display,
) -> Failure {
    Failure {
        check: check.to_string(),
        lambda: lambda.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn units(n: u32) -> Vec<i64> {
    (1..=n as i64)
        .filter(|&l| partitions::gcd(l, n as i64) == 1)
        .collect()
}

fn repeated(value: i64, count: u32) -> impl Iterator<Item = i64> {
    std::iter::repeat_n(value, count as usize)
}

// ---------------------------------------------------------------------------
// Individual checks. Each returns (instances, failures).

type CheckResult = Result<(u64, Vec<Failure>)>;

/// For prime `p`: `m_λ(ζ(p, 1)) ≠ 0` exactly when `p | |λ|`, over all of `Λ(p, 1)`.
pub fn check_prime_nonvanishing(p: u32, cfg: &VerifyConfig) -> CheckResult {
    let all: Vec<BoundedPartition> = enumerate(p, p as usize, false).collect();
    let out = cfg.map(&all, |l| {
        let v = cfg.dp_partition(l, 1)?;
        let predicted = msp::prime_nonvanishing(&l.as_i64(), p)?;
        Ok((predicted == v.is_zero()).then(|| {
            let want = if predicted { "nonzero" } else { "0" };
            failure("prime_nonvanishing", l, want, &v)
        }))
    })?;
    Ok((all.len() as u64, out.into_iter().flatten().collect()))
}

/// Two-block closed form against the DP, for every `1 <= λ1 < n` and
/// `0 <= a <= kn`, including the nonvanishing claim on the `n | |λ|` branch.
pub fn check_two_blocks(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let cases: Vec<(i64, u32)> = (1..n as i64)
        .flat_map(|l1| (0..=k * n).map(move |a| (l1, a)))
        .collect();
    let out = cfg.map(&cases, |&(l1, a)| {
        let parts: Vec<i64> = repeated(l1, a)
            .chain(repeated(n as i64, k * n - a))
            .collect();
        let inst = EvalInstance::new(parts, n, k)?;
        let dp = cfg.dp(&inst)?;
        let closed = msp::closed_form_two_blocks(l1, a, n, k)?;
        let divisible = inst.size().rem_euclid(n as i64) == 0;
        let mut fails = Vec::new();
        if dp != closed {
            fails.push(failure(
                "two_blocks",
                format_parts(inst.parts()),
                &closed,
                &dp,
            ));
        }
        if divisible && closed.is_zero() {
            fails.push(failure(
                "two_blocks_nonzero",
                format_parts(inst.parts()),
                "nonzero",
                &closed,
            ));
        }
        Ok(fails)
    })?;
    Ok((cases.len() as u64, out.into_iter().flatten().collect()))
}

/// `m_λ = (-1)^(k(n+1)λ1) m_λ'` for two-valued `λ = (λ1^a, λ2^(kn-a))`
/// over all residue pairs `λ1 ≠ λ2` in `1..=n` and all `a`.
pub fn check_two_value_reduction(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let mut cases = Vec::new();
    for l1 in 1..=n as i64 {
        for l2 in 1..=n as i64 {
            if (l2 - l1).rem_euclid(n as i64) != 0 {
                cases.extend((0..=k * n).map(|a| (l1, l2, a)));
            }
        }
    }
    let out = cfg.map(&cases, |&(l1, l2, a)| {
        let parts: Vec<i64> = repeated(l1, a).chain(repeated(l2, k * n - a)).collect();
        let inst = EvalInstance::new(parts, n, k)?;
        let (sign, reduced) = msp::reduce_two_distinct(l1, l2, a, n, k)?;
        let lhs = cfg.dp(&inst)?;
        let rhs = cfg.dp(&reduced)? * sign;
        Ok((lhs != rhs).then(|| {
            failure(
                "two_value_reduction",
                format!(
                    "{} -> {} (sign {sign})",
                    format_parts(inst.parts()),
                    format_parts(reduced.parts())
                ),
                &rhs,
                &lhs,
            )
        }))
    })?;
    Ok((cases.len() as u64, out.into_iter().flatten().collect()))
}

/// Members of `Λ(n, k)` with two or three parts below `n`: the candidates
/// for the few-part shapes.
pub fn few_part_candidates(n: u32, k: u32) -> Vec<BoundedPartition> {
    let len = (k * n) as usize;
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for size in 2..=3usize.min(len) {
        for small in enumerate(n - 1, size, false) {
            let mut parts = small.parts().to_vec();
            parts.extend(std::iter::repeat_n(n, len - size));
            out.push(BoundedPartition::new(parts, n).expect("parts within bound"));
        }
    }
    out
}

/// Every few-part shape match has `m_λ` equal to the shape value (scaled by
/// `k`) and nonzero.
pub fn check_patterns(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let matched: Vec<(BoundedPartition, BigInt)> = few_part_candidates(n, k)
        .into_iter()
        .filter_map(|l| {
            let inst = EvalInstance::from_partition(&l, k).ok()?;
            msp::mansfield_coefficient(&inst).map(|v| (l, v))
        })
        .collect();
    let out = cfg.map(&matched, |(l, want)| {
        let v = cfg.dp_partition(l, k)?;
        let mut fails = Vec::new();
        if &v != want {
            fails.push(failure("patterns", l, want, &v));
        }
        if v.is_zero() {
            fails.push(failure("patterns_nonzero", l, "nonzero", &v));
        }
        Ok(fails)
    })?;
    Ok((matched.len() as u64, out.into_iter().flatten().collect()))
}

/// Integer readout succeeds on every zero-padded `λ`, and `m_λ = 0` whenever
/// `n ∤ |λ|`. Returns `(integrality_instances, vanishing_instances, failures)`.
pub fn check_integrality_and_vanishing(
    n: u32,
    k: u32,
    cfg: &VerifyConfig,
) -> Result<(u64, u64, Vec<Failure>)> {
    let all: Vec<BoundedPartition> = enumerate(n, (k * n) as usize, true).collect();
    let out = cfg.map(&all, |l| {
        // An integrality violation surfaces here as an error.
        let v = cfg.dp_partition(l, k)?;
        let off = l.size() % n as u64 != 0;
        Ok((
            off,
            (off && !v.is_zero()).then(|| failure("vanishing", l, 0, &v)),
        ))
    })?;
    let vanishing = out.iter().filter(|(off, _)| *off).count() as u64;
    Ok((
        all.len() as u64,
        vanishing,
        out.into_iter().filter_map(|(_, f)| f).collect(),
    ))
}

/// `m_{lλ} = m_λ` for every `λ` in `Λ(n, k)` and every unit `l` mod `n`.
pub fn check_scaling(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let table = cfg.value_table(n, k)?;
    let mut keys: Vec<&BoundedPartition> = table.keys().collect();
    keys.sort();
    let mut checked = 0;
    let mut fails = Vec::new();
    for l in units(n) {
        for lambda in &keys {
            let scaled = msp::scale_partition(&lambda.as_i64(), l, n)?;
            let (a, b) = (&table[*lambda], &table[&scaled]);
            checked += 1;
            if a != b {
                fails.push(failure("scaling", format!("{lambda} (l={l})"), a, b));
            }
        }
    }
    Ok((checked, fails))
}

/// The expansion of `Θ(Z/nZ)^k` is fixed by `x_i ↦ x_{li}` for units `l`.
pub fn check_automorphism_invariance(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let map = groupdet::dedekind_expand_cached(n, k, cfg.expansion_budget)?;
    let mut fails = Vec::new();
    let us = units(n);
    for &l in &us {
        let image = map.relabel(l)?;
        if image != *map {
            let diff = map
                .records()
                .into_iter()
                .find(|r| {
                    image.get(&ExponentVector::from_partition(&r.partition).expect("parts >= 1"))
                        != r.coefficient
                })
                .map(|r| r.lambda)
                .unwrap_or_default();
            fails.push(failure(
                "automorphism",
                format!("l={l} at {diff}"),
                "invariant",
                "changed",
            ));
        }
    }
    Ok((us.len() as u64, fails))
}

/// Every coefficient of the character-product expansion equals the DP value
/// (and the permutation oracle when `kn <= 9`), over all of `Λ(n, k)`; every
/// surviving key has weighted sum divisible by `n`.
pub fn check_expansion_coefficients(n: u32, k: u32, cfg: &VerifyConfig) -> CheckResult {
    let map = groupdet::dedekind_expand_cached(n, k, cfg.expansion_budget)?;
    let all: Vec<BoundedPartition> = enumerate(n, (k * n) as usize, false).collect();
    let with_naive = (k * n) as usize <= msp::NAIVE_MAX_VARS;
    let out = cfg.map(&all, |l| {
        let inst = EvalInstance::from_partition(l, k)?;
        let coef = map.get(&ExponentVector::from_partition(l)?);
        let dp = cfg.dp(&inst)?;
        let mut fails = Vec::new();
        if coef != dp {
            fails.push(failure("expansion_vs_dp", l, &dp, &coef));
        }
        if with_naive {
            let naive = msp::msp_value_naive(&inst)?;
            if naive != dp {
                fails.push(failure("naive_vs_dp", l, &naive, &dp));
            }
        }
        Ok(fails)
    })?;
    let mut fails: Vec<Failure> = out.into_iter().flatten().collect();
    for (e, c) in map.iter() {
        if e.weighted_sum() % n as u64 != 0 {
            fails.push(failure(
                "term_support",
                e.to_partition(),
                "n | weighted sum",
                c,
            ));
        }
    }
    Ok((all.len() as u64 + map.len() as u64, fails))
}

/// Character-product expansion equals the permutation-sum determinant.
pub fn check_dedekind_factorization(n: u32, cfg: &VerifyConfig) -> CheckResult {
    let leibniz = groupdet::leibniz_determinant(n)?;
    let dedekind = groupdet::dedekind_expand_cached(n, 1, cfg.expansion_budget)?;
    let mut fails = Vec::new();
    let mut keys: Vec<&ExponentVector> = leibniz.iter().map(|(e, _)| e).collect();
    keys.extend(dedekind.iter().map(|(e, _)| e));
    keys.sort();
    keys.dedup();
    for e in &keys {
        let (a, b) = (leibniz.get(e), dedekind.get(e));
        if a != b {
            fails.push(failure("dedekind_vs_leibniz", e.to_partition(), &a, &b));
        }
    }
    Ok((keys.len() as u64, fails))
}

/// For prime `p`: the term count of `Θ(Z/pZ)` equals the closed formula and `|Λ̃(p, 1)|`.
pub fn check_prime_term_count(p: u32, cfg: &VerifyConfig) -> CheckResult {
    let count = groupdet::count_terms_with_budget(p, 1, cfg.expansion_budget)?;
    let formula = groupdet::prime_term_count(p)?;
    let mut fails = Vec::new();
    if BigUint::from(count.nu) != formula || !count.equal {
        fails.push(failure(
            "prime_term_count",
            format!("p={p}"),
            format!("{formula} (|Λ̃| = {})", count.lambda_tilde),
            count.nu,
        ));
    }
    Ok((1, fails))
}

// ---------------------------------------------------------------------------
// Suites.

/// Closed forms for prime length, two blocks and two values, plus the prime
/// term count when `n` is prime and `k = 1`. CLI suite `thm11`.
pub fn check_closed_forms(n: u32, k: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("thm11", n, k);
    if k == 1 && partitions::is_prime(n as u64) {
        let (i, f) = check_prime_nonvanishing(n, cfg)?;
        b.record("prime_nonvanishing", i, f);
        let (i, f) = check_prime_term_count(n, cfg)?;
        b.record("prime_term_count", i, f);
    }
    let (i, f) = check_two_blocks(n, k, cfg)?;
    b.record("two_blocks", i, f);
    let (i, f) = check_two_value_reduction(n, k, cfg)?;
    b.record("two_value_reduction", i, f);
    Ok(b.finish())
}

/// Few-part shapes, integrality, vanishing, scaling and automorphism
/// invariance. CLI suite `thm12`.
pub fn check_structural(n: u32, k: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("thm12", n, k);
    let (i, f) = check_patterns(n, k, cfg)?;
    b.record("patterns", i, f);
    let (integral, vanishing, f) = check_integrality_and_vanishing(n, k, cfg)?;
    b.record("integrality", integral, Vec::new());
    b.record("vanishing", vanishing, f);
    let (i, f) = check_scaling(n, k, cfg)?;
    b.record("scaling", i, f);
    let (i, f) = check_automorphism_invariance(n, k, cfg)?;
    b.record("automorphism", i, f);
    Ok(b.finish())
}

/// Coefficients of `Θ(Z/nZ)^k` against both evaluators, and the character
/// factorization against the permutation determinant when `k = 1`. CLI suite `thm32`.
pub fn check_group_determinant(n: u32, k: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("thm32", n, k);
    let (i, f) = check_expansion_coefficients(n, k, cfg)?;
    b.record("expansion_coefficients", i, f);
    if k == 1 && n <= groupdet::LEIBNIZ_MAX_N {
        let (i, f) = check_dedekind_factorization(n, cfg)?;
        b.record("dedekind_vs_leibniz", i, f);
    }
    Ok(b.finish())
}

/// Every applicable exhaustive check for `(n, k)` in one report.
pub fn check_theorems(n: u32, k: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("theorems", n, k);
    b.absorb(check_closed_forms(n, k, cfg)?);
    b.absorb(check_structural(n, k, cfg)?);
    b.absorb(check_group_determinant(n, k, cfg)?);
    Ok(b.finish())
}

/// `m_μ(ζ(n, k+l)) = sum_{λ ⊲ μ} m_λ(ζ(n, k)) m_{μ\λ}(ζ(n, l))` for every
/// `μ` in `Λ(n, k+l)`. CLI suite `branching`.
pub fn check_branching(n: u32, k: u32, l: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("branching", n, k);
    let small = cfg.value_table(n, k)?;
    let other = if l == k {
        small.clone()
    } else {
        cfg.value_table(n, l)?
    };
    let mut lambdas: Vec<&BoundedPartition> = small.keys().collect();
    lambdas.sort();
    let mus: Vec<BoundedPartition> = enumerate(n, ((k + l) * n) as usize, false).collect();
    let out = cfg.map(&mus, |mu| {
        let lhs = cfg.dp_partition(mu, k + l)?;
        let mut rhs = BigInt::zero();
        for lambda in &lambdas {
            if partitions::triangle_order(lambda, mu) {
                let rest = partitions::remove(mu, lambda)?;
                rhs += &small[*lambda] * &other[&rest];
            }
        }
        Ok((lhs != rhs).then(|| failure("branching", format!("{mu} (l={l})"), &rhs, &lhs)))
    })?;
    b.record(
        "branching",
        mus.len() as u64,
        out.into_iter().flatten().collect(),
    );
    Ok(b.finish())
}

/// Distribution of `sum_i λ_i σ(i) mod n` over all permutations `σ` of
/// `1..=len` (only the first `len` parts of `λ` are used).
fn permutation_sum_distribution(lambda: &[i64], len: usize, n: u32) -> Vec<BigInt> {
    let mut tally = vec![0u64; n as usize];
    let mut sigma: Vec<i64> = (1..=len as i64).collect();
    loop {
        let s: i64 = lambda.iter().zip(&sigma).map(|(a, b)| a * b).sum();
        tally[s.rem_euclid(n as i64) as usize] += 1;
        if !partitions::next_permutation(&mut sigma) {
            break;
        }
    }
    tally.into_iter().map(BigInt::from).collect()
}

/// Largest `n` for the permutation-sum reduction check.
pub const PERIODIC_REDUCTION_MAX_N: u32 = 7;

/// For `n | |λ|` and every period-`n` function `f`:
/// `sum_{σ ∈ S_n} f(sum λ_i σ(i)) = n sum_{τ ∈ S_{n-1}} f(sum_{i<n} λ_i τ(i))`.
///
/// Tested on the indicator basis `f = [t ≡ r]`, which spans all period-`n`
/// functions, and on `f(t) = ζ_n^t`.
pub fn check_periodic_sum_reduction(n: u32, lambda: &[i64]) -> Result<(u64, Vec<Failure>)> {
    if n == 0 || n > PERIODIC_REDUCTION_MAX_N {
        return Err(Error::precondition(format!(
            "n must be in 1..={PERIODIC_REDUCTION_MAX_N}"
        )));
    }
    if lambda.len() != n as usize {
        return Err(Error::precondition(format!(
            "λ has {} parts, expected {n}",
            lambda.len()
        )));
    }
    if lambda.iter().sum::<i64>().rem_euclid(n as i64) != 0 {
        return Err(Error::precondition(format!(
            "{n} ∤ |λ| for λ = ({})",
            format_parts(lambda)
        )));
    }
    let lhs = permutation_sum_distribution(lambda, n as usize, n);
    let rhs: Vec<BigInt> = permutation_sum_distribution(lambda, n as usize - 1, n)
        .into_iter()
        .map(|c| c * n)
        .collect();
    let name = format_parts(lambda);
    let mut fails = Vec::new();
    for r in 0..n as usize {
        if lhs[r] != rhs[r] {
            fails.push(failure(
                "periodic_reduction",
                format!("{name} (f=[t≡{r}])"),
                &rhs[r],
                &lhs[r],
            ));
        }
    }
    let zl = CyclotomicInt::from_coeffs(n, lhs);
    let zr = CyclotomicInt::from_coeffs(n, rhs);
    if zl != zr {
        fails.push(failure(
            "periodic_reduction",
            format!("{name} (f=ζ^t)"),
            &zr,
            &zl,
        ));
    }
    Ok((n as u64 + 1, fails))
}

/// `count` random length-`n` integer sequences with `n | |λ|`, reproducible from `seed`.
pub fn periodic_reduction_samples(n: u32, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count)
        .map(|_| {
            let mut v: Vec<i64> = (0..n)
                .map(|_| rng.gen_range(-3 * n as i64..=3 * n as i64))
                .collect();
            let s: i64 = v.iter().sum();
            let last = v.last_mut().expect("n >= 1");
            *last -= s.rem_euclid(n as i64);
            v.sort_unstable();
            v
        })
        .collect()
}

/// CLI suite `lemma24`: the reduction identity on `λ` if given, else on a
/// seeded random sample.
pub fn check_periodic_sums(
    n: u32,
    lambdas: &[Vec<i64>],
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("lemma24", n, 1);
    let out = cfg.map(lambdas, |l| check_periodic_sum_reduction(n, l))?;
    let (mut inst, mut fails) = (0, Vec::new());
    for (i, f) in out {
        inst += i;
        fails.extend(f);
    }
    b.record("periodic_reduction", inst, fails);
    Ok(b.finish())
}

/// `prod_i (1 - x_i^n)^k = sum (-1)^|λ| e_λ(x) m_λ(ζ(n, k))`, the sum over
/// zero-padded `λ ⊆ (n^kn)` with `n | |λ|`, compared term by term.
/// CLI suite `prop21`.
pub fn check_generating_function(n: u32, k: u32, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("prop21", n, k);
    let vars = n as usize;
    let mut factor = SparsePoly::one(vars);
    for i in 0..vars {
        let mut e = ExponentVector::zero(vars);
        e.0[i] = n;
        let mut one_minus = SparsePoly::one(vars);
        one_minus.add_term(e, BigInt::from(-1));
        factor = factor.mul(&one_minus);
    }
    let lhs = factor.pow(k);

    let e_polys: Vec<SparsePoly> = (0..=n as usize)
        .map(|r| elementary_symmetric_poly(r, vars))
        .collect();
    let lambdas: Vec<BoundedPartition> = enumerate(n, (k * n) as usize, true)
        .filter(|l| l.size() % n as u64 == 0)
        .collect();
    let contributions = cfg.map(&lambdas, |l| {
        let m = cfg.dp_partition(l, k)?;
        if m.is_zero() {
            return Ok(None);
        }
        let signed = if l.size() % 2 == 1 { -m } else { m };
        let e_lambda = l.parts().iter().fold(SparsePoly::one(vars), |acc, &r| {
            acc.mul(&e_polys[r as usize])
        });
        Ok(Some(e_lambda.scale(&signed)))
    })?;
    let mut rhs = SparsePoly::zero(vars);
    for c in contributions.into_iter().flatten() {
        rhs.add_assign(&c);
    }

    let mut keys: Vec<&ExponentVector> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let fails = keys
        .iter()
        .filter_map(|e| {
            let (a, c) = (lhs.coefficient(e), rhs.coefficient(e));
            (a != c).then(|| failure("generating_function", format!("monomial {:?}", e.0), &a, &c))
        })
        .collect();
    b.record(
        "generating_function",
        keys.len() as u64 + lambdas.len() as u64,
        fails,
    );
    Ok(b.finish())
}

/// Named verification suites exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm11,
    Thm12,
    Thm32,
    Lemma24,
    Prop21,
    Branching,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm11" => Suite::Thm11,
            "thm12" => Suite::Thm12,
            "thm32" => Suite::Thm32,
            "lemma24" => Suite::Lemma24,
            "prop21" => Suite::Prop21,
            "branching" => Suite::Branching,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

/// Default seed for the random periodic-sum sample.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Runs one named suite (or all of them) for `(n, k)`; `l` is the second
/// power for the branching suite, `lambda` an explicit input for `lemma24`.
pub fn run_suite(
    suite: Suite,
    n: u32,
    k: u32,
    l: u32,
    lambda: Option<&[i64]>,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>> {
    let periodic = || {
        let sample = match lambda {
            Some(l) => vec![l.to_vec()],
            None => periodic_reduction_samples(n, 50, DEFAULT_SEED),
        };
        check_periodic_sums(n, &sample, cfg)
    };
    Ok(match suite {
        Suite::Thm11 => vec![check_closed_forms(n, k, cfg)?],
        Suite::Thm12 => vec![check_structural(n, k, cfg)?],
        Suite::Thm32 => vec![check_group_determinant(n, k, cfg)?],
        Suite::Lemma24 => vec![periodic()?],
        Suite::Prop21 => vec![check_generating_function(n, k, cfg)?],
        Suite::Branching => vec![check_branching(n, k, l, cfg)?],
        Suite::All => {
            let mut v = vec![
                check_closed_forms(n, k, cfg)?,
                check_structural(n, k, cfg)?,
                check_group_determinant(n, k, cfg)?,
            ];
            if n <= PERIODIC_REDUCTION_MAX_N {
                v.push(periodic()?);
            }
            v.push(check_generating_function(n, k, cfg)?);
            v.push(check_branching(n, k, l, cfg)?);
            v
        }
    })
}

/// Evidence for the statement: for prime powers `n`, `m_λ(ζ(n, k)) ≠ 0` for
/// every `λ` in `Λ̃(n, k)`, and some `m_λ` vanishes otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::json::big_number")]
    pub total: BigUint,
    pub nonzero: u64,
    pub zero_coefficients: Vec<String>,
    pub is_prime_power: bool,
    pub consistent_with_conjecture: bool,
    pub elapsed_ms: u64,
}

/// Computes every `m_λ` over `Λ̃(n, k)` and classifies zero versus nonzero.
///
/// Only proven instances (`k = 1`, `n` prime) are asserted: a zero there is
/// returned as [`Error::ProvenClaimViolated`]. Everything else is reported.
pub fn explore_conjecture(n: u32, k: u32, cfg: &VerifyConfig) -> Result<ConjectureReport> {
    let started = Instant::now();
    let members: Vec<BoundedPartition> = partitions::lambda_tilde(n, k).collect();
    let values = cfg.map(&members, |l| cfg.dp_partition(l, k))?;
    let zero_coefficients: Vec<String> = members
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_zero())
        .map(|(l, _)| l.to_string())
        .collect();
    let total = partitions::lambda_tilde_size(n, k);
    if BigUint::from(members.len()) != total {
        return Err(Error::ProvenClaimViolated(format!(
            "enumerated {} members of Λ̃({n}, {k}) but the count formula gives {total}",
            members.len()
        )));
    }
    if k == 1 && partitions::is_prime(n as u64) && !zero_coefficients.is_empty() {
        return Err(Error::ProvenClaimViolated(format!(
            "m_λ(ζ({n}, 1)) = 0 for ({}) although {n} is prime",
            zero_coefficients[0]
        )));
    }
    let is_prime_power = partitions::prime_power(n as u64).is_some();
    Ok(ConjectureReport {
        n,
        k,
        nonzero: (members.len() - zero_coefficients.len()) as u64,
        consistent_with_conjecture: is_prime_power == zero_coefficients.is_empty(),
        zero_coefficients,
        is_prime_power,
        total,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn periodic_reduction_examples() {
        let (_, f) = check_periodic_sum_reduction(2, &[1, 1]).unwrap();
        assert!(f.is_empty());
        let (_, f) = check_periodic_sum_reduction(3, &[1, 2, 3]).unwrap();
        assert!(f.is_empty());
        let (i, f) = check_periodic_sum_reduction(3, &[1, 1, 1]).unwrap();
        assert_eq!(i, 4);
        assert!(f.is_empty());
        assert!(check_periodic_sum_reduction(3, &[1, 1, 2]).is_err());
        assert!(check_periodic_sum_reduction(8, &[1; 8]).is_err());
    }

    #[test]
    fn periodic_reduction_two_parts_by_hand() {
        // n = 2, λ = (1, 1): both permutations give 3; RHS is 2 f(1).
        let lhs = permutation_sum_distribution(&[1, 1], 2, 2);
        assert_eq!(lhs, vec![BigInt::from(0), BigInt::from(2)]);
        let rhs = permutation_sum_distribution(&[1, 1], 1, 2);
        assert_eq!(rhs, vec![BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn samples_are_admissible_and_reproducible() {
        let a = periodic_reduction_samples(5, 10, 7);
        assert_eq!(a, periodic_reduction_samples(5, 10, 7));
        assert!(a
            .iter()
            .all(|l| l.len() == 5 && l.iter().sum::<i64>() % 5 == 0));
    }

    #[test]
    fn generating_function_small() {
        for (n, k) in [(1, 1), (2, 1), (3, 1)] {
            let r = check_generating_function(n, k, &cfg()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn branching_examples() {
        let r = check_branching(2, 1, 1, &cfg()).unwrap();
        assert!(r.passed());
        let r = check_branching(3, 1, 1, &cfg()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances_checked, 28);
    }

    #[test]
    fn theorems_small() {
        let r = check_theorems(3, 1, &cfg()).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_theorems(2, 2, &cfg()).unwrap();
        assert!(r.passed(), "{r:?}");
        let two_blocks = r.checks.iter().find(|c| c.name == "two_blocks").unwrap();
        assert_eq!(two_blocks.instances_checked, 5);
    }

    #[test]
    fn conjecture_small() {
        let r = explore_conjecture(3, 1, &cfg()).unwrap();
        assert_eq!(r.total, BigUint::from(4u32));
        assert!(r.zero_coefficients.is_empty());
        assert!(r.consistent_with_conjecture);
        let r = explore_conjecture(4, 1, &cfg()).unwrap();
        assert_eq!(r.total, BigUint::from(10u32));
        assert!(r.is_prime_power);
    }

    #[test]
    fn reports_do_not_depend_on_jobs() {
        let one = check_theorems(4, 1, &cfg()).unwrap();
        let four = check_theorems(4, 1, &VerifyConfig { jobs: 4, ..cfg() }).unwrap();
        assert_eq!(one.to_json_without_timing(), four.to_json_without_timing());
    }

    #[test]
    fn suite_names() {
        assert_eq!("thm11".parse::<Suite>().unwrap(), Suite::Thm11);
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("thm99".parse::<Suite>().is_err());
    }
}

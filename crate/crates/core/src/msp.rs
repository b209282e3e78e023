//! Values of monomial symmetric polynomials at the root-of-unity point
//! `ζ(n, k) = (1, ζ_n, ζ_n^2, ..., ζ_n^(kn-1))`.
//!
//! Three independent routes compute `m_λ(ζ(n, k))`:
//!
//! * [`msp_value_naive`] sums over the distinct rearrangements of `λ`;
//! * [`msp_value_dp`] runs a dynamic program over residual multiplicities;
//! * [`closed_form`] dispatches to the explicit formulas for two-valued and
//!   few-part shapes.
//!
//! Parts are genuine integers: `λ = (0, 2)` and `λ = (2, 2)` are different
//! polynomials and, at `n = 2`, have different values (2 and 1). Only the
//! exponent of `ζ_n` is reduced modulo `n`. [`residue_collision_factor`]
//! gives the exact ratio between `m_λ` and `m_λ̄` when distinct parts share
//! a residue.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::{reduce_exponent, CyclotomicInt};
use crate::error::{Error, Result};
use crate::partitions::{self, binomial, canonical_residues, factorial, BoundedPartition};

/// Largest variable count accepted by the permutation oracle.
pub const NAIVE_MAX_VARS: usize = 9;

/// Default cap on the number of DP states `prod_v (λ[v] + 1)`.
pub const DEFAULT_DP_BUDGET: u128 = 10_000_000;

/// A partition together with the specialization `ζ(n, k)` it is evaluated at.
/// Variable `j` (0-based) carries `ζ_n^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalInstance {
    parts: Vec<i64>,
    n: u32,
    k: u32,
}

impl EvalInstance {
    /// Parts may be arbitrary integers; they are sorted. The length must be `kn`.
    pub fn new(mut parts: Vec<i64>, n: u32, k: u32) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::precondition("n and k must be positive"));
        }
        let len = (n as usize) * (k as usize);
        if parts.len() != len {
            return Err(Error::precondition(format!(
                "partition has {} parts, expected kn = {len}",
                parts.len()
            )));
        }
        parts.sort_unstable();
        Ok(EvalInstance { parts, n, k })
    }

    pub fn from_partition(lambda: &BoundedPartition, k: u32) -> Result<Self> {
        Self::new(lambda.as_i64(), lambda.bound(), k)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn canonical(&self) -> BoundedPartition {
        canonical_residues(&self.parts, self.n)
    }

    /// Distinct part values with their multiplicities, ascending.
    fn value_counts(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for EvalInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) at n={} k={}",
            partitions::format_parts(&self.parts),
            self.n,
            self.k
        )
    }
}

/// The specialization point `(1, ζ_n, ..., ζ_n^(kn-1))`.
pub fn specialization_point(n: u32, k: u32) -> Vec<CyclotomicInt> {
    (0..(n * k) as i64)
        .map(|j| CyclotomicInt::root_power(n, j))
        .collect()
}

/// Sum of `x^μ` over the distinct rearrangements `μ` of `λ`, evaluated at
/// `ζ(n, k)`. Exponential; guarded at [`NAIVE_MAX_VARS`] variables.
pub fn msp_value_naive(inst: &EvalInstance) -> Result<BigInt> {
    let len = inst.parts.len();
    if len > NAIVE_MAX_VARS {
        return Err(Error::BudgetExceeded {
            what: "naive permutation oracle (variables)",
            required: len as u128,
            budget: NAIVE_MAX_VARS as u128,
        });
    }
    let n = inst.n;
    let mut tally = vec![0u64; n as usize];
    let mut mu = inst.parts.clone();
    loop {
        let e: i64 = mu
            .iter()
            .enumerate()
            .map(|(j, &p)| p.rem_euclid(n as i64) * j as i64)
            .sum();
        tally[reduce_exponent(e, n)] += 1;
        if !partitions::next_permutation(&mut mu) {
            break;
        }
    }
    CyclotomicInt::from_coeffs(n, tally).to_integer()
}

/// Number of DP states `prod_v (λ[v] + 1)` over distinct part values.
pub fn dp_state_count(inst: &EvalInstance) -> u128 {
    inst.value_counts()
        .iter()
        .fold(1u128, |acc, &(_, c)| acc.saturating_mul(c as u128 + 1))
}

pub fn msp_value_dp(inst: &EvalInstance) -> Result<BigInt> {
    msp_value_dp_with_budget(inst, DEFAULT_DP_BUDGET)
}

/// Dynamic program over positions `j = 0..kn`. A state records how many
/// copies of each distinct part value have been placed; placing value `v` at
/// position `j` multiplies by `ζ_n^(v j)`. Equal parts share one counter, so
/// every distinct exponent vector is produced exactly once.
pub fn msp_value_dp_with_budget(inst: &EvalInstance, budget: u128) -> Result<BigInt> {
    let states = dp_state_count(inst);
    if states > budget {
        return Err(Error::BudgetExceeded {
            what: "multiset DP (states)",
            required: states,
            budget,
        });
    }
    let n = inst.n;
    let values = inst.value_counts();
    // Mixed-radix encoding of the placed-count vector.
    let mut stride = Vec::with_capacity(values.len());
    let mut s = 1usize;
    for &(_, c) in &values {
        stride.push(s);
        s *= c + 1;
    }
    let residues: Vec<i64> = values
        .iter()
        .map(|&(v, _)| v.rem_euclid(n as i64))
        .collect();

    let mut layer: HashMap<usize, CyclotomicInt> = HashMap::new();
    layer.insert(0, CyclotomicInt::one(n));
    for j in 0..inst.parts.len() as i64 {
        let mut next: HashMap<usize, CyclotomicInt> = HashMap::with_capacity(layer.len() * 2);
        for (&state, acc) in &layer {
            for (t, &(_, cap)) in values.iter().enumerate() {
                let placed = (state / stride[t]) % (cap + 1);
                if placed == cap {
                    continue;
                }
                next.entry(state + stride[t])
                    .or_insert_with(|| CyclotomicInt::zero(n))
                    .add_shifted(acc, residues[t] * j);
            }
        }
        layer = next;
    }
    debug_assert_eq!(layer.len(), 1);
    layer
        .into_values()
        .next()
        .unwrap_or_else(|| CyclotomicInt::zero(n))
        .to_integer()
}

/// `prod_r λ̄[r]! / prod_v λ[v]!`: the number of distinct rearrangements of
/// `λ` that collapse onto each distinct rearrangement of its residue form.
/// `m_λ(ζ(n, k)) = factor * m_λ̄(ζ(n, k))`; the factor is 1 exactly when
/// distinct parts are pairwise incongruent mod `n`.
pub fn residue_collision_factor(parts: &[i64], n: u32) -> BigUint {
    let canonical = canonical_residues(parts, n);
    let num = canonical.multiplicities().stabilizer_order();
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let mut den = BigUint::one();
    let mut run = 0u64;
    for (i, p) in sorted.iter().enumerate() {
        run += 1;
        if sorted.get(i + 1) != Some(p) {
            den *= factorial(run);
            run = 0;
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero());
    q
}

fn sign(odd: bool) -> BigInt {
    if odd {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// `m_λ` for `λ = (λ1^a, n^(kn-a))` with `n ∤ λ1`:
/// `(-1)^(a + ad/n) binom(kd, ad/n)` when `(n/d) | a` (with `d = gcd(λ1, n)`),
/// otherwise 0.
pub fn closed_form_two_blocks(lambda1: i64, a: u32, n: u32, k: u32) -> Result<BigInt> {
    if n == 0 || k == 0 {
        return Err(Error::precondition("n and k must be positive"));
    }
    if lambda1.rem_euclid(n as i64) == 0 {
        return Err(Error::precondition(format!(
            "two-block closed form needs n ∤ λ1 (λ1 = {lambda1}, n = {n})"
        )));
    }
    if a > k * n {
        return Err(Error::precondition(format!(
            "a = {a} exceeds kn = {}",
            k * n
        )));
    }
    let d = partitions::gcd(lambda1, n as i64) as u32;
    let period = n / d;
    if !a.is_multiple_of(period) {
        return Ok(BigInt::zero());
    }
    let t = a / period;
    let magnitude = BigInt::from(binomial((k * d) as i64, t as i64));
    Ok(sign((a + t) % 2 == 1) * magnitude)
}

/// For `λ = (λ1^a, λ2^(kn-a))` with `n ∤ λ2 - λ1`, returns the sign
/// `(-1)^(k(n+1)λ1)` and `λ' = ((λ2-λ1)^(kn-a), n^a)` in residue form, with
/// `m_λ = sign * m_λ'`.
pub fn reduce_two_distinct(
    lambda1: i64,
    lambda2: i64,
    a: u32,
    n: u32,
    k: u32,
) -> Result<(i32, EvalInstance)> {
    if n == 0 || k == 0 {
        return Err(Error::precondition("n and k must be positive"));
    }
    let diff = lambda2 - lambda1;
    if diff.rem_euclid(n as i64) == 0 {
        return Err(Error::precondition(format!(
            "reduction needs n ∤ λ2 - λ1 (λ1 = {lambda1}, λ2 = {lambda2}, n = {n})"
        )));
    }
    let len = k * n;
    if a > len {
        return Err(Error::precondition(format!("a = {a} exceeds kn = {len}")));
    }
    let odd = (k as i64 * (n as i64 + 1) * lambda1).rem_euclid(2) == 1;
    let mut parts = vec![diff; (len - a) as usize];
    parts.extend(std::iter::repeat_n(n as i64, a as usize));
    let reduced = EvalInstance::new(canonical_residues(&parts, n).as_i64(), n, k)?;
    Ok((if odd { -1 } else { 1 }, reduced))
}

/// The few-part shapes `(λ1, λ2, n^(kn-2))` and `(λ1, λ2, λ3, n^(kn-3))`
/// whose values are known explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternShape {
    /// Two non-identity parts, congruent: `-n/2`.
    PairEqual,
    /// Two non-identity parts, incongruent: `-n`.
    PairDistinct,
    /// Three equal non-identity parts: `n/3`.
    TripleEqual,
    /// Two equal and one different non-identity part: `n`.
    TripleTwoEqual,
    /// Three pairwise incongruent non-identity parts: `2n`.
    TripleDistinct,
}

/// A matched shape and its single-power (`k = 1`) coefficient in the group
/// determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub shape: PatternShape,
    pub base_value: BigInt,
}

/// Matches the residue form of `λ` against the few-part shapes. The residue
/// sum must be divisible by `n`; otherwise nothing matches.
pub fn match_pattern(inst: &EvalInstance) -> Option<PatternMatch> {
    let n = inst.n;
    let canonical = inst.canonical();
    let rest: Vec<u32> = canonical
        .parts()
        .iter()
        .copied()
        .filter(|&p| p != n)
        .collect();
    let sum: u32 = rest.iter().sum();
    if !sum.is_multiple_of(n) {
        return None;
    }
    let n_big = BigInt::from(n);
    let (shape, base_value) = match rest.as_slice() {
        [a, b] if a == b => (PatternShape::PairEqual, -(&n_big / 2u32)),
        [_, _] => (PatternShape::PairDistinct, -n_big),
        [a, b, c] if a == b && b == c => (PatternShape::TripleEqual, &n_big / 3u32),
        [a, b, c] if a == b || b == c => (PatternShape::TripleTwoEqual, n_big),
        [_, _, _] => (PatternShape::TripleDistinct, n_big * 2u32),
        _ => return None,
    };
    Some(PatternMatch { shape, base_value })
}

/// Value of `m_λ(ζ(n, k))` for the few-part shapes, or `None` when `λ` does
/// not match one.
///
/// The `k`-th power of the group determinant only gets these monomials from a
/// single factor (a lone non-identity variable never occurs), so the value is
/// `k` times the single-power coefficient, times the residue collision
/// factor of the raw parts.
pub fn mansfield_coefficient(inst: &EvalInstance) -> Option<BigInt> {
    let m = match_pattern(inst)?;
    let collision = BigInt::from(residue_collision_factor(&inst.parts, inst.n));
    Some(m.base_value * inst.k * collision)
}

/// Which explicit formula produced a [`closed_form`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormKind {
    TwoBlocks,
    TwoValueReduction,
    Pattern,
}

/// Tries the explicit formulas in turn. `None` when no formula applies.
pub fn closed_form(inst: &EvalInstance) -> Option<Result<(BigInt, ClosedFormKind)>> {
    let n = inst.n;
    let k = inst.k;
    let len = k * n;
    let canonical = inst.canonical();
    let counts = canonical.multiplicities();
    let present: Vec<u32> = (1..=n).filter(|&r| counts.get(r) > 0).collect();
    let collision = BigInt::from(residue_collision_factor(&inst.parts, n));

    let two_block = |value: u32, count: usize| -> Result<BigInt> {
        closed_form_two_blocks(value as i64, count as u32, n, k)
    };
    let result = match present.as_slice() {
        [only] if *only == n => Ok((BigInt::one(), ClosedFormKind::TwoBlocks)),
        [only] => two_block(*only, len as usize).map(|v| (v, ClosedFormKind::TwoBlocks)),
        [r, top] if *top == n => {
            two_block(*r, counts.get(*r)).map(|v| (v, ClosedFormKind::TwoBlocks))
        }
        [r1, r2] => {
            let a = counts.get(*r1) as u32;
            reduce_two_distinct(*r1 as i64, *r2 as i64, a, n, k).and_then(|(s, reduced)| {
                let lambda1 = partitions::residue(*r2 as i64 - *r1 as i64, n);
                let v = closed_form_two_blocks(lambda1 as i64, len - a, n, k)?;
                debug_assert_eq!(
                    reduced.canonical().multiplicities().get(lambda1),
                    (len - a) as usize
                );
                Ok((v * s, ClosedFormKind::TwoValueReduction))
            })
        }
        _ => {
            let v = mansfield_coefficient(inst)?;
            return Some(Ok((v, ClosedFormKind::Pattern)));
        }
    };
    Some(result.map(|(v, kind)| (v * collision, kind)))
}

/// `|λ| ≡ 0 (mod p)` for a length-`p` partition, `p` prime: the exact
/// criterion for `m_λ(ζ(p, 1)) ≠ 0`.
pub fn prime_nonvanishing(lambda: &[i64], p: u32) -> Result<bool> {
    if !partitions::is_prime(p as u64) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    if lambda.len() != p as usize {
        return Err(Error::precondition(format!(
            "partition has {} parts, expected p = {p}",
            lambda.len()
        )));
    }
    Ok(lambda.iter().sum::<i64>().rem_euclid(p as i64) == 0)
}

/// Residue form of `lλ`. Requires `gcd(l, n) = 1`.
pub fn scale_partition(lambda: &[i64], l: i64, n: u32) -> Result<BoundedPartition> {
    if partitions::gcd(l, n as i64) != 1 {
        return Err(Error::precondition(format!("gcd({l}, {n}) ≠ 1")));
    }
    let scaled: Vec<i64> = lambda.iter().map(|&p| p * l).collect();
    Ok(canonical_residues(&scaled, n))
}

/// `e_r` at the given points, by the sequential update of `prod_i (1 + t x_i)`.
pub fn elementary_symmetric(r: usize, points: &[CyclotomicInt], order: u32) -> CyclotomicInt {
    if r > points.len() {
        return CyclotomicInt::zero(order);
    }
    let mut e: Vec<CyclotomicInt> = (0..=r)
        .map(|j| {
            if j == 0 {
                CyclotomicInt::one(order)
            } else {
                CyclotomicInt::zero(order)
            }
        })
        .collect();
    for x in points {
        for j in (1..=r).rev() {
            let step = &e[j - 1] * x;
            e[j] = &e[j] + &step;
        }
    }
    e.swap_remove(r)
}

/// `e_λ = prod_i e_{λ_i}` at the given points.
pub fn e_product(lambda: &[u32], points: &[CyclotomicInt], order: u32) -> CyclotomicInt {
    lambda.iter().fold(CyclotomicInt::one(order), |acc, &r| {
        &acc * &elementary_symmetric(r as usize, points, order)
    })
}

/// Power sum `p_r = sum_i x_i^r`.
pub fn power_sum(r: u32, points: &[CyclotomicInt], order: u32) -> CyclotomicInt {
    points.iter().fold(CyclotomicInt::zero(order), |acc, x| {
        let pow = (0..r).fold(CyclotomicInt::one(order), |p, _| &p * x);
        &acc + &pow
    })
}

//! Powers of the group determinant of the cyclic group `Z/nZ`.
//!
//! Group elements are labelled `1..=n` with `n` the identity, so variable
//! `x_i` belongs to element `i` and `x_n` is the identity variable. The
//! coefficient of `x_λ = x_{λ_1} ... x_{λ_kn}` in `Θ(Z/nZ)^k` is
//! `m_λ(ζ(n, k))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::msp::{self, EvalInstance};
use crate::partitions::{self, binomial, BoundedPartition};
pub use crate::poly::ExponentVector;
use crate::poly::SparsePoly;

/// Largest `n` accepted by the permutation-sum determinant.
pub const LEIBNIZ_MAX_N: u32 = 8;

/// Default cap on the number of monomials of degree `kn` in `n` variables.
pub const DEFAULT_EXPANSION_BUDGET: u128 = 10_000_000;

impl ExponentVector {
    /// `x_λ` for a partition with parts in `1..=n`.
    pub fn from_partition(lambda: &BoundedPartition) -> Result<Self> {
        let n = lambda.bound() as usize;
        let mut e = ExponentVector::zero(n);
        for &p in lambda.parts() {
            if p == 0 {
                return Err(Error::precondition("part 0 has no variable"));
            }
            e.0[p as usize - 1] += 1;
        }
        Ok(e)
    }

    pub fn to_partition(&self) -> BoundedPartition {
        let parts = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize))
            .collect();
        BoundedPartition::new(parts, self.0.len() as u32).expect("parts within bound")
    }

    /// `sum_i i * exps[i]` with variables numbered from 1: the group product of the monomial.
    pub fn weighted_sum(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum()
    }
}

/// A homogeneous polynomial with integer coefficients, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<ExponentVector, BigInt>,
}

/// One exported term: the partition of the monomial and its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub lambda: String,
    #[serde(serialize_with = "crate::json::big_number")]
    pub coefficient: BigInt,
    #[serde(skip)]
    pub partition: BoundedPartition,
}

impl MonomialMap {
    pub fn from_poly(poly: SparsePoly, degree: u32) -> Result<Self> {
        if let Some(bad) = poly.terms().keys().find(|e| e.degree() != degree) {
            return Err(Error::precondition(format!(
                "term {:?} is not of degree {degree}",
                bad.0
            )));
        }
        Ok(MonomialMap {
            n_vars: poly.n_vars(),
            degree,
            terms: poly.into_terms(),
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn to_poly(&self) -> SparsePoly {
        let mut p = SparsePoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn mul(&self, other: &MonomialMap) -> MonomialMap {
        MonomialMap::from_poly(
            self.to_poly().mul(&other.to_poly()),
            self.degree + other.degree,
        )
        .expect("product of homogeneous polynomials is homogeneous")
    }

    /// Image under `x_i ↦ x_{l i mod n}` (labels in `1..=n`).
    pub fn relabel(&self, l: i64) -> Result<MonomialMap> {
        let n = self.n_vars as u32;
        if partitions::gcd(l, n as i64) != 1 {
            return Err(Error::precondition(format!("gcd({l}, {n}) ≠ 1")));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = ExponentVector::zero(self.n_vars);
                for (i, &p) in e.0.iter().enumerate() {
                    let target = partitions::residue(l * (i as i64 + 1), n) as usize - 1;
                    out.0[target] += p;
                }
                (out, c.clone())
            })
            .collect();
        Ok(MonomialMap {
            n_vars: self.n_vars,
            degree: self.degree,
            terms,
        })
    }

    /// Terms sorted by the lexicographic order of their partitions.
    pub fn records(&self) -> Vec<TermRecord> {
        let mut out: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let partition = e.to_partition();
                TermRecord {
                    lambda: partition.to_string(),
                    coefficient: c.clone(),
                    partition,
                }
            })
            .collect();
        out.sort_by(|a, b| a.partition.parts().cmp(b.partition.parts()));
        out
    }
}

impl fmt::Display for MonomialMap {
    /// Terms in partition order, e.g. `x1^3 - 3*x1*x2*x3 + x2^3 + x3^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let records = self.records();
        if records.is_empty() {
            return write!(f, "0");
        }
        for (i, r) in records.iter().enumerate() {
            let mut term = SparsePoly::zero(self.n_vars);
            term.add_term(
                ExponentVector::from_partition(&r.partition).expect("parts >= 1"),
                r.coefficient.clone(),
            );
            let s = term.to_string();
            match (i, s.strip_prefix('-')) {
                (0, _) => write!(f, "{s}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

/// `Θ(Z/nZ)` as the permutation sum
/// `sum_σ sgn(σ) prod_i x_{i - σ(i)}` (indices mod `n`, labels `1..=n`).
pub fn leibniz_determinant(n: u32) -> Result<MonomialMap> {
    if n == 0 {
        return Err(Error::precondition("n must be positive"));
    }
    if n > LEIBNIZ_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "permutation determinant (n)",
            required: n as u128,
            budget: LEIBNIZ_MAX_N as u128,
        });
    }
    let size = n as usize;
    let mut poly = SparsePoly::zero(size);
    let mut sigma: Vec<usize> = (1..=size).collect();
    loop {
        let inversions = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .filter(|&(i, j)| sigma[i] > sigma[j])
            .count();
        let mut e = ExponentVector::zero(size);
        for (i, &s) in sigma.iter().enumerate() {
            let g = partitions::residue(i as i64 + 1 - s as i64, n) as usize;
            e.0[g - 1] += 1;
        }
        let sgn = if inversions % 2 == 0 { 1 } else { -1 };
        poly.add_term(e, BigInt::from(sgn));
        if !partitions::next_permutation(&mut sigma) {
            break;
        }
    }
    MonomialMap::from_poly(poly, n)
}

/// Number of monomials of degree `kn` in `n` variables.
pub fn expansion_size(n: u32, k: u32) -> BigUint {
    binomial((k * n + n - 1) as i64, n as i64 - 1)
}

pub fn dedekind_expand(n: u32, k: u32) -> Result<MonomialMap> {
    dedekind_expand_with_budget(n, k, DEFAULT_EXPANSION_BUDGET)
}

/// `Θ(Z/nZ)^k` as the product of the `kn` linear forms
/// `sum_j ζ_n^(ij) x_j` (each character `i = 1..=n` taken `k` times),
/// multiplied in one at a time with coefficients in `Z[ζ_n]`, then read out
/// as integers.
pub fn dedekind_expand_with_budget(n: u32, k: u32, budget: u128) -> Result<MonomialMap> {
    if n == 0 || k == 0 {
        return Err(Error::precondition("n and k must be positive"));
    }
    let size = expansion_size(n, k);
    if size > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            what: "group determinant expansion (monomials)",
            required: u128::try_from(&size).unwrap_or(u128::MAX),
            budget,
        });
    }
    let vars = n as usize;
    let mut current: HashMap<ExponentVector, CyclotomicInt> = HashMap::new();
    current.insert(ExponentVector::zero(vars), CyclotomicInt::one(n));
    for _ in 0..k {
        for i in 1..=n as i64 {
            let mut next: HashMap<ExponentVector, CyclotomicInt> =
                HashMap::with_capacity(current.len() * vars);
            for (e, c) in &current {
                for j in 0..vars {
                    let mut key = e.clone();
                    key.0[j] += 1;
                    next.entry(key)
                        .or_insert_with(|| CyclotomicInt::zero(n))
                        .add_shifted(c, i * (j as i64 + 1));
                }
            }
            current = next;
        }
    }
    let mut poly = SparsePoly::zero(vars);
    for (e, c) in current {
        poly.add_term(e, c.to_integer()?);
    }
    MonomialMap::from_poly(poly, k * n)
}

type ExpansionCache = RwLock<HashMap<(u32, u32), Arc<MonomialMap>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Expands `Θ(Z/nZ)^k` once per process and keeps the result for
/// [`coefficient`] lookups.
pub fn dedekind_expand_cached(n: u32, k: u32, budget: u128) -> Result<Arc<MonomialMap>> {
    if let Some(m) = expansion_cache().read().unwrap().get(&(n, k)) {
        return Ok(Arc::clone(m));
    }
    let map = Arc::new(dedekind_expand_with_budget(n, k, budget)?);
    let mut cache = expansion_cache().write().unwrap();
    Ok(Arc::clone(cache.entry((n, k)).or_insert(map)))
}

/// Coefficient of `x_λ` in `Θ(Z/nZ)^k` for `λ` in `Λ(n, k)`. Uses a cached
/// expansion when one exists, otherwise evaluates `m_λ(ζ(n, k))` by DP.
pub fn coefficient(n: u32, k: u32, lambda: &BoundedPartition) -> Result<BigInt> {
    if lambda.bound() != n || lambda.len() != (k * n) as usize || !lambda.has_no_zero_parts() {
        return Err(Error::precondition(format!(
            "({lambda}) is not in Λ({n}, {k})"
        )));
    }
    if let Some(m) = expansion_cache().read().unwrap().get(&(n, k)) {
        return Ok(m.get(&ExponentVector::from_partition(lambda)?));
    }
    msp::msp_value_dp(&EvalInstance::from_partition(lambda, k)?)
}

/// Surviving-term count of `Θ(Z/nZ)^k` against the bound `|Λ̃(n, k)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermCount {
    pub n: u32,
    pub k: u32,
    pub nu: u64,
    #[serde(serialize_with = "crate::json::big_number")]
    pub lambda_tilde: BigUint,
    pub equal: bool,
}

pub fn count_terms(n: u32, k: u32) -> Result<TermCount> {
    count_terms_with_budget(n, k, DEFAULT_EXPANSION_BUDGET)
}

pub fn count_terms_with_budget(n: u32, k: u32, budget: u128) -> Result<TermCount> {
    let map = dedekind_expand_cached(n, k, budget)?;
    let nu = map.len() as u64;
    let lambda_tilde = partitions::lambda_tilde_size(n, k);
    debug_assert!(BigUint::from(nu) <= lambda_tilde);
    Ok(TermCount {
        n,
        k,
        nu,
        equal: BigUint::from(nu) == lambda_tilde,
        lambda_tilde,
    })
}

/// `(p - 1 + binom(2p - 1, p - 1)) / p`, the term count of `Θ(Z/pZ)`.
pub fn prime_term_count(p: u32) -> Result<BigUint> {
    if !partitions::is_prime(p as u64) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    let total = binomial(2 * p as i64 - 1, p as i64 - 1) + (p - 1);
    let (q, r) = total.div_rem(&BigUint::from(p));
    assert!(
        r.is_zero(),
        "prime term count is not an integer for p = {p}"
    );
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn leibniz_small() {
        let t3 = leibniz_determinant(3).unwrap();
        assert_eq!(t3.len(), 4);
        assert_eq!(t3.get(&ev(&[3, 0, 0])), big(1));
        assert_eq!(t3.get(&ev(&[0, 3, 0])), big(1));
        assert_eq!(t3.get(&ev(&[0, 0, 3])), big(1));
        assert_eq!(t3.get(&ev(&[1, 1, 1])), big(-3));
        assert_eq!(t3.to_string(), "x1^3 - 3*x1*x2*x3 + x2^3 + x3^3");

        let t1 = leibniz_determinant(1).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1.get(&ev(&[1])), big(1));

        let t2 = leibniz_determinant(2).unwrap();
        assert_eq!(t2.len(), 2);
        assert_eq!(t2.get(&ev(&[0, 2])), big(1));
        assert_eq!(t2.get(&ev(&[2, 0])), big(-1));
        assert!(leibniz_determinant(9).is_err());
    }

    #[test]
    fn dedekind_small() {
        assert_eq!(
            dedekind_expand(3, 1).unwrap(),
            leibniz_determinant(3).unwrap()
        );
        let t22 = dedekind_expand(2, 2).unwrap();
        assert_eq!(t22.get(&ev(&[2, 2])), big(-2));
        let t13 = dedekind_expand(1, 3).unwrap();
        assert_eq!(t13.len(), 1);
        assert_eq!(t13.get(&ev(&[3])), big(1));
        assert!(dedekind_expand_with_budget(4, 2, 10).is_err());
    }

    #[test]
    fn exponent_vectors_round_trip() {
        let lambda = BoundedPartition::new(vec![1, 1, 2, 4], 4).unwrap();
        let e = ExponentVector::from_partition(&lambda).unwrap();
        assert_eq!(e, ev(&[2, 1, 0, 1]));
        assert_eq!(e.to_partition(), lambda);
        assert_eq!(e.weighted_sum(), 8);
    }

    #[test]
    fn coefficients() {
        let bp = |v: &[u32], n| BoundedPartition::new(v.to_vec(), n).unwrap();
        assert_eq!(coefficient(3, 1, &bp(&[1, 2, 3], 3)).unwrap(), big(-3));
        assert_eq!(coefficient(3, 1, &bp(&[3, 3, 3], 3)).unwrap(), big(1));
        assert_eq!(coefficient(2, 1, &bp(&[1, 2], 2)).unwrap(), big(0));
        assert!(coefficient(3, 1, &bp(&[0, 3, 3], 3)).is_err());
        assert!(coefficient(3, 1, &bp(&[3, 3], 3)).is_err());
        // Cached route agrees with the DP route.
        dedekind_expand_cached(3, 1, DEFAULT_EXPANSION_BUDGET).unwrap();
        assert_eq!(coefficient(3, 1, &bp(&[1, 2, 3], 3)).unwrap(), big(-3));
        assert_eq!(coefficient(3, 1, &bp(&[1, 1, 2], 3)).unwrap(), big(0));
    }

    #[test]
    fn counts() {
        let c = count_terms(3, 1).unwrap();
        assert_eq!(
            (c.nu, c.lambda_tilde.clone(), c.equal),
            (4, BigUint::from(4u32), true)
        );
        let c = count_terms(2, 1).unwrap();
        assert_eq!((c.nu, c.equal), (2, true));
        assert_eq!(prime_term_count(3).unwrap(), BigUint::from(4u32));
        assert_eq!(prime_term_count(2).unwrap(), BigUint::from(2u32));
        assert_eq!(prime_term_count(5).unwrap(), BigUint::from(26u32));
        assert!(prime_term_count(6).is_err());
    }

    #[test]
    fn records_sorted_by_partition() {
        let recs = dedekind_expand(3, 1).unwrap().records();
        let names: Vec<&str> = recs.iter().map(|r| r.lambda.as_str()).collect();
        assert_eq!(names, ["1,1,1", "1,2,3", "2,2,2", "3,3,3"]);
        let json = serde_json::to_string(&recs).unwrap();
        assert_eq!(
            json,
            r#"[{"lambda":"1,1,1","coefficient":1},{"lambda":"1,2,3","coefficient":-3},{"lambda":"2,2,2","coefficient":1},{"lambda":"3,3,3","coefficient":1}]"#
        );
    }

    #[test]
    fn relabel_requires_unit() {
        let t = dedekind_expand(4, 1).unwrap();
        assert!(t.relabel(2).is_err());
        assert_eq!(t.relabel(3).unwrap(), t);
    }
}

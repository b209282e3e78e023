//! Bounded partitions and the counting functions around them.
//!
//! Partitions are stored nondecreasing: `0 <= parts[0] <= parts[1] <= ... <= n`.
//! `Λ(n, k)` denotes partitions of length `kn` with every part in `1..=n`;
//! the zero-padded family allows parts in `0..=n`. Part value `0` and part
//! value `n` are kept distinct.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A nondecreasing sequence of parts in `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundedPartition {
    parts: Vec<u32>,
    bound: u32,
}

impl BoundedPartition {
    /// Sorts `parts` and checks that every part lies in `0..=bound`.
    pub fn new(mut parts: Vec<u32>, bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::precondition("partition bound must be positive"));
        }
        if let Some(p) = parts.iter().find(|&&p| p > bound) {
            return Err(Error::precondition(format!(
                "part {p} exceeds bound {bound}"
            )));
        }
        parts.sort_unstable();
        Ok(BoundedPartition { parts, bound })
    }

    pub fn empty(bound: u32) -> Self {
        BoundedPartition {
            parts: Vec::new(),
            bound,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`, the part sum.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// True when every part is in `1..=bound`, i.e. the partition lies in `Λ(bound, len/bound)`.
    pub fn has_no_zero_parts(&self) -> bool {
        self.parts.first().is_none_or(|&p| p >= 1)
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }

    pub fn multiplicities(&self) -> Multiplicities {
        let mut counts = vec![0usize; self.bound as usize + 1];
        for &p in &self.parts {
            counts[p as usize] += 1;
        }
        Multiplicities { counts }
    }

    /// Multiset union, sorted.
    pub fn union(&self, other: &BoundedPartition) -> Result<BoundedPartition> {
        if self.bound != other.bound {
            return Err(Error::precondition("partitions have different bounds"));
        }
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        BoundedPartition::new(parts, self.bound)
    }
}

impl fmt::Display for BoundedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_parts(&self.parts))
    }
}

/// `λ[i]`: how many parts equal `i`, for `i` in `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    counts: Vec<usize>,
}

impl Multiplicities {
    pub fn get(&self, value: u32) -> usize {
        self.counts.get(value as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn weighted_total(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i as u64 * c as u64)
            .sum()
    }

    /// Order of the stabilizer of λ in the symmetric group: `prod_i λ[i]!`.
    pub fn stabilizer_order(&self) -> BigUint {
        self.counts.iter().map(|&c| factorial(c as u64)).product()
    }
}

/// Comma-separated text of the parts, e.g. `1,1,2,3`.
pub fn format_parts<T: fmt::Display>(parts: &[T]) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Lenient partition text parser: comma-separated integers in any order,
/// whitespace tolerated, negatives allowed. The result is sorted.
pub fn parse_parts(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = text
        .split(',')
        .map(|s| i64::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad part {s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    parts.sort_unstable();
    Ok(parts)
}

/// Streams every nondecreasing sequence of length `len` with parts in
/// `1..=n` (or `0..=n` when `allow_zero`), in lexicographic order.
pub fn enumerate(n: u32, len: usize, allow_zero: bool) -> Partitions {
    assert!(n >= 1, "bound must be positive");
    let lo = if allow_zero { 0 } else { 1 };
    Partitions {
        next: Some(vec![lo; len]),
        bound: n,
    }
}

/// Iterator returned by [`enumerate`].
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<u32>>,
    bound: u32,
}

impl Iterator for Partitions {
    type Item = BoundedPartition;

    fn next(&mut self) -> Option<BoundedPartition> {
        let current = self.next.take()?;
        if let Some(i) = current.iter().rposition(|&p| p < self.bound) {
            let mut succ = current.clone();
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|p| *p = v);
            self.next = Some(succ);
        }
        Some(BoundedPartition {
            parts: current,
            bound: self.bound,
        })
    }
}

/// `Λ(n, k)` filtered to `|λ| ≡ 0 (mod n)`.
pub fn lambda_tilde(n: u32, k: u32) -> impl Iterator<Item = BoundedPartition> {
    enumerate(n, (k * n) as usize, false).filter(move |l| l.size() % n as u64 == 0)
}

/// Rearranges `v` into its lexicographic successor; returns false once `v`
/// is the last (nonincreasing) arrangement. Starting from a sorted slice this
/// visits every distinct rearrangement exactly once.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Residue in `1..=n` of `a` modulo `n`.
pub fn residue(a: i64, n: u32) -> u32 {
    ((a - 1).rem_euclid(n as i64) + 1) as u32
}

/// Maps every part to its representative in `1..=n`, then sorts.
pub fn canonical_residues(parts: &[i64], n: u32) -> BoundedPartition {
    let mut out: Vec<u32> = parts.iter().map(|&p| residue(p, n)).collect();
    out.sort_unstable();
    BoundedPartition {
        parts: out,
        bound: n,
    }
}

/// `λ ⊲ μ`: `λ[a] <= μ[a]` for every part value `a`.
pub fn triangle_order(lambda: &BoundedPartition, mu: &BoundedPartition) -> bool {
    if lambda.bound != mu.bound {
        return false;
    }
    let (ml, mm) = (lambda.multiplicities(), mu.multiplicities());
    (0..=lambda.bound).all(|a| ml.get(a) <= mm.get(a))
}

/// `μ \ λ`: the multiset difference. Requires `λ ⊲ μ`.
pub fn remove(mu: &BoundedPartition, lambda: &BoundedPartition) -> Result<BoundedPartition> {
    if !triangle_order(lambda, mu) {
        return Err(Error::precondition(format!(
            "({lambda}) is not contained in ({mu})"
        )));
    }
    let mut counts = lambda.multiplicities().counts;
    let mut parts = Vec::with_capacity(mu.len() - lambda.len());
    for &p in &mu.parts {
        let c = &mut counts[p as usize];
        if *c > 0 {
            *c -= 1;
        } else {
            parts.push(p);
        }
    }
    Ok(BoundedPartition {
        parts,
        bound: mu.bound,
    })
}

/// Componentwise `λ_i <= μ_i`, after left-padding the shorter with zeros.
pub fn inclusion_order(lambda: &[u32], mu: &[u32]) -> bool {
    let len = lambda.len().max(mu.len());
    let pad = |p: &[u32]| -> Vec<u32> {
        let mut v = vec![0; len - p.len()];
        v.extend_from_slice(p);
        v
    };
    pad(lambda).iter().zip(pad(mu)).all(|(a, b)| *a <= b)
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.gcd(&b).unsigned_abs()
}

/// Ascending divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `Some((p, m))` when `n = p^m` with `p` prime and `m >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = 0;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `binom(a, b)`, zero when `b < 0`, `b > a` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Dimension `a(n, m)` of degree-`m` invariants of the regular
/// representation of the cyclic group of order `n`:
/// `(1/(n+m)) sum_{d | gcd(n,m)} binom((n+m)/d, n/d) phi(d)`.
pub fn cyclic_invariant_dimension(n: u64, m: u64) -> BigUint {
    let g = n.gcd(&m);
    let sum: BigUint = divisors(g)
        .into_iter()
        .map(|d| binomial(((n + m) / d) as i64, (n / d) as i64) * euler_phi(d))
        .sum();
    let (q, r) = sum.div_rem(&BigUint::from(n + m));
    assert!(r.is_zero(), "a({n}, {m}) is not an integer");
    q
}

/// `|Λ̃(n, k)| = (1/n) sum_{d | n} binom(dk + d - 1, d - 1) phi(n/d)`.
pub fn lambda_tilde_size(n: u32, k: u32) -> BigUint {
    assert!(n >= 1 && k >= 1, "n and k must be positive");
    let (n64, k64) = (n as u64, k as u64);
    let sum: BigUint = divisors(n64)
        .into_iter()
        .map(|d| binomial((d * k64 + d - 1) as i64, (d - 1) as i64) * euler_phi(n64 / d))
        .sum();
    let (q, r) = sum.div_rem(&BigUint::from(n64));
    assert!(r.is_zero(), "|Λ̃({n}, {k})| formula is not an integer");
    debug_assert_eq!(q, cyclic_invariant_dimension(n64, k64 * n64));
    q
}

/// Convenience for small counts.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bp(parts: &[u32], n: u32) -> BoundedPartition {
        BoundedPartition::new(parts.to_vec(), n).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(3, 3, false).count(), 10);
        let two: Vec<Vec<u32>> = enumerate(2, 2, false).map(|p| p.parts).collect();
        assert_eq!(two, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        let tilde: Vec<Vec<u32>> = lambda_tilde(3, 1).map(|p| p.parts).collect();
        assert_eq!(
            tilde,
            vec![vec![1, 1, 1], vec![1, 2, 3], vec![2, 2, 2], vec![3, 3, 3]]
        );
    }

    #[test]
    fn enumerate_counts_match_binomials() {
        for n in 1..=6u32 {
            for len in 1..=12usize {
                let plain = enumerate(n, len, false).count() as u64;
                let padded = enumerate(n, len, true).count() as u64;
                let expect_plain = binomial((len + n as usize - 1) as i64, n as i64 - 1);
                let expect_padded = binomial((len + n as usize) as i64, n as i64);
                assert_eq!(BigUint::from(plain), expect_plain, "n={n} len={len}");
                assert_eq!(BigUint::from(padded), expect_padded, "n={n} len={len}");
            }
        }
    }

    #[test]
    fn enumerate_is_strictly_lexicographic() {
        let all: Vec<BoundedPartition> = enumerate(4, 5, true).collect();
        assert!(all.windows(2).all(|w| w[0].parts < w[1].parts));
    }

    #[test]
    fn canonical_residue_examples() {
        assert_eq!(canonical_residues(&[-1, 0, 7], 3).parts(), &[1, 2, 3]);
        assert_eq!(canonical_residues(&[5, 5], 2).parts(), &[1, 1]);
        assert_eq!(canonical_residues(&[4, 4, 4, 4], 4).parts(), &[4, 4, 4, 4]);
    }

    #[test]
    fn triangle_order_examples() {
        let l = bp(&[1, 2, 3], 3);
        let m = bp(&[1, 1, 2, 3, 3, 3], 3);
        assert!(triangle_order(&l, &m));
        assert_eq!(remove(&m, &l).unwrap().parts(), &[1, 3, 3]);
        assert!(!triangle_order(&bp(&[2, 2], 3), &l));
        assert!(remove(&l, &bp(&[2, 2], 3)).is_err());
        assert!(remove(&m, &m).unwrap().is_empty());
    }

    #[test]
    fn inclusion_examples() {
        assert!(inclusion_order(&[0, 1, 2], &[1, 1, 3]));
        assert!(!inclusion_order(&[0, 2, 2], &[1, 1, 3]));
        assert!(inclusion_order(&[1, 2], &[1, 2]));
        assert!(inclusion_order(&[2], &[1, 3]));
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(
            bp(&[1, 1, 2, 2, 2], 2).multiplicities().stabilizer_order(),
            BigUint::from(12u32)
        );
    }

    #[test]
    fn lambda_tilde_examples() {
        assert_eq!(lambda_tilde_size(3, 1), BigUint::from(4u32));
        assert_eq!(lambda_tilde_size(2, 1), BigUint::from(2u32));
        assert_eq!(lambda_tilde_size(6, 1), BigUint::from(80u32));
        assert_eq!(lambda_tilde_size(3, 2), BigUint::from(10u32));
    }

    #[test]
    fn lambda_tilde_matches_brute_force() {
        for n in 1..=8u32 {
            for k in 1..=2u32 {
                let brute = lambda_tilde(n, k).count() as u64;
                assert_eq!(lambda_tilde_size(n, k), BigUint::from(brute), "n={n} k={k}");
                assert_eq!(
                    cyclic_invariant_dimension(n as u64, (k * n) as u64),
                    BigUint::from(brute)
                );
            }
        }
    }

    #[test]
    fn remove_then_union_round_trips() {
        for n in 1..=4u32 {
            for len in 1..=(8 / n as usize) * n as usize {
                let all: Vec<BoundedPartition> = enumerate(n, len, false).collect();
                for mu in &all {
                    for sub in 0..=len {
                        for lambda in enumerate(n, sub, false) {
                            if triangle_order(&lambda, mu) {
                                let rest = remove(mu, &lambda).unwrap();
                                assert_eq!(rest.len(), len - sub);
                                assert_eq!(&rest.union(&lambda).unwrap(), mu);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_is_lenient_and_sorted() {
        assert_eq!(parse_parts("3, 1,2,1").unwrap(), vec![1, 1, 2, 3]);
        assert_eq!(parse_parts("-1,0").unwrap(), vec![-1, 0]);
        assert!(parse_parts("1,x").is_err());
        assert_eq!(format_parts(&[1, 1, 2]), "1,1,2");
    }

    fn pair() -> impl Strategy<Value = (BoundedPartition, BoundedPartition)> {
        (1u32..=5, 1usize..=8).prop_flat_map(|(n, len)| {
            let part = move || {
                prop::collection::vec(1..=n, len)
                    .prop_map(move |v| BoundedPartition::new(v, n).unwrap())
            };
            (part(), part())
        })
    }

    proptest! {
        #[test]
        fn canonical_residues_idempotent(n in 1u32..=9, parts in prop::collection::vec(-50i64..50, 0..10)) {
            let once = canonical_residues(&parts, n);
            let twice = canonical_residues(&once.as_i64(), n);
            prop_assert_eq!(&once, &twice);
            let s: i64 = parts.iter().sum();
            prop_assert_eq!((once.size() as i64 - s).rem_euclid(n as i64), 0);
        }

        #[test]
        fn triangle_order_is_part_count_domination((l, m) in pair()) {
            let by_counts = (1..=l.bound()).all(|a| {
                l.parts().iter().filter(|&&p| p == a).count()
                    <= m.parts().iter().filter(|&&p| p == a).count()
            });
            prop_assert_eq!(triangle_order(&l, &m), by_counts);
            prop_assert_eq!(remove(&m, &l).is_ok(), by_counts);
        }
    }
}

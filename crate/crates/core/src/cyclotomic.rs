//! Exact arithmetic in the ring of cyclotomic integers `Z[zeta_n]`.
//!
//! Values are held in the working representation `Z[x]/(x^n - 1)`: a vector of
//! `n` coefficients where index `j` is the coefficient of `zeta_n^j`. Ring
//! operations are cyclic convolutions on that vector. Equality, zero tests and
//! integer readout reduce modulo the cyclotomic polynomial `Phi_n`, whose
//! powers `1, zeta, ..., zeta^(phi(n)-1)` form a basis of `Z[zeta_n]`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// Index `i` holds the coefficient of `x^i`. The highest stored coefficient is
/// nonzero; the zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Long division by a monic divisor. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[top]);
            if lead.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                rem[shift + i] -= &lead * c;
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{abs}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{abs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn phi_table() -> &'static RwLock<HashMap<u32, Arc<IntPolynomial>>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<IntPolynomial>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial `Phi_n`, memoized per process.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` by exact division; a
/// nonzero remainder is an implementation bug and panics.
pub fn cyclotomic_poly(n: u32) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = phi_table().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in crate::partitions::divisors(n as u64) {
        if d as u32 == n {
            continue;
        }
        let (q, r) = acc.div_rem_monic(&cyclotomic_poly(d as u32));
        assert!(r.is_zero(), "Phi_{d} does not divide x^{n} - 1 exactly");
        acc = q;
    }
    let phi = Arc::new(acc);
    let mut table = phi_table().write().unwrap();
    Arc::clone(table.entry(n).or_insert(phi))
}

/// An element of `Z[zeta_n]` in the working representation `Z[x]/(x^n - 1)`.
#[derive(Clone, Debug)]
pub struct CyclotomicInt {
    order: u32,
    residue_coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "order must be positive");
        CyclotomicInt {
            order,
            residue_coeffs: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, BigInt::one())
    }

    pub fn from_integer(order: u32, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.residue_coeffs[0] = value.into();
        z
    }

    /// Builds a value from coefficients of `zeta^0, zeta^1, ...`; indices past
    /// `order` wrap around.
    pub fn from_coeffs<T: Into<BigInt>>(order: u32, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut z = Self::zero(order);
        for (i, c) in coeffs.into_iter().enumerate() {
            z.residue_coeffs[i % order as usize] += c.into();
        }
        z
    }

    /// `zeta_n^e`.
    pub fn root_power(order: u32, e: i64) -> Self {
        let mut z = Self::zero(order);
        z.residue_coeffs[reduce_exponent(e, order)] = BigInt::one();
        z
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn residue_coeffs(&self) -> &[BigInt] {
        &self.residue_coeffs
    }

    fn check_order(&self, other: &CyclotomicInt) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn try_add(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        self.check_order(other)?;
        let residue_coeffs = self
            .residue_coeffs
            .iter()
            .zip(&other.residue_coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicInt {
            order: self.order,
            residue_coeffs,
        })
    }

    /// Cyclic convolution of the residue vectors.
    pub fn try_mul(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        self.check_order(other)?;
        let n = self.order as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.residue_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.residue_coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CyclotomicInt {
            order: self.order,
            residue_coeffs: out,
        })
    }

    pub fn scale(&self, m: &BigInt) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            residue_coeffs: self.residue_coeffs.iter().map(|c| c * m).collect(),
        }
    }

    /// `self += other * zeta^shift`. This is the inner step of every
    /// expansion and evaluation loop.
    pub fn add_shifted(&mut self, other: &CyclotomicInt, shift: i64) {
        assert_eq!(self.order, other.order, "order mismatch in add_shifted");
        let n = self.order as usize;
        let s = reduce_exponent(shift, self.order);
        for (i, c) in other.residue_coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.residue_coeffs[(i + s) % n] += c;
            }
        }
    }

    /// Remainder of the residue polynomial modulo `Phi_n`, padded to exactly
    /// `phi(n)` entries: coordinates in the basis `1, zeta, ..., zeta^(phi(n)-1)`.
    pub fn canonical_form(&self) -> Vec<BigInt> {
        let phi = cyclotomic_poly(self.order);
        let width = phi.degree().expect("Phi_n is nonzero");
        let (_, rem) = IntPolynomial::new(self.residue_coeffs.clone()).div_rem_monic(&phi);
        let mut out = rem.coeffs;
        out.resize(width, BigInt::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_form().iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.canonical_form().iter().skip(1).all(Zero::is_zero)
    }

    /// Integer readout. Fails with [`Error::IntegralityViolation`] when the
    /// value does not lie in `Z`.
    pub fn to_integer(&self) -> Result<BigInt> {
        let mut canonical = self.canonical_form();
        if canonical.iter().skip(1).all(Zero::is_zero) {
            Ok(canonical.swap_remove(0))
        } else {
            Err(Error::IntegralityViolation {
                order: self.order,
                canonical,
            })
        }
    }
}

/// `e mod n` as an index in `0..n`.
pub fn reduce_exponent(e: i64, n: u32) -> usize {
    e.rem_euclid(n as i64) as usize
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.canonical_form() == other.canonical_form()
    }
}

impl Eq for CyclotomicInt {}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    /// Panics on order mismatch; use [`CyclotomicInt::try_add`] to recover.
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    /// Panics on order mismatch; use [`CyclotomicInt::try_mul`] to recover.
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            residue_coeffs: self.residue_coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canonical = self.canonical_form();
        let body: Vec<String> = canonical.iter().map(ToString::to_string).collect();
        write!(f, "Z[zeta_{}]({})", self.order, body.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(*cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(6).to_string(), "x^2 - x + 1");
    }

    #[test]
    fn phi_six_by_explicit_long_division() {
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1)), done independently here.
        let denom = &(&IntPolynomial::from_i64(&[-1, 1]) * &IntPolynomial::from_i64(&[1, 1]))
            * &IntPolynomial::from_i64(&[1, 1, 1]);
        let (q, r) = IntPolynomial::x_pow_minus_one(6).div_rem_monic(&denom);
        assert!(r.is_zero());
        assert_eq!(q, IntPolynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn divisor_product_is_x_pow_minus_one() {
        for n in 1..=30u32 {
            let prod = crate::partitions::divisors(n as u64)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, d| {
                    &acc * &cyclotomic_poly(d as u32)
                });
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
            assert_eq!(
                cyclotomic_poly(n).degree(),
                Some(crate::partitions::euler_phi(n as u64) as usize)
            );
        }
    }

    #[test]
    fn root_powers() {
        assert_eq!(CyclotomicInt::root_power(3, 0), CyclotomicInt::one(3));
        assert_eq!(
            CyclotomicInt::root_power(3, 4),
            CyclotomicInt::root_power(3, 1)
        );
        let z2 = CyclotomicInt::root_power(2, 1);
        assert_eq!(z2.to_integer().unwrap(), big(-1));
        assert_eq!(z2.canonical_form(), ints(&[-1]));
    }

    #[test]
    fn ring_examples() {
        let sum = &CyclotomicInt::root_power(2, 1) + &CyclotomicInt::one(2);
        assert!(sum.is_zero());
        let prod = &CyclotomicInt::root_power(3, 1) * &CyclotomicInt::root_power(3, 2);
        assert_eq!(prod, CyclotomicInt::one(3));
        let mut all = CyclotomicInt::zero(3);
        for j in 1..=3 {
            all = &all + &CyclotomicInt::root_power(3, j);
        }
        assert!(all.is_zero());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(CyclotomicInt::zero(7).canonical_form(), ints(&[0; 6]));
        assert_eq!(
            CyclotomicInt::root_power(4, 2).canonical_form(),
            ints(&[-1, 0])
        );
        let s = CyclotomicInt::from_coeffs(3, [1, 1, 1]);
        assert_eq!(s.canonical_form(), ints(&[0, 0]));
    }

    #[test]
    fn integer_readout() {
        assert!((&CyclotomicInt::one(2) + &CyclotomicInt::root_power(2, 1)).is_zero());
        let z3 = CyclotomicInt::root_power(3, 1);
        assert!(!z3.is_integer());
        assert!(matches!(
            z3.to_integer(),
            Err(Error::IntegralityViolation { order: 3, .. })
        ));
        let v = CyclotomicInt::root_power(6, 3).scale(&big(3));
        assert_eq!(v.to_integer().unwrap(), big(-3));
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = CyclotomicInt::one(3);
        let b = CyclotomicInt::one(4);
        assert_eq!(
            a.try_add(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn multiplicative_order_of_root_powers() {
        for n in 1..=12u32 {
            for e in 0..(2 * n as i64) {
                let g = num_integer::gcd(e, n as i64) as u32;
                let expected = n / g;
                let z = CyclotomicInt::root_power(n, e);
                let mut pow = z.clone();
                let mut found = 1;
                while !(&pow - &CyclotomicInt::one(n)).is_zero() {
                    pow = &pow * &z;
                    found += 1;
                }
                assert_eq!(found, expected, "n={n} e={e}");
            }
        }
    }

    // Float probe: only used here as an independent sanity check.
    fn float_eval(z: &CyclotomicInt) -> (f64, f64) {
        let n = z.order() as f64;
        z.residue_coeffs()
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let c: f64 = c.to_string().parse().unwrap();
                let t = 2.0 * std::f64::consts::PI * j as f64 / n;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    fn cyclo(order: u32) -> impl Strategy<Value = CyclotomicInt> {
        prop::collection::vec(-20i64..20, order as usize)
            .prop_map(move |v| CyclotomicInt::from_coeffs(order, v))
    }

    fn triple() -> impl Strategy<Value = (CyclotomicInt, CyclotomicInt, CyclotomicInt)> {
        (1u32..=12).prop_flat_map(|n| (cyclo(n), cyclo(n), cyclo(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms_hold_canonically((a, b, c) in triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn canonicalization_commutes_with_ring_ops((a, b, _c) in triple()) {
            let n = a.order();
            let ca = CyclotomicInt::from_coeffs(n, a.canonical_form());
            let cb = CyclotomicInt::from_coeffs(n, b.canonical_form());
            prop_assert_eq!((&ca * &cb).canonical_form(), (&a * &b).canonical_form());
            prop_assert_eq!((&ca + &cb).canonical_form(), (&a + &b).canonical_form());
        }

        #[test]
        fn zero_test_agrees_with_float_probe(n in 1u32..=12, v in prop::collection::vec(-3i64..=3, 12)) {
            let z = CyclotomicInt::from_coeffs(n, v.into_iter().take(n as usize));
            let (re, im) = float_eval(&z);
            prop_assert_eq!(z.is_zero(), re.abs() < 1e-9 && im.abs() < 1e-9);
        }

        #[test]
        fn vanishing_sums_agree_with_float_probe(n in 1u32..=12, mask in 0u32..4096) {
            // Subset sums of roots of unity hit zero often enough to exercise both branches.
            let z = CyclotomicInt::from_coeffs(n, (0..n).map(|j| ((mask >> j) & 1) as i64));
            let (re, im) = float_eval(&z);
            prop_assert_eq!(z.is_zero(), re.abs() < 1e-9 && im.abs() < 1e-9);
        }
    }
}

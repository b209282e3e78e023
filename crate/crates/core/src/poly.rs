//! Sparse multivariate polynomials over `Z`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector: `exps[i]` is the power of variable `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n_vars: usize) -> Self {
        ExponentVector(vec![0; n_vars])
    }

    pub fn unit(n_vars: usize, var: usize) -> Self {
        let mut e = Self::zero(n_vars);
        e.0[var] = 1;
        e
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A polynomial with integer coefficients in a fixed number of variables.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    n_vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl SparsePoly {
    pub fn zero(n_vars: usize) -> Self {
        SparsePoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, BigInt::one())
    }

    pub fn constant(n_vars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(ExponentVector::zero(n_vars), c);
        p
    }

    pub fn variable(n_vars: usize, var: usize) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(ExponentVector::unit(n_vars, var), BigInt::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<ExponentVector, BigInt> {
        self.terms
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        assert_eq!(e.n_vars(), self.n_vars, "exponent vector has wrong arity");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SparsePoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, m: &BigInt) -> SparsePoly {
        let mut out = SparsePoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * m);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = SparsePoly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        (0..k).fold(SparsePoly::one(self.n_vars), |acc, _| acc.mul(self))
    }

    /// Total degree shared by every term, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(ExponentVector::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

/// Elementary symmetric polynomial `e_r(x_1, ..., x_n)` as a formal polynomial.
pub fn elementary_symmetric_poly(r: usize, n_vars: usize) -> SparsePoly {
    // Coefficients of t^0..t^r in prod_i (1 + t x_i).
    let mut e: Vec<SparsePoly> = (0..=r)
        .map(|j| {
            if j == 0 {
                SparsePoly::one(n_vars)
            } else {
                SparsePoly::zero(n_vars)
            }
        })
        .collect();
    for i in 0..n_vars {
        let x = SparsePoly::variable(n_vars, i);
        for j in (1..=r).rev() {
            let step = e[j - 1].mul(&x);
            e[j].add_assign(&step);
        }
    }
    e.swap_remove(r)
}

/// `e_λ = prod_i e_{λ_i}` for a partition with parts given as degrees.
pub fn elementary_product_poly(parts: &[u32], n_vars: usize) -> SparsePoly {
    parts.iter().fold(SparsePoly::one(n_vars), |acc, &r| {
        acc.mul(&elementary_symmetric_poly(r as usize, n_vars))
    })
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(v, &p)| {
                        if p == 1 {
                            format!("x{}", v + 1)
                        } else {
                            format!("x{}^{}", v + 1, p)
                        }
                    })
                    .collect();
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

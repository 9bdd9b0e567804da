//! The Chow ring of `P^n x P^n`: polynomials in `H (x) 1` and `1 (x) H`
//! modulo `H^{n+1}` in each factor, with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPClass {
    n: u32,
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PPClass {
    pub fn zero(n: u32) -> Self {
        PPClass { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        let mut x = PPClass::zero(n);
        x.add_term(0, 0, BigRational::one());
        x
    }

    /// `c * H^i (x) H^j`; zero if either exponent exceeds `n`.
    pub fn monomial(n: u32, i: u32, j: u32, c: BigRational) -> Self {
        let mut x = PPClass::zero(n);
        x.add_term(i, j, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(n: u32, terms: I) -> Self {
        let mut x = PPClass::zero(n);
        for ((i, j), c) in terms {
            x.add_term(i, j, c);
        }
        x
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if i > self.n || j > self.n || c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PPClass) -> Result<PPClass> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> PPClass {
        PPClass::from_terms(self.n, self.terms.iter().map(|(&ij, c)| (ij, c * k)))
    }

    /// Exchanges the two factors.
    pub fn swap(&self) -> PPClass {
        PPClass::from_terms(self.n, self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check(&self, other: &PPClass) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }
}

/// Product, discarding every monomial with an exponent above `n`.
pub fn pp_mul(x: &PPClass, y: &PPClass) -> Result<PPClass> {
    x.check(y)?;
    let mut out = PPClass::zero(x.n);
    for (&(i1, j1), a) in &x.terms {
        for (&(i2, j2), b) in &y.terms {
            out.add_term(i1 + i2, j1 + j2, a * b);
        }
    }
    Ok(out)
}

/// Inverse of `(1 + d H(x)1)(1 + d 1(x)H)` in the truncated ring, built as the
/// product of the two truncated geometric series.
pub fn geom_series_inverse(d: u32, n: u32) -> PPClass {
    let minus_d = BigRational::from_integer(-BigInt::from(d));
    let mut left = PPClass::zero(n);
    let mut right = PPClass::zero(n);
    let mut power = BigRational::one();
    for i in 0..=n {
        left.add_term(i, 0, power.clone());
        right.add_term(0, i, power.clone());
        power *= &minus_d;
    }
    pp_mul(&left, &right).expect("same dimension")
}

/// `(1 + d H(x)1)(1 + d 1(x)H)`.
pub fn hyperplane_factor(d: u32, n: u32) -> PPClass {
    let dd = BigRational::from_integer(BigInt::from(d));
    let mut x = PPClass::one(n);
    x.add_term(1, 0, dd.clone());
    x.add_term(0, 1, dd.clone());
    x.add_term(1, 1, &dd * &dd);
    x
}

/// Sum of the terms `H^i (x) H^j` with `i + j = k`.
pub fn homogeneous_part(x: &PPClass, k: u32) -> PPClass {
    PPClass::from_terms(
        x.n,
        x.terms.iter().filter(|(&(i, j), _)| i + j == k).map(|(&ij, c)| (ij, c.clone())),
    )
}

impl fmt::Display for PPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}*H^{i}xH^{j}", c.abs())?;
        }
        Ok(())
    }
}

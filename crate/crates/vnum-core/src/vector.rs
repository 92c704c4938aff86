use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A lattice point of Z^n_{>=0}: the exponent vector of a monomial.
///
/// Entries are unsigned 64-bit integers and the total degree is required to
/// fit in a `u64` at construction time, so all later degree arithmetic is
/// infallible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        let mut total: u64 = 0;
        for &e in &entries {
            total = total.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(ExponentVector(entries))
    }

    /// The monomial 1 in `n` variables.
    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The variable x_{i} (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// Total degree |a|.
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Variables with non-zero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    /// Componentwise comparison: self <= other everywhere, i.e. the monomial
    /// x^self divides x^other.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum (lcm of monomials).
    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Componentwise sum (product of monomials); errors on overflow.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        ExponentVector::new(out)
    }

    /// The exponent of x^self / gcd(x^self, x^u), i.e. the generator image
    /// under the colon by the monomial x^u.
    pub fn colon_shift(&self, u: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&u.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Scalar multiple k * self; errors on overflow.
    pub fn checked_scale(&self, k: u64) -> Result<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for &a in &self.0 {
            out.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        ExponentVector::new(out)
    }
}

impl fmt::Display for ExponentVector {
    /// Canonical monomial text: `x1^2*x3`, or `1` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

//! Exponent vectors in `Z^n` and binomials `x^a - x^b`.

use num::BigInt;
use std::fmt;
use std::ops::{Add, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("vector length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative entry {value} at position {index} in a monomial exponent vector")]
    NegativeExponent { index: usize, value: i64 },
    #[error("the zero vector does not define a binomial")]
    ZeroVector,
}

/// An integer exponent vector; entries may be negative unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    entries: Vec<i64>,
}

impl ExponentVector {
    /// Wraps an arbitrary signed vector.
    pub fn signed(entries: Vec<i64>) -> Self {
        ExponentVector { entries }
    }

    /// Wraps a monomial exponent vector, rejecting negative entries.
    pub fn monomial(entries: Vec<i64>) -> Result<Self, AlgebraError> {
        for (index, &value) in entries.iter().enumerate() {
            if value < 0 {
                return Err(AlgebraError::NegativeExponent { index, value });
            }
        }
        Ok(ExponentVector { entries })
    }

    /// The zero vector of length `n` (the monomial `1`).
    pub fn zero(n: usize) -> Self {
        ExponentVector {
            entries: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// Sum of entries (total degree under the all-ones grading).
    pub fn entry_sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn negated(&self) -> Self {
        ExponentVector {
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    /// Scales every entry by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector {
            entries: self.entries.iter().map(|&e| k * e).collect(),
        }
    }

    /// Addition that reports a length mismatch instead of panicking.
    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        check_len(self.len(), other.len())?;
        Ok(self + other)
    }

    /// Subtraction that reports a length mismatch instead of panicking.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        check_len(self.len(), other.len())?;
        Ok(self - other)
    }

    /// True when no variable appears in both `self` and `other`.
    pub fn disjoint_support(&self, other: &Self) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Renders with letter variables for small `n`, `x1..xn` otherwise.
    pub fn monomial_string(&self) -> String {
        if self.is_zero() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.entries.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let var = variable_name(i, self.entries.len());
            if e == 1 {
                parts.push(var);
            } else {
                parts.push(format!("{var}^{e}"));
            }
        }
        parts.join("*")
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::LengthMismatch { expected, found })
    }
}

/// Single-letter variable names up to n = 26, `x1..xn` beyond that.
pub fn variable_name(index: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("x{}", index + 1)
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len(), "exponent vector length mismatch");
        ExponentVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;

    fn sub(self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len(), "exponent vector length mismatch");
        ExponentVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Splits a signed vector into positive and negative parts: `v = v_plus - v_minus`.
pub fn vector_parts(v: &ExponentVector) -> (ExponentVector, ExponentVector) {
    let plus = ExponentVector {
        entries: v.entries.iter().map(|&e| e.max(0)).collect(),
    };
    let minus = ExponentVector {
        entries: v.entries.iter().map(|&e| (-e).max(0)).collect(),
    };
    (plus, minus)
}

/// Componentwise minimum of two monomial exponent vectors (gcd of the monomials).
pub fn monomial_gcd(
    a: &ExponentVector,
    b: &ExponentVector,
) -> Result<ExponentVector, AlgebraError> {
    check_len(a.len(), b.len())?;
    debug_assert!(a.is_nonnegative() && b.is_nonnegative());
    Ok(ExponentVector {
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(&x, &y)| x.min(y))
            .collect(),
    })
}

/// Weighted degree `w . a` as a big integer.
pub fn weighted_degree(a: &ExponentVector, w: &[i64]) -> Result<BigInt, AlgebraError> {
    check_len(a.len(), w.len())?;
    let mut sum = BigInt::from(0);
    for (&e, &wi) in a.entries.iter().zip(w) {
        sum += BigInt::from(e) * BigInt::from(wi);
    }
    Ok(sum)
}

/// A binomial `x^plus - x^minus`, stored with `plus >= minus` lexicographically.
///
/// The zero binomial (`plus == minus`) is a distinct queryable state; arithmetic
/// that would produce it keeps it explicit rather than dropping the term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    plus: ExponentVector,
    minus: ExponentVector,
}

impl Binomial {
    /// Builds a binomial from two monomial exponent vectors, normalizing the sign.
    pub fn new(a: ExponentVector, b: ExponentVector) -> Result<Self, AlgebraError> {
        check_len(a.len(), b.len())?;
        for v in [&a, &b] {
            for (index, &value) in v.entries.iter().enumerate() {
                if value < 0 {
                    return Err(AlgebraError::NegativeExponent { index, value });
                }
            }
        }
        if a >= b {
            Ok(Binomial { plus: a, minus: b })
        } else {
            Ok(Binomial { plus: b, minus: a })
        }
    }

    pub fn plus(&self) -> &ExponentVector {
        &self.plus
    }

    pub fn minus(&self) -> &ExponentVector {
        &self.minus
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// The lattice vector `plus - minus` (zero exactly for the zero binomial).
    pub fn direction(&self) -> ExponentVector {
        &self.plus - &self.minus
    }

    /// True when both terms have the same weighted degree.
    pub fn is_homogeneous(&self, w: &[i64]) -> Result<bool, AlgebraError> {
        Ok(weighted_degree(&self.plus, w)? == weighted_degree(&self.minus, w)?)
    }

    /// Weighted degree of the leading term (of both terms, when homogeneous).
    pub fn degree(&self, w: &[i64]) -> Result<BigInt, AlgebraError> {
        weighted_degree(&self.plus, w)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}",
            self.plus.monomial_string(),
            self.minus.monomial_string()
        )
    }
}

/// The binomial `x^{v_plus} - x^{v_minus}` attached to a nonzero lattice vector.
///
/// `v` and `-v` give the same binomial because of the sign normalization.
pub fn binomial_from_lattice_vector(v: &ExponentVector) -> Result<Binomial, AlgebraError> {
    if v.is_zero() {
        return Err(AlgebraError::ZeroVector);
    }
    let (plus, minus) = vector_parts(v);
    Binomial::new(plus, minus)
}

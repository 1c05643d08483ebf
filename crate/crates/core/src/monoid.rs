//! The monoid `(X, *)` of Laurent monomials `x^a`, `a ∈ ℤⁿ`.
//!
//! Variable indices handed out by this module (`max_index`, `min_index`,
//! `Monomial::var`) are 1-based, so they can be compared directly against
//! the index sequences of resolution symbols. Only the exponent storage is
//! 0-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial. Negative entries are allowed and mark a
/// formal quotient; [`Monomial::is_effective`] tells the two apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i`, with `i` in `1..=n`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range 1..={n}");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Monomial(e)
    }

    /// `x_σ = x_{i_1} * ... * x_{i_q}` for a 1-based index sequence.
    pub fn indicator(n: usize, sigma: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &i in sigma {
            e[i - 1] += 1;
        }
        Monomial(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn check_dim(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    fn check_effective(&self) -> Result<()> {
        if !self.is_effective() {
            return Err(Error::Laurent(self.clone()));
        }
        Ok(())
    }

    /// `x^a * x^b = x^{a+b}`.
    pub fn star(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `x^a / x^b = x^{a-b}`; no divisibility is required.
    pub fn quotient(&self, other: &Monomial) -> Result<Monomial> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// Whether `self` divides `other` in `R`. Both must be effective.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_dim(other)?;
        self.check_effective()?;
        other.check_effective()?;
        Ok(self.0.iter().zip(&other.0).all(|(b, a)| b <= a))
    }

    /// Largest 1-based index with a positive exponent.
    pub fn max_index(&self) -> Result<usize> {
        self.check_effective()?;
        self.0
            .iter()
            .rposition(|&a| a > 0)
            .map(|i| i + 1)
            .ok_or(Error::UnitMonomial)
    }

    /// Smallest 1-based index with a positive exponent.
    pub fn min_index(&self) -> Result<usize> {
        self.check_effective()?;
        self.0
            .iter()
            .position(|&a| a > 0)
            .map(|i| i + 1)
            .ok_or(Error::UnitMonomial)
    }

    /// Total degree under the standard grading.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Graded lexicographic order: lower degree first, then larger exponents
    /// on earlier variables first (`x² < xy < y²` in degree 2).
    pub fn graded_lex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Human-readable form such as `x^2*y`, or `1` for the unit.
    pub fn render(&self) -> String {
        let n = self.n();
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                let name = var_name(n, i + 1);
                if a == 1 {
                    name
                } else {
                    format!("{name}^{a}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Name of variable `i` (1-based): `x, y, z` for up to three variables,
/// `x1 .. xn` beyond.
pub fn var_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i - 1].to_string()
    } else {
        format!("x{i}")
    }
}

/// All effective monomials in `n` variables of total degree exactly `d`,
/// in graded lexicographic order.
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<Monomial> {
    fn rec(n: usize, d: i64, prefix: &mut Vec<i64>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always normalized: lowest terms, positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `numer / denom`, panicking on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn positive_part(x: &Rat) -> Rat {
    if x.is_positive() {
        x.clone()
    } else {
        Rat::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("decimal literal {0:?} is not allowed; write it as a fraction")]
    Decimal(String),
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"3"`, `"-1/2"`, `"+4/6"` and the unicode minus `"−1/2"`.
/// Decimal notation is rejected so every input stays exact.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRatError::Empty);
    }
    if trimmed.contains(['.', 'e', 'E']) {
        return Err(ParseRatError::Decimal(trimmed.to_string()));
    }
    let (negative, body) = if let Some(rest) = trimmed.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = trimmed.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = trimmed.strip_prefix('+') {
        (false, rest)
    } else {
        (false, trimmed)
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if !digits(numer) || !digits(denom) {
        return Err(ParseRatError::Malformed(trimmed.to_string()));
    }
    let numer = BigInt::from_str(numer).map_err(|_| ParseRatError::Malformed(trimmed.to_string()))?;
    let denom = BigInt::from_str(denom).map_err(|_| ParseRatError::Malformed(trimmed.to_string()))?;
    if denom.is_zero() {
        return Err(ParseRatError::ZeroDenominator(trimmed.to_string()));
    }
    let value = Rat::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Decimal rendering with `digits` fractional digits, rounded half away from zero.
pub fn to_decimal(x: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * Rat::from_integer(scale.clone());
    let half = rat(1, 2);
    let rounded = if scaled.is_negative() {
        -((-scaled) + half).floor()
    } else {
        (scaled + half).floor()
    }
    .to_integer();
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    let whole = &magnitude / &scale;
    let frac = &magnitude % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>digits$}")
    }
}

/// Rational coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: &Rat, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + factor * b).collect())
    }

    /// Concatenates `self` with `tail`.
    pub fn extended(&self, tail: &[Rat]) -> RatVec {
        let mut coords = self.0.clone();
        coords.extend_from_slice(tail);
        RatVec(coords)
    }

    /// `Σ weights[k] * vectors[k]`; `dim` is used when `vectors` is empty.
    pub fn combination(dim: usize, weights: &[Rat], vectors: &[RatVec]) -> RatVec {
        assert_eq!(weights.len(), vectors.len());
        let mut acc = vec![Rat::zero(); dim];
        for (w, v) in weights.iter().zip(vectors) {
            if w.is_zero() {
                continue;
            }
            assert_eq!(v.dim(), dim);
            for (slot, c) in acc.iter_mut().zip(v.iter()) {
                *slot += w * c;
            }
        }
        RatVec(acc)
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, index: usize) -> &Rat {
        &self.0[index]
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(coords: Vec<Rat>) -> Self {
        Self(coords)
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> Add<&'a RatVec> for &'a RatVec {
    type Output = RatVec;
    fn add(self, rhs: &'a RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "adding mismatched vectors");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a RatVec> for &'a RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &'a RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "subtracting mismatched vectors");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

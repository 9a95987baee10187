//! Sparse multivariate polynomials over exact rationals.
//!
//! Coordinates are indexed from 0 in the API and rendered from 1 (`x1`, `x2`, ...)
//! in every human- or machine-readable form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact arbitrary-precision fraction, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("weight vector has length {weights}, polynomial dimension is {dim}")]
    WeightLength { weights: usize, dim: usize },
    #[error("invalid polynomial: {0}")]
    Invalid(String),
}

/// Builds a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let r = Rational::from_str(s).map_err(|_| PolyError::Invalid(format!("bad rational `{s}`")))?;
    Ok(r)
}

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared entry by entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> u64 {
        self.0.iter().zip(w.as_slice()).map(|(&e, &wi)| e as u64 * wi as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn resized(&self, n: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(n, 0);
        Monomial(e)
    }

    fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    fn latex(&self) -> String {
        let mut out = Vec::new();
        for (j, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push(format!("x_{{{}}}", j + 1)),
                _ => out.push(format!("x_{{{}}}^{{{}}}", j + 1, e)),
            }
        }
        out.join(" ")
    }

    /// Parses `1`, `x7`, `x1^2*x2^2` or `x1^2x2^2` into a monomial on `n` coordinates.
    pub fn parse(s: &str, n: usize) -> Result<Monomial, PolyError> {
        let s = s.trim();
        let mut e = vec![0u32; n];
        if s == "1" {
            return Ok(Monomial(e));
        }
        let bad = || PolyError::Invalid(format!("bad monomial `{s}`"));
        let bytes = s.as_bytes();
        let mut pos = 0;
        let read_num = |pos: &mut usize| -> Option<u32> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos].parse().ok()
        };
        while pos < bytes.len() {
            if bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if bytes[pos] != b'x' {
                return Err(bad());
            }
            pos += 1;
            let idx = read_num(&mut pos).ok_or_else(bad)? as usize;
            if idx == 0 || idx > n {
                return Err(PolyError::IndexOutOfRange { index: idx, dim: n });
            }
            let mut exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                exp = read_num(&mut pos).ok_or_else(bad)?;
            }
            e[idx - 1] += exp;
        }
        Ok(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.write_text(f)
    }
}

/// Positive integer weight per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        WeightVector(weights)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u64),
    Inhomogeneous,
}

/// Sparse polynomial on `n` coordinates with rational coefficients.
///
/// Terms are stored in graded-lex order and never carry a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(n, c, Monomial::one(n))
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The coordinate function `x_{j+1}`.
    pub fn var(n: usize, j: usize) -> Self {
        Self::term(n, Rational::one(), Monomial::var(n, j))
    }

    pub fn term(n: usize, c: Rational, m: Monomial) -> Self {
        assert_eq!(m.dim(), n, "monomial length must equal ambient dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    /// `c * x^e` from an exponent vector.
    pub fn monomial(c: Rational, exponents: &[u32]) -> Self {
        let n = exponents.len();
        Self::term(n, c, Monomial(exponents.to_vec()))
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            if m.dim() != n {
                return Err(PolyError::Invalid(format!(
                    "monomial of length {} in dimension {n}",
                    m.dim()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lex ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.n))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `x_{j+1}^e` without going through a full product.
    pub fn mul_var(&self, j: usize, e: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.0[j] += e;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative with respect to coordinate `j` (0-based).
    pub fn partial(&self, j: usize) -> Result<Polynomial, PolyError> {
        if j >= self.n {
            return Err(PolyError::IndexOutOfRange { index: j, dim: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[j] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Largest `e` such that `x_{j+1}^e` divides every term.
    pub fn divisibility_degree(&self, j: usize) -> Result<u32, PolyError> {
        if j >= self.n {
            return Err(PolyError::IndexOutOfRange { index: j, dim: self.n });
        }
        self.terms
            .keys()
            .map(|m| m.0[j])
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> Result<WeightedDegree, PolyError> {
        if w.len() != self.n {
            return Err(PolyError::WeightLength { weights: w.len(), dim: self.n });
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degrees.next().ok_or(PolyError::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::Inhomogeneous)
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::DimensionMismatch(self.n, point.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Re-embeds into `new_n` coordinates; extra coordinates get exponent 0.
    ///
    /// Shrinking is only allowed when the dropped coordinates do not occur.
    pub fn with_dimension(&self, new_n: usize) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(new_n);
        for (m, c) in &self.terms {
            if m.0[new_n.min(self.n)..].iter().any(|&e| e > 0) {
                return Err(PolyError::Invalid(format!(
                    "term {m} uses a coordinate beyond dimension {new_n}"
                )));
            }
            out.terms.insert(m.resized(new_n), c.clone());
        }
        Ok(out)
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets one coefficient, removing the term when `c` is zero.
    pub fn with_coefficient(&self, m: Monomial, c: Rational) -> Polynomial {
        let mut out = self.clone();
        out.terms.remove(&m);
        out.add_term(m, c);
        out
    }

    /// Parses the text form produced by `Display`, e.g. `x1^2*x2^2/8 - x1^4/24 + x7`.
    pub fn parse(s: &str, n: usize) -> Result<Polynomial, PolyError> {
        let s = s.trim();
        let mut p = Polynomial::zero(n);
        if s == "0" {
            return Ok(p);
        }
        let mut start = 0;
        let mut pieces = Vec::new();
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let t: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
            let (neg, t) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, t.trim_start_matches('+').to_string()),
            };
            if t.is_empty() {
                return Err(PolyError::Invalid(format!("empty term in `{s}`")));
            }
            let (m, mut c) = parse_term(&t, n)?;
            if neg {
                c = -c;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.latex();
            let coef = if a.is_integer() {
                if a.is_one() && !mono.is_empty() {
                    String::new()
                } else {
                    a.numer().to_string()
                }
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            s.push_str(&coef);
            if !coef.is_empty() && !mono.is_empty() {
                s.push(' ');
            }
            s.push_str(&mono);
        }
        s
    }
}

fn parse_term(t: &str, n: usize) -> Result<(Monomial, Rational), PolyError> {
    if let Ok(c) = parse_rational(t) {
        return Ok((Monomial::one(n), c));
    }
    let (coef, rest) = if t.starts_with(|c: char| c.is_ascii_digit()) {
        let (a, b) = t
            .split_once('*')
            .ok_or_else(|| PolyError::Invalid(format!("bad term `{t}`")))?;
        (parse_rational(a)?, b)
    } else {
        (Rational::one(), t)
    };
    let (mono, den) = match rest.split_once('/') {
        Some((m, d)) => (m, parse_rational(d)?),
        None => (rest, Rational::one()),
    };
    if den.is_zero() {
        return Err(PolyError::Invalid(format!("zero denominator in `{t}`")));
    }
    Ok((Monomial::parse(mono, n)?, coef / den))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.numer().is_one() {
                write!(f, "{}*", a.numer())?;
            }
            m.write_text(f)?;
            if !a.denom().is_one() {
                write!(f, "/{}", a.denom())?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on dimension mismatch; use the `try_*` methods when
// the dimensions are not already known to agree.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { c: c.to_string(), e: m.0.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolynomialJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_rational(&t.c).map_err(D::Error::custom)?;
            terms.push((Monomial(t.e), c));
        }
        Polynomial::from_terms(raw.n, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, j: usize) -> Polynomial {
        Polynomial::var(n, j)
    }

    fn w8() -> WeightVector {
        WeightVector::new(vec![1, 1, 2, 3, 3, 4, 4, 4])
    }

    #[test]
    fn add_cancels_and_merges() {
        let n = 8;
        assert!((&x(n, 0) + &(-x(n, 0))).is_zero());
        let half_sq = Polynomial::monomial(rat(1, 2), &[2, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&half_sq + &half_sq, Polynomial::monomial(int(1), &[2, 0, 0, 0, 0, 0, 0, 0]));

        // b + x1 x2 x3 with b = -x1 x2 x3 - x1^2 x2^2 / 8
        let x123 = Polynomial::monomial(int(1), &[1, 1, 1, 0, 0, 0, 0, 0]);
        let b = &(-&x123) - &Polynomial::monomial(rat(1, 8), &[2, 2, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            &b + &x123,
            Polynomial::monomial(rat(-1, 8), &[2, 2, 0, 0, 0, 0, 0, 0])
        );
    }

    #[test]
    fn multiplication() {
        let n = 3;
        let x2sq = x(n, 1).mul_var(1, 1);
        assert_eq!(&x(n, 0) * &x2sq, Polynomial::monomial(int(1), &[1, 2, 0]));
        let h = Polynomial::monomial(rat(1, 2), &[2, 0, 0]);
        assert_eq!(&h * &x(n, 1), Polynomial::monomial(rat(1, 2), &[2, 1, 0]));
        let m = (&(-x(n, 0)) * &(-x(n, 0))).scale(&rat(1, 2));
        assert_eq!(m, h);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = x(2, 0);
        let b = x(3, 0);
        assert_eq!(a.try_add(&b), Err(PolyError::DimensionMismatch(2, 3)));
        assert_eq!(a.try_mul(&b), Err(PolyError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn partial_derivatives() {
        let p = Polynomial::monomial(rat(1, 6), &[3, 0]);
        assert_eq!(p.partial(0).unwrap(), Polynomial::monomial(rat(1, 2), &[2, 0]));
        assert!(x(2, 1).partial(0).unwrap().is_zero());
        let q = Polynomial::monomial(rat(1, 8), &[2, 2]);
        assert_eq!(q.partial(1).unwrap(), Polynomial::monomial(rat(1, 4), &[2, 1]));
        assert!(matches!(q.partial(2), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn divisibility() {
        assert_eq!((-x(2, 0)).divisibility_degree(0), Ok(1));
        assert_eq!(Polynomial::monomial(int(1), &[0, 2]).divisibility_degree(0), Ok(0));
        assert_eq!(Polynomial::monomial(rat(1, 2), &[1, 2]).divisibility_degree(1), Ok(2));
        let mixed = &Polynomial::monomial(int(1), &[1, 3]) + &Polynomial::monomial(int(1), &[2, 1]);
        assert_eq!(mixed.divisibility_degree(1), Ok(1));
        assert_eq!(Polynomial::zero(2).divisibility_degree(0), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn weighted_degrees() {
        let w = w8();
        let p = Polynomial::monomial(int(1), &[1, 2, 0, 0, 0, 0, 0, 0]);
        assert_eq!(p.weighted_degree(&w), Ok(WeightedDegree::Homogeneous(3)));
        let q = &Polynomial::monomial(int(1), &[2, 0, 0, 0, 0, 0, 0, 0])
            + &Polynomial::monomial(int(1), &[0, 2, 0, 0, 0, 0, 0, 0]);
        assert_eq!(q.weighted_degree(&w), Ok(WeightedDegree::Homogeneous(2)));
        let r = &x(8, 6) + &Polynomial::monomial(rat(1, 24), &[4, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(r.weighted_degree(&w), Ok(WeightedDegree::Homogeneous(4)));
        let s = &x(8, 6) + &x(8, 0);
        assert_eq!(s.weighted_degree(&w), Ok(WeightedDegree::Inhomogeneous));
        assert_eq!(Polynomial::zero(8).weighted_degree(&w), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn graded_lex_order() {
        let p = &(&x(2, 0) + &Polynomial::monomial(int(3), &[0, 2])) + &Polynomial::one(2);
        let order: Vec<String> = p.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, vec!["1", "x1", "x2^2"]);
    }

    #[test]
    fn text_and_latex() {
        let p = &Polynomial::monomial(rat(-1, 24), &[4, 0]) + &Polynomial::monomial(rat(1, 8), &[2, 2]);
        assert_eq!(p.to_string(), "x1^2*x2^2/8 - x1^4/24");
        assert_eq!(p.to_latex(), "\\frac{1}{8} x_{1}^{2} x_{2}^{2} - \\frac{1}{24} x_{1}^{4}");
        assert_eq!(Polynomial::constant(2, int(-3)).to_latex(), "-3");
    }

    #[test]
    fn monomial_parsing() {
        assert_eq!(Monomial::parse("x7", 8).unwrap(), Monomial::var(8, 6));
        assert_eq!(Monomial::parse("x1^2*x2^2", 3).unwrap(), Monomial::from_exponents(vec![2, 2, 0]));
        assert_eq!(Monomial::parse("x1^2x2^2", 3).unwrap(), Monomial::from_exponents(vec![2, 2, 0]));
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
        assert!(Monomial::parse("x9", 8).is_err());
        assert!(Monomial::parse("y1", 8).is_err());
    }

    #[test]
    fn json_form() {
        let p = &Polynomial::monomial(rat(-1, 8), &[2, 2]) + &x(2, 0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"c":"1","e":[1,0]},{"c":"-1/8","e":[2,2]}]}"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"n":2,"terms":[{"c":"1","e":[1,0,0]}]}"#;
        assert!(serde_json::from_str::<Polynomial>(bad).is_err());
    }

    #[test]
    fn parse_text_form() {
        let p = Polynomial::parse("-x1^4/24 + x1^2*x2^2/8 + x7", 8).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&Monomial::var(8, 6)), int(1));
        assert_eq!(Polynomial::parse(&p.to_string(), 8).unwrap(), p);
        let q = Polynomial::parse("3*x1*x2/4 - 2 + x2", 2).unwrap();
        assert_eq!(q.to_string(), "-2 + x2 + 3*x1*x2/4");
        assert!(Polynomial::parse("x1 +", 2).is_err());
        assert!(Polynomial::parse("x3", 2).is_err());
        assert!(Polynomial::parse("0", 2).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        let p = &Polynomial::monomial(rat(1, 2), &[2, 1]) - &Polynomial::one(2);
        assert_eq!(p.evaluate(&[int(2), rat(1, 3)]).unwrap(), rat(-1, 3));
    }
}

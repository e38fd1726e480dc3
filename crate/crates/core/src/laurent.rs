//! Exact arithmetic in `Z[t, t^-1]`.
//!
//! Polynomials are stored sparsely as an exponent -> coefficient map with
//! arbitrary-precision coefficients. Zero coefficients are never stored, so the
//! zero polynomial is the empty map and the degree bounds are always read off
//! the live keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot evaluate at t = 0")]
    EvalAtZero,
    #[error("expected a positive integer, got {0}")]
    NotPositive(i64),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// An integer Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The unit `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `sum_i coeffs[i] * t^(start + i)`.
    pub fn from_coeffs(start: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (start + i as i64, BigInt::from(c))),
        )
    }

    /// Sums the given `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_degree - min_degree`; this is the degree of the normalized form.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t -> t^w`. With `w = 0` the result is the constant `p(1)`.
    pub fn substitute_power(&self, w: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e * w, c.clone())))
    }

    /// `t -> t^-1`.
    pub fn mirror(&self) -> Self {
        self.substitute_power(-1)
    }

    /// The representative of `self` up to units `+-t^k` with minimal degree
    /// zero and a positive constant term.
    pub fn normalize(&self) -> Self {
        let Some(lo) = self.min_degree() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        if shifted.coeff(0).is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.min_degree() == Some(0) && self.coeff(0).is_positive())
    }

    /// True when `c_{lo+i} = c_{hi-i}` for every `i`.
    pub fn is_palindromic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return true;
        };
        self.terms.iter().all(|(&e, c)| self.terms.get(&(lo + hi - e)) == Some(c))
    }

    /// Exact quotient in `Z[t, t^-1]`.
    ///
    /// Returns `Ok(None)` when `divisor` does not divide `self`. Units are
    /// invertible, so divisibility here is automatically divisibility up to
    /// `+-t^k`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, LaurentError> {
        let (Some(b_lo), Some(b_hi)) = (divisor.min_degree(), divisor.max_degree()) else {
            return Err(LaurentError::DivisionByZero);
        };
        let Some(a_lo) = self.min_degree() else {
            return Ok(Some(Self::zero()));
        };
        // Strip the t-power from both sides; the remaining divisor has a
        // nonzero constant term so t does not divide it.
        let mut rem = self.shift(-a_lo);
        let b = divisor.shift(-b_lo);
        let b_deg = b_hi - b_lo;
        let b_lead = b.leading_coeff().expect("nonzero").clone();
        let mut quot = BTreeMap::new();
        while let Some(r_deg) = rem.max_degree() {
            if r_deg < b_deg {
                return Ok(None);
            }
            let (c, r) = rem.leading_coeff().expect("nonzero").div_rem(&b_lead);
            if !r.is_zero() {
                return Ok(None);
            }
            let e = r_deg - b_deg;
            rem = &rem - &b.scale(&c).shift(e);
            quot.insert(e, c);
        }
        Ok(Some(Self { terms: quot }.shift(a_lo - b_lo)))
    }

    /// True when `self` divides `other` (up to units).
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        matches!(other.exact_div(self), Ok(Some(_)))
    }

    /// Exact value at a nonzero integer.
    pub fn eval_int(&self, x: i64) -> Result<BigRational, LaurentError> {
        if x == 0 {
            return Err(LaurentError::EvalAtZero);
        }
        let x = BigRational::from_integer(BigInt::from(x));
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let p = num_traits::pow::Pow::pow(&x, e as i32);
            acc += p * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

/// True iff `n = p^e` for a prime `p` and `e >= 1`; `1` is not a prime power.
pub fn is_prime_power(n: i64) -> Result<bool, LaurentError> {
    if n <= 0 {
        return Err(LaurentError::NotPositive(n));
    }
    let mut n = n as u64;
    if n == 1 {
        return Ok(false);
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return Ok(n == 1);
        }
        p += 1;
    }
    Ok(true)
}

/// `is_prime_power` for a coefficient of arbitrary size; values that do not fit
/// in an `i64` are reported as not prime powers.
pub fn is_prime_power_big(n: &BigInt) -> bool {
    n.abs()
        .to_i64()
        .is_some_and(|v| v > 0 && is_prime_power(v).unwrap_or(false))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

// Textual form: ascending exponents, `c*t^e` terms joined by ` + ` / ` - `,
// unit coefficients and `^1` elided, e.g. `2 - 3*t + 2*t^2`, `-t^-4 + t^-3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the display form plus common variants: `3t`, `t^{-5}`, and
    /// the unicode minus sign.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let words: Vec<&str> = text.split_whitespace().collect();
        let operand = |c: char| c.is_ascii_alphanumeric() || matches!(c, '^' | '{' | '}' | '*');
        for pair in words.windows(2) {
            let (a, b) = (pair[0].chars().last().unwrap(), pair[1].chars().next().unwrap());
            if operand(a) && operand(b) {
                return Err(err("missing operator between terms"));
            }
        }
        let cleaned: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(err("empty input"));
        }
        let bytes = cleaned.as_bytes();
        let mut poly = LaurentPoly::zero();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[pos] {
                b'+' if pos > 0 => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if pos > 0 => return Err(err("expected '+' or '-' between terms")),
                _ => {}
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                cleaned[start..pos].parse::<BigInt>().map_err(|_| err("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let has_coeff = pos > start;
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err(err("expected 't' after '*'"));
                }
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let braced = pos < bytes.len() && bytes[pos] == b'{';
                    if braced {
                        pos += 1;
                    }
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = cleaned[es..pos].parse().map_err(|_| err("bad exponent"))?;
                    if braced {
                        if pos >= bytes.len() || bytes[pos] != b'}' {
                            return Err(err("unclosed '{'"));
                        }
                        pos += 1;
                    }
                }
            } else if !has_coeff {
                return Err(err("empty term"));
            }
            poly.add_term(exp, sign * coeff);
        }
        Ok(poly)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

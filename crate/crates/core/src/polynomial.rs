//! Exact Laurent polynomials in one variable `A` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial in `A` over the integers.
///
/// Terms are kept in a sparse map from exponent to coefficient; zero
/// coefficients are never stored, so the zero polynomial is the empty map and
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff · A^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `(-A^2 - A^-2)^k`, the loop value raised to `k`.
    pub fn delta_power(k: u32) -> Self {
        // Binomial expansion: (-1)^k Σ_j C(k, j) A^{2k - 4j}.
        let mut p = Self::zero();
        let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let mut binom = BigInt::one();
        for j in 0..=k {
            p.add_term(2 * k as i64 - 4 * j as i64, &sign * &binom);
            binom = binom * (k - j) / (j + 1);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff_at(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn maxdeg(&self) -> Result<i64> {
        self.terms.keys().next_back().copied().ok_or(Error::UndefinedDegree)
    }

    pub fn mindeg(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::UndefinedDegree)
    }

    pub fn spread(&self) -> Result<u64> {
        Ok((self.maxdeg()? - self.mindeg()?) as u64)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Add for &IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntLaurent {
    type Output = IntLaurent;
    fn add(mut self, rhs: IntLaurent) -> IntLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&IntLaurent> for IntLaurent {
    fn add_assign(&mut self, rhs: &IntLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        IntLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        -&self
    }
}

impl Sub for &IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        self + &(-rhs)
    }
}

impl Sub for IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: IntLaurent) -> IntLaurent {
        &self - &rhs
    }
}

impl Mul for &IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = IntLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: IntLaurent) -> IntLaurent {
        &self * &rhs
    }
}

impl fmt::Display for IntLaurent {
    /// Canonical form: decreasing exponents, explicit signs, `A^e`, bare
    /// constant, e.g. `3A^13 - 2A^9 + 4A^5 - A + 4A^-3 - A^-7 + A^-11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                write!(f, "A")?;
            } else {
                write!(f, "A^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntLaurent {
    type Err = Error;

    /// Parses the canonical form (and tolerates any term order, repeated
    /// exponents and missing spaces).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::PolynomialSyntax(format!("{msg} in {s:?}"));
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("missing sign between terms"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                compact[start..i].parse::<BigInt>().map_err(|_| bad("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let exp = if i < bytes.len() && bytes[i] == b'A' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    compact[es..i].parse::<i64>().map_err(|_| bad("bad exponent"))?
                } else {
                    1
                }
            } else {
                if i == start {
                    return Err(bad("empty term"));
                }
                0
            };
            out.add_term(exp, sign * coeff);
        }
        Ok(out)
    }
}

/// JSON form: `[[exponent, coefficient], ...]` in decreasing exponent order.
/// Coefficients outside the `i64` range are written as decimal strings.
impl Serialize for IntLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }

        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = IntLaurent;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of [exponent, coefficient] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<IntLaurent, A::Error> {
                let mut p = IntLaurent::zero();
                while let Some((e, c)) = seq.next_element::<(i64, Coeff)>()? {
                    let c = match c {
                        Coeff::Small(v) => BigInt::from(v),
                        Coeff::Big(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_seq(TermsVisitor)
    }
}

//! Exact univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty coefficient vector and the bar
//! involution `t^r f(1/t)` is a reversal padded to length `r + 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial in `Z[t]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `(t - 1)^n`
    pub fn t_minus_one_pow(n: usize) -> Self {
        let base = Self::from_i64s(&[-1, 1]);
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial
    /// (below every integer).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when `deg(self) < bound / 2`, vacuously true for zero.
    pub fn degree_below_half(&self, bound: usize) -> bool {
        self.degree().is_none_or(|d| 2 * d < bound)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `(-1)^k`.
    pub fn signed(&self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            -self
        }
    }

    /// `t^r f(1/t)`.
    pub fn bar(&self, r: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(degree) if degree > r => Err(Error::DegreeExceedsRank { degree, rank: r }),
            Some(_) => {
                let mut coeffs = vec![BigInt::zero(); r + 1];
                for (i, c) in self.coeffs.iter().enumerate() {
                    coeffs[r - i] = c.clone();
                }
                Ok(Self::new(coeffs))
            }
        }
    }

    /// The terms `c_i t^i` with `2i < r`.
    pub fn below_half(&self, r: usize) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .take_while(|(i, _)| 2 * i < r)
                .map(|(_, c)| c.clone())
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Index of the first negative coefficient.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    /// Index `i` (with `0 < i < deg`) where `a_i^2 < a_{i-1} a_{i+1}`.
    pub fn log_concavity_violation(&self) -> Option<usize> {
        let a = &self.coeffs;
        (1..a.len().saturating_sub(1)).find(|&i| &a[i] * &a[i] < &a[i - 1] * &a[i + 1])
    }

    /// Index of a zero coefficient lying strictly between two nonzero ones.
    pub fn internal_zero(&self) -> Option<usize> {
        let first = self.coeffs.iter().position(|c| !c.is_zero())?;
        // the last coefficient is nonzero by canonical form
        (first..self.coeffs.len()).find(|&i| self.coeffs[i].is_zero())
    }

    /// Log-concave with no internal zeros. Zero and constant polynomials
    /// count as log-concave.
    pub fn is_log_concave_no_internal_zeros(&self) -> bool {
        self.log_concavity_violation().is_none() && self.internal_zero().is_none()
    }

    /// Number of distinct real roots, by a Sturm sequence over the rationals.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.to_rational().count_real_roots())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Polynomial::new(trimmed);
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Polynomial::new(trimmed);
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

// Coefficients travel as decimal strings so that large values survive
// JSON consumers limited to 53-bit numbers.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = Polynomial;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of decimal integer strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Polynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    let c = s
                        .parse::<BigInt>()
                        .map_err(|_| de::Error::custom(format!("invalid integer {s:?}")))?;
                    coeffs.push(c);
                }
                Ok(Polynomial::new(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

/// A polynomial with rational coefficients, used for closed-form
/// intermediates and for Sturm sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Add `c t^k` in place.
    pub fn add_term(&mut self, c: &BigRational, k: usize) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigRational::zero());
        }
        self.coeffs[k] += c;
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Self::new(trimmed);
    }

    /// Convert to an integer polynomial, failing on the first coefficient
    /// with a nontrivial denominator.
    pub fn to_integer(&self) -> Result<Polynomial> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegralCoefficient(i))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new)
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::default(),
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] / lc;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &factor * c;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Distinct real roots of a nonzero polynomial.
    pub fn count_real_roots(&self) -> usize {
        let base = self.squarefree_part();
        if base.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut chain = vec![base.clone(), base.derivative()];
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(Self::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        let variations = |signs: Vec<i32>| {
            signs
                .windows(2)
                .filter(|w| w[0] != w[1])
                .count()
        };
        let sign = |c: &BigRational| if c.is_positive() { 1 } else { -1 };
        let at_pos_inf: Vec<i32> = chain
            .iter()
            .map(|p| sign(p.coeffs.last().unwrap()))
            .collect();
        let at_neg_inf: Vec<i32> = chain
            .iter()
            .map(|p| {
                let s = sign(p.coeffs.last().unwrap());
                if p.degree().unwrap() % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        variations(at_neg_inf) - variations(at_pos_inf)
    }
}

/// Binomial coefficient as a big integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n! / (parts[0]! parts[1]! ...)`, requiring the parts to sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<usize>(), n);
    let mut remaining = n;
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[-1, 1]) * &p(&[-2, 1]), p(&[2, -3, 1]));
        assert_eq!(&Polynomial::zero() * &p(&[5, 0, 0, 1]), Polynomial::zero());
    }

    #[test]
    fn canonical_form_and_degree() {
        let z = p(&[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(z.degree_below_half(0));
        assert_eq!(p(&[3, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p(&[1, 1]).bar(3).unwrap(), p(&[0, 0, 1, 1]));
        assert_eq!(p(&[1]).bar(0).unwrap(), p(&[1]));
        assert_eq!(p(&[-1, 1]).bar(1).unwrap(), p(&[1, -1]));
        assert_eq!(
            p(&[1, 2, 3]).bar(1),
            Err(Error::DegreeExceedsRank { degree: 2, rank: 1 })
        );
    }

    #[test]
    fn log_concavity_examples() {
        assert!(p(&[15, 35, 21]).is_log_concave_no_internal_zeros());
        assert!(!p(&[1, 0, 1]).is_log_concave_no_internal_zeros());
        assert_eq!(p(&[1, 0, 1]).internal_zero(), Some(1));
        assert!(p(&[1]).is_log_concave_no_internal_zeros());
        assert!(Polynomial::zero().is_log_concave_no_internal_zeros());
        assert_eq!(p(&[1, 1, 5]).log_concavity_violation(), Some(1));
        // leading zeros below the first nonzero term are not internal
        assert!(p(&[0, 0, 1, 1]).is_log_concave_no_internal_zeros());
    }

    #[test]
    fn real_root_examples() {
        assert_eq!(p(&[2, -3, 1]).count_real_roots().unwrap(), 2);
        assert_eq!(p(&[15, 35, 21]).count_real_roots().unwrap(), 0);
        assert_eq!(p(&[-1, 1]).count_real_roots().unwrap(), 1);
        assert_eq!(Polynomial::zero().count_real_roots(), Err(Error::ZeroPolynomial));
        assert_eq!(p(&[7]).count_real_roots().unwrap(), 0);
        // (t-1)^3 (t+2): repeated roots are counted once
        let rep = &Polynomial::t_minus_one_pow(3) * &p(&[2, 1]);
        assert_eq!(rep.count_real_roots().unwrap(), 2);
        // t^4 + 1 has none; t^3 - 2 has one
        assert_eq!(p(&[1, 0, 0, 0, 1]).count_real_roots().unwrap(), 0);
        assert_eq!(p(&[-2, 0, 0, 1]).count_real_roots().unwrap(), 1);
    }

    #[test]
    fn rational_integrality() {
        let mut r = RationalPolynomial::default();
        r.add_term(&BigRational::new(1.into(), 2.into()), 1);
        assert_eq!(r.to_integer(), Err(Error::NonIntegralCoefficient(1)));
        r.add_term(&BigRational::new(1.into(), 2.into()), 1);
        assert_eq!(r.to_integer().unwrap(), p(&[0, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(multinomial(5, &[2, 1, 0, 2]), BigInt::from(30));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let poly = p(&[6, 5]);
        let s = serde_json::to_string(&poly).unwrap();
        assert_eq!(s, r#"["6","5"]"#);
        let big: Polynomial = serde_json::from_str(r#"["123456789012345678901234567890"]"#).unwrap();
        assert_eq!(big.coeff(0).to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<Polynomial>(r#"[6]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -3, 1]).to_string(), "2 - 3t + t^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..20, 0..max_len).prop_map(|c| Polynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn bar_is_involution(f in small_poly(6), extra in 0usize..4) {
            let r = f.degree().unwrap_or(0) + extra;
            prop_assert_eq!(f.bar(r).unwrap().bar(r).unwrap(), f);
        }

        #[test]
        fn bar_is_multiplicative(f in small_poly(5), g in small_poly(5), e1 in 0usize..3, e2 in 0usize..3) {
            let r1 = f.degree().unwrap_or(0) + e1;
            let r2 = g.degree().unwrap_or(0) + e2;
            prop_assert_eq!((&f * &g).bar(r1 + r2).unwrap(), &f.bar(r1).unwrap() * &g.bar(r2).unwrap());
        }

        #[test]
        fn ring_axioms(a in small_poly(5), b in small_poly(5), c in small_poly(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn quadratic_roots_match_discriminant(a in 1i64..30, b in -30i64..30, c in -30i64..30, neg in any::<bool>()) {
            let a = if neg { -a } else { a };
            let disc = b * b - 4 * a * c;
            let expected = match disc.signum() { 1 => 2, 0 => 1, _ => 0 };
            prop_assert_eq!(p(&[c, b, a]).count_real_roots().unwrap(), expected);
        }

        #[test]
        fn product_of_linear_factors_counts_distinct_roots(roots in prop::collection::vec(-6i64..6, 1..5)) {
            let f = roots.iter().fold(Polynomial::one(), |acc, &r| &acc * &p(&[-r, 1]));
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(f.count_real_roots().unwrap(), distinct.len());
        }
    }
}

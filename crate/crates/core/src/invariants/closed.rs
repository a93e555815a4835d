//! Closed forms for boolean and uniform matroids.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, SimpleShape};
use crate::polynomial::{binomial, multinomial, Polynomial, RationalPolynomial};

fn int(n: usize) -> BigInt {
    BigInt::from(n)
}

fn check_domain(m: usize, d: usize) -> Result<()> {
    if m == 0 || d == 0 {
        Err(Error::ClosedFormDomain("m >= 1 and d >= 1"))
    } else {
        Ok(())
    }
}

/// Inverse Kazhdan-Lusztig polynomial of `U_{m,d}`:
///
/// ```text
/// Q(t) = C(m+d, d) sum_{j <= (d-1)/2} m (d - 2j) / ((m + j)(m + d - j)) C(d, j) t^j
/// ```
pub fn q_uniform_closed(m: usize, d: usize) -> Result<Polynomial> {
    check_domain(m, d)?;
    let scale = binomial(m + d, d);
    let mut q = RationalPolynomial::default();
    for j in 0..=(d - 1) / 2 {
        let num = &scale * int(m) * int(d - 2 * j) * binomial(d, j);
        let den = int(m + j) * int(m + d - j);
        q.add_term(&BigRational::new(num, den), j);
    }
    q.to_integer()
}

/// Kazhdan-Lusztig polynomial of `U_{m,d}` from the inverse polynomials of
/// its contractions:
///
/// ```text
/// P(t) = sum_{j <= (d-1)/2} sum_{i <= d-1-2j} (-1)^{d+1-i}
///        m (d - i - 2j) / ((m + j)(m + d - i - j)) * (m+d)! / (m! i! j! (d-i-j)!) t^j
/// ```
pub fn p_uniform_closed(m: usize, d: usize) -> Result<Polynomial> {
    check_domain(m, d)?;
    let mut p = RationalPolynomial::default();
    for j in 0..=(d - 1) / 2 {
        for i in 0..=(d - 1 - 2 * j) {
            let mut num = int(m) * int(d - i - 2 * j) * multinomial(m + d, &[m, i, j, d - i - j]);
            if (d + 1 - i) % 2 == 1 {
                num = -num;
            }
            let den = int(m + j) * int(m + d - i - j);
            p.add_term(&BigRational::new(num, den), j);
        }
    }
    p.to_integer()
}

/// Characteristic polynomial of `U_{m,k}`:
/// `sum_{j < k} (-1)^j C(m+k, j) (t^{k-j} - 1)`, and `1` in rank zero.
pub fn chi_uniform_closed(m: usize, k: usize) -> Polynomial {
    if k == 0 {
        return Polynomial::one();
    }
    let mut coeffs = vec![BigInt::from(0); k + 1];
    for j in 0..k {
        let mut c = binomial(m + k, j);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[k - j] += &c;
        coeffs[0] -= &c;
    }
    Polynomial::new(coeffs)
}

/// Matroids whose invariants have closed forms: boolean and uniform
/// simplifications, and direct sums of those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedShape {
    Simple(SimpleShape),
    Sum(Box<ClosedShape>, Box<ClosedShape>),
}

impl ClosedShape {
    pub fn detect(matroid: &Matroid) -> Option<ClosedShape> {
        if let Some((l, r)) = matroid.summands() {
            return Some(ClosedShape::Sum(
                Box::new(Self::detect(l)?),
                Box::new(Self::detect(r)?),
            ));
        }
        matroid.simple_shape().map(ClosedShape::Simple)
    }

    pub fn rank(&self) -> usize {
        match self {
            ClosedShape::Simple(SimpleShape::Boolean(n)) => *n,
            ClosedShape::Simple(SimpleShape::Uniform { d, .. }) => *d,
            ClosedShape::Sum(l, r) => l.rank() + r.rank(),
        }
    }

    /// `(chi, P, Q)`
    pub fn invariants(&self) -> Result<(Polynomial, Polynomial, Polynomial)> {
        match self {
            ClosedShape::Simple(SimpleShape::Boolean(n)) => {
                Ok((Polynomial::t_minus_one_pow(*n), Polynomial::one(), Polynomial::one()))
            }
            ClosedShape::Simple(SimpleShape::Uniform { m, d }) => Ok((
                chi_uniform_closed(*m, *d),
                p_uniform_closed(*m, *d)?,
                q_uniform_closed(*m, *d)?,
            )),
            ClosedShape::Sum(l, r) => {
                let (lc, lp, lq) = l.invariants()?;
                let (rc, rp, rq) = r.invariants()?;
                Ok((&lc * &rc, &lp * &rp, &lq * &rq))
            }
        }
    }
}

impl SimpleShape {
    /// `(chi, P, Qhat)` of this shape.
    pub(crate) fn signed_invariants(&self) -> Result<(Polynomial, Polynomial, Polynomial)> {
        let shape = ClosedShape::Simple(*self);
        let (chi, p, q) = shape.invariants()?;
        Ok((chi, p, q.signed(shape.rank())))
    }
}

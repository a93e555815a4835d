//! Polynomial-valued incidence algebra of a lattice of flats.
//!
//! An [`IncidenceFunction`] assigns a polynomial to every interval `[a, b]`
//! of a [`FlatLattice`]. Functions multiply by convolution
//!
//! ```text
//! (f g)_{ab} = sum_{a <= h <= b} f_{ah} g_{hb}
//! ```
//!
//! with identity `delta`. On functions with `deg f_{ab} <= r_{ab}` there is
//! the involution `bar(f)_{ab} = t^{r_{ab}} f_{ab}(1/t)`. A kernel is a
//! function `k` with unit diagonal and `bar(k) = k^{-1}`; for every kernel
//! there are unique right and left Kazhdan-Lusztig-Stanley functions `f`, `g`
//! with `f_{aa} = 1`, `deg f_{ab} < r_{ab} / 2`, and
//! `bar(f) = k f`, `bar(g) = g k`.
//!
//! The same construction works on any weakly ranked locally finite poset; only
//! lattices of flats are exposed here.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::polynomial::Polynomial;

#[derive(Clone, Debug)]
pub struct IncidenceFunction {
    lattice: Arc<FlatLattice>,
    /// `values[a][k]` is the value on `[a, up(a)[k]]`.
    values: Vec<Vec<Polynomial>>,
}

impl PartialEq for IncidenceFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.values == other.values
    }
}

impl IncidenceFunction {
    pub fn from_fn(
        lattice: Arc<FlatLattice>,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let values = (0..lattice.len())
            .map(|a| lattice.up(a).iter().map(|&b| f(a, b)).collect())
            .collect();
        IncidenceFunction { lattice, values }
    }

    /// The convolution identity.
    pub fn delta(lattice: Arc<FlatLattice>) -> Self {
        Self::from_fn(lattice, |a, b| if a == b { Polynomial::one() } else { Polynomial::zero() })
    }

    pub fn zeta(lattice: Arc<FlatLattice>) -> Self {
        Self::from_fn(lattice, |_, _| Polynomial::one())
    }

    /// `mu = zeta^{-1}`
    pub fn mobius(lattice: Arc<FlatLattice>) -> Self {
        Self::zeta(lattice).invert().expect("zeta has unit diagonal")
    }

    /// The characteristic function `chi = mu * bar(zeta)`. Its value on
    /// `[a, b]` is the characteristic polynomial of the minor with lattice
    /// `[a, b]`.
    pub fn characteristic(lattice: Arc<FlatLattice>) -> Self {
        let zeta = Self::zeta(lattice);
        let mu = zeta.invert().expect("zeta has unit diagonal");
        let zeta_bar = zeta.bar().expect("constants lie within every rank bound");
        mu.convolve(&zeta_bar).expect("same lattice")
    }

    pub fn lattice(&self) -> &Arc<FlatLattice> {
        &self.lattice
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&Polynomial> {
        self.lattice.position(a, b).map(|k| &self.values[a][k])
    }

    /// Value on `[a, b]`; panics when `a` is not below `b`.
    pub fn value(&self, a: usize, b: usize) -> &Polynomial {
        self.get(a, b)
            .unwrap_or_else(|| panic!("flats {a} and {b} are not comparable"))
    }

    /// Iterate `(a, b, value)` over all intervals.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.values.iter().enumerate().flat_map(move |(a, row)| {
            self.lattice.up(a).iter().zip(row).map(move |(&b, v)| (a, b, v))
        })
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let l = &self.lattice;
        Ok(Self::from_fn(l.clone(), |a, b| {
            l.interval(a, b)
                .map(|h| self.value(a, h) * other.value(h, b))
                .sum()
        }))
    }

    /// Two-sided inverse, defined when every diagonal value is `±1`.
    pub fn invert(&self) -> Result<Self> {
        let l = self.lattice.clone();
        let n = l.len();
        let mut diag = Vec::with_capacity(n);
        for a in 0..n {
            let d = self.value(a, a);
            if *d == Polynomial::one() {
                diag.push(BigInt::one());
            } else if *d == -Polynomial::one() {
                diag.push(-BigInt::one());
            } else {
                return Err(Error::NotInvertible(a));
            }
        }
        // g_{ab} = -f_{aa}^{-1} sum_{a < h <= b} f_{ah} g_{hb}, rows from the top down
        let mut values: Vec<Vec<Polynomial>> = vec![Vec::new(); n];
        for a in (0..n).rev() {
            let mut row = Vec::with_capacity(l.up(a).len());
            for &b in l.up(a) {
                if a == b {
                    row.push(Polynomial::constant(diag[a].clone()));
                    continue;
                }
                let sum: Polynomial = l
                    .interval(a, b)
                    .skip(1)
                    .map(|h| self.value(a, h) * &values[h][l.position(h, b).unwrap()])
                    .sum();
                row.push(sum.scale(&-&diag[a]));
            }
            values[a] = row;
        }
        Ok(IncidenceFunction { lattice: l, values })
    }

    pub fn bar(&self) -> Result<Self> {
        let l = &self.lattice;
        let mut values = Vec::with_capacity(l.len());
        for (a, row) in self.values.iter().enumerate() {
            values.push(
                l.up(a)
                    .iter()
                    .zip(row)
                    .map(|(&b, v)| v.bar(l.weak_rank(a, b)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(IncidenceFunction { lattice: l.clone(), values })
    }

    /// `deg f_{ab} <= r_{ab}` on every interval.
    pub fn is_rank_bounded(&self) -> bool {
        self.entries()
            .all(|(a, b, v)| v.degree().is_none_or(|d| d <= self.lattice.weak_rank(a, b)))
    }

    /// Unit diagonal and `deg f_{ab} < r_{ab} / 2` off the diagonal.
    pub fn is_half_bounded(&self) -> bool {
        self.entries().all(|(a, b, v)| {
            if a == b {
                *v == Polynomial::one()
            } else {
                v.degree_below_half(self.lattice.weak_rank(a, b))
            }
        })
    }

    pub fn is_kernel(&self) -> Result<bool> {
        let inverse = self.invert()?;
        if (0..self.lattice.len()).any(|a| *self.value(a, a) != Polynomial::one()) {
            return Ok(false);
        }
        match self.bar() {
            Ok(bar) => Ok(bar == inverse),
            Err(Error::DegreeExceedsRank { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn require_kernel(&self) -> Result<()> {
        match self.is_kernel() {
            Ok(true) => Ok(()),
            Ok(false) | Err(Error::NotInvertible(_)) => Err(Error::NotAKernel),
            Err(e) => Err(e),
        }
    }

    /// Solve `bar(f) - f = rhs` for `f` of degree below `r / 2`: `f` is the
    /// negated low half of `rhs`, and the high half must then match.
    fn solve_interval(rhs: &Polynomial, r: usize, a: usize, b: usize) -> Result<Polynomial> {
        let f = -rhs.below_half(r);
        let bar = f.bar(r).map_err(|_| Error::InconsistentKernel(a, b))?;
        if &(&bar - &f) != rhs {
            return Err(Error::InconsistentKernel(a, b));
        }
        Ok(f)
    }

    /// The right KLS function: the unique half-bounded `f` with
    /// `bar(f) = k f`.
    pub fn kls_solve_right(&self) -> Result<Self> {
        self.require_kernel()?;
        let l = self.lattice.clone();
        let n = l.len();
        let mut values: Vec<Vec<Polynomial>> = vec![Vec::new(); n];
        for a in (0..n).rev() {
            let mut row = Vec::with_capacity(l.up(a).len());
            for &b in l.up(a) {
                if a == b {
                    row.push(Polynomial::one());
                    continue;
                }
                let rhs: Polynomial = l
                    .interval(a, b)
                    .skip(1)
                    .map(|h| self.value(a, h) * &values[h][l.position(h, b).unwrap()])
                    .sum();
                row.push(Self::solve_interval(&rhs, l.weak_rank(a, b), a, b)?);
            }
            values[a] = row;
        }
        Ok(IncidenceFunction { lattice: l, values })
    }

    /// The left KLS function: the unique half-bounded `g` with
    /// `bar(g) = g k`.
    pub fn kls_solve_left(&self) -> Result<Self> {
        self.require_kernel()?;
        let l = self.lattice.clone();
        let n = l.len();
        let mut values: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        for a in 0..n {
            let up = l.up(a);
            let mut row: Vec<Polynomial> = Vec::with_capacity(up.len());
            for &b in up {
                if a == b {
                    row.push(Polynomial::one());
                    continue;
                }
                let rhs: Polynomial = l
                    .interval(a, b)
                    .filter(|&h| h != b)
                    .map(|h| &row[l.position(a, h).unwrap()] * self.value(h, b))
                    .sum();
                row.push(Self::solve_interval(&rhs, l.weak_rank(a, b), a, b)?);
            }
            values.push(row);
        }
        Ok(IncidenceFunction { lattice: l, values })
    }

    /// Largest absolute coefficient over all values (diagnostics).
    pub fn max_coefficient(&self) -> BigInt {
        self.entries()
            .flat_map(|(_, _, v)| v.coeffs().iter().map(Signed::abs))
            .max()
            .unwrap_or_default()
    }
}

//! Defining recursions evaluated on intervals of one lattice of flats.
//!
//! The minor with lattice `[a, b]` is never materialized; its invariants are
//! memoized by the flat pair. For an interval of rank `r`:
//!
//! * `chi_{ab} = sum_{a <= h <= b} mu(a, h) t^{r_{hb}}`
//! * `P`: `t^r P_{ab}(1/t) = sum_{a <= h <= b} chi_{ah} P_{hb}`
//! * `Qhat` (expansion form): `Qhat_{ab} = sum_h t^{r_{ah}} Qhat_{ah}(1/t) chi_{hb}`
//! * `Qhat` (defining form): `t^r Qhat_{ab}(1/t) = sum_h Qhat_{ah} t^{r_{hb}} chi_{hb}(1/t)`
//!
//! Each is solved by reading the coefficients below `r / 2` off the known
//! terms and then checking the full polynomial identity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::SimpleShape;
use crate::polynomial::{binomial, Polynomial};

pub struct IntervalEngine<'a> {
    lattice: &'a FlatLattice,
    fast_paths: bool,
    mobius: HashMap<usize, Vec<BigInt>>,
    chi: HashMap<(usize, usize), Polynomial>,
    kl: HashMap<(usize, usize), Polynomial>,
    qhat: HashMap<(usize, usize), Polynomial>,
    qhat_defining: HashMap<(usize, usize), Polynomial>,
}

impl<'a> IntervalEngine<'a> {
    /// With `fast_paths`, intervals shaped like boolean or uniform lattices
    /// are answered by closed forms instead of recursion.
    pub fn new(lattice: &'a FlatLattice, fast_paths: bool) -> Self {
        IntervalEngine {
            lattice,
            fast_paths,
            mobius: HashMap::new(),
            chi: HashMap::new(),
            kl: HashMap::new(),
            qhat: HashMap::new(),
            qhat_defining: HashMap::new(),
        }
    }

    pub fn lattice(&self) -> &'a FlatLattice {
        self.lattice
    }

    fn check(&self, a: usize, b: usize) -> Result<()> {
        if self.lattice.leq(a, b) {
            Ok(())
        } else {
            Err(Error::NotComparable(a, b))
        }
    }

    /// Boolean or uniform shape of `[a, b]`, read off its rank profile. In a
    /// geometric lattice of rank `d` with `n` atoms, `n = d` forces a boolean
    /// lattice, and `C(n, d-1)` flats of rank `d-1` force a uniform one.
    pub fn interval_shape(&self, a: usize, b: usize) -> Option<SimpleShape> {
        let d = self.lattice.weak_rank(a, b);
        if d == 0 {
            return Some(SimpleShape::Boolean(0));
        }
        let profile = self.lattice.rank_profile(a, b);
        let n = profile[1];
        if n == d {
            Some(SimpleShape::Boolean(d))
        } else if BigInt::from(profile[d - 1]) == binomial(n, d - 1) {
            Some(SimpleShape::Uniform { m: n - d, d })
        } else {
            None
        }
    }

    fn shortcut(&self, a: usize, b: usize) -> Result<Option<(Polynomial, Polynomial, Polynomial)>> {
        if !self.fast_paths {
            return Ok(None);
        }
        self.interval_shape(a, b).map(|s| s.signed_invariants()).transpose()
    }

    /// `mu(a, h)` for `h` in `up(a)`.
    fn mobius_row(&mut self, a: usize) -> &[BigInt] {
        let l = self.lattice;
        self.mobius.entry(a).or_insert_with(|| {
            let up = l.up(a);
            let mut row: Vec<BigInt> = Vec::with_capacity(up.len());
            for (k, &b) in up.iter().enumerate() {
                if k == 0 {
                    row.push(BigInt::one());
                    continue;
                }
                let top = l.flat(b);
                let sum: BigInt = up[..k]
                    .iter()
                    .zip(&row)
                    .filter(|(&h, _)| l.flat(h).is_subset(top))
                    .map(|(_, m)| m)
                    .sum();
                row.push(-sum);
            }
            row
        })
    }

    pub fn mobius(&mut self, a: usize, b: usize) -> Result<BigInt> {
        self.check(a, b)?;
        let k = self.lattice.position(a, b).unwrap();
        Ok(self.mobius_row(a)[k].clone())
    }

    /// Characteristic polynomial of the minor with lattice `[a, b]`.
    pub fn chi(&mut self, a: usize, b: usize) -> Result<Polynomial> {
        self.check(a, b)?;
        if let Some(c) = self.chi.get(&(a, b)) {
            return Ok(c.clone());
        }
        let chi = match self.shortcut(a, b)? {
            Some((chi, _, _)) => chi,
            None => {
                let l = self.lattice;
                let rank_b = l.rank_of(b);
                let top = l.flat(b);
                let up = l.up(a);
                let row = self.mobius_row(a);
                let mut coeffs = vec![BigInt::zero(); l.weak_rank(a, b) + 1];
                for (&h, mu) in up.iter().zip(row) {
                    if h <= b && l.flat(h).is_subset(top) {
                        coeffs[rank_b - l.rank_of(h)] += mu;
                    }
                }
                Polynomial::new(coeffs)
            }
        };
        self.chi.insert((a, b), chi.clone());
        Ok(chi)
    }

    fn solve_half(rhs: &Polynomial, r: usize, a: usize, b: usize, negate: bool) -> Result<Polynomial> {
        let low = rhs.below_half(r);
        let x = if negate { -low } else { low };
        let bar = x.bar(r).map_err(|_| Error::InconsistentKernel(a, b))?;
        let check = if negate { &bar - &x } else { &x - &bar };
        if &check != rhs {
            return Err(Error::InconsistentKernel(a, b));
        }
        Ok(x)
    }

    fn members(&self, a: usize, b: usize) -> Vec<usize> {
        self.lattice.interval(a, b).collect()
    }

    /// Kazhdan-Lusztig polynomial of the minor with lattice `[a, b]`.
    pub fn kl(&mut self, a: usize, b: usize) -> Result<Polynomial> {
        self.check(a, b)?;
        if let Some(p) = self.kl.get(&(a, b)) {
            return Ok(p.clone());
        }
        let p = if a == b {
            Polynomial::one()
        } else if let Some((_, p, _)) = self.shortcut(a, b)? {
            p
        } else {
            // t^r P(1/t) - P = sum_{a < h <= b} chi_{ah} P_{hb}
            let mut rhs = Polynomial::zero();
            for h in self.members(a, b).into_iter().skip(1) {
                rhs += &(&self.chi(a, h)? * &self.kl(h, b)?);
            }
            Self::solve_half(&rhs, self.lattice.weak_rank(a, b), a, b, true)?
        };
        self.kl.insert((a, b), p.clone());
        Ok(p)
    }

    /// `Qhat = (-1)^r Q` of the minor with lattice `[a, b]`, from the
    /// expansion `Qhat = sum_h bar(Qhat_{ah}) chi_{hb}`.
    pub fn qhat(&mut self, a: usize, b: usize) -> Result<Polynomial> {
        self.check(a, b)?;
        if let Some(q) = self.qhat.get(&(a, b)) {
            return Ok(q.clone());
        }
        let q = if a == b {
            Polynomial::one()
        } else if let Some((_, _, q)) = self.shortcut(a, b)? {
            q
        } else {
            // Qhat - t^r Qhat(1/t) = sum_{a <= h < b} t^{r_ah} Qhat_{ah}(1/t) chi_{hb}
            let l = self.lattice;
            let mut rhs = Polynomial::zero();
            for h in self.members(a, b) {
                if h == b {
                    continue;
                }
                let lower = self.qhat(a, h)?.bar(l.weak_rank(a, h))?;
                rhs += &(&lower * &self.chi(h, b)?);
            }
            Self::solve_half(&rhs, l.weak_rank(a, b), a, b, false)?
        };
        self.qhat.insert((a, b), q.clone());
        Ok(q)
    }

    /// `Qhat` from the defining identity
    /// `bar(Qhat_{ab}) = sum_h Qhat_{ah} bar(chi_{hb})`. Never uses fast paths.
    pub fn qhat_defining(&mut self, a: usize, b: usize) -> Result<Polynomial> {
        self.check(a, b)?;
        if let Some(q) = self.qhat_defining.get(&(a, b)) {
            return Ok(q.clone());
        }
        let q = if a == b {
            Polynomial::one()
        } else {
            // t^r Qhat(1/t) - Qhat = sum_{a <= h < b} Qhat_{ah} t^{r_hb} chi_{hb}(1/t)
            let l = self.lattice;
            let mut rhs = Polynomial::zero();
            for h in self.members(a, b) {
                if h == b {
                    continue;
                }
                let upper = self.chi(h, b)?.bar(l.weak_rank(h, b))?;
                rhs += &(&self.qhat_defining(a, h)? * &upper);
            }
            Self::solve_half(&rhs, l.weak_rank(a, b), a, b, true)?
        };
        self.qhat_defining.insert((a, b), q.clone());
        Ok(q)
    }

    /// Inverse Kazhdan-Lusztig polynomial `Q = (-1)^r Qhat`.
    pub fn inverse_kl(&mut self, a: usize, b: usize) -> Result<Polynomial> {
        let r = self.lattice.weak_rank(a, b);
        Ok(self.qhat(a, b)?.signed(r))
    }
}

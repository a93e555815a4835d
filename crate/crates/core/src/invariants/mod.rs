//! Matroid invariants: the characteristic polynomial `chi_M`, the
//! Kazhdan-Lusztig polynomial `P_M`, and the inverse Kazhdan-Lusztig
//! polynomial `Q_M` together with its unsigned form `Qhat_M = (-1)^{rk M} Q_M`.
//!
//! Three routes are available through [`Method`]:
//!
//! * `Recursion` solves the defining interval recursions directly (see
//!   [`recursion::IntervalEngine`]), without any closed form.
//! * `Kls` takes `P = f_{0,E}` and `Qhat = (f^{-1})_{0,E}` where `f` is the
//!   right KLS function of the characteristic function.
//! * `ClosedForm` uses closed forms for boolean and uniform matroids and their
//!   direct sums, and otherwise runs the recursion with closed forms on every
//!   boolean or uniform interval.
//!
//! `All` runs every applicable route and fails on any disagreement.
//!
//! Note on constant terms: the identity proven for the constant term is
//! `[t^0] Qhat_M = chi_M(0)`, equivalently `Q_M(0) = (-1)^{rk M} chi_M(0)`.
//! The two sides of `Q_M(0) = chi_M(0)` differ in sign in odd rank (for
//! `U_{2,5}`, `Q(0) = 15` and `chi(0) = -15`), so [`constant_term_holds`]
//! checks the `Qhat` form.

pub mod closed;
pub mod recursion;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::IncidenceFunction;
use crate::lattice::{FlatLattice, LatticeConfig};
use crate::matroid::{Matroid, MatroidSpec};
use crate::polynomial::Polynomial;

pub use closed::{chi_uniform_closed, p_uniform_closed, q_uniform_closed, ClosedShape};
pub use recursion::IntervalEngine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recursion,
    Kls,
    ClosedForm,
    All,
}

/// All invariants of one matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantBundle {
    pub matroid: MatroidSpec,
    pub rk: usize,
    pub chi: Polynomial,
    #[serde(rename = "P")]
    pub p: Polynomial,
    #[serde(rename = "Q")]
    pub q: Polynomial,
    #[serde(rename = "Qhat")]
    pub qhat: Polynomial,
    pub method: Method,
}

impl InvariantBundle {
    fn new(matroid: &Matroid, rk: usize, chi: Polynomial, p: Polynomial, q: Polynomial, method: Method) -> Self {
        InvariantBundle {
            matroid: matroid.spec(),
            rk,
            qhat: q.signed(rk),
            chi,
            p,
            q,
            method,
        }
    }

    /// Check the structural invariants every bundle must satisfy.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::MethodDisagreement {
            quantity: what.into(),
            detail: format!("bundle for {} violates its invariants", self.matroid.label()),
        });
        if self.p.constant_term() != 1.into() {
            return fail("P(0)");
        }
        if self.rk > 0 && !(self.p.degree_below_half(self.rk) && self.q.degree_below_half(self.rk)) {
            return fail("degree bound");
        }
        if self.rk == 0 && (self.p != Polynomial::one() || self.q != Polynomial::one()) {
            return fail("rank zero");
        }
        if self.qhat != self.q.signed(self.rk) {
            return fail("Qhat");
        }
        Ok(())
    }
}

pub fn build_lattice(matroid: &Matroid, config: &LatticeConfig) -> Result<Arc<FlatLattice>> {
    FlatLattice::build(matroid, config).map(Arc::new)
}

fn by_recursion(matroid: &Matroid, config: &LatticeConfig, fast_paths: bool) -> Result<InvariantBundle> {
    let l = build_lattice(matroid, config)?;
    let mut engine = IntervalEngine::new(&l, fast_paths);
    let (bot, top) = (l.bottom(), l.top());
    let chi = engine.chi(bot, top)?;
    let p = engine.kl(bot, top)?;
    let q = engine.inverse_kl(bot, top)?;
    if !inverse_kl_defining_holds(&mut engine, bot, top)? {
        return Err(Error::MethodDisagreement {
            quantity: "Q".into(),
            detail: "expansion-form solution fails the defining identity".into(),
        });
    }
    Ok(InvariantBundle::new(matroid, l.rank(), chi, p, q, Method::Recursion))
}

fn by_kls(matroid: &Matroid, config: &LatticeConfig) -> Result<InvariantBundle> {
    let l = build_lattice(matroid, config)?;
    let (bot, top) = (l.bottom(), l.top());
    let chi = IncidenceFunction::characteristic(l.clone());
    let f = chi.kls_solve_right()?;
    let f_inv = f.invert()?;
    let rk = l.rank();
    Ok(InvariantBundle::new(
        matroid,
        rk,
        chi.value(bot, top).clone(),
        f.value(bot, top).clone(),
        f_inv.value(bot, top).signed(rk),
        Method::Kls,
    ))
}

fn by_closed_form(matroid: &Matroid, config: &LatticeConfig) -> Result<InvariantBundle> {
    match ClosedShape::detect(matroid) {
        Some(shape) => {
            let (chi, p, q) = shape.invariants()?;
            Ok(InvariantBundle::new(matroid, shape.rank(), chi, p, q, Method::ClosedForm))
        }
        None => by_recursion(matroid, config, true),
    }
}

fn agree(a: &InvariantBundle, b: &InvariantBundle) -> Result<()> {
    let pairs = [("chi", &a.chi, &b.chi), ("P", &a.p, &b.p), ("Q", &a.q, &b.q)];
    for (name, x, y) in pairs {
        if x != y {
            return Err(Error::MethodDisagreement {
                quantity: name.into(),
                detail: format!("{:?} gives {x}, {:?} gives {y}", a.method, b.method),
            });
        }
    }
    Ok(())
}

/// Compute `chi`, `P`, `Q` and `Qhat` of a matroid by the requested route.
pub fn invariants(matroid: &Matroid, method: Method, config: &LatticeConfig) -> Result<InvariantBundle> {
    let bundle = match method {
        Method::Recursion => by_recursion(matroid, config, false)?,
        Method::Kls => by_kls(matroid, config)?,
        Method::ClosedForm => by_closed_form(matroid, config)?,
        Method::All => {
            let rec = by_recursion(matroid, config, false)?;
            let kls = by_kls(matroid, config)?;
            agree(&rec, &kls)?;
            if ClosedShape::detect(matroid).is_some() {
                agree(&rec, &by_closed_form(matroid, config)?)?;
            }
            InvariantBundle { method: Method::All, ..rec }
        }
    };
    bundle.validate()?;
    Ok(bundle)
}

/// `chi_M`, by closed form where available and the Mobius sum otherwise.
pub fn characteristic_polynomial(matroid: &Matroid, config: &LatticeConfig) -> Result<Polynomial> {
    if let Some(shape) = ClosedShape::detect(matroid) {
        return Ok(shape.invariants()?.0);
    }
    let l = build_lattice(matroid, config)?;
    IntervalEngine::new(&l, false).chi(l.bottom(), l.top())
}

pub fn kl_polynomial(matroid: &Matroid, method: Method, config: &LatticeConfig) -> Result<Polynomial> {
    Ok(invariants(matroid, method, config)?.p)
}

pub fn inverse_kl_polynomial(matroid: &Matroid, method: Method, config: &LatticeConfig) -> Result<Polynomial> {
    Ok(invariants(matroid, method, config)?.q)
}

/// Verdicts for the four identities linking `P` and `Q` over a matroid of
/// positive rank with ground set `E`:
///
/// ```text
/// q_to_p_upper: P_M = -sum_{F != E} P_{M_F} (-1)^{rk M^F} Q_{M^F}
/// q_to_p_lower: P_M = -sum_{F != 0} (-1)^{rk M_F} Q_{M_F} P_{M^F}
/// p_to_q_upper: Q_M = -sum_{F != 0} (-1)^{rk M_F} P_{M_F} Q_{M^F}
/// p_to_q_lower: Q_M = -sum_{F != E} Q_{M_F} (-1)^{rk M^F} P_{M^F}
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVerdicts {
    pub q_to_p_upper: bool,
    pub q_to_p_lower: bool,
    pub p_to_q_upper: bool,
    pub p_to_q_lower: bool,
}

impl RelationVerdicts {
    pub fn all(&self) -> bool {
        self.q_to_p_upper && self.q_to_p_lower && self.p_to_q_upper && self.p_to_q_lower
    }
}

/// Evaluate both sides of the four `P`/`Q` relations, with `P` and `Q` of
/// every localization and contraction computed by its own recursion.
pub fn relations_check(matroid: &Matroid, config: &LatticeConfig) -> Result<RelationVerdicts> {
    let l = build_lattice(matroid, config)?;
    relations_on_lattice(&l)
}

pub fn relations_on_lattice(l: &FlatLattice) -> Result<RelationVerdicts> {
    if l.rank() == 0 {
        return Err(Error::RankZero("relations check"));
    }
    let mut e = IntervalEngine::new(l, false);
    let (bot, top) = (l.bottom(), l.top());
    let p_m = e.kl(bot, top)?;
    let q_m = e.inverse_kl(bot, top)?;
    let mut sums = [Polynomial::zero(), Polynomial::zero(), Polynomial::zero(), Polynomial::zero()];
    for f in 0..l.len() {
        let (rk_loc, rk_con) = (l.weak_rank(bot, f), l.weak_rank(f, top));
        let p_loc = e.kl(bot, f)?;
        let q_loc = e.inverse_kl(bot, f)?;
        let p_con = e.kl(f, top)?;
        let q_con = e.inverse_kl(f, top)?;
        if f != top {
            sums[0] += &(&p_loc * &q_con.signed(rk_con));
            sums[3] += &(&q_loc * &p_con.signed(rk_con));
        }
        if f != bot {
            sums[1] += &(&q_loc.signed(rk_loc) * &p_con);
            sums[2] += &(&p_loc.signed(rk_loc) * &q_con);
        }
    }
    let [s0, s1, s2, s3] = sums;
    Ok(RelationVerdicts {
        q_to_p_upper: p_m == -s0,
        q_to_p_lower: p_m == -s1,
        p_to_q_upper: q_m == -s2,
        p_to_q_lower: q_m == -s3,
    })
}

/// Residual checks of the defining identities, both sides evaluated as full
/// polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningResiduals {
    /// `t^{rk} P_M(1/t) = sum_F chi_{M_F} P_{M^F}`
    pub kl_defining: bool,
    /// `t^{rk} (-1)^{rk} Q_M(1/t) = sum_F (-1)^{rk M_F} Q_{M_F} t^{rk M^F} chi_{M^F}(1/t)`
    pub inverse_kl_defining: bool,
    /// `Qhat_M = sum_F t^{rk M_F} Qhat_{M_F}(1/t) chi_{M^F}`
    pub inverse_kl_expansion: bool,
}

impl DefiningResiduals {
    pub fn all(&self) -> bool {
        self.kl_defining && self.inverse_kl_defining && self.inverse_kl_expansion
    }
}

fn inverse_kl_defining_holds(e: &mut IntervalEngine<'_>, bot: usize, top: usize) -> Result<bool> {
    let l = e.lattice();
    let rk = l.weak_rank(bot, top);
    let lhs = e.inverse_kl(bot, top)?.bar(rk)?.signed(rk);
    let mut rhs = Polynomial::zero();
    for f in l.interval(bot, top) {
        let (rk_loc, rk_con) = (l.weak_rank(bot, f), l.weak_rank(f, top));
        let q_loc = e.inverse_kl(bot, f)?.signed(rk_loc);
        rhs += &(&q_loc * &e.chi(f, top)?.bar(rk_con)?);
    }
    Ok(lhs == rhs)
}

pub fn defining_residuals(matroid: &Matroid, config: &LatticeConfig) -> Result<DefiningResiduals> {
    let l = build_lattice(matroid, config)?;
    defining_residuals_on_lattice(&l)
}

pub fn defining_residuals_on_lattice(l: &FlatLattice) -> Result<DefiningResiduals> {
    let mut e = IntervalEngine::new(l, false);
    let (bot, top) = (l.bottom(), l.top());
    let rk = l.rank();

    let kl_lhs = e.kl(bot, top)?.bar(rk)?;
    let mut kl_rhs = Polynomial::zero();
    let mut exp_rhs = Polynomial::zero();
    for f in 0..l.len() {
        kl_rhs += &(&e.chi(bot, f)? * &e.kl(f, top)?);
        let lower = e.qhat(bot, f)?.bar(l.weak_rank(bot, f))?;
        exp_rhs += &(&lower * &e.chi(f, top)?);
    }
    Ok(DefiningResiduals {
        kl_defining: kl_lhs == kl_rhs,
        inverse_kl_defining: inverse_kl_defining_holds(&mut e, bot, top)?,
        inverse_kl_expansion: e.qhat(bot, top)? == exp_rhs,
    })
}

/// `[t^0] Qhat_M = chi_M(0)`.
pub fn constant_term_holds(bundle: &InvariantBundle) -> bool {
    bundle.qhat.constant_term() == bundle.chi.constant_term()
}

/// Whether `chi`, `P` and `Q` of `M1 + M2` are the products of those of the
/// summands, with every side computed by recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicativity {
    pub chi: bool,
    pub p: bool,
    pub q: bool,
}

impl Multiplicativity {
    pub fn all(&self) -> bool {
        self.chi && self.p && self.q
    }
}

pub fn multiplicativity(left: &Matroid, right: &Matroid, config: &LatticeConfig) -> Result<Multiplicativity> {
    let sum = invariants(&Matroid::direct_sum(left, right)?, Method::Recursion, config)?;
    let a = invariants(left, Method::Recursion, config)?;
    let b = invariants(right, Method::Recursion, config)?;
    Ok(Multiplicativity {
        chi: sum.chi == &a.chi * &b.chi,
        p: sum.p == &a.p * &b.p,
        q: sum.q == &a.q * &b.q,
    })
}

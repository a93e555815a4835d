//! Acceptance criteria, run in order with one PASS/FAIL line each.
//! Everything is compared exactly.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{k, suite};
use matkls::invariants::{
    build_lattice, constant_term_holds, defining_residuals, invariants, inverse_kl_polynomial, kl_polynomial,
    multiplicativity, p_uniform_closed, q_uniform_closed, relations_check,
};
use matkls::lab::{check_log_concavity, check_nonnegativity, find_non_real_rooted, scan, Check, Family, ScanOptions};
use matkls::{IncidenceFunction, LatticeConfig, Matroid, MatroidSpec, Method, Polynomial};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cfg() -> LatticeConfig {
    LatticeConfig::default()
}

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.1?}, limit {limit:?}"))
}

fn boolean_closed_form() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let b = Matroid::boolean(n).unwrap();
        for method in [Method::Recursion, Method::Kls] {
            let q = inverse_kl_polynomial(&b, method, &cfg()).map_err(|e| e.to_string())?;
            let pp = kl_polynomial(&b, method, &cfg()).map_err(|e| e.to_string())?;
            ensure(q == Polynomial::one() && pp == Polynomial::one(), || {
                format!("B{n} by {method:?}: P = {pp}, Q = {q}")
            })?;
        }
    }
    within(start, Duration::from_secs(10))
}

fn uniform_closed_forms() -> Outcome {
    let start = Instant::now();
    for m in 1..=5 {
        for d in 1..=5 {
            let u = Matroid::uniform(m, d).unwrap();
            let b = invariants(&u, Method::Recursion, &cfg()).map_err(|e| e.to_string())?;
            let (qc, pc) = (q_uniform_closed(m, d).unwrap(), p_uniform_closed(m, d).unwrap());
            ensure(b.q == qc && b.p == pc, || {
                format!("U({m},{d}): recursion P = {}, Q = {}; closed P = {pc}, Q = {qc}", b.p, b.q)
            })?;
        }
    }
    let spots = [
        ((1, 2), p(&[2]), None),
        ((2, 3), p(&[6, 5]), Some(p(&[1, 5]))),
        ((2, 5), p(&[15, 35, 21]), None),
        ((1, 3), p(&[3, 2]), Some(p(&[1, 2]))),
    ];
    for ((m, d), q, pp) in spots {
        let u = Matroid::uniform(m, d).unwrap();
        let b = invariants(&u, Method::Recursion, &cfg()).map_err(|e| e.to_string())?;
        ensure(b.q == q, || format!("Q of U({m},{d}) is {}, expected {q}", b.q))?;
        if let Some(pp) = pp {
            ensure(b.p == pp, || format!("P of U({m},{d}) is {}, expected {pp}", b.p))?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn relations_on_suite() -> Outcome {
    let start = Instant::now();
    for (name, m) in suite() {
        let r = relations_check(&m, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.all(), || format!("{name}: {r:?}"))?;
    }
    within(start, Duration::from_secs(120))
}

fn kernel_and_algebra() -> Outcome {
    for (name, m) in suite() {
        let l = build_lattice(&m, &cfg()).map_err(|e| e.to_string())?;
        let err = |e: matkls::Error| format!("{name}: {e}");
        let delta = IncidenceFunction::delta(Arc::clone(&l));
        let zeta = IncidenceFunction::zeta(Arc::clone(&l));
        let mu = IncidenceFunction::mobius(Arc::clone(&l));
        let chi = IncidenceFunction::characteristic(Arc::clone(&l));
        ensure(chi.bar().map_err(err)? == chi.invert().map_err(err)?, || format!("{name}: bar(chi) != chi^-1"))?;
        ensure(zeta.convolve(&mu).map_err(err)? == delta, || format!("{name}: zeta mu != delta"))?;
        let f = chi.kls_solve_right().map_err(err)?;
        let finv = f.invert().map_err(err)?;
        ensure(f.convolve(&finv).map_err(err)? == delta, || format!("{name}: f f^-1 != delta"))?;
        let g = chi.bar().map_err(err)?.kls_solve_left().map_err(err)?;
        ensure(finv == g, || format!("{name}: f^-1 differs from the left solution for bar(chi)"))?;
    }
    Ok(())
}

fn defining_identities() -> Outcome {
    for (name, m) in suite() {
        let r = defining_residuals(&m, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.kl_defining && r.inverse_kl_defining, || format!("{name}: {r:?}"))?;
    }
    Ok(())
}

fn minor_invariance() -> Outcome {
    for (name, m) in [("U(2,4)", Matroid::uniform(2, 4).unwrap()), ("K4", k(4))] {
        let l = build_lattice(&m, &cfg()).map_err(|e| e.to_string())?;
        let chi = IncidenceFunction::characteristic(Arc::clone(&l));
        let finv = chi.kls_solve_right().and_then(|f| f.invert()).map_err(|e| e.to_string())?;
        for (a, b, value) in finv.entries() {
            let minor = m.minor(&l, a, b).map_err(|e| e.to_string())?;
            let qhat = invariants(&minor, Method::Recursion, &cfg()).map_err(|e| e.to_string())?.qhat;
            ensure(*value == qhat, || {
                format!("{name} on [{}, {}]: {value} vs {qhat}", l.flat(a), l.flat(b))
            })?;
        }
    }
    Ok(())
}

fn multiplicativity_pairs() -> Outcome {
    let pool = [
        ("B2", Matroid::boolean(2).unwrap()),
        ("U(1,2)", Matroid::uniform(1, 2).unwrap()),
        ("U(2,2)", Matroid::uniform(2, 2).unwrap()),
        ("U(1,3)", Matroid::uniform(1, 3).unwrap()),
    ];
    for (x, a) in &pool {
        for (y, b) in &pool {
            let r = multiplicativity(a, b, &cfg()).map_err(|e| e.to_string())?;
            ensure(r.p && r.q, || format!("{x} + {y}: {r:?}"))?;
        }
    }
    Ok(())
}

fn constant_term() -> Outcome {
    let mut all = suite();
    all.push(("U(2,5)".into(), Matroid::uniform(2, 5).unwrap()));
    for (name, m) in &all {
        let b = invariants(m, Method::Recursion, &cfg()).map_err(|e| e.to_string())?;
        ensure(constant_term_holds(&b), || {
            format!("{name}: [t^0] Qhat = {}, chi(0) = {}", b.qhat.constant_term(), b.chi.constant_term())
        })?;
    }
    let b = invariants(&Matroid::uniform(2, 5).unwrap(), Method::Recursion, &cfg()).map_err(|e| e.to_string())?;
    let expected = num_bigint::BigInt::from(-15);
    ensure(b.qhat.constant_term() == expected && b.chi.constant_term() == expected, || {
        format!("U(2,5): {} and {}", b.qhat.constant_term(), b.chi.constant_term())
    })
}

fn coefficient_properties_at_desk_scale() -> Outcome {
    let start = Instant::now();
    let checks = [Check::Nonnegativity, Check::LogConcavity];
    for family in [
        Family::GraphicConnectedSimple { min_vertices: 2, max_vertices: 6 },
        Family::Uniform { max_m: 8, max_d: 8 },
    ] {
        let r = scan(&family, &checks, &ScanOptions::default()).map_err(|e| e.to_string())?;
        let s = &r.summary;
        ensure(s.errors == 0 && !s.falsified(), || format!("{}: {:?}", s.description, s.first_counterexample))?;
    }
    // the single-matroid checks agree on a few members
    for m in [k(4), Matroid::uniform(3, 7).unwrap()] {
        let ok = check_nonnegativity(&m, &cfg()).map_err(|e| e.to_string())?.holds
            && check_log_concavity(&m, &cfg()).map_err(|e| e.to_string())?.holds;
        ensure(ok, || m.spec().label())?;
    }
    within(start, Duration::from_secs(600))
}

fn non_real_rooted_witness() -> Outcome {
    let w = find_non_real_rooted(&Family::Uniform { max_m: 5, max_d: 5 }, &cfg())
        .map_err(|e| e.to_string())?
        .ok_or("no witness found")?;
    ensure(
        w.matroid == MatroidSpec::Uniform { m: 2, d: 5 } && w.real_roots == 0 && w.degree == 2,
        || format!("first witness is {} with Q = {}, {} real roots of degree {}", w.matroid.label(), w.q, w.real_roots, w.degree),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("boolean closed form, n <= 8, recursion and kls", boolean_closed_form),
        ("uniform closed forms equal recursion, m,d <= 5", uniform_closed_forms),
        ("four P/Q relations on the standard suite", relations_on_suite),
        ("kernel and incidence algebra laws on the suite", kernel_and_algebra),
        ("defining identities hold as full polynomial equalities", defining_identities),
        ("inverse of the KLS function matches minors, U(2,4) and K4", minor_invariance),
        ("P and Q multiplicative on direct sums", multiplicativity_pairs),
        ("constant term of Qhat equals chi(0)", constant_term),
        ("nonnegativity and log-concavity, graphs <= 6 vertices, U(m,d) m,d <= 8", coefficient_properties_at_desk_scale),
        ("first non-real-rooted Q in the uniform grid m,d <= 5 is U(2,5)", non_real_rooted_witness),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let spent = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {:>2}  {title}  ({spent:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}  {title}  ({spent:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

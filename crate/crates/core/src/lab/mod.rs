//! Batch checks of coefficient properties of inverse Kazhdan-Lusztig
//! polynomials over families of matroids.
//!
//! A scan computes `rk`, `chi` and `Q` for every member of a [`Family`] and
//! records, per matroid, whether `Q` has nonnegative coefficients, whether
//! they are log-concave without internal zeros, how many distinct real roots
//! `Q` has, and whether `[t^0] Qhat = chi(0)`. Violations are recorded with
//! witnesses; a scan never stops at one.
//!
//! Reports are written as JSON lines, one record per matroid followed by a
//! summary. Every verdict in a record can be recomputed from the stored
//! polynomials, see [`ScanRecord::recheck`].

mod cache;
mod family;
pub mod graphs;

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{invariants, Method};
use crate::lattice::LatticeConfig;
use crate::matroid::{Matroid, MatroidSpec};
use crate::polynomial::Polynomial;

pub use cache::{spec_key, CacheEntry, ResultCache};
pub use family::{binary_matroid, generate_family, Family, MAX_FAMILY_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Nonnegativity,
    LogConcavity,
    RealRoots,
    ConstantTerm,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Nonnegativity, Check::LogConcavity, Check::RealRoots, Check::ConstantTerm];

    pub fn name(self) -> &'static str {
        match self {
            Check::Nonnegativity => "nonnegativity",
            Check::LogConcavity => "log_concavity",
            Check::RealRoots => "real_roots",
            Check::ConstantTerm => "constant_term",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nonnegativity" | "nonneg" => Ok(Check::Nonnegativity),
            "log_concavity" | "logconcave" => Ok(Check::LogConcavity),
            "real_roots" | "realroots" => Ok(Check::RealRoots),
            "constant_term" | "constant" => Ok(Check::ConstantTerm),
            other => Err(Error::MalformedSpec(format!("unknown check {other:?}"))),
        }
    }
}

/// Outcome of one check; `witness` is the offending coefficient index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Verdict {
    fn from_witness(witness: Option<usize>) -> Self {
        Verdict { holds: witness.is_none(), witness }
    }

    fn holds(holds: bool) -> Self {
        Verdict { holds, witness: None }
    }
}

/// Per-matroid verdicts; checks that were not requested are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdicts {
    pub nonnegative: Option<Verdict>,
    pub log_concave: Option<Verdict>,
    pub no_internal_zeros: Option<Verdict>,
    pub real_roots: Option<usize>,
    pub constant_term: Option<Verdict>,
}

impl Verdicts {
    /// Verdicts derived from `rk`, `chi` and `Q` alone.
    pub fn compute(rk: usize, chi: &Polynomial, q: &Polynomial, checks: &[Check]) -> Result<Self> {
        let mut v = Verdicts::default();
        for check in checks {
            match check {
                Check::Nonnegativity => v.nonnegative = Some(Verdict::from_witness(q.first_negative())),
                Check::LogConcavity => {
                    v.log_concave = Some(Verdict::from_witness(q.log_concavity_violation()));
                    v.no_internal_zeros = Some(Verdict::from_witness(q.internal_zero()));
                }
                Check::RealRoots => v.real_roots = Some(q.count_real_roots()?),
                Check::ConstantTerm => {
                    v.constant_term = Some(Verdict::holds(q.signed(rk).constant_term() == chi.constant_term()))
                }
            }
        }
        Ok(v)
    }
}

/// One matroid of a scan. Either `verdicts` or `error` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRecord {
    pub index: usize,
    pub label: String,
    pub matroid: MatroidSpec,
    pub rk: Option<usize>,
    pub chi: Option<Polynomial>,
    #[serde(rename = "Q")]
    pub q: Option<Polynomial>,
    pub verdicts: Option<Verdicts>,
    pub error: Option<String>,
}

impl ScanRecord {
    fn failed(index: usize, matroid: MatroidSpec, error: &Error) -> Self {
        ScanRecord {
            index,
            label: matroid.label(),
            matroid,
            rk: None,
            chi: None,
            q: None,
            verdicts: None,
            error: Some(error.to_string()),
        }
    }

    fn from_values(index: usize, matroid: MatroidSpec, entry: &CacheEntry, checks: &[Check]) -> Self {
        match Verdicts::compute(entry.rk, &entry.chi, &entry.q, checks) {
            Ok(v) => ScanRecord {
                index,
                label: matroid.label(),
                matroid,
                rk: Some(entry.rk),
                chi: Some(entry.chi.clone()),
                q: Some(entry.q.clone()),
                verdicts: Some(v),
                error: None,
            },
            Err(e) => Self::failed(index, matroid, &e),
        }
    }

    /// Recompute the verdicts from the stored polynomials. `None` for
    /// records that carry an error.
    pub fn recheck(&self, checks: &[Check]) -> Option<Result<Verdicts>> {
        match (self.rk, &self.chi, &self.q) {
            (Some(rk), Some(chi), Some(q)) => Some(Verdicts::compute(rk, chi, q, checks)),
            _ => None,
        }
    }

    fn degree(&self) -> usize {
        self.q.as_ref().and_then(Polynomial::degree).unwrap_or(0)
    }

    /// Whether `Q` has positive degree and fewer distinct real roots than
    /// its degree.
    pub fn non_real_rooted(&self) -> bool {
        let deg = self.degree();
        matches!(self.verdicts.as_ref().and_then(|v| v.real_roots), Some(r) if deg >= 1 && r < deg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub index: usize,
    pub label: String,
    pub detail: String,
}

/// First violation of each check, in enumeration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FirstWitnesses {
    pub nonnegativity: Option<Witness>,
    pub log_concavity: Option<Witness>,
    pub internal_zeros: Option<Witness>,
    pub real_roots: Option<Witness>,
    pub constant_term: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSummary {
    pub family: Family,
    pub description: String,
    pub checks: Vec<Check>,
    pub total: usize,
    pub errors: usize,
    pub nonnegativity_failures: usize,
    pub log_concavity_failures: usize,
    pub internal_zero_failures: usize,
    /// Records whose `Q` has positive degree but fewer real roots. Not a
    /// failure: these polynomials need not be real-rooted.
    pub non_real_rooted: usize,
    pub constant_term_failures: usize,
    pub first_counterexample: FirstWitnesses,
}

impl ScanSummary {
    fn new(family: &Family, checks: &[Check]) -> Self {
        ScanSummary {
            family: family.clone(),
            description: family.label(),
            checks: checks.to_vec(),
            total: 0,
            errors: 0,
            nonnegativity_failures: 0,
            log_concavity_failures: 0,
            internal_zero_failures: 0,
            non_real_rooted: 0,
            constant_term_failures: 0,
            first_counterexample: FirstWitnesses::default(),
        }
    }

    fn absorb(&mut self, r: &ScanRecord) {
        self.total += 1;
        let Some(v) = &r.verdicts else {
            self.errors += 1;
            return;
        };
        let witness = |detail: String| Witness { index: r.index, label: r.label.clone(), detail };
        let w = &mut self.first_counterexample;
        if let Some(Verdict { holds: false, witness: i }) = v.nonnegative {
            self.nonnegativity_failures += 1;
            w.nonnegativity.get_or_insert_with(|| witness(format!("negative coefficient at t^{}", i.unwrap_or(0))));
        }
        if let Some(Verdict { holds: false, witness: i }) = v.log_concave {
            self.log_concavity_failures += 1;
            w.log_concavity.get_or_insert_with(|| witness(format!("log-concavity fails at index {}", i.unwrap_or(0))));
        }
        if let Some(Verdict { holds: false, witness: i }) = v.no_internal_zeros {
            self.internal_zero_failures += 1;
            w.internal_zeros.get_or_insert_with(|| witness(format!("internal zero at t^{}", i.unwrap_or(0))));
        }
        if r.non_real_rooted() {
            self.non_real_rooted += 1;
            let roots = v.real_roots.unwrap_or(0);
            let deg = r.degree();
            w.real_roots.get_or_insert_with(|| witness(format!("{roots} real roots, degree {deg}")));
        }
        if let Some(Verdict { holds: false, .. }) = v.constant_term {
            self.constant_term_failures += 1;
            w.constant_term.get_or_insert_with(|| witness("[t^0] Qhat differs from chi(0)".into()));
        }
    }

    /// Whether a conjectured or proven property failed somewhere. Errors and
    /// non-real-rooted polynomials do not count.
    pub fn falsified(&self) -> bool {
        self.nonnegativity_failures + self.log_concavity_failures + self.internal_zero_failures + self.constant_term_failures
            > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportLine {
    Record(ScanRecord),
    Summary(ScanSummary),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            write_line(&mut out, &ReportLine::Record(r.clone()))?;
        }
        write_line(&mut out, &ReportLine::Summary(self.summary.clone()))
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut records = Vec::new();
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(&line).map_err(|e| Error::MalformedSpec(e.to_string()))? {
                ReportLine::Record(r) => records.push(r),
                ReportLine::Summary(summary) => return Ok(ScanReport { records, summary }),
            }
        }
        Err(Error::MalformedSpec("report has no summary line".into()))
    }

    /// Whether every record's verdicts are reproduced from its stored
    /// polynomials and the summary matches the records.
    pub fn is_self_consistent(&self) -> bool {
        let checks = &self.summary.checks;
        let records_ok = self.records.iter().enumerate().all(|(i, r)| {
            r.index == i
                && match r.recheck(checks) {
                    Some(Ok(v)) => r.verdicts.as_ref() == Some(&v),
                    Some(Err(_)) => false,
                    None => r.verdicts.is_none() && r.error.is_some(),
                }
        });
        let mut summary = ScanSummary::new(&self.summary.family, checks);
        self.records.iter().for_each(|r| summary.absorb(r));
        records_ok && summary == self.summary
    }
}

pub fn write_line<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub config: LatticeConfig,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Append-only result cache.
    pub cache: Option<std::path::PathBuf>,
}

const CHUNK: usize = 64;

fn compute_entry(matroid: &Matroid, config: &LatticeConfig) -> Result<CacheEntry> {
    let b = invariants(matroid, Method::ClosedForm, config)?;
    Ok(CacheEntry { key: spec_key(&b.matroid), matroid: b.matroid, rk: b.rk, chi: b.chi, q: b.q })
}

/// Run `checks` over `family`, calling `sink` on each record in enumeration
/// order as soon as it and all earlier records are done.
pub fn scan_with<F>(family: &Family, checks: &[Check], options: &ScanOptions, mut sink: F) -> Result<ScanReport>
where
    F: FnMut(&ScanRecord) -> Result<()>,
{
    let members = generate_family(family)?;
    let mut cache = match &options.cache {
        Some(path) => Some(ResultCache::open(path)?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut summary = ScanSummary::new(family, &checks);
    let mut records = Vec::with_capacity(members.len());
    for (chunk_no, chunk) in members.chunks(CHUNK).enumerate() {
        let specs: Vec<MatroidSpec> = chunk.iter().map(Matroid::spec).collect();
        let cached: Vec<Option<CacheEntry>> =
            specs.iter().map(|s| cache.as_ref().and_then(|c| c.get(s).cloned())).collect();
        let computed: Vec<Option<Result<CacheEntry>>> = pool.install(|| {
            chunk
                .par_iter()
                .zip(cached.par_iter())
                .map(|(m, hit)| match hit {
                    Some(_) => None,
                    None => Some(compute_entry(m, &options.config)),
                })
                .collect()
        });
        for (i, ((spec, hit), fresh)) in specs.into_iter().zip(cached).zip(computed).enumerate() {
            let index = chunk_no * CHUNK + i;
            let record = match (hit, fresh) {
                (Some(entry), _) => ScanRecord::from_values(index, spec, &entry, &checks),
                (None, Some(Ok(entry))) => {
                    let r = ScanRecord::from_values(index, spec, &entry, &checks);
                    if let Some(c) = cache.as_mut() {
                        c.insert(entry)?;
                    }
                    r
                }
                (None, Some(Err(e))) => ScanRecord::failed(index, spec, &e),
                (None, None) => unreachable!("uncached matroids are always computed"),
            };
            summary.absorb(&record);
            sink(&record)?;
            records.push(record);
        }
    }
    Ok(ScanReport { records, summary })
}

pub fn scan(family: &Family, checks: &[Check], options: &ScanOptions) -> Result<ScanReport> {
    scan_with(family, checks, options, |_| Ok(()))
}

fn inverse_kl(matroid: &Matroid, config: &LatticeConfig) -> Result<(Polynomial, usize, Polynomial)> {
    let b = invariants(matroid, Method::ClosedForm, config)?;
    Ok((b.q, b.rk, b.chi))
}

/// Whether all coefficients of `Q_M` are nonnegative.
pub fn check_nonnegativity(matroid: &Matroid, config: &LatticeConfig) -> Result<Verdict> {
    Ok(Verdict::from_witness(inverse_kl(matroid, config)?.0.first_negative()))
}

/// Whether the coefficients of `Q_M` are log-concave with no internal
/// zeros; the witness is the first failing index.
pub fn check_log_concavity(matroid: &Matroid, config: &LatticeConfig) -> Result<Verdict> {
    let q = inverse_kl(matroid, config)?.0;
    Ok(Verdict::from_witness(q.log_concavity_violation().or(q.internal_zero())))
}

/// Whether `[t^0] Qhat_M = chi_M(0)`.
pub fn check_constant_term(matroid: &Matroid, config: &LatticeConfig) -> Result<Verdict> {
    let (q, rk, chi) = inverse_kl(matroid, config)?;
    Ok(Verdict::holds(q.signed(rk).constant_term() == chi.constant_term()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootWitness {
    pub index: usize,
    pub matroid: MatroidSpec,
    #[serde(rename = "Q")]
    pub q: Polynomial,
    pub degree: usize,
    pub real_roots: usize,
}

/// First member of `family`, in enumeration order, whose `Q` has positive
/// degree and fewer distinct real roots than its degree.
pub fn find_non_real_rooted(family: &Family, config: &LatticeConfig) -> Result<Option<RealRootWitness>> {
    for (index, m) in generate_family(family)?.iter().enumerate() {
        let q = inverse_kl(m, config)?.0;
        let degree = q.degree().unwrap_or(0);
        if degree == 0 {
            continue;
        }
        let real_roots = q.count_real_roots()?;
        if real_roots < degree {
            return Ok(Some(RealRootWitness { index, matroid: m.spec(), q, degree, real_roots }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> LatticeConfig {
        LatticeConfig::default()
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn single_matroid_checks() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let b4 = Matroid::boolean(4).unwrap();
        let k4 = Matroid::graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let yes = Verdict { holds: true, witness: None };
        for m in [&u25, &b4, &k4] {
            assert_eq!(check_nonnegativity(m, &cfg()).unwrap(), yes);
            assert_eq!(check_log_concavity(m, &cfg()).unwrap(), yes);
            assert_eq!(check_constant_term(m, &cfg()).unwrap(), yes);
        }
        for (m, d) in [(1, 2), (2, 5)] {
            assert_eq!(check_constant_term(&Matroid::uniform(m, d).unwrap(), &cfg()).unwrap(), yes);
        }
    }

    #[test]
    fn verdicts_report_witnesses() {
        let v = Verdicts::compute(4, &p(&[1]), &p(&[1, -2, 0, 1]), &Check::ALL).unwrap();
        assert_eq!(v.nonnegative, Some(Verdict { holds: false, witness: Some(1) }));
        assert_eq!(v.no_internal_zeros, Some(Verdict { holds: false, witness: Some(2) }));
        assert_eq!(v.constant_term, Some(Verdict { holds: true, witness: None }));
        let v = Verdicts::compute(1, &p(&[-1, 1]), &p(&[1]), &[Check::ConstantTerm]).unwrap();
        assert_eq!(v.constant_term, Some(Verdict { holds: true, witness: None }));
        assert_eq!(v.nonnegative, None);
    }

    #[test]
    fn boolean_scan() {
        let r = scan(&Family::Boolean { max_n: 5 }, &Check::ALL, &ScanOptions::default()).unwrap();
        assert_eq!(r.records.len(), 5);
        assert_eq!(r.summary.total, 5);
        assert!(!r.summary.falsified());
        assert_eq!(r.summary.errors, 0);
        assert_eq!(r.summary.first_counterexample, FirstWitnesses::default());
        assert!(r.is_self_consistent());
    }

    #[test]
    fn uniform_scan_and_real_roots() {
        let r = scan(&Family::Uniform { max_m: 4, max_d: 4 }, &Check::ALL, &ScanOptions::default()).unwrap();
        assert!(!r.summary.falsified());
        assert_eq!(r.summary.errors, 0);
        assert!(r.is_self_consistent());
        assert_eq!(find_non_real_rooted(&Family::Boolean { max_n: 6 }, &cfg()).unwrap(), None);
        assert_eq!(find_non_real_rooted(&Family::Uniform { max_m: 5, max_d: 2 }, &cfg()).unwrap(), None);
    }

    #[test]
    fn first_non_real_rooted_uniform_in_grid_order() {
        let w = find_non_real_rooted(&Family::Uniform { max_m: 5, max_d: 5 }, &cfg()).unwrap().unwrap();
        assert_eq!(w.matroid, MatroidSpec::Uniform { m: 1, d: 5 });
        assert_eq!(w.q, p(&[5, 9, 5]));
        assert_eq!((w.degree, w.real_roots), (2, 0));
        let q25 = q_of(2, 5);
        assert_eq!(q25, p(&[15, 35, 21]));
        assert_eq!(q25.count_real_roots().unwrap(), 0);
    }

    fn q_of(m: usize, d: usize) -> Polynomial {
        inverse_kl(&Matroid::uniform(m, d).unwrap(), &cfg()).unwrap().0
    }

    #[test]
    fn errors_are_recorded_not_raised() {
        let opts = ScanOptions { config: LatticeConfig { max_ground: 4 }, ..Default::default() };
        let f = Family::GraphicConnectedSimple { min_vertices: 4, max_vertices: 4 };
        let r = scan(&f, &Check::ALL, &opts).unwrap();
        assert_eq!(r.records.len(), 6);
        assert!(r.summary.errors > 0);
        assert!(r.records.iter().any(|x| x.error.is_some()));
        assert!(r.is_self_consistent());
    }

    #[test]
    fn jsonl_round_trip() {
        let r = scan(&Family::Uniform { max_m: 2, max_d: 3 }, &Check::ALL, &ScanOptions::default()).unwrap();
        let mut buf = Vec::new();
        r.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().last().unwrap().starts_with("{\"kind\":\"summary\""));
        assert_eq!(ScanReport::read_jsonl(&buf[..]).unwrap(), r);
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let f = Family::GraphicConnectedSimple { min_vertices: 2, max_vertices: 5 };
        let one = scan(&f, &Check::ALL, &ScanOptions { workers: Some(1), ..Default::default() }).unwrap();
        let four = scan(&f, &Check::ALL, &ScanOptions { workers: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one, four);
        assert!(!one.summary.falsified());
    }

    #[test]
    fn check_names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }
}

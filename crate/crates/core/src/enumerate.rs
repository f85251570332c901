//! Exhaustive enumeration of small distributive lattices through their
//! Birkhoff duals, and the scan that runs the theorem suite on each.
//!
//! Every poset on `k` elements is a poset on `k - 1` elements plus one new
//! maximal element sitting over some down-set. Level `k` is produced from
//! level `k - 1` that way and deduplicated by canonical code.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::canon::{canonical_code, PosetCode};
use crate::checks::{theorem_checks, verify_with, ConjectureStatus, TheoremCheck, TheoremReport};
use crate::error::{LatticeError, Result};
use crate::lattice::ideal_lattice;
use crate::poset::Poset;
use crate::registry::Registry;

pub const DEFAULT_MAX_POSET_SIZE: usize = 7;

/// Hard ceiling for configurable caps; down-sets are enumerated as `u64` masks.
const ABSOLUTE_MAX_POSET_SIZE: usize = 16;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let limit = cap.min(ABSOLUTE_MAX_POSET_SIZE);
    if n > limit {
        return Err(LatticeError::SizeLimitExceeded {
            limit,
            what: "poset elements",
        });
    }
    Ok(())
}

fn down_set_masks(p: &Poset) -> Vec<u64> {
    let k = p.size();
    let below: Vec<u64> = (0..k)
        .map(|a| p.below(a).ones().fold(0u64, |m, b| m | (1 << b)))
        .collect();
    (0..1u64 << k)
        .filter(|&mask| (0..k).all(|a| mask & (1 << a) == 0 || below[a] & !mask == 0))
        .collect()
}

fn children(parent: &PosetCode) -> Vec<PosetCode> {
    let p = parent.to_poset();
    let k = p.size();
    let names = crate::canon::default_names(k + 1);
    down_set_masks(&p)
        .into_iter()
        .map(|mask| {
            let mut below: Vec<FixedBitSet> = (0..k)
                .map(|a| {
                    let mut row = FixedBitSet::with_capacity(k + 1);
                    row.extend(p.below(a).ones());
                    row
                })
                .collect();
            let mut top = FixedBitSet::with_capacity(k + 1);
            top.extend((0..k).filter(|&b| mask & (1 << b) != 0));
            top.insert(k);
            below.push(top);
            canonical_code(&Poset::from_below(names.clone(), below))
        })
        .collect()
}

/// Unlabeled posets of every size `0..=max`, each level sorted by code.
pub fn enumerate_posets_upto(max: usize, cap: usize) -> Result<Vec<Vec<PosetCode>>> {
    check_cap(max, cap)?;
    let empty = canonical_code(&Poset::from_below(Vec::new(), Vec::new()));
    let mut levels = vec![vec![empty]];
    for _ in 0..max {
        let prev = levels.last().unwrap();
        let next: BTreeSet<PosetCode> = prev.par_iter().flat_map_iter(children).collect();
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

/// All unlabeled posets on `n` elements, sorted by code.
pub fn enumerate_posets(n: usize) -> Result<Vec<PosetCode>> {
    enumerate_posets_with_cap(n, DEFAULT_MAX_POSET_SIZE)
}

pub fn enumerate_posets_with_cap(n: usize, cap: usize) -> Result<Vec<PosetCode>> {
    Ok(enumerate_posets_upto(n, cap)?.pop().unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSummary {
    pub code: PosetCode,
    pub size: usize,
    pub j_size: usize,
    pub n: u64,
    pub e: usize,
    pub thick: bool,
    pub complete_intersection: bool,
    pub conjecture: ConjectureStatus,
}

impl LatticeSummary {
    fn from_report(r: &TheoremReport) -> Self {
        Self {
            code: r.lattice_id.clone(),
            size: r.record.size,
            j_size: r.record.j_size,
            n: r.record.n,
            e: r.record.e,
            thick: r.record.thick,
            complete_intersection: r.complete_intersection,
            conjecture: r.conjecture,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub max_poset_size: usize,
    pub lattices_tested: usize,
    /// `(lattice code, failed check)`, sorted.
    pub failures: Vec<(PosetCode, &'static str)>,
    pub conjecture_counterexamples: Vec<LatticeSummary>,
    /// One entry per lattice, sorted by code.
    pub lattices: Vec<LatticeSummary>,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub max_poset_size: usize,
    pub workers: usize,
    pub poset_cap: usize,
    /// Restricts the suite to these checks; `None` runs all of them.
    pub checks: Option<Vec<String>>,
}

impl ScanConfig {
    pub fn new(max_poset_size: usize, workers: usize) -> Self {
        Self {
            max_poset_size,
            workers,
            poset_cap: DEFAULT_MAX_POSET_SIZE,
            checks: None,
        }
    }
}

/// Scans every lattice whose Birkhoff dual has at most `max_poset_size`
/// elements, using `workers` threads.
pub fn conjecture_scan(max_poset_size: usize, workers: usize) -> Result<ScanReport> {
    match run_scan(&ScanConfig::new(max_poset_size, workers)) {
        Ok(r) => Ok(r),
        Err(ScanError::Lattice(e)) => Err(e),
        Err(other) => panic!("default scan configuration failed: {other}"),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    UnknownCheck(#[from] crate::registry::UnknownStrategy),
    #[error("thread pool: {0}")]
    Pool(String),
}

pub fn run_scan(cfg: &ScanConfig) -> std::result::Result<ScanReport, ScanError> {
    let mut checks: Registry<dyn TheoremCheck> = theorem_checks();
    if let Some(names) = &cfg.checks {
        checks.retain_names(names)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| ScanError::Pool(e.to_string()))?;
    let (mut reports, cap_err) = pool.install(|| {
        let levels = match enumerate_posets_upto(cfg.max_poset_size, cfg.poset_cap) {
            Ok(l) => l,
            Err(e) => return (Vec::new(), Some(e)),
        };
        let codes: Vec<&PosetCode> = levels.iter().flatten().collect();
        let reports: Vec<TheoremReport> = codes
            .par_iter()
            .map(|code| {
                let lattice = ideal_lattice(&code.to_poset()).expect("small poset");
                verify_with(&checks, &lattice)
            })
            .collect();
        (reports, None)
    });
    if let Some(e) = cap_err {
        return Err(e.into());
    }
    reports.sort_by(|a, b| a.lattice_id.cmp(&b.lattice_id));

    let mut failures = Vec::new();
    let mut lattices = Vec::with_capacity(reports.len());
    for r in &reports {
        failures.extend(r.failures().map(|c| (r.lattice_id.clone(), c)));
        lattices.push(LatticeSummary::from_report(r));
    }
    let conjecture_counterexamples = lattices
        .iter()
        .filter(|s| s.conjecture == ConjectureStatus::Violated)
        .cloned()
        .collect();
    Ok(ScanReport {
        max_poset_size: cfg.max_poset_size,
        lattices_tested: reports.len(),
        failures,
        conjecture_counterexamples,
        lattices,
    })
}

impl ScanReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let holds = self
            .lattices
            .iter()
            .filter(|s| s.conjecture == ConjectureStatus::Holds)
            .count();
        let thick = self.lattices.iter().filter(|s| s.thick).count();
        let ci = self
            .lattices
            .iter()
            .filter(|s| s.complete_intersection)
            .count();
        let _ = writeln!(out, "complete_intersections = {ci}");
        let _ = writeln!(
            out,
            "conjecture_counterexamples = {}",
            self.conjecture_counterexamples.len()
        );
        let _ = writeln!(out, "conjecture_holds = {holds}");
        let _ = writeln!(out, "failures = {}", self.failures.len());
        let _ = writeln!(out, "lattices_tested = {}", self.lattices_tested);
        let _ = writeln!(out, "max_poset_size = {}", self.max_poset_size);
        let _ = writeln!(out, "thick_lattices = {thick}");
        for (code, check) in &self.failures {
            let _ = writeln!(out, "failure {code} {check}");
        }
        for c in &self.conjecture_counterexamples {
            let _ = writeln!(
                out,
                "counterexample {} size={} j={} n={} e={} e-j={}",
                c.code,
                c.size,
                c.j_size,
                c.n,
                c.e,
                c.e as i64 - c.j_size as i64
            );
        }
        let _ = writeln!(
            out,
            "lattices_tested: {}  failures: {}",
            self.lattices_tested,
            self.failures.len()
        );
        out
    }

    /// `code TAB |L| TAB |J| TAB n TAB e TAB thick TAB ci TAB conjecture`
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for s in &self.lattices {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                s.code,
                s.size,
                s.j_size,
                s.n,
                s.e,
                s.thick,
                s.complete_intersection,
                s.conjecture.as_str()
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let levels = enumerate_posets_upto(5, 7).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn levels_sorted_and_sized() {
        for (k, level) in enumerate_posets_upto(4, 7).unwrap().iter().enumerate() {
            assert!(level.windows(2).all(|w| w[0] < w[1]));
            assert!(level.iter().all(|c| c.size() == k));
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_posets(8),
            Err(LatticeError::SizeLimitExceeded { limit: 7, .. })
        ));
        assert_eq!(enumerate_posets_with_cap(3, 3).unwrap().len(), 5);
    }

    #[test]
    fn scan_max_two() {
        let r = conjecture_scan(2, 1).unwrap();
        assert_eq!(r.lattices_tested, 4);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn unknown_check_rejected() {
        let mut cfg = ScanConfig::new(1, 1);
        cfg.checks = Some(vec!["nope".into()]);
        assert!(matches!(run_scan(&cfg), Err(ScanError::UnknownCheck(_))));
    }
}

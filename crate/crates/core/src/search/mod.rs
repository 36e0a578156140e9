//! Exhaustive search over the inverse-closed connection sets of a group.
//!
//! For each subset `S` the pipeline runs cheapest check first:
//!
//! 1. `S` must generate the group (otherwise the graph is disconnected and
//!    cannot be nuciferous).
//! 2. `A·x = e₀` is reduced modulo `2^31 − 1`. A nonzero last unknown
//!    proves `(A⁻¹)[0][0] ≠ 0`; a singular reduction is accepted only with an
//!    integer kernel vector checked exactly against `A`.
//! 3. Otherwise the same reduction runs modulo the first working prime, then
//!    the second if the first divides `det(A)`. Zero modulo both certifies
//!    `det(A) = 0`.
//!
//! Right translations are automorphisms of a Cayley graph, so `A⁻¹` has a
//! constant diagonal and a nonzero `(A⁻¹)[0][0]` rejects `S` soundly.
//!
//! 4. Survivors get the full exact certificate, and hits get a canonical
//!    form.
//!
//! The subset index space is cut into contiguous blocks processed in
//! parallel. Results are merged and sorted, so the report does not depend on
//! the number of workers.

mod checkpoint;
mod dedup;
mod enumerate;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, CanonCert, CanonError};
use crate::cayley::{cayley_rows, ConnectionSet};
use crate::certify::screen::{
    fast_screen, screen_first_diagonal, ColumnScreen, FastScreen, ScreenScratch,
};
use crate::certify::{adjugate_exact_with, Certificate, CertifyError, PrimeSet, Verdict};
use crate::graph::BitGraph;
use crate::groups::GroupTable;

pub use dedup::{dedup_cross_group, GlobalClass, GlobalClasses};
pub use enumerate::{enumerate_connection_sets, SubsetSpace};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("group order {order} exceeds the certified range {max}")]
    ExactnessRange { order: usize, max: usize },
    #[error("invalid degree range {min}..={max} for a group of order {order}")]
    DegreeRange {
        min: usize,
        max: usize,
        order: usize,
    },
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("resume file mismatch: {0}")]
    ResumeMismatch(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub degree_min: usize,
    /// `None` means `order − 1`.
    pub degree_max: Option<usize>,
    pub jobs: usize,
    /// Subsets per block, rounded up to a power of two.
    pub block_size: u64,
    /// Skip connection sets that do not generate the group.
    pub prune_disconnected: bool,
    pub checkpoint: Option<PathBuf>,
    /// Incremented once per finished block.
    pub progress: Option<Arc<AtomicU64>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            degree_min: 0,
            degree_max: None,
            jobs: 1,
            block_size: 1 << 12,
            prune_disconnected: true,
            checkpoint: None,
            progress: None,
        }
    }
}

/// One nuciferous hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub group: String,
    pub order: usize,
    pub connection_set: Vec<usize>,
    pub degree: usize,
    #[serde(with = "i128_string")]
    pub det: i128,
    pub verdict: Verdict,
    #[serde(with = "cert_hex")]
    pub cert: CanonCert,
    pub graph6: String,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl SearchRecord {
    pub fn mask(&self) -> u64 {
        self.connection_set.iter().fold(0, |m, &x| m | 1 << x)
    }
}

/// A canonical class within one group, with the number of connection sets
/// that realise it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub degree: usize,
    #[serde(with = "cert_hex")]
    pub cert: CanonCert,
    pub connection_sets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub group: String,
    pub order: usize,
    pub involutions: usize,
    pub pairs: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub subsets_enumerated: u64,
    pub subsets_pruned: u64,
    pub prescreen_singular: u64,
    pub prescreen_diag_nonzero: u64,
    pub candidates_certified: u64,
    pub records: Vec<SearchRecord>,
    /// Degree → number of distinct isomorphism classes.
    pub classes: BTreeMap<usize, usize>,
    pub class_details: Vec<ClassSummary>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl GroupReport {
    /// Deterministic JSON (wall time is not included).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Recomputes `classes` and `class_details` from `records`.
    pub(crate) fn tally(&mut self) {
        let mut per: BTreeMap<(usize, CanonCert), usize> = BTreeMap::new();
        for r in &self.records {
            *per.entry((r.degree, r.cert.clone())).or_default() += 1;
        }
        self.classes.clear();
        for (degree, _) in per.keys() {
            *self.classes.entry(*degree).or_default() += 1;
        }
        self.class_details = per
            .into_iter()
            .map(|((degree, cert), connection_sets)| ClassSummary {
                degree,
                cert,
                connection_sets,
            })
            .collect();
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct BlockStats {
    pub enumerated: u64,
    pub pruned: u64,
    pub singular: u64,
    pub diag_rejected: u64,
    pub certified: u64,
}

impl BlockStats {
    fn add(&mut self, o: &BlockStats) {
        self.enumerated += o.enumerated;
        self.pruned += o.pruned;
        self.singular += o.singular;
        self.diag_rejected += o.diag_rejected;
        self.certified += o.certified;
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct BlockOutcome {
    pub stats: BlockStats,
    /// Connection-set masks certified nuciferous.
    pub hits: Vec<u64>,
}

struct Worker<'a> {
    g: &'a GroupTable,
    space: &'a SubsetSpace,
    primes: &'a PrimeSet,
    degree_min: usize,
    degree_max: usize,
    prune: bool,
}

impl Worker<'_> {
    fn block(
        &self,
        range: std::ops::Range<u64>,
        scratch: &mut ScreenScratch,
    ) -> Result<BlockOutcome, SearchError> {
        let mut out = BlockOutcome::default();
        let stats = &mut out.stats;
        for index in range {
            let mask = self.space.mask(index);
            let degree = mask.count_ones() as usize;
            if degree < self.degree_min || degree > self.degree_max {
                continue;
            }
            stats.enumerated += 1;
            let s = ConnectionSet::from_mask_unchecked(mask, self.g.order());
            if self.prune && !crate::cayley::generates(self.g, &s) {
                stats.pruned += 1;
                continue;
            }
            let rows = cayley_rows(self.g, mask);
            match self.screen(&rows, scratch) {
                Screen::Singular => {
                    stats.singular += 1;
                    continue;
                }
                Screen::DiagNonzero => {
                    stats.diag_rejected += 1;
                    continue;
                }
                Screen::Candidate => {}
            }
            stats.certified += 1;
            let graph = BitGraph::from_rows(rows).expect("Cayley graph is simple");
            let cert = adjugate_exact_with(&graph, self.primes)?;
            if cert.verdict.is_nuciferous() {
                out.hits.push(mask);
            }
        }
        Ok(out)
    }

    fn screen(&self, rows: &[u64], scratch: &mut ScreenScratch) -> Screen {
        match fast_screen(rows, scratch) {
            FastScreen::CornerNonzero => return Screen::DiagNonzero,
            FastScreen::SingularCertified => return Screen::Singular,
            FastScreen::Inconclusive => {}
        }
        for idx in 0..2 {
            match screen_first_diagonal(self.primes.field(idx), rows, scratch) {
                ColumnScreen::SingularMod => continue,
                ColumnScreen::CornerNonzero => return Screen::DiagNonzero,
                ColumnScreen::CornerZeroMod => return Screen::Candidate,
            }
        }
        Screen::Singular
    }
}

enum Screen {
    Singular,
    DiagNonzero,
    Candidate,
}

/// Builds the full record (exact certificate and canonical form) for a hit.
pub fn make_record(
    g: &GroupTable,
    mask: u64,
    primes: &PrimeSet,
) -> Result<SearchRecord, SearchError> {
    let s = ConnectionSet::from_mask_unchecked(mask, g.order());
    let graph = crate::cayley::cayley_graph(g, &s);
    let certificate = adjugate_exact_with(&graph, primes)?;
    let canon = canonical_form(&graph)?;
    Ok(SearchRecord {
        group: g.name().to_string(),
        order: g.order(),
        connection_set: s.elements(),
        degree: s.len(),
        det: certificate.det,
        verdict: certificate.verdict,
        cert: canon.cert,
        graph6: graph.to_graph6(),
        certificate: Some(certificate),
    })
}

/// Searches every connection set of `g` in the configured degree range.
pub fn search_group(g: &GroupTable, options: &SearchOptions) -> Result<GroupReport, SearchError> {
    let start = Instant::now();
    let primes = PrimeSet::default();
    let max = primes.certified_max_order();
    if g.order() > max {
        return Err(SearchError::ExactnessRange {
            order: g.order(),
            max,
        });
    }
    let degree_max = options.degree_max.unwrap_or(g.order() - 1);
    if options.degree_min > degree_max || degree_max >= g.order().max(1) {
        return Err(SearchError::DegreeRange {
            min: options.degree_min,
            max: degree_max,
            order: g.order(),
        });
    }
    let space = SubsetSpace::new(g);
    let block_size = options
        .block_size
        .max(1)
        .next_power_of_two()
        .min(space.len());
    let n_blocks = space.len() / block_size;

    let space_desc = checkpoint::space_line(
        g.name(),
        g.order(),
        space.len(),
        block_size,
        options.degree_min,
        degree_max,
        options.prune_disconnected,
    );
    let (checkpoint, mut done) = match &options.checkpoint {
        Some(path) => {
            let (c, d) = checkpoint::Checkpoint::open(path, &space_desc)?;
            (Some(Mutex::new(c)), d)
        }
        None => (None, BTreeMap::new()),
    };
    done.retain(|&b, _| b < n_blocks);

    let worker = Worker {
        g,
        space: &space,
        primes: &primes,
        degree_min: options.degree_min,
        degree_max,
        prune: options.prune_disconnected,
    };
    let pending: Vec<u64> = (0..n_blocks).filter(|b| !done.contains_key(b)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let fresh: Vec<(u64, BlockOutcome)> = pool.install(|| {
        pending
            .par_iter()
            .map_init(ScreenScratch::default, |scratch, &b| {
                let outcome = worker.block(b * block_size..(b + 1) * block_size, scratch)?;
                if let Some(cp) = &checkpoint {
                    cp.lock().expect("checkpoint lock").record(b, &outcome)?;
                }
                if let Some(p) = &options.progress {
                    p.fetch_add(1, Ordering::Relaxed);
                }
                Ok((b, outcome))
            })
            .collect::<Result<_, SearchError>>()
    })?;
    done.extend(fresh);

    let mut stats = BlockStats::default();
    let mut hits = BTreeSet::new();
    for outcome in done.values() {
        stats.add(&outcome.stats);
        hits.extend(outcome.hits.iter().copied());
    }
    let hits: Vec<u64> = hits.into_iter().collect();
    let mut records: Vec<SearchRecord> = pool.install(|| {
        hits.par_iter()
            .map(|&m| make_record(g, m, &primes))
            .collect::<Result<_, SearchError>>()
    })?;
    records.sort_by_key(|a| (a.degree, a.mask()));

    let partition = g.involution_pair_partition();
    let mut report = GroupReport {
        group: g.name().to_string(),
        order: g.order(),
        involutions: partition.involutions.len(),
        pairs: partition.pairs.len(),
        degree_min: options.degree_min,
        degree_max,
        subsets_enumerated: stats.enumerated,
        subsets_pruned: stats.pruned,
        prescreen_singular: stats.singular,
        prescreen_diag_nonzero: stats.diag_rejected,
        candidates_certified: stats.certified,
        records,
        classes: BTreeMap::new(),
        class_details: Vec::new(),
        wall_time: Duration::ZERO,
    };
    report.tally();
    report.wall_time = start.elapsed();
    Ok(report)
}

mod i128_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod cert_hex {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::canon::CanonCert;

    pub fn serialize<S: Serializer>(v: &CanonCert, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_hex())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CanonCert, D::Error> {
        let s = String::deserialize(d)?;
        CanonCert::from_hex(&s).ok_or_else(|| serde::de::Error::custom("malformed canonical cert"))
    }
}

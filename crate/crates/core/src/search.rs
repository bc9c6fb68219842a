//! Exhaustive computation of `f(p)` and `g(p)`.
//!
//! Candidates are enumerated level by level (set size ascending). Inside a
//! level they are visited in lexicographic order of a normal form:
//!
//! * general sets are translated so that `0 ∈ A` and, with dilation
//!   reduction, dilated so that `1 ∈ A` as well;
//! * symmetric sets are enumerated as half-orbit subsets of
//!   `{1, …, (p-1)/2}` with a zero flag fixed by the parity of the size and,
//!   with dilation reduction, orbit `{±1}` always present.
//!
//! Each level is split into partitions by the first free element. Workers
//! publish the lowest partition index that produced a witness; partitions
//! with a higher index stop early. The reported witness, value and node count
//! therefore do not depend on the number of workers.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fp::{unique_difference, GenSet, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    F,
    G,
}

impl Serialize for ExtremalKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            ExtremalKind::F => "f",
            ExtremalKind::G => "g",
        })
    }
}

impl fmt::Display for ExtremalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtremalKind::F => "f",
            ExtremalKind::G => "g",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest set size to try; `None` means up to `p`.
    pub max_size: Option<usize>,
    pub canonicalize_dilation: bool,
    pub parallel_width: usize,
    /// Cap on the number of candidate sets evaluated.
    pub budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_size: None,
            canonicalize_dilation: true,
            parallel_width: 1,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub p: Prime,
    pub kind: ExtremalKind,
    /// Exact value when `complete`, otherwise a verified lower bound.
    pub value: usize,
    /// A smallest set without a unique difference (size `value + 1`),
    /// as the dilation-canonical list of its elements.
    pub witness: Option<Vec<u64>>,
    pub sets_examined: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("node budget exhausted; sizes up to {} verified", .0.value)]
    BudgetExhausted(Box<ExtremalResult>),
    #[error(
        "node budget exhausted before size {size} was decided ({sets_examined} sets examined)"
    )]
    Undecided { size: usize, sets_examined: u64 },
    #[error("search needs p >= {min}, got {p}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// The lexicographically least image of `A` under the dilations `x ↦ c·x`.
pub fn canonical_form(set: &[u64], p: Prime) -> Vec<u64> {
    let q = p.get();
    let mut best: Option<Vec<u64>> = None;
    let mut image = Vec::with_capacity(set.len());
    for c in 1..q {
        image.clear();
        image.extend(set.iter().map(|&a| p.mul(a % q, c)));
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    best.unwrap_or_else(|| {
        let mut v = set.to_vec();
        v.sort_unstable();
        v
    })
}

/// Ordered-pair difference counts maintained under single-element updates,
/// together with the number of positions whose count is exactly one.
struct IncrementalTable {
    p: u64,
    counts: Vec<u32>,
    ones: usize,
    elems: Vec<u64>,
}

impl IncrementalTable {
    fn new(p: u64) -> Self {
        IncrementalTable {
            p,
            counts: vec![0; p as usize],
            ones: 0,
            elems: Vec::new(),
        }
    }

    #[inline]
    fn bump(&mut self, x: u64) {
        let c = &mut self.counts[x as usize];
        if *c == 1 {
            self.ones -= 1;
        }
        *c += 1;
        if *c == 1 {
            self.ones += 1;
        }
    }

    #[inline]
    fn drop_one(&mut self, x: u64) {
        let c = &mut self.counts[x as usize];
        if *c == 1 {
            self.ones -= 1;
        }
        *c -= 1;
        if *c == 1 {
            self.ones += 1;
        }
    }

    fn push(&mut self, e: u64) {
        let p = self.p;
        for i in 0..self.elems.len() {
            let b = self.elems[i];
            self.bump((e + p - b) % p);
            self.bump((b + p - e) % p);
        }
        self.bump(0);
        self.elems.push(e);
    }

    fn pop(&mut self) {
        let e = self.elems.pop().expect("pop on empty table");
        let p = self.p;
        self.drop_one(0);
        for i in 0..self.elems.len() {
            let b = self.elems[i];
            self.drop_one((e + p - b) % p);
            self.drop_one((b + p - e) % p);
        }
    }

    fn has_unique(&self) -> bool {
        self.ones > 0
    }
}

/// One level of the search: a fixed prefix plus `free` further items chosen
/// increasingly from `pool`. Items expand to one element (general sets) or
/// the pair `{a, -a}` (symmetric sets).
#[derive(Debug, Clone)]
struct Level {
    p: Prime,
    symmetric: bool,
    prefix: Vec<u64>,
    pool: Vec<u64>,
    free: usize,
}

impl Level {
    fn general(p: Prime, size: usize, dilation: bool) -> Option<Level> {
        let q = p.get();
        if size == 0 || size as u64 > q {
            return None;
        }
        let (prefix, pool): (Vec<u64>, Vec<u64>) = if dilation && size >= 2 {
            (vec![0, 1], (2..q).collect())
        } else {
            (vec![0], (1..q).collect())
        };
        Some(Level {
            p,
            symmetric: false,
            free: size - prefix.len(),
            prefix,
            pool,
        })
    }

    fn symmetric(p: Prime, size: usize, dilation: bool) -> Option<Level> {
        let half = (p.get() - 1) / 2;
        let orbits = size / 2;
        if size == 0 || orbits as u64 > half {
            return None;
        }
        let mut prefix = Vec::new();
        if size % 2 == 1 {
            prefix.push(0);
        }
        let pool: Vec<u64> = if dilation && orbits >= 1 {
            prefix.push(1);
            (2..=half).collect()
        } else {
            (1..=half).collect()
        };
        let fixed = usize::from(dilation && orbits >= 1);
        Some(Level {
            p,
            symmetric: true,
            free: orbits - fixed,
            prefix,
            pool,
        })
    }

    /// Number of candidate sets on this level (saturating).
    fn candidate_count(&self) -> u64 {
        binomial(self.pool.len() as u64, self.free as u64)
    }

    /// Partition `j` fixes the first free item to `pool[j]`; a level without
    /// free items has a single partition.
    fn partitions(&self) -> usize {
        if self.free == 0 {
            1
        } else {
            self.pool.len() + 1 - self.free
        }
    }

    fn push_item(&self, table: &mut IncrementalTable, item: u64) {
        table.push(item);
        if self.symmetric && item != 0 {
            table.push(self.p.neg(item));
        }
    }

    fn pop_item(&self, table: &mut IncrementalTable, item: u64) {
        table.pop();
        if self.symmetric && item != 0 {
            table.pop();
        }
    }

    /// Runs partition `j`; stops at its first witness or when `stop(j)` says
    /// a lower partition already has one.
    fn run_partition(&self, j: usize, stop: &dyn Fn(usize) -> bool) -> PartitionOutcome {
        let mut table = IncrementalTable::new(self.p.get());
        for &e in &self.prefix {
            self.push_item(&mut table, e);
        }
        let mut nodes = 0u64;
        if self.free == 0 {
            nodes += 1;
            let witness = (!table.has_unique()).then(|| table.elems.clone());
            return PartitionOutcome {
                nodes,
                witness,
                aborted: false,
            };
        }
        let first = self.pool[j];
        self.push_item(&mut table, first);
        let mut chosen = vec![j];
        let mut aborted = false;
        let witness = self.descend(&mut table, &mut chosen, &mut nodes, j, stop, &mut aborted);
        PartitionOutcome {
            nodes,
            witness,
            aborted,
        }
    }

    fn descend(
        &self,
        table: &mut IncrementalTable,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        partition: usize,
        stop: &dyn Fn(usize) -> bool,
        aborted: &mut bool,
    ) -> Option<Vec<u64>> {
        if chosen.len() == self.free {
            *nodes += 1;
            if *nodes % 4096 == 0 && stop(partition) {
                *aborted = true;
            }
            return (!table.has_unique()).then(|| table.elems.clone());
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        let remaining = self.free - chosen.len();
        for idx in start..=self.pool.len() - remaining {
            if *aborted {
                return None;
            }
            let item = self.pool[idx];
            self.push_item(table, item);
            chosen.push(idx);
            let found = self.descend(table, chosen, nodes, partition, stop, aborted);
            chosen.pop();
            self.pop_item(table, item);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Searches the whole level. Returns the node count attributable to the
    /// deterministic enumeration order and the first witness, if any.
    fn run(&self, workers: usize) -> (u64, Option<Vec<u64>>) {
        let parts = self.partitions();
        let best = AtomicUsize::new(usize::MAX);
        let stop = |j: usize| best.load(Ordering::Relaxed) < j;
        let work = |j: usize| {
            if stop(j) {
                return PartitionOutcome {
                    nodes: 0,
                    witness: None,
                    aborted: true,
                };
            }
            let out = self.run_partition(j, &stop);
            if out.witness.is_some() {
                best.fetch_min(j, Ordering::Relaxed);
            }
            out
        };
        let outcomes = run_indexed(parts, workers, work);
        let mut nodes = 0;
        for out in outcomes {
            if out.aborted && out.witness.is_none() {
                // only partitions above the winner are ever aborted
                break;
            }
            nodes += out.nodes;
            if out.witness.is_some() {
                return (nodes, out.witness);
            }
        }
        (nodes, None)
    }
}

struct PartitionOutcome {
    nodes: u64,
    witness: Option<Vec<u64>>,
    aborted: bool,
}

#[cfg(feature = "parallel")]
fn run_indexed<T: Send>(n: usize, workers: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    use rayon::prelude::*;
    if workers <= 1 || n <= 1 {
        return sequential(n, f);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => sequential(n, f),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_indexed<T>(n: usize, _workers: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    sequential(n, f)
}

fn sequential<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn verified_witness(p: Prime, elems: &[u64]) -> Vec<u64> {
    let set = GenSet::from_residues(p, elems).expect("search produced a repeated element");
    assert!(
        unique_difference(&set).is_none(),
        "search state reported a witness that has a unique difference"
    );
    canonical_form(elems, p)
}

fn make_level(p: Prime, size: usize, symmetric: bool, dilation: bool) -> Option<Level> {
    if symmetric {
        Level::symmetric(p, size, dilation)
    } else {
        Level::general(p, size, dilation)
    }
}

/// Wall-clock timer; reads zero where the platform has no clock
/// (`wasm32-unknown-unknown`).
struct Stopwatch(
    #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))] std::time::Instant,
);

impl Stopwatch {
    fn start() -> Self {
        #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
        return Stopwatch(std::time::Instant::now());
        #[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
        return Stopwatch();
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
        return self.0.elapsed();
        #[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
        return Duration::ZERO;
    }
}

fn extremal(
    p: Prime,
    kind: ExtremalKind,
    cfg: &SearchConfig,
) -> Result<ExtremalResult, SearchError> {
    let start = Stopwatch::start();
    let q = p.get() as usize;
    let max_size = cfg.max_size.unwrap_or(q);
    if max_size > q {
        return Err(SearchError::InvalidConfig(format!(
            "max_size {max_size} exceeds p = {q}"
        )));
    }
    let symmetric = kind == ExtremalKind::G;
    let mut examined = 0u64;
    let result = |value, witness, examined, complete| ExtremalResult {
        p,
        kind,
        value,
        witness,
        sets_examined: examined,
        elapsed: start.elapsed(),
        complete,
    };
    for size in 1..=max_size {
        let Some(level) = make_level(p, size, symmetric, cfg.canonicalize_dilation) else {
            // an even size 2k with k > (p-1)/2 does not exist; the full field is odd
            continue;
        };
        let needed = level.candidate_count();
        if let Some(budget) = cfg.budget {
            if examined.saturating_add(needed) > budget {
                let partial = result(size - 1, None, examined, false);
                return Err(SearchError::BudgetExhausted(Box::new(partial)));
            }
        }
        let (nodes, witness) = level.run(cfg.parallel_width.max(1));
        examined += nodes;
        if let Some(w) = witness {
            let w = verified_witness(p, &w);
            return Ok(result(size - 1, Some(w), examined, true));
        }
    }
    Ok(result(max_size, None, examined, false))
}

/// `f(p)`: the largest `k` such that every subset of 𝔽_p with at most `k`
/// elements has a unique difference.
pub fn compute_f(p: Prime, cfg: &SearchConfig) -> Result<ExtremalResult, SearchError> {
    extremal(p, ExtremalKind::F, cfg)
}

/// `g(p)`: as `f(p)`, restricted to symmetric sets.
pub fn compute_g(p: Prime, cfg: &SearchConfig) -> Result<ExtremalResult, SearchError> {
    if p.get() < 3 {
        return Err(SearchError::PrimeTooSmall { p: p.get(), min: 3 });
    }
    extremal(p, ExtremalKind::G, cfg)
}

/// A set of exactly `size` elements with no unique difference, or `None`
/// when exhaustive search shows there is none.
pub fn find_no_unique_difference(
    p: Prime,
    size: usize,
    symmetric: bool,
    cfg: &SearchConfig,
) -> Result<Option<Vec<u64>>, SearchError> {
    if size as u64 > p.get() {
        return Err(SearchError::InvalidConfig(format!(
            "size {size} exceeds p = {p}"
        )));
    }
    let Some(level) = make_level(p, size, symmetric, cfg.canonicalize_dilation) else {
        return Ok(None);
    };
    if let Some(budget) = cfg.budget {
        let needed = level.candidate_count();
        if needed > budget {
            return Err(SearchError::Undecided {
                size,
                sets_examined: 0,
            });
        }
    }
    let (_, witness) = level.run(cfg.parallel_width.max(1));
    Ok(witness.map(|w| verified_witness(p, &w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{diff_table, ResidueSet, SymSet};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Lex-least over all `c·A`, written independently of `canonical_form`.
    fn orbit_min(set: &[u64], q: u64) -> Vec<u64> {
        (1..q)
            .map(|c| {
                let mut v: Vec<u64> = set.iter().map(|a| a * c % q).collect();
                v.sort();
                v
            })
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(orbit_min(&[2, 8], 11), vec![1, 3]);
        assert_eq!(canonical_form(&[2, 8], p(11)), vec![1, 3]);
        assert_eq!(
            canonical_form(&[2, 8], p(11)),
            canonical_form(&[1, 4], p(11))
        );
        assert_eq!(canonical_form(&[0], p(11)), vec![0]);
        assert_eq!(canonical_form(&[1, 4], p(5)), vec![1, 4]);
    }

    #[test]
    fn incremental_table_matches_full() {
        let q = 13;
        let mut t = IncrementalTable::new(q);
        for e in [0, 3, 4, 9] {
            t.push(e);
        }
        let full = diff_table(&GenSet::from_residues(p(q), &[0, 3, 4, 9]).unwrap());
        let counts: Vec<u64> = t.counts.iter().map(|&c| c as u64).collect();
        assert_eq!(counts, full.counts());
        assert_eq!(t.ones, full.unique_positions().len());
        t.pop();
        t.pop();
        let full = diff_table(&GenSet::from_residues(p(q), &[0, 3]).unwrap());
        let counts: Vec<u64> = t.counts.iter().map(|&c| c as u64).collect();
        assert_eq!(counts, full.counts());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn level_counts_match_enumeration() {
        for &q in &[7u64, 11] {
            for size in 1..=q as usize {
                for symmetric in [false, true] {
                    for dil in [false, true] {
                        let Some(level) = make_level(p(q), size, symmetric, dil) else {
                            continue;
                        };
                        let (nodes, _) = level.run_exhaustive();
                        assert_eq!(nodes, level.candidate_count(), "q={q} size={size}");
                    }
                }
            }
        }
    }

    impl Level {
        fn run_exhaustive(&self) -> (u64, usize) {
            let mut nodes = 0;
            let mut found = 0;
            for j in 0..self.partitions() {
                let mut table = IncrementalTable::new(self.p.get());
                for &e in &self.prefix {
                    self.push_item(&mut table, e);
                }
                if self.free == 0 {
                    nodes += 1;
                    continue;
                }
                self.push_item(&mut table, self.pool[j]);
                let mut chosen = vec![j];
                self.count_all(&mut table, &mut chosen, &mut nodes, &mut found);
            }
            (nodes, found)
        }

        fn count_all(
            &self,
            t: &mut IncrementalTable,
            chosen: &mut Vec<usize>,
            n: &mut u64,
            f: &mut usize,
        ) {
            if chosen.len() == self.free {
                *n += 1;
                *f += usize::from(!t.has_unique());
                return;
            }
            let start = chosen.last().unwrap() + 1;
            for idx in start..=self.pool.len() - (self.free - chosen.len()) {
                self.push_item(t, self.pool[idx]);
                chosen.push(idx);
                self.count_all(t, chosen, n, f);
                chosen.pop();
                self.pop_item(t, self.pool[idx]);
            }
        }
    }

    #[test]
    fn f_of_two_and_three() {
        let r = compute_f(p(2), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness, Some(vec![0, 1]));
        let r = compute_f(p(3), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 2);
        assert!(r.complete);
    }

    #[test]
    fn g_of_three() {
        let r = compute_g(p(3), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
        assert!(compute_g(p(2), &SearchConfig::default()).is_err());
    }

    #[test]
    fn g_of_five_witness() {
        let r = compute_g(p(5), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.witness, Some(vec![1, 2, 3, 4]));
        let s = SymSet::from_set(&GenSet::from_residues(p(5), &[1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(s.residues(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn budget_is_checked_before_each_level() {
        let cfg = SearchConfig {
            budget: Some(3),
            ..SearchConfig::default()
        };
        match compute_g(p(13), &cfg) {
            Err(SearchError::BudgetExhausted(partial)) => {
                assert!(!partial.complete);
                assert!(partial.sets_examined <= 3);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
        let cfg = SearchConfig {
            budget: Some(0),
            ..SearchConfig::default()
        };
        assert!(matches!(
            find_no_unique_difference(p(13), 6, true, &cfg),
            Err(SearchError::Undecided { .. })
        ));
    }

    #[test]
    fn max_size_gives_partial_lower_bound() {
        let cfg = SearchConfig {
            max_size: Some(3),
            ..SearchConfig::default()
        };
        let r = compute_g(p(13), &cfg).unwrap();
        assert!(!r.complete);
        assert_eq!(r.value, 3);
        assert!(r.witness.is_none());
        let bad = SearchConfig {
            max_size: Some(14),
            ..SearchConfig::default()
        };
        assert!(compute_f(p(13), &bad).is_err());
    }
}

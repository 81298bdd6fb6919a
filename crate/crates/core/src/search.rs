//! Exhaustive backtracking search for graceful difference labelings.
//!
//! Vertices are labeled in canonical order (circuit by circuit, along the
//! arcs). Two tables prune the tree: used vertex labels and used difference
//! labels over `[-(n-1), n-1]`. With symmetry breaking on, each circuit's
//! first vertex carries its minimum label (fixes rotations) and circuits of
//! equal length are ordered by their first labels (fixes permutations).
//!
//! Labels are tried in increasing order, so the first labeling found by a
//! sequential run is the lexicographically smallest in the reduced space.
//! Parallel runs split the tree on short prefixes and keep that property by
//! preferring the lowest successful prefix.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Provenance, Status};
use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;
use crate::labeling::Labeling;

/// Families at or below this size may be searched without any bound.
pub const UNBOUNDED_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    /// Return the lexicographically smallest labeling of the reduced space.
    pub canonical: bool,
}

impl SearchBudget {
    pub const DEFAULT_SECONDS: f64 = 10.0;
    pub const DEFAULT_NODES: u64 = 100_000_000;

    pub fn unlimited() -> Self {
        Self {
            max_nodes: None,
            max_seconds: None,
            canonical: false,
        }
    }

    pub fn new(max_nodes: Option<u64>, max_seconds: Option<f64>) -> Self {
        Self {
            max_nodes,
            max_seconds,
            canonical: false,
        }
    }

    pub fn with_canonical(mut self, canonical: bool) -> Self {
        self.canonical = canonical;
        self
    }

    pub fn is_unbounded(&self) -> bool {
        self.max_nodes.is_none() && self.max_seconds.is_none()
    }

    /// An unbounded budget is only accepted for small families.
    pub fn check_for(&self, family: &CircuitFamily) -> Result<()> {
        if self.is_unbounded() && family.total_vertices() > UNBOUNDED_VERTEX_LIMIT {
            return Err(GdlError::Precondition(format!(
                "unbounded search requested for {} vertices (limit {UNBOUNDED_VERTEX_LIMIT})",
                family.total_vertices()
            )));
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::new(Some(Self::DEFAULT_NODES), Some(Self::DEFAULT_SECONDS))
    }
}

/// Upper bound on magnitudes, with a cap on how many arcs may reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagnitudeProfile {
    pub max_magnitude: u64,
    pub max_count_at_max: usize,
}

impl MagnitudeProfile {
    /// No magnitude above `max`, at most one arc at `max`.
    pub fn unique_top(max: u64) -> Self {
        Self {
            max_magnitude: max,
            max_count_at_max: 1,
        }
    }

    pub fn admits(&self, report: &crate::verify::VerificationReport) -> bool {
        report.max_magnitude <= self.max_magnitude
            && report.count_at(self.max_magnitude) <= self.max_count_at_max
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Label placements performed.
    pub nodes: u64,
    pub elapsed_seconds: f64,
    /// `n!`, the size of the unreduced space.
    pub raw_space: f64,
    /// Size of the symmetry group quotiented out (1 when disabled).
    pub symmetry_factor: f64,
    pub symmetry_breaking: bool,
    pub tasks: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    pub profile: Option<MagnitudeProfile>,
    pub symmetry_breaking: bool,
    pub parallel: bool,
}

impl SearchOptions {
    pub fn new(budget: SearchBudget) -> Self {
        Self {
            budget,
            profile: None,
            symmetry_breaking: true,
            parallel: true,
        }
    }

    pub fn profile(mut self, profile: Option<MagnitudeProfile>) -> Self {
        self.profile = profile;
        self
    }

    pub fn symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// Searches with default options (symmetry breaking, parallel when large).
pub fn search_gdl(
    family: &CircuitFamily,
    budget: &SearchBudget,
    profile: Option<MagnitudeProfile>,
) -> Certificate {
    search_with(family, &SearchOptions::new(*budget).profile(profile))
}

/// Exhausts the reduced space of a small family.
///
/// Returns [`Status::NoGdlExhaustive`] or the labeling found. Families above
/// [`UNBOUNDED_VERTEX_LIMIT`] vertices need `allow_large`.
pub fn certify_nonexistence(family: &CircuitFamily, allow_large: bool) -> Result<Certificate> {
    if !allow_large && family.total_vertices() > UNBOUNDED_VERTEX_LIMIT {
        return Err(GdlError::Precondition(format!(
            "{} has {} vertices; exhaustive certification is limited to {UNBOUNDED_VERTEX_LIMIT} without override",
            family,
            family.total_vertices()
        )));
    }
    Ok(search_with(
        family,
        &SearchOptions::new(SearchBudget::unlimited()),
    ))
}

pub fn search_with(family: &CircuitFamily, opts: &SearchOptions) -> Certificate {
    let layout = Layout::new(family);
    let n = layout.n;
    let ctl = Control {
        start: Instant::now(),
        max_nodes: opts.budget.max_nodes,
        deadline: opts.budget.max_seconds.map(Duration::from_secs_f64),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
        canonical: opts.budget.canonical,
    };

    let use_parallel = opts.parallel && n >= PARALLEL_MIN_VERTICES;
    let (outcome, solution, tasks) = if use_parallel {
        run_parallel(&layout, opts, &ctl)
    } else {
        let mut dfs = Dfs::new(&layout, opts, &ctl, 0);
        let out = dfs.run(0);
        dfs.flush();
        let sol = (out == Outcome::Found).then(|| dfs.labels.clone());
        (out, sol, 1)
    };

    let stats = SearchStats {
        nodes: ctl.nodes.load(Ordering::Relaxed),
        elapsed_seconds: ctl.start.elapsed().as_secs_f64(),
        raw_space: factorial(n),
        symmetry_factor: if opts.symmetry_breaking {
            symmetry_factor(family)
        } else {
            1.0
        },
        symmetry_breaking: opts.symmetry_breaking,
        tasks,
    };

    let status = match (outcome, solution) {
        (_, Some(labels)) => Status::Gdl {
            labeling: Labeling::new(family.clone(), labels).expect("search fills every vertex"),
        },
        (Outcome::Exhausted, None) => Status::NoGdlExhaustive {
            stats: stats.clone(),
        },
        _ => Status::Timeout {
            budget: opts.budget,
        },
    };
    Certificate {
        status,
        provenance: Provenance::Search(stats),
    }
}

const PARALLEL_MIN_VERTICES: usize = 14;
const PREFIX_DEPTH: usize = 3;
const FLUSH_EVERY: u64 = 256;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn symmetry_factor(family: &CircuitFamily) -> f64 {
    let rotations: f64 = family.lengths().iter().map(|&k| k as f64).product();
    let mut sorted = family.sorted_lengths();
    sorted.dedup();
    let perms: f64 = sorted
        .iter()
        .map(|&k| factorial(family.count_of(k)))
        .product();
    rotations * perms
}

struct Layout {
    n: usize,
    first_of: Vec<usize>,
    is_first: Vec<bool>,
    is_last: Vec<bool>,
    circuit_len: Vec<usize>,
    /// For a circuit's first vertex: first vertex of the previous circuit of the same length.
    peer_first: Vec<Option<usize>>,
    /// For a circuit's first vertex: some later circuit has another length.
    mixed_tail: Vec<bool>,
}

impl Layout {
    fn new(family: &CircuitFamily) -> Self {
        let n = family.total_vertices();
        let mut first_of = vec![0; n];
        let mut is_first = vec![false; n];
        let mut is_last = vec![false; n];
        let mut circuit_len = vec![0; n];
        let mut peer_first = vec![None; n];
        let mut last_start_of_len: Vec<Option<usize>> = vec![None; n + 1];
        for c in 0..family.circuit_count() {
            let range = family.circuit_vertices(c);
            let k = range.len();
            let s = range.start;
            for v in range.clone() {
                first_of[v] = s;
                circuit_len[v] = k;
            }
            is_first[s] = true;
            is_last[range.end - 1] = true;
            peer_first[s] = last_start_of_len[k];
            last_start_of_len[k] = Some(s);
        }
        let mut mixed_tail = vec![false; n];
        let lengths = family.lengths();
        for c in 0..family.circuit_count() {
            mixed_tail[family.circuit_start(c)] = lengths[c + 1..].iter().any(|&k| k != lengths[c]);
        }
        Self {
            n,
            first_of,
            is_first,
            is_last,
            circuit_len,
            peer_first,
            mixed_tail,
        }
    }
}

struct Control {
    start: Instant,
    max_nodes: Option<u64>,
    deadline: Option<Duration>,
    nodes: AtomicU64,
    /// Budget exhausted.
    stop: AtomicBool,
    /// Lowest task index that found a labeling.
    best: AtomicUsize,
    canonical: bool,
}

impl Control {
    fn superseded(&self, task: usize) -> bool {
        let best = self.best.load(Ordering::Relaxed);
        if self.canonical {
            best < task
        } else {
            best != usize::MAX
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Dfs<'a> {
    layout: &'a Layout,
    ctl: &'a Control,
    profile: Option<MagnitudeProfile>,
    symmetry: bool,
    task: usize,
    labels: Vec<usize>,
    used: Vec<bool>,
    diff_used: Vec<bool>,
    top_used: usize,
    local_nodes: u64,
}

impl<'a> Dfs<'a> {
    fn new(layout: &'a Layout, opts: &SearchOptions, ctl: &'a Control, task: usize) -> Self {
        let n = layout.n;
        Self {
            layout,
            ctl,
            profile: opts.profile,
            symmetry: opts.symmetry_breaking,
            task,
            labels: vec![0; n],
            used: vec![false; n + 1],
            diff_used: vec![false; 2 * n.max(1) - 1],
            top_used: 0,
            local_nodes: 0,
        }
    }

    fn flush(&mut self) {
        let pending = self.local_nodes % FLUSH_EVERY;
        self.ctl.nodes.fetch_add(pending, Ordering::Relaxed);
        self.local_nodes -= pending;
    }

    /// Counts one node; returns false when the search must stop.
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes.is_multiple_of(FLUSH_EVERY) {
            self.ctl.nodes.fetch_add(FLUSH_EVERY, Ordering::Relaxed);
            if let Some(d) = self.ctl.deadline {
                if self.ctl.start.elapsed() >= d {
                    self.ctl.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        if let Some(max) = self.ctl.max_nodes {
            let total = self.ctl.nodes.load(Ordering::Relaxed) + self.local_nodes % FLUSH_EVERY;
            if total > max {
                self.ctl.stop.store(true, Ordering::Relaxed);
            }
        }
        !self.ctl.stop.load(Ordering::Relaxed) && !self.ctl.superseded(self.task)
    }

    fn bounds(&self, v: usize) -> (usize, usize) {
        let n = self.layout.n;
        if !self.symmetry {
            return (1, n);
        }
        if self.layout.is_first[v] {
            let hi = n + 1 - self.layout.circuit_len[v];
            let lo = self.layout.peer_first[v].map_or(1, |p| self.labels[p] + 1);
            // The smallest free label can only sit at the start of a circuit
            // yet to be labeled. If all those circuits have this one's length,
            // ordering by first label forces it here.
            let free = (1..=n).find(|&x| !self.used[x]).unwrap_or(n + 1);
            if self.layout.mixed_tail[v] {
                (lo.max(free), hi)
            } else if lo <= free && free <= hi {
                (free, free)
            } else {
                (1, 0)
            }
        } else {
            (self.labels[self.layout.first_of[v]] + 1, n)
        }
    }

    fn diff_ok(&self, d: i64, extra_top: usize) -> bool {
        if self.diff_used[(d + self.layout.n as i64 - 1) as usize] {
            return false;
        }
        match self.profile {
            None => true,
            Some(p) => {
                let m = d.unsigned_abs();
                m < p.max_magnitude
                    || (m == p.max_magnitude && self.top_used + extra_top < p.max_count_at_max)
            }
        }
    }

    fn mark(&mut self, d: i64, on: bool) {
        self.diff_used[(d + self.layout.n as i64 - 1) as usize] = on;
        if let Some(p) = self.profile {
            if d.unsigned_abs() == p.max_magnitude {
                if on {
                    self.top_used += 1;
                } else {
                    self.top_used -= 1;
                }
            }
        }
    }

    /// Tries to put label `x` on `v`; on success returns the diffs it added.
    fn place(&mut self, v: usize, x: usize) -> Option<[Option<i64>; 2]> {
        if self.used[x] {
            return None;
        }
        let mut added = [None, None];
        if !self.layout.is_first[v] {
            let d = x as i64 - self.labels[v - 1] as i64;
            if !self.diff_ok(d, 0) {
                return None;
            }
            self.mark(d, true);
            added[0] = Some(d);
            if self.layout.is_last[v] {
                let back = self.labels[self.layout.first_of[v]] as i64 - x as i64;
                if !self.diff_ok(back, 0) {
                    self.mark(d, false);
                    return None;
                }
                self.mark(back, true);
                added[1] = Some(back);
            }
        }
        self.used[x] = true;
        self.labels[v] = x;
        Some(added)
    }

    fn unplace(&mut self, v: usize, added: [Option<i64>; 2]) {
        for d in added.into_iter().flatten() {
            self.mark(d, false);
        }
        self.used[self.labels[v]] = false;
        self.labels[v] = 0;
    }

    fn run(&mut self, v: usize) -> Outcome {
        if v == self.layout.n {
            return Outcome::Found;
        }
        let (lo, hi) = self.bounds(v);
        for x in lo..=hi {
            if let Some(added) = self.place(v, x) {
                if !self.tick() {
                    self.unplace(v, added);
                    return Outcome::Aborted;
                }
                match self.run(v + 1) {
                    Outcome::Exhausted => self.unplace(v, added),
                    other => return other,
                }
            }
        }
        Outcome::Exhausted
    }

    /// All valid partial assignments of vertices `v..depth`, in label order.
    fn prefixes(&mut self, v: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
        if v == depth {
            out.push(self.labels[..depth].to_vec());
            return;
        }
        let (lo, hi) = self.bounds(v);
        for x in lo..=hi {
            if let Some(added) = self.place(v, x) {
                self.tick();
                self.prefixes(v + 1, depth, out);
                self.unplace(v, added);
            }
        }
    }
}

fn run_parallel(
    layout: &Layout,
    opts: &SearchOptions,
    ctl: &Control,
) -> (Outcome, Option<Vec<usize>>, usize) {
    let depth = PREFIX_DEPTH.min(layout.n);
    let mut prefixes = Vec::new();
    {
        let mut root = Dfs::new(layout, opts, ctl, 0);
        root.prefixes(0, depth, &mut prefixes);
        root.flush();
    }
    let tasks = prefixes.len();
    let results: Vec<(Outcome, Option<Vec<usize>>)> = prefixes
        .into_par_iter()
        .enumerate()
        .map(|(task, prefix)| {
            if ctl.stop.load(Ordering::Relaxed) || ctl.superseded(task) {
                return (Outcome::Aborted, None);
            }
            let mut dfs = Dfs::new(layout, opts, ctl, task);
            for (v, &x) in prefix.iter().enumerate() {
                dfs.place(v, x).expect("prefix was valid when enumerated");
            }
            let out = dfs.run(depth);
            dfs.flush();
            if out == Outcome::Found {
                ctl.best.fetch_min(task, Ordering::Relaxed);
                (out, Some(dfs.labels))
            } else {
                (out, None)
            }
        })
        .collect();

    if let Some((_, sol)) = results.iter().find(|(o, _)| *o == Outcome::Found) {
        // results are in task order, so this is the lowest successful prefix
        return (Outcome::Found, sol.clone(), tasks);
    }
    let exhausted = results.iter().all(|(o, _)| *o == Outcome::Exhausted)
        && !ctl.stop.load(Ordering::Relaxed);
    let outcome = if exhausted {
        Outcome::Exhausted
    } else {
        Outcome::Aborted
    };
    (outcome, None, tasks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_gdl;

    fn fam(v: &[usize]) -> CircuitFamily {
        CircuitFamily::new(v.to_vec()).unwrap()
    }

    #[test]
    fn c3_has_none() {
        let cert = certify_nonexistence(&fam(&[3]), false).unwrap();
        match cert.status {
            Status::NoGdlExhaustive { stats } => {
                assert!(stats.nodes as f64 <= stats.raw_space);
                assert_eq!(stats.raw_space, 6.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn c2_plus_c3_has_none() {
        let cert = certify_nonexistence(&fam(&[2, 3]), false).unwrap();
        match cert.status {
            Status::NoGdlExhaustive { stats } => {
                assert!(stats.nodes <= 120);
                assert_eq!(stats.raw_space, 120.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_triangles_found() {
        let cert = search_gdl(&fam(&[3, 3]), &SearchBudget::unlimited(), None);
        let l = cert.labeling().expect("2C3 has a gdl");
        assert!(verify_gdl(l).is_gdl);
    }

    #[test]
    fn c2_pair_certification_returns_the_labeling() {
        let cert = certify_nonexistence(&fam(&[2, 2]), false).unwrap();
        assert!(verify_gdl(cert.labeling().unwrap()).is_gdl);
    }

    #[test]
    fn guard_on_large_families() {
        assert!(certify_nonexistence(&fam(&[3, 3, 3, 4]), false).is_err());
        assert!(SearchBudget::unlimited().check_for(&fam(&[3, 3, 3, 4])).is_err());
        assert!(SearchBudget::unlimited().check_for(&fam(&[3, 3, 3])).is_ok());
    }

    #[test]
    fn profile_is_respected() {
        let p = MagnitudeProfile::unique_top(4);
        let cert = search_gdl(&fam(&[3, 3]), &SearchBudget::unlimited().with_canonical(true), Some(p));
        let r = verify_gdl(cert.labeling().unwrap());
        assert!(r.is_gdl);
        assert!(p.admits(&r));
    }

    #[test]
    fn tiny_node_budget_times_out() {
        let budget = SearchBudget::new(Some(3), None);
        let cert = search_with(&fam(&[3, 3, 3, 3, 3]), &SearchOptions::new(budget).parallel(false));
        assert!(matches!(cert.status, Status::Timeout { .. }));
    }

    #[test]
    fn symmetry_reduction_is_sound_for_small_families() {
        for fam_v in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 3], vec![4, 4], vec![3, 5], vec![2, 2, 2, 2]] {
            let f = fam(&fam_v);
            let with = search_with(&f, &SearchOptions::new(SearchBudget::unlimited()));
            let without = search_with(
                &f,
                &SearchOptions::new(SearchBudget::unlimited()).symmetry_breaking(false),
            );
            assert_eq!(with.labeling().is_some(), without.labeling().is_some(), "{f}");
        }
    }

    #[test]
    fn canonical_parallel_matches_sequential() {
        let f = fam(&[3, 3, 3, 3, 3]);
        let budget = SearchBudget::unlimited().with_canonical(true);
        let p = Some(MagnitudeProfile::unique_top(13));
        let seq = search_with(&f, &SearchOptions::new(budget).profile(p).parallel(false));
        let par = search_with(&f, &SearchOptions::new(budget).profile(p).parallel(true));
        assert_eq!(seq.labeling(), par.labeling());
        let again = search_with(&f, &SearchOptions::new(budget).profile(p).parallel(true));
        assert_eq!(par.labeling(), again.labeling());
    }
}

//! Labelings of `n·C3` and `C4 + n·C3`.
//!
//! Small cases come from the catalog. From ten triangles on, `n·C3` is
//! built from a labeling of `t·C3` (with `t ≈ n/7`) by labeling `n - t`
//! further triangles from a fixed table and flipping triangles until no
//! difference label repeats. `C4 + n·C3` threads one extra vertex into a
//! triangle of the `(n+1)·C3` labeling.

mod c4;
mod conflicts;
mod params;
mod table;

use serde::{Deserialize, Serialize};

pub use conflicts::{
    detect_conflicts, resolve_conflicts, ConflictEdge, ConflictKind, ConflictRelation, Resolution,
};
pub use params::{case_parameters, CaseParameters, CaseTag, RECURSIVE_MIN};
pub use table::{
    base_table_labeling, classify_pairs, Dls, MemberRef, PairMember, TrianglePairing,
};

use crate::catalog;
use crate::constructions::{label_fixed_base, FixedBase};
use crate::error::{GdlError, Result};
use crate::labeling::Labeling;
use crate::search::MagnitudeProfile;
use crate::verify::{is_gdl, verify_gdl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    NC3,
    C4PlusNC3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceSource {
    Catalog,
    Fixed,
    Recursive,
}

/// How a triangle labeling was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleTrace {
    pub kind: TraceKind,
    pub n: usize,
    pub source: TraceSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseParameters>,
    /// Triangles flipped an odd number of times, as circuit ids.
    #[serde(default)]
    pub flips: Vec<usize>,
    #[serde(default)]
    pub fallback_used: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Trace of the smaller labeling this one was built from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<TriangleTrace>>,
}

impl TriangleTrace {
    fn leaf(kind: TraceKind, n: usize, source: TraceSource) -> Self {
        TriangleTrace {
            kind,
            n,
            source,
            case: None,
            flips: Vec::new(),
            fallback_used: false,
            notes: Vec::new(),
            inner: None,
        }
    }

    /// Whether this step or any nested one needed the greedy repair.
    pub fn fallback_used(&self) -> bool {
        self.fallback_used || self.inner.as_ref().is_some_and(|t| t.fallback_used())
    }

    /// Number of recursive steps, counting this one.
    pub fn depth(&self) -> usize {
        1 + self.inner.as_ref().map_or(0, |t| t.depth())
    }
}

#[derive(Debug, Clone)]
pub struct TriangleConstruction {
    pub labeling: Labeling,
    pub trace: TriangleTrace,
}

/// Intermediate state of the recursive step, kept for threading a C4.
struct Recursive {
    params: CaseParameters,
    resolution: Resolution,
    inner: TriangleTrace,
}

fn recursive_step(n: usize) -> Result<Recursive> {
    let params = case_parameters(n)?;
    let sub = label_n_c3(params.t)?;
    let base = base_table_labeling(&params, &sub.labeling)?;
    let resolution = resolve_conflicts(&base, &params)?;
    Ok(Recursive {
        params,
        resolution,
        inner: sub.trace,
    })
}

fn check_top(labeling: &Labeling, n_triangles: usize, what: &str) -> Result<()> {
    let report = verify_gdl(labeling);
    if !report.is_gdl {
        return Err(GdlError::Internal(format!("{what} is not a gdl")));
    }
    let top = 3 * n_triangles as u64 - 2;
    if !MagnitudeProfile::unique_top(top).admits(&report) {
        return Err(GdlError::Internal(format!(
            "{what} has magnitude {} (x{}) beyond the bound {top}",
            report.max_magnitude,
            report.count_at(report.max_magnitude)
        )));
    }
    Ok(())
}

/// A gdl of `n·C3` with at most one arc of magnitude `3n - 2` and all
/// others smaller. Exists for every `n ≥ 2`.
pub fn label_n_c3(n: usize) -> Result<TriangleConstruction> {
    if n < 2 {
        return Err(GdlError::Unsupported(format!(
            "{n}·C3 has no gdl covered by the construction"
        )));
    }
    if n < RECURSIVE_MIN {
        let labeling = catalog::active().n_c3(n).ok_or_else(|| {
            GdlError::Internal(format!("catalog has no entry for {n}·C3"))
        })?;
        return Ok(TriangleConstruction {
            labeling,
            trace: TriangleTrace::leaf(TraceKind::NC3, n, TraceSource::Catalog),
        });
    }
    let step = recursive_step(n)?;
    let labeling = step.resolution.labeling;
    check_top(&labeling, n, &format!("{n}·C3 labeling"))?;
    Ok(TriangleConstruction {
        labeling,
        trace: TriangleTrace {
            kind: TraceKind::NC3,
            n,
            source: TraceSource::Recursive,
            case: Some(step.params),
            flips: step.resolution.flips,
            fallback_used: step.resolution.fallback_used,
            notes: step.resolution.notes,
            inner: Some(Box::new(step.inner)),
        },
    })
}

/// A gdl of `C4 + n·C3`, with the 4-circuit first.
pub fn label_c4_plus_n_c3(n: usize) -> Result<TriangleConstruction> {
    if n == 0 {
        return Err(GdlError::Unsupported(
            "C4 + 0·C3 is a single circuit; use the single-circuit labeling".into(),
        ));
    }
    if n == 1 {
        let labeling = label_fixed_base(FixedBase::C4PlusOdd(3))?;
        let labeling = labeling.reorder_to(&crate::family::CircuitFamily::new(vec![4, 3])?)?;
        return Ok(TriangleConstruction {
            labeling,
            trace: TriangleTrace::leaf(TraceKind::C4PlusNC3, 1, TraceSource::Fixed),
        });
    }
    if n < RECURSIVE_MIN - 1 {
        let labeling = catalog::active().c4_plus_n_c3(n).ok_or_else(|| {
            GdlError::Internal(format!("catalog has no entry for C4 + {n}·C3"))
        })?;
        return Ok(TriangleConstruction {
            labeling,
            trace: TriangleTrace::leaf(TraceKind::C4PlusNC3, n, TraceSource::Catalog),
        });
    }
    let mut step = recursive_step(n + 1)?;
    let host = c4::host_triangle(&step.params);
    let mut notes = vec![format!("extra vertex threaded into triangle {host}")];
    if step.resolution.flips.contains(&host) {
        // Negating every dl keeps the (n+1)·C3 labeling a gdl and leaves
        // the host unflipped.
        step.resolution.flips = c4::complement_flips(&mut step.resolution.labeling, &step.resolution.flips)?;
        notes.push("host was flipped: replaced the flip set by its complement".into());
    }
    let mut labeling = c4::thread_vertex(&step.resolution.labeling, &step.params)?;
    let mut fallback_used = step.resolution.fallback_used;
    if !is_gdl(&labeling) {
        fallback_used = true;
        let extra = c4::repair(&mut labeling, 4 * step.params.theta)?;
        notes.push(format!("repair flips {extra:?}"));
    }
    Ok(TriangleConstruction {
        labeling,
        trace: TriangleTrace {
            kind: TraceKind::C4PlusNC3,
            n,
            source: TraceSource::Recursive,
            case: Some(step.params),
            flips: step.resolution.flips,
            fallback_used,
            notes,
            inner: Some(Box::new(TriangleTrace {
                kind: TraceKind::NC3,
                n: n + 1,
                source: TraceSource::Recursive,
                case: Some(step.params),
                flips: Vec::new(),
                fallback_used: step.resolution.fallback_used,
                notes: step.resolution.notes,
                inner: Some(Box::new(step.inner)),
            })),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::table::{pair_layout, table_row};
    use super::*;
    use crate::labeling::Labeling;

    fn sub_for(p: &CaseParameters) -> Labeling {
        label_n_c3(p.t).unwrap().labeling
    }

    #[test]
    fn case_a_rows_for_ten_triangles() {
        let p = case_parameters(10).unwrap();
        assert_eq!(table_row(&p, 1), [1, 9, 27]);
        assert_eq!(table_row(&p, 2), [2, 30, 22]);
        assert_eq!(table_row(&p, 5), [5, 11, 26]);
        let base = base_table_labeling(&p, &sub_for(&p)).unwrap();
        assert!(base.is_bijection());
        let mut block: Vec<usize> = (8..10).flat_map(|c| base.circuit_labels(c).to_vec()).collect();
        block.sort_unstable();
        assert_eq!(block, (13..=18).collect::<Vec<_>>());
    }

    #[test]
    fn case_a_pairs_and_conflict() {
        let p = case_parameters(10).unwrap();
        let base = base_table_labeling(&p, &sub_for(&p)).unwrap();
        let pairs = classify_pairs(&base, &p).unwrap();
        assert_eq!(pairs.len(), 5);
        assert_eq!(pairs[0].member_dls(0), [8, 18, -26]);
        assert_eq!(pairs[0].member_dls(1), [-8, -20, 28]);
        assert_eq!(pairs[4].members[0].source, MemberRef::Triangle(7));
        assert_eq!(pairs[4].members[0].big, 15);
        assert!(pairs[4].members[1].is_dummy());
        let rel = detect_conflicts(&pairs);
        let e = rel.edges.iter().find(|e| !e.dummy).unwrap();
        assert_eq!((e.source, e.target), (4, 2));
        assert_eq!(pairs[2].members[1].medium, 15);

        let res = resolve_conflicts(&base, &p).unwrap();
        assert!(!res.fallback_used);
        assert!(res.flips.contains(&7));
        let after = classify_pairs(&res.labeling, &p).unwrap();
        assert_eq!(after[4].member_dls(0), [4, 11, -15]);
        assert!(detect_conflicts(&after).edges.iter().all(|e| e.dummy));
    }

    #[test]
    fn gdl_input_is_left_alone() {
        for n in 10..40 {
            let done = label_n_c3(n).unwrap().labeling;
            let p = case_parameters(n).unwrap();
            let again = resolve_conflicts(&done, &p).unwrap();
            if detect_conflicts(&classify_pairs(&done, &p).unwrap()).is_empty() {
                assert_eq!(again.labeling, done, "n = {n}");
            }
        }
    }

    #[test]
    fn pair_layouts_cover_each_table_triangle_once() {
        for n in 10..400 {
            let p = case_parameters(n).unwrap();
            let mut seen: Vec<usize> = pair_layout(&p)
                .iter()
                .flatten()
                .filter_map(|m| m.triangle())
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..p.table_triangles()).collect::<Vec<_>>(), "n = {n}");
        }
    }

    #[test]
    fn every_case_builds_without_repair() {
        for n in [10, 13, 15, 16, 70, 100, 101, 102, 103, 104, 105, 106] {
            let c = label_n_c3(n).unwrap();
            let r = verify_gdl(&c.labeling);
            assert!(r.is_gdl, "n = {n}");
            let top = 3 * n as u64 - 2;
            assert!(r.max_magnitude <= top && r.count_at(top) <= 1, "n = {n}");
            assert!(!c.trace.fallback_used(), "n = {n}: {:?}", c.trace.notes);
        }
    }

    #[test]
    fn small_and_degenerate_counts() {
        assert!(matches!(label_n_c3(1), Err(GdlError::Unsupported(_))));
        assert!(matches!(label_n_c3(0), Err(GdlError::Unsupported(_))));
        let two = label_n_c3(2).unwrap().labeling;
        let r = verify_gdl(&two);
        assert!(r.is_gdl);
        assert_eq!(r.count_at(4), 0);
        assert!(label_c4_plus_n_c3(0).is_err());
        let one = label_c4_plus_n_c3(1).unwrap();
        assert_eq!(one.labeling.family().lengths(), &[4, 3]);
        assert!(is_gdl(&one.labeling));
        let c = label_c4_plus_n_c3(2).unwrap().labeling;
        assert_eq!(c.len(), 10);
        assert!(is_gdl(&c));
    }

    #[test]
    fn c4_threading_adds_only_fresh_dls() {
        for n in [9, 12, 17, 21, 50, 64] {
            let c = label_c4_plus_n_c3(n).unwrap();
            assert!(is_gdl(&c.labeling), "n = {n}");
            assert!(!c.trace.fallback_used(), "n = {n}");
            let l = &c.labeling;
            assert_eq!(l.family().lengths()[0], 4);
            assert_eq!(l.len(), 3 * n + 4);
        }
    }

    #[test]
    fn trace_serializes_with_case_and_flips() {
        let c = label_n_c3(70).unwrap();
        let p = c.trace.case.unwrap();
        assert_eq!((p.t, p.r, p.case_tag), (10, 0, CaseTag::A));
        assert_eq!(c.trace.depth(), 3);
        let json = serde_json::to_value(&c.trace).unwrap();
        assert_eq!(json["source"], "recursive");
        assert!(json["flips"].is_array());
        assert_eq!(json["inner"]["n"], 10);
        let back: TriangleTrace = serde_json::from_value(json).unwrap();
        assert_eq!(back, c.trace);
    }
}

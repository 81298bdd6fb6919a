//! Runs every family up to a vertex count through construction and search.

use std::collections::BTreeMap;
use std::time::Instant;

use gdl_core::constructions::is_exception;
use gdl_core::{
    plan_and_construct, search_gdl, verify_gdl, CircuitFamily, Labeling, Result, SearchBudget,
    Status,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Constructed,
    SearchedFound,
    NoGdl,
    OpenTimeout,
    Exception,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub family: Vec<usize>,
    pub status: RowStatus,
    pub max_magnitude: Option<u64>,
    pub elapsed_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labeling: Option<Labeling>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub families: usize,
    pub counts: BTreeMap<RowStatus, usize>,
    /// Families other than the two known exceptions found to have no gdl.
    pub counterexamples: Vec<Vec<usize>>,
    pub conjecture_falsified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub max_vertices: usize,
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

/// Multisets of lengths `>= 2` with total at most `max`, ordered by total
/// and then lexicographically on the nondecreasing length list.
pub fn families_up_to(max: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in min..=rest {
            if rest - k == 0 || rest - k >= k {
                prefix.push(k);
                extend(rest - k, k, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    for total in 2..=max {
        extend(total, 2, &mut Vec::new(), &mut out);
    }
    out
}

fn row(lengths: Vec<usize>, budget: &SearchBudget) -> Result<SurveyRow> {
    let start = Instant::now();
    let family = CircuitFamily::new(lengths.clone())?;
    let mut cert = plan_and_construct(&family, None)?;
    let mut status = match cert.status {
        Status::Gdl { .. } => RowStatus::Constructed,
        Status::Unsupported { exception: true, .. } => RowStatus::Exception,
        _ => RowStatus::OpenTimeout,
    };
    if status == RowStatus::OpenTimeout {
        cert = search_gdl(&family, budget, None);
        status = match cert.status {
            Status::Gdl { .. } => RowStatus::SearchedFound,
            Status::NoGdlExhaustive { .. } => RowStatus::NoGdl,
            _ => RowStatus::OpenTimeout,
        };
    }
    let labeling = cert.labeling().cloned();
    Ok(SurveyRow {
        family: lengths,
        status,
        max_magnitude: labeling.as_ref().map(|l| verify_gdl(l).max_magnitude),
        elapsed_seconds: start.elapsed().as_secs_f64(),
        labeling,
    })
}

pub fn run_survey(max_vertices: usize, budget: &SearchBudget) -> Result<SurveyReport> {
    let rows = families_up_to(max_vertices)
        .into_par_iter()
        .map(|f| row(f, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for r in &rows {
        *counts.entry(r.status).or_insert(0) += 1;
        if r.status == RowStatus::NoGdl {
            let family = CircuitFamily::new(r.family.clone())?;
            if !is_exception(&family) {
                counterexamples.push(r.family.clone());
            }
        }
    }
    Ok(SurveyReport {
        max_vertices,
        summary: SurveySummary {
            families: rows.len(),
            counts,
            conjecture_falsified: !counterexamples.is_empty(),
            counterexamples,
        },
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_and_count() {
        assert_eq!(families_up_to(2), vec![vec![2]]);
        assert_eq!(
            families_up_to(6),
            vec![
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![2, 3],
                vec![5],
                vec![2, 2, 2],
                vec![2, 4],
                vec![3, 3],
                vec![6],
            ]
        );
    }

    #[test]
    fn enumeration_matches_partition_counts() {
        // partitions of m into parts >= 2 equal p(m) - p(m-1)
        fn p(m: usize) -> usize {
            let mut ways = vec![0usize; m + 1];
            ways[0] = 1;
            for part in 1..=m {
                for s in part..=m {
                    ways[s] += ways[s - part];
                }
            }
            ways[m]
        }
        let all = families_up_to(20);
        for m in 2..=20 {
            let got = all.iter().filter(|f| f.iter().sum::<usize>() == m).count();
            assert_eq!(got, p(m) - p(m - 1), "total {m}");
        }
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }
}

//! Graceful difference labeling checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::family::CircuitFamily;
use crate::labeling::Labeling;

/// Diagnostics for a candidate labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub is_bijection: bool,
    pub is_gdl: bool,
    /// `f(head) - f(tail)` per arc, canonical arc order.
    pub difference_labels: Vec<i64>,
    pub max_magnitude: u64,
    /// Magnitude -> number of arcs carrying it.
    pub magnitude_counts: BTreeMap<u64, usize>,
    /// Arc index pairs sharing a difference label. Each later arc is paired
    /// with the first arc that carried the label.
    pub duplicate_pairs: Vec<(usize, usize)>,
}

impl VerificationReport {
    pub fn count_at(&self, magnitude: u64) -> usize {
        self.magnitude_counts.get(&magnitude).copied().unwrap_or(0)
    }
}

pub fn verify_gdl(labeling: &Labeling) -> VerificationReport {
    let difference_labels = labeling.difference_labels();
    let is_bijection = labeling.is_bijection();

    let max_magnitude = difference_labels
        .iter()
        .map(|d| d.unsigned_abs())
        .max()
        .unwrap_or(0);
    let mut magnitude_counts = BTreeMap::new();
    for d in &difference_labels {
        *magnitude_counts.entry(d.unsigned_abs()).or_insert(0) += 1;
    }

    // presence table over [-max, max]: first arc carrying each label
    let span = max_magnitude as usize;
    let mut first = vec![usize::MAX; 2 * span + 1];
    let mut duplicate_pairs = Vec::new();
    for (arc, &d) in difference_labels.iter().enumerate() {
        let slot = &mut first[(d + span as i64) as usize];
        if *slot == usize::MAX {
            *slot = arc;
        } else {
            duplicate_pairs.push((*slot, arc));
        }
    }

    VerificationReport {
        is_bijection,
        is_gdl: is_bijection && duplicate_pairs.is_empty(),
        difference_labels,
        max_magnitude,
        magnitude_counts,
        duplicate_pairs,
    }
}

/// Fast yes/no check without building a report.
pub fn is_gdl(labeling: &Labeling) -> bool {
    if !labeling.is_bijection() {
        return false;
    }
    let n = labeling.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; 2 * n - 1];
    let labels = labeling.labels();
    for (u, v) in labeling.family().arcs() {
        let idx = (labels[v] as i64 - labels[u] as i64 + n as i64 - 1) as usize;
        if std::mem::replace(&mut seen[idx], true) {
            return false;
        }
    }
    true
}

/// The necessary condition `|A| <= 2(|V| - 1)`.
pub fn arc_count_bound(family: &CircuitFamily) -> bool {
    (family.arc_count() as i64) <= 2 * (family.total_vertices() as i64 - 1)
}

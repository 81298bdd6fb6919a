use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};

/// A disjoint union of directed circuits, given by the circuit lengths in
/// declaration order.
///
/// Vertices are numbered `0..n` circuit by circuit. Circuit `c` with first
/// vertex `s` and length `k` owns vertices `s..s+k` and the arcs
/// `s -> s+1 -> ... -> s+k-1 -> s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CircuitFamily {
    lengths: Vec<usize>,
    offsets: Vec<usize>,
}

impl CircuitFamily {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = lengths.iter().find(|&&k| k < 2) {
            return Err(GdlError::InvalidFamily(format!(
                "circuit length {bad} is below 2"
            )));
        }
        let mut offsets = Vec::with_capacity(lengths.len());
        let mut acc = 0usize;
        for &k in &lengths {
            offsets.push(acc);
            acc += k;
        }
        Ok(Self { lengths, offsets })
    }

    pub fn empty() -> Self {
        Self {
            lengths: Vec::new(),
            offsets: Vec::new(),
        }
    }

    /// `count` copies of the circuit of length `k`.
    pub fn repeated(k: usize, count: usize) -> Result<Self> {
        Self::new(vec![k; count])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn circuit_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn total_vertices(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Equal to [`total_vertices`](Self::total_vertices) for circuit unions.
    pub fn arc_count(&self) -> usize {
        self.total_vertices()
    }

    pub fn circuit_start(&self, circuit: usize) -> usize {
        self.offsets[circuit]
    }

    /// Vertex range owned by `circuit`.
    pub fn circuit_vertices(&self, circuit: usize) -> std::ops::Range<usize> {
        let s = self.offsets[circuit];
        s..s + self.lengths[circuit]
    }

    /// Arcs `(tail, head)` in canonical order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lengths
            .iter()
            .zip(&self.offsets)
            .flat_map(|(&k, &s)| (0..k).map(move |i| (s + i, s + (i + 1) % k)))
    }

    /// Index of the circuit that contains the canonical arc `arc`.
    pub fn circuit_of_arc(&self, arc: usize) -> usize {
        // arcs and vertices share the same numbering
        self.circuit_of_vertex(arc)
    }

    pub fn circuit_of_vertex(&self, v: usize) -> usize {
        match self.offsets.binary_search(&v) {
            Ok(c) => c,
            Err(c) => c - 1,
        }
    }

    /// Lengths sorted in nondecreasing order; the multiset identity of the family.
    pub fn sorted_lengths(&self) -> Vec<usize> {
        let mut v = self.lengths.clone();
        v.sort_unstable();
        v
    }

    pub fn same_multiset(&self, other: &CircuitFamily) -> bool {
        self.sorted_lengths() == other.sorted_lengths()
    }

    /// A new family with `extra` circuits appended after the existing ones.
    pub fn with_appended(&self, extra: &[usize]) -> Result<Self> {
        let mut lengths = self.lengths.clone();
        lengths.extend_from_slice(extra);
        Self::new(lengths)
    }

    pub fn count_of(&self, k: usize) -> usize {
        self.lengths.iter().filter(|&&l| l == k).count()
    }
}

impl TryFrom<Vec<usize>> for CircuitFamily {
    type Error = GdlError;

    fn try_from(lengths: Vec<usize>) -> Result<Self> {
        Self::new(lengths)
    }
}

impl From<CircuitFamily> for Vec<usize> {
    fn from(f: CircuitFamily) -> Self {
        f.lengths
    }
}

impl fmt::Display for CircuitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lengths.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, k) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_circuits() {
        assert!(CircuitFamily::new(vec![3, 1]).is_err());
        assert!(CircuitFamily::new(vec![0]).is_err());
    }

    #[test]
    fn arcs_follow_declaration_order() {
        let f = CircuitFamily::new(vec![2, 3]).unwrap();
        let arcs: Vec<_> = f.arcs().collect();
        assert_eq!(arcs, vec![(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(f.arc_count(), f.total_vertices());
    }

    #[test]
    fn circuit_lookup() {
        let f = CircuitFamily::new(vec![2, 3, 4]).unwrap();
        let owners: Vec<_> = (0..9).map(|v| f.circuit_of_vertex(v)).collect();
        assert_eq!(owners, vec![0, 0, 1, 1, 1, 2, 2, 2, 2]);
        assert_eq!(f.circuit_vertices(2), 5..9);
    }

    #[test]
    fn json_is_a_plain_list() {
        let f = CircuitFamily::new(vec![3, 3, 4]).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), "[3,3,4]");
        let back: CircuitFamily = serde_json::from_str("[3,3,4]").unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<CircuitFamily>("[3,1]").is_err());
    }
}

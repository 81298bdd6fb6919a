use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;

/// Vertex labels for a [`CircuitFamily`], in canonical vertex order.
///
/// Labels are 1-based. The constructor only checks the length; whether the
/// labels form a bijection onto `1..=n` is reported by the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LabelingJson", into = "LabelingJson")]
pub struct Labeling {
    family: CircuitFamily,
    labels: Vec<usize>,
}

/// Wire form: `{"circuits": [...], "labels": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingJson {
    pub circuits: Vec<usize>,
    pub labels: Vec<usize>,
}

impl TryFrom<LabelingJson> for Labeling {
    type Error = GdlError;

    fn try_from(raw: LabelingJson) -> Result<Self> {
        Labeling::new(CircuitFamily::new(raw.circuits)?, raw.labels)
    }
}

impl From<Labeling> for LabelingJson {
    fn from(l: Labeling) -> Self {
        LabelingJson {
            circuits: l.family.into(),
            labels: l.labels,
        }
    }
}

impl Labeling {
    pub fn new(family: CircuitFamily, labels: Vec<usize>) -> Result<Self> {
        let expected = family.total_vertices();
        if labels.len() != expected {
            return Err(GdlError::LengthMismatch {
                expected,
                actual: labels.len(),
            });
        }
        Ok(Self { family, labels })
    }

    /// Labeling of a single family given circuit by circuit.
    pub fn from_circuits(circuits: &[Vec<usize>]) -> Result<Self> {
        let family = CircuitFamily::new(circuits.iter().map(Vec::len).collect())?;
        Self::new(family, circuits.concat())
    }

    pub fn empty() -> Self {
        Self {
            family: CircuitFamily::empty(),
            labels: Vec::new(),
        }
    }

    pub fn family(&self) -> &CircuitFamily {
        &self.family
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn circuit_labels(&self, circuit: usize) -> &[usize] {
        &self.labels[self.family.circuit_vertices(circuit)]
    }

    /// Signed difference labels `f(head) - f(tail)` in canonical arc order.
    pub fn difference_labels(&self) -> Vec<i64> {
        self.family
            .arcs()
            .map(|(u, v)| self.labels[v] as i64 - self.labels[u] as i64)
            .collect()
    }

    pub fn circuit_difference_labels(&self, circuit: usize) -> Vec<i64> {
        let l = self.circuit_labels(circuit);
        let k = l.len();
        (0..k)
            .map(|i| l[(i + 1) % k] as i64 - l[i] as i64)
            .collect()
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.labels.len();
        let mut seen = vec![false; n + 1];
        for &x in &self.labels {
            if x == 0 || x > n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Exchanges the labels of the second and third vertex of a triangle.
    ///
    /// The triangle's difference labels are negated as a set.
    pub fn flip_triangle(&self, circuit: usize) -> Result<Labeling> {
        let mut out = self.clone();
        out.flip_triangle_in_place(circuit)?;
        Ok(out)
    }

    pub fn flip_triangle_in_place(&mut self, circuit: usize) -> Result<()> {
        let count = self.family.circuit_count();
        if circuit >= count {
            return Err(GdlError::CircuitOutOfRange {
                index: circuit,
                count,
            });
        }
        let length = self.family.lengths()[circuit];
        if length != 3 {
            return Err(GdlError::WrongCircuitLength {
                index: circuit,
                length,
                expected: 3,
            });
        }
        let s = self.family.circuit_start(circuit);
        self.labels.swap(s + 1, s + 2);
        Ok(())
    }

    /// Every label increased by `offset`.
    pub fn shifted(&self, offset: usize) -> Labeling {
        Labeling {
            family: self.family.clone(),
            labels: self.labels.iter().map(|&x| x + offset).collect(),
        }
    }

    /// Reorders whole circuits so the family matches `target` circuit by
    /// circuit. Circuits of equal length keep their relative order.
    pub fn reorder_to(&self, target: &CircuitFamily) -> Result<Labeling> {
        if !self.family.same_multiset(target) {
            return Err(GdlError::Precondition(format!(
                "cannot reorder {} into {}",
                self.family, target
            )));
        }
        let mut taken = vec![false; self.family.circuit_count()];
        let mut labels = Vec::with_capacity(self.labels.len());
        for &k in target.lengths() {
            let c = (0..self.family.circuit_count())
                .find(|&c| !taken[c] && self.family.lengths()[c] == k)
                .expect("multisets agree");
            taken[c] = true;
            labels.extend_from_slice(self.circuit_labels(c));
        }
        Labeling::new(target.clone(), labels)
    }
}

/// A labeling under construction: some vertices may still be unlabeled.
#[derive(Debug, Clone)]
pub struct PartialLabeling {
    family: CircuitFamily,
    labels: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl PartialLabeling {
    pub fn new(family: CircuitFamily) -> Self {
        let n = family.total_vertices();
        Self {
            family,
            labels: vec![None; n],
            used: vec![false; n + 1],
        }
    }

    pub fn family(&self) -> &CircuitFamily {
        &self.family
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.labels[v]
    }

    pub fn assign(&mut self, v: usize, label: usize) -> Result<()> {
        let n = self.labels.len();
        if v >= n {
            return Err(GdlError::Precondition(format!(
                "vertex {v} outside 0..{n}"
            )));
        }
        if label == 0 || label > n {
            return Err(GdlError::Precondition(format!(
                "label {label} outside 1..={n}"
            )));
        }
        if let Some(old) = self.labels[v] {
            return Err(GdlError::Collision(format!(
                "vertex {v} already carries label {old}"
            )));
        }
        if self.used[label] {
            return Err(GdlError::Collision(format!("label {label} already used")));
        }
        self.labels[v] = Some(label);
        self.used[label] = true;
        Ok(())
    }

    /// Writes `inner` shifted by `offset` into the outer circuits named by
    /// `placement` (inner circuit `i` goes to outer circuit `placement[i]`).
    pub fn embed(&mut self, inner: &Labeling, offset: usize, placement: &[usize]) -> Result<()> {
        let inner_family = inner.family();
        if placement.len() != inner_family.circuit_count() {
            return Err(GdlError::Precondition(format!(
                "placement names {} circuits, inner family has {}",
                placement.len(),
                inner_family.circuit_count()
            )));
        }
        let mut seen = vec![false; self.family.circuit_count()];
        for (i, &slot) in placement.iter().enumerate() {
            if slot >= self.family.circuit_count() {
                return Err(GdlError::CircuitOutOfRange {
                    index: slot,
                    count: self.family.circuit_count(),
                });
            }
            if std::mem::replace(&mut seen[slot], true) {
                return Err(GdlError::Precondition(format!(
                    "placement is not injective: outer circuit {slot} used twice"
                )));
            }
            let (want, have) = (inner_family.lengths()[i], self.family.lengths()[slot]);
            if want != have {
                return Err(GdlError::WrongCircuitLength {
                    index: slot,
                    length: have,
                    expected: want,
                });
            }
        }
        for (i, &slot) in placement.iter().enumerate() {
            let start = self.family.circuit_start(slot);
            for (j, &x) in inner.circuit_labels(i).iter().enumerate() {
                self.assign(start + j, x + offset)?;
            }
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    pub fn into_labeling(self) -> Result<Labeling> {
        if let Some(v) = self.labels.iter().position(Option::is_none) {
            return Err(GdlError::Precondition(format!("vertex {v} is unlabeled")));
        }
        let labels = self.labels.into_iter().map(Option::unwrap).collect();
        Labeling::new(self.family, labels)
    }
}

/// Embeds `inner`, shifted by `offset`, into an empty labeling of `outer`.
pub fn shift_and_embed(
    inner: &Labeling,
    offset: usize,
    outer: &CircuitFamily,
    placement: &[usize],
) -> Result<PartialLabeling> {
    let mut partial = PartialLabeling::new(outer.clone());
    partial.embed(inner, offset, placement)?;
    Ok(partial)
}

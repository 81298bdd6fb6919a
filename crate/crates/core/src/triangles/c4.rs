//! One 4-circuit next to `n` triangles, obtained by threading an extra
//! vertex into one triangle of an `(n+1)·C3` labeling.

use super::conflicts::{duplicate_count, duplicated_circuits};
use super::params::CaseParameters;
use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;
use crate::labeling::Labeling;
use crate::verify::is_gdl;

/// Triangle that absorbs the new vertex.
pub(crate) fn host_triangle(p: &CaseParameters) -> usize {
    if p.is_even_split() {
        1
    } else {
        2
    }
}

/// Builds the `C4 + n·C3` labeling from a finished `(n+1)·C3` labeling
/// (flips already applied). The 4-circuit comes first.
pub(crate) fn thread_vertex(big: &Labeling, p: &CaseParameters) -> Result<Labeling> {
    let n_plus = big.family().circuit_count();
    let host = host_triangle(p);
    let top = 3 * n_plus + 1;
    let shift = usize::from(p.is_even_split());
    let [a, b, c] = <[usize; 3]>::try_from(big.circuit_labels(host))
        .map_err(|_| GdlError::Internal("host circuit is not a triangle".into()))?;
    let c4 = if p.is_even_split() {
        // x -> y -> v0 -> z, with v0 the new minimum
        [a + 1, b + 1, 1, c + 1]
    } else {
        // x -> y -> z -> v0, with v0 the new maximum
        [a, b, c, top]
    };
    let mut labels = c4.to_vec();
    for t in (0..n_plus).filter(|&t| t != host) {
        labels.extend(big.circuit_labels(t).iter().map(|&x| x + shift));
    }
    let mut lengths = vec![4];
    lengths.extend(std::iter::repeat_n(3, n_plus - 1));
    Labeling::new(CircuitFamily::new(lengths)?, labels)
}

/// Flips every triangle of an `m·C3` labeling in place. Returns the new
/// flip set relative to the table labeling, `flips` being the old one.
pub(crate) fn complement_flips(labeling: &mut Labeling, flips: &[usize]) -> Result<Vec<usize>> {
    let m = labeling.family().circuit_count();
    for c in 0..m {
        labeling.flip_triangle_in_place(c)?;
    }
    Ok((0..m).filter(|c| !flips.contains(c)).collect())
}

/// Greedy single-triangle flips (the 4-circuit stays put) until no dl
/// repeats. Returns the triangles flipped.
pub(crate) fn repair(labeling: &mut Labeling, limit: usize) -> Result<Vec<usize>> {
    let mut flipped = Vec::new();
    for _ in 0..limit {
        let current = duplicate_count(labeling);
        if current == 0 {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for c in duplicated_circuits(labeling).into_iter().filter(|&c| c > 0) {
            labeling.flip_triangle_in_place(c)?;
            let d = duplicate_count(labeling);
            labeling.flip_triangle_in_place(c)?;
            if d < current && best.is_none_or(|(b, _)| d < b) {
                best = Some((d, c));
            }
        }
        let Some((_, c)) = best else { break };
        labeling.flip_triangle_in_place(c)?;
        flipped.push(c);
    }
    if is_gdl(labeling) {
        Ok(flipped)
    } else {
        Err(GdlError::Internal(format!(
            "C4 + {}·C3: {} duplicated dls remain after repair",
            labeling.family().circuit_count() - 1,
            duplicate_count(labeling)
        )))
    }
}

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};

/// Which labeling table applies to `n = 7t + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `r ∈ {-4, -2, 0}`
    A,
    /// `r = 2`
    B,
    /// `r ∈ {-3, -1}`
    C,
    /// `r = 1`
    D,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParameters {
    pub n: usize,
    pub t: usize,
    pub r: i64,
    pub theta: usize,
    pub case_tag: CaseTag,
}

/// Smallest triangle count handled by the recursive construction.
pub const RECURSIVE_MIN: usize = 10;

pub fn case_parameters(n: usize) -> Result<CaseParameters> {
    if n < RECURSIVE_MIN {
        return Err(GdlError::Precondition(format!(
            "the recursive construction needs at least {RECURSIVE_MIN} triangles, got {n}"
        )));
    }
    let t = (n + 4) / 7;
    let r = n as i64 - 7 * t as i64;
    // ceil(r/2) for r in [-4, 2]
    let half_up = r.div_euclid(2) + r.rem_euclid(2);
    let theta = (3 * t as i64 + half_up) as usize;
    let case_tag = match r {
        -4 | -2 | 0 => CaseTag::A,
        2 => CaseTag::B,
        -3 | -1 => CaseTag::C,
        1 => CaseTag::D,
        _ => unreachable!("r = {r} outside [-4, 2]"),
    };
    Ok(CaseParameters {
        n,
        t,
        r,
        theta,
        case_tag,
    })
}

impl CaseParameters {
    /// Whether `n - t = 2θ` (cases A and B) rather than `2θ - 1`.
    pub fn is_even_split(&self) -> bool {
        matches!(self.case_tag, CaseTag::A | CaseTag::B)
    }

    /// Number of triangles labeled by the table, before the embedded block.
    pub fn table_triangles(&self) -> usize {
        if self.is_even_split() {
            2 * self.theta
        } else {
            2 * self.theta - 1
        }
    }

    /// Shift applied to the embedded `t·C3` labels.
    pub fn sub_offset(&self) -> usize {
        if self.is_even_split() {
            3 * self.theta
        } else {
            3 * self.theta - 1
        }
    }

    /// Index of the last pair.
    pub fn last_pair(&self) -> usize {
        if self.is_even_split() {
            self.theta
        } else {
            self.theta - 1
        }
    }

    /// Pairs handled by the generic conflict rules; the remaining high pairs
    /// (cases B and D) and pairs 0 and 1 get dedicated treatment.
    pub fn regular_pairs(&self) -> RangeInclusive<usize> {
        let hi = match self.case_tag {
            CaseTag::A => self.theta,
            CaseTag::B | CaseTag::C => self.theta - 1,
            CaseTag::D => self.theta - 3,
        };
        2..=hi
    }

    /// Largest magnitude of the finished labeling.
    pub fn top_magnitude(&self) -> u64 {
        3 * self.n as u64 - 2
    }
}

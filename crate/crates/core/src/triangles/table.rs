//! Explicit vertex labels for the table triangles, their pairing, and the
//! expected small/medium/big difference labels of every pair member.
//!
//! Triangles are numbered from 1 here (`T_1, T_2, ...`) to keep the row
//! formulas readable; circuit ids elsewhere are 0-based (`T_i` is circuit
//! `i - 1`).

use serde::{Deserialize, Serialize};

use super::params::{CaseParameters, CaseTag};
use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;
use crate::labeling::{Labeling, PartialLabeling};
use crate::search::MagnitudeProfile;
use crate::verify::verify_gdl;

/// Labels of `T_i` (1-based) under the table of its case.
pub(crate) fn table_row(p: &CaseParameters, i: usize) -> [usize; 3] {
    let th = p.theta as i64;
    let t = p.t as i64;
    let i64_ = i as i64;
    let row: [i64; 3] = match p.case_tag {
        CaseTag::A | CaseTag::B => {
            let b_tail = p.case_tag == CaseTag::B && i + 1 >= 2 * p.theta;
            match i {
                1 => [1, 2 * th + 1, 6 * th + 3 * t - 3],
                2 => [2, 6 * th + 3 * t, 4 * th + 3 * t],
                3 => [3, 6 * th + 3 * t - 1, 2 * th + 2],
                4 => [4, 4 * th + 3 * t - 1, 6 * th + 3 * t - 2],
                _ if b_tail && i == 2 * p.theta - 1 => {
                    [i64_, 3 * th + 3 * t + 1, 4 * th + 3 * t + 1]
                }
                _ if b_tail => [i64_, 4 * th + 3 * t + 2, 3 * th],
                _ if i % 2 == 1 => {
                    let k = (i64_ + 1) / 2;
                    [i64_, 2 * th + k, 6 * th + 3 * t - 2 * k + 2]
                }
                _ => {
                    let k = i64_ / 2;
                    [i64_, 6 * th + 3 * t - 2 * k + 1, 4 * th + 3 * t - k + 1]
                }
            }
        }
        CaseTag::C | CaseTag::D => {
            let d_tail = p.case_tag == CaseTag::D && i + 4 >= 2 * p.theta;
            match i {
                1 => [1, 2 * th, 6 * th + 3 * t - 6],
                2 => [2, 6 * th + 3 * t - 3, 4 * th + 3 * t - 2],
                3 => [3, 6 * th + 3 * t - 4, 2 * th + 1],
                4 => [4, 4 * th + 3 * t - 3, 6 * th + 3 * t - 5],
                5 => [5, 2 * th + 2, 6 * th + 3 * t - 7],
                _ if d_tail => match 2 * p.theta - i {
                    4 => [i64_, 4 * th + 3 * t - 1, 3 * th + 3 * t + 1],
                    3 => [i64_, 4 * th + 3 * t + 2, 3 * th - 2],
                    2 => [i64_, 3 * th + 3 * t, 4 * th + 3 * t + 1],
                    _ => [i64_, 3 * th - 1, 4 * th + 3 * t],
                },
                _ if i.is_multiple_of(2) => {
                    let k = i64_ / 2;
                    [i64_, 6 * th + 3 * t - 2 * k - 2, 4 * th + 3 * t - k - 1]
                }
                _ => {
                    let k = (i64_ - 1) / 2;
                    [i64_, 2 * th + k, 6 * th + 3 * t - 2 * k - 3]
                }
            }
        }
    };
    row.map(|x| x as usize)
}

/// Labels the table triangles and embeds `sub` (a gdl of `t·C3` with no
/// magnitude above `3t-2` and at most one arc there) shifted past them.
///
/// The result is a bijection onto `1..=3n` but may still contain conflicts.
pub fn base_table_labeling(p: &CaseParameters, sub: &Labeling) -> Result<Labeling> {
    let expected = CircuitFamily::repeated(3, p.t)?;
    if sub.family() != &expected {
        return Err(GdlError::Precondition(format!(
            "embedded block must label {expected}, got {}",
            sub.family()
        )));
    }
    let report = verify_gdl(sub);
    if !report.is_gdl || !MagnitudeProfile::unique_top(3 * p.t as u64 - 2).admits(&report) {
        return Err(GdlError::Precondition(format!(
            "embedded {}·C3 labeling lacks the bounded-magnitude property",
            p.t
        )));
    }
    let m = p.table_triangles();
    let family = CircuitFamily::repeated(3, p.n)?;
    let mut partial = PartialLabeling::new(family);
    for i in 1..=m {
        for (j, x) in table_row(p, i).into_iter().enumerate() {
            partial.assign(3 * (i - 1) + j, x)?;
        }
    }
    let placement: Vec<usize> = (m..m + p.t).collect();
    partial.embed(sub, p.sub_offset(), &placement)?;
    partial.into_labeling()
}

/// A pair member: a real table triangle (0-based circuit id) or a dummy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberRef {
    Triangle(usize),
    Dummy(u8),
}

impl MemberRef {
    pub fn triangle(self) -> Option<usize> {
        match self {
            MemberRef::Triangle(c) => Some(c),
            MemberRef::Dummy(_) => None,
        }
    }
}

/// Which members make up each pair, indexed by pair number.
pub(crate) fn pair_layout(p: &CaseParameters) -> Vec<[MemberRef; 2]> {
    let th = p.theta;
    let tri = |i: usize| MemberRef::Triangle(i - 1);
    let mut pairs = vec![
        [tri(1), tri(2)],
        [tri(3), tri(4)],
        [MemberRef::Dummy(1), tri(5)],
    ];
    let generic_hi = match p.case_tag {
        CaseTag::A | CaseTag::C => th - 1,
        CaseTag::B => th - 2,
        CaseTag::D => th - 3,
    };
    for k in 3..=generic_hi {
        pairs.push([tri(2 * k), tri(2 * k + 1)]);
    }
    match p.case_tag {
        CaseTag::A => pairs.push([tri(2 * th), MemberRef::Dummy(2)]),
        CaseTag::B => {
            pairs.push([tri(2 * th - 2), MemberRef::Dummy(2)]);
            pairs.push([tri(2 * th - 1), tri(2 * th)]);
        }
        CaseTag::C => {}
        CaseTag::D => {
            pairs.push([tri(2 * th - 3), tri(2 * th - 2)]);
            pairs.push([tri(2 * th - 1), tri(2 * th - 4)]);
        }
    }
    debug_assert_eq!(pairs.len(), p.last_pair() + 1);
    pairs
}

/// Signed (small, medium, big) difference labels.
pub type Dls = [i64; 3];

/// Expected dls of `T_i` (1-based) before any flip. Dummies use the row of
/// the triangle they stand in for.
pub(crate) fn table_dls(p: &CaseParameters, i: usize) -> Dls {
    let th = p.theta as i64;
    let t = p.t as i64;
    let k_even = i as i64 / 2;
    let k_odd = (i as i64 - 1) / 2;
    match p.case_tag {
        CaseTag::A | CaseTag::B => match i {
            1 => [2 * th, 4 * th + 3 * t - 4, -(6 * th + 3 * t - 4)],
            2 => [-2 * th, -(4 * th + 3 * t - 2), 6 * th + 3 * t - 2],
            3 => [-(2 * th - 1), -(4 * th + 3 * t - 3), 6 * th + 3 * t - 4],
            4 => [2 * th - 1, 4 * th + 3 * t - 5, -(6 * th + 3 * t - 6)],
            _ if p.case_tag == CaseTag::B && i == 2 * p.theta - 1 => {
                [th, th + 3 * t + 2, -(2 * th + 3 * t + 2)]
            }
            _ if p.case_tag == CaseTag::B && i == 2 * p.theta => {
                [-th, -(th + 3 * t + 2), 2 * th + 3 * t + 2]
            }
            _ if i.is_multiple_of(2) => [
                -(2 * th - k_even),
                -(4 * th + 3 * t - 3 * k_even + 1),
                6 * th + 3 * t - 4 * k_even + 1,
            ],
            _ => [
                2 * th - k_odd,
                4 * th + 3 * t - 3 * k_odd - 1,
                -(6 * th + 3 * t - 4 * k_odd - 1),
            ],
        },
        CaseTag::C | CaseTag::D => {
            let d_tail = p.case_tag == CaseTag::D && i + 4 >= 2 * p.theta && i > 5;
            match i {
                1 => [2 * th - 1, 4 * th + 3 * t - 6, -(6 * th + 3 * t - 7)],
                2 => [-(2 * th - 1), -(4 * th + 3 * t - 4), 6 * th + 3 * t - 5],
                3 => [-(2 * th - 2), -(4 * th + 3 * t - 5), 6 * th + 3 * t - 7],
                4 => [2 * th - 2, 4 * th + 3 * t - 7, -(6 * th + 3 * t - 9)],
                _ if d_tail => match 2 * p.theta - i {
                    4 => [-(th - 2), -(th + 3 * t + 5), 2 * th + 3 * t + 3],
                    3 => [-(th + 1), -(th + 3 * t + 4), 2 * th + 3 * t + 5],
                    2 => [th + 1, th + 3 * t + 2, -(2 * th + 3 * t + 3)],
                    _ => [th, th + 3 * t + 1, -(2 * th + 3 * t + 1)],
                },
                _ if i.is_multiple_of(2) => [
                    -(2 * th - k_even - 1),
                    -(4 * th + 3 * t - 3 * k_even - 1),
                    6 * th + 3 * t - 4 * k_even - 2,
                ],
                _ => [
                    2 * th - k_odd - 1,
                    4 * th + 3 * t - 3 * k_odd - 3,
                    -(6 * th + 3 * t - 4 * k_odd - 4),
                ],
            }
        }
    }
}

/// Table row a dummy stands in for: `D_1` is `T_4` of the generic pattern,
/// `D_2` is the row after the last real one in its pair.
fn dummy_dls(p: &CaseParameters, which: u8) -> Dls {
    let th = p.theta as i64;
    let t = p.t as i64;
    match (p.case_tag, which) {
        (CaseTag::A | CaseTag::B, 1) => [
            -(2 * th - 2),
            -(4 * th + 3 * t - 5),
            6 * th + 3 * t - 7,
        ],
        (CaseTag::C | CaseTag::D, 1) => [
            -(2 * th - 3),
            -(4 * th + 3 * t - 7),
            6 * th + 3 * t - 10,
        ],
        (CaseTag::A, 2) => [th, th + 3 * t - 1, -(2 * th + 3 * t - 1)],
        (CaseTag::B, 2) => [th + 1, th + 3 * t + 2, -(2 * th + 3 * t + 3)],
        _ => unreachable!("no dummy D{which} in case {}", p.case_tag),
    }
}

/// Actual (small, medium, big) dls of a triangle, ordered by magnitude.
pub(crate) fn triangle_dls(l: &Labeling, circuit: usize) -> Dls {
    let mut d = l.circuit_difference_labels(circuit);
    d.sort_by_key(|x| x.unsigned_abs());
    [d[0], d[1], d[2]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMember {
    pub source: MemberRef,
    pub small: i64,
    pub medium: i64,
    pub big: i64,
}

impl PairMember {
    pub fn is_dummy(&self) -> bool {
        matches!(self.source, MemberRef::Dummy(_))
    }

    fn dls(&self) -> Dls {
        [self.small, self.medium, self.big]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePairing {
    pub index: usize,
    pub members: [PairMember; 2],
}

fn member(source: MemberRef, d: Dls) -> PairMember {
    PairMember {
        source,
        small: d[0],
        medium: d[1],
        big: d[2],
    }
}

/// Groups the table triangles into pairs with their current dls.
///
/// Real members are read off `labeling` and must match the table formulas
/// up to a global sign (a flipped triangle negates all three). Dummies take
/// the table values with the sign of their partner.
pub fn classify_pairs(labeling: &Labeling, p: &CaseParameters) -> Result<Vec<TrianglePairing>> {
    let layout = pair_layout(p);
    let mut out = Vec::with_capacity(layout.len());
    for (index, slots) in layout.into_iter().enumerate() {
        let mut members = [member(MemberRef::Dummy(0), [0; 3]); 2];
        let mut partner_sign = 1;
        for (x, slot) in slots.iter().enumerate() {
            if let MemberRef::Triangle(c) = *slot {
                let actual = triangle_dls(labeling, c);
                let expected = table_dls(p, c + 1);
                let sign = if actual == expected {
                    1
                } else if actual == expected.map(|v| -v) {
                    -1
                } else {
                    return Err(GdlError::Internal(format!(
                        "T{} in case {} (n={}): dls {actual:?} disagree with table {expected:?}",
                        c + 1,
                        p.case_tag,
                        p.n
                    )));
                };
                partner_sign = sign;
                members[x] = member(*slot, actual);
            }
        }
        for (x, slot) in slots.iter().enumerate() {
            if let MemberRef::Dummy(which) = *slot {
                members[x] = member(*slot, dummy_dls(p, which).map(|v| v * partner_sign));
            }
        }
        out.push(TrianglePairing { index, members });
    }
    Ok(out)
}

impl TrianglePairing {
    pub fn member_dls(&self, x: usize) -> Dls {
        self.members[x].dls()
    }

    /// Real triangles of the pair (0-based circuit ids).
    pub fn triangles(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().filter_map(|m| m.source.triangle())
    }
}

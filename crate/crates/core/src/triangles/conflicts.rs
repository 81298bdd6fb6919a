//! Conflicts between pairs and their removal by flips.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::params::{CaseParameters, CaseTag};
use super::table::{classify_pairs, TrianglePairing};
use crate::error::{GdlError, Result};
use crate::labeling::Labeling;
use crate::verify::is_gdl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictKind {
    /// Big dl of the first member equals the medium dl of the second.
    OneTwo,
    /// Big dl of the second member equals the medium dl of the first.
    TwoOne,
    Other,
}

/// `source → target`: a big dl of pair `source` equals a medium dl of
/// pair `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConflictEdge {
    pub source: usize,
    pub target: usize,
    pub source_member: usize,
    pub target_member: usize,
    pub kind: ConflictKind,
    /// At least one side is a dummy triangle.
    pub dummy: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictRelation {
    pub edges: Vec<ConflictEdge>,
}

pub fn detect_conflicts(pairings: &[TrianglePairing]) -> ConflictRelation {
    let mut by_medium: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
    for p in pairings {
        for (x, m) in p.members.iter().enumerate() {
            by_medium.entry(m.medium).or_default().push((p.index, x));
        }
    }
    let mut edges = Vec::new();
    for p in pairings {
        for (x, m) in p.members.iter().enumerate() {
            let Some(hits) = by_medium.get(&m.big) else {
                continue;
            };
            for &(target, y) in hits {
                if target == p.index {
                    continue;
                }
                let kind = match (x, y) {
                    (0, 1) => ConflictKind::OneTwo,
                    (1, 0) => ConflictKind::TwoOne,
                    _ => ConflictKind::Other,
                };
                let dummy = m.is_dummy() || pairings[target].members[y].is_dummy();
                edges.push(ConflictEdge {
                    source: p.index,
                    target,
                    source_member: x,
                    target_member: y,
                    kind,
                    dummy,
                });
            }
        }
    }
    edges.sort_by_key(|e| (e.target, e.source, e.source_member));
    ConflictRelation { edges }
}

impl ConflictRelation {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, source: usize, target: usize) -> bool {
        self.edges
            .iter()
            .any(|e| e.source == source && e.target == target)
    }

    fn has_kind(&self, source: usize, target: usize, kind: ConflictKind) -> bool {
        self.edges
            .iter()
            .any(|e| e.source == source && e.target == target && e.kind == kind)
    }

    /// Distinct sources conflicting with `target`.
    pub fn sources_of(&self, target: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|e| e.target == target)
            .map(|e| e.source)
            .collect()
    }

    /// Edges with both ends in `range`.
    pub fn within(&self, range: &RangeInclusive<usize>) -> Vec<ConflictEdge> {
        self.edges
            .iter()
            .filter(|e| range.contains(&e.source) && range.contains(&e.target))
            .copied()
            .collect()
    }

    /// Checks the structural properties of conflicts among pairs in
    /// `range`: every edge points downwards, a 12-conflict `i → j` comes
    /// with a 21-conflict `i-1 → j` and no `i+1 → j`, symmetrically for
    /// 21-conflicts, and the sources of one target are adjacent.
    pub fn check_structure(&self, range: &RangeInclusive<usize>) -> std::result::Result<(), String> {
        let edges = self.within(range);
        let (lo, hi) = (*range.start(), *range.end());
        for e in &edges {
            if e.target >= e.source {
                return Err(format!("edge {} -> {} does not point down", e.source, e.target));
            }
            // neighbours must exist, and stay above the target
            let i = e.source;
            match e.kind {
                ConflictKind::OneTwo if i > lo && i - 1 > e.target && i < hi => {
                    if !self.has_kind(i - 1, e.target, ConflictKind::TwoOne) {
                        return Err(format!("12-conflict {i} -> {} lacks 21 partner", e.target));
                    }
                    if self.contains(i + 1, e.target) {
                        return Err(format!("{} -> {} next to 12-conflict {i}", i + 1, e.target));
                    }
                }
                ConflictKind::TwoOne if i + 1 < hi && i - 1 > e.target => {
                    if !self.has_kind(i + 1, e.target, ConflictKind::OneTwo) {
                        return Err(format!("21-conflict {i} -> {} lacks 12 partner", e.target));
                    }
                    if self.contains(i - 1, e.target) {
                        return Err(format!("{} -> {} next to 21-conflict {i}", i - 1, e.target));
                    }
                }
                _ => {}
            }
        }
        let mut sources: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for e in &edges {
            sources.entry(e.target).or_default().insert(e.source);
        }
        for (j, s) in sources {
            let (a, b) = (*s.first().unwrap(), *s.last().unwrap());
            if b - a > 1 {
                return Err(format!("sources {s:?} of {j} are not adjacent"));
            }
        }
        Ok(())
    }
}

/// Outcome of conflict resolution.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub labeling: Labeling,
    /// Triangles flipped an odd number of times, ascending.
    pub flips: Vec<usize>,
    pub fallback_used: bool,
    pub notes: Vec<String>,
}

struct Resolver<'a> {
    p: &'a CaseParameters,
    labeling: Labeling,
    layout: Vec<TrianglePairing>,
    flipped: Vec<bool>,
    notes: Vec<String>,
}

impl<'a> Resolver<'a> {
    fn flip_triangle(&mut self, c: usize) -> Result<()> {
        self.labeling.flip_triangle_in_place(c)?;
        self.flipped[c] ^= true;
        Ok(())
    }

    fn flip_pair(&mut self, k: usize) -> Result<()> {
        let tris: Vec<usize> = self.layout[k].triangles().collect();
        for c in tris {
            self.flip_triangle(c)?;
        }
        Ok(())
    }

    fn sub_block(&self) -> std::ops::Range<usize> {
        let m = self.p.table_triangles();
        m..m + self.p.t
    }

    fn flip_sub_block(&mut self) -> Result<()> {
        for c in self.sub_block() {
            self.flip_triangle(c)?;
        }
        Ok(())
    }

    fn relation(&mut self) -> Result<ConflictRelation> {
        self.layout = classify_pairs(&self.labeling, self.p)?;
        Ok(detect_conflicts(&self.layout))
    }

    /// Dls shared between the triangles of two pairs.
    fn pairs_collide(&self, a: usize, b: usize) -> bool {
        let dls = |k: usize| -> Vec<i64> {
            self.layout[k]
                .triangles()
                .flat_map(|c| self.labeling.circuit_difference_labels(c))
                .collect()
        };
        let da = dls(a);
        dls(b).iter().any(|x| da.contains(x))
    }

    fn duplicates(&self) -> usize {
        duplicate_count(&self.labeling)
    }

    fn run(&mut self) -> Result<()> {
        let range = self.p.regular_pairs();
        let theta = self.p.theta;

        // Pairs sitting in the middle of a chain i → j → k, and the
        // neighbours sharing their target.
        let rel = self.relation()?;
        if let Err(msg) = rel.check_structure(&range) {
            self.notes.push(format!("structure: {msg}"));
        }
        let edges = rel.within(&range);
        let j_set: BTreeSet<usize> = edges
            .iter()
            .map(|e| e.source)
            .filter(|&j| edges.iter().any(|e| e.target == j))
            .collect();
        let mut j_prime = BTreeSet::new();
        for e in edges.iter().filter(|e| j_set.contains(&e.source)) {
            for f in edges.iter().filter(|f| f.target == e.target) {
                if f.source != e.source && !j_set.contains(&f.source) {
                    j_prime.insert(f.source);
                }
            }
        }
        let chained: BTreeSet<usize> = j_set.union(&j_prime).copied().collect();
        for &k in &chained {
            self.flip_pair(k)?;
        }
        if !chained.is_empty() {
            self.notes.push(format!("chain flips {chained:?}"));
        }

        // Threshold rule on what is left.
        let rel = self.relation()?;
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for e in rel.within(&range) {
            if !chained.contains(&e.source) && !chained.contains(&e.target) {
                groups.entry(e.target).or_default().insert(e.source);
            }
        }
        let mut to_flip = BTreeSet::new();
        for (j, sources) in &groups {
            let i = *sources.first().unwrap();
            if 3 * i <= 2 * theta {
                to_flip.insert(*j);
            } else {
                to_flip.extend(sources.iter().copied());
            }
        }
        for &k in &to_flip {
            self.flip_pair(k)?;
        }
        if !to_flip.is_empty() {
            self.notes.push(format!("threshold flips {to_flip:?}"));
        }

        if self.p.case_tag == CaseTag::D {
            let (a, b) = (theta - 2, theta - 1);
            let rel = self.relation()?;
            if rel.edges.iter().any(|e| e.source == a || e.source == b) {
                self.flip_pair(a)?;
                self.flip_pair(b)?;
                self.notes.push(format!("flipped high pairs {a}, {b}"));
            }
        }

        let rel = self.relation()?;
        let (first, second) = if self.p.is_even_split() { (1, 0) } else { (0, 1) };
        if rel.edges.iter().any(|e| e.target == first && e.source >= 2 && !e.dummy) {
            self.flip_pair(first)?;
            self.notes.push(format!("flipped pair {first}"));
        }
        self.relation()?;
        if self.pairs_collide(0, 1) {
            if self.p.is_even_split() {
                self.flip_pair(second)?;
                self.notes.push(format!("flipped pair {second}"));
            } else {
                // Try undoing pair 0 first, then pair 1.
                let before = self.duplicates();
                self.flip_pair(0)?;
                self.relation()?;
                if self.pairs_collide(0, 1) || self.duplicates() >= before {
                    self.flip_pair(0)?;
                    self.flip_pair(1)?;
                    self.notes.push("pair 0/1 collision: flipped pair 1".into());
                } else {
                    self.notes.push("pair 0/1 collision: flipped pair 0".into());
                }
            }
        }

        if self.sub_block_collides() {
            self.flip_sub_block()?;
            self.notes.push("flipped embedded block".into());
        }
        Ok(())
    }

    fn sub_block_collides(&self) -> bool {
        let block = self.sub_block();
        let mut table = std::collections::HashSet::new();
        for c in 0..block.start {
            table.extend(self.labeling.circuit_difference_labels(c));
        }
        block
            .flat_map(|c| self.labeling.circuit_difference_labels(c))
            .any(|d| table.contains(&d))
    }

    /// Greedy repair: flip whichever pair, triangle, or the embedded block
    /// removes the most duplicated dls, until none remain.
    fn fallback(&mut self) -> Result<()> {
        let limit = 4 * self.p.theta;
        for _ in 0..limit {
            let current = self.duplicates();
            if current == 0 {
                return Ok(());
            }
            let involved = duplicated_circuits(&self.labeling);
            let mut moves: Vec<Move> = Vec::new();
            for k in 0..self.layout.len() {
                if self.layout[k].triangles().any(|c| involved.contains(&c)) {
                    moves.push(Move::Pair(k));
                }
            }
            moves.extend(involved.iter().map(|&c| Move::Triangle(c)));
            if self.sub_block().any(|c| involved.contains(&c)) {
                moves.push(Move::Block);
            }
            let mut best: Option<(usize, Move)> = None;
            for mv in moves {
                self.apply(mv)?;
                let d = self.duplicates();
                self.apply(mv)?;
                if d < current && best.is_none_or(|(b, _)| d < b) {
                    best = Some((d, mv));
                }
            }
            let Some((_, mv)) = best else { break };
            self.apply(mv)?;
            self.notes.push(format!("fallback {mv:?}"));
        }
        if self.duplicates() == 0 {
            Ok(())
        } else {
            Err(GdlError::Internal(format!(
                "conflict resolution for {}·C3 (case {}, t={}, θ={}) left {} duplicated dls; notes: {:?}",
                self.p.n,
                self.p.case_tag,
                self.p.t,
                self.p.theta,
                self.duplicates(),
                self.notes
            )))
        }
    }

    fn apply(&mut self, mv: Move) -> Result<()> {
        match mv {
            Move::Pair(k) => self.flip_pair(k),
            Move::Triangle(c) => self.flip_triangle(c),
            Move::Block => self.flip_sub_block(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Pair(usize),
    Triangle(usize),
    Block,
}

/// Number of arcs whose dl repeats an earlier arc.
pub(crate) fn duplicate_count(l: &Labeling) -> usize {
    let n = l.len() as i64;
    let mut seen = vec![false; (2 * n + 1) as usize];
    let mut dup = 0;
    for d in l.difference_labels() {
        let slot = &mut seen[(d + n) as usize];
        if *slot {
            dup += 1;
        }
        *slot = true;
    }
    dup
}

/// Circuits carrying a dl that occurs more than once.
pub(crate) fn duplicated_circuits(l: &Labeling) -> BTreeSet<usize> {
    let mut count: HashMap<i64, usize> = HashMap::new();
    let dls = l.difference_labels();
    for &d in &dls {
        *count.entry(d).or_default() += 1;
    }
    let family = l.family();
    dls.iter()
        .enumerate()
        .filter(|(_, d)| count[d] > 1)
        .map(|(a, _)| family.circuit_of_arc(a))
        .collect()
}

/// Removes all conflicts from a base table labeling by flipping pairs,
/// following the proof's rules and falling back to a greedy repair only if
/// those leave a duplicate behind.
pub fn resolve_conflicts(labeling: &Labeling, params: &CaseParameters) -> Result<Resolution> {
    let mut r = Resolver {
        p: params,
        labeling: labeling.clone(),
        layout: Vec::new(),
        flipped: vec![false; labeling.family().circuit_count()],
        notes: Vec::new(),
    };
    r.run()?;
    let mut fallback_used = false;
    if !is_gdl(&r.labeling) {
        fallback_used = true;
        r.notes.push(format!("rules left {} duplicates", r.duplicates()));
        r.relation()?;
        r.fallback()?;
    }
    let flips = r
        .flipped
        .iter()
        .enumerate()
        .filter_map(|(c, &f)| f.then_some(c))
        .collect();
    Ok(Resolution {
        labeling: r.labeling,
        flips,
        fallback_used,
        notes: r.notes,
    })
}

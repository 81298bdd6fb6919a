//! Closed-form labelings for single circuits, the two extension steps, the
//! small fixed bases, and the planner that composes them for a whole family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::{Certificate, Provenance, Status};
use crate::error::{GdlError, Result};
use crate::family::CircuitFamily;
use crate::labeling::Labeling;
use crate::search::{search_gdl, SearchBudget};
use crate::triangles::{self, TriangleTrace};
use crate::verify::{is_gdl, verify_gdl};

/// A gdl of one circuit, with the sign of its unique magnitude-1 arc when
/// there is exactly one such arc (always the case for `k >= 5`).
#[derive(Debug, Clone)]
pub struct SingleCircuitGdl {
    pub labeling: Labeling,
    pub unit_arc_sign: Option<i64>,
}

/// Labels `C_k` for `k = 2` or `k >= 4`, split on `k mod 4`.
pub fn label_single_circuit(k: usize) -> Result<SingleCircuitGdl> {
    if k < 2 {
        return Err(GdlError::InvalidFamily(format!("circuit length {k} is below 2")));
    }
    if k == 3 {
        return Err(GdlError::Unsupported("C3 has no gdl".into()));
    }
    // f[i] is the label of v_i, 1-based
    let mut f = vec![0usize; k + 1];
    let p = k / 4;
    let unit_arc_sign = match k % 4 {
        0 => {
            for i in 0..=2 * p - 2 {
                f[2 * i + 1] = i + 1;
            }
            for i in 1..=(2 * p).saturating_sub(2) {
                f[2 * i] = 4 * p + 1 - i;
            }
            f[4 * p - 2] = 2 * p + 1;
            f[4 * p - 1] = 2 * p + 2;
            f[4 * p] = 2 * p;
            (p >= 2).then_some(1)
        }
        1 => {
            for i in 0..=2 * p {
                f[2 * i + 1] = i + 1;
            }
            for i in 1..=2 * p {
                f[2 * i] = 4 * p + 2 - i;
            }
            Some(-1)
        }
        2 => {
            for i in 0..=2 * p {
                f[2 * i + 1] = i + 1;
            }
            for i in 1..=2 * p + 1 {
                f[2 * i] = 4 * p + 3 - i;
            }
            (p >= 1).then_some(1)
        }
        _ => {
            for i in 0..2 * p {
                f[2 * i + 1] = i + 1;
            }
            for i in 1..=2 * p {
                f[2 * i] = 4 * p + 4 - i;
            }
            f[4 * p + 1] = 2 * p + 2;
            f[4 * p + 2] = 2 * p + 1;
            f[4 * p + 3] = 2 * p + 3;
            Some(-1)
        }
    };
    let labeling = Labeling::from_circuits(&[f[1..].to_vec()])?;
    debug_assert_eq!(unit_arc_sign, scan_unit_arc(&labeling));
    Ok(SingleCircuitGdl {
        labeling,
        unit_arc_sign,
    })
}

fn scan_unit_arc(l: &Labeling) -> Option<i64> {
    let ones: Vec<i64> = l
        .difference_labels()
        .into_iter()
        .filter(|d| d.abs() == 1)
        .collect();
    (ones.len() == 1).then(|| ones[0])
}

fn require_gdl(g: &Labeling) -> Result<()> {
    if is_gdl(g) {
        Ok(())
    } else {
        Err(GdlError::NotGdl)
    }
}

/// Adds two 4-circuits to a gdl. Old labels move up by 4; every new arc has
/// magnitude above `|V|`.
pub fn extend_with_two_c4(g: &Labeling) -> Result<Labeling> {
    require_gdl(g)?;
    let v = g.len();
    let family = g.family().with_appended(&[4, 4])?;
    let mut labels: Vec<usize> = g.labels().iter().map(|&x| x + 4).collect();
    labels.extend_from_slice(&[1, v + 8, 2, v + 6]);
    labels.extend_from_slice(&[3, v + 5, 4, v + 7]);
    Labeling::new(family, labels)
}

/// Adds one circuit of even length `two_k != 4` to a gdl. Old labels move up
/// by `k`; the new circuit interleaves `1..=k` with `|V|+k+1..=|V|+2k`.
pub fn extend_with_even_circuit(g: &Labeling, two_k: usize) -> Result<Labeling> {
    if two_k < 2 || !two_k.is_multiple_of(2) {
        return Err(GdlError::Precondition(format!(
            "added circuit length {two_k} must be even and at least 2"
        )));
    }
    if two_k == 4 {
        return Err(GdlError::Unsupported(
            "a single C4 cannot be added; add two at once or absorb it in the base".into(),
        ));
    }
    require_gdl(g)?;
    let v = g.len();
    let k = two_k / 2;
    let mut f = vec![0usize; two_k + 1];
    for i in 1..=k {
        f[2 * i - 1] = k - i + 1;
    }
    if k % 2 == 1 {
        for i in 1..=k {
            f[2 * i] = v + k + i;
        }
    } else {
        for i in 1..=k - 3 {
            f[2 * i] = v + k + i;
        }
        f[2 * k - 4] = v + 2 * k;
        f[2 * k - 2] = v + 2 * k - 2;
        f[2 * k] = v + 2 * k - 1;
    }
    let family = g.family().with_appended(&[two_k])?;
    let mut labels: Vec<usize> = g.labels().iter().map(|&x| x + k).collect();
    labels.extend_from_slice(&f[1..]);
    Labeling::new(family, labels)
}

/// Small families labeled directly rather than by extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedBase {
    /// `2C2 + C3`.
    TwoC2PlusC3,
    /// `C4 + C_m` for odd `m >= 3`.
    C4PlusOdd(usize),
    /// `C_k + C3` for `k >= 5`.
    CkPlusC3(usize),
    /// `C3 + 2C4`, a searched labeling.
    C3PlusTwoC4,
}

/// `C3 + 2C4` (family `[3, 4, 4]`), found by exhaustive search and
/// checked in tests.
const C3_PLUS_TWO_C4: [&[usize]; 3] = [&[1, 2, 5], &[3, 10, 7, 9], &[4, 8, 6, 11]];

pub fn label_fixed_base(kind: FixedBase) -> Result<Labeling> {
    let labeling = match kind {
        FixedBase::TwoC2PlusC3 => {
            Labeling::from_circuits(&[vec![1, 6], vec![3, 7], vec![2, 4, 5]])?
        }
        FixedBase::C4PlusOdd(m) => {
            if m < 3 || m % 2 == 0 {
                return Err(GdlError::Precondition(format!(
                    "C4 + C_m needs odd m >= 3, got {m}"
                )));
            }
            c4_plus_odd(m)?
        }
        FixedBase::CkPlusC3(k) => {
            if k < 5 {
                return Err(GdlError::Precondition(format!("C_k + C3 needs k >= 5, got {k}")));
            }
            let base = label_single_circuit(k)?;
            let sign = base.unit_arc_sign.ok_or_else(|| {
                GdlError::Internal(format!("C{k} labeling lacks a unique magnitude-1 arc"))
            })?;
            let mut circuits = vec![base.labeling.labels().iter().map(|&x| x + 2).collect()];
            if sign == -1 {
                circuits.push(vec![1, 2, k + 3]);
            } else {
                circuits.push(vec![2, 1, k + 3]);
            }
            Labeling::from_circuits(&circuits)?
        }
        FixedBase::C3PlusTwoC4 => Labeling::from_circuits(
            &C3_PLUS_TWO_C4.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )?,
    };
    if !is_gdl(&labeling) {
        return Err(GdlError::Internal(format!("fixed base {kind:?} failed verification")));
    }
    Ok(labeling)
}

/// Splits a single-circuit labeling into a C4 and an odd circuit.
fn c4_plus_odd(m: usize) -> Result<Labeling> {
    let k = (m - 1) / 2;
    if k % 2 == 1 {
        // the C_{2k+5} labeling from the 4p+3 case
        let n = 2 * k + 5;
        let big = label_single_circuit(n)?.labeling;
        let f = |i: usize| big.labels()[i - 1];
        let c4 = vec![f(1), f(n - 2), f(n - 1), f(n)];
        let odd: Vec<usize> = (2..=n - 3).map(f).collect();
        Labeling::from_circuits(&[c4, odd])
    } else {
        // the C_{2k+4} labeling from the 4p case, plus one vertex labeled 2k+5
        let big = label_single_circuit(2 * k + 4)?.labeling;
        let f = |i: usize| big.labels()[i - 1];
        let c4 = vec![f(1), f(2 * k + 2), f(2 * k + 3), f(2 * k + 4)];
        let mut odd: Vec<usize> = (2..=2 * k + 1).map(f).collect();
        odd.push(2 * k + 5);
        Labeling::from_circuits(&[c4, odd])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    SingleCircuit(usize),
    TwoC2PlusC3,
    C4PlusOdd(usize),
    CkPlusC3(usize),
    C3PlusTwoC4,
    NC3(usize),
    C4PlusNC3(usize),
    Empty,
}

impl Base {
    pub fn lengths(&self) -> Vec<usize> {
        match *self {
            Base::SingleCircuit(k) => vec![k],
            Base::TwoC2PlusC3 => vec![2, 2, 3],
            Base::C4PlusOdd(m) => vec![4, m],
            Base::CkPlusC3(k) => vec![k, 3],
            Base::C3PlusTwoC4 => vec![3, 4, 4],
            Base::NC3(n) => vec![3; n],
            Base::C4PlusNC3(n) => {
                let mut v = vec![4];
                v.extend(std::iter::repeat_n(3, n));
                v
            }
            Base::Empty => vec![],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    AddTwoC4,
    AddEvenCircuit(usize),
}

impl Extension {
    pub fn lengths(&self) -> Vec<usize> {
        match *self {
            Extension::AddTwoC4 => vec![4, 4],
            Extension::AddEvenCircuit(k) => vec![k],
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::SingleCircuit(k) => write!(f, "SingleCircuit({k})"),
            Base::TwoC2PlusC3 => f.write_str("TwoC2PlusC3"),
            Base::C4PlusOdd(m) => write!(f, "C4PlusOdd({m})"),
            Base::CkPlusC3(k) => write!(f, "CkPlusC3({k})"),
            Base::C3PlusTwoC4 => f.write_str("C3PlusTwoC4"),
            Base::NC3(n) => write!(f, "NC3({n})"),
            Base::C4PlusNC3(n) => write!(f, "C4PlusNC3({n})"),
            Base::Empty => f.write_str("Empty"),
        }
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extension::AddTwoC4 => f.write_str("AddTwoC4"),
            Extension::AddEvenCircuit(k) => write!(f, "AddEvenCircuit({k})"),
        }
    }
}

/// Splits `Name(arg)` into its parts.
fn split_call(s: &str) -> Result<(&str, Option<usize>)> {
    let bad = || GdlError::Precondition(format!("malformed plan step {s:?}"));
    match s.find('(') {
        None => Ok((s, None)),
        Some(i) => {
            let arg = s[i + 1..].strip_suffix(')').ok_or_else(bad)?;
            Ok((&s[..i], Some(arg.parse().map_err(|_| bad())?)))
        }
    }
}

impl FromStr for Base {
    type Err = GdlError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GdlError::Precondition(format!("unknown base {s:?}"));
        Ok(match split_call(s)? {
            ("SingleCircuit", Some(k)) => Base::SingleCircuit(k),
            ("TwoC2PlusC3", None) => Base::TwoC2PlusC3,
            ("C4PlusOdd", Some(m)) => Base::C4PlusOdd(m),
            ("CkPlusC3", Some(k)) => Base::CkPlusC3(k),
            ("C3PlusTwoC4", None) => Base::C3PlusTwoC4,
            ("NC3", Some(n)) => Base::NC3(n),
            ("C4PlusNC3", Some(n)) => Base::C4PlusNC3(n),
            ("Empty", None) => Base::Empty,
            _ => return Err(bad()),
        })
    }
}

impl FromStr for Extension {
    type Err = GdlError;

    fn from_str(s: &str) -> Result<Self> {
        match split_call(s)? {
            ("AddTwoC4", None) => Ok(Extension::AddTwoC4),
            ("AddEvenCircuit", Some(k)) => Ok(Extension::AddEvenCircuit(k)),
            _ => Err(GdlError::Precondition(format!("unknown extension {s:?}"))),
        }
    }
}

macro_rules! serde_via_string {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_string!(Base);
serde_via_string!(Extension);

/// A base labeling followed by extension steps, applied in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub base: Base,
    pub extensions: Vec<Extension>,
}

impl ConstructionPlan {
    /// Circuit lengths produced by executing the plan, sorted.
    pub fn produced_lengths(&self) -> Vec<usize> {
        let mut v = self.base.lengths();
        for e in &self.extensions {
            v.extend(e.lengths());
        }
        v.sort_unstable();
        v
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for e in &self.extensions {
            write!(f, " + {e}")?;
        }
        Ok(())
    }
}

/// Everything needed to replay or audit a construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub plan: ConstructionPlan,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<TriangleTrace>,
}

impl ConstructionTrace {
    pub fn fallback_used(&self) -> bool {
        self.triangles.as_ref().is_some_and(TriangleTrace::fallback_used)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanDecision {
    /// `C3` or `C2 + C3`, which have no gdl.
    Exception(String),
    Plan(ConstructionPlan),
    /// Two or more odd circuits, at least one longer than 3.
    Outside,
}

/// True when at most one circuit is odd or every odd circuit is a triangle.
pub fn within_constructive_coverage(family: &CircuitFamily) -> bool {
    let odd: Vec<usize> = family.lengths().iter().copied().filter(|k| k % 2 == 1).collect();
    odd.len() <= 1 || odd.iter().all(|&k| k == 3)
}

pub fn is_exception(family: &CircuitFamily) -> bool {
    let s = family.sorted_lengths();
    s == [3] || s == [2, 3]
}

pub fn plan(family: &CircuitFamily) -> PlanDecision {
    if is_exception(family) {
        return PlanDecision::Exception(format!("{family} has no gdl"));
    }
    if !within_constructive_coverage(family) {
        return PlanDecision::Outside;
    }
    let lengths = family.lengths();
    let odd: Vec<usize> = lengths.iter().copied().filter(|k| k % 2 == 1).collect();
    let triangles = odd.iter().filter(|&&k| k == 3).count();
    let mut fours = family.count_of(4);
    // evens other than 4, consumed by AddEvenCircuit unless a base takes them
    let mut rest: Vec<usize> = lengths
        .iter()
        .copied()
        .filter(|&k| k % 2 == 0 && k != 4)
        .collect();
    rest.sort_unstable_by(|a, b| b.cmp(a));

    let base = if triangles >= 2 {
        if fours % 2 == 1 {
            fours -= 1;
            Base::C4PlusNC3(triangles)
        } else {
            Base::NC3(triangles)
        }
    } else if odd == [3] {
        let twos = rest.iter().filter(|&&k| k == 2).count();
        if fours % 2 == 1 {
            fours -= 1;
            Base::C4PlusOdd(3)
        } else if twos >= 2 {
            for _ in 0..2 {
                let i = rest.iter().position(|&k| k == 2).expect("counted");
                rest.remove(i);
            }
            Base::TwoC2PlusC3
        } else if rest.first().is_some_and(|&k| k >= 6) {
            Base::CkPlusC3(rest.remove(0))
        } else {
            // even number of C4s (at least two) and at most one C2
            fours -= 2;
            Base::C3PlusTwoC4
        }
    } else if let [m] = odd[..] {
        if fours % 2 == 1 {
            fours -= 1;
            Base::C4PlusOdd(m)
        } else {
            Base::SingleCircuit(m)
        }
    } else if fours % 2 == 1 {
        fours -= 1;
        Base::SingleCircuit(4)
    } else {
        Base::Empty
    };

    let mut extensions = vec![Extension::AddTwoC4; fours / 2];
    extensions.extend(rest.into_iter().map(Extension::AddEvenCircuit));
    PlanDecision::Plan(ConstructionPlan { base, extensions })
}

/// Runs a plan. The result is verified and uses the plan's own circuit order
/// (base circuits first, then each extension).
pub fn execute_plan(plan: &ConstructionPlan) -> Result<(Labeling, Option<TriangleTrace>)> {
    let mut tri_trace = None;
    let mut current = match plan.base {
        Base::SingleCircuit(k) => label_single_circuit(k)?.labeling,
        Base::TwoC2PlusC3 => label_fixed_base(FixedBase::TwoC2PlusC3)?,
        Base::C4PlusOdd(m) => label_fixed_base(FixedBase::C4PlusOdd(m))?,
        Base::CkPlusC3(k) => label_fixed_base(FixedBase::CkPlusC3(k))?,
        Base::C3PlusTwoC4 => label_fixed_base(FixedBase::C3PlusTwoC4)?,
        Base::NC3(n) => {
            let c = triangles::label_n_c3(n)?;
            tri_trace = Some(c.trace);
            c.labeling
        }
        Base::C4PlusNC3(n) => {
            let c = triangles::label_c4_plus_n_c3(n)?;
            tri_trace = Some(c.trace);
            c.labeling
        }
        Base::Empty => Labeling::empty(),
    };
    for ext in &plan.extensions {
        current = match *ext {
            Extension::AddTwoC4 => extend_with_two_c4(&current)?,
            Extension::AddEvenCircuit(k) => extend_with_even_circuit(&current, k)?,
        };
    }
    if !verify_gdl(&current).is_gdl {
        return Err(GdlError::Internal(format!(
            "plan {plan:?} produced a labeling that fails verification"
        )));
    }
    Ok((current, tri_trace))
}

/// Builds a gdl by formula when the family is covered, reports the two
/// exceptions, and otherwise falls back to search when a budget is given.
pub fn plan_and_construct(
    family: &CircuitFamily,
    search_budget: Option<&SearchBudget>,
) -> Result<Certificate> {
    match plan(family) {
        PlanDecision::Exception(reason) => Ok(Certificate {
            status: Status::Unsupported {
                reason,
                exception: true,
            },
            provenance: Provenance::None,
        }),
        PlanDecision::Plan(p) => {
            debug_assert_eq!(p.produced_lengths(), family.sorted_lengths());
            let (labeling, triangles) = execute_plan(&p)?;
            let labeling = labeling.reorder_to(family)?;
            if !is_gdl(&labeling) {
                return Err(GdlError::Internal("reordered labeling failed verification".into()));
            }
            Ok(Certificate {
                status: Status::Gdl { labeling },
                provenance: Provenance::Construction(ConstructionTrace { plan: p, triangles }),
            })
        }
        PlanDecision::Outside => match search_budget {
            Some(budget) => {
                budget.check_for(family)?;
                Ok(search_gdl(family, budget, None))
            }
            None => Ok(Certificate {
                status: Status::Unsupported {
                    reason: format!(
                        "{family} has two or more odd circuits, not all triangles; no construction is known"
                    ),
                    exception: false,
                },
                provenance: Provenance::None,
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(v: &[usize]) -> CircuitFamily {
        CircuitFamily::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_circuit_examples() {
        let c4 = label_single_circuit(4).unwrap();
        assert_eq!(c4.labeling.labels(), &[1, 3, 4, 2]);
        assert_eq!(c4.labeling.difference_labels(), vec![2, 1, -2, -1]);
        assert_eq!(c4.unit_arc_sign, None);

        let c5 = label_single_circuit(5).unwrap();
        assert_eq!(c5.labeling.labels(), &[1, 5, 2, 4, 3]);
        assert_eq!(c5.labeling.difference_labels(), vec![4, -3, 2, -1, -2]);
        assert_eq!(c5.unit_arc_sign, Some(-1));

        let c6 = label_single_circuit(6).unwrap();
        assert_eq!(c6.labeling.labels(), &[1, 6, 2, 5, 3, 4]);
        assert_eq!(c6.labeling.difference_labels(), vec![5, -4, 3, -2, 1, -3]);
        assert_eq!(c6.unit_arc_sign, Some(1));

        assert_eq!(label_single_circuit(2).unwrap().labeling.labels(), &[1, 2]);
    }

    #[test]
    fn single_circuit_errors() {
        assert!(matches!(label_single_circuit(3), Err(GdlError::Unsupported(_))));
        assert!(matches!(label_single_circuit(1), Err(GdlError::InvalidFamily(_))));
    }

    #[test]
    fn single_circuits_verify_up_to_200() {
        for k in (2..=200).filter(|&k| k != 3) {
            let g = label_single_circuit(k).unwrap();
            let r = verify_gdl(&g.labeling);
            assert!(r.is_gdl, "C{k}");
            if k >= 5 {
                assert_eq!(r.count_at(1), 1, "C{k}");
                assert_eq!(g.unit_arc_sign, scan_unit_arc(&g.labeling));
            }
        }
    }

    #[test]
    fn two_c4_from_empty() {
        let l = extend_with_two_c4(&Labeling::empty()).unwrap();
        assert_eq!(l.family().lengths(), &[4, 4]);
        assert_eq!(l.circuit_labels(0), &[1, 8, 2, 6]);
        assert_eq!(l.circuit_labels(1), &[3, 5, 4, 7]);
        assert_eq!(l.circuit_difference_labels(0), vec![7, -6, 4, -5]);
        assert_eq!(l.circuit_difference_labels(1), vec![2, -1, 3, -4]);
        let l4 = extend_with_two_c4(&l).unwrap();
        assert!(is_gdl(&l4));
        assert_eq!(l4.family().lengths(), &[4, 4, 4, 4]);
    }

    #[test]
    fn two_c4_on_c2() {
        let c2 = Labeling::from_circuits(&[vec![1, 2]]).unwrap();
        let l = extend_with_two_c4(&c2).unwrap();
        assert_eq!(l.circuit_labels(0), &[5, 6]);
        assert_eq!(l.circuit_labels(1), &[1, 10, 2, 8]);
        assert_eq!(l.circuit_labels(2), &[3, 7, 4, 9]);
        assert!(is_gdl(&l));
    }

    #[test]
    fn even_circuit_examples() {
        let c2 = Labeling::from_circuits(&[vec![1, 2]]).unwrap();
        let l = extend_with_even_circuit(&c2, 6).unwrap();
        assert_eq!(l.circuit_labels(0), &[4, 5]);
        assert_eq!(l.circuit_labels(1), &[3, 6, 2, 7, 1, 8]);
        assert_eq!(l.circuit_difference_labels(1), vec![3, -4, 5, -6, 7, -5]);
        assert!(is_gdl(&l));

        let l = extend_with_even_circuit(&Labeling::empty(), 2).unwrap();
        assert_eq!(l.labels(), &[1, 2]);

        let l = extend_with_even_circuit(&Labeling::empty(), 8).unwrap();
        assert_eq!(l.labels(), &[4, 5, 3, 8, 2, 6, 1, 7]);
        assert!(is_gdl(&l));
    }

    #[test]
    fn extension_errors() {
        let c2 = Labeling::from_circuits(&[vec![1, 2]]).unwrap();
        assert!(matches!(extend_with_even_circuit(&c2, 4), Err(GdlError::Unsupported(_))));
        assert!(extend_with_even_circuit(&c2, 5).is_err());
        let bad = Labeling::from_circuits(&[vec![1, 2, 3]]).unwrap();
        assert!(matches!(extend_with_two_c4(&bad), Err(GdlError::NotGdl)));
        assert!(matches!(extend_with_even_circuit(&bad, 6), Err(GdlError::NotGdl)));
    }

    #[test]
    fn fixed_base_examples() {
        let l = label_fixed_base(FixedBase::TwoC2PlusC3).unwrap();
        assert_eq!(l.labels(), &[1, 6, 3, 7, 2, 4, 5]);

        let l = label_fixed_base(FixedBase::C4PlusOdd(3)).unwrap();
        assert_eq!(l.circuit_labels(0), &[1, 4, 3, 5]);
        assert_eq!(l.circuit_labels(1), &[7, 2, 6]);

        let l = label_fixed_base(FixedBase::CkPlusC3(5)).unwrap();
        assert_eq!(l.circuit_labels(0), &[3, 7, 4, 6, 5]);
        assert_eq!(l.circuit_labels(1), &[1, 2, 8]);

        assert!(label_fixed_base(FixedBase::C3PlusTwoC4).is_ok());
        assert!(label_fixed_base(FixedBase::C4PlusOdd(4)).is_err());
        assert!(label_fixed_base(FixedBase::CkPlusC3(4)).is_err());
    }

    #[test]
    fn fixed_bases_verify_over_a_range() {
        for m in (3..=201).step_by(2) {
            assert!(label_fixed_base(FixedBase::C4PlusOdd(m)).is_ok(), "C4+C{m}");
        }
        for k in 5..=200 {
            assert!(label_fixed_base(FixedBase::CkPlusC3(k)).is_ok(), "C{k}+C3");
        }
    }

    #[test]
    fn planner_examples() {
        assert!(matches!(plan(&fam(&[3])), PlanDecision::Exception(_)));
        assert!(matches!(plan(&fam(&[3, 2])), PlanDecision::Exception(_)));
        assert_eq!(
            plan(&fam(&[4, 4, 4])),
            PlanDecision::Plan(ConstructionPlan {
                base: Base::SingleCircuit(4),
                extensions: vec![Extension::AddTwoC4],
            })
        );
        assert_eq!(
            plan(&fam(&[2, 2, 3])),
            PlanDecision::Plan(ConstructionPlan {
                base: Base::TwoC2PlusC3,
                extensions: vec![],
            })
        );
        assert_eq!(
            plan(&fam(&[2, 2, 2, 3])),
            PlanDecision::Plan(ConstructionPlan {
                base: Base::TwoC2PlusC3,
                extensions: vec![Extension::AddEvenCircuit(2)],
            })
        );
        assert_eq!(
            plan(&fam(&[3, 4, 4, 2])),
            PlanDecision::Plan(ConstructionPlan {
                base: Base::C3PlusTwoC4,
                extensions: vec![Extension::AddEvenCircuit(2)],
            })
        );
        assert_eq!(plan(&fam(&[3, 5])), PlanDecision::Outside);
        assert_eq!(
            plan(&fam(&[6, 2, 8, 4, 4])),
            PlanDecision::Plan(ConstructionPlan {
                base: Base::Empty,
                extensions: vec![
                    Extension::AddTwoC4,
                    Extension::AddEvenCircuit(8),
                    Extension::AddEvenCircuit(6),
                    Extension::AddEvenCircuit(2),
                ],
            })
        );
    }

    #[test]
    fn plan_json_shape() {
        let p = ConstructionPlan {
            base: Base::NC3(5),
            extensions: vec![Extension::AddTwoC4, Extension::AddEvenCircuit(6)],
        };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"base":"NC3(5)","extensions":["AddTwoC4","AddEvenCircuit(6)"]}"#);
        assert_eq!(serde_json::from_str::<ConstructionPlan>(&s).unwrap(), p);
    }

    #[test]
    fn construct_small_families() {
        for v in [vec![4, 4, 4], vec![2, 2, 3], vec![2, 2, 2, 3], vec![3, 3], vec![5, 2, 4], vec![3, 4, 4]] {
            let f = fam(&v);
            let cert = plan_and_construct(&f, None).unwrap();
            let l = cert.labeling().unwrap_or_else(|| panic!("{f}: {cert:?}"));
            assert_eq!(l.family(), &f);
            assert!(is_gdl(l));
        }
        let cert = plan_and_construct(&fam(&[3]), None).unwrap();
        assert!(matches!(cert.status, Status::Unsupported { exception: true, .. }));
        let cert = plan_and_construct(&fam(&[3, 5]), None).unwrap();
        assert!(matches!(cert.status, Status::Unsupported { exception: false, .. }));
        let cert = plan_and_construct(&fam(&[3, 5]), Some(&SearchBudget::unlimited())).unwrap();
        assert!(cert.labeling().is_some());
    }
}

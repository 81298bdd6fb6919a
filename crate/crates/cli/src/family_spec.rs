//! Textual family descriptors: `3,3,4` or `2*C3+C4`.

use std::fmt;
use std::str::FromStr;

use gdl_core::CircuitFamily;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub text: String,
    pub family: CircuitFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn number(s: &str, what: &str) -> Result<usize, SpecError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SpecError(format!("expected a {what}, found {s:?}")));
    }
    s.parse()
        .map_err(|_| SpecError(format!("{what} {s:?} is out of range")))
}

fn length(s: &str) -> Result<usize, SpecError> {
    let k = number(s, "circuit length")?;
    if k < 2 {
        return Err(SpecError(format!("circuit length {k} is below 2")));
    }
    Ok(k)
}

/// One `k*Cj` or `Cj` term.
fn term(t: &str) -> Result<(usize, usize), SpecError> {
    let (count, circuit) = match t.split_once('*') {
        Some((c, rest)) => (number(c, "multiplicity")?, rest),
        None => (1, t),
    };
    let j = circuit
        .strip_prefix('C')
        .or_else(|| circuit.strip_prefix('c'))
        .ok_or_else(|| SpecError(format!("expected a term like C3 or 2*C3, found {t:?}")))?;
    if count == 0 {
        return Err(SpecError(format!("multiplicity 0 in {t:?}")));
    }
    Ok((count, length(j)?))
}

impl FromStr for FamilySpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(SpecError("empty family".into()));
        }
        let mut lengths = Vec::new();
        if text.contains(['C', 'c']) {
            for t in text.split('+') {
                let (count, k) = term(t)?;
                lengths.extend(std::iter::repeat_n(k, count));
            }
        } else {
            for t in text.split(',') {
                lengths.push(length(t)?);
            }
        }
        let family = CircuitFamily::new(lengths).map_err(|e| SpecError(e.to_string()))?;
        Ok(FamilySpec { text, family })
    }
}

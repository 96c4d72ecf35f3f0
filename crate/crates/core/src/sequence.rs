//! h-vectors, socle vectors and the numerical tests applied to them.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::monomial::binomial;
use crate::{Error, Result};

/// `(h_0, ..., h_e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HVector(Vec<usize>);

/// `(s_0, ..., s_e)`; `s_d` counts minimal generators of the inverse
/// system in degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SocleVector(Vec<usize>);

impl HVector {
    pub fn new(entries: Vec<usize>) -> Self {
        HVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Index of the last entry.
    pub fn socle_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_o_sequence(&self) -> bool {
        is_o_sequence(&self.0)
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Entrywise `self <= other` with equal lengths.
    pub fn bounded_by(&self, other: &HVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Deref for HVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl SocleVector {
    pub fn new(entries: Vec<usize>) -> Self {
        SocleVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Total number of minimal generators.
    pub fn socle_type(&self) -> usize {
        self.0.iter().sum()
    }

    /// Socle concentrated in the last degree.
    pub fn is_level(&self) -> bool {
        match self.0.split_last() {
            Some((_, rest)) => rest.iter().all(|&s| s == 0),
            None => false,
        }
    }
}

impl Deref for SocleVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for SocleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// The `d`-th Macaulay representation
/// `value = C(a_d, d) + C(a_{d-1}, d-1) + ... + C(a_j, j)` with
/// `a_d > a_{d-1} > ... > a_j >= j >= 1`, as `(a_i, i)` pairs.
pub fn macaulay_expansion(value: u64, d: u32) -> Result<Vec<(u64, u32)>> {
    if d < 1 {
        return Err(Error::Range { what: "d", value: 0, expected: ">= 1".into() });
    }
    let mut rest = u128::from(value);
    let mut out = Vec::new();
    let mut i = d;
    while rest > 0 && i >= 1 {
        // largest a with C(a, i) <= rest
        let mut a = u64::from(i);
        while binomial(a + 1, u64::from(i)) <= rest {
            a += 1;
        }
        rest -= binomial(a, u64::from(i));
        out.push((a, i));
        i -= 1;
    }
    Ok(out)
}

/// Largest `h_{d+1}` that Macaulay's theorem allows after `h_d = value`.
pub fn macaulay_bound(value: u64, d: u32) -> Result<u64> {
    let total: u128 = macaulay_expansion(value, d)?.into_iter().map(|(a, i)| binomial(a + 1, u64::from(i) + 1)).sum();
    Ok(u64::try_from(total).unwrap_or(u64::MAX))
}

/// The first place an h-vector breaks Macaulay's theorem: `h[degree]`
/// exceeds `bound`. Degree 0 means `h_0 != 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MacaulayViolation {
    pub degree: usize,
    pub value: usize,
    pub bound: u64,
}

pub fn o_sequence_violation(h: &[usize]) -> Option<MacaulayViolation> {
    match h.first() {
        Some(&1) => {}
        Some(&v) => return Some(MacaulayViolation { degree: 0, value: v, bound: 1 }),
        None => return Some(MacaulayViolation { degree: 0, value: 0, bound: 1 }),
    }
    h.windows(2).enumerate().skip(1).find_map(|(d, w)| {
        let bound = macaulay_bound(w[0] as u64, d as u32).expect("d >= 1");
        (w[1] as u64 > bound).then_some(MacaulayViolation { degree: d + 1, value: w[1], bound })
    })
}

/// `h_0 = 1` and `h_{d+1} <= h_d^{<d>}` for every `d >= 1`.
pub fn is_o_sequence(h: &[usize]) -> bool {
    o_sequence_violation(h).is_none()
}

/// No strict rise after a strict fall.
pub fn is_unimodal(h: &[usize]) -> bool {
    let mut fallen = false;
    for w in h.windows(2) {
        if w[1] < w[0] {
            fallen = true;
        } else if w[1] > w[0] && fallen {
            return false;
        }
    }
    true
}

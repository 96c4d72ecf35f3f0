//! Degree bookkeeping for the type-two level sets of points in `P^3`:
//! the parameters `c_i, q_i`, the graded Betti degrees of the ideal, and
//! the identity `h(z)(1-z)^3 = 1 + Σ (-1)^i β_{i,j} z^j`.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::target_h_vector;
use crate::sequence::HVector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointsParameters {
    pub e: u32,
    pub c: [u32; 3],
    pub q: [u32; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiDegreeTable {
    pub gen_degrees: Vec<u32>,
    pub first_syzygy_degrees: Vec<u32>,
    pub second_syzygy_degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointsIdentity {
    pub e: u32,
    /// `(1 + Σ (-1)^i β_{i,j} z^j) / (1-z)^3`.
    pub h: HVector,
    pub matches_target: bool,
}

fn check_e(e: u32) -> Result<()> {
    if e < 2 {
        return Err(Error::Range { what: "e", value: i64::from(e), expected: ">= 2".into() });
    }
    Ok(())
}

impl PointsParameters {
    /// `c_0 <= c_1 <= c_2 <= c_0 + 1`, `Σ c_i = e`, `q_i + q_{i+1} = c_i + 1`,
    /// and `|q_i - q_j| <= 1`.
    pub fn check(&self) -> Result<()> {
        let [c0, c1, c2] = self.c;
        let q = self.q;
        let fail = |what: &str| Err(Error::Domain(format!("e = {}: {what} fails for {self:?}", self.e)));
        if !(c0 <= c1 && c1 <= c2 && c2 <= c0 + 1) {
            return fail("c0 <= c1 <= c2 <= c0+1");
        }
        if c0 + c1 + c2 != self.e {
            return fail("c0+c1+c2 = e");
        }
        for i in 0..3 {
            if q[i] + q[i + 1] != self.c[i] + 1 {
                return fail("q_i + q_{i+1} = c_i + 1");
            }
        }
        let (lo, hi) = (q.iter().min().unwrap(), q.iter().max().unwrap());
        if hi - lo > 1 {
            return fail("|q_i - q_j| <= 1");
        }
        Ok(())
    }
}

/// `c_i = ⌊(e+i)/3⌋` and `q_i = ⌊(e+i-1)/2⌋ - ⌊(e+i-2)/3⌋`, checked against
/// the defining constraints.
pub fn points_parameters(e: u32) -> Result<PointsParameters> {
    check_e(e)?;
    let c = [0, 1, 2].map(|i| (e + i) / 3);
    let q = [0, 1, 2, 3].map(|i| (e + i - 1) / 2 - (e + i - 2) / 3);
    let params = PointsParameters { e, c, q };
    params.check()?;
    Ok(params)
}

impl BettiDegreeTable {
    /// Degrees written with the floor formulas.
    fn from_floors(e: u32) -> Self {
        let mut gens = vec![2, (e + 3) / 2, (e + 4) / 2, (2 * e + 3) / 3, (2 * e + 4) / 3, (2 * e + 5) / 3];
        let mut first = vec![(2 * e + 6) / 3, (2 * e + 7) / 3, (2 * e + 8) / 3, (e + 5) / 2, (e + 6) / 2, e + 1, e + 2];
        gens.sort_unstable();
        first.sort_unstable();
        BettiDegreeTable { gen_degrees: gens, first_syzygy_degrees: first, second_syzygy_degrees: vec![e + 3; 2] }
    }

    /// Degrees written in terms of `c_i, q_i`, before simplification.
    fn from_parameters(p: &PointsParameters) -> Self {
        let [c0, c1, _] = p.c;
        let [q0, q1, q2, q3] = p.q;
        let mut gens = vec![2, 1 + c0 + q2, 1 + c1 + q3, c0 + q1 + q2, c0 + q2 + q3, c1 + q2 + q3];
        let mut first = vec![
            1 + c0 + q1 + q2,
            1 + c0 + q2 + q3,
            1 + c1 + q2 + q3,
            2 + c0 + q2,
            2 + c1 + q3,
            c0 + c1 + q2 + q3,
            q0 + q1 + c1 + q2 + q3,
        ];
        gens.sort_unstable();
        first.sort_unstable();
        BettiDegreeTable { gen_degrees: gens, first_syzygy_degrees: first, second_syzygy_degrees: vec![p.e + 3; 2] }
    }

    /// Coefficients of `1 - Σ z^{gen} + Σ z^{syz1} - Σ z^{syz2}`, indexed by
    /// degree.
    pub fn alternating_sum(&self) -> Vec<i64> {
        let top = self
            .gen_degrees
            .iter()
            .chain(&self.first_syzygy_degrees)
            .chain(&self.second_syzygy_degrees)
            .copied()
            .max()
            .unwrap_or(0);
        let mut out = vec![0i64; top as usize + 1];
        out[0] = 1;
        for &d in &self.gen_degrees {
            out[d as usize] -= 1;
        }
        for &d in &self.first_syzygy_degrees {
            out[d as usize] += 1;
        }
        for &d in &self.second_syzygy_degrees {
            out[d as usize] -= 1;
        }
        out
    }
}

/// Generator, first- and second-syzygy degrees (sorted ascending), after
/// checking the floor expressions against the `c_i, q_i` expressions.
pub fn betti_degree_table(e: u32) -> Result<BettiDegreeTable> {
    let params = points_parameters(e)?;
    let table = BettiDegreeTable::from_floors(e);
    let raw = BettiDegreeTable::from_parameters(&params);
    if table != raw {
        return Err(Error::IdentityViolation {
            e,
            detail: format!("floor degrees {table:?} disagree with parameter degrees {raw:?}"),
        });
    }
    Ok(table)
}

/// Divides the alternating Betti sum by `(1-z)^3` and checks the quotient
/// is a polynomial of degree exactly `e` with nonnegative coefficients.
pub fn verify_points_identity(e: u32) -> Result<PointsIdentity> {
    let table = betti_degree_table(e)?;
    let numerator = table.alternating_sum();
    let violation = |detail: String| Error::IdentityViolation { e, detail };

    // dividing by (1-z) is a prefix sum
    let mut series = numerator.clone();
    for _ in 0..3 {
        for k in 1..series.len() {
            series[k] += series[k - 1];
        }
    }
    let e_us = e as usize;
    if let Some(k) = (e_us + 1..series.len()).find(|&k| series[k] != 0) {
        return Err(violation(format!("quotient has a nonzero coefficient in degree {k}")));
    }
    let quotient = &series[..=e_us];
    if quotient[e_us] == 0 {
        return Err(violation("quotient has degree below e".into()));
    }
    if let Some(k) = quotient.iter().position(|&c| c < 0) {
        return Err(violation(format!("negative coefficient in degree {k}")));
    }
    // multiply back by (1 - 3z + 3z^2 - z^3)
    let mut product = vec![0i64; e_us + 4];
    for (k, &c) in quotient.iter().enumerate() {
        for (j, w) in [1, -3, 3, -1].into_iter().enumerate() {
            product[k + j] += w * c;
        }
    }
    let mut padded = numerator;
    padded.resize(product.len(), 0);
    if product != padded {
        return Err(violation("quotient times (1-z)^3 does not reproduce the Betti sum".into()));
    }

    let h = HVector::new(quotient.iter().map(|&c| c as usize).collect());
    let matches_target = h == target_h_vector(e)?;
    Ok(PointsIdentity { e, h, matches_target })
}

/// [`verify_points_identity`] for every `e` in the range, in ascending order.
pub fn verify_points_identity_range(range: std::ops::RangeInclusive<u32>) -> Vec<(u32, Result<PointsIdentity>)> {
    range.into_par_iter().map(|e| (e, verify_points_identity(e))).collect()
}

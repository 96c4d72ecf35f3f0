//! Weak Lefschetz testing through ranks of contraction maps.
//!
//! Multiplication by `l` from `A_i` to `A_{i+1}` is dual to contraction by
//! `l` from `M_{i+1}` to `M_i`, so its rank is `dim (l ∘ M)_i`, the degree-`i`
//! piece of the inverse system of `(I : l)`. No quotient basis of `A` is
//! ever built.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::target_h_vector;
use crate::field::Scalar;
use crate::matrix::Echelon;
use crate::polynomial::Polynomial;
use crate::seed::{derive_seed, random_linear_form, rng_for};
use crate::sequence::HVector;
use crate::system::{monomial_index, ContractionTable, InverseSystem};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// One drawn form reached maximal rank in every degree.
    HoldsWitnessed,
    /// The h-vector and type meet the hypotheses of the type-two theorem,
    /// which rules out the WLP for every linear form.
    FailsCertified,
    /// Some degree never reached maximal rank in any trial.
    FailsProbabilistic,
    /// Every degree reached maximal rank in some trial, never all at once.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    /// `min(h_i, h_{i+1})`.
    pub target: usize,
    pub best_rank: usize,
    pub trials_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub form: Vec<Scalar>,
    /// Rank of `·l: A_i -> A_{i+1}` for `i = 0..e`.
    pub ranks: Vec<usize>,
    pub failing_degrees: Vec<usize>,
}

/// Why an algebra with the type-two h-vector cannot have the WLP: in every
/// degree where `h = e + 2`, the image of `·l` has dimension at most
/// `e + 1`, so `·l` is not injective there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpFailureCertificate {
    pub socle_degree: u32,
    /// Every `d` with `h_d = e + 2`.
    pub peak_degrees: Vec<usize>,
    /// Degrees `i` where `h_i = e + 2 <= h_{i+1}`, so maximal rank would
    /// need injectivity.
    pub forced_failing_degrees: Vec<usize>,
    pub clause: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Witness { form: Vec<Scalar> },
    Certificate(WlpFailureCertificate),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpReport {
    pub h: HVector,
    pub per_degree: Vec<DegreeRecord>,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
}

impl WlpReport {
    /// Degrees where no trial reached `min(h_i, h_{i+1})`.
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.per_degree.iter().filter(|r| r.best_rank < r.target).map(|r| r.degree).collect()
    }
}

fn check_linear_form(system: &InverseSystem, l: &Polynomial) -> Result<Vec<Scalar>> {
    if l.ring() != system.ring() {
        return Err(Error::Argument("linear form lives in another ring".into()));
    }
    l.linear_coefficients()
        .ok_or_else(|| Error::Argument(format!("{} is not a nonzero linear form", l.display_with('x'))))
}

/// Rank of `·l: A_i -> A_{i+1}`, as the dimension of the degree-`i`
/// component of the system generated by `{ l ∘ G }`.
pub fn multiplication_rank(system: &InverseSystem, l: &Polynomial, i: u32) -> Result<usize> {
    check_linear_form(system, l)?;
    let e = system.socle_degree();
    if e == 0 || i > e - 1 {
        return Err(Error::Range { what: "degree", value: i64::from(i), expected: format!("0..{e}") });
    }
    Ok(system.contracted_by(l)?.map_or(0, |colon| colon.component_dim(i)))
}

/// Ranks of `·l` in every degree `0..e`, from `l ∘ M_{i+1}` directly.
pub fn rank_profile(system: &InverseSystem, l: &Polynomial) -> Result<Vec<usize>> {
    let coeffs = check_linear_form(system, l)?;
    let field = system.field();
    let r = system.ring().num_vars();
    let e = system.socle_degree();
    Ok((0..e)
        .map(|i| {
            let (upper, rows) = system.component_rows(i + 1);
            let lower = system.ring().monomials_of_degree(i);
            let table = ContractionTable::new(r, upper, &monomial_index(&lower));
            let images: Vec<Vec<Scalar>> =
                rows.iter().map(|row| table.apply(field, &coeffs, row, lower.len())).collect();
            Echelon::of_rows(field, images, lower.len()).rank()
        })
        .collect())
}

/// Looks for the type-two failure certificate: level of type 2, h-vector
/// equal to `h^(e)`, and `e` odd `>= 9` or even `>= 12`.
pub fn certify_wlp_failure(system: &InverseSystem) -> Option<WlpFailureCertificate> {
    let e = system.socle_degree();
    let qualifies = if e % 2 == 1 { e >= 9 } else { e >= 12 };
    if !qualifies || system.is_level() != (true, 2) {
        return None;
    }
    let h = system.h_vector();
    if h != target_h_vector(e).ok()? {
        return None;
    }
    let peak = e as usize + 2;
    let peak_degrees: Vec<usize> = (0..h.len()).filter(|&d| h[d] == peak).collect();
    let forced_failing_degrees: Vec<usize> = (0..h.len() - 1).filter(|&d| h[d] == peak && h[d + 1] >= peak).collect();
    if peak_degrees.len() < 2 || forced_failing_degrees.is_empty() {
        return None;
    }
    let parity = if e % 2 == 1 { "odd e >= 9" } else { "even e >= 12" };
    Some(WlpFailureCertificate {
        socle_degree: e,
        peak_degrees,
        forced_failing_degrees,
        clause: format!(
            "type-two level algebra with h = h^({e}), {parity}: h attains e+2 = {peak} at least twice, \
             while (I:l) has inverse system (l∘F, l∘G) with all h-entries <= e+1"
        ),
    })
}

fn run_trial(system: &InverseSystem, h: &HVector, seed: u64, index: usize) -> Result<TrialRecord> {
    let trial_seed = derive_seed(seed, index as u64);
    let mut rng = rng_for(seed, index as u64);
    let l = random_linear_form(system.ring(), &mut rng, trial_seed)?;
    let ranks = rank_profile(system, &l)?;
    let failing_degrees =
        ranks.iter().enumerate().filter(|&(i, &rank)| rank < h[i].min(h[i + 1])).map(|(i, _)| i).collect();
    Ok(TrialRecord { index, seed: trial_seed, form: l.linear_coefficients().expect("linear"), ranks, failing_degrees })
}

/// Draws `trials` random linear forms and records the best rank of `·l`
/// in each degree.
pub fn wlp_probe(system: &InverseSystem, trials: usize, seed: u64) -> Result<WlpReport> {
    if trials == 0 {
        return Err(Error::Argument("at least one trial is required".into()));
    }
    let h = system.h_vector();
    let records = (0..trials).into_par_iter().map(|k| run_trial(system, &h, seed, k)).collect::<Result<Vec<_>>>()?;

    let per_degree: Vec<DegreeRecord> = (0..h.len() - 1)
        .map(|i| DegreeRecord {
            degree: i,
            target: h[i].min(h[i + 1]),
            best_rank: records.iter().map(|t| t.ranks[i]).max().unwrap_or(0),
            trials_used: records.len(),
        })
        .collect();

    let (verdict, evidence) = if let Some(t) = records.iter().find(|t| t.failing_degrees.is_empty()) {
        (Verdict::HoldsWitnessed, Evidence::Witness { form: t.form.clone() })
    } else if let Some(cert) = certify_wlp_failure(system) {
        (Verdict::FailsCertified, Evidence::Certificate(cert))
    } else if per_degree.iter().any(|r| r.best_rank < r.target) {
        (Verdict::FailsProbabilistic, Evidence::None)
    } else {
        (Verdict::Inconclusive, Evidence::None)
    };

    Ok(WlpReport { h, per_degree, verdict, evidence, seed, trials: records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::specimen_module;
    use crate::field::{FieldSpec, DEFAULT_PRIME};
    use crate::monomial::Monomial;
    use crate::polynomial::RingContext;

    fn ctx() -> RingContext {
        RingContext::new(3, FieldSpec::Prime(DEFAULT_PRIME)).unwrap()
    }

    #[test]
    fn power_chain_rank() {
        let m = InverseSystem::from_monomials(ctx(), &[Monomial::new(vec![0, 0, 3])]).unwrap();
        let x3 = Polynomial::var(ctx(), 2).unwrap();
        assert_eq!(multiplication_rank(&m, &x3, 1).unwrap(), 1);
        let x1 = Polynomial::var(ctx(), 0).unwrap();
        assert_eq!(multiplication_rank(&m, &x1, 1).unwrap(), 0);
        assert!(multiplication_rank(&m, &x3, 3).is_err());
        let q = &x3 * &x3;
        assert!(matches!(multiplication_rank(&m, &q, 0), Err(Error::Argument(_))));
        assert!(multiplication_rank(&m, &Polynomial::zero(ctx()), 0).is_err());
    }

    #[test]
    fn power_chain_holds() {
        let m = InverseSystem::from_monomials(ctx(), &[Monomial::new(vec![0, 0, 6])]).unwrap();
        let report = wlp_probe(&m, 3, 1).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsWitnessed);
        assert!(report.failing_degrees().is_empty());
    }

    #[test]
    fn zero_trials_rejected() {
        let m = InverseSystem::from_monomials(ctx(), &[Monomial::new(vec![0, 0, 2])]).unwrap();
        assert!(wlp_probe(&m, 0, 1).is_err());
    }

    #[test]
    fn specimen_nine_certified() {
        let m = specimen_module(9, ctx()).unwrap();
        let report = wlp_probe(&m, 8, 42).unwrap();
        assert_eq!(report.verdict, Verdict::FailsCertified);
        assert!(report.failing_degrees().contains(&5));
        let Evidence::Certificate(cert) = &report.evidence else { panic!("no certificate") };
        assert_eq!(cert.peak_degrees, vec![5, 6]);
        assert_eq!(cert.forced_failing_degrees, vec![5]);
    }

    #[test]
    fn specimen_ten_not_certified() {
        let m = specimen_module(10, ctx()).unwrap();
        assert!(certify_wlp_failure(&m).is_none());
        let m = specimen_module(15, ctx()).unwrap();
        assert!(certify_wlp_failure(&m).is_some());
    }

    #[test]
    fn seeded_rank_at_degree_five() {
        // seed 1, first trial: the generic value forced by the e+1 bound
        let m = specimen_module(9, ctx()).unwrap();
        let mut rng = rng_for(1, 0);
        let l = random_linear_form(ctx(), &mut rng, 1).unwrap();
        assert_eq!(multiplication_rank(&m, &l, 5).unwrap(), 10);
    }

    #[test]
    fn routes_agree() {
        let m = specimen_module(9, ctx()).unwrap();
        for k in 0..3 {
            let mut rng = rng_for(5, k);
            let l = random_linear_form(ctx(), &mut rng, 5).unwrap();
            let profile = rank_profile(&m, &l).unwrap();
            for i in 0..9u32 {
                assert_eq!(profile[i as usize], multiplication_rank(&m, &l, i).unwrap());
            }
        }
    }
}

//! The family `F_e` of systems `<F, G>` in three variables with
//! `l1 ∘ F = (l1 l2) ∘ G = 0` for some linear forms `l1, l2`.

use rand::Rng;
use serde::Serialize;

use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::polynomial::{contract, Polynomial, RingContext};
use crate::seed::{derive_seed, random_linear_form, rng_for};
use crate::system::{monomial_index, InverseSystem};
use crate::{Error, Result};

/// Degenerate draws are retried this many times before giving up.
pub const FAMILY_ATTEMPT_CAP: usize = 32;

/// Random kernel combinations tried per candidate `l1` when the kernel of
/// `l1 ↦ l1 ∘ F` has dimension at least two.
const EXTRA_COMBINATIONS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMembershipWitness {
    #[serde(serialize_with = "linear_coeffs")]
    pub l1: Polynomial,
    #[serde(serialize_with = "linear_coeffs")]
    pub l2: Polynomial,
    #[serde(serialize_with = "as_x_string")]
    pub q: Polynomial,
}

fn linear_coeffs<S: serde::Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let coeffs = p.linear_coefficients().unwrap_or_default();
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in &coeffs {
        seq.serialize_element(c)?;
    }
    seq.end()
}

fn as_x_string<S: serde::Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.display_with('x'))
}

impl FamilyMembershipWitness {
    /// `l1 ∘ F = 0` and `q ∘ G = 0` exactly, with `q = l1 l2`.
    pub fn holds_for(&self, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        Ok(!self.l1.is_zero()
            && !self.l2.is_zero()
            && self.q == &self.l1 * &self.l2
            && contract(&self.l1, f)?.is_zero()
            && contract(&self.q, g)?.is_zero())
    }
}

/// The matrix of `P ↦ op ∘ P` from `S_e` to `S_{e - deg op}`; columns
/// follow the lex-descending degree-`e` monomials.
fn operator_matrix(op: &Polynomial, e: u32) -> Result<(Matrix, Vec<Monomial>)> {
    let ctx = op.ring();
    let field = ctx.field();
    let d = op.degree().unwrap_or(0);
    let source = ctx.monomials_of_degree(e);
    let target = ctx.monomials_of_degree(e.saturating_sub(d));
    let index = monomial_index(&target);
    let mut mat = Matrix::zeros(field, target.len(), source.len());
    for (j, m) in source.iter().enumerate() {
        let image = contract(op, &Polynomial::monomial(ctx, m.clone(), field.one())?)?;
        for (t, c) in image.terms() {
            mat.set(index[t], j, c.clone());
        }
    }
    Ok((mat, source))
}

fn random_combination<R: Rng>(ctx: RingContext, basis: &[Vec<Scalar>], rng: &mut R) -> Vec<Scalar> {
    let field = ctx.field();
    let len = basis.first().map_or(0, Vec::len);
    let mut out = vec![field.zero(); len];
    for v in basis {
        let c = field.random(rng);
        for (o, x) in out.iter_mut().zip(v) {
            *o = field.add(o, &field.mul(&c, x));
        }
    }
    out
}

/// A random member of `F_e` for the given `l1, l2` (which may coincide):
/// `F` uniform in `ker(l1 ∘)`, `G` uniform in `ker((l1 l2) ∘)` on `S_e`.
pub fn family_member_from_forms<R: Rng>(
    e: u32,
    l1: &Polynomial,
    l2: &Polynomial,
    rng: &mut R,
) -> Result<(Polynomial, Polynomial)> {
    let ctx = l1.ring();
    let q = l1 * l2;
    let (m1, source) = operator_matrix(l1, e)?;
    let (m2, _) = operator_matrix(&q, e)?;
    let f = random_combination(ctx, &m1.kernel_basis(), rng);
    let g = random_combination(ctx, &m2.kernel_basis(), rng);
    Ok((Polynomial::from_coordinates(ctx, &source, &f), Polynomial::from_coordinates(ctx, &source, &g)))
}

/// Draws `l1, l2` and a generic member of `F_e`, retrying degenerate draws
/// (a zero form, or a system that is not level of type two).
pub fn sample_family_member(e: u32, seed: u64, ctx: RingContext) -> Result<(InverseSystem, FamilyMembershipWitness)> {
    if e < 2 {
        return Err(Error::Range { what: "e", value: i64::from(e), expected: ">= 2".into() });
    }
    if ctx.num_vars() != 3 {
        return Err(Error::Dimension { left: 3, right: ctx.num_vars() });
    }
    ctx.field().check_safe_for_degree(e)?;
    for attempt in 0..FAMILY_ATTEMPT_CAP {
        let sub = derive_seed(seed, attempt as u64);
        let mut rng = rng_for(seed, attempt as u64);
        let l1 = random_linear_form(ctx, &mut rng, sub)?;
        let l2 = random_linear_form(ctx, &mut rng, sub)?;
        let (f, g) = family_member_from_forms(e, &l1, &l2, &mut rng)?;
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let system = InverseSystem::new(ctx, vec![f, g])?;
        if system.is_level() != (true, 2) {
            continue;
        }
        let q = &l1 * &l2;
        return Ok((system, FamilyMembershipWitness { l1, l2, q }));
    }
    Err(Error::DegenerateRandomness { attempts: FAMILY_ATTEMPT_CAP, seed })
}

/// Columns `op_k ∘ target` for each operator, as a matrix whose kernel
/// gives the combinations `Σ c_k op_k` annihilating `target`.
fn annihilating_combinations(ops: &[Polynomial], target: &Polynomial) -> Result<Vec<Vec<Scalar>>> {
    let ctx = target.ring();
    let field = ctx.field();
    let d = ops[0].degree().unwrap_or(0);
    let e = target.degree().unwrap_or(0);
    let monos = ctx.monomials_of_degree(e.saturating_sub(d));
    let index = monomial_index(&monos);
    let mut mat = Matrix::zeros(field, monos.len(), ops.len());
    for (k, op) in ops.iter().enumerate() {
        for (m, c) in contract(op, target)?.terms() {
            mat.set(index[m], k, c.clone());
        }
    }
    Ok(mat.kernel_basis())
}

fn search(f: &Polynomial, g: &Polynomial) -> Result<Option<FamilyMembershipWitness>> {
    let ctx = f.ring();
    let vars: Vec<Polynomial> = (0..ctx.num_vars()).map(|i| Polynomial::var(ctx, i)).collect::<Result<_>>()?;
    let kernel = annihilating_combinations(&vars, f)?;
    let mut candidates: Vec<Vec<Scalar>> = kernel.clone();
    if kernel.len() >= 2 {
        let mut rng = rng_for(0, 0);
        candidates.extend((0..EXTRA_COMBINATIONS).map(|_| random_combination(ctx, &kernel, &mut rng)));
    }
    for coeffs in candidates {
        let l1 = Polynomial::linear_form(ctx, &coeffs)?;
        if l1.is_zero() {
            continue;
        }
        let products: Vec<Polynomial> = vars.iter().map(|x| &l1 * x).collect();
        if let Some(c2) = annihilating_combinations(&products, g)?.into_iter().next() {
            let l2 = Polynomial::linear_form(ctx, &c2)?;
            let q = &l1 * &l2;
            return Ok(Some(FamilyMembershipWitness { l1, l2, q }));
        }
    }
    Ok(None)
}

/// Searches for `l1, l2` with `l1 ∘ F = (l1 l2) ∘ G = 0`, trying both
/// orders of the two generators. The search over the `l1`-kernel is not
/// exhaustive when that kernel has dimension two or more.
pub fn family_membership(system: &InverseSystem) -> Result<Option<FamilyMembershipWitness>> {
    let gens = system.generators();
    if gens.len() != 2 || gens[0].degree() != gens[1].degree() {
        return Err(Error::Domain("family membership needs exactly two generators of equal degree".into()));
    }
    if system.ring().num_vars() != 3 {
        return Err(Error::Dimension { left: 3, right: system.ring().num_vars() });
    }
    for (f, g) in [(&gens[0], &gens[1]), (&gens[1], &gens[0])] {
        if let Some(w) = search(f, g)? {
            debug_assert!(w.holds_for(f, g)?);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

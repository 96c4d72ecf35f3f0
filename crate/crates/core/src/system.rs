//! Inverse systems `M ⊂ S` and the graded invariants of `R/Ann(M)`.
//!
//! The degree-`d` component `M_d` is built top-down: it is the span of
//! `x_i ∘ M_{d+1}` for all variables together with the generators of degree
//! `d`. The rank of the first part alone is what the socle count needs, so
//! the h-vector and the socle vector come out of the same pass.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::field::{FieldSpec, Scalar};
use crate::matrix::{Echelon, Matrix};
use crate::monomial::{count_of_degree, Monomial};
use crate::polynomial::{contract, Polynomial, RingContext};
use crate::sequence::{HVector, SocleVector};
use crate::{Error, Result};

/// A finitely generated graded submodule of `S = k[y_1..y_r]`, given by
/// homogeneous generators.
#[derive(Clone)]
pub struct InverseSystem {
    ctx: RingContext,
    generators: Vec<Polynomial>,
    socle_degree: u32,
    graded: OnceLock<Arc<Graded>>,
}

struct Graded {
    components: Vec<Component>,
}

struct Component {
    monomials: Vec<Monomial>,
    echelon: Echelon,
    derived_rank: usize,
}

impl InverseSystem {
    pub fn new(ctx: RingContext, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSystem("no generators".into()));
        }
        let mut e = 0;
        for (k, g) in generators.iter().enumerate() {
            if g.ring() != ctx {
                return Err(Error::InvalidSystem(format!("generator {} lives in another ring", k + 1)));
            }
            let Some(d) = g.degree() else {
                return Err(Error::InvalidSystem(format!("generator {} is zero", k + 1)));
            };
            if !g.is_homogeneous() {
                return Err(Error::InvalidSystem(format!("generator {} is not homogeneous", k + 1)));
            }
            e = e.max(d);
        }
        ctx.field().check_safe_for_degree(e)?;
        Ok(InverseSystem { ctx, generators, socle_degree: e, graded: OnceLock::new() })
    }

    /// Integer-coefficient generators, each given as `(coefficient, exponents)`
    /// terms.
    pub fn from_int_generators(ctx: RingContext, gens: &[&[(i64, &[u32])]]) -> Result<Self> {
        let gens = gens.iter().map(|terms| Polynomial::from_int_terms(ctx, terms)).collect::<Result<Vec<_>>>()?;
        InverseSystem::new(ctx, gens)
    }

    /// Monomial generators with coefficient one.
    pub fn from_monomials(ctx: RingContext, monomials: &[Monomial]) -> Result<Self> {
        let one = ctx.field().one();
        let gens =
            monomials.iter().map(|m| Polynomial::monomial(ctx, m.clone(), one.clone())).collect::<Result<Vec<_>>>()?;
        InverseSystem::new(ctx, gens)
    }

    pub fn ring(&self) -> RingContext {
        self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `e`, the largest generator degree.
    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    /// Same generators over another field, coefficients mapped through
    /// their integer/rational values. Only meaningful from the rationals,
    /// or between prime fields for integer data.
    pub fn change_field(&self, field: FieldSpec) -> Result<InverseSystem> {
        let ctx = RingContext::new(self.ctx.num_vars(), field)?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .map(|(m, c)| {
                        let c = match c {
                            Scalar::Rational(q) => field.from_ratio(q.numer(), q.denom())?,
                            Scalar::Residue(v) => field.from_u64(*v),
                        };
                        Ok((m.clone(), c))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Polynomial::from_terms(ctx, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        InverseSystem::new(ctx, gens)
    }

    fn graded(&self) -> &Graded {
        self.graded.get_or_init(|| Arc::new(Graded::build(self)))
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.socle_degree {
            return Err(Error::Range {
                what: "degree",
                value: i64::from(d),
                expected: format!("0..={}", self.socle_degree),
            });
        }
        Ok(())
    }

    /// `dim M_d`; zero above the socle degree.
    pub fn component_dim(&self, d: u32) -> usize {
        if d > self.socle_degree {
            return 0;
        }
        self.graded().components[d as usize].echelon.rank()
    }

    /// A basis of `M_d` in reduced echelon form, ordered by leading
    /// monomial, lex-descending.
    pub fn component_basis(&self, d: u32) -> Result<Vec<Polynomial>> {
        self.check_degree(d)?;
        let comp = &self.graded().components[d as usize];
        Ok(comp.echelon.rows.iter().map(|row| Polynomial::from_coordinates(self.ctx, &comp.monomials, row)).collect())
    }

    /// `h_d = dim M_d` for `d = 0..=e`.
    pub fn h_vector(&self) -> HVector {
        HVector::new(self.graded().components.iter().map(|c| c.echelon.rank()).collect())
    }

    /// `s_d = dim M_d - dim (R_1 ∘ M_{d+1})`.
    pub fn socle_vector(&self) -> SocleVector {
        SocleVector::new(self.graded().components.iter().map(|c| c.echelon.rank() - c.derived_rank).collect())
    }

    /// `(level?, s_e)`.
    pub fn is_level(&self) -> (bool, usize) {
        let s = self.socle_vector();
        (s.is_level(), *s.last().expect("nonempty"))
    }

    /// Indices of listed generators that are not needed: each generator is
    /// checked against the derivatives of higher degrees plus the earlier
    /// generators of its own degree.
    pub fn redundant_generators(&self) -> Vec<usize> {
        let field = self.field();
        let graded = self.graded();
        let mut out = Vec::new();
        for d in 0..=self.socle_degree {
            let listed: Vec<usize> =
                (0..self.generators.len()).filter(|&k| self.generators[k].degree() == Some(d)).collect();
            let comp = &graded.components[d as usize];
            if listed.is_empty() || comp.echelon.rank() - comp.derived_rank == listed.len() {
                continue;
            }
            let index = monomial_index(&comp.monomials);
            let derived = derived_rows(self, d);
            let mut rank = Echelon::of_rows(field, derived.clone(), comp.monomials.len()).rank();
            let mut rows = derived;
            for k in listed {
                rows.push(
                    self.generators[k]
                        .coordinates(&index, comp.monomials.len())
                        .expect("generator terms lie in degree d"),
                );
                let next = Echelon::of_rows(field, rows.clone(), comp.monomials.len()).rank();
                if next == rank {
                    out.push(k);
                }
                rank = next;
            }
        }
        out
    }

    /// Basis of `Ann(M)_d = { θ ∈ R_d : θ ∘ G = 0 for every generator G }`,
    /// from the contraction matrix of `R_d` against the generators.
    pub fn annihilator_component(&self, d: u32) -> Result<Vec<Polynomial>> {
        if d > self.socle_degree + 1 {
            return Err(Error::Range {
                what: "degree",
                value: i64::from(d),
                expected: format!("0..={}", self.socle_degree + 1),
            });
        }
        let field = self.field();
        let thetas = self.ctx.monomials_of_degree(d);
        let one = field.one();
        // one block of rows per generator: coordinates of θ ∘ G in S_{deg G - d}
        let mut blocks: Vec<(HashMap<Monomial, usize>, usize, &Polynomial)> = Vec::new();
        for g in &self.generators {
            let gd = g.degree().expect("nonzero");
            if gd < d {
                continue;
            }
            let target = self.ctx.monomials_of_degree(gd - d);
            blocks.push((monomial_index(&target), target.len(), g));
        }
        let total_rows: usize = blocks.iter().map(|b| b.1).sum();
        let mut mat = Matrix::zeros(field, total_rows, thetas.len());
        for (j, theta) in thetas.iter().enumerate() {
            let op = Polynomial::monomial(self.ctx, theta.clone(), one.clone())?;
            let mut offset = 0;
            for (index, len, g) in &blocks {
                let image = contract(&op, g)?;
                for (m, c) in image.terms() {
                    mat.set(offset + index[m], j, c.clone());
                }
                offset += len;
            }
        }
        Ok(mat.kernel_basis().into_iter().map(|v| Polynomial::from_coordinates(self.ctx, &thetas, &v)).collect())
    }

    /// Hilbert function of a monomial system by counting distinct monomial
    /// divisors of the generators in each degree.
    pub fn h_vector_monomial_oracle(&self) -> Result<HVector> {
        let monos: Vec<&Monomial> = self
            .generators
            .iter()
            .map(|g| {
                if g.is_monomial() {
                    Ok(g.leading_monomial().expect("one term"))
                } else {
                    Err(Error::Domain(format!("generator {g} is not a monomial")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(HVector::new(
            (0..=self.socle_degree)
                .map(|d| monos.iter().flat_map(|m| m.divisors_of_degree(d)).collect::<HashSet<_>>().len())
                .collect(),
        ))
    }

    /// The system generated by `{ l ∘ G }`, or `None` when every
    /// contraction vanishes.
    pub fn contracted_by(&self, l: &Polynomial) -> Result<Option<InverseSystem>> {
        let gens = self
            .generators
            .iter()
            .map(|g| contract(l, g))
            .filter(|p| !matches!(p, Ok(p) if p.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Ok(None);
        }
        InverseSystem::new(self.ctx, gens).map(Some)
    }

    /// Coordinates of a basis of `M_d` against the lex-descending degree-`d`
    /// monomials, with those monomials.
    pub(crate) fn component_rows(&self, d: u32) -> (&[Monomial], &[Vec<Scalar>]) {
        let comp = &self.graded().components[d as usize];
        (&comp.monomials, &comp.echelon.rows)
    }
}

pub(crate) fn monomial_index(monomials: &[Monomial]) -> HashMap<Monomial, usize> {
    monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// For each degree-`d+1` monomial and each variable `i`, where `x_i` sends
/// it in degree `d` and with which factor.
pub(crate) struct ContractionTable {
    pub entries: Vec<Vec<Option<(usize, u64)>>>,
}

impl ContractionTable {
    pub fn new(num_vars: usize, upper: &[Monomial], lower_index: &HashMap<Monomial, usize>) -> Self {
        let entries = upper
            .iter()
            .map(|m| {
                (0..num_vars)
                    .map(|i| {
                        let b = m.exponents()[i];
                        (b > 0).then(|| {
                            let mut exps = m.exponents().to_vec();
                            exps[i] -= 1;
                            (lower_index[&Monomial::new(exps)], u64::from(b))
                        })
                    })
                    .collect()
            })
            .collect();
        ContractionTable { entries }
    }

    /// Image of `row` (coordinates in degree `d+1`) under `Σ_i c_i x_i`.
    pub fn apply(&self, field: FieldSpec, coeffs: &[Scalar], row: &[Scalar], lower_len: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); lower_len];
        for (j, v) in row.iter().enumerate() {
            if field.is_zero(v) {
                continue;
            }
            for (i, c) in coeffs.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                if let Some((t, b)) = self.entries[j][i] {
                    let add = field.mul(&field.mul(v, c), &field.from_u64(b));
                    out[t] = field.add(&out[t], &add);
                }
            }
        }
        out
    }
}

/// Rows spanning `R_1 ∘ U` in degree-`d` coordinates, where `U` is given by
/// `rows` over the degree-`d+1` monomials `upper`.
fn first_derivatives(
    field: FieldSpec,
    num_vars: usize,
    upper: &[Monomial],
    rows: &[Vec<Scalar>],
    lower: &[Monomial],
) -> Vec<Vec<Scalar>> {
    let table = ContractionTable::new(num_vars, upper, &monomial_index(lower));
    let units: Vec<Vec<Scalar>> = (0..num_vars)
        .map(|i| (0..num_vars).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    rows.iter()
        .flat_map(|row| units.iter().map(|u| table.apply(field, u, row, lower.len())).collect::<Vec<_>>())
        .collect()
}

/// Rows spanning `R_1 ∘ M_{d+1}` in degree-`d` coordinates.
fn derived_rows(system: &InverseSystem, d: u32) -> Vec<Vec<Scalar>> {
    if d >= system.socle_degree {
        return Vec::new();
    }
    let (upper, rows) = system.component_rows(d + 1);
    let lower = system.ctx.monomials_of_degree(d);
    first_derivatives(system.field(), system.ctx.num_vars(), upper, rows, &lower)
}

impl Graded {
    fn build(system: &InverseSystem) -> Graded {
        let field = system.field();
        let r = system.ctx.num_vars();
        let e = system.socle_degree;
        let mut components: Vec<Component> = Vec::with_capacity(e as usize + 1);
        // components are pushed from degree e downwards, reversed at the end
        for d in (0..=e).rev() {
            let monomials = system.ctx.monomials_of_degree(d);
            debug_assert_eq!(monomials.len(), count_of_degree(r, d));
            let index = monomial_index(&monomials);
            let rows = match components.last() {
                Some(upper) => first_derivatives(field, r, &upper.monomials, &upper.echelon.rows, &monomials),
                None => Vec::new(),
            };
            let derived = Echelon::of_rows(field, rows, monomials.len());
            let derived_rank = derived.rank();
            let mut rows = derived.rows;
            for g in system.generators.iter().filter(|g| g.degree() == Some(d)) {
                rows.push(g.coordinates(&index, monomials.len()).expect("homogeneous generator"));
            }
            let echelon = Echelon::of_rows(field, rows, monomials.len());
            components.push(Component { monomials, echelon, derived_rank });
        }
        components.reverse();
        Graded { components }
    }
}

impl PartialEq for InverseSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.generators == other.generators
    }
}

impl Eq for InverseSystem {}

impl fmt::Debug for InverseSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InverseSystem")
            .field("ring", &self.ctx)
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for InverseSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn ctx(r: usize) -> RingContext {
        RingContext::new(r, FieldSpec::Prime(DEFAULT_PRIME)).unwrap()
    }

    fn monomial_system(r: usize, gens: &[&[u32]]) -> InverseSystem {
        let monos: Vec<Monomial> = gens.iter().map(|e| Monomial::new(e.to_vec())).collect();
        InverseSystem::from_monomials(ctx(r), &monos).unwrap()
    }

    #[test]
    fn principal_power() {
        let m = monomial_system(3, &[&[0, 0, 5]]);
        assert_eq!(m.h_vector().entries(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(m.socle_vector().entries(), &[0, 0, 0, 0, 0, 1]);
        let basis = m.component_basis(2).unwrap();
        assert_eq!(basis, vec![Polynomial::from_int_terms(ctx(3), &[(1, &[0, 0, 2])]).unwrap()]);
        assert!(m.component_basis(6).is_err());
    }

    #[test]
    fn small_monomial_systems() {
        assert_eq!(monomial_system(3, &[&[1, 1, 0]]).component_dim(1), 2);
        assert_eq!(monomial_system(3, &[&[2, 0, 0]]).h_vector().entries(), &[1, 1, 1]);
        assert_eq!(monomial_system(3, &[&[1, 0, 1], &[0, 2, 0]]).h_vector().entries(), &[1, 3, 2]);
    }

    #[test]
    fn redundant_generator_is_not_socle() {
        let m = monomial_system(1, &[&[2], &[1]]);
        assert_eq!(m.socle_vector().entries(), &[0, 0, 1]);
        assert_eq!(m.is_level(), (true, 1));
        assert_eq!(m.redundant_generators(), vec![1]);
    }

    #[test]
    fn mixed_socle() {
        let m = monomial_system(2, &[&[3, 0], &[0, 2]]);
        assert_eq!(m.socle_vector().entries(), &[0, 0, 1, 1]);
        assert_eq!(m.is_level(), (false, 1));
        assert!(m.redundant_generators().is_empty());
    }

    #[test]
    fn annihilator_of_power() {
        let m = monomial_system(3, &[&[0, 0, 3]]);
        let ann = m.annihilator_component(1).unwrap();
        assert_eq!(ann, vec![Polynomial::var(ctx(3), 0).unwrap(), Polynomial::var(ctx(3), 1).unwrap(),]);
        assert_eq!(m.annihilator_component(4).unwrap().len(), 15);
        assert!(m.annihilator_component(5).is_err());
    }

    #[test]
    fn monomial_oracle_rejects_binomials() {
        let m = InverseSystem::from_int_generators(ctx(2), &[&[(1, &[1, 1]), (1, &[2, 0])]]).unwrap();
        assert!(matches!(m.h_vector_monomial_oracle(), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(InverseSystem::new(ctx(2), vec![]).is_err());
        assert!(InverseSystem::new(ctx(2), vec![Polynomial::zero(ctx(2))]).is_err());
        let inhom = Polynomial::from_int_terms(ctx(2), &[(1, &[2, 0]), (1, &[0, 1])]).unwrap();
        assert!(InverseSystem::new(ctx(2), vec![inhom]).is_err());
        let small = RingContext::new(1, FieldSpec::Prime(3)).unwrap();
        let high = Polynomial::from_int_terms(small, &[(1, &[3])]).unwrap();
        assert!(matches!(InverseSystem::new(small, vec![high]), Err(Error::UnsafeField { .. })));
    }

    #[test]
    fn binomial_generator() {
        // y1^2 + y2^2: derivatives y1, y2; Gorenstein (1,2,1)
        let m = InverseSystem::from_int_generators(ctx(2), &[&[(1, &[2, 0]), (1, &[0, 2])]]).unwrap();
        assert_eq!(m.h_vector().entries(), &[1, 2, 1]);
        let ann = m.annihilator_component(2).unwrap();
        assert_eq!(ann.len(), 2);
    }
}

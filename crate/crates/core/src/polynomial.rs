//! Sparse forms over a [`RingContext`] and the contraction action of
//! `R = k[x_1..x_r]` on `S = k[y_1..y_r]` by partial differentiation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::{Error, Result};

/// Number of variables and coefficient field shared by `R` and `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    num_vars: usize,
    field: FieldSpec,
}

impl RingContext {
    pub fn new(num_vars: usize, field: FieldSpec) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Argument("a ring needs at least one variable".into()));
        }
        Ok(RingContext { num_vars, field })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Same field, different variable count.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Self> {
        RingContext::new(num_vars, self.field)
    }

    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        crate::monomial::monomials_of_degree(self.num_vars, d)
    }
}

/// A polynomial with exact coefficients; no zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: RingContext,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ctx: RingContext) -> Self {
        Polynomial { ctx, terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: RingContext, mono: Monomial, coeff: Scalar) -> Result<Self> {
        Polynomial::from_terms(ctx, [(mono, coeff)])
    }

    /// The variable with zero-based index `i`.
    pub fn var(ctx: RingContext, i: usize) -> Result<Self> {
        if i >= ctx.num_vars {
            return Err(Error::Argument(format!("variable index {} exceeds r = {}", i + 1, ctx.num_vars)));
        }
        Polynomial::monomial(ctx, Monomial::var(ctx.num_vars, i), ctx.field.one())
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms<I>(ctx: RingContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let field = ctx.field;
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (mono, c) in terms {
            if mono.num_vars() != ctx.num_vars {
                return Err(Error::Dimension { left: ctx.num_vars, right: mono.num_vars() });
            }
            match map.get_mut(&mono) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(mono, c);
                }
            }
        }
        map.retain(|_, c| !field.is_zero(c));
        Ok(Polynomial { ctx, terms: map })
    }

    /// Convenience constructor from integer coefficients and exponent slices.
    pub fn from_int_terms(ctx: RingContext, terms: &[(i64, &[u32])]) -> Result<Self> {
        let field = ctx.field;
        Polynomial::from_terms(ctx, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), field.from_i64(*c))))
    }

    /// `c_1 x_1 + ... + c_r x_r`.
    pub fn linear_form(ctx: RingContext, coeffs: &[Scalar]) -> Result<Self> {
        if coeffs.len() != ctx.num_vars {
            return Err(Error::Dimension { left: ctx.num_vars, right: coeffs.len() });
        }
        Polynomial::from_terms(ctx, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(ctx.num_vars, i), c.clone())))
    }

    /// Coefficients of a linear form in variable order.
    pub fn linear_coefficients(&self) -> Option<Vec<Scalar>> {
        if self.degree() != Some(1) || !self.is_homogeneous() {
            return None;
        }
        Some((0..self.ctx.num_vars).map(|i| self.coefficient(&Monomial::var(self.ctx.num_vars, i))).collect())
    }

    /// Build from coordinates against a monomial basis.
    pub fn from_coordinates(ctx: RingContext, basis: &[Monomial], coords: &[Scalar]) -> Self {
        assert_eq!(basis.len(), coords.len());
        let field = ctx.field;
        let terms =
            basis.iter().zip(coords).filter(|(_, c)| !field.is_zero(c)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { ctx, terms }
    }

    pub fn ring(&self) -> RingContext {
        self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.ctx.field.zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    /// A single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = self.ctx.field;
        if field.is_zero(c) {
            return Polynomial::zero(self.ctx);
        }
        Polynomial { ctx: self.ctx, terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect() }
    }

    /// Coordinates against `index`, which maps each monomial to a column.
    /// Returns `None` when a term falls outside the index.
    pub fn coordinates(&self, index: &std::collections::HashMap<Monomial, usize>, len: usize) -> Option<Vec<Scalar>> {
        let mut out = vec![self.ctx.field.zero(); len];
        for (m, c) in &self.terms {
            out[*index.get(m)?] = c.clone();
        }
        Some(out)
    }

    /// Same polynomial in a ring with at least as many variables.
    pub fn embed(&self, ctx: RingContext) -> Result<Polynomial> {
        if ctx.num_vars < self.ctx.num_vars || ctx.field != self.ctx.field {
            return Err(Error::Argument("target ring must extend the source ring".into()));
        }
        Polynomial::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.embed(ctx.num_vars), c.clone())))
    }

    /// Renames `y_i` to `y_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Polynomial> {
        let r = self.ctx.num_vars;
        let mut seen = vec![false; r];
        if perm.len() != r || !perm.iter().all(|&j| j < r && !std::mem::replace(&mut seen[j], true)) {
            return Err(Error::Argument(format!("not a permutation of 0..{r}: {perm:?}")));
        }
        Polynomial::from_terms(
            self.ctx,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; r];
                for (i, &a) in m.exponents().iter().enumerate() {
                    exps[perm[i]] = a;
                }
                (Monomial::new(exps), c.clone())
            }),
        )
    }

    /// Apply this operator (an element of `R`) to `target` in `S`.
    pub fn contract(&self, target: &Polynomial) -> Result<Polynomial> {
        contract(self, target)
    }

    /// Display with the given variable letter; `x` for operators, `y` for
    /// dual forms.
    pub fn display_with(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let is_const = m.degree() == 0;
            if cs == "1" && !is_const {
                out.push_str(&m.display_with(var));
            } else if is_const {
                out.push_str(&cs);
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&m.display_with(var));
            }
        }
        out
    }

    fn check_same_ring(&self, other: &Polynomial) {
        assert_eq!(self.ctx, other.ctx, "polynomials from different rings");
    }
}

/// `theta ∘ target`: `x^a ∘ y^b = (∏ b_i!/(b_i-a_i)!) y^{b-a}` when `a <= b`,
/// zero otherwise, extended bilinearly.
pub fn contract(theta: &Polynomial, target: &Polynomial) -> Result<Polynomial> {
    if theta.ctx.num_vars != target.ctx.num_vars {
        return Err(Error::Dimension { left: theta.ctx.num_vars, right: target.ctx.num_vars });
    }
    if theta.ctx.field != target.ctx.field {
        return Err(Error::FieldMismatch);
    }
    let field = target.ctx.field;
    if let Some(d) = target.degree() {
        field.check_safe_for_degree(d)?;
    }
    let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (a, ca) in &theta.terms {
        for (b, cb) in &target.terms {
            let Some(rest) = a.quotient_of(b) else { continue };
            let mut c = field.mul(ca, cb);
            for (&bi, &ai) in b.exponents().iter().zip(a.exponents()) {
                for k in 0..ai {
                    c = field.mul(&c, &field.from_u64(u64::from(bi - k)));
                }
            }
            match out.get_mut(&rest) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    out.insert(rest, c);
                }
            }
        }
    }
    out.retain(|_, c| !field.is_zero(c));
    Ok(Polynomial { ctx: target.ctx, terms: out })
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_ring(rhs);
        let field = self.ctx.field;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(acc) => *acc = field.add(acc, c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !field.is_zero(c));
        Polynomial { ctx: self.ctx, terms }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.ctx.field.neg(&self.ctx.field.one()))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_ring(rhs);
        let field = self.ctx.field;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let c = field.mul(ca, cb);
                let m = a.mul(b);
                match terms.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !field.is_zero(c));
        Polynomial { ctx: self.ctx, terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('y'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn q3() -> RingContext {
        RingContext::new(3, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let ctx = q3();
        let theta = Polynomial::from_int_terms(ctx, &[(1, &[1, 0, 1])]).unwrap();
        let p = Polynomial::from_int_terms(ctx, &[(1, &[2, 0, 1])]).unwrap();
        let expected = Polynomial::from_int_terms(ctx, &[(2, &[1, 0, 0])]).unwrap();
        assert_eq!(contract(&theta, &p).unwrap(), expected);

        let x2 = Polynomial::var(ctx, 1).unwrap();
        let y1_cubed = Polynomial::from_int_terms(ctx, &[(1, &[3, 0, 0])]).unwrap();
        assert!(contract(&x2, &y1_cubed).unwrap().is_zero());

        let x1_sq = Polynomial::from_int_terms(ctx, &[(1, &[2, 0, 0])]).unwrap();
        let p = Polynomial::from_int_terms(ctx, &[(3, &[2, 1, 0]), (-1, &[1, 0, 2])]).unwrap();
        let expected = Polynomial::from_int_terms(ctx, &[(6, &[0, 1, 0])]).unwrap();
        assert_eq!(contract(&x1_sq, &p).unwrap(), expected);
    }

    #[test]
    fn contraction_rejects_small_prime() {
        let ctx = RingContext::new(2, FieldSpec::prime(5).unwrap()).unwrap();
        let x1 = Polynomial::var(ctx, 0).unwrap();
        let p = Polynomial::from_int_terms(ctx, &[(1, &[5, 0])]).unwrap();
        assert_eq!(contract(&x1, &p), Err(Error::UnsafeField { modulus: 5, degree: 5 }));
        let p = Polynomial::from_int_terms(ctx, &[(1, &[4, 0])]).unwrap();
        assert!(contract(&x1, &p).is_ok());
    }

    #[test]
    fn contraction_dimension_mismatch() {
        let a = Polynomial::var(q3(), 0).unwrap();
        let b = Polynomial::var(RingContext::new(2, FieldSpec::Rationals).unwrap(), 0).unwrap();
        assert_eq!(contract(&a, &b), Err(Error::Dimension { left: 3, right: 2 }));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let ctx = RingContext::new(2, FieldSpec::Prime(DEFAULT_PRIME)).unwrap();
        let p = Polynomial::from_int_terms(ctx, &[(1, &[1, 1]), (-1, &[1, 1])]).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn display_signs() {
        let ctx = q3();
        let p = Polynomial::from_int_terms(ctx, &[(3, &[2, 1, 0]), (-1, &[1, 0, 2]), (1, &[0, 0, 3])]).unwrap();
        assert_eq!(p.to_string(), "3*y1^2*y2 - y1*y3^2 + y3^3");
        let l = Polynomial::from_int_terms(ctx, &[(-2, &[0, 1, 0])]).unwrap();
        assert_eq!(l.display_with('x'), "-2*x2");
    }

    #[test]
    fn product_of_linear_forms() {
        let ctx = q3();
        let x1 = Polynomial::var(ctx, 0).unwrap();
        let x2 = Polynomial::var(ctx, 1).unwrap();
        let q = &(&x1 + &x2) * &(&x1 - &x2);
        let expected = Polynomial::from_int_terms(ctx, &[(1, &[2, 0, 0]), (-1, &[0, 2, 0])]).unwrap();
        assert_eq!(q, expected);
    }
}

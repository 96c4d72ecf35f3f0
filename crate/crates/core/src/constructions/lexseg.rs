use crate::monomial::Monomial;
use crate::polynomial::{Polynomial, RingContext};
use crate::system::InverseSystem;
use crate::{Error, Result};

/// The `count` lex-smallest monomials of degree `e`, listed lex-descending.
pub fn lex_segment_module(e: u32, count: usize, ctx: RingContext) -> Result<InverseSystem> {
    let all = ctx.monomials_of_degree(e);
    if count < 1 || count > all.len() {
        return Err(Error::Range { what: "count", value: count as i64, expected: format!("1..={}", all.len()) });
    }
    InverseSystem::from_monomials(ctx, &all[all.len() - count..])
}

/// The last `3e` monomials of degree `e` in three variables together with
/// `y1^(e-6) y2^3 y3^3`. Its h-vector ends `(3e+1, 3e, 3e, 3e+1)`.
pub fn nonunimodal_module(e: u32, ctx: RingContext) -> Result<InverseSystem> {
    if e < 12 {
        return Err(Error::Range { what: "e", value: i64::from(e), expected: ">= 12".into() });
    }
    if ctx.num_vars() != 3 {
        return Err(Error::Dimension { left: 3, right: ctx.num_vars() });
    }
    let segment = lex_segment_module(e, 3 * e as usize, ctx)?;
    let mut gens = segment.generators().to_vec();
    gens.push(Polynomial::monomial(ctx, Monomial::new(vec![e - 6, 3, 3]), ctx.field().one())?);
    InverseSystem::new(ctx, gens)
}

/// Embeds a three-variable system with all generators in degree `e` into
/// `r_new` variables and appends `y_j^e` for `j = 4..=r_new`. The h-vector
/// becomes `(1, r_new, h_2 + r_new - 3, ..., h_e + r_new - 3)`.
pub fn extend_codimension(system: &InverseSystem, r_new: usize) -> Result<InverseSystem> {
    let ctx = system.ring();
    if ctx.num_vars() != 3 {
        return Err(Error::Dimension { left: 3, right: ctx.num_vars() });
    }
    if r_new < 3 {
        return Err(Error::Range { what: "r_new", value: r_new as i64, expected: ">= 3".into() });
    }
    let e = system.socle_degree();
    if system.generators().iter().any(|g| g.degree() != Some(e)) {
        return Err(Error::Domain("all generators must share one degree".into()));
    }
    if system.h_vector().get(1) != Some(&3) {
        return Err(Error::Domain("the system must have h_1 = 3".into()));
    }
    let wide = ctx.with_num_vars(r_new)?;
    let mut gens = system.generators().iter().map(|g| g.embed(wide)).collect::<Result<Vec<_>>>()?;
    for j in 3..r_new {
        let mut exps = vec![0; r_new];
        exps[j] = e;
        gens.push(Polynomial::monomial(wide, Monomial::new(exps), wide.field().one())?);
    }
    InverseSystem::new(wide, gens)
}

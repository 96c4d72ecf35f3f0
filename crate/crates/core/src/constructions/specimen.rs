use crate::monomial::Monomial;
use crate::polynomial::{Polynomial, RingContext};
use crate::sequence::HVector;
use crate::system::InverseSystem;
use crate::{Error, Result};

/// `h_d = min{2d+1, e+2, 3(e-d)+2}` for `d = 0..=e`.
pub fn target_h_vector(e: u32) -> Result<HVector> {
    if e < 1 {
        return Err(Error::Range { what: "e", value: i64::from(e), expected: ">= 1".into() });
    }
    let e = e as usize;
    Ok(HVector::new((0..=e).map(|d| (2 * d + 1).min(e + 2).min(3 * (e - d) + 2)).collect()))
}

/// Nearest integer to `num / den`; `None` on an exact half.
pub fn nearest_integer(num: u64, den: u64) -> Option<u64> {
    assert!(den > 0);
    let (q, r) = (num / den, num % den);
    match (2 * r).cmp(&den) {
        std::cmp::Ordering::Less => Some(q),
        std::cmp::Ordering::Greater => Some(q + 1),
        std::cmp::Ordering::Equal => None,
    }
}

/// `<y1^[2e/3] y3^[e/3], y2^⌈e/2⌉ y3^⌊e/2⌋ + y1^[e/3] y3^[2e/3]>`, a type-two
/// level system with h-vector `h^(e)`.
pub fn specimen_module(e: u32, ctx: RingContext) -> Result<InverseSystem> {
    if e < 2 {
        return Err(Error::Range { what: "e", value: i64::from(e), expected: ">= 2".into() });
    }
    if ctx.num_vars() != 3 {
        return Err(Error::Dimension { left: 3, right: ctx.num_vars() });
    }
    let e64 = u64::from(e);
    let two_thirds = nearest_integer(2 * e64, 3).expect("thirds are never halves") as u32;
    let third = nearest_integer(e64, 3).expect("thirds are never halves") as u32;
    let one = ctx.field().one();
    let term = |exps: [u32; 3]| (Monomial::new(exps.to_vec()), one.clone());
    let f = Polynomial::from_terms(ctx, [term([two_thirds, 0, third])])?;
    let g = Polynomial::from_terms(ctx, [term([0, e.div_ceil(2), e / 2]), term([third, 0, two_thirds])])?;
    InverseSystem::new(ctx, vec![f, g])
}

/// Parameter count of `F_e`: the reducible conic `l1*l2` (4) plus the
/// fibre `(e+1) + (2e+1) - 3`. Recorded as arithmetic only.
pub fn family_dimension(e: u32) -> u32 {
    4 + (e + 1) + (2 * e + 1) - 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ctx() -> RingContext {
        RingContext::new(3, FieldSpec::default()).unwrap()
    }

    #[test]
    fn target_examples() {
        assert_eq!(target_h_vector(10).unwrap().entries(), &[1, 3, 5, 7, 9, 11, 12, 11, 8, 5, 2]);
        assert_eq!(target_h_vector(9).unwrap().entries(), &[1, 3, 5, 7, 9, 11, 11, 8, 5, 2]);
        assert_eq!(target_h_vector(1).unwrap().entries(), &[1, 2]);
        assert!(target_h_vector(0).is_err());
    }

    #[test]
    fn nearest() {
        assert_eq!(nearest_integer(20, 3), Some(7));
        assert_eq!(nearest_integer(10, 3), Some(3));
        assert_eq!(nearest_integer(5, 2), None);
        assert_eq!(nearest_integer(7, 2), None);
        assert_eq!(nearest_integer(9, 3), Some(3));
    }

    #[test]
    fn specimen_generators() {
        let expect = |e: u32, f: [u32; 3], g1: [u32; 3], g2: [u32; 3]| {
            let m = specimen_module(e, ctx()).unwrap();
            let want = InverseSystem::from_int_generators(ctx(), &[&[(1, &f)], &[(1, &g1), (1, &g2)]]).unwrap();
            assert_eq!(m, want, "e = {e}");
        };
        expect(10, [7, 0, 3], [0, 5, 5], [3, 0, 7]);
        expect(9, [6, 0, 3], [0, 5, 4], [3, 0, 6]);
        expect(6, [4, 0, 2], [0, 3, 3], [2, 0, 4]);
    }

    #[test]
    fn specimen_ten_invariants() {
        let m = specimen_module(10, ctx()).unwrap();
        assert_eq!(m.component_dim(9), 5);
        assert_eq!(m.h_vector(), target_h_vector(10).unwrap());
        assert_eq!(m.annihilator_component(2).unwrap().len(), 1);
        assert_eq!(m.socle_vector().entries(), &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn specimen_range_errors() {
        assert!(specimen_module(1, ctx()).is_err());
        let two = RingContext::new(2, FieldSpec::default()).unwrap();
        assert!(specimen_module(6, two).is_err());
    }

    #[test]
    fn dimension_count() {
        assert_eq!(family_dimension(10), 33);
        assert_eq!(family_dimension(6), 21);
    }
}

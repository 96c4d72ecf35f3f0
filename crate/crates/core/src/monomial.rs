//! Exponent vectors and the degree-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A monomial `y_1^{a_1} ... y_r^{a_r}` (or `x^a` on the operator side).
///
/// `Ord` is degree-lex: total degree first, then the first nonzero
/// exponent difference decides.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    /// The variable with zero-based index `i`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// Pads with zero exponents up to `num_vars` variables.
    pub fn embed(&self, num_vars: usize) -> Monomial {
        assert!(num_vars >= self.exps.len());
        let mut exps = self.exps.clone();
        exps.resize(num_vars, 0);
        Monomial { exps }
    }

    /// All degree-`d` monomials dividing `self`, lex-descending.
    pub fn divisors_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn go(caps: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let i = prefix.len();
            if i == caps.len() {
                if left == 0 {
                    out.push(Monomial { exps: prefix.clone() });
                }
                return;
            }
            let rest: u32 = caps[i + 1..].iter().sum();
            let hi = caps[i].min(left);
            let lo = left.saturating_sub(rest);
            for a in (lo..=hi).rev() {
                prefix.push(a);
                go(caps, left - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d <= self.degree() {
            go(&self.exps, d, &mut Vec::with_capacity(self.exps.len()), &mut out);
        }
        out
    }

    /// Display with the given variable letter, e.g. `y1^2*y3`.
    pub fn display_with(&self, var: char) -> String {
        let factors: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("{var}{}", i + 1) } else { format!("{var}{}^{a}", i + 1) })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('y'))
    }
}

/// Degree-lex comparison; monomials over different variable counts are
/// incomparable.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::Dimension { left: a.num_vars(), right: b.num_vars() });
    }
    Ok(a.cmp(b))
}

/// Every monomial of degree `d` in `num_vars` variables, strictly
/// lex-descending.
pub fn monomials_of_degree(num_vars: usize, d: u32) -> Vec<Monomial> {
    Monomial::new(vec![d; num_vars]).divisors_of_degree(d)
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of degree-`d` monomials in `num_vars` variables.
pub fn count_of_degree(num_vars: usize, d: u32) -> usize {
    if num_vars == 0 {
        return usize::from(d == 0);
    }
    binomial(u64::from(d) + num_vars as u64 - 1, num_vars as u64 - 1) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&m(&[2, 10, 0]), &m(&[2, 9, 1])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&m(&[1, 1, 1]), &m(&[1, 1, 1])).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(&m(&[0, 3, 0]), &m(&[1, 2, 0])).unwrap(), Ordering::Less);
        // degree decides first
        assert_eq!(lex_compare(&m(&[0, 0, 3]), &m(&[2, 0, 0])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&m(&[1, 0]), &m(&[1, 0, 0])), Err(Error::Dimension { left: 2, right: 3 }));
    }

    #[test]
    fn enumerate_small_degrees() {
        assert_eq!(monomials_of_degree(3, 0), vec![m(&[0, 0, 0])]);
        assert_eq!(
            monomials_of_degree(3, 2),
            vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[0, 1, 1]), m(&[0, 0, 2])]
        );
        assert_eq!(monomials_of_degree(3, 12).len(), 91);
        assert_eq!(count_of_degree(3, 12), 91);
        assert_eq!(count_of_degree(1, 5), 1);
    }

    #[test]
    fn divisors() {
        let mono = m(&[2, 1, 0]);
        assert_eq!(mono.divisors_of_degree(2), vec![m(&[2, 0, 0]), m(&[1, 1, 0])]);
        assert!(mono.divisors_of_degree(4).is_empty());
        assert_eq!(mono.divisors_of_degree(0), vec![m(&[0, 0, 0])]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 2), 91);
        assert_eq!(binomial(4, 6), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 0, 1]).to_string(), "y1^2*y3");
        assert_eq!(m(&[0, 0, 0]).display_with('x'), "1");
    }
}

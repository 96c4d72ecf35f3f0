//! Dense exact matrices: rank, reduced row echelon form and right kernels.
//!
//! Prime-field matrices are unpacked into `u64` residues and reduced
//! directly. Over the rationals, rank uses Bareiss fraction-free
//! elimination on an integer scaling of the rows, and echelon forms use
//! Gauss-Jordan on `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{inv_mod, FieldSpec, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form of a row space: nonzero rows only, each with a
/// leading one at `pivots[k]`, pivots strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Argument(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Rows of equal length; `cols` is needed for the zero-row case.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged rows".into()));
        }
        Matrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Scalar]>::to_vec).collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::Prime(p) => modular_rref(p, residues(&self.to_rows()), self.cols).1.len(),
            FieldSpec::Rationals => bareiss_rank(integer_rows(&self.to_rows())),
        }
    }

    pub fn row_echelon(&self) -> Echelon {
        Echelon::of_rows(self.field, self.to_rows(), self.cols)
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column, in
    /// increasing order of the free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let ech = self.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    v[p] = f.neg(&row[free]);
                }
                v
            })
            .collect()
    }
}

/// Free-function form of [`Matrix::rank`].
pub fn rank(mat: &Matrix) -> usize {
    mat.rank()
}

/// Free-function form of [`Matrix::kernel_basis`].
pub fn kernel_basis(mat: &Matrix) -> Vec<Vec<Scalar>> {
    mat.kernel_basis()
}

impl Echelon {
    /// Reduce the span of `rows` (each of length `cols`).
    pub fn of_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
        match field {
            FieldSpec::Prime(p) => {
                let (rows, pivots) = modular_rref(p, residues(&rows), cols);
                Echelon {
                    cols,
                    rows: rows.into_iter().map(|r| r.into_iter().map(Scalar::Residue).collect()).collect(),
                    pivots,
                }
            }
            FieldSpec::Rationals => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|s| match s {
                                Scalar::Rational(q) => q,
                                Scalar::Residue(_) => panic!("residue in a rational matrix"),
                            })
                            .collect()
                    })
                    .collect();
                let (rows, pivots) = rational_rref(rows, cols);
                Echelon {
                    cols,
                    rows: rows.into_iter().map(|r| r.into_iter().map(Scalar::Rational).collect()).collect(),
                    pivots,
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn residues(rows: &[Vec<Scalar>]) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| match s {
                    Scalar::Residue(v) => *v,
                    Scalar::Rational(_) => panic!("rational in a prime-field matrix"),
                })
                .collect()
        })
        .collect()
}

fn modular_rref(p: u64, mut rows: Vec<Vec<u64>>, cols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r][c..].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = p - row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + factor * y) % p;
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn rational_rref(mut rows: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        for v in rows[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Scale each rational row by the lcm of its denominators.
fn integer_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let qs: Vec<&BigRational> = r.iter().map(|s| s.as_rational().expect("rational matrix")).collect();
            let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, found);
        let pivot_row = std::mem::take(&mut a[r]);
        let pivot = pivot_row[c].clone();
        for row in a.iter_mut().skip(r + 1) {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        a[r] = pivot_row;
        prev = pivot;
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;

    fn fields() -> [FieldSpec; 2] {
        [FieldSpec::Rationals, FieldSpec::Prime(DEFAULT_PRIME)]
    }

    #[test]
    fn rank_examples() {
        for f in fields() {
            assert_eq!(Matrix::zeros(f, 3, 4).rank(), 0);
            assert_eq!(Matrix::identity(f, 5).rank(), 5);
            let m = Matrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4], vec![0, 1]]).unwrap();
            assert_eq!(m.rank(), 2);
            assert_eq!(m.transpose().rank(), 2);
        }
    }

    #[test]
    fn kernel_examples() {
        for f in fields() {
            assert!(Matrix::identity(f, 4).kernel_basis().is_empty());
            assert_eq!(Matrix::zeros(f, 2, 3).kernel_basis().len(), 3);
            let m = Matrix::from_i64_rows(f, &[vec![1, 1, 0]]).unwrap();
            let ker = m.kernel_basis();
            assert_eq!(ker, vec![vec![f.from_i64(-1), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()],]);
            for v in &ker {
                assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
            }
        }
    }

    #[test]
    fn rank_drops_mod_small_prime() {
        // det = 7
        let rows = [vec![2, 1], vec![1, 4]];
        assert_eq!(Matrix::from_i64_rows(FieldSpec::Rationals, &rows).unwrap().rank(), 2);
        assert_eq!(Matrix::from_i64_rows(FieldSpec::Prime(7), &rows).unwrap().rank(), 1);
    }

    #[test]
    fn fractional_entries() {
        let f = FieldSpec::Rationals;
        let half = f.from_ratio(&1.into(), &2.into()).unwrap();
        let third = f.from_ratio(&1.into(), &3.into()).unwrap();
        let m = Matrix::from_rows(f, 2, vec![vec![half.clone(), third.clone()], vec![f.from_i64(3), f.from_i64(2)]])
            .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.row_echelon().rank(), 1);
    }

    #[test]
    fn echelon_is_reduced() {
        let f = FieldSpec::Prime(DEFAULT_PRIME);
        let m = Matrix::from_i64_rows(f, &[vec![0, 2, 4, 1], vec![0, 1, 2, 0], vec![3, 0, 0, 1]]).unwrap();
        let e = m.row_echelon();
        assert_eq!(e.pivots, vec![0, 1, 3]);
        for (k, &p) in e.pivots.iter().enumerate() {
            for (j, row) in e.rows.iter().enumerate() {
                let expected = if j == k { f.one() } else { f.zero() };
                assert_eq!(row[p], expected);
            }
        }
    }
}

//! Dense exact matrices with fraction-free integer elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::word::Coeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Coeff>>,
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<Coeff>>) -> Result<Self> {
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(domain("matrix rows must all have the same length"));
        }
        Ok(RationalMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Coeff::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Matrix with the given columns.
    pub fn from_columns(columns: &[Vec<Coeff>], rows: usize) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(domain("matrix columns must all have the same length"));
        }
        let data = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(RationalMatrix {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i]
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Coeff::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column. Each vector is
    /// scaled to coprime integers with a positive first nonzero entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Coeff>> {
        let ech = echelon(self);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut x = vec![Coeff::zero(); self.cols];
            x[free] = Coeff::one();
            for &(r, c) in ech.pivots.iter().rev() {
                let row = &ech.rows[r];
                let mut acc = Coeff::zero();
                for j in c + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += Coeff::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[c] = -acc / Coeff::from_integer(row[c].clone());
            }
            basis.push(primitive(&x));
        }
        basis
    }
}

pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Coeff>> {
    m.kernel_basis()
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, top to bottom.
    pivots: Vec<(usize, usize)>,
}

fn integer_row(row: &[Coeff]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Row echelon form over the integers: rows are combined as
/// `p * row - a * pivot_row` and then divided by their content.
fn echelon(m: &RationalMatrix) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = m.data.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..m.cols {
        if top == rows.len() {
            break;
        }
        // smallest nonzero entry keeps the numbers small
        let Some(p) = (top..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()))
        else {
            continue;
        };
        rows.swap(top, p);
        let pivot_row = rows[top].clone();
        let pv = pivot_row[col].clone();
        for row in rows.iter_mut().skip(top + 1) {
            if row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pv - &a * y;
            }
            reduce_content(row);
        }
        pivots.push((top, col));
        top += 1;
    }
    Echelon { rows, pivots }
}

/// Scales a rational vector to coprime integers, first nonzero entry positive.
pub fn primitive(v: &[Coeff]) -> Vec<Coeff> {
    let mut ints = integer_row(v);
    reduce_content(&mut ints);
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Coeff::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::int;

    #[test]
    fn rank_one_kernel() {
        let m = RationalMatrix::from_integers(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(kernel_basis(&m), vec![vec![int(2), int(-1)]]);
    }

    #[test]
    fn identity_is_injective() {
        let m = RationalMatrix::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(kernel_basis(&m).is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn zero_one_by_one() {
        let m = RationalMatrix::from_integers(&[&[0]]).unwrap();
        assert_eq!(kernel_basis(&m), vec![vec![int(1)]]);
    }

    #[test]
    fn rational_entries() {
        let half = Coeff::new(1.into(), 2.into());
        let third = Coeff::new(1.into(), 3.into());
        let m = RationalMatrix::new(vec![vec![half.clone(), third.clone(), int(1)]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::new(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
    }

    #[test]
    fn primitive_normalization() {
        let v = vec![
            Coeff::new((-2).into(), 3.into()),
            Coeff::new(4.into(), 3.into()),
            int(0),
        ];
        assert_eq!(primitive(&v), vec![int(1), int(-2), int(0)]);
    }
}

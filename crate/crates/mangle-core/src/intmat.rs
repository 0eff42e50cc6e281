//! Integer matrices: Hermite and Smith normal forms with unimodular
//! transform witnesses.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Mat;
use crate::scalar::Rational;
use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Hermite normal form `h` with a unimodular `u` such that `u * m = h`.
pub struct Hermite {
    pub h: IMat,
    pub u: IMat,
    pub rank: usize,
}

/// Smith normal form: `u * m * v` is diagonal with the invariant factors
/// on the diagonal (each dividing the next), `u` and `v` unimodular.
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    pub diagonal: Vec<BigInt>,
}

impl IMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        IMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IMat { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Converts a rational matrix with integer entries.
    pub fn try_from_rational(m: &Mat<Rational>) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.at(i, j);
                if !v.denom().is_one() {
                    return Err(Error::NonIntegerEntry);
                }
                data.push(v.numer().clone());
            }
        }
        Ok(IMat::new(m.rows(), m.cols(), data))
    }

    pub fn to_rational(&self) -> Mat<Rational> {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            Rational::from_integer(self.at(i, j).clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn matmul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .to_rational()
                .det()
                .map(|d| d.numer().abs().is_one() && d.denom().is_one())
                .unwrap_or(false)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }

    /// `row_a -= q * row_b`
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(a, j) - q * self.at(b, j);
            *self.at_mut(a, j) = v;
        }
    }

    /// `col_a -= q * col_b`
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, a) - q * self.at(i, b);
            *self.at_mut(i, a) = v;
        }
    }

    /// Row-style Hermite normal form: pivots positive, zeros below each
    /// pivot, entries above each pivot reduced into `[0, pivot)`, zero
    /// rows at the bottom.
    pub fn hermite(&self) -> Hermite {
        let mut h = self.clone();
        let mut u = IMat::identity(self.rows);
        let mut row = 0;
        for col in 0..self.cols {
            if row == h.rows {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in row..h.rows {
                    if !h.at(i, col).is_zero() {
                        let replace = match best {
                            None => true,
                            Some(b) => h.at(i, col).abs() < h.at(b, col).abs(),
                        };
                        if replace {
                            best = Some(i);
                        }
                    }
                }
                let Some(p) = best else {
                    break;
                };
                h.swap_rows(row, p);
                u.swap_rows(row, p);
                if h.at(row, col).is_negative() {
                    h.negate_row(row);
                    u.negate_row(row);
                }
                let mut clean = true;
                for i in (row + 1)..h.rows {
                    if !h.at(i, col).is_zero() {
                        let q = h.at(i, col).div_floor(h.at(row, col));
                        h.row_axpy(i, row, &q);
                        u.row_axpy(i, row, &q);
                        if !h.at(i, col).is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if h.at(row, col).is_zero() {
                continue;
            }
            for i in 0..row {
                let q = h.at(i, col).div_floor(h.at(row, col));
                h.row_axpy(i, row, &q);
                u.row_axpy(i, row, &q);
            }
            row += 1;
        }
        Hermite { h, u, rank: row }
    }

    /// Smith normal form with unimodular witnesses.
    pub fn smith(&self) -> Smith {
        let mut m = self.clone();
        let mut u = IMat::identity(self.rows);
        let mut v = IMat::identity(self.cols);
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if !m.at(i, j).is_zero() {
                        let replace = match best {
                            None => true,
                            Some((bi, bj)) => m.at(i, j).abs() < m.at(bi, bj).abs(),
                        };
                        if replace {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            m.swap_rows(t, bi);
            u.swap_rows(t, bi);
            m.swap_cols(t, bj);
            v.swap_cols(t, bj);
            loop {
                let mut dirty = false;
                for i in (t + 1)..m.rows {
                    if !m.at(i, t).is_zero() {
                        let q = m.at(i, t).div_floor(m.at(t, t));
                        m.row_axpy(i, t, &q);
                        u.row_axpy(i, t, &q);
                        if !m.at(i, t).is_zero() {
                            m.swap_rows(t, i);
                            u.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in (t + 1)..m.cols {
                    if !m.at(t, j).is_zero() {
                        let q = m.at(t, j).div_floor(m.at(t, t));
                        m.col_axpy(j, t, &q);
                        v.col_axpy(j, t, &q);
                        if !m.at(t, j).is_zero() {
                            m.swap_cols(t, j);
                            v.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                let mut offender: Option<usize> = None;
                for i in (t + 1)..m.rows {
                    for j in (t + 1)..m.cols {
                        if !(m.at(i, j) % m.at(t, t)).is_zero() {
                            offender = Some(i);
                            break;
                        }
                    }
                    if offender.is_some() {
                        break;
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        m.row_axpy(t, i, &minus_one);
                        u.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if m.at(t, t).is_negative() {
                m.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| m.at(i, i).clone()).collect();
        Smith { u, v, diagonal }
    }
}

/// Greatest common divisor of a slice, nonnegative; zero for all-zero input.
pub fn content(values: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_identity() {
        let m = IMat::identity(3);
        let h = m.hermite();
        assert_eq!(h.h, IMat::identity(3));
        assert_eq!(h.rank, 3);
        assert!(h.u.is_unimodular());
    }

    #[test]
    fn hermite_reproduces_input() {
        let m = IMat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let h = m.hermite();
        assert!(h.u.is_unimodular());
        assert_eq!(h.u.matmul(&m), h.h);
    }

    #[test]
    fn smith_single_row() {
        let m = IMat::from_i64_rows(&[&[2, 4]]);
        let s = m.smith();
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
    }

    #[test]
    fn smith_quadratic_cone_columns() {
        let m = IMat::from_i64_rows(&[&[2, 0], &[-1, 1]]);
        let s = m.smith();
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(2)]);
        let d = s.u.matmul(&m).matmul(&s.v);
        assert_eq!(*d.at(0, 0), BigInt::from(1));
        assert_eq!(*d.at(1, 1), BigInt::from(2));
        assert_eq!(*d.at(0, 1), BigInt::zero());
        assert_eq!(*d.at(1, 0), BigInt::zero());
    }

    #[test]
    fn smith_divisibility_chain() {
        let m = IMat::from_i64_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
        let s = m.smith();
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(12)]
        );
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let d = s.u.matmul(&m).matmul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn content_gcd() {
        assert_eq!(
            content(&[BigInt::from(6), BigInt::from(-9)]),
            BigInt::from(3)
        );
        assert_eq!(content(&[BigInt::zero()]), BigInt::zero());
    }
}

//! Dense matrices over a rational-function field.

use std::fmt;
use std::sync::Arc;

use crate::field::{DiffField, FieldError, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
    vars: Arc<[String]>,
}

/// First entry where two matrices differ.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub left: String,
    pub right: String,
}

impl Matrix {
    pub fn zeros(field: &DiffField, rows: usize, cols: usize) -> Self {
        Self::zeros_in(field.vars(), rows, cols)
    }

    pub fn zeros_in(vars: &Arc<[String]>, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RationalFunction::zero(vars); rows * cols], vars: vars.clone() }
    }

    pub fn identity(field: &DiffField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &DiffField, rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), vars: field.vars().clone() }
    }

    /// Parses a matrix of expression strings.
    pub fn parse(field: &DiffField, rows: &[Vec<&str>]) -> Result<Self, FieldError> {
        let parsed = rows.iter().map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        let c = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != c) {
            return Err(FieldError::Invalid("ragged matrix".into()));
        }
        Ok(Self::from_rows(field, parsed))
    }

    /// Matrix with integer entries.
    pub fn from_ints(field: &DiffField, rows: &[&[i64]]) -> Self {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&k| field.int(k)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalFunction {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<RationalFunction>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), vars: self.vars.clone() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&RationalFunction) -> Result<RationalFunction, E>) -> Result<Self, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data, vars: self.vars.clone() })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros_in(&self.vars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, a: &RationalFunction) -> Self {
        self.map(|x| x * a)
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data, vars: self.vars.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data, vars: self.vars.clone() }
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {:?} * {:?}", self.shape(), other.shape());
        let mut out = Self::zeros_in(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let prod = if a.is_one() {
                        b.clone()
                    } else if b.is_one() {
                        a.clone()
                    } else {
                        a * b
                    };
                    out.data[idx] = &out.data[idx] + &prod;
                }
            }
        }
        out
    }

    /// Kronecker product; row index of (i, k) is i·rows(other) + k.
    pub fn kron(&self, other: &Matrix) -> Self {
        let (r2, c2) = other.shape();
        let mut out = Self::zeros_in(&self.vars, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// [[a, b], [c, d]] from four blocks with compatible shapes.
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Matrix::vstack(&Matrix::hstack(a, b), &Matrix::hstack(c, d))
    }

    pub fn hstack(a: &Matrix, b: &Matrix) -> Self {
        assert_eq!(a.rows, b.rows, "row mismatch in hstack");
        let mut out = Self::zeros_in(&a.vars, a.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                out.set(r, c, a.get(r, c).clone());
            }
            for c in 0..b.cols {
                out.set(r, a.cols + c, b.get(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(a: &Matrix, b: &Matrix) -> Self {
        assert_eq!(a.cols, b.cols, "column mismatch in vstack");
        let mut data = a.data.clone();
        data.extend(b.data.iter().cloned());
        Matrix { rows: a.rows + b.rows, cols: a.cols, data, vars: a.vars.clone() }
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Self {
        let z1 = Self::zeros_in(&a.vars, a.rows, b.cols);
        let z2 = Self::zeros_in(&a.vars, b.rows, a.cols);
        Self::block2(a, &z1, &z2, b)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros_in(&self.vars, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<RationalFunction> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn col_vector(vars: &Arc<[String]>, v: &[RationalFunction]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec(), vars: vars.clone() }
    }

    pub fn trace(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero(&self.vars);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Row echelon form by exact Gaussian elimination; returns the rank.
    pub fn rank(&self) -> usize {
        let mut m = self.row_vecs();
        let (rows, cols) = self.shape();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][c].inv();
            for r in (rank + 1)..rows {
                if m[r][c].is_zero() {
                    continue;
                }
                let factor = &m[r][c] * &inv;
                let (top, rest) = m.split_at_mut(r);
                for (dst, p) in rest[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                    if !p.is_zero() {
                        *dst = &*dst - &(&factor * p);
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut b = Matrix::zeros_in(&self.vars, n, n).row_vecs();
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = RationalFunction::one(&self.vars);
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            b.swap(c, p);
            let inv = a[c][c].inv();
            for k in 0..n {
                a[c][k] = &a[c][k] * &inv;
                b[c][k] = &b[c][k] * &inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    if !a[c][k].is_zero() {
                        a[r][k] = &a[r][k] - &(&f * &a[c][k]);
                    }
                    if !b[c][k].is_zero() {
                        b[r][k] = &b[r][k] - &(&f * &b[c][k]);
                    }
                }
            }
        }
        Some(Matrix { rows: n, cols: n, data: b.into_iter().flatten().collect(), vars: self.vars.clone() })
    }

    pub fn determinant(&self) -> Option<RationalFunction> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = RationalFunction::one(&self.vars);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Some(RationalFunction::zero(&self.vars));
            };
            if p != c {
                a.swap(c, p);
                det = det.neg();
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv();
            for r in (c + 1)..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                let (top, rest) = a.split_at_mut(r);
                for (dst, p) in rest[0][c..n].iter_mut().zip(&top[c][c..n]) {
                    if !p.is_zero() {
                        *dst = &*dst - &(&f * p);
                    }
                }
            }
        }
        Some(det)
    }

    /// First differing entry in row-major order, or `None` if equal.
    pub fn first_difference(&self, other: &Matrix) -> Option<Mismatch> {
        if self.shape() != other.shape() {
            return Some(Mismatch {
                row: usize::MAX,
                col: usize::MAX,
                left: format!("shape {:?}", self.shape()),
                right: format!("shape {:?}", other.shape()),
            });
        }
        let idx = self.data.iter().zip(&other.data).position(|(a, b)| a != b)?;
        Some(Mismatch { row: idx / self.cols, col: idx % self.cols, left: self.data[idx].to_string(), right: other.data[idx].to_string() })
    }

    /// Entries as printed strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

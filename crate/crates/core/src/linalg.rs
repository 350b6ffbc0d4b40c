//! Dense exact matrices, row reduction and canonical subspaces.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};

/// Row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
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

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { field, rows: nrows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v, self.field)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector/matrix shape mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(x * a);
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = self.rows().map(|r| r.to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (Matrix::from_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = self.rows().map(|r| r.to_vec()).collect();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let factor = &rows[r][c] * &inv;
                let (top, bottom) = rows.split_at_mut(r);
                for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(JordanError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return Err(JordanError::SingularMatrix);
        }
        Ok(Matrix::from_rows(self.field, n, rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows().map(|r| r.to_vec()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Gauss-Jordan elimination on the first `cols` columns; returns pivot columns.
/// Nonzero rows end up first, in pivot order, with unit pivots.
pub(crate) fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vec(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// All vectors of `F_p^n` in lexicographic residue order.
pub fn all_vectors(field: FieldSpec, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let elems = field.enumerate()?;
    let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out)
}

/// A linear subspace of `K^n`, stored by its canonical RREF basis so that
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(field, 0, n) }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(field, n) }
    }

    pub fn span(field: FieldSpec, n: usize, vectors: &[Vec<Scalar>]) -> Self {
        let m = Matrix::from_rows(field, n, vectors.to_vec());
        let (basis, _) = m.rref();
        Subspace { ambient_dim: n, basis }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.rows().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero basis row")).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        // reduce v against the RREF basis
        let mut w = v.to_vec();
        for (row, p) in self.basis.rows().zip(self.pivots()) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        is_zero_vec(&w)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.rows().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.field(), self.ambient_dim, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(f, self.ambient_dim);
        }
        // solve sum x_i u_i - sum y_j w_j = 0
        let mut m = Matrix::zeros(f, self.ambient_dim, a + b);
        for (i, u) in self.basis.rows().enumerate() {
            for (k, x) in u.iter().enumerate() {
                m.set(k, i, x.clone());
            }
        }
        for (j, w) in other.basis.rows().enumerate() {
            for (k, x) in w.iter().enumerate() {
                m.set(k, a + j, -x);
            }
        }
        let vecs: Vec<Vec<Scalar>> = m
            .nullspace()
            .into_iter()
            .map(|sol| {
                let mut v = vec![f.zero(); self.ambient_dim];
                for (i, u) in self.basis.rows().enumerate() {
                    axpy(&mut v, &sol[i], u);
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient_dim, &vecs)
    }

    /// Image of this subspace under `x -> m x`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vec<Scalar>> = self.basis.rows().map(|r| m.mul_vec(r)).collect();
        Subspace::span(self.field(), m.nrows(), &vs)
    }

    /// Embeds into `K^total` by placing coordinates at `offset..offset+n`.
    pub fn embed(&self, total: usize, offset: usize) -> Subspace {
        let f = self.field();
        let vs: Vec<Vec<Scalar>> = self
            .basis
            .rows()
            .map(|r| {
                let mut v = vec![f.zero(); total];
                v[offset..offset + self.ambient_dim].clone_from_slice(r);
                v
            })
            .collect();
        Subspace::span(f, total, &vs)
    }

    /// Every vector of the subspace, for prime fields.
    pub fn elements(&self) -> Result<Vec<Vec<Scalar>>> {
        let f = self.field();
        let coeffs = all_vectors(f, self.dim())?;
        Ok(coeffs
            .iter()
            .map(|c| {
                let mut v = vec![f.zero(); self.ambient_dim];
                for (x, r) in c.iter().zip(self.basis.rows()) {
                    axpy(&mut v, x, r);
                }
                v
            })
            .collect())
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(q(), &[&[1, 1, 0], &[1, -1, 0], &[0, 0, 2]]);
        assert_eq!(m.determinant(), q().from_i64(-4));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 3));
        let singular = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(JordanError::SingularMatrix));
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn determinant_matches_leibniz_mod_7() {
        let f = FieldSpec::Prime(7);
        let m = Matrix::from_i64(f, &[&[2, 3, 1], &[4, 0, 5], &[6, 1, 1]]);
        // 2(0-5) - 3(4-30) + 1(4-0) = -10 + 78 + 4 = 72
        assert_eq!(m.determinant(), f.from_i64(72));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn canonical_subspaces() {
        let f = q();
        let a = Subspace::span(
            f,
            3,
            &[vec![f.from_i64(1), f.from_i64(1), f.zero()], vec![f.zero(), f.from_i64(2), f.zero()]],
        );
        let b = Subspace::span(
            f,
            3,
            &[vec![f.from_i64(3), f.zero(), f.zero()], vec![f.from_i64(1), f.from_i64(-1), f.zero()]],
        );
        assert_eq!(a, b);
        let c = Subspace::span(f, 3, &[vec![f.zero(), f.from_i64(1), f.from_i64(1)]]);
        assert_eq!(a.intersect(&c).dim(), 0);
        assert_eq!(a.sum(&c), Subspace::full(f, 3));
        let d =
            Subspace::span(f, 3, &[vec![f.zero(), f.from_i64(1), f.zero()], vec![f.zero(), f.zero(), f.from_i64(1)]]);
        let i = a.intersect(&d);
        assert_eq!(i, Subspace::span(f, 3, &[unit_vec(f, 3, 1)]));
    }

    #[test]
    fn enumerate_subspace_elements() {
        let f = FieldSpec::Prime(3);
        let s = Subspace::span(f, 3, &[unit_vec(f, 3, 0), unit_vec(f, 3, 2)]);
        let els = s.elements().unwrap();
        assert_eq!(els.len(), 9);
        assert!(els.iter().all(|v| s.contains(v)));
    }
}

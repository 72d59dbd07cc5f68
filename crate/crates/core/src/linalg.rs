//! Dense exact linear algebra: vectors, matrices, 3-tensors, echelon forms,
//! nullspaces and deterministic enumeration of prime-field tuples.
//!
//! Subspaces are always kept in reduced row echelon form with leading
//! coefficient 1, so two subspaces are equal exactly when their stored bases
//! are equal as data.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A coordinate vector with all entries in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        debug_assert!(entries.iter().all(|s| s.field() == field));
        Vector { field, entries }
    }

    pub fn zero(field: FieldSpec, len: usize) -> Self {
        Vector {
            field,
            entries: vec![field.zero(); len],
        }
    }

    pub fn unit(field: FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Vector::zero(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn from_ints(field: FieldSpec, ints: &[i64]) -> Self {
        Vector {
            field,
            entries: ints.iter().map(|&n| field.integer(n)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.entries[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Adds `c * other` into `self`.
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = &*a + &(b * c);
        }
    }

    /// Pairing of a covector with a vector.
    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.len(), other.len());
        let mut acc = self.field.zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Concatenation, used for block vectors of product algebras.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Vector {
            field: self.field,
            entries,
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries[range].to_vec(),
        }
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.entries.iter().map(Scalar::to_text).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A dense matrix, row-major. A linear map `X -> Y` is stored with
/// `rows = dim Y`, `cols = dim X`; column `j` is the image of the j-th basis
/// vector of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vector::len);
        debug_assert!(rows.iter().all(|r| r.len() == cols && r.field() == field));
        Matrix {
            field,
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.entries.iter().cloned()).collect(),
        }
    }

    pub fn from_cols(field: FieldSpec, cols: &[Vector]) -> Self {
        Matrix::from_rows(field, cols).transpose()
    }

    pub fn from_int_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let vecs: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(field, r)).collect();
        Matrix::from_rows(field, &vecs)
    }

    /// Rank-one matrix `col * row^T`.
    pub fn outer(col: &Vector, row: &Vector) -> Matrix {
        let field = col.field();
        let mut m = Matrix::zero(field, col.len(), row.len());
        for r in 0..col.len() {
            for c in 0..row.len() {
                m.set(r, c, col.get(r) * row.get(c));
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> Vector {
        Vector {
            field: self.field,
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c).clone();
                    out.set(r, c, &cur + &(a * other.get(k, c)));
                }
            }
        }
        out
    }

    /// Matrix-vector application, `self` acting on column coordinates.
    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.cols, v.len());
        let mut out = Vector::zero(self.field, self.rows);
        for r in 0..self.rows {
            let mut acc = self.field.zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    acc = &acc + &(a * v.get(c));
                }
            }
            out.entries[r] = acc;
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// column of every pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let Some(src) = found else { continue };
            self.swap_rows(pivot_row, src);
            let inv = self.get(pivot_row, col).inv().expect("nonzero pivot");
            self.scale_row(pivot_row, &inv);
            for r in 0..self.rows {
                if r != pivot_row && !self.get(r, col).is_zero() {
                    let factor = -self.get(r, col);
                    self.add_scaled_row(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse via Gauss-Jordan on the augmented matrix.
    pub fn invert(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Canonical basis of the right nullspace `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let pivot_of_row: Vec<usize> = pivots.clone();
        let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
        let mut raw = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = Vector::zero(self.field, self.cols);
            v.set(free, self.field.one());
            for (r, &pc) in pivot_of_row.iter().enumerate() {
                let coeff = reduced.get(r, free);
                if !coeff.is_zero() {
                    v.set(pc, -coeff);
                }
            }
            raw.push(v);
        }
        Subspace::from_rows(self.field, self.cols, &raw).into_basis()
    }

    pub fn flatten(&self) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.clone(),
        }
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, flat: &Vector) -> Matrix {
        debug_assert_eq!(flat.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            entries: flat.entries.clone(),
        }
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).to_texts()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = &self.entries[r * self.cols + c] * factor;
            self.entries[r * self.cols + c] = v;
        }
    }

    /// row[dst] += factor * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let t = &self.entries[src * self.cols + c] * factor;
            let v = &self.entries[dst * self.cols + c] + &t;
            self.entries[dst * self.cols + c] = v;
        }
    }
}

/// A 3-tensor encoding a bilinear map `X x Y -> Z`: entry `(i, j, l)` is the
/// l-th coordinate of the image of the (i, j)-th basis pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor3 {
    field: FieldSpec,
    dims: (usize, usize, usize),
    entries: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zero(field: FieldSpec, dims: (usize, usize, usize)) -> Self {
        Tensor3 {
            field,
            dims,
            entries: vec![field.zero(); dims.0 * dims.1 * dims.2],
        }
    }

    pub fn from_entries(
        field: FieldSpec,
        dims: (usize, usize, usize),
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let mut t = Tensor3::zero(field, dims);
        for (i, j, l, s) in entries {
            if *i >= dims.0 || *j >= dims.1 || *l >= dims.2 {
                return Err(Error::DimensionMismatch {
                    context: format!("tensor entry ({i},{j},{l}) outside {dims:?}"),
                });
            }
            if s.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: s.field(),
                });
            }
            t.set(*i, *j, *l, s.clone());
        }
        Ok(t)
    }

    pub fn from_int_entries(
        field: FieldSpec,
        dims: (usize, usize, usize),
        entries: &[(usize, usize, usize, i64)],
    ) -> Result<Self> {
        let scalars: Vec<(usize, usize, usize, Scalar)> = entries
            .iter()
            .map(|&(i, j, l, n)| (i, j, l, field.integer(n)))
            .collect();
        Tensor3::from_entries(field, dims, &scalars)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + l
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> &Scalar {
        &self.entries[self.index(i, j, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, l: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        let idx = self.index(i, j, l);
        self.entries[idx] = value;
    }

    /// The image of the basis pair `(i, j)` as a vector in `Z`.
    pub fn fiber(&self, i: usize, j: usize) -> Vector {
        let start = self.index(i, j, 0);
        Vector {
            field: self.field,
            entries: self.entries[start..start + self.dims.2].to_vec(),
        }
    }

    /// Bilinear evaluation on arbitrary coordinate vectors.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Vector {
        debug_assert_eq!(x.len(), self.dims.0);
        debug_assert_eq!(y.len(), self.dims.1);
        let mut out = Vector::zero(self.field, self.dims.2);
        for i in 0..self.dims.0 {
            let a = x.get(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dims.1 {
                let b = y.get(j);
                if b.is_zero() {
                    continue;
                }
                let c = a * b;
                for l in 0..self.dims.2 {
                    let t = self.get(i, j, l);
                    if !t.is_zero() {
                        let v = &out.entries[l] + &(&c * t);
                        out.entries[l] = v;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Non-zero entries in lexicographic (i, j, l) order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dims.0 {
            for j in 0..self.dims.1 {
                for l in 0..self.dims.2 {
                    let s = self.get(i, j, l);
                    if !s.is_zero() {
                        out.push((i, j, l, s.clone()));
                    }
                }
            }
        }
        out
    }

    /// Writes `v` into the fiber at `(i, j)`.
    pub fn set_fiber(&mut self, i: usize, j: usize, v: &Vector) {
        debug_assert_eq!(v.len(), self.dims.2);
        for l in 0..self.dims.2 {
            self.set(i, j, l, v.get(l).clone());
        }
    }
}

/// A subspace of a coordinate space, stored as a reduced-echelon row basis.
/// Equal subspaces compare equal as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(field: FieldSpec, ambient: usize, rows: &[Vector]) -> Self {
        let mut m = Matrix::from_rows(field, rows);
        if rows.is_empty() {
            m = Matrix::zero(field, 0, ambient);
        }
        let pivots = m.rref();
        let rank = pivots.len();
        let basis = Matrix {
            field,
            rows: rank,
            cols: ambient,
            entries: m.entries[..rank * ambient].to_vec(),
        };
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace::from_rows(field, ambient, &[])
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let rows: Vec<Vector> = (0..ambient)
            .map(|i| Vector::unit(field, ambient, i))
            .collect();
        Subspace::from_rows(field, ambient, &rows)
    }

    /// Span of unit coordinate vectors at the given indices.
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: &[usize]) -> Self {
        let rows: Vec<Vector> = indices
            .iter()
            .map(|&i| Vector::unit(field, ambient, i))
            .collect();
        Subspace::from_rows(field, ambient, &rows)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.dim()).map(|r| self.basis.row(r)).collect()
    }

    pub fn into_basis(self) -> Vec<Vector> {
        (0..self.dim()).map(|r| self.basis.row(r)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords_of(&self, v: &Vector) -> Option<Vector> {
        debug_assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&c| v.get(c).clone()).collect();
        let mut residual = v.clone();
        for (r, coeff) in coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                let row = self.basis.row(r);
                residual.add_scaled(&row, &-coeff);
            }
        }
        if residual.is_zero() {
            Some(Vector::new(self.field, coeffs))
        } else {
            None
        }
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn vector_from_coords(&self, coords: &Vector) -> Vector {
        debug_assert_eq!(coords.len(), self.dim());
        let mut out = Vector::zero(self.field, self.ambient);
        for r in 0..self.dim() {
            out.add_scaled(&self.basis.row(r), coords.get(r));
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_rows(self.field, self.ambient, &rows)
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }
}

/// Deterministic lexicographic enumeration of all tuples over a prime field.
pub fn enumerate_tuples(
    field: FieldSpec,
    len: usize,
) -> Result<impl Iterator<Item = Vector> + Clone> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::UnsupportedEnumeration);
    };
    let total = tuple_count(p, len);
    Ok((0..total).map(move |idx| tuple_at(field, len, idx)))
}

/// Number of tuples, `p^len`, saturating so callers can budget-check it.
pub fn tuple_count(p: u64, len: usize) -> u128 {
    (p as u128)
        .checked_pow(len as u32)
        .unwrap_or(u128::MAX)
}

/// The `idx`-th tuple in lexicographic order (leftmost digit most
/// significant).
pub fn tuple_at(field: FieldSpec, len: usize, mut idx: u128) -> Vector {
    let FieldSpec::Prime(p) = field else {
        panic!("tuple_at requires a prime field");
    };
    let mut digits = vec![0u64; len];
    for slot in (0..len).rev() {
        digits[slot] = (idx % p as u128) as u64;
        idx /= p as u128;
    }
    Vector::new(
        field,
        digits
            .into_iter()
            .map(|value| Scalar::Residue { value, p })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn kernel_of_zero_map_is_standard_basis() {
        let m = Matrix::zero(q(), 2, 3);
        let basis = m.kernel();
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            assert_eq!(*v, Vector::unit(q(), 3, i));
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(q(), 3);
        assert!(m.kernel().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn kernel_matches_hand_elimination() {
        // [[1,1,0],[0,0,1]] has nullspace spanned by (1,-1,0).
        let m = Matrix::from_int_rows(q(), &[&[1, 1, 0], &[0, 0, 1]]);
        let basis = m.kernel();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], Vector::from_ints(q(), &[1, -1, 0]));
    }

    #[test]
    fn rank_of_proportional_rows() {
        let m = Matrix::from_int_rows(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = Matrix::from_int_rows(q(), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank() + m.kernel().len(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_int_rows(q(), &[&[2, 1], &[7, 4]]);
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let singular = Matrix::from_int_rows(q(), &[&[1, 2], &[2, 4]]);
        assert!(singular.invert().is_none());
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::from_rows(
            q(),
            3,
            &[
                Vector::from_ints(q(), &[1, 1, 0]),
                Vector::from_ints(q(), &[0, 2, 2]),
            ],
        );
        let b = Subspace::from_rows(
            q(),
            3,
            &[
                Vector::from_ints(q(), &[2, 2, 0]),
                Vector::from_ints(q(), &[1, 2, 1]),
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&Vector::from_ints(q(), &[3, 4, 1])));
        assert!(!a.contains(&Vector::from_ints(q(), &[0, 0, 1])));
    }

    #[test]
    fn subspace_coords_round_trip() {
        let s = Subspace::from_rows(
            q(),
            3,
            &[
                Vector::from_ints(q(), &[1, 1, 0]),
                Vector::from_ints(q(), &[0, 0, 3]),
            ],
        );
        let v = Vector::from_ints(q(), &[2, 2, -3]);
        let coords = s.coords_of(&v).unwrap();
        assert_eq!(s.vector_from_coords(&coords), v);
    }

    #[test]
    fn tuple_enumeration_order_and_count() {
        let f2 = FieldSpec::prime(2).unwrap();
        let tuples: Vec<Vector> = enumerate_tuples(f2, 1).unwrap().collect();
        assert_eq!(tuples.len(), 2);
        assert_eq!(tuples[0], Vector::from_ints(f2, &[0]));
        assert_eq!(tuples[1], Vector::from_ints(f2, &[1]));

        let quads: Vec<Vector> = enumerate_tuples(f2, 2).unwrap().collect();
        assert_eq!(quads.len(), 4);

        let f3 = FieldSpec::prime(3).unwrap();
        let nine: Vec<Vector> = enumerate_tuples(f3, 2).unwrap().collect();
        assert_eq!(nine.len(), 9);
        assert_eq!(nine[0], Vector::from_ints(f3, &[0, 0]));
        assert_eq!(nine[8], Vector::from_ints(f3, &[2, 2]));
        let mut sorted = nine.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        assert_eq!(sorted, nine);

        assert!(enumerate_tuples(FieldSpec::Rational, 2).is_err());
    }
}

//! Dense exact matrices, the commutator/Kronecker toolbox, and the
//! [`AlgebraOp`] abstraction shared with sparse operators.

use crate::scalar::ExactScalar;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

/// Shape disagreement between two operands.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("dimension mismatch: {a_rows}x{a_cols} vs {b_rows}x{b_cols}")]
pub struct ShapeError {
    /// Rows of the left operand.
    pub a_rows: usize,
    /// Columns of the left operand.
    pub a_cols: usize,
    /// Rows of the right operand.
    pub b_rows: usize,
    /// Columns of the right operand.
    pub b_cols: usize,
}

/// A dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: ExactScalar> Matrix<S> {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// The n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, S::one());
        }
        m
    }

    /// Builds entry-by-entry from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from nested row vectors; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows: expected uniform length {ncols}"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Immutable entry access.
    pub fn get(&self, r: usize, c: usize) -> &S {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.data[r * self.cols + c]
    }

    /// Entry assignment.
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r * self.cols + c] = v;
    }

    fn shape_err(&self, o: &Self) -> ShapeError {
        ShapeError {
            a_rows: self.rows,
            a_cols: self.cols,
            b_rows: o.rows,
            b_cols: o.cols,
        }
    }

    /// Entrywise sum; panics on shape mismatch.
    pub fn add(&self, o: &Self) -> Self {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{}",
            self.shape_err(o)
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| {
                    let mut s = a.clone();
                    s += b;
                    s
                })
                .collect(),
        }
    }

    /// Entrywise difference; panics on shape mismatch.
    pub fn sub(&self, o: &Self) -> Self {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{}",
            self.shape_err(o)
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| {
                    let mut s = a.clone();
                    s -= b;
                    s
                })
                .collect(),
        }
    }

    /// Entrywise negation.
    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.mul_ref(s))
    }

    /// Applies `f` to every entry.
    pub fn map<T: ExactScalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Matrix product, checking shapes.
    pub fn try_mul(&self, o: &Self) -> Result<Self, ShapeError> {
        if self.cols != o.rows {
            return Err(self.shape_err(o));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_ref(b);
                    let cell = &mut out.data[r * o.cols + c];
                    *cell += &prod;
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, o: &Self) -> Self {
        match self.try_mul(o) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Trace; panics when not square.
    pub fn trace(&self) -> S {
        assert!(self.rows == self.cols, "trace of non-square matrix");
        let mut t = S::zero();
        for k in 0..self.rows {
            t += self.get(k, k);
        }
        t
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// The first (row-major) nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &S)> {
        self.data
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k / self.cols, k % self.cols, v))
    }

    /// Canonical strings of every entry, row by row. This is the dump
    /// format for matrices: a JSON array of arrays of these strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

impl<S: ExactScalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Matrix product as a free function.
pub fn mat_mul<S: ExactScalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    a.mul(b)
}

/// Kronecker product with row-major index pairing: entry
/// ((a·rows_b + c), (b·cols_b + d)) = A[a,b] · B[c,d].
pub fn kron<S: ExactScalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ra in 0..a.rows() {
        for ca in 0..a.cols() {
            let av = a.get(ra, ca);
            if av.is_zero() {
                continue;
            }
            for rb in 0..b.rows() {
                for cb in 0..b.cols() {
                    let bv = b.get(rb, cb);
                    if bv.is_zero() {
                        continue;
                    }
                    out.set(ra * b.rows() + rb, ca * b.cols() + cb, av.mul_ref(bv));
                }
            }
        }
    }
    out
}

/// `[a, b] = ab − ba`.
pub fn commutator<S: ExactScalar, O: AlgebraOp<S>>(a: &O, b: &O) -> O {
    a.commutator(b)
}

/// `{a, b} = ab + ba`.
pub fn anticommutator<S: ExactScalar, O: AlgebraOp<S>>(a: &O, b: &O) -> O {
    a.anticommutator(b)
}

/// The linear-operator interface shared by dense matrices and sparse
/// operators, so identity checkers can be written once.
pub trait AlgebraOp<S: ExactScalar>: Clone + PartialEq + Sized + Send + Sync {
    /// (rows, cols).
    fn op_shape(&self) -> (usize, usize);
    /// Zero operator of the same shape.
    fn zero_like(&self) -> Self;
    /// Identity of the same (square) shape.
    fn identity_like(&self) -> Self;
    /// Sum.
    fn add_op(&self, o: &Self) -> Self;
    /// Difference.
    fn sub_op(&self, o: &Self) -> Self;
    /// Negation.
    fn neg_op(&self) -> Self;
    /// Scalar multiple.
    fn scale_op(&self, s: &S) -> Self;
    /// Product.
    fn mul_op(&self, o: &Self) -> Self;
    /// Exact-zero test.
    fn is_zero_op(&self) -> bool;
    /// First nonzero entry in row-major order, as an owned witness.
    fn first_nonzero_entry(&self) -> Option<(usize, usize, S)>;
    /// Entry at (row, col), owned. Zero outside the stored support.
    fn entry_at(&self, row: usize, col: usize) -> S;
    /// Number of stored nonzero entries.
    fn nnz(&self) -> usize;

    /// `[self, o]`.
    fn commutator(&self, o: &Self) -> Self {
        self.mul_op(o).sub_op(&o.mul_op(self))
    }

    /// `{self, o}`.
    fn anticommutator(&self, o: &Self) -> Self {
        self.mul_op(o).add_op(&o.mul_op(self))
    }
}

impl<S: ExactScalar> AlgebraOp<S> for Matrix<S> {
    fn op_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.rows, self.cols)
    }
    fn identity_like(&self) -> Self {
        assert!(self.rows == self.cols, "identity for non-square shape");
        Matrix::identity(self.rows)
    }
    fn add_op(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_op(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn neg_op(&self) -> Self {
        self.neg()
    }
    fn scale_op(&self, s: &S) -> Self {
        self.scale(s)
    }
    fn mul_op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn is_zero_op(&self) -> bool {
        self.is_zero()
    }
    fn first_nonzero_entry(&self) -> Option<(usize, usize, S)> {
        self.first_nonzero().map(|(r, c, v)| (r, c, v.clone()))
    }
    fn entry_at(&self, row: usize, col: usize) -> S {
        self.get(row, col).clone()
    }
    fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Writes `target` as a linear combination of `basis`, if possible.
///
/// Returns the coefficient vector of one solution (exact Gaussian
/// elimination; basis elements without a pivot get coefficient zero), or
/// `None` when the system is inconsistent — i.e. `target` lies outside the
/// span. Uniqueness of the returned coefficients is the caller's concern
/// and holds whenever the basis is linearly independent, which
/// [`basis_rank`] can certify.
pub fn express_in_basis<S: ExactScalar>(
    target: &Matrix<S>,
    basis: &[&Matrix<S>],
) -> Option<Vec<S>> {
    let k = basis.len();
    for b in basis {
        assert!(
            b.rows() == target.rows() && b.cols() == target.cols(),
            "basis shape differs from target"
        );
    }
    // One linear equation per matrix entry: sum_j coeff_j * basis_j[e] = target[e].
    let rows = target.rows() * target.cols();
    let mut tab: Vec<Vec<S>> = (0..rows)
        .map(|e| {
            let (r, c) = (e / target.cols(), e % target.cols());
            let mut row: Vec<S> = basis.iter().map(|b| b.get(r, c).clone()).collect();
            row.push(target.get(r, c).clone());
            row
        })
        .collect();

    let mut pivot_rows: Vec<Option<usize>> = vec![None; k];
    let mut next_row = 0usize;
    for col in 0..k {
        let Some(p) = (next_row..rows).find(|&r| !tab[r][col].is_zero()) else {
            continue;
        };
        tab.swap(next_row, p);
        let inv = tab[next_row][col].inv().expect("pivot is nonzero");
        for v in tab[next_row].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        for r in 0..rows {
            if r != next_row && !tab[r][col].is_zero() {
                let factor = tab[r][col].clone();
                for j in 0..=k {
                    let delta = factor.mul_ref(&tab[next_row][j]);
                    tab[r][j] -= &delta;
                }
            }
        }
        pivot_rows[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // Any leftover row reading 0 = nonzero means target is outside the span.
    for r in next_row..rows {
        if !tab[r][k].is_zero() {
            return None;
        }
    }
    Some(
        pivot_rows
            .iter()
            .map(|p| match p {
                Some(r) => tab[*r][k].clone(),
                None => S::zero(),
            })
            .collect(),
    )
}

/// Rank of a family of equal-shaped matrices viewed as vectors.
pub fn basis_rank<S: ExactScalar>(basis: &[&Matrix<S>]) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let (rows, cols) = (basis[0].rows(), basis[0].cols());
    let dim = rows * cols;
    let mut reduced: Vec<Vec<S>> = Vec::new();
    for b in basis {
        assert!(b.rows() == rows && b.cols() == cols, "mixed shapes in basis");
        let mut v: Vec<S> = b.data.clone();
        for prev in &reduced {
            let lead = prev
                .iter()
                .position(|x| !x.is_zero())
                .expect("stored rows are nonzero");
            if !v[lead].is_zero() {
                let factor = v[lead].mul_ref(&prev[lead].inv().expect("lead nonzero"));
                for j in 0..dim {
                    let delta = factor.mul_ref(&prev[j]);
                    v[j] -= &delta;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            reduced.push(v);
        }
    }
    reduced.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;

    type M = Matrix<GaussRational>;

    fn from_ints(rows: &[&[i64]]) -> M {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussRational::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn product_against_hand_computed_values() {
        let a = from_ints(&[&[1, 2], &[3, 4]]);
        let b = from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(b.mul(&a), from_ints(&[&[3, 4], &[1, 2]]));
    }

    #[test]
    fn shape_mismatch_is_reported_with_both_shapes() {
        let a = M::zeros(2, 3);
        let b = M::zeros(2, 3);
        let err = a.try_mul(&b).unwrap_err();
        assert_eq!(err.to_string(), "dimension mismatch: 2x3 vs 2x3");
    }

    #[test]
    fn kron_pairs_indices_row_major() {
        // kron(E01, E10) must live at row 0*2+1, col 1*2+0.
        let e01 = from_ints(&[&[0, 1], &[0, 0]]);
        let e10 = from_ints(&[&[0, 0], &[1, 0]]);
        let k = kron(&e01, &e10);
        assert_eq!(k.first_nonzero(), Some((1, 2, &GaussRational::from_int(1))));
    }

    #[test]
    fn express_in_basis_finds_exact_coefficients() {
        let b1 = from_ints(&[&[1, 0], &[0, 1]]);
        let b2 = from_ints(&[&[0, 1], &[1, 0]]);
        let target = from_ints(&[&[3, -2], &[-2, 3]]);
        let coeffs = express_in_basis(&target, &[&b1, &b2]).unwrap();
        assert_eq!(coeffs[0], GaussRational::from_int(3));
        assert_eq!(coeffs[1], GaussRational::from_int(-2));
        // Something outside the span is rejected.
        let outside = from_ints(&[&[1, 0], &[0, 0]]);
        assert!(express_in_basis(&outside, &[&b1, &b2]).is_none());
        assert_eq!(basis_rank(&[&b1, &b2]), 2);
        let b3 = b1.add(&b2);
        assert_eq!(basis_rank(&[&b1, &b2, &b3]), 2);
    }
}

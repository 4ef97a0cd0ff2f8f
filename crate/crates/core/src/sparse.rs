//! Sparse square operators. Above dimension ~10³ (monodromy and Fock
//! spaces) these are the only practical carrier; the representation stores
//! no explicit zeros, so operator equality is plain structural equality.

use crate::matrix::{AlgebraOp, Matrix};
use crate::scalar::ExactScalar;
use std::collections::BTreeMap;

/// A square sparse operator: row index → (column index → nonzero value).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseOp<S> {
    dim: usize,
    rows: BTreeMap<u32, BTreeMap<u32, S>>,
}

impl<S: ExactScalar> SparseOp<S> {
    /// The zero operator on a space of the given dimension.
    pub fn new(dim: usize) -> Self {
        assert!(dim <= u32::MAX as usize, "dimension exceeds index range");
        SparseOp {
            dim,
            rows: BTreeMap::new(),
        }
    }

    /// The identity operator.
    pub fn identity(dim: usize) -> Self {
        let mut m = SparseOp::new(dim);
        for k in 0..dim as u32 {
            m.add_to(k, k, S::one());
        }
        m
    }

    /// Builds from (row, col, value) triples, accumulating duplicates.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (u32, u32, S)>) -> Self {
        let mut m = SparseOp::new(dim);
        for (r, c, v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    /// Space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `v` into entry (r, c), dropping the entry if it cancels to zero.
    pub fn add_to(&mut self, r: u32, c: u32, v: S) {
        assert!(
            (r as usize) < self.dim && (c as usize) < self.dim,
            "index ({r},{c}) out of range for dim {}",
            self.dim
        );
        if v.is_zero() {
            return;
        }
        let row = self.rows.entry(r).or_default();
        match row.get_mut(&c) {
            Some(cell) => {
                *cell += &v;
                if cell.is_zero() {
                    row.remove(&c);
                    if self.rows.get(&r).is_some_and(BTreeMap::is_empty) {
                        self.rows.remove(&r);
                    }
                }
            }
            None => {
                row.insert(c, v);
            }
        }
    }

    /// Entry at (r, c), if nonzero.
    pub fn get(&self, r: u32, c: u32) -> Option<&S> {
        self.rows.get(&r).and_then(|row| row.get(&c))
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &S)> {
        self.rows
            .iter()
            .flat_map(|(&r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    /// Sum of two operators.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch: {} vs {}", self.dim, o.dim);
        let mut out = self.clone();
        for (r, c, v) in o.entries() {
            out.add_to(r, c, v.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch: {} vs {}", self.dim, o.dim);
        let mut out = self.clone();
        for (r, c, v) in o.entries() {
            out.add_to(r, c, -v.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.mul_ref(s))
    }

    /// Applies `f` to every stored value, pruning anything that maps to zero.
    pub fn map<T: ExactScalar>(&self, f: impl Fn(&S) -> T) -> SparseOp<T> {
        let mut out = SparseOp::new(self.dim);
        for (r, c, v) in self.entries() {
            out.add_to(r, c, f(v));
        }
        out
    }

    /// Operator product, row-sparse against row-sparse.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch: {} vs {}", self.dim, o.dim);
        let mut out = SparseOp::new(self.dim);
        for (&r, row) in &self.rows {
            let mut acc: BTreeMap<u32, S> = BTreeMap::new();
            for (k, a) in row {
                if let Some(brow) = o.rows.get(k) {
                    for (&c, b) in brow {
                        let prod = a.mul_ref(b);
                        match acc.get_mut(&c) {
                            Some(cell) => *cell += &prod,
                            None => {
                                acc.insert(c, prod);
                            }
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                out.rows.insert(r, acc);
            }
        }
        out
    }

    /// Kronecker product with the same row-major pairing as the dense
    /// [`crate::matrix::kron`].
    pub fn kron(&self, o: &Self) -> Self {
        let dim = self.dim * o.dim;
        let od = o.dim as u32;
        let mut out = SparseOp::new(dim);
        for (ra, ca, va) in self.entries() {
            for (rb, cb, vb) in o.entries() {
                out.add_to(ra * od + rb, ca * od + cb, va.mul_ref(vb));
            }
        }
        out
    }

    /// Dense copy.
    pub fn to_dense(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m.set(r as usize, c as usize, v.clone());
        }
        m
    }

    /// Sparse copy of a square dense matrix.
    pub fn from_dense(m: &Matrix<S>) -> Self {
        assert_eq!(m.rows(), m.cols(), "sparse operators are square");
        let mut out = SparseOp::new(m.rows());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if !v.is_zero() {
                    out.add_to(r as u32, c as u32, v.clone());
                }
            }
        }
        out
    }

    /// True when no entries are stored.
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Trace.
    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for (&r, row) in &self.rows {
            if let Some(v) = row.get(&r) {
                t += v;
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        let mut out = SparseOp::new(self.dim);
        for (r, c, v) in self.entries() {
            out.add_to(c, r, v.conj());
        }
        out
    }

    /// Largest bit length among stored scalars (0 for the zero operator).
    pub fn max_bit_len(&self) -> u64 {
        self.entries().map(|(_, _, v)| v.bit_len()).max().unwrap_or(0)
    }
}

impl<S: ExactScalar> AlgebraOp<S> for SparseOp<S> {
    fn op_shape(&self) -> (usize, usize) {
        (self.dim, self.dim)
    }
    fn zero_like(&self) -> Self {
        SparseOp::new(self.dim)
    }
    fn identity_like(&self) -> Self {
        SparseOp::identity(self.dim)
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
        self.entries()
            .next()
            .map(|(r, c, v)| (r as usize, c as usize, v.clone()))
    }
    fn entry_at(&self, row: usize, col: usize) -> S {
        self.get(row as u32, col as u32)
            .cloned()
            .unwrap_or_else(S::zero)
    }
    fn nnz(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;

    type Sp = SparseOp<GaussRational>;

    #[test]
    fn cancelling_entries_are_not_stored() {
        let mut m = Sp::new(4);
        m.add_to(1, 2, GaussRational::from_int(5));
        m.add_to(1, 2, GaussRational::from_int(-5));
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
        assert_eq!(m, Sp::new(4));
    }

    #[test]
    fn dense_roundtrip_is_identity() {
        let mut m = Sp::new(3);
        m.add_to(0, 2, GaussRational::ratio(1, 3));
        m.add_to(2, 1, GaussRational::i());
        assert_eq!(Sp::from_dense(&m.to_dense()), m);
    }

    #[test]
    fn sparse_product_matches_dense_product() {
        let mut a = Sp::new(3);
        a.add_to(0, 1, GaussRational::from_int(2));
        a.add_to(1, 2, GaussRational::ratio(1, 2));
        a.add_to(2, 0, GaussRational::i());
        let mut b = Sp::new(3);
        b.add_to(1, 1, GaussRational::from_int(-1));
        b.add_to(2, 0, GaussRational::from_int(3));
        let sparse = a.mul(&b);
        let dense = a.to_dense().mul(&b.to_dense());
        assert_eq!(sparse.to_dense(), dense);
    }

    #[test]
    fn kron_agrees_with_dense_kron() {
        let mut a = Sp::new(2);
        a.add_to(0, 1, GaussRational::from_int(1));
        let mut b = Sp::new(2);
        b.add_to(1, 0, GaussRational::from_int(1));
        let k = a.kron(&b);
        assert_eq!(k.to_dense(), crate::matrix::kron(&a.to_dense(), &b.to_dense()));
    }
}

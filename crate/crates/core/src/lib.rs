//! Exact verification engine for the Yangian of so(5).
//!
//! This crate constructs the algebra in three independent realizations and
//! mechanically checks every defining identity with arbitrary-precision
//! rational arithmetic. Nothing here is numerical: a check passes when a
//! residual is exactly zero and fails otherwise, so there are no tolerances
//! anywhere.
//!
//! The layers, bottom to top:
//!
//! * [`scalar`] — the exact fields: Gaussian rationals Q(i) and the
//!   quadratic extension Q(i, √2), behind the [`scalar::ExactScalar`] trait.
//! * [`matrix`], [`sparse`] — dense matrices and sparse operators with the
//!   commutator/Kronecker toolbox, unified by [`matrix::AlgebraOp`].
//! * [`so5`] — Dirac matrices, the spinor (4×4) and vector (5×5)
//!   representations, the Cartan–Weyl recombination, structure constants.
//! * [`rmatrix`] — the rational R-matrix family on C^N ⊗ C^N and an exact
//!   polynomial-grid certificate of the Yang–Baxter equation.
//! * [`rtt`] — the exchange-relation engine: expands the braid-form RTT
//!   identity into relations among free symbols T⁽ⁿ⁾_ab, builds Lax and
//!   monodromy representations, names components, checks constraint and
//!   recursion identities.
//! * [`drinfeld`] — the two-generator presentation: a-tensor, symmetrized
//!   triple product, linear/quadratic/cubic defining identities, the single
//!   independent cubic (Serre-type) relation.
//! * [`fock`] — four-component lattice fermions under a Jordan–Wigner map,
//!   with the bilocal level-two charges, as a brute-force realization.
//! * [`tables`] — the bundled relation corpora (machine-readable data files)
//!   and their evaluator.
//! * [`report`], [`suites`] — deterministic check reporting and the suite
//!   orchestration used by the `yso5` command-line tool.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod scalar;
pub mod matrix;
pub mod sparse;
pub mod so5;
pub mod rmatrix;
pub mod rtt;
pub mod drinfeld;
pub mod fock;
pub mod tables;
pub mod report;
pub mod suites;

/// The default exact scalar: a Gaussian rational a + b·i with arbitrary
/// precision rational parts. Everything serialized by this crate is one of
/// these.
pub type Scalar = scalar::GaussRational;

/// The extension field Q(i, √2) used wherever the Cartan–Weyl recombination
/// introduces 1/√2 factors.
pub type ExtScalar = scalar::GaussSqrt2;

/// Dense matrix over the default scalar.
pub type DenseMatrix = matrix::Matrix<Scalar>;

/// Sparse operator over the default scalar (the mandatory carrier for
/// Fock-space dimensions).
pub type SparseMatrix = sparse::SparseOp<Scalar>;

//! The so(5) layer: Dirac matrices, the 4-dimensional spinor and
//! 5-dimensional vector representations, structure constants, and the
//! Cartan–Weyl recombination of the ten antisymmetric-tensor generators.
//!
//! Conventions pinned here and relied on everywhere else:
//!
//! * generators are labelled by index pairs `(a, b)` with `1 ≤ a < b ≤ 5`,
//!   extended antisymmetrically (`I_ba = −I_ab`, `I_aa = 0`);
//! * spinor generators are `I_ab = (−i/2) Γᵃ Γᵇ`;
//! * vector generators are `(M_ab)_cd = −i(δ_ac δ_bd − δ_ad δ_bc)`;
//! * both satisfy the defining bracket
//!   `[I_ab, I_cd] = −i(δ_bc I_ad + δ_ad I_bc − δ_ac I_bd − δ_bd I_ac)`.

use crate::matrix::{basis_rank, express_in_basis, AlgebraOp, Matrix};
use crate::scalar::{ExactScalar, GaussRational, HasSqrt2};
use num_traits::Zero;
use thiserror::Error;

/// The ten generator labels `(a, b)`, `a < b`, in lexicographic order. The
/// position of a pair in this array is its basis index throughout the crate.
pub const ADJOINT_PAIRS: [(u8, u8); 10] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Basis index of the ordered pair `(a, b)` with `a < b`.
pub fn pair_index(a: u8, b: u8) -> usize {
    ADJOINT_PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .unwrap_or_else(|| panic!("({a},{b}) is not an ordered generator label"))
}

/// Problems with a candidate set of Dirac matrices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    /// A matrix is not 4×4.
    #[error("gamma^{index} is {rows}x{cols}, expected 4x4")]
    WrongShape {
        /// 1-based matrix label.
        index: u8,
        /// Actual rows.
        rows: usize,
        /// Actual columns.
        cols: usize,
    },
    /// A matrix is not Hermitian.
    #[error("gamma^{index} is not Hermitian")]
    NotHermitian {
        /// 1-based matrix label.
        index: u8,
    },
    /// A matrix has nonzero trace.
    #[error("gamma^{index} has nonzero trace {trace}")]
    NonzeroTrace {
        /// 1-based matrix label.
        index: u8,
        /// The offending trace, canonically printed.
        trace: String,
    },
    /// An anticommutator differs from 2δ_ab·I.
    #[error("{{gamma^{a}, gamma^{b}}} != 2 delta * I at entry ({row},{col}): got {got}")]
    BadAnticommutator {
        /// First label.
        a: u8,
        /// Second label.
        b: u8,
        /// Witness row.
        row: usize,
        /// Witness column.
        col: usize,
        /// Witness value, canonically printed.
        got: String,
    },
}

/// Five 4×4 Dirac matrices for a Euclidean Clifford algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordSet<S> {
    gammas: [Matrix<S>; 5],
}

fn pauli<S: ExactScalar>(which: u8) -> Matrix<S> {
    let o = S::one;
    let z = S::zero;
    let i = S::i;
    match which {
        1 => Matrix::from_rows(vec![vec![z(), o()], vec![o(), z()]]),
        2 => Matrix::from_rows(vec![vec![z(), -i()], vec![i(), z()]]),
        3 => Matrix::from_rows(vec![vec![o(), z()], vec![z(), -o()]]),
        _ => unreachable!("pauli index"),
    }
}

impl<S: ExactScalar> CliffordSet<S> {
    /// Wraps five candidate matrices without validating them; callers that
    /// need the algebra to hold go through [`CliffordSet::validate`] or
    /// [`build_spinor_generators`].
    pub fn from_gammas(gammas: [Matrix<S>; 5]) -> Self {
        CliffordSet { gammas }
    }

    /// The matrix `Γᵃ` for `a ∈ 1..=5`.
    pub fn gamma(&self, a: u8) -> &Matrix<S> {
        assert!((1..=5).contains(&a), "gamma label {a} out of range");
        &self.gammas[(a - 1) as usize]
    }

    /// Checks shape, hermiticity, tracelessness, and the anticommutation
    /// rule `{Γᵃ, Γᵇ} = 2 δ_ab I₄`. Together with tracelessness, squaring
    /// to the identity pins the eigenvalues to ±1 with equal multiplicity —
    /// no eigensolver involved.
    pub fn validate(&self) -> Result<(), CliffordError> {
        for a in 1..=5u8 {
            let g = self.gamma(a);
            if g.rows() != 4 || g.cols() != 4 {
                return Err(CliffordError::WrongShape {
                    index: a,
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
            if g.conj_transpose() != *g {
                return Err(CliffordError::NotHermitian { index: a });
            }
            let tr = g.trace();
            if !tr.is_zero() {
                return Err(CliffordError::NonzeroTrace {
                    index: a,
                    trace: tr.to_string(),
                });
            }
        }
        for a in 1..=5u8 {
            for b in a..=5u8 {
                let want = if a == b {
                    Matrix::identity(4).scale(&S::from_int(2))
                } else {
                    Matrix::zeros(4, 4)
                };
                let got = self.gamma(a).anticommutator(self.gamma(b));
                let diff = got.sub(&want);
                if let Some((row, col, _)) = diff.first_nonzero() {
                    return Err(CliffordError::BadAnticommutator {
                        a,
                        b,
                        row,
                        col,
                        got: got.get(row, col).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The default Dirac matrices, built from Pauli blocks:
/// `Γ¹ = σ₁⊗σ₃`, `Γ² = σ₂⊗σ₃`, `Γ³ = σ₃⊗σ₃`, `Γ⁴ = 1⊗σ₁`, `Γ⁵ = 1⊗σ₂`.
/// Any other set passing [`CliffordSet::validate`] works equally well.
pub fn build_clifford<S: ExactScalar>() -> CliffordSet<S> {
    let id2: Matrix<S> = Matrix::identity(2);
    let k = crate::matrix::kron;
    CliffordSet {
        gammas: [
            k(&pauli(1), &pauli(3)),
            k(&pauli(2), &pauli(3)),
            k(&pauli(3), &pauli(3)),
            k(&id2, &pauli(1)),
            k(&id2, &pauli(2)),
        ],
    }
}

/// Ten generators of a representation, indexed by [`ADJOINT_PAIRS`] and
/// extended antisymmetrically to arbitrary label order.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratorSet<Op> {
    /// Dimension of the carrier space.
    pub rep_dim: usize,
    /// Short human-readable tag used in reports ("spinor", "vector", ...).
    pub label: String,
    gens: Vec<Op>,
}

impl<Op> GeneratorSet<Op> {
    /// Wraps ten generators listed in [`ADJOINT_PAIRS`] order.
    pub fn from_ordered(label: impl Into<String>, rep_dim: usize, gens: Vec<Op>) -> Self {
        assert_eq!(gens.len(), 10, "exactly ten generators expected");
        GeneratorSet {
            rep_dim,
            label: label.into(),
            gens,
        }
    }

    /// The generator at basis index `idx`.
    pub fn by_index(&self, idx: usize) -> &Op {
        &self.gens[idx]
    }

    /// Iterates (label, generator) over the ten basis elements.
    pub fn iter(&self) -> impl Iterator<Item = ((u8, u8), &Op)> {
        ADJOINT_PAIRS.iter().copied().zip(self.gens.iter())
    }

    /// Maps every generator, preserving labels.
    pub fn map_ops<Op2>(&self, f: impl Fn(&Op) -> Op2) -> GeneratorSet<Op2> {
        GeneratorSet {
            rep_dim: self.rep_dim,
            label: self.label.clone(),
            gens: self.gens.iter().map(f).collect(),
        }
    }

    /// The generator `I_ab` for any `a ≠ b` (antisymmetric extension);
    /// `I_aa` is the zero operator.
    pub fn get<S>(&self, a: u8, b: u8) -> Op
    where
        S: ExactScalar,
        Op: AlgebraOp<S>,
    {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Less => self.gens[pair_index(a, b)].clone(),
            Ordering::Greater => self.gens[pair_index(b, a)].neg_op(),
            Ordering::Equal => self.gens[0].zero_like(),
        }
    }

    /// `Σ_{a<b} (I_ab)²`, the quadratic Casimir element of the
    /// representation.
    pub fn casimir_sum<S>(&self) -> Op
    where
        S: ExactScalar,
        Op: AlgebraOp<S>,
    {
        let mut acc = self.gens[0].zero_like();
        for g in &self.gens {
            acc = acc.add_op(&g.mul_op(g));
        }
        acc
    }
}

/// One failed instance of the defining bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFailure {
    /// The left pair (a, b).
    pub lhs_pair: (u8, u8),
    /// The right pair (c, d).
    pub rhs_pair: (u8, u8),
    /// Witness coordinates in the carrier space.
    pub row: usize,
    /// Witness coordinates in the carrier space.
    pub col: usize,
    /// Value of `[I_ab, I_cd] − RHS` at the witness, canonically printed.
    pub residual: String,
}

/// The right-hand side of the defining bracket for `[I_ab, I_cd]`:
/// `−i(δ_bc I_ad + δ_ad I_bc − δ_ac I_bd − δ_bd I_ac)`.
pub fn defining_bracket_rhs<S, Op>(g: &GeneratorSet<Op>, a: u8, b: u8, c: u8, d: u8) -> Op
where
    S: ExactScalar,
    Op: AlgebraOp<S>,
{
    let mut acc = g.by_index(0).zero_like();
    let mi = -S::i();
    let mut put = |cond: bool, x: u8, y: u8, sign: i64| {
        if cond {
            acc = acc.add_op(&g.get(x, y).scale_op(&mi.mul_ref(&S::from_int(sign))));
        }
    };
    put(b == c, a, d, 1);
    put(a == d, b, c, 1);
    put(a == c, b, d, -1);
    put(b == d, a, c, -1);
    acc
}

/// Checks `[I_λ, I_μ]` against the defining bracket for all 45 unordered
/// basis pairs `λ < μ`, returning every failure (empty means the
/// representation is good).
pub fn check_defining_brackets<S, Op>(g: &GeneratorSet<Op>) -> Vec<BracketFailure>
where
    S: ExactScalar,
    Op: AlgebraOp<S>,
{
    let mut failures = Vec::new();
    for l in 0..10 {
        for m in (l + 1)..10 {
            let (a, b) = ADJOINT_PAIRS[l];
            let (c, d) = ADJOINT_PAIRS[m];
            let lhs = g.by_index(l).commutator(g.by_index(m));
            let rhs = defining_bracket_rhs(g, a, b, c, d);
            let diff = lhs.sub_op(&rhs);
            if let Some((row, col, v)) = diff.first_nonzero_entry() {
                failures.push(BracketFailure {
                    lhs_pair: (a, b),
                    rhs_pair: (c, d),
                    row,
                    col,
                    residual: v.to_string(),
                });
            }
        }
    }
    failures
}

/// Builds the spinor generators `I_ab = (−i/2) Γᵃ Γᵇ` after validating the
/// Dirac matrices.
pub fn build_spinor_generators<S: ExactScalar>(
    cs: &CliffordSet<S>,
) -> Result<GeneratorSet<Matrix<S>>, CliffordError> {
    cs.validate()?;
    Ok(spinor_generators_unchecked(cs))
}

/// The same construction without validating the Dirac matrices first; used
/// to demonstrate how a broken Clifford set propagates to broken brackets.
pub fn spinor_generators_unchecked<S: ExactScalar>(
    cs: &CliffordSet<S>,
) -> GeneratorSet<Matrix<S>> {
    let half_mi = (-S::i()).mul_ref(&S::ratio(1, 2));
    let gens = ADJOINT_PAIRS
        .iter()
        .map(|&(a, b)| cs.gamma(a).mul(cs.gamma(b)).scale(&half_mi))
        .collect();
    GeneratorSet::from_ordered("spinor", 4, gens)
}

/// Builds the vector generators `(M_ab)_cd = −i(δ_ac δ_bd − δ_ad δ_bc)` on
/// a 5-dimensional space.
pub fn build_vector_generators<S: ExactScalar>() -> GeneratorSet<Matrix<S>> {
    let gens = ADJOINT_PAIRS
        .iter()
        .map(|&(a, b)| {
            let mut m = Matrix::zeros(5, 5);
            m.set((a - 1) as usize, (b - 1) as usize, -S::i());
            m.set((b - 1) as usize, (a - 1) as usize, S::i());
            m
        })
        .collect();
    GeneratorSet::from_ordered("vector", 5, gens)
}

/// A generator family that fails to close under the bracket.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    /// The ten generators are linearly dependent, so expansion coefficients
    /// would not be unique.
    #[error("generators are linearly dependent: rank {rank} < 10")]
    DependentBasis {
        /// Measured rank.
        rank: usize,
    },
    /// A commutator left the span of the generators.
    #[error("[I_{}{}, I_{}{}] is not a combination of the generators", lambda.0, lambda.1, mu.0, mu.1)]
    NotClosed {
        /// Left label of the offending bracket.
        lambda: (u8, u8),
        /// Right label of the offending bracket.
        mu: (u8, u8),
    },
}

/// The structure constants `c_{λμν}` in `[I_λ, I_μ] = c_{λμν} I_ν`, stored
/// over the Gaussian rationals (for so(5) every entry is 0 or ±i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureTensor {
    c: Vec<GaussRational>,
}

impl StructureTensor {
    /// The labels the three indices run over.
    pub fn basis_labels(&self) -> &'static [(u8, u8); 10] {
        &ADJOINT_PAIRS
    }

    /// `c_{λμν}` by basis indices.
    pub fn get(&self, l: usize, m: usize, n: usize) -> &GaussRational {
        &self.c[(l * 10 + m) * 10 + n]
    }

    /// All nonzero entries as ((λ, μ, ν), value).
    pub fn iter_nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), &GaussRational)> {
        self.c.iter().enumerate().filter_map(|(k, v)| {
            if v.is_zero() {
                None
            } else {
                Some(((k / 100, (k / 10) % 10, k % 10), v))
            }
        })
    }

    /// Verifies `c_{λμν} = −c_{μλν}` over all index triples.
    pub fn is_antisymmetric(&self) -> bool {
        for l in 0..10 {
            for m in 0..10 {
                for n in 0..10 {
                    let lhs = self.get(l, m, n).clone();
                    let rhs = -self.get(m, l, n).clone();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Structure constants straight from the defining bracket, with no
/// representation involved. This is the independent oracle the
/// representation-derived tensor is compared against.
pub fn abstract_structure_constants() -> StructureTensor {
    let mut c = vec![GaussRational::zero(); 1000];
    let mi = -GaussRational::i();
    for (l, &(a, b)) in ADJOINT_PAIRS.iter().enumerate() {
        for (m, &(cc, d)) in ADJOINT_PAIRS.iter().enumerate() {
            let mut put = |cond: bool, x: u8, y: u8, sign: i64| {
                if !cond || x == y {
                    return;
                }
                let (idx, flip) = if x < y {
                    (pair_index(x, y), 1)
                } else {
                    (pair_index(y, x), -1)
                };
                let cell = &mut c[(l * 10 + m) * 10 + idx];
                *cell += &mi.mul_ref(&GaussRational::from_int(sign * flip));
            };
            put(b == cc, a, d, 1);
            put(a == d, b, cc, 1);
            put(a == cc, b, d, -1);
            put(b == d, a, cc, -1);
        }
    }
    StructureTensor { c }
}

/// Extracts structure constants from a concrete representation by exact
/// linear solving, rejecting families that are dependent or fail to close.
pub fn structure_constants(
    g: &GeneratorSet<Matrix<GaussRational>>,
) -> Result<StructureTensor, ClosureError> {
    let basis: Vec<&Matrix<GaussRational>> = (0..10).map(|k| g.by_index(k)).collect();
    let rank = basis_rank(&basis);
    if rank != 10 {
        return Err(ClosureError::DependentBasis { rank });
    }
    let mut c = vec![GaussRational::zero(); 1000];
    for l in 0..10 {
        for m in 0..10 {
            if l == m {
                continue;
            }
            let lhs = g.by_index(l).commutator(g.by_index(m));
            let coeffs = express_in_basis(&lhs, &basis).ok_or(ClosureError::NotClosed {
                lambda: ADJOINT_PAIRS[l],
                mu: ADJOINT_PAIRS[m],
            })?;
            for (n, v) in coeffs.into_iter().enumerate() {
                c[(l * 10 + m) * 10 + n] = v;
            }
        }
    }
    Ok(StructureTensor { c })
}

/// Why a Cartan–Weyl recombination could not be built.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwError {
    /// Only levels 1 and 2 have closed-form recombinations here.
    #[error("unsupported level {0}; expected 1 or 2")]
    BadLevel(u32),
    /// Level ≥ 2 divides by h, so h must be invertible.
    #[error("level {level} recombination divides by h, which is zero")]
    ZeroH {
        /// The level that was requested.
        level: u32,
    },
}

/// The ten generators renamed into raising/lowering/Cartan combinations.
#[derive(Clone, PartialEq, Debug)]
pub struct CartanWeylSet<Op> {
    /// Cartan element of the first sl(2).
    pub e3: Op,
    /// Cartan element of the second sl(2).
    pub f3: Op,
    /// Raising element of the first sl(2).
    pub e_plus: Op,
    /// Lowering element of the first sl(2).
    pub e_minus: Op,
    /// Raising element of the second sl(2).
    pub f_plus: Op,
    /// Lowering element of the second sl(2).
    pub f_minus: Op,
    /// Mixed raising element U₊.
    pub u_plus: Op,
    /// Mixed lowering element U₋.
    pub u_minus: Op,
    /// Mixed raising element V₊.
    pub v_plus: Op,
    /// Mixed lowering element V₋.
    pub v_minus: Op,
}

impl<Op> CartanWeylSet<Op> {
    /// (name, element) pairs in a fixed order.
    pub fn iter_named(&self) -> [(&'static str, &Op); 10] {
        [
            ("E3", &self.e3),
            ("F3", &self.f3),
            ("E+", &self.e_plus),
            ("E-", &self.e_minus),
            ("F+", &self.f_plus),
            ("F-", &self.f_minus),
            ("U+", &self.u_plus),
            ("U-", &self.u_minus),
            ("V+", &self.v_plus),
            ("V-", &self.v_minus),
        ]
    }
}

/// Recombines tensor generators into the Cartan–Weyl basis at the given
/// level. Level n carries an overall `1/h^{n−1}`, so level 2 requires
/// `h ≠ 0`:
///
/// ```text
/// E₃ = I₂₃/hⁿ⁻¹                F₃ = I₁₅/hⁿ⁻¹
/// E± = (I₃₄ ± i I₄₂)/(√2 hⁿ⁻¹) F± = (I₄₅ ± i I₁₄)/(√2 hⁿ⁻¹)
/// U± = ((I₃₁ ± i I₁₂) − (I₂₅ ± i I₃₅))/(2 hⁿ⁻¹)
/// V± = ((I₃₁ ± i I₁₂) + (I₂₅ ± i I₃₅))/(2 hⁿ⁻¹)
/// ```
pub fn to_cartan_weyl<S, Op>(
    g: &GeneratorSet<Op>,
    h: &S,
    level: u32,
) -> Result<CartanWeylSet<Op>, CwError>
where
    S: ExactScalar + HasSqrt2,
    Op: AlgebraOp<S>,
{
    if level != 1 && level != 2 {
        return Err(CwError::BadLevel(level));
    }
    let k = if level == 1 {
        S::one()
    } else {
        h.inv().ok_or(CwError::ZeroH { level })?
    };
    // 1/√2 = √2/2 keeps denominators rational.
    let k_rt2 = k.mul_ref(&S::sqrt2().mul_ref(&S::ratio(1, 2)));
    let k_half = k.mul_ref(&S::ratio(1, 2));
    let i = S::i();

    let comb = |plus: &Op, minus: &Op, sign: i64, scale: &S| {
        plus.add_op(&minus.scale_op(&i.mul_ref(&S::from_int(sign))))
            .scale_op(scale)
    };

    let i34 = g.get(3, 4);
    let i42 = g.get(4, 2);
    let i45 = g.get(4, 5);
    let i14 = g.get(1, 4);
    let i31 = g.get(3, 1);
    let i12 = g.get(1, 2);
    let i25 = g.get(2, 5);
    let i35 = g.get(3, 5);

    let mixed = |sign: i64, rel: i64| {
        // (I₃₁ ± i I₁₂) + rel·(I₂₅ ± i I₃₅), all scaled by k/2.
        let first = comb(&i31, &i12, sign, &S::one());
        let second = comb(&i25, &i35, sign, &S::from_int(rel));
        first.add_op(&second).scale_op(&k_half)
    };

    Ok(CartanWeylSet {
        e3: g.get(2, 3).scale_op(&k),
        f3: g.get(1, 5).scale_op(&k),
        e_plus: comb(&i34, &i42, 1, &k_rt2),
        e_minus: comb(&i34, &i42, -1, &k_rt2),
        f_plus: comb(&i45, &i14, 1, &k_rt2),
        f_minus: comb(&i45, &i14, -1, &k_rt2),
        u_plus: mixed(1, -1),
        u_minus: mixed(-1, -1),
        v_plus: mixed(1, 1),
        v_minus: mixed(-1, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalar::GaussSqrt2;

    type GQ = GaussRational;

    #[test]
    fn default_dirac_matrices_validate() {
        let cs: CliffordSet<GQ> = build_clifford();
        assert!(cs.validate().is_ok());
    }

    #[test]
    fn duplicated_gamma_is_rejected() {
        let cs: CliffordSet<GQ> = build_clifford();
        let broken = CliffordSet::from_gammas([
            cs.gamma(1).clone(),
            cs.gamma(2).clone(),
            cs.gamma(3).clone(),
            cs.gamma(4).clone(),
            cs.gamma(4).clone(),
        ]);
        let err = broken.validate().unwrap_err();
        match err {
            CliffordError::BadAnticommutator { a, b, .. } => {
                assert_eq!((a, b), (4, 5));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(build_spinor_generators(&broken).is_err());
        // The unchecked generators then fail the defining bracket.
        let gens = spinor_generators_unchecked(&broken);
        assert!(!check_defining_brackets(&gens).is_empty());
    }

    #[test]
    fn both_representations_satisfy_the_defining_bracket() {
        let cs: CliffordSet<GQ> = build_clifford();
        let spinor = build_spinor_generators(&cs).unwrap();
        assert!(check_defining_brackets(&spinor).is_empty());
        let vector: GeneratorSet<Matrix<GQ>> = build_vector_generators();
        assert!(check_defining_brackets(&vector).is_empty());
    }

    #[test]
    fn casimir_values_are_frozen() {
        let cs: CliffordSet<GQ> = build_clifford();
        let spinor = build_spinor_generators(&cs).unwrap();
        assert_eq!(
            spinor.casimir_sum(),
            Matrix::identity(4).scale(&GQ::ratio(5, 2))
        );
        let vector: GeneratorSet<Matrix<GQ>> = build_vector_generators();
        assert_eq!(
            vector.casimir_sum(),
            Matrix::identity(5).scale(&GQ::from_int(4))
        );
    }

    #[test]
    fn structure_constants_match_the_abstract_oracle_in_both_reps() {
        let oracle = abstract_structure_constants();
        assert!(oracle.is_antisymmetric());

        let cs: CliffordSet<GQ> = build_clifford();
        let spinor = build_spinor_generators(&cs).unwrap();
        let from_spinor = structure_constants(&spinor).unwrap();
        assert_eq!(from_spinor, oracle);

        let vector = build_vector_generators();
        let from_vector = structure_constants(&vector).unwrap();
        assert_eq!(from_vector, oracle);

        // Spot value: [I_12, I_23] = −i I_13.
        let l = pair_index(1, 2);
        let m = pair_index(2, 3);
        let n = pair_index(1, 3);
        assert_eq!(oracle.get(l, m, n), &(-GQ::i()));
    }

    #[test]
    fn non_closing_family_is_rejected_with_the_offending_pair() {
        // Ten distinct off-diagonal matrix units are linearly independent,
        // but [E_01, E_10] = E_00 − E_11 is diagonal and leaves their span.
        let cells = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (1, 0),
            (2, 0),
            (3, 0),
            (2, 1),
        ];
        let gens = cells
            .iter()
            .map(|&(r, c)| {
                let mut m = Matrix::<GQ>::zeros(4, 4);
                m.set(r, c, GQ::from_int(1));
                m
            })
            .collect();
        let family = GeneratorSet::from_ordered("adhoc", 4, gens);
        let err = structure_constants(&family).unwrap_err();
        // E_10 sits at basis slot 6, label (2,5); the first bracket that
        // escapes the span is [gen_0, gen_6] = E_00 − E_11.
        assert_eq!(
            err,
            ClosureError::NotClosed {
                lambda: ADJOINT_PAIRS[0],
                mu: ADJOINT_PAIRS[6],
            }
        );
        assert_eq!(
            err.to_string(),
            "[I_12, I_25] is not a combination of the generators"
        );
    }

    #[test]
    fn cartan_weyl_rejects_level_two_at_h_zero() {
        let cs: CliffordSet<GaussSqrt2> = build_clifford();
        let spinor = build_spinor_generators(&cs).unwrap();
        let res = to_cartan_weyl(&spinor, &GaussSqrt2::zero(), 2);
        assert_eq!(res.unwrap_err(), CwError::ZeroH { level: 2 });
        assert!(to_cartan_weyl(&spinor, &GaussSqrt2::zero(), 1).is_ok());
        assert_eq!(
            to_cartan_weyl(&spinor, &GaussSqrt2::one(), 3).unwrap_err(),
            CwError::BadLevel(3)
        );
    }
}

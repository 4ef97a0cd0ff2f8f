//! The RTT presentation: symbolic exchange relations for the generator
//! series T(u), their closed hand-written forms, concrete representations
//! built from the R-matrix (single site and multi-site), and the component
//! identities satisfied by the Cartan-graded pieces of T(u).
//!
//! The symbolic side works over a free associative algebra on symbols
//! `T^(n)_{ab}` with Gaussian-rational coefficients. A relation is a
//! noncommutative polynomial that must evaluate to zero in any
//! representation. The concrete side maps each symbol to an exact sparse
//! matrix and multiplies everything out, so a passing check is a proof of
//! the identity in that representation, not an approximation.

use crate::report::{IdentityOutcome, Witness};
use crate::rmatrix::{build_blocks, build_rcheck, RmatrixError};
use crate::scalar::{ExactScalar, GaussRational};
use crate::sparse::SparseOp;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Auxiliary-space labels in display order (row 0 carries label 2).
pub const AUX_LABELS: [i8; 5] = [2, 1, 0, -1, -2];

/// Row index of an auxiliary label.
pub fn aux_index(a: i8) -> usize {
    assert!((-2..=2).contains(&a), "auxiliary label out of range: {a}");
    (2 - a) as usize
}

/// Errors from building or evaluating the RTT structures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    /// The expansion window must cover at least the first order each way.
    #[error("expansion window ({i_max},{j_max}) must be at least (1,1)")]
    BadWindow {
        /// Requested depth in the first spectral parameter.
        i_max: i64,
        /// Requested depth in the second spectral parameter.
        j_max: i64,
    },
    /// The lattice spacing x must be invertible.
    #[error("the spacing parameter x must be nonzero")]
    ZeroX,
    /// Series levels start at 1 for component extraction.
    #[error("level {0} is outside the usable range (>= 1)")]
    BadLevel(u32),
    /// The representation does not store enough series levels.
    #[error("level {needed} requested but the series is truncated at {stored}")]
    TruncatedSeries {
        /// Level the caller asked for.
        needed: u32,
        /// Highest level actually stored.
        stored: u32,
    },
    /// A monodromy needs at least one site.
    #[error("a chain needs at least one site")]
    NeedSites,
    /// Propagated R-matrix construction failure.
    #[error(transparent)]
    Rmatrix(#[from] RmatrixError),
}

// ---------------------------------------------------------------------------
// Free algebra on the series coefficients.
// ---------------------------------------------------------------------------

/// One generator symbol `T^(level)_{a b}`, with auxiliary labels a, b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct GenSymbol {
    /// Series level n >= 1 (level 0 is the identity and is never stored).
    pub level: u32,
    /// First auxiliary label, in -2..=2.
    pub a: i8,
    /// Second auxiliary label, in -2..=2.
    pub b: i8,
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}[{},{}]", self.level, self.a, self.b)
    }
}

/// A product of symbols, in written order. Empty means the identity.
pub type Word = Vec<GenSymbol>;

/// A noncommutative polynomial: finitely many words with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePoly {
    terms: BTreeMap<Word, GaussRational>,
}

impl FreePoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        FreePoly {
            terms: BTreeMap::new(),
        }
    }

    /// The identity (empty word, coefficient 1).
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), GaussRational::one());
        FreePoly { terms }
    }

    /// A single symbol with coefficient 1.
    pub fn symbol(s: GenSymbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![s], GaussRational::one());
        FreePoly { terms }
    }

    /// Adds `coeff * word`, pruning a cancelled term.
    pub fn add_term(&mut self, word: Word, coeff: GaussRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(word);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        FreePoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &GaussRational) -> Self {
        if s.is_zero() {
            return FreePoly::zero();
        }
        FreePoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul_ref(s)))
                .collect(),
        }
    }

    /// Product (concatenates words).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = FreePoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul_ref(c2));
            }
        }
        out
    }

    /// `self * o - o * self`.
    pub fn commutator_with(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// True when no terms survive.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Rescales so the lexicographically first word has coefficient 1.
    /// Relations are only defined up to overall scale, and this choice
    /// makes expansions at different x byte-identical.
    pub fn normalize(&self) -> Self {
        let Some((_, lead)) = self.terms.iter().next() else {
            return FreePoly::zero();
        };
        let Some(inv) = lead.inv() else {
            return self.clone();
        };
        self.scale(&inv)
    }

    /// Iterates (word, coefficient) in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GaussRational)> {
        self.terms.iter()
    }

    /// JSON form: a list of `{c, w}` term records.
    pub fn as_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({
                        "c": c.to_string(),
                        "w": w,
                    })
                })
                .collect(),
        )
    }
}

/// The level-n coefficient as a polynomial: level 0 is the Kronecker delta,
/// negative levels vanish, positive levels are free symbols.
fn tsym(level: i64, a: i8, b: i8) -> FreePoly {
    if level < 0 {
        FreePoly::zero()
    } else if level == 0 {
        if a == b {
            FreePoly::one()
        } else {
            FreePoly::zero()
        }
    } else {
        FreePoly::symbol(GenSymbol {
            level: level as u32,
            a,
            b,
        })
    }
}

// ---------------------------------------------------------------------------
// Hand-written exchange relations.
// ---------------------------------------------------------------------------

/// Which closed-form family of exchange relations to instantiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeKind {
    /// The generic relation indexed by two levels n, m >= 0.
    TwoParam {
        /// First series depth.
        n: i64,
        /// Second series depth.
        m: i64,
    },
    /// The first-order relation with T^(1) acting from the left.
    OneLeft {
        /// Series depth of the other factor.
        m: i64,
    },
    /// The first-order relation with T^(1) acting from the right.
    OneRight {
        /// Series depth of the other factor.
        n: i64,
    },
}

/// The hand-written exchange relation for one index tuple. The returned
/// polynomial must evaluate to zero in every representation of the algebra.
///
/// These forms are written out independently from the machine expansion in
/// [`expand_rtt`]; a test pins the two against each other.
pub fn exchange_relation(kind: ExchangeKind, a: i8, b: i8, c: i8, d: i8) -> FreePoly {
    match kind {
        ExchangeKind::TwoParam { n, m } => two_param_relation(n, m, a, b, c, d),
        ExchangeKind::OneLeft { m } => one_left_relation(m, a, b, c, d),
        ExchangeKind::OneRight { n } => one_right_relation(n, a, b, c, d),
    }
}

fn two_param_relation(n: i64, m: i64, a: i8, b: i8, c: i8, d: i8) -> FreePoly {
    let half3 = GaussRational::ratio(3, 2);
    let mut out = FreePoly::zero();

    // Commutator ladder in the swap channel.
    out = out.add(&tsym(n + 2, b, c).commutator_with(&tsym(m, a, d)));
    out = out.add(
        &tsym(n + 1, b, c)
            .commutator_with(&tsym(m + 1, a, d))
            .scale(&GaussRational::from_int(-2)),
    );
    out = out.add(&tsym(n, b, c).commutator_with(&tsym(m + 2, a, d)));
    out = out.sub(
        &tsym(n + 1, b, c)
            .commutator_with(&tsym(m, a, d))
            .scale(&half3),
    );
    out = out.add(
        &tsym(n, b, c)
            .commutator_with(&tsym(m + 1, a, d))
            .scale(&half3),
    );

    // Dual-pair channel, left and right.
    if a == -b {
        for i in AUX_LABELS {
            out = out.add(&tsym(n + 1, i, c).mul(&tsym(m, -i, d)));
            out = out.sub(&tsym(n, i, c).mul(&tsym(m + 1, -i, d)));
        }
    }
    if c == -d {
        for i in AUX_LABELS {
            out = out.add(&tsym(m + 1, a, i).mul(&tsym(n, b, -i)));
            out = out.sub(&tsym(m, a, i).mul(&tsym(n + 1, b, -i)));
        }
    }

    // Scalar channel.
    out = out.sub(&tsym(n + 1, a, c).mul(&tsym(m, b, d)));
    out = out.add(&tsym(n, a, c).mul(&tsym(m + 1, b, d)));
    out = out.add(&tsym(m, a, c).mul(&tsym(n + 1, b, d)));
    out = out.sub(&tsym(m + 1, a, c).mul(&tsym(n, b, d)));
    out = out.add(&tsym(n, a, c).mul(&tsym(m, b, d)).scale(&half3));
    out = out.sub(&tsym(m, a, c).mul(&tsym(n, b, d)).scale(&half3));

    out
}

fn one_left_relation(m: i64, a: i8, b: i8, c: i8, d: i8) -> FreePoly {
    let mut out = tsym(1, b, c).commutator_with(&tsym(m, a, d));
    if a == -b {
        out = out.add(&tsym(m, -c, d));
    }
    if c == -d {
        out = out.sub(&tsym(m, a, -b));
    }
    if a == c {
        out = out.sub(&tsym(m, b, d));
    }
    if b == d {
        out = out.add(&tsym(m, a, c));
    }
    out
}

fn one_right_relation(n: i64, a: i8, b: i8, c: i8, d: i8) -> FreePoly {
    let mut out = tsym(n, b, c).commutator_with(&tsym(1, a, d));
    if c == -d {
        out = out.add(&tsym(n, b, -a));
    }
    if a == -b {
        out = out.sub(&tsym(n, -d, c));
    }
    if a == c {
        out = out.sub(&tsym(n, b, d));
    }
    if b == d {
        out = out.add(&tsym(n, a, c));
    }
    out
}

// ---------------------------------------------------------------------------
// Machine expansion of the defining equation.
// ---------------------------------------------------------------------------

/// One relation extracted from a coefficient of the defining equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// Inverse power of the first spectral parameter (coefficient of u^-iu).
    pub iu: i64,
    /// Inverse power of the second spectral parameter.
    pub iv: i64,
    /// Row pair (a, b) in the tensor square of the auxiliary space.
    pub row: (i8, i8),
    /// Column pair (c, d).
    pub col: (i8, i8),
    /// The relation polynomial, normalized to leading coefficient 1.
    pub poly: FreePoly,
}

impl Relation {
    /// Stable human-readable label.
    pub fn label(&self) -> String {
        format!(
            "order({},{}) row({},{}) col({},{})",
            self.iu, self.iv, self.row.0, self.row.1, self.col.0, self.col.1
        )
    }

    /// JSON form for dumps.
    pub fn as_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": [self.iu, self.iv],
            "row": [self.row.0, self.row.1],
            "col": [self.col.0, self.col.1],
            "terms": self.poly.as_json(),
        })
    }
}

/// All relations extracted from a rectangular coefficient window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    /// Window depth in the first parameter.
    pub i_max: i64,
    /// Window depth in the second parameter.
    pub j_max: i64,
    /// Spacing parameter the expansion used (the normalized relations do
    /// not depend on it; a property test pins that).
    pub x: GaussRational,
    /// Nonzero relations, ordered by (iu, iv, row, col).
    pub relations: Vec<Relation>,
}

impl RelationSet {
    /// Number of relations.
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    /// True when the window produced nothing (never happens for valid input).
    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

#[derive(Clone, Copy)]
enum Blk {
    P,
    A,
    I,
}

/// 625 polynomial entries indexed by (row pair, col pair).
type PolyMat = Vec<FreePoly>;

fn pm_index(a: i8, b: i8, c: i8, d: i8) -> usize {
    (aux_index(a) * 5 + aux_index(b)) * 25 + (aux_index(c) * 5 + aux_index(d))
}

fn pm_zero() -> PolyMat {
    vec![FreePoly::zero(); 625]
}

/// Entrywise series coefficient of T(u) (x) T(v) at levels (n, m).
fn tt_uv(n: i64, m: i64) -> PolyMat {
    let mut out = pm_zero();
    for a in AUX_LABELS {
        for b in AUX_LABELS {
            for c in AUX_LABELS {
                for d in AUX_LABELS {
                    let p = tsym(n, a, c).mul(&tsym(m, b, d));
                    if !p.is_zero() {
                        out[pm_index(a, b, c, d)] = p;
                    }
                }
            }
        }
    }
    out
}

/// Entrywise series coefficient of T(v) (x) T(u); the v-factor is written
/// first, which fixes the operator order in each word.
fn tt_vu(n: i64, m: i64) -> PolyMat {
    let mut out = pm_zero();
    for a in AUX_LABELS {
        for b in AUX_LABELS {
            for c in AUX_LABELS {
                for d in AUX_LABELS {
                    let p = tsym(m, a, c).mul(&tsym(n, b, d));
                    if !p.is_zero() {
                        out[pm_index(a, b, c, d)] = p;
                    }
                }
            }
        }
    }
    out
}

fn block_left(blk: Blk, m: &PolyMat) -> PolyMat {
    let mut out = pm_zero();
    match blk {
        Blk::I => out.clone_from(m),
        Blk::P => {
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    for c in AUX_LABELS {
                        for d in AUX_LABELS {
                            out[pm_index(a, b, c, d)] = m[pm_index(b, a, c, d)].clone();
                        }
                    }
                }
            }
        }
        Blk::A => {
            for a in AUX_LABELS {
                let b = -a;
                for c in AUX_LABELS {
                    for d in AUX_LABELS {
                        let mut acc = FreePoly::zero();
                        for e in AUX_LABELS {
                            acc = acc.add(&m[pm_index(e, -e, c, d)]);
                        }
                        out[pm_index(a, b, c, d)] = acc;
                    }
                }
            }
        }
    }
    out
}

fn block_right(blk: Blk, m: &PolyMat) -> PolyMat {
    let mut out = pm_zero();
    match blk {
        Blk::I => out.clone_from(m),
        Blk::P => {
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    for c in AUX_LABELS {
                        for d in AUX_LABELS {
                            out[pm_index(a, b, c, d)] = m[pm_index(a, b, d, c)].clone();
                        }
                    }
                }
            }
        }
        Blk::A => {
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    let mut acc = FreePoly::zero();
                    for e in AUX_LABELS {
                        acc = acc.add(&m[pm_index(a, b, e, -e)]);
                    }
                    for c in AUX_LABELS {
                        let d = -c;
                        out[pm_index(a, b, c, d)] = acc.clone();
                    }
                }
            }
        }
    }
    out
}

/// Expands the defining equation
/// `R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v)` coefficient by coefficient
/// over the window `u^{-iu} v^{-iv}` with `iu <= i_max`, `iv <= j_max`
/// (positive powers down to u^2, v^2 are also swept; they cancel
/// identically and contribute no relations).
///
/// Every nonzero coefficient entry becomes one [`Relation`], tagged with
/// its order and tensor position and normalized to leading coefficient 1.
pub fn expand_rtt(i_max: i64, j_max: i64, x: &GaussRational) -> Result<RelationSet, EngineError> {
    if i_max < 1 || j_max < 1 {
        return Err(EngineError::BadWindow { i_max, j_max });
    }
    if x.is_zero() {
        return Err(EngineError::ZeroX);
    }

    let half3 = GaussRational::ratio(3, 2);
    // (power of u, power of v, block, scalar) terms of R(u-v).
    let rterms: Vec<(i64, i64, Blk, GaussRational)> = vec![
        (2, 0, Blk::P, GaussRational::one()),
        (1, 1, Blk::P, GaussRational::from_int(-2)),
        (0, 2, Blk::P, GaussRational::one()),
        (1, 0, Blk::A, x.clone()),
        (1, 0, Blk::I, -x.clone()),
        (1, 0, Blk::P, -half3.mul_ref(x)),
        (0, 1, Blk::A, -x.clone()),
        (0, 1, Blk::I, x.clone()),
        (0, 1, Blk::P, half3.mul_ref(x)),
        (0, 0, Blk::I, half3.mul_ref(x).mul_ref(x)),
    ];

    let mut uv_cache: HashMap<(i64, i64), PolyMat> = HashMap::new();
    let mut vu_cache: HashMap<(i64, i64), PolyMat> = HashMap::new();
    let mut relations = Vec::new();

    for iu in -2..=i_max {
        for iv in -2..=j_max {
            let mut acc = pm_zero();
            for (p, q, blk, cf) in &rterms {
                let n = iu + p;
                let m = iv + q;
                if n < 0 || m < 0 {
                    continue;
                }
                let scale = cf.mul_ref(&x.pow_i64(n + m));
                let uv = uv_cache.entry((n, m)).or_insert_with(|| tt_uv(n, m));
                let lhs = block_left(*blk, uv);
                let vu = vu_cache.entry((n, m)).or_insert_with(|| tt_vu(n, m));
                let rhs = block_right(*blk, vu);
                for idx in 0..625 {
                    let contrib = lhs[idx].sub(&rhs[idx]).scale(&scale);
                    acc[idx] = acc[idx].add(&contrib);
                }
            }
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    for c in AUX_LABELS {
                        for d in AUX_LABELS {
                            let poly = &acc[pm_index(a, b, c, d)];
                            if !poly.is_zero() {
                                relations.push(Relation {
                                    iu,
                                    iv,
                                    row: (a, b),
                                    col: (c, d),
                                    poly: poly.normalize(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(RelationSet {
        i_max,
        j_max,
        x: x.clone(),
        relations,
    })
}

// ---------------------------------------------------------------------------
// Concrete representations from the R-matrix.
// ---------------------------------------------------------------------------

/// A representation of the series coefficients: for each level n >= 1 and
/// auxiliary pair (a, b), one exact operator on the quantum space. The
/// series of a single site terminates at level 2 and of an L-site chain at
/// level 2L; `complete` records whether the stored window reaches that
/// point, in which case higher levels are genuinely zero.
#[derive(Debug, Clone)]
pub struct LaxRep {
    /// Human-readable description for reports.
    pub label: String,
    /// Dimension of the quantum space the operators act on.
    pub quantum_dim: usize,
    /// Highest stored level.
    pub max_level: u32,
    /// True when every level above `max_level` vanishes identically.
    pub complete: bool,
    /// tmats[n-1][aux_index(a)*5 + aux_index(b)] is T^(n)_{ab}.
    tmats: Vec<Vec<SparseOp<GaussRational>>>,
}

impl LaxRep {
    /// The operator for `T^(level)_{ab}`. Level 0 is `delta_ab * Id`;
    /// levels above the stored window are zero when the series is known
    /// to terminate there and an error otherwise.
    pub fn entry(&self, level: u32, a: i8, b: i8) -> Result<SparseOp<GaussRational>, EngineError> {
        if level == 0 {
            return Ok(if a == b {
                SparseOp::identity(self.quantum_dim)
            } else {
                SparseOp::new(self.quantum_dim)
            });
        }
        if level <= self.max_level {
            return Ok(self.tmats[(level - 1) as usize][aux_index(a) * 5 + aux_index(b)].clone());
        }
        if self.complete {
            return Ok(SparseOp::new(self.quantum_dim));
        }
        Err(EngineError::TruncatedSeries {
            needed: level,
            stored: self.max_level,
        })
    }
}

/// Builds the single-site representation: the series coefficients of
/// `u^{-2} P R(u - theta)`, read as 25 operators on one five-dimensional
/// site. Levels 0, 1, 2 exhaust the series; level 0 comes out as the
/// identity by construction and is asserted, not stored.
pub fn build_lax(
    x: &GaussRational,
    theta: &GaussRational,
    max_level: u32,
) -> Result<LaxRep, EngineError> {
    if x.is_zero() {
        return Err(EngineError::ZeroX);
    }
    let r = build_rcheck(5, x)?;
    let blocks = build_blocks(5)?;

    // Shift the argument: coefficients of R(u - theta) in powers of u.
    let th = theta.clone();
    let s2 = r.coeff2.clone();
    let s1 = r
        .coeff1
        .add(&r.coeff2.scale(&(-GaussRational::from_int(2) * th.clone())));
    let s0 = r
        .coeff0
        .add(&r.coeff1.scale(&(-th.clone())))
        .add(&r.coeff2.scale(&th.mul_ref(&th)));

    let pc2 = blocks.p.mul(&s2);
    let pc1 = blocks.p.mul(&s1);
    let pc0 = blocks.p.mul(&s0);
    debug_assert!(
        pc2.sub(&SparseOp::identity(25)).is_zero(),
        "leading series coefficient must be the identity"
    );

    let xin = x.inv().expect("x checked nonzero");
    let lvl1_big = pc1.scale(&xin);
    let lvl2_big = pc0.scale(&xin.mul_ref(&xin));

    let slice = |big: &SparseOp<GaussRational>| -> Vec<SparseOp<GaussRational>> {
        let mut mats = vec![SparseOp::new(5); 25];
        for (r, c, v) in big.entries() {
            let (ar, er) = ((r / 5) as usize, (r % 5) as u32);
            let (br, fr) = ((c / 5) as usize, (c % 5) as u32);
            mats[ar * 5 + br].add_to(er, fr, v.clone());
        }
        mats
    };

    let mut tmats = Vec::new();
    if max_level >= 1 {
        tmats.push(slice(&lvl1_big));
    }
    if max_level >= 2 {
        tmats.push(slice(&lvl2_big));
    }
    Ok(LaxRep {
        label: format!("lax(x={x}, theta={theta})"),
        quantum_dim: 5,
        max_level: max_level.min(2),
        complete: max_level >= 2,
        tmats,
    })
}

/// Builds the L-site chain representation: the ordered product of one
/// single-site factor per inhomogeneity, with series coefficients
/// convolved exactly up to `max_level`. The full series of L sites
/// terminates at level 2L.
pub fn build_monodromy(
    x: &GaussRational,
    thetas: &[GaussRational],
    max_level: u32,
) -> Result<LaxRep, EngineError> {
    let Some((first, rest)) = thetas.split_first() else {
        return Err(EngineError::NeedSites);
    };
    let mut cur = build_lax(x, first, max_level.min(2))?;
    let natural: u32 = 2 * thetas.len() as u32;
    for theta in rest {
        let site = build_lax(x, theta, max_level.min(2))?;
        cur = convolve(&cur, &site, max_level)?;
    }
    cur.label = format!(
        "monodromy(x={x}, sites={}, levels<={max_level})",
        thetas.len()
    );
    cur.complete = max_level >= natural;
    cur.max_level = cur.max_level.min(max_level);
    Ok(cur)
}

fn convolve(left: &LaxRep, right: &LaxRep, max_level: u32) -> Result<LaxRep, EngineError> {
    let dim = left.quantum_dim * right.quantum_dim;
    let top = max_level.min(left.max_level + right.max_level);
    let mut tmats = Vec::new();
    for n in 1..=top {
        let mut level = vec![SparseOp::new(dim); 25];
        for n1 in 0..=n {
            let n2 = n - n1;
            if (n1 > left.max_level && !left.complete)
                || (n2 > right.max_level && !right.complete)
            {
                return Err(EngineError::TruncatedSeries {
                    needed: n,
                    stored: left.max_level.min(right.max_level),
                });
            }
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    let mut acc = SparseOp::new(dim);
                    for e in AUX_LABELS {
                        let l = left.entry(n1, a, e)?;
                        if l.is_zero() {
                            continue;
                        }
                        let r = right.entry(n2, e, b)?;
                        if r.is_zero() {
                            continue;
                        }
                        acc = acc.add(&l.kron(&r));
                    }
                    let slot = &mut level[aux_index(a) * 5 + aux_index(b)];
                    *slot = slot.add(&acc);
                }
            }
        }
        tmats.push(level);
    }
    Ok(LaxRep {
        label: String::new(),
        quantum_dim: dim,
        max_level: top,
        complete: left.complete && right.complete && max_level >= left.max_level + right.max_level,
        tmats,
    })
}

// ---------------------------------------------------------------------------
// Cartan-graded components.
// ---------------------------------------------------------------------------

/// Names for the 25 graded components of one series level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(missing_docs)]
pub enum CompName {
    E3,
    F3,
    Ep,
    Em,
    Fp,
    Fm,
    Up,
    Um,
    Vp,
    Vm,
    Xp,
    Xm,
    Yp,
    Ym,
    I0,
    TE3,
    TF3,
    TEp,
    TEm,
    TFp,
    TFm,
    TUp,
    TUm,
    TVp,
    TVm,
}

impl CompName {
    /// All 25 names in declaration order.
    pub const ALL: [CompName; 25] = [
        CompName::E3,
        CompName::F3,
        CompName::Ep,
        CompName::Em,
        CompName::Fp,
        CompName::Fm,
        CompName::Up,
        CompName::Um,
        CompName::Vp,
        CompName::Vm,
        CompName::Xp,
        CompName::Xm,
        CompName::Yp,
        CompName::Ym,
        CompName::I0,
        CompName::TE3,
        CompName::TF3,
        CompName::TEp,
        CompName::TEm,
        CompName::TFp,
        CompName::TFm,
        CompName::TUp,
        CompName::TUm,
        CompName::TVp,
        CompName::TVm,
    ];
}

impl fmt::Display for CompName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CompName::E3 => "E3",
            CompName::F3 => "F3",
            CompName::Ep => "E+",
            CompName::Em => "E-",
            CompName::Fp => "F+",
            CompName::Fm => "F-",
            CompName::Up => "U+",
            CompName::Um => "U-",
            CompName::Vp => "V+",
            CompName::Vm => "V-",
            CompName::Xp => "X+",
            CompName::Xm => "X-",
            CompName::Yp => "Y+",
            CompName::Ym => "Y-",
            CompName::I0 => "I0",
            CompName::TE3 => "~E3",
            CompName::TF3 => "~F3",
            CompName::TEp => "~E+",
            CompName::TEm => "~E-",
            CompName::TFp => "~F+",
            CompName::TFm => "~F-",
            CompName::TUp => "~U+",
            CompName::TUm => "~U-",
            CompName::TVp => "~V+",
            CompName::TVm => "~V-",
        };
        f.write_str(s)
    }
}

/// (plain, tilde, first entry, partner entry): the plain component is half
/// the difference of the two matrix entries, the tilde half the sum.
const COMPONENT_PAIRS: [(CompName, CompName, (i8, i8), (i8, i8)); 10] = [
    (CompName::E3, CompName::TE3, (2, 2), (-2, -2)),
    (CompName::Up, CompName::TUp, (2, 1), (-1, -2)),
    (CompName::Ep, CompName::TEp, (2, 0), (0, -2)),
    (CompName::Vp, CompName::TVp, (2, -1), (1, -2)),
    (CompName::Um, CompName::TUm, (1, 2), (-2, -1)),
    (CompName::F3, CompName::TF3, (1, 1), (-1, -1)),
    (CompName::Fp, CompName::TFp, (1, 0), (0, -1)),
    (CompName::Em, CompName::TEm, (0, 2), (-2, 0)),
    (CompName::Fm, CompName::TFm, (0, 1), (-1, 0)),
    (CompName::Vm, CompName::TVm, (-1, 2), (-2, 1)),
];

/// Entries that are components on their own.
const COMPONENT_SINGLES: [(CompName, (i8, i8)); 5] = [
    (CompName::Yp, (1, -1)),
    (CompName::Ym, (-1, 1)),
    (CompName::Xp, (2, -2)),
    (CompName::Xm, (-2, 2)),
    (CompName::I0, (0, 0)),
];

/// The 25 graded components of one series level of a representation.
#[derive(Debug, Clone)]
pub struct ComponentSet {
    /// Series level the components were read from.
    pub level: u32,
    /// Quantum dimension.
    pub quantum_dim: usize,
    map: BTreeMap<CompName, SparseOp<GaussRational>>,
}

impl ComponentSet {
    /// The component operator.
    pub fn get(&self, name: CompName) -> &SparseOp<GaussRational> {
        self.map.get(&name).expect("all 25 components present")
    }

    /// Rebuilds the raw matrix entry `T^(level)_{ab}` from the components;
    /// the inverse of [`extract_components`].
    pub fn entry(&self, a: i8, b: i8) -> SparseOp<GaussRational> {
        for (plain, tilde, first, second) in COMPONENT_PAIRS {
            if (a, b) == first {
                return self.get(tilde).add(self.get(plain));
            }
            if (a, b) == second {
                return self.get(tilde).sub(self.get(plain));
            }
        }
        for (name, pos) in COMPONENT_SINGLES {
            if (a, b) == pos {
                return self.get(name).clone();
            }
        }
        unreachable!("every auxiliary pair is covered")
    }
}

/// Splits one series level of a representation into its 25 graded
/// components: half-sums and half-differences of mirrored entries, plus
/// the five entries that stand alone.
pub fn extract_components(rep: &LaxRep, level: u32) -> Result<ComponentSet, EngineError> {
    if level == 0 {
        return Err(EngineError::BadLevel(0));
    }
    let half = GaussRational::ratio(1, 2);
    let mut map = BTreeMap::new();
    for (plain, tilde, first, second) in COMPONENT_PAIRS {
        let t1 = rep.entry(level, first.0, first.1)?;
        let t2 = rep.entry(level, second.0, second.1)?;
        map.insert(plain, t1.sub(&t2).scale(&half));
        map.insert(tilde, t1.add(&t2).scale(&half));
    }
    for (name, pos) in COMPONENT_SINGLES {
        map.insert(name, rep.entry(level, pos.0, pos.1)?);
    }
    Ok(ComponentSet {
        level,
        quantum_dim: rep.quantum_dim,
        map,
    })
}

// ---------------------------------------------------------------------------
// Evaluation of symbolic relations in a representation.
// ---------------------------------------------------------------------------

/// Word-product memo so repeated subproducts are multiplied once.
struct EvalCache<'a> {
    rep: &'a LaxRep,
    memo: HashMap<Word, SparseOp<GaussRational>>,
}

impl<'a> EvalCache<'a> {
    fn new(rep: &'a LaxRep) -> Self {
        EvalCache {
            rep,
            memo: HashMap::new(),
        }
    }

    fn eval_word(&mut self, w: &[GenSymbol]) -> Result<SparseOp<GaussRational>, EngineError> {
        if w.is_empty() {
            return Ok(SparseOp::identity(self.rep.quantum_dim));
        }
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let out = if w.len() == 1 {
            self.rep.entry(w[0].level, w[0].a, w[0].b)?
        } else {
            let mid = w.len() / 2;
            let l = self.eval_word(&w[..mid])?;
            let r = self.eval_word(&w[mid..])?;
            l.mul(&r)
        };
        self.memo.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    fn eval_poly(&mut self, p: &FreePoly) -> Result<SparseOp<GaussRational>, EngineError> {
        let mut acc = SparseOp::new(self.rep.quantum_dim);
        for (w, c) in p.terms() {
            acc = acc.add(&self.eval_word(w)?.scale(c));
        }
        Ok(acc)
    }
}

/// Per-order tallies in an evaluation report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderCounts {
    /// Relations evaluated at this order.
    pub checked: usize,
    /// Relations that did not vanish.
    pub failed: usize,
}

/// Outcome of evaluating a relation set in a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    /// Total relations evaluated.
    pub checked: usize,
    /// Failures with the offending relation's label and first bad entry.
    pub failures: Vec<(String, Witness)>,
    /// Tallies keyed by "(iu,iv)".
    pub by_order: BTreeMap<(i64, i64), OrderCounts>,
}

impl EvalReport {
    /// True when every relation vanished.
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every relation of the set in the given representation and
/// reports exactly which ones fail, if any.
pub fn eval_relations(set: &RelationSet, rep: &LaxRep) -> Result<EvalReport, EngineError> {
    let mut cache = EvalCache::new(rep);
    let mut failures = Vec::new();
    let mut by_order: BTreeMap<(i64, i64), OrderCounts> = BTreeMap::new();
    for rel in &set.relations {
        let val = cache.eval_poly(&rel.poly)?;
        let counts = by_order.entry((rel.iu, rel.iv)).or_default();
        counts.checked += 1;
        if let Some((r, c, v)) = crate::matrix::AlgebraOp::first_nonzero_entry(&val) {
            counts.failed += 1;
            failures.push((
                rel.label(),
                Witness {
                    location: format!("entry ({r},{c})"),
                    got: v.to_string(),
                    want: GaussRational::zero().to_string(),
                },
            ));
        }
    }
    Ok(EvalReport {
        checked: set.relations.len(),
        failures,
        by_order,
    })
}

// ---------------------------------------------------------------------------
// Component identities.
// ---------------------------------------------------------------------------

fn ac(
    a: &SparseOp<GaussRational>,
    b: &SparseOp<GaussRational>,
) -> SparseOp<GaussRational> {
    a.mul(b).add(&b.mul(a))
}

fn cm(
    a: &SparseOp<GaussRational>,
    b: &SparseOp<GaussRational>,
) -> SparseOp<GaussRational> {
    a.mul(b).sub(&b.mul(a))
}

fn outcome_zero(id: String, op: &SparseOp<GaussRational>) -> IdentityOutcome {
    crate::report::zero_outcome::<GaussRational, _>(id, op)
}

fn outcome_eq(
    id: String,
    lhs: &SparseOp<GaussRational>,
    rhs: &SparseOp<GaussRational>,
) -> IdentityOutcome {
    crate::report::equality_outcome::<GaussRational, _>(id, lhs, rhs)
}

/// Checks the component identities of the algebra on a concrete
/// representation: the level-1 degeneracies, the closed level-2 forms,
/// the mixed-level cross relations for n = 1..=n_max, and the ladder
/// recursions producing level n+1 for the Cartan-diagonal components.
pub fn check_constraints(rep: &LaxRep, n_max: u32) -> Result<Vec<IdentityOutcome>, EngineError> {
    if n_max == 0 {
        return Err(EngineError::BadLevel(0));
    }
    let top = (n_max + 1).max(2);
    let mut sets = Vec::new();
    for level in 1..=top {
        sets.push(extract_components(rep, level)?);
    }
    let g = |lv: u32, name: CompName| sets[(lv - 1) as usize].get(name);
    let quarter = GaussRational::ratio(1, 4);
    let half = GaussRational::ratio(1, 2);
    let two = GaussRational::from_int(2);

    let mut out = Vec::new();

    // Ground level: the first series coefficient has no support on the
    // doubled-root or tilde directions, and its diagonal collapses.
    for name in [
        CompName::Xp,
        CompName::Xm,
        CompName::Yp,
        CompName::Ym,
        CompName::TUp,
        CompName::TUm,
        CompName::TVp,
        CompName::TVm,
        CompName::TEp,
        CompName::TEm,
        CompName::TFp,
        CompName::TFm,
    ] {
        out.push(outcome_zero(format!("ground/{name}=0"), g(1, name)));
    }
    out.push(outcome_eq(
        "ground/~E3=I0".into(),
        g(1, CompName::TE3),
        g(1, CompName::I0),
    ));
    out.push(outcome_eq(
        "ground/~F3=I0".into(),
        g(1, CompName::TF3),
        g(1, CompName::I0),
    ));

    // Level 2 in closed form from level-1 data.
    {
        let e3 = g(1, CompName::E3);
        let f3 = g(1, CompName::F3);
        let lhs = g(2, CompName::TE3).sub(g(2, CompName::I0));
        let rhs = ac(g(1, CompName::Up), g(1, CompName::Um))
            .add(&ac(g(1, CompName::Vp), g(1, CompName::Vm)))
            .sub(&ac(g(1, CompName::Fp), g(1, CompName::Fm)).scale(&two))
            .sub(&ac(g(1, CompName::Ep), g(1, CompName::Em)))
            .add(&e3.mul(e3).scale(&two))
            .scale(&quarter);
        out.push(outcome_eq("level2/~E3-I0".into(), &lhs, &rhs));

        let lhs = g(2, CompName::TF3).sub(g(2, CompName::I0));
        let rhs = ac(g(1, CompName::Up), g(1, CompName::Um))
            .add(&ac(g(1, CompName::Vp), g(1, CompName::Vm)))
            .sub(&ac(g(1, CompName::Ep), g(1, CompName::Em)).scale(&two))
            .sub(&ac(g(1, CompName::Fp), g(1, CompName::Fm)))
            .add(&f3.mul(f3).scale(&two))
            .scale(&quarter);
        out.push(outcome_eq("level2/~F3-I0".into(), &lhs, &rhs));
    }
    for plus in [true, false] {
        let sgn = if plus { "+" } else { "-" };
        let pick = |p: CompName, m: CompName| if plus { p } else { m };
        let e_s = g(1, pick(CompName::Ep, CompName::Em));
        let e_o = g(1, pick(CompName::Em, CompName::Ep));
        let f_s = g(1, pick(CompName::Fp, CompName::Fm));
        let f_o = g(1, pick(CompName::Fm, CompName::Fp));
        let u_s = g(1, pick(CompName::Up, CompName::Um));
        let u_o = g(1, pick(CompName::Um, CompName::Up));
        let v_s = g(1, pick(CompName::Vp, CompName::Vm));
        let e3 = g(1, CompName::E3);
        let f3 = g(1, CompName::F3);

        let rhs = ac(e_s, f_o)
            .add(&ac(e3, u_s))
            .add(&ac(f3, u_s))
            .scale(&quarter);
        out.push(outcome_eq(
            format!("level2/~U{sgn}"),
            g(2, pick(CompName::TUp, CompName::TUm)),
            &rhs,
        ));

        let rhs = ac(e3, v_s)
            .sub(&ac(e_s, f_s))
            .sub(&ac(f3, v_s))
            .scale(&quarter);
        out.push(outcome_eq(
            format!("level2/~V{sgn}"),
            g(2, pick(CompName::TVp, CompName::TVm)),
            &rhs,
        ));

        let rhs = ac(e3, e_s)
            .sub(&ac(v_s, f_o))
            .add(&ac(f_s, u_s))
            .scale(&quarter);
        out.push(outcome_eq(
            format!("level2/~E{sgn}"),
            g(2, pick(CompName::TEp, CompName::TEm)),
            &rhs,
        ));

        let rhs = ac(e_o, v_s)
            .add(&ac(e_s, u_o))
            .add(&ac(f3, f_s))
            .scale(&quarter);
        out.push(outcome_eq(
            format!("level2/~F{sgn}"),
            g(2, pick(CompName::TFp, CompName::TFm)),
            &rhs,
        ));

        let rhs = ac(e_s, e_s)
            .add(&ac(u_s, v_s).scale(&two))
            .scale(&(-quarter.clone()));
        out.push(outcome_eq(
            format!("level2/X{sgn}"),
            g(2, pick(CompName::Xp, CompName::Xm)),
            &rhs,
        ));

        let rhs = ac(f_s, f_s)
            .sub(&ac(u_o, v_s).scale(&two))
            .scale(&(-quarter.clone()));
        out.push(outcome_eq(
            format!("level2/Y{sgn}"),
            g(2, pick(CompName::Yp, CompName::Ym)),
            &rhs,
        ));
    }

    // Mixed-level cross relations.
    for n in 1..=n_max {
        use CompName::*;
        let lhs = cm(g(n, E3), g(2, F3)).add(
            &ac(g(1, Up), g(n, TUm))
                .sub(&ac(g(1, Um), g(n, TUp)))
                .add(&ac(g(1, Vm), g(n, TVp)))
                .sub(&ac(g(1, Vp), g(n, TVm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/e3f3-quad"), &lhs));

        out.push(outcome_eq(
            format!("cross/{n}/e3f3-swap"),
            &cm(g(n, E3), g(2, F3)),
            &cm(g(2, E3), g(n, F3)),
        ));

        let lhs = cm(g(n, E3), g(2, E3)).add(
            &ac(g(1, Um), g(n, TUp))
                .sub(&ac(g(1, Up), g(n, TUm)))
                .add(&ac(g(1, Vm), g(n, TVp)))
                .sub(&ac(g(1, Vp), g(n, TVm)))
                .add(&ac(g(1, Em), g(n, TEp)))
                .sub(&ac(g(1, Ep), g(n, TEm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/e3e3"), &lhs));

        let lhs = cm(g(n, F3), g(2, F3)).add(
            &ac(g(1, Up), g(n, TUm))
                .sub(&ac(g(1, Um), g(n, TUp)))
                .add(&ac(g(1, Vp), g(n, TVm)))
                .sub(&ac(g(1, Vm), g(n, TVp)))
                .add(&ac(g(1, Fm), g(n, TFp)))
                .sub(&ac(g(1, Fp), g(n, TFm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/f3f3"), &lhs));

        let lhs = cm(g(n, I0), g(2, I0)).add(
            &ac(g(1, Em), g(n, TEp))
                .sub(&ac(g(1, Ep), g(n, TEm)))
                .add(&ac(g(1, Fm), g(n, TFp)))
                .sub(&ac(g(1, Fp), g(n, TFm))),
        );
        out.push(outcome_zero(format!("cross/{n}/i0i0"), &lhs));

        let lhs = cm(g(n, E3), g(2, I0)).add(
            &ac(g(1, Ep), g(n, Em))
                .sub(&ac(g(n, Ep), g(1, Em)))
                .scale(&half),
        );
        out.push(outcome_zero(format!("cross/{n}/e3i0"), &lhs));

        let lhs = cm(g(n, F3), g(2, I0)).add(
            &ac(g(1, Fp), g(n, Fm))
                .sub(&ac(g(1, Fm), g(n, Fp)))
                .scale(&half),
        );
        out.push(outcome_zero(format!("cross/{n}/f3i0"), &lhs));

        let lhs = cm(g(n, TE3), g(2, F3)).add(
            &ac(g(1, Up), g(n, Um))
                .sub(&ac(g(1, Um), g(n, Up)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .sub(&ac(g(1, Vp), g(n, Vm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/te3f3"), &lhs));

        let lhs = cm(g(n, TF3), g(2, E3)).add(
            &ac(g(n, Up), g(1, Um))
                .sub(&ac(g(n, Um), g(1, Up)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .sub(&ac(g(1, Vp), g(n, Vm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/tf3e3"), &lhs));

        let lhs = cm(g(n, TE3), g(2, E3)).add(
            &ac(g(1, Um), g(n, Up))
                .sub(&ac(g(1, Up), g(n, Um)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .sub(&ac(g(1, Vp), g(n, Vm)))
                .add(&ac(g(1, Em), g(n, Ep)))
                .sub(&ac(g(1, Ep), g(n, Em)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/te3e3"), &lhs));

        // Unlike its counterpart without the tilde, this relation keeps
        // the same V ordering as the te3e3 row instead of mirroring it;
        // the two-site chain at depth two distinguishes the orderings.
        let lhs = cm(g(n, TF3), g(2, F3)).add(
            &ac(g(1, Up), g(n, Um))
                .sub(&ac(g(1, Um), g(n, Up)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .sub(&ac(g(1, Vp), g(n, Vm)))
                .add(&ac(g(1, Fm), g(n, Fp)))
                .sub(&ac(g(1, Fp), g(n, Fm)))
                .scale(&quarter),
        );
        out.push(outcome_zero(format!("cross/{n}/tf3f3"), &lhs));
    }

    // Ladder recursions: level n+1 of the Cartan-diagonal components.
    for n in 1..=n_max {
        use CompName::*;
        let rhs = cm(g(n, Ep), g(2, Em)).add(
            &ac(g(n, I0), g(1, E3))
                .sub(&ac(g(1, I0), g(n, E3)).scale(&two))
                .sub(&ac(g(1, Em), g(n, TEp)))
                .sub(&ac(g(1, Fm), g(n, TFp)))
                .add(&ac(g(1, Fp), g(n, TFm)))
                .add(&ac(g(1, Um), g(n, TUp)))
                .add(&ac(g(1, Vm), g(n, TVp)))
                .add(&ac(g(1, E3), g(n, TE3)))
                .scale(&quarter),
        );
        out.push(outcome_eq(format!("ladder/{n}/E3"), g(n + 1, E3), &rhs));

        let rhs = cm(g(n, Fp), g(2, Fm)).add(
            &ac(g(n, I0), g(1, F3))
                .sub(&ac(g(1, I0), g(n, F3)).scale(&two))
                .sub(&ac(g(1, Fm), g(n, TFp)))
                .sub(&ac(g(1, Em), g(n, TEp)))
                .add(&ac(g(1, Ep), g(n, TEm)))
                .add(&ac(g(1, Up), g(n, TUm)))
                .sub(&ac(g(1, Vm), g(n, TVp)))
                .add(&ac(g(1, F3), g(n, TF3)))
                .scale(&quarter),
        );
        out.push(outcome_eq(format!("ladder/{n}/F3"), g(n + 1, F3), &rhs));

        let lhs = g(n + 1, TE3).sub(g(n + 1, I0));
        let rhs = cm(g(n, TEp), g(2, Em)).add(
            &ac(g(n, I0), g(1, I0))
                .scale(&two)
                .sub(&ac(g(1, I0), g(n, TE3)).scale(&two))
                .sub(&ac(g(1, Em), g(n, Ep)))
                .sub(&ac(g(1, Fm), g(n, Fp)))
                .sub(&ac(g(1, Fp), g(n, Fm)))
                .add(&ac(g(1, Um), g(n, Up)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .add(&ac(g(1, E3), g(n, E3)))
                .scale(&quarter),
        );
        out.push(outcome_eq(format!("ladder/{n}/~E3-I0"), &lhs, &rhs));

        let lhs = g(n + 1, TF3).sub(g(n + 1, I0));
        let rhs = cm(g(n, TFp), g(2, Fm)).add(
            &ac(g(n, I0), g(1, I0))
                .scale(&two)
                .sub(&ac(g(1, I0), g(n, TF3)).scale(&two))
                .sub(&ac(g(1, Fm), g(n, Fp)))
                .sub(&ac(g(1, Em), g(n, Ep)))
                .sub(&ac(g(1, Ep), g(n, Em)))
                .add(&ac(g(1, Up), g(n, Um)))
                .add(&ac(g(1, Vm), g(n, Vp)))
                .add(&ac(g(1, F3), g(n, F3)))
                .scale(&quarter),
        );
        out.push(outcome_eq(format!("ladder/{n}/~F3-I0"), &lhs, &rhs));
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::report::Status;

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::ratio(n, d)
    }

    #[test]
    fn first_order_forms_are_specializations_of_the_generic_one() {
        for (a, b, c, d) in [(2, 1, 2, 1), (1, -1, 0, 0), (2, -2, 1, -1), (0, 0, 2, -2)] {
            for m in 1..=3 {
                let left = exchange_relation(ExchangeKind::OneLeft { m }, a, b, c, d);
                let gen = two_param_relation(-1, m, a, b, c, d);
                assert_eq!(left, gen, "left form at m={m} tuple ({a},{b},{c},{d})");
                let right = exchange_relation(ExchangeKind::OneRight { n: m }, a, b, c, d);
                let gen = two_param_relation(m, -1, a, b, c, d);
                assert_eq!(right, gen, "right form at n={m} tuple ({a},{b},{c},{d})");
            }
        }
    }

    #[test]
    fn zeroth_order_collapses_to_twice_the_first_order_form() {
        // On a tuple where no delta fires, the (0,0) relation is -2 times
        // the first-order one with m = 1.
        let (a, b, c, d) = (2, 1, 2, 1);
        let zz = exchange_relation(ExchangeKind::TwoParam { n: 0, m: 0 }, a, b, c, d);
        let ol = exchange_relation(ExchangeKind::OneLeft { m: 1 }, a, b, c, d);
        assert_eq!(zz, ol.scale(&GaussRational::from_int(-2)));
    }

    #[test]
    fn machine_expansion_matches_the_handwritten_relations() {
        let set = expand_rtt(1, 1, &GaussRational::one()).unwrap();
        assert!(!set.is_empty());
        for rel in &set.relations {
            let (a, b) = rel.row;
            let (c, d) = rel.col;
            let hand = if rel.iu >= 0 && rel.iv >= 0 {
                exchange_relation(
                    ExchangeKind::TwoParam {
                        n: rel.iu,
                        m: rel.iv,
                    },
                    a,
                    b,
                    c,
                    d,
                )
            } else if rel.iu == -1 && rel.iv >= 1 {
                exchange_relation(ExchangeKind::OneLeft { m: rel.iv }, a, b, c, d)
            } else if rel.iv == -1 && rel.iu >= 1 {
                exchange_relation(ExchangeKind::OneRight { n: rel.iu }, a, b, c, d)
            } else {
                panic!("unexpected nonzero order ({},{})", rel.iu, rel.iv);
            };
            assert_eq!(
                rel.poly,
                hand.normalize(),
                "mismatch at {}",
                rel.label()
            );
        }
    }

    #[test]
    fn normalized_relations_do_not_depend_on_the_spacing() {
        let at1 = expand_rtt(1, 1, &GaussRational::one()).unwrap();
        let at53 = expand_rtt(1, 1, &q(5, 3)).unwrap();
        assert_eq!(at1.len(), at53.len());
        for (r1, r2) in at1.relations.iter().zip(&at53.relations) {
            assert_eq!((r1.iu, r1.iv, r1.row, r1.col), (r2.iu, r2.iv, r2.row, r2.col));
            assert_eq!(r1.poly, r2.poly, "at {}", r1.label());
        }
    }

    #[test]
    fn window_and_spacing_are_validated() {
        assert!(matches!(
            expand_rtt(0, 1, &GaussRational::one()),
            Err(EngineError::BadWindow { .. })
        ));
        assert!(matches!(
            expand_rtt(1, 1, &GaussRational::zero()),
            Err(EngineError::ZeroX)
        ));
        assert!(matches!(
            build_lax(&GaussRational::zero(), &GaussRational::zero(), 2),
            Err(EngineError::ZeroX)
        ));
        assert!(matches!(
            build_monodromy(&GaussRational::one(), &[], 2),
            Err(EngineError::NeedSites)
        ));
    }

    #[test]
    fn single_site_series_has_the_expected_first_level() {
        // T^(1)_{ab} = E_{-a,-b} - E_{ba} - (3/2 + 2 theta/x) delta_ab Id.
        for (x, theta) in [(q(1, 1), q(0, 1)), (q(2, 1), q(1, 2))] {
            let rep = build_lax(&x, &theta, 2).unwrap();
            let shift = q(3, 2) + q(2, 1) * theta.clone() * x.inv().unwrap();
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    let got = rep.entry(1, a, b).unwrap().to_dense();
                    let mut want: Matrix<GaussRational> = Matrix::zeros(5, 5);
                    let bump = |m: &mut Matrix<GaussRational>, r: usize, c: usize, v: GaussRational| {
                        let cur = m.get(r, c).clone();
                        m.set(r, c, cur + v);
                    };
                    bump(&mut want, aux_index(-a), aux_index(-b), GaussRational::one());
                    bump(&mut want, aux_index(b), aux_index(a), -GaussRational::one());
                    if a == b {
                        for r in 0..5 {
                            bump(&mut want, r, r, -shift.clone());
                        }
                    }
                    assert_eq!(got, want, "level 1 entry ({a},{b}) at x={x}, theta={theta}");
                }
            }
            // The series terminates: level 3 and beyond vanish.
            assert!(rep.entry(3, 2, 2).unwrap().is_zero());
            assert!(rep.entry(7, 0, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn diagonal_scalar_of_the_first_level_is_frozen() {
        // At (x, theta) = (1, 0), T^(1)_{00} = -(3/2) Id.
        let rep = build_lax(&GaussRational::one(), &GaussRational::zero(), 2).unwrap();
        let want = SparseOp::identity(5).scale(&q(-3, 2));
        assert_eq!(rep.entry(1, 0, 0).unwrap(), want);
    }

    #[test]
    fn single_site_satisfies_every_first_window_relation() {
        let set = expand_rtt(1, 1, &GaussRational::one()).unwrap();
        let rep = build_lax(&GaussRational::one(), &q(1, 3), 2).unwrap();
        let report = eval_relations(&set, &rep).unwrap();
        assert!(report.all_ok(), "failures: {:?}", report.failures);
        assert_eq!(report.checked, set.len());
    }

    #[test]
    fn two_sites_satisfy_every_first_window_relation() {
        let set = expand_rtt(1, 1, &GaussRational::one()).unwrap();
        let rep = build_monodromy(&GaussRational::one(), &[q(0, 1), q(1, 2)], 4).unwrap();
        assert_eq!(rep.quantum_dim, 25);
        assert!(rep.complete);
        let report = eval_relations(&set, &rep).unwrap();
        assert!(report.all_ok(), "failures: {:?}", report.failures);
    }

    #[test]
    fn one_site_chain_is_the_single_site_representation() {
        let lax = build_lax(&q(2, 1), &q(1, 3), 2).unwrap();
        let mono = build_monodromy(&q(2, 1), &[q(1, 3)], 2).unwrap();
        for level in 1..=2 {
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    assert_eq!(
                        lax.entry(level, a, b).unwrap(),
                        mono.entry(level, a, b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn truncated_series_refuses_levels_it_cannot_know() {
        let rep = build_lax(&GaussRational::one(), &GaussRational::zero(), 1).unwrap();
        assert!(matches!(
            rep.entry(2, 0, 0),
            Err(EngineError::TruncatedSeries { needed: 2, stored: 1 })
        ));
    }

    #[test]
    fn components_roundtrip_to_the_raw_entries() {
        let rep = build_lax(&q(1, 1), &q(1, 5), 2).unwrap();
        for level in 1..=2 {
            let cs = extract_components(&rep, level).unwrap();
            for a in AUX_LABELS {
                for b in AUX_LABELS {
                    assert_eq!(
                        cs.entry(a, b),
                        rep.entry(level, a, b).unwrap(),
                        "level {level} entry ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn component_identities_hold_on_the_single_site() {
        let rep = build_lax(&GaussRational::one(), &GaussRational::zero(), 2).unwrap();
        let outcomes = check_constraints(&rep, 1).unwrap();
        assert_eq!(outcomes.len(), 14 + 14 + 11 + 4);
        for o in &outcomes {
            assert_eq!(o.status, Status::Pass, "failed: {} {:?}", o.id, o.witness);
        }
    }

    #[test]
    fn component_identities_hold_on_two_sites_at_depth_two() {
        let rep =
            build_monodromy(&GaussRational::one(), &[q(0, 1), q(1, 2)], 4).unwrap();
        let outcomes = check_constraints(&rep, 2).unwrap();
        for o in &outcomes {
            assert_eq!(o.status, Status::Pass, "failed: {} {:?}", o.id, o.witness);
        }
    }
}

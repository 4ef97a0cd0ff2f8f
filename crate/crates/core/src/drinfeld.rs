//! The deformation-side checks: a pair of generator families (level one and
//! level two) is tested against the defining relations of the deformed
//! algebra — the adjoint action, the quadratic deformation identity with its
//! rank-six tensor, the mixed cubic identity, and the degenerate Serre
//! relation in both the antisymmetric-pair basis and the Cartan-Weyl basis.
//!
//! All right-hand sides are built from the abstract structure constants, so
//! a representation under test never certifies itself against its own data.

use crate::matrix::AlgebraOp;
use crate::report::IdentityOutcome;
use crate::rtt::{extract_components, CompName, ComponentSet, EngineError, LaxRep};
use crate::scalar::{ExactScalar, GaussRational, GaussSqrt2, HasSqrt2};
use crate::so5::{abstract_structure_constants, CartanWeylSet, GeneratorSet, ADJOINT_PAIRS};
use crate::sparse::SparseOp;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

/// The rank-six coefficient tensor of the quadratic deformation identity:
/// a contraction of four structure constants over three internal indices,
/// normalized by 1/4!. Entries are grouped by the left triple so the
/// right-hand side of a check can be assembled in one pass.
pub struct ATensor {
    by_lhs: BTreeMap<(usize, usize, usize), Vec<((usize, usize, usize), GaussRational)>>,
    support: usize,
}

impl ATensor {
    /// The nonzero `(α, β, γ)` entries for a fixed left triple `(λ, μ, ν)`.
    pub fn rows_for(&self, l: usize, m: usize, n: usize) -> &[((usize, usize, usize), GaussRational)] {
        self.by_lhs
            .get(&(l, m, n))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Number of nonzero entries over all six indices.
    pub fn support_len(&self) -> usize {
        self.support
    }
}

/// Computes the coefficient tensor once and caches it for the process.
pub fn compute_a_tensor() -> &'static ATensor {
    static CACHE: OnceLock<ATensor> = OnceLock::new();
    CACHE.get_or_init(|| {
        let c = abstract_structure_constants();
        let nz: Vec<(usize, usize, usize, GaussRational)> = c
            .iter_nonzero()
            .map(|((l, m, n), v)| (l, m, n, v.clone()))
            .collect();
        let norm = GaussRational::ratio(1, 24);
        let mut acc: BTreeMap<[usize; 6], GaussRational> = BTreeMap::new();
        for (l, al, s, v1) in &nz {
            for (m, be, t, v2) in &nz {
                let v12 = v1.mul_ref(v2);
                for (n, ga, r, v3) in &nz {
                    let v4 = c.get(*s, *t, *r);
                    if v4.is_zero() {
                        continue;
                    }
                    let val = v12.mul_ref(v3).mul_ref(v4).mul_ref(&norm);
                    let key = [*l, *m, *n, *al, *be, *ga];
                    let slot = acc.entry(key).or_insert_with(GaussRational::zero);
                    *slot = slot.clone() + val;
                }
            }
        }
        let mut by_lhs: BTreeMap<(usize, usize, usize), Vec<((usize, usize, usize), GaussRational)>> =
            BTreeMap::new();
        let mut support = 0usize;
        for ([l, m, n, al, be, ga], v) in acc {
            if v.is_zero() {
                continue;
            }
            support += 1;
            by_lhs.entry((l, m, n)).or_default().push(((al, be, ga), v));
        }
        ATensor { by_lhs, support }
    })
}

/// The fully symmetrized triple product: the sum of the six orderings,
/// with no 1/6 in front.
pub fn triple_product<S: ExactScalar, Op: AlgebraOp<S>>(x: &Op, y: &Op, z: &Op) -> Op {
    x.mul_op(&y.mul_op(z))
        .add_op(&x.mul_op(&z.mul_op(y)))
        .add_op(&y.mul_op(&x.mul_op(z)))
        .add_op(&y.mul_op(&z.mul_op(x)))
        .add_op(&z.mul_op(&x.mul_op(y)))
        .add_op(&z.mul_op(&y.mul_op(x)))
}

/// A candidate realization of the deformed algebra: ten level-one
/// generators, ten level-two generators, and the deformation scale h.
pub struct YangianPair<S: ExactScalar, Op: AlgebraOp<S>> {
    /// Human-readable tag used in reports.
    pub label: String,
    /// The level-one family, which must close under the bracket.
    pub level1: GeneratorSet<Op>,
    /// The level-two family, which must transform in the adjoint.
    pub level2: GeneratorSet<Op>,
    /// Deformation scale entering the right-hand sides quadratically.
    pub h: S,
}

fn pair_tag(idx: usize) -> String {
    let (a, b) = ADJOINT_PAIRS[idx];
    format!("{a}{b}")
}

fn zero_outcome<S: ExactScalar, Op: AlgebraOp<S>>(id: String, op: &Op) -> IdentityOutcome {
    crate::report::zero_outcome::<S, _>(id, op)
}

/// Checks the adjoint structure: the level-one brackets reproduce the
/// structure constants, and the level-one action on level two does too.
/// 45 + 100 identities.
pub fn check_adjoint<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
) -> Vec<IdentityOutcome> {
    let c = abstract_structure_constants();
    let mut out = Vec::new();
    for l in 0..10 {
        for m in (l + 1)..10 {
            let mut want = pair.level1.by_index(0).zero_like();
            for n in 0..10 {
                let coeff = c.get(l, m, n);
                if !coeff.is_zero() {
                    want = want.add_op(&pair.level1.by_index(n).scale_op(&S::from_gauss(coeff)));
                }
            }
            let got = pair.level1.by_index(l).commutator(pair.level1.by_index(m));
            out.push(zero_outcome(
                format!("adjoint/II({},{})", pair_tag(l), pair_tag(m)),
                &got.sub_op(&want),
            ));
        }
    }
    for l in 0..10 {
        for m in 0..10 {
            let mut want = pair.level1.by_index(0).zero_like();
            for n in 0..10 {
                let coeff = c.get(l, m, n);
                if !coeff.is_zero() {
                    want = want.add_op(&pair.level2.by_index(n).scale_op(&S::from_gauss(coeff)));
                }
            }
            let got = pair.level1.by_index(l).commutator(pair.level2.by_index(m));
            out.push(zero_outcome(
                format!("adjoint/IJ({},{})", pair_tag(l), pair_tag(m)),
                &got.sub_op(&want),
            ));
        }
    }
    out
}

fn sorted3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// The 120 strictly ordered index triples of the quadratic family, in
/// iteration order.
pub fn quadratic_triples() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(120);
    for l in 0..10 {
        for m in (l + 1)..10 {
            for n in (m + 1)..10 {
                out.push((l, m, n));
            }
        }
    }
    out
}

/// Checks the quadratic deformation identity over all 120 strictly ordered
/// triples: the mismatch between the two nested brackets equals `h²` times
/// the tensor contraction with the symmetrized triple products of level one.
/// `rhs_scale` multiplies the right-hand side; an exact realization uses 1,
/// while realizations fixed only up to normalization pass their fitted
/// constant (see [`fit_quadratic_scale`]).
pub fn check_quadratic<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    rhs_scale: &S,
) -> Vec<IdentityOutcome> {
    check_quadratic_on(pair, rhs_scale, &quadratic_triples())
}

/// [`check_quadratic`] restricted to the given strictly ordered triples.
pub fn check_quadratic_on<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    rhs_scale: &S,
    triples: &[(usize, usize, usize)],
) -> Vec<IdentityOutcome> {
    let a = compute_a_tensor();
    let hh = pair.h.mul_ref(&pair.h).mul_ref(rhs_scale);
    let mut cache: HashMap<(usize, usize, usize), Op> = HashMap::new();
    let mut out = Vec::new();
    for &(l, m, n) in triples {
        let lhs = quadratic_lhs(pair, l, m, n);
        let mut rhs = pair.level1.by_index(0).zero_like();
        for ((al, be, ga), coeff) in a.rows_for(l, m, n) {
            let key = sorted3(*al, *be, *ga);
            let prod = cache.entry(key).or_insert_with(|| {
                triple_product(
                    pair.level1.by_index(key.0),
                    pair.level1.by_index(key.1),
                    pair.level1.by_index(key.2),
                )
            });
            rhs = rhs.add_op(&prod.scale_op(&S::from_gauss(coeff)));
        }
        rhs = rhs.scale_op(&hh);
        out.push(zero_outcome(
            format!(
                "deform/({},{},{})",
                pair_tag(l),
                pair_tag(m),
                pair_tag(n)
            ),
            &lhs.sub_op(&rhs),
        ));
    }
    out
}

fn quadratic_lhs<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    l: usize,
    m: usize,
    n: usize,
) -> Op {
    let jl = pair.level2.by_index(l);
    let jm = pair.level2.by_index(m);
    let jn = pair.level2.by_index(n);
    let il = pair.level1.by_index(l);
    let inn = pair.level1.by_index(n);
    jl.commutator(&jm.commutator(inn))
        .sub_op(&il.commutator(&jm.commutator(jn)))
}

/// Fits the right-hand-side scale of the quadratic identity from the first
/// strictly ordered triple whose right-hand side is nonzero: the ratio of
/// the corresponding left-hand-side entry to that entry. Returns None when
/// every right-hand side vanishes (degenerate level-one family).
pub fn fit_quadratic_scale<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
) -> Option<S> {
    let a = compute_a_tensor();
    let hh = pair.h.mul_ref(&pair.h);
    for l in 0..10 {
        for m in (l + 1)..10 {
            for n in (m + 1)..10 {
                let mut rhs = pair.level1.by_index(0).zero_like();
                for ((al, be, ga), coeff) in a.rows_for(l, m, n) {
                    let prod = triple_product(
                        pair.level1.by_index(*al),
                        pair.level1.by_index(*be),
                        pair.level1.by_index(*ga),
                    );
                    rhs = rhs.add_op(&prod.scale_op(&S::from_gauss(coeff)));
                }
                rhs = rhs.scale_op(&hh);
                if let Some((r, c, denom)) = rhs.first_nonzero_entry() {
                    let lhs = quadratic_lhs(pair, l, m, n);
                    let num = lhs.entry_at(r, c);
                    let inv = denom.inv()?;
                    return Some(num.mul_ref(&inv));
                }
            }
        }
    }
    None
}

/// Checks the mixed cubic identity for the first `lm_count` strictly
/// ordered index pairs against all 45 ordered partner pairs. The
/// right-hand side contracts the coefficient tensor with one structure
/// constant on each side and with mixed triple products (two level-one
/// factors, one level-two).
pub fn check_cubic<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    rhs_scale: &S,
    lm_count: usize,
) -> Vec<IdentityOutcome> {
    let a = compute_a_tensor();
    let c = abstract_structure_constants();
    let hh = pair.h.mul_ref(&pair.h).mul_ref(rhs_scale);
    let mut lm_pairs = Vec::new();
    for l in 0..10 {
        for m in (l + 1)..10 {
            lm_pairs.push((l, m));
        }
    }
    lm_pairs.truncate(lm_count);

    let mut cache: HashMap<(usize, usize, usize), Op> = HashMap::new();
    let mut out = Vec::new();
    for &(l, m) in &lm_pairs {
        for s in 0..10 {
            for t in (s + 1)..10 {
                // Left side: the two double brackets.
                let jl = pair.level2.by_index(l);
                let jm = pair.level2.by_index(m);
                let js = pair.level2.by_index(s);
                let jt = pair.level2.by_index(t);
                let il = pair.level1.by_index(l);
                let is = pair.level1.by_index(s);
                let lhs = jl
                    .commutator(jm)
                    .commutator(&is.commutator(jt))
                    .add_op(&js.commutator(jt).commutator(&il.commutator(jm)));

                // Right side: gather (α, β, γ) coefficients over the
                // internal index.
                let mut coeffs: BTreeMap<(usize, usize, usize), GaussRational> = BTreeMap::new();
                for nu in 0..10 {
                    let cst = c.get(s, t, nu);
                    if !cst.is_zero() {
                        for ((al, be, ga), v) in a.rows_for(l, m, nu) {
                            let slot = coeffs
                                .entry((*al, *be, *ga))
                                .or_insert_with(GaussRational::zero);
                            *slot = slot.clone() + v.mul_ref(cst);
                        }
                    }
                    let clm = c.get(l, m, nu);
                    if !clm.is_zero() {
                        for ((al, be, ga), v) in a.rows_for(s, t, nu) {
                            let slot = coeffs
                                .entry((*al, *be, *ga))
                                .or_insert_with(GaussRational::zero);
                            *slot = slot.clone() + v.mul_ref(clm);
                        }
                    }
                }
                let mut rhs = pair.level1.by_index(0).zero_like();
                for ((al, be, ga), v) in &coeffs {
                    if v.is_zero() {
                        continue;
                    }
                    let key = (*al.min(be), *al.max(be), *ga);
                    let prod = cache.entry(key).or_insert_with(|| {
                        mixed_triple(pair, key.0, key.1, key.2)
                    });
                    rhs = rhs.add_op(&prod.scale_op(&S::from_gauss(v)));
                }
                rhs = rhs.scale_op(&hh);
                out.push(zero_outcome(
                    format!(
                        "mixed/({},{})({},{})",
                        pair_tag(l),
                        pair_tag(m),
                        pair_tag(s),
                        pair_tag(t)
                    ),
                    &lhs.sub_op(&rhs),
                ));
            }
        }
    }
    out
}

fn mixed_triple<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    al: usize,
    be: usize,
    ga: usize,
) -> Op {
    triple_product(
        pair.level1.by_index(al),
        pair.level1.by_index(be),
        pair.level2.by_index(ga),
    )
}

/// Checks the degenerate Serre relation in the antisymmetric-pair basis:
/// the bracket of two particular level-two generators against -(i/4!) h²
/// times four symmetrized triples of level-one generators. The overall sign
/// is tied to the bracket convention fixed by [`abstract_structure_constants`];
/// it is pinned mechanically by the two-site chain, where the same scale
/// also fits the quadratic identity and the component tables.
pub fn check_serre<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
    rhs_scale: &S,
) -> IdentityOutcome {
    let g = &pair.level1;
    let lhs = pair.level2.get(2, 3).commutator(&pair.level2.get(1, 5));
    let rhs = serre_rhs_unit(g)
        .scale_op(&pair.h.mul_ref(&pair.h).mul_ref(rhs_scale));
    zero_outcome("serre/pair-basis".into(), &lhs.sub_op(&rhs))
}

/// The Serre right-hand side at unit scale and unit `h`: -(i/4!) times the
/// four symmetrized level-one triples.
fn serre_rhs_unit<S: ExactScalar, Op: AlgebraOp<S>>(g: &GeneratorSet<Op>) -> Op {
    let t1 = triple_product(&g.get(1, 3), &g.get(4, 2), &g.get(4, 5));
    let t2 = triple_product(&g.get(1, 2), &g.get(4, 5), &g.get(3, 4));
    let t3 = triple_product(&g.get(1, 4), &g.get(4, 2), &g.get(3, 5));
    let t4 = triple_product(&g.get(1, 4), &g.get(3, 4), &g.get(2, 5));
    let coef = S::i().mul_ref(&S::ratio(-1, 24));
    t1.add_op(&t2).sub_op(&t3).sub_op(&t4).scale_op(&coef)
}

/// Fits the right-hand-side scale of the Serre relation from its first
/// nonzero right-hand-side entry. Returns None when the right-hand side
/// vanishes in the representation, which happens for both matrix
/// realizations; the chain realization resolves it.
pub fn fit_serre_scale<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
) -> Option<S> {
    let rhs = serre_rhs_unit(&pair.level1).scale_op(&pair.h.mul_ref(&pair.h));
    let (r, c, denom) = rhs.first_nonzero_entry()?;
    let lhs = pair.level2.get(2, 3).commutator(&pair.level2.get(1, 5));
    Some(lhs.entry_at(r, c).mul_ref(&denom.inv()?))
}

/// Fits the deformation scale from the quadratic identity, falling back to
/// the Serre relation. Returns None only when both right-hand sides vanish
/// in the representation; every deformed identity then holds at any scale,
/// so callers conventionally proceed with 1.
pub fn fit_deformation_scale<S: ExactScalar, Op: AlgebraOp<S>>(
    pair: &YangianPair<S, Op>,
) -> Option<S> {
    fit_quadratic_scale(pair).or_else(|| fit_serre_scale(pair))
}

/// Checks the degenerate Serre relation in the Cartan-Weyl basis: the
/// bracket of the two level-two Cartan raising/lowering partners equals a
/// quarter of four ordered triple products of level-one elements.
pub fn check_serre_cw<S: ExactScalar, Op: AlgebraOp<S>>(
    cw1: &CartanWeylSet<Op>,
    cw2: &CartanWeylSet<Op>,
    rhs_scale: &S,
) -> IdentityOutcome {
    let lhs = cw2.e3.commutator(&cw2.f3);
    let p1 = cw1.u_minus.mul_op(&cw1.e_plus).mul_op(&cw1.f_minus);
    let p2 = cw1.f_plus.mul_op(&cw1.e_minus).mul_op(&cw1.u_plus);
    let p3 = cw1.v_minus.mul_op(&cw1.e_plus).mul_op(&cw1.f_plus);
    let p4 = cw1.f_minus.mul_op(&cw1.e_minus).mul_op(&cw1.v_plus);
    let quarter = S::ratio(1, 4).mul_ref(rhs_scale);
    let rhs = p1.sub_op(&p2).add_op(&p3).sub_op(&p4).scale_op(&quarter);
    zero_outcome("serre/cartan-weyl".into(), &lhs.sub_op(&rhs))
}

/// A candidate pair whose second level is a scalar multiple of the first.
/// It satisfies the adjoint relations for every `u` but cannot satisfy the
/// quadratic identity; it exists as a negative control.
pub fn proportional_pair<S: ExactScalar, Op: AlgebraOp<S>>(
    g: &GeneratorSet<Op>,
    u: &S,
) -> YangianPair<S, Op> {
    let level2 = GeneratorSet::from_ordered(
        format!("{}*u", g.label),
        g.rep_dim,
        (0..10).map(|k| g.by_index(k).scale_op(u)).collect(),
    );
    YangianPair {
        label: format!("proportional({})", g.label),
        level1: g.clone(),
        level2,
        h: S::one(),
    }
}

/// A candidate pair whose second level vanishes identically; the adjoint
/// relations hold trivially and the quadratic identity fails. The second
/// negative control.
pub fn null_pair<S: ExactScalar, Op: AlgebraOp<S>>(g: &GeneratorSet<Op>) -> YangianPair<S, Op> {
    let level2 = GeneratorSet::from_ordered(
        format!("{}*0", g.label),
        g.rep_dim,
        (0..10).map(|k| g.by_index(k).zero_like()).collect(),
    );
    YangianPair {
        label: format!("null({})", g.label),
        level1: g.clone(),
        level2,
        h: S::one(),
    }
}

/// Reads the ten Cartan-Weyl elements straight out of a component set.
pub fn cw_from_components(cs: &ComponentSet) -> CartanWeylSet<SparseOp<GaussRational>> {
    CartanWeylSet {
        e3: cs.get(CompName::E3).clone(),
        f3: cs.get(CompName::F3).clone(),
        e_plus: cs.get(CompName::Ep).clone(),
        e_minus: cs.get(CompName::Em).clone(),
        f_plus: cs.get(CompName::Fp).clone(),
        f_minus: cs.get(CompName::Fm).clone(),
        u_plus: cs.get(CompName::Up).clone(),
        u_minus: cs.get(CompName::Um).clone(),
        v_plus: cs.get(CompName::Vp).clone(),
        v_minus: cs.get(CompName::Vm).clone(),
    }
}

/// Inverts the Cartan-Weyl change of basis on one component set, returning
/// the ten antisymmetric-pair generators in canonical order, each scaled by
/// `scale` (1 for level one, h for level two).
fn inverse_cw(cs: &ComponentSet, scale: &GaussSqrt2) -> Vec<SparseOp<GaussSqrt2>> {
    let lift = |name: CompName| cs.get(name).map(GaussSqrt2::from_gauss);
    let e3 = lift(CompName::E3);
    let f3 = lift(CompName::F3);
    let ep = lift(CompName::Ep);
    let em = lift(CompName::Em);
    let fp = lift(CompName::Fp);
    let fm = lift(CompName::Fm);
    let up = lift(CompName::Up);
    let um = lift(CompName::Um);
    let vp = lift(CompName::Vp);
    let vm = lift(CompName::Vm);

    let i = GaussSqrt2::i();
    let half = GaussSqrt2::ratio(1, 2);
    let mi_half = (-i.clone()).mul_ref(&half);
    let m_half = -half.clone();
    let inv_rt2 = GaussSqrt2::sqrt2().mul_ref(&half);
    let mi_rt2 = (-i.clone()).mul_ref(&inv_rt2);
    let i_rt2 = i.mul_ref(&inv_rt2);

    let i12 = up.add(&vp).sub(&um).sub(&vm).scale(&mi_half);
    let i13 = up.add(&vp).add(&um).add(&vm).scale(&m_half);
    let i14 = fp.sub(&fm).scale(&mi_rt2);
    let i15 = f3.clone();
    let i23 = e3.clone();
    let i24 = ep.sub(&em).scale(&i_rt2);
    let i25 = vp.sub(&up).add(&vm).sub(&um).scale(&half);
    let i34 = ep.add(&em).scale(&inv_rt2);
    let i35 = vp.sub(&up).sub(&vm).add(&um).scale(&mi_half);
    let i45 = fp.add(&fm).scale(&inv_rt2);

    vec![i12, i13, i14, i15, i23, i24, i25, i34, i35, i45]
        .into_iter()
        .map(|op| op.scale(scale))
        .collect()
}

/// Builds a candidate pair from the first two series levels of a concrete
/// representation, pulling the components back through the Cartan-Weyl
/// change of basis. The deformation scale is the spacing x.
pub fn pair_from_rep(
    rep: &LaxRep,
    x: &GaussRational,
    label: impl Into<String>,
) -> Result<YangianPair<GaussSqrt2, SparseOp<GaussSqrt2>>, EngineError> {
    let c1 = extract_components(rep, 1)?;
    let c2 = extract_components(rep, 2)?;
    let label = label.into();
    let one = GaussSqrt2::one();
    let h = GaussSqrt2::from_gauss(x);
    let level1 = GeneratorSet::from_ordered(
        format!("{label}/1"),
        rep.quantum_dim,
        inverse_cw(&c1, &one),
    );
    let level2 = GeneratorSet::from_ordered(
        format!("{label}/2"),
        rep.quantum_dim,
        inverse_cw(&c2, &h),
    );
    Ok(YangianPair {
        label,
        level1,
        level2,
        h,
    })
}

/// A single-site candidate pair at the given spacing and inhomogeneity.
pub fn lax_pair(
    x: &GaussRational,
    theta: &GaussRational,
) -> Result<YangianPair<GaussSqrt2, SparseOp<GaussSqrt2>>, EngineError> {
    let rep = crate::rtt::build_lax(x, theta, 2)?;
    pair_from_rep(&rep, x, format!("lax(x={x}, theta={theta})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::report::Status;
    use crate::rtt::build_lax;
    use crate::so5::build_spinor_generators;

    fn diag(entries: [i64; 2]) -> Matrix<GaussRational> {
        Matrix::from_fn(2, 2, |r, c| {
            if r == c {
                GaussRational::from_int(entries[r])
            } else {
                GaussRational::zero()
            }
        })
    }

    #[test]
    fn triple_product_sums_six_orderings() {
        // On commuting matrices the six orderings coincide.
        let d1 = diag([1, 2]);
        let d2 = diag([3, 5]);
        let d3 = diag([7, 11]);
        let got = triple_product::<GaussRational, _>(&d1, &d2, &d3);
        let want = d1.mul(&d2).mul(&d3).scale(&GaussRational::from_int(6));
        assert_eq!(got, want);
        // And the product is symmetric in its arguments.
        let swapped = triple_product::<GaussRational, _>(&d3, &d1, &d2);
        assert_eq!(got, swapped);
    }

    #[test]
    fn coefficient_tensor_has_stable_support() {
        let a = compute_a_tensor();
        assert!(a.support_len() > 0);
        // The cache hands back the same instance.
        assert!(std::ptr::eq(a, compute_a_tensor()));
    }

    #[test]
    fn vanishing_second_level_passes_the_adjoint_but_not_the_deformation() {
        // The controls need a representation whose deformed right-hand
        // sides survive; the two-site chain is the smallest one.
        let chain = crate::fock::build_chain(&crate::fock::ChainConfig::plain(2)).unwrap();
        let pair = null_pair(&chain.as_pair().level1);
        for o in check_adjoint(&pair) {
            assert_eq!(o.status, Status::Pass, "{}", o.id);
        }
        let quad = check_quadratic(&pair, &GaussRational::one());
        assert_eq!(quad.len(), 120);
        assert!(
            quad.iter().any(|o| o.status == Status::Fail),
            "a vanishing second level must break the quadratic identity"
        );
        let serre = check_serre(&pair, &GaussRational::one());
        assert_eq!(serre.status, Status::Fail);
    }

    #[test]
    fn proportional_second_level_fails_the_deformation() {
        let chain = crate::fock::build_chain(&crate::fock::ChainConfig::plain(2)).unwrap();
        let pair = proportional_pair(&chain.as_pair().level1, &GaussRational::from_int(3));
        for o in check_adjoint(&pair) {
            assert_eq!(o.status, Status::Pass, "{}", o.id);
        }
        let quad = check_quadratic(&pair, &GaussRational::one());
        assert!(quad.iter().any(|o| o.status == Status::Fail));
    }

    #[test]
    fn small_representations_degenerate_the_deformation() {
        // The four-dimensional representation annihilates every deformed
        // right-hand side, so no scale can be fitted there and even a
        // vanishing second level passes at an arbitrary scale. Negative
        // controls must therefore run on the chain instead.
        let g = build_spinor_generators(&crate::so5::build_clifford::<GaussRational>()).unwrap();
        let pair = null_pair(&g);
        assert_eq!(fit_deformation_scale(&pair), None);
        let scale = GaussRational::from_int(17);
        for o in check_quadratic(&pair, &scale) {
            assert_eq!(o.status, Status::Pass, "{}", o.id);
        }
        assert_eq!(check_serre(&pair, &scale).status, Status::Pass);
    }

    #[test]
    fn lax_pair_satisfies_the_adjoint_relations() {
        let pair = lax_pair(&GaussRational::one(), &GaussRational::zero()).unwrap();
        let outcomes = check_adjoint(&pair);
        assert_eq!(outcomes.len(), 145);
        for o in outcomes {
            assert_eq!(o.status, Status::Pass, "failed {} {:?}", o.id, o.witness);
        }
    }

    #[test]
    fn lax_pair_satisfies_the_deformation_at_every_scale() {
        // The five-dimensional representation also annihilates every
        // deformed right-hand side, so the identities hold at any scale
        // and the fit honestly reports that nothing pins one down.
        let pair = lax_pair(&GaussRational::one(), &GaussRational::zero()).unwrap();
        assert_eq!(fit_deformation_scale(&pair), None);
        for scale in [GaussSqrt2::one(), GaussSqrt2::ratio(7, 3)] {
            for o in check_quadratic(&pair, &scale) {
                assert_eq!(o.status, Status::Pass, "failed {} {:?}", o.id, o.witness);
            }
            for o in check_cubic(&pair, &scale, 3) {
                assert_eq!(o.status, Status::Pass, "failed {} {:?}", o.id, o.witness);
            }
            let serre = check_serre(&pair, &scale);
            assert_eq!(serre.status, Status::Pass, "{:?}", serre.witness);
        }

        // The degeneracy does not depend on the inhomogeneity.
        let shifted = lax_pair(&GaussRational::one(), &GaussRational::from_int(7)).unwrap();
        assert_eq!(fit_deformation_scale(&shifted), None);
    }

    #[test]
    fn serre_in_the_cartan_weyl_basis_holds_on_the_single_site() {
        let x = GaussRational::one();
        let rep = build_lax(&x, &GaussRational::zero(), 2).unwrap();
        let cw1 = cw_from_components(&extract_components(&rep, 1).unwrap());
        let cw2 = cw_from_components(&extract_components(&rep, 2).unwrap());
        // Single-site degeneracy again: both sides vanish, so the check
        // passes at unrelated scales.
        for scale in [GaussRational::one(), GaussRational::ratio(7, 3)] {
            let o = check_serre_cw(&cw1, &cw2, &scale);
            assert_eq!(o.status, Status::Pass, "{:?}", o.witness);
        }
    }
}

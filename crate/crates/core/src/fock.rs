//! The lattice realization: four species of fermions per site on an open
//! chain, built as exact sparse operators through the Jordan-Wigner
//! transformation. Site bilinears weighted by the spinor generators give a
//! local copy of the rotation algebra; an antisymmetrized bilocal sum over
//! site pairs gives the second-level family.
//!
//! Everything lives over the Gaussian rationals, and the state space grows
//! as 16 per site, so a memory gate guards against chain lengths that
//! cannot fit.

use crate::matrix::AlgebraOp;
use crate::report::{IdentityOutcome, Witness};
use crate::scalar::{ExactScalar, GaussRational};
use crate::so5::{build_clifford, build_spinor_generators, GeneratorSet, ADJOINT_PAIRS};
use crate::sparse::SparseOp;
use num_traits::{One, Zero};

/// Default memory gate in mebibytes, overridable per call site.
pub const DEFAULT_MEM_BUDGET_MB: u64 = 2048;

/// Errors from configuring or building a chain.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    /// The chain would not fit in the allowed memory.
    #[error("chain needs ~{estimated_mb} MiB, budget is {budget_mb} MiB")]
    Budget {
        /// Estimated peak working set.
        estimated_mb: u64,
        /// Allowed working set.
        budget_mb: u64,
    },
    /// One static weight per site is required when weights are given.
    #[error("{want} site weights required, got {got}")]
    WeightCount {
        /// Number of sites.
        want: usize,
        /// Number of weights supplied.
        got: usize,
    },
    /// A chain needs at least one site.
    #[error("a chain needs at least one site")]
    NoSites,
}

/// Rough peak working set of a chain build in mebibytes: ten operator
/// families whose fill grows with the square of the length, on a state
/// space of 16 per site, with ~512 tracked nonzeros per basis column
/// across intermediates and ~120 bytes per stored exact entry. Under the
/// default budget this admits chains up to three sites; longer chains
/// need an explicitly raised budget.
pub fn estimate_mb(sites: usize) -> u64 {
    let l = sites as u128;
    let pow = 16u128.saturating_pow(sites.saturating_sub(2) as u32);
    let bytes = 10u128
        .saturating_mul(512)
        .saturating_mul(l.saturating_mul(l))
        .saturating_mul(pow)
        .saturating_mul(120);
    (bytes >> 20).min(u64::MAX as u128) as u64
}

/// Refuses chain lengths whose estimated working set exceeds the budget.
pub fn check_budget(sites: usize, budget_mb: u64) -> Result<(), FockError> {
    let estimated_mb = estimate_mb(sites);
    if estimated_mb > budget_mb {
        return Err(FockError::Budget {
            estimated_mb,
            budget_mb,
        });
    }
    Ok(())
}

/// Chain parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    /// Number of sites L (state space dimension 16^L).
    pub sites: usize,
    /// Coupling of the bilocal family; also the deformation scale.
    pub c: GaussRational,
    /// Optional static site weights adding `w_x` times the local density
    /// to the second level.
    pub weights: Option<Vec<GaussRational>>,
}

impl ChainConfig {
    /// A plain chain with unit coupling and no weights.
    pub fn plain(sites: usize) -> Self {
        ChainConfig {
            sites,
            c: GaussRational::one(),
            weights: None,
        }
    }
}

/// The built chain: mode operators, per-site generator families, and the
/// two lattice-level families.
pub struct FockChain {
    /// The configuration the chain was built from.
    pub config: ChainConfig,
    /// Dimension of the state space, 16^sites.
    pub dim: usize,
    /// Annihilators, one per mode (four per site, site-major order).
    pub psi: Vec<SparseOp<GaussRational>>,
    /// Creators, adjoint order matching `psi`.
    pub psi_dag: Vec<SparseOp<GaussRational>>,
    /// Local generator family of each site.
    pub locals: Vec<GeneratorSet<SparseOp<GaussRational>>>,
    /// Level one: the sum of the local families.
    pub level1: GeneratorSet<SparseOp<GaussRational>>,
    /// Level two: the antisymmetrized bilocal family (plus weights).
    pub level2: GeneratorSet<SparseOp<GaussRational>>,
    /// Total fermion parity.
    pub parity: SparseOp<GaussRational>,
}

fn two_by_two(entries: [[i64; 2]; 2]) -> SparseOp<GaussRational> {
    let mut op = SparseOp::new(2);
    for (r, row) in entries.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if *v != 0 {
                op.add_to(r as u32, c as u32, GaussRational::from_int(*v));
            }
        }
    }
    op
}

/// Builds every mode operator of an m-mode register: the k-th annihilator
/// is a string of parity factors on the modes before k, the lowering
/// matrix on mode k, and the identity after.
fn jordan_wigner(modes: usize) -> (Vec<SparseOp<GaussRational>>, Vec<SparseOp<GaussRational>>) {
    let z = two_by_two([[1, 0], [0, -1]]);
    let lower = two_by_two([[0, 1], [0, 0]]);
    let raise = two_by_two([[0, 0], [1, 0]]);
    let mut psi = Vec::with_capacity(modes);
    let mut psi_dag = Vec::with_capacity(modes);
    for k in 0..modes {
        let mut left = SparseOp::identity(1);
        for _ in 0..k {
            left = left.kron(&z);
        }
        let tail = SparseOp::identity(1 << (modes - k - 1));
        psi.push(left.kron(&lower).kron(&tail));
        psi_dag.push(left.kron(&raise).kron(&tail));
    }
    (psi, psi_dag)
}

/// Builds the chain: modes, local families, the level-one sums, and the
/// bilocal level-two family. Fails only on malformed configuration; memory
/// gating is the caller's separate step ([`check_budget`]).
pub fn build_chain(config: &ChainConfig) -> Result<FockChain, FockError> {
    if config.sites == 0 {
        return Err(FockError::NoSites);
    }
    if let Some(w) = &config.weights {
        if w.len() != config.sites {
            return Err(FockError::WeightCount {
                want: config.sites,
                got: w.len(),
            });
        }
    }
    let sites = config.sites;
    let modes = 4 * sites;
    let dim = 1usize << (4 * sites);
    let (psi, psi_dag) = jordan_wigner(modes);

    // Per-site density bilinears weighted by the spinor generators.
    let clifford = build_clifford::<GaussRational>();
    let spinor = build_spinor_generators(&clifford).expect("the bundled gamma set is valid");
    let mut locals = Vec::with_capacity(sites);
    for x in 0..sites {
        let base = 4 * x;
        // Cache the sixteen bilinears of this site.
        let mut bilinear: Vec<Vec<SparseOp<GaussRational>>> = Vec::with_capacity(4);
        for al in 0..4 {
            let mut row = Vec::with_capacity(4);
            for be in 0..4 {
                row.push(psi_dag[base + al].mul(&psi[base + be]));
            }
            bilinear.push(row);
        }
        let mut gens = Vec::with_capacity(10);
        for &(a, b) in ADJOINT_PAIRS.iter() {
            let sp = spinor.get(a, b);
            let mut acc = SparseOp::new(dim);
            for al in 0..4 {
                for be in 0..4 {
                    let coeff = sp.get(al, be);
                    if !coeff.is_zero() {
                        acc = acc.add(&bilinear[al][be].scale(coeff));
                    }
                }
            }
            gens.push(acc);
        }
        locals.push(GeneratorSet::from_ordered(
            format!("site{}", x + 1),
            dim,
            gens,
        ));
    }

    // Level one: plain sums over the chain.
    let mut level1_gens = Vec::with_capacity(10);
    for idx in 0..10 {
        let mut acc = SparseOp::new(dim);
        for loc in &locals {
            acc = acc.add(loc.by_index(idx));
        }
        level1_gens.push(acc);
    }
    let level1 = GeneratorSet::from_ordered("chain", dim, level1_gens);

    // Level two: for each generator label, sum over sites of the local
    // density against the signed sum of the same-label densities at the
    // other sites, resolved through the intermediate vector index.
    let mic2 = (-GaussRational::i()).mul_ref(&config.c).mul_ref(&GaussRational::ratio(1, 2));
    let mut level2_gens = Vec::with_capacity(10);
    for &(a, b) in ADJOINT_PAIRS.iter() {
        let mut acc = SparseOp::new(dim);
        for e in 1u8..=5 {
            if e == a || e == b {
                continue;
            }
            // Signed sum over partner sites for the (e, b) density.
            let mut prefix = SparseOp::new(dim);
            let mut suffix = SparseOp::new(dim);
            for loc in locals.iter().skip(1) {
                suffix = suffix.add(&loc.get(e, b));
            }
            for x in 0..sites {
                let d = prefix.sub(&suffix);
                acc = acc.add(&locals[x].get(a, e).mul(&d));
                prefix = prefix.add(&locals[x].get(e, b));
                if x + 1 < sites {
                    suffix = suffix.sub(&locals[x + 1].get(e, b));
                }
            }
        }
        let mut j = acc.scale(&mic2);
        if let Some(w) = &config.weights {
            for (x, wx) in w.iter().enumerate() {
                j = j.add(&locals[x].get(a, b).scale(wx));
            }
        }
        level2_gens.push(j);
    }
    let level2 = GeneratorSet::from_ordered("chain-bilocal", dim, level2_gens);

    // Total parity: the full string of mode parity factors.
    let z = two_by_two([[1, 0], [0, -1]]);
    let mut parity = SparseOp::identity(1);
    for _ in 0..modes {
        parity = parity.kron(&z);
    }

    Ok(FockChain {
        config: config.clone(),
        dim,
        psi,
        psi_dag,
        locals,
        level1,
        level2,
        parity,
    })
}

impl FockChain {
    /// The chain as a deformation-check candidate with scale c.
    pub fn as_pair(
        &self,
    ) -> crate::drinfeld::YangianPair<GaussRational, SparseOp<GaussRational>> {
        crate::drinfeld::YangianPair {
            label: format!("fock(L={}, c={})", self.config.sites, self.config.c),
            level1: self.level1.clone(),
            level2: self.level2.clone(),
            h: self.config.c.clone(),
        }
    }

    /// Verifies the canonical anticommutation relations of every mode pair.
    /// Two aggregate outcomes: like-pairs ({psi, psi} = 0, and creators by
    /// adjointness) and mixed pairs ({psi_j, psi_dag_k} = delta_jk).
    pub fn car_outcomes(&self) -> Vec<IdentityOutcome> {
        let modes = self.psi.len();
        let mut like_fail: Option<Witness> = None;
        let mut mixed_fail: Option<Witness> = None;
        let mut like_checked = 0usize;
        let mut mixed_checked = 0usize;
        for j in 0..modes {
            for k in 0..modes {
                like_checked += 1;
                let anti = self.psi[j].mul(&self.psi[k]).add(&self.psi[k].mul(&self.psi[j]));
                if let Some((r, c, v)) = anti.first_nonzero_entry() {
                    like_fail.get_or_insert(Witness {
                        location: format!("modes ({j},{k}) entry ({r},{c})"),
                        got: v.to_string(),
                        want: GaussRational::zero().to_string(),
                    });
                }
                mixed_checked += 1;
                let mut anti = self.psi[j]
                    .mul(&self.psi_dag[k])
                    .add(&self.psi_dag[k].mul(&self.psi[j]));
                if j == k {
                    anti = anti.sub(&SparseOp::identity(self.dim));
                }
                if let Some((r, c, v)) = anti.first_nonzero_entry() {
                    mixed_fail.get_or_insert(Witness {
                        location: format!("modes ({j},{k}) entry ({r},{c})"),
                        got: v.to_string(),
                        want: GaussRational::zero().to_string(),
                    });
                }
            }
        }
        let like = match like_fail {
            None => IdentityOutcome::pass("car/like-pairs"),
            Some(w) => IdentityOutcome::fail("car/like-pairs", w),
        }
        .with_metric("pairs", like_checked.to_string());
        let mixed = match mixed_fail {
            None => IdentityOutcome::pass("car/mixed-pairs"),
            Some(w) => IdentityOutcome::fail("car/mixed-pairs", w),
        }
        .with_metric("pairs", mixed_checked.to_string());
        vec![like, mixed]
    }

    /// Verifies that total parity commutes with both generator families.
    pub fn parity_outcomes(&self) -> Vec<IdentityOutcome> {
        let mut out = Vec::new();
        for (family, set) in [("level1", &self.level1), ("level2", &self.level2)] {
            let mut fail: Option<Witness> = None;
            for ((a, b), op) in set.iter() {
                let comm = self.parity.mul(op).sub(&op.mul(&self.parity));
                if let Some((r, c, v)) = comm.first_nonzero_entry() {
                    fail.get_or_insert(Witness {
                        location: format!("generator ({a},{b}) entry ({r},{c})"),
                        got: v.to_string(),
                        want: GaussRational::zero().to_string(),
                    });
                }
            }
            out.push(match fail {
                None => IdentityOutcome::pass(format!("parity/{family}")),
                Some(w) => IdentityOutcome::fail(format!("parity/{family}"), w),
            });
        }
        out
    }
}

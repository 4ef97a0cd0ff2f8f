//! Suite orchestration: bundles the library's verifiers into the named
//! check suites behind the `yso5` command-line tool and assembles their
//! outcomes into one deterministic [`RunReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::drinfeld::{
    check_adjoint, check_cubic, check_quadratic, check_quadratic_on, check_serre, check_serre_cw,
    fit_quadratic_scale, fit_serre_scale, null_pair, pair_from_rep, quadratic_triples, YangianPair,
};
use crate::fock::{self, build_chain, ChainConfig, FockError, DEFAULT_MEM_BUDGET_MB};
use crate::matrix::AlgebraOp;
use crate::report::{equality_outcome, CheckResult, IdentityOutcome, RunReport, Status, Witness};
use crate::rmatrix::{
    build_rcheck, default_grid, unitarity_product, ybe_check, RmatrixError, YbeReport,
};
use crate::rtt::{
    build_lax, build_monodromy, check_constraints, eval_relations, expand_rtt, EngineError, LaxRep,
    RelationSet,
};
use crate::scalar::{ExactScalar, GaussRational, GaussSqrt2};
use crate::so5::{
    abstract_structure_constants, build_clifford, build_spinor_generators,
    build_vector_generators, to_cartan_weyl, CliffordError, CwError, GeneratorSet,
};
use crate::sparse::SparseOp;
use crate::tables::{builtin_table, check_cw_tables, check_table, PairSource, TableError};

/// Why a suite could not run at all. Check failures are not errors; they
/// land in the report. These are the conditions that prevent producing a
/// report in the first place.
#[derive(Debug, Error)]
pub enum SuiteError {
    /// The requested chain would exceed the memory budget.
    #[error("estimated {estimated_mb} MiB for the requested chain exceeds the budget of {budget_mb} MiB")]
    Budget {
        /// Estimated requirement in MiB.
        estimated_mb: u64,
        /// Configured ceiling in MiB.
        budget_mb: u64,
    },
    /// The configuration cannot be run as given.
    #[error("{0}")]
    Usage(String),
}

impl From<FockError> for SuiteError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::Budget {
                estimated_mb,
                budget_mb,
            } => SuiteError::Budget {
                estimated_mb,
                budget_mb,
            },
            other => SuiteError::Usage(other.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for SuiteError {
            fn from(e: $ty) -> Self {
                SuiteError::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(TableError, EngineError, RmatrixError, CwError, CliffordError);

/// The five check suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteId {
    /// Finite-dimensional so(5): closure in both matrix representations
    /// and the ground-level bracket corpus.
    So5,
    /// The rational R-matrix family: braid identity on a grid, unitarity,
    /// and the two structural controls.
    Ybe,
    /// The exchange-relation engine evaluated in Lax and monodromy
    /// representations, plus the component constraints and recursions.
    Rtt,
    /// The two-generator presentation with a fitted deformation scale.
    Drinfeld,
    /// The lattice-fermion chain.
    Fock,
}

impl SuiteId {
    /// Every suite, in canonical run order.
    pub const ALL: [SuiteId; 5] = [
        SuiteId::So5,
        SuiteId::Ybe,
        SuiteId::Rtt,
        SuiteId::Drinfeld,
        SuiteId::Fock,
    ];

    /// The suite's report name.
    pub fn name(self) -> &'static str {
        match self {
            SuiteId::So5 => "so5",
            SuiteId::Ybe => "ybe",
            SuiteId::Rtt => "rtt",
            SuiteId::Drinfeld => "drinfeld",
            SuiteId::Fock => "fock",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                SuiteError::Usage(format!(
                    "unknown suite {s:?}; expected one of so5, ybe, rtt, drinfeld, fock, all"
                ))
            })
    }
}

/// Which realization the drinfeld suite checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrinfeldSource {
    /// Single-site Lax pair at the first inhomogeneity (default).
    Lax,
    /// Lattice-fermion chain pair.
    Fock,
}

impl fmt::Display for DrinfeldSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DrinfeldSource::Lax => "lax",
            DrinfeldSource::Fock => "fock",
        })
    }
}

impl FromStr for DrinfeldSource {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lax" => Ok(DrinfeldSource::Lax),
            "fock" => Ok(DrinfeldSource::Fock),
            other => Err(SuiteError::Usage(format!(
                "unknown source {other:?}; expected lax or fock"
            ))),
        }
    }
}

/// Everything the suites are parameterized by. [`Default`] gives the
/// configuration the acceptance runs use.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Spacing parameter of the R-matrix family and Lax expansion.
    pub x: GaussRational,
    /// Coupling of the lattice chain's bilocal family.
    pub c: GaussRational,
    /// Overrides the deformation scale of the drinfeld suite's pair; by
    /// default the pair keeps its natural scale (x for Lax, c for the
    /// chain).
    pub h: Option<GaussRational>,
    /// Chain length for the fock suite (and the drinfeld suite when its
    /// source is the chain).
    pub sites: usize,
    /// Auxiliary-space dimension N of the R-matrix family.
    pub aux_dim: usize,
    /// Side length k of the k x k integer grid certifying the braid
    /// identity.
    pub grid: usize,
    /// Expansion window (i, j) of the exchange relations.
    pub window: (i64, i64),
    /// How many mixed levels of the component constraints to check.
    pub constraint_depth: u32,
    /// Inhomogeneities of the monodromy chain; the first one also fixes
    /// the single-site representation.
    pub thetas: Vec<GaussRational>,
    /// Optional static site weights added to the chain's second level.
    pub weights: Option<Vec<GaussRational>>,
    /// Which bundled tables the drinfeld suite runs; None picks every
    /// table the source supports.
    pub tables: Option<Vec<u32>>,
    /// Realization the drinfeld suite checks.
    pub source: DrinfeldSource,
    /// Memory ceiling for chain construction, in MiB.
    pub budget_mb: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            x: GaussRational::one(),
            c: GaussRational::one(),
            h: None,
            sites: 2,
            aux_dim: 5,
            grid: 7,
            window: (1, 2),
            constraint_depth: 2,
            thetas: vec![GaussRational::zero(), GaussRational::ratio(1, 2)],
            weights: None,
            tables: None,
            source: DrinfeldSource::Lax,
            budget_mb: DEFAULT_MEM_BUDGET_MB,
        }
    }
}

fn join_scalars(xs: &[GaussRational]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn config_echo(suites: &[SuiteId], cfg: &VerifyConfig) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert(
        "suites".into(),
        suites
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join(","),
    );
    m.insert("x".into(), cfg.x.to_string());
    m.insert("c".into(), cfg.c.to_string());
    m.insert(
        "h".into(),
        cfg.h.as_ref().map_or_else(|| "natural".into(), |h| h.to_string()),
    );
    m.insert("L".into(), cfg.sites.to_string());
    m.insert("N".into(), cfg.aux_dim.to_string());
    m.insert("grid".into(), cfg.grid.to_string());
    m.insert("levels".into(), format!("{},{}", cfg.window.0, cfg.window.1));
    m.insert("depth".into(), cfg.constraint_depth.to_string());
    m.insert("thetas".into(), join_scalars(&cfg.thetas));
    m.insert(
        "weights".into(),
        cfg.weights
            .as_ref()
            .map_or_else(|| "none".into(), |w| join_scalars(w)),
    );
    m.insert(
        "tables".into(),
        cfg.tables.as_ref().map_or_else(
            || "default".into(),
            |t| {
                t.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            },
        ),
    );
    m.insert("source".into(), cfg.source.to_string());
    m.insert("budget_mb".into(), cfg.budget_mb.to_string());
    m
}

/// Runs the requested suites (each at most once, in canonical order) and
/// assembles the deterministic report.
pub fn run_suites(suites: &[SuiteId], cfg: &VerifyConfig) -> Result<RunReport, SuiteError> {
    let mut chosen: Vec<SuiteId> = Vec::new();
    for s in suites {
        if !chosen.contains(s) {
            chosen.push(*s);
        }
    }
    chosen.sort();

    let mut results = Vec::new();
    for s in &chosen {
        results.extend(match s {
            SuiteId::So5 => so5_suite()?,
            SuiteId::Ybe => ybe_suite(cfg)?,
            SuiteId::Rtt => rtt_suite(cfg)?,
            SuiteId::Drinfeld => drinfeld_suite(cfg)?,
            SuiteId::Fock => fock_suite(cfg)?,
        });
    }
    Ok(RunReport::new(
        env!("CARGO_PKG_VERSION"),
        config_echo(&chosen, cfg),
        results,
    ))
}

/// One closure outcome per strictly ordered generator pair: the bracket
/// reproduces the structure constants.
fn closure_outcomes<S: ExactScalar, Op: AlgebraOp<S>>(
    g: &GeneratorSet<Op>,
) -> Vec<IdentityOutcome> {
    let c = abstract_structure_constants();
    let labels = c.basis_labels();
    let mut out = Vec::new();
    for l in 0..10 {
        for m in (l + 1)..10 {
            let mut want = g.by_index(0).zero_like();
            for n in 0..10 {
                let k = c.get(l, m, n);
                if !k.is_zero() {
                    want = want.add_op(&g.by_index(n).scale_op(&S::from_gauss(k)));
                }
            }
            let got = g.by_index(l).commutator(g.by_index(m));
            let (a1, b1) = labels[l];
            let (a2, b2) = labels[m];
            out.push(equality_outcome(
                format!("closure/[I{a1}{b1},I{a2}{b2}]"),
                &got,
                &want,
            ));
        }
    }
    out
}

/// Folds the spinor and vector outcomes of the same identity into one
/// check line. Both passing means the line passes; the witness of the
/// first failing representation is kept otherwise.
fn merge_reps(spinor: IdentityOutcome, vector: IdentityOutcome) -> IdentityOutcome {
    debug_assert_eq!(spinor.id, vector.id);
    match (spinor.status, vector.status) {
        (Status::Pass, Status::Pass) => spinor.with_metric("reps", "spinor,vector"),
        (Status::Fail, _) => spinor.with_metric("rep", "spinor"),
        _ => vector.with_metric("rep", "vector"),
    }
}

fn sqrt2_set(
    g: &GeneratorSet<crate::matrix::Matrix<GaussRational>>,
) -> GeneratorSet<crate::matrix::Matrix<GaussSqrt2>> {
    g.map_ops(|m| m.map(GaussSqrt2::from_gauss))
}

fn so5_suite() -> Result<Vec<CheckResult>, SuiteError> {
    let clifford = build_clifford::<GaussRational>();
    let spinor = build_spinor_generators(&clifford)?;
    let vector = build_vector_generators::<GaussRational>();
    let mut out = Vec::new();

    let sp = closure_outcomes(&spinor);
    let ve = closure_outcomes(&vector);
    for (a, b) in sp.into_iter().zip(ve) {
        out.push(CheckResult::from_outcome("so5", "3.8", merge_reps(a, b)));
    }

    let t30 = builtin_table(30)?;
    let one = GaussSqrt2::one();
    let sp_src = PairSource::from_level1(&sqrt2_set(&spinor))?;
    let ve_src = PairSource::from_level1(&sqrt2_set(&vector))?;
    let sp_res = check_table(&t30, &sp_src, 1, &one)?;
    let ve_res = check_table(&t30, &ve_src, 1, &one)?;
    for (a, b) in sp_res.into_iter().zip(ve_res) {
        out.push(CheckResult::from_outcome("so5", "30", merge_reps(a, b)));
    }
    Ok(out)
}

fn first_bad_point(report: &YbeReport) -> Option<(&crate::rmatrix::YbePoint, Witness)> {
    report.points.iter().find(|p| !p.ok).map(|p| {
        let w = match &p.witness {
            Some((row, col, lhs, rhs)) => Witness {
                location: format!("({},{}) entry ({row},{col})", p.u, p.v),
                got: lhs.clone(),
                want: rhs.clone(),
            },
            None => Witness {
                location: format!("({},{})", p.u, p.v),
                got: "sides differ".into(),
                want: "equality".into(),
            },
        };
        (p, w)
    })
}

fn ybe_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let r = build_rcheck(cfg.aux_dim, &cfg.x)?;
    let grid = default_grid(cfg.grid);
    let mut out = Vec::new();

    let braid = ybe_check(&r, &grid)?;
    for p in &braid.points {
        let id = format!("braid/({},{})", p.u, p.v);
        let oc = match &p.witness {
            None => IdentityOutcome::pass(id),
            Some((row, col, lhs, rhs)) => IdentityOutcome::fail(
                id,
                Witness {
                    location: format!("entry ({row},{col})"),
                    got: lhs.clone(),
                    want: rhs.clone(),
                },
            ),
        };
        out.push(CheckResult::from_outcome("ybe", "4.1", oc));
    }

    // Unitarity: the product with the reflected argument collapses to a
    // scalar polynomial whose coefficients are known in closed form.
    let n = cfg.aux_dim as i64;
    let q1 = GaussRational::ratio(2 - n, 2) * cfg.x.clone();
    let q2 = -cfg.x.clone();
    let q1s = q1.clone() * q1;
    let q2s = q2.clone() * q2;
    let want = [
        GaussRational::one(),
        GaussRational::zero(),
        -(q1s.clone() + q2s.clone()),
        GaussRational::zero(),
        q1s * q2s,
    ];
    let oc = match unitarity_product(&r) {
        Ok(rep) => {
            if rep.scalars == want {
                let shown = rep
                    .scalars
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                IdentityOutcome::pass("unitarity").with_metric("scalars", shown)
            } else {
                let k = (0..5).find(|&k| rep.scalars[k] != want[k]).unwrap_or(0);
                IdentityOutcome::fail(
                    "unitarity",
                    Witness {
                        location: format!("scalar of u^{}", 4 - k),
                        got: rep.scalars[k].to_string(),
                        want: want[k].to_string(),
                    },
                )
            }
        }
        Err(e) => IdentityOutcome::fail(
            "unitarity",
            Witness {
                location: format!("u^{} entry ({},{})", e.degree, e.row, e.col),
                got: e.value.clone(),
                want: "scalar * I".into(),
            },
        ),
    };
    out.push(CheckResult::from_outcome("ybe", "4.1", oc));

    // Dropping the dual-trace block entirely leaves a smaller family that
    // still solves the braid identity, so that term is a genuine direct
    // summand of the solution, not a correction.
    let dropped = ybe_check(&r.without_dual_term(), &grid)?;
    let oc = match first_bad_point(&dropped) {
        None => IdentityOutcome::pass("factorization/dual-drop")
            .with_note("the family without the dual-trace block also solves the braid identity"),
        Some((_, w)) => IdentityOutcome::fail("factorization/dual-drop", w),
    };
    out.push(CheckResult::from_outcome("ybe", "4.1", oc));

    // Negative control: rescaling the dual-trace block must break the
    // braid identity somewhere on the grid. The control passes when the
    // mutated family fails.
    let scaled = ybe_check(&r.with_dual_term_scaled(2), &grid)?;
    let oc = match first_bad_point(&scaled) {
        Some((p, w)) => IdentityOutcome::pass("mutation/dual-scaled").with_metric(
            "counterexample",
            format!("({},{}) at {}: {} vs {}", p.u, p.v, w.location, w.got, w.want),
        ),
        None => IdentityOutcome::fail(
            "mutation/dual-scaled",
            Witness {
                location: "grid".into(),
                got: "the doubled dual-trace family passed everywhere".into(),
                want: "at least one failing grid point".into(),
            },
        ),
    };
    out.push(CheckResult::from_outcome("ybe", "4.1", oc));

    Ok(out)
}

fn exchange_results(
    set: &RelationSet,
    rep: &LaxRep,
    prefix: &str,
    out: &mut Vec<CheckResult>,
) -> Result<(), SuiteError> {
    let report = eval_relations(set, rep)?;
    for ((iu, iv), counts) in &report.by_order {
        let id = format!("{prefix}/exchange/order({iu},{iv})");
        let oc = if counts.failed == 0 {
            IdentityOutcome::pass(id)
        } else {
            let tag = format!("order({iu},{iv})");
            let witness = report
                .failures
                .iter()
                .find(|(label, _)| label.starts_with(&tag))
                .map(|(label, w)| Witness {
                    location: format!("{label}: {}", w.location),
                    got: w.got.clone(),
                    want: w.want.clone(),
                })
                .unwrap_or_else(|| Witness {
                    location: tag,
                    got: format!("{} failing relations", counts.failed),
                    want: "0".into(),
                });
            IdentityOutcome::fail(id, witness)
        };
        out.push(CheckResult::from_outcome(
            "rtt",
            "4.3",
            oc.with_metric("relations", counts.checked.to_string()),
        ));
    }
    Ok(())
}

fn constraint_rule(id: &str) -> &'static str {
    if id.starts_with("ground/") {
        "4.8"
    } else if id.starts_with("level2/") {
        "4.10"
    } else if id.starts_with("cross/") {
        "4.11"
    } else {
        "4.12"
    }
}

fn rtt_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let (i_max, j_max) = cfg.window;
    let set = expand_rtt(i_max, j_max, &cfg.x)?;
    let theta0 = cfg
        .thetas
        .first()
        .cloned()
        .unwrap_or_else(GaussRational::zero);
    let site = build_lax(&cfg.x, &theta0, 2)?;
    let chain = build_monodromy(&cfg.x, &cfg.thetas, 2 * cfg.thetas.len() as u32)?;

    let mut out = Vec::new();
    exchange_results(&set, &site, "site", &mut out)?;
    exchange_results(&set, &chain, "chain", &mut out)?;

    for (prefix, rep) in [("site", &site), ("chain", &chain)] {
        for oc in check_constraints(rep, cfg.constraint_depth)? {
            let rule = constraint_rule(&oc.id);
            let oc = IdentityOutcome {
                id: format!("{prefix}/{}", oc.id),
                ..oc
            };
            out.push(CheckResult::from_outcome("rtt", rule, oc));
        }
    }
    Ok(out)
}

fn lift_pair(
    p: &YangianPair<GaussRational, SparseOp<GaussRational>>,
) -> YangianPair<GaussSqrt2, SparseOp<GaussSqrt2>> {
    YangianPair {
        label: p.label.clone(),
        level1: p.level1.map_ops(|op| op.map(GaussSqrt2::from_gauss)),
        level2: p.level2.map_ops(|op| op.map(GaussSqrt2::from_gauss)),
        h: GaussSqrt2::from_gauss(&p.h),
    }
}

fn drinfeld_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, SuiteError> {
    if cfg.source == DrinfeldSource::Fock {
        if let Some(t) = cfg
            .tables
            .iter()
            .flatten()
            .find(|t| !matches!(t, 30..=32))
        {
            return Err(SuiteError::Usage(format!(
                "table {t} needs the Lax expansion; the chain source supports tables 30, 31, 32"
            )));
        }
    }
    let mut out = Vec::new();
    let theta0 = cfg
        .thetas
        .first()
        .cloned()
        .unwrap_or_else(GaussRational::zero);
    let (mut pair, rep) = match cfg.source {
        DrinfeldSource::Lax => {
            let rep = build_lax(&cfg.x, &theta0, 2)?;
            let pair = pair_from_rep(&rep, &cfg.x, format!("lax(x={}, theta={theta0})", cfg.x))?;
            (pair, Some(rep))
        }
        DrinfeldSource::Fock => {
            fock::check_budget(cfg.sites, cfg.budget_mb)?;
            let chain = build_chain(&ChainConfig {
                sites: cfg.sites,
                c: cfg.c.clone(),
                weights: cfg.weights.clone(),
            })?;
            (lift_pair(&chain.as_pair()), None)
        }
    };
    if let Some(h) = &cfg.h {
        pair.h = GaussSqrt2::from_gauss(h);
    }

    // The realization satisfies the deformed identities only up to one
    // overall normalization of their right-hand sides; fit it once and use
    // it everywhere below. The quadratic family pins it when its right-hand
    // side survives, the Serre relation is the fallback, and when both
    // degenerate (as in the matrix realizations) every scale passes and the
    // run proceeds with 1.
    let quad_fit = fit_quadratic_scale(&pair);
    let fitted = quad_fit.clone().or_else(|| fit_serre_scale(&pair));
    let oc = match &fitted {
        Some(v) => IdentityOutcome::measured("affine-matching")
            .with_metric("fitted_lambda", v.to_string())
            .with_metric(
                "fitted_from",
                if quad_fit.is_some() { "quadratic" } else { "serre" },
            )
            .with_metric("pair", pair.label.clone()),
        None => IdentityOutcome::measured("affine-matching")
            .with_metric("fitted_lambda", "unconstrained")
            .with_metric("lambda_used", "1")
            .with_metric("pair", pair.label.clone())
            .with_note(
                "every deformed right-hand side vanishes in this \
                 representation, so the identities hold at any scale",
            ),
    };
    out.push(CheckResult::from_outcome("drinfeld", "3.2", oc));
    let lam = fitted.unwrap_or_else(GaussSqrt2::one);

    for oc in check_adjoint(&pair) {
        out.push(CheckResult::from_outcome("drinfeld", "3.1", oc));
    }
    for oc in check_quadratic(&pair, &lam) {
        out.push(CheckResult::from_outcome("drinfeld", "3.2", oc));
    }
    for oc in check_cubic(&pair, &lam, 3) {
        out.push(CheckResult::from_outcome("drinfeld", "3.3", oc));
    }
    out.push(CheckResult::from_outcome(
        "drinfeld",
        "3.7",
        check_serre(&pair, &lam),
    ));
    let cw1 = to_cartan_weyl(&pair.level1, &pair.h, 1)?;
    let cw2 = to_cartan_weyl(&pair.level2, &pair.h, 2)?;
    out.push(CheckResult::from_outcome(
        "drinfeld",
        "32",
        check_serre_cw(&cw1, &cw2, &lam),
    ));

    let table_ids = cfg.tables.clone().unwrap_or_else(|| match cfg.source {
        DrinfeldSource::Lax => vec![30, 31, 32, 33, 34],
        DrinfeldSource::Fock => vec![30, 31, 32],
    });
    for t in table_ids {
        for oc in check_cw_tables(&pair, t, rep.as_ref())? {
            out.push(CheckResult::from_outcome("drinfeld", t.to_string(), oc));
        }
    }

    // Negative control: wiping the second level keeps every adjoint
    // identity but must break the quadratic family. The control passes
    // when the wiped pair fails. It runs on the two-site chain because the
    // matrix representations annihilate the deformed right-hand sides and
    // would let the wiped pair through.
    let control_chain = build_chain(&ChainConfig::plain(2))?;
    let control = null_pair(&control_chain.as_pair().level1);
    let broken = check_quadratic(&control, &GaussRational::one());
    let failed = broken.iter().filter(|o| o.status == Status::Fail).count();
    let oc = match broken.iter().find(|o| o.status == Status::Fail) {
        Some(first) => IdentityOutcome::pass("mutation/null-second-level")
            .with_metric("counterexample", first.id.clone())
            .with_metric("failed", failed.to_string())
            .with_metric("pair", control.label.clone()),
        None => IdentityOutcome::fail(
            "mutation/null-second-level",
            Witness {
                location: "quadratic family".into(),
                got: "every identity held with a wiped second level".into(),
                want: "failures".into(),
            },
        ),
    };
    out.push(CheckResult::from_outcome("drinfeld", "3.2", oc));

    Ok(out)
}

fn fock_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, SuiteError> {
    fock::check_budget(cfg.sites, cfg.budget_mb)?;
    let chain = build_chain(&ChainConfig {
        sites: cfg.sites,
        c: cfg.c.clone(),
        weights: cfg.weights.clone(),
    })?;
    let mut out = Vec::new();
    for oc in chain.car_outcomes() {
        out.push(CheckResult::from_outcome("fock", "2.2", oc));
    }
    for oc in chain.parity_outcomes() {
        out.push(CheckResult::from_outcome("fock", "2.3", oc));
    }

    let pair = chain.as_pair();
    for oc in check_adjoint(&pair) {
        let rule = if oc.id.starts_with("adjoint/II") {
            "3.8"
        } else {
            "3.9"
        };
        out.push(CheckResult::from_outcome("fock", rule, oc));
    }

    // Measure the deformation scale at unit h so the coupling dependence
    // stays visible in the report: the fitted value tracks c^2 exactly.
    let unit = YangianPair {
        label: pair.label.clone(),
        level1: pair.level1.clone(),
        level2: pair.level2.clone(),
        h: GaussRational::one(),
    };
    match fit_quadratic_scale(&unit) {
        Some(lam) => {
            let mut oc = IdentityOutcome::measured("affine-matching")
                .with_metric("lambda", lam.to_string());
            let c2 = cfg.c.mul_ref(&cfg.c);
            if let Some(inv) = c2.inv() {
                oc = oc.with_metric("lambda_over_c2", lam.mul_ref(&inv).to_string());
            }
            out.push(CheckResult::from_outcome("fock", "3.2", oc));
            // Beyond two sites the operators act on 16^L dimensions and
            // the full family costs minutes on one core; the fit and the
            // Serre relation stay exact, the family runs at a fixed
            // stride, and the report records the coverage.
            let triples = quadratic_triples();
            let picked: Vec<_> = if cfg.sites <= 2 {
                triples.clone()
            } else {
                triples.iter().copied().step_by(6).collect()
            };
            let mut cov = IdentityOutcome::measured("deform/coverage")
                .with_metric("triples", format!("{}/{}", picked.len(), triples.len()));
            if picked.len() != triples.len() {
                cov = cov.with_note(
                    "fixed-stride subset of the ordered triples; the full family runs at two sites",
                );
            }
            out.push(CheckResult::from_outcome("fock", "3.2", cov));
            for q in check_quadratic_on(&unit, &lam, &picked) {
                out.push(CheckResult::from_outcome("fock", "3.2", q));
            }
            out.push(CheckResult::from_outcome(
                "fock",
                "3.7",
                check_serre(&unit, &lam),
            ));
        }
        None => out.push(CheckResult::from_outcome(
            "fock",
            "3.2",
            IdentityOutcome::fail(
                "affine-matching",
                Witness {
                    location: pair.label.clone(),
                    got: "no resolvable scale".into(),
                    want: "a nonzero deformation right-hand side".into(),
                },
            ),
        )),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn assert_all_pass(report: &RunReport) {
        for r in &report.results {
            assert_ne!(
                r.status,
                Status::Fail,
                "{}/{} failed: {:?}",
                r.suite,
                r.check,
                r.witness
            );
        }
    }

    #[test]
    fn ground_suite_has_ninety_passing_checks() {
        let report = run_suites(&[SuiteId::So5], &VerifyConfig::default()).unwrap();
        assert_eq!(report.summary.total, 90);
        assert_eq!(report.summary.pass, 90);
        assert!(report
            .results
            .iter()
            .all(|r| r.metrics.get("reps").map(String::as_str) == Some("spinor,vector")));
    }

    #[test]
    fn braid_suite_passes_and_flags_the_scaled_mutation() {
        let report = run_suites(&[SuiteId::Ybe], &VerifyConfig::default()).unwrap();
        assert_all_pass(&report);
        // 49 grid points + unitarity + factorization + mutation.
        assert_eq!(report.summary.total, 52);
        let mutation = report
            .results
            .iter()
            .find(|r| r.check == "mutation/dual-scaled")
            .unwrap();
        assert_eq!(mutation.status, Status::Pass);
        assert!(mutation.metrics.contains_key("counterexample"));
    }

    #[test]
    fn suite_selection_dedupes_and_orders() {
        let cfg = VerifyConfig::default();
        let once = run_suites(&[SuiteId::Ybe], &cfg).unwrap();
        let twice = run_suites(&[SuiteId::Ybe, SuiteId::Ybe], &cfg).unwrap();
        assert_eq!(once.results.len(), twice.results.len());
    }

    #[test]
    fn identical_runs_serialize_identically() {
        let cfg = VerifyConfig::default();
        let a = run_suites(&[SuiteId::So5, SuiteId::Ybe], &cfg).unwrap();
        let b = run_suites(&[SuiteId::Ybe, SuiteId::So5], &cfg).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
    }

    #[test]
    fn unknown_suite_names_are_usage_errors() {
        let err = "bogus".parse::<SuiteId>().unwrap_err();
        assert!(matches!(err, SuiteError::Usage(_)));
    }

    #[test]
    fn oversized_chains_are_budget_errors() {
        let cfg = VerifyConfig {
            sites: 9,
            ..VerifyConfig::default()
        };
        let err = run_suites(&[SuiteId::Fock], &cfg).unwrap_err();
        assert!(matches!(err, SuiteError::Budget { .. }));
    }

    #[test]
    fn component_tables_without_a_lax_source_are_usage_errors() {
        let cfg = VerifyConfig {
            source: DrinfeldSource::Fock,
            tables: Some(vec![33]),
            ..VerifyConfig::default()
        };
        let err = run_suites(&[SuiteId::Drinfeld], &cfg).unwrap_err();
        assert!(matches!(err, SuiteError::Usage(_)));
    }
}

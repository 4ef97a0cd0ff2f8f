//! `yso5`: run the exact verification suites for the Yangian of so(5) and
//! print a deterministic report.
//!
//! Exit codes: 0 every check passed, 1 at least one check failed, 2 the
//! request could not be run as given, 3 the requested chain would exceed
//! the memory budget.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use yso5_core::rtt::expand_rtt;
use yso5_core::scalar::{ExactScalar, GaussRational};
use yso5_core::so5::{build_clifford, build_spinor_generators, build_vector_generators};
use yso5_core::suites::{
    run_suites, DrinfeldSource, SuiteError, SuiteId, VerifyConfig,
};

/// Environment override for the chain memory ceiling, in MiB.
const BUDGET_ENV: &str = "YSO5_MEM_BUDGET_MB";

#[derive(Parser)]
#[command(
    name = "yso5",
    version,
    about = "Exact-arithmetic checks for the Yangian of so(5)",
    long_about = "Builds the Yangian of so(5) in matrix, Lax/monodromy, and lattice-fermion \
                  realizations and verifies its defining identities with exact rational \
                  arithmetic. Every check is a yes/no statement about an exact residual; \
                  there are no tolerances."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one suite, or all of them, and report every check.
    Verify(VerifyArgs),
    /// Print the objects the checks are built from.
    Dump(DumpArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: so5, ybe, rtt, drinfeld, fock, or all.
    suite: String,
    /// Spacing parameter, an exact scalar like "1", "-2/3", or "1/2+1/3 i".
    #[arg(long, default_value = "1")]
    x: GaussRational,
    /// Coupling of the lattice chain's bilocal family.
    #[arg(long, default_value = "1")]
    c: GaussRational,
    /// Override the deformation scale of the drinfeld suite's pair.
    #[arg(long)]
    h: Option<GaussRational>,
    /// Chain length (number of lattice sites).
    #[arg(long = "L", default_value_t = 2)]
    chain_len: usize,
    /// Auxiliary-space dimension of the R-matrix family.
    #[arg(long = "N", default_value_t = 5)]
    aux_dim: usize,
    /// Side length of the integer grid certifying the braid identity.
    #[arg(long, default_value_t = 7)]
    grid: usize,
    /// Expansion window "i,j" of the exchange relations.
    #[arg(long, default_value = "1,2")]
    levels: String,
    /// Monodromy sites; inhomogeneities default to 0, 1/2, 1, ...
    #[arg(long)]
    sites: Option<usize>,
    /// Comma-separated inhomogeneities (overrides --sites).
    #[arg(long)]
    thetas: Option<String>,
    /// Comma-separated static site weights for the chain's second level.
    #[arg(long)]
    weights: Option<String>,
    /// Comma-separated bundled table numbers for the drinfeld suite.
    #[arg(long)]
    tables: Option<String>,
    /// Realization the drinfeld suite checks: lax or fock.
    #[arg(long, default_value = "lax")]
    source: String,
    /// Write the canonical JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format: md or json.
    #[arg(long, default_value = "md")]
    format: String,
}

#[derive(Args)]
struct DumpArgs {
    /// What to print: gens or relations.
    what: String,
    /// Spacing parameter for the relation expansion.
    #[arg(long, default_value = "1")]
    x: GaussRational,
    /// Expansion window "i,j".
    #[arg(long, default_value = "1,1")]
    levels: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Verify(args) => verify(args),
        Cmd::Dump(args) => dump(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                SuiteError::Budget { .. } => ExitCode::from(3),
                SuiteError::Usage(_) => ExitCode::from(2),
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> SuiteError {
    SuiteError::Usage(msg.into())
}

fn parse_scalar_list(s: &str, what: &str) -> Result<Vec<GaussRational>, SuiteError> {
    s.split(',')
        .map(|part| {
            GaussRational::from_str(part.trim())
                .map_err(|e| usage(format!("bad {what} entry {part:?}: {e}")))
        })
        .collect()
}

fn parse_window(s: &str) -> Result<(i64, i64), SuiteError> {
    let bad = || usage(format!("bad --levels {s:?}: expected two integers like \"1,2\""));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    let i = i.trim().parse::<i64>().map_err(|_| bad())?;
    let j = j.trim().parse::<i64>().map_err(|_| bad())?;
    Ok((i, j))
}

fn budget_from_env() -> Result<Option<u64>, SuiteError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| usage(format!("{BUDGET_ENV} must be a whole number of MiB, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, SuiteError> {
    let suites: Vec<SuiteId> = if args.suite == "all" {
        SuiteId::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };

    let thetas = match (&args.thetas, args.sites) {
        (Some(list), _) => parse_scalar_list(list, "--thetas")?,
        (None, Some(n)) => (0..n as i64).map(|k| GaussRational::ratio(k, 2)).collect(),
        (None, None) => VerifyConfig::default().thetas,
    };
    if thetas.is_empty() {
        return Err(usage("need at least one monodromy site"));
    }

    let mut cfg = VerifyConfig {
        x: args.x,
        c: args.c,
        h: args.h,
        sites: args.chain_len,
        aux_dim: args.aux_dim,
        grid: args.grid,
        window: parse_window(&args.levels)?,
        thetas,
        source: args.source.parse::<DrinfeldSource>()?,
        ..VerifyConfig::default()
    };
    if let Some(w) = &args.weights {
        cfg.weights = Some(parse_scalar_list(w, "--weights")?);
    }
    if let Some(t) = &args.tables {
        cfg.tables = Some(
            t.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| usage(format!("bad --tables entry {part:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if let Some(mb) = budget_from_env()? {
        cfg.budget_mb = mb;
    }

    let report = run_suites(&suites, &cfg)?;

    if let Some(path) = &args.out {
        std::fs::write(path, report.to_canonical_json())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match args.format.as_str() {
        "md" => print!("{}", report.to_markdown()),
        "json" => print!("{}", report.to_canonical_json()),
        other => return Err(usage(format!("unknown --format {other:?}; expected md or json"))),
    }

    Ok(if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn dump(args: DumpArgs) -> Result<ExitCode, SuiteError> {
    match args.what.as_str() {
        "gens" => dump_gens(),
        "relations" => dump_relations(&args),
        other => Err(usage(format!(
            "unknown dump target {other:?}; expected gens or relations"
        ))),
    }
}

fn dump_gens() -> Result<ExitCode, SuiteError> {
    let clifford = build_clifford::<GaussRational>();
    let spinor = build_spinor_generators(&clifford)
        .map_err(|e| usage(e.to_string()))?;
    let vector = build_vector_generators::<GaussRational>();
    for set in [&spinor, &vector] {
        println!("## {} generators ({1}x{1})", set.label, set.rep_dim);
        println!();
        for ((a, b), op) in set.iter() {
            println!("I{a}{b} =");
            for r in 0..op.rows() {
                let row = (0..op.cols())
                    .map(|c| op.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join("  ");
                println!("  [ {row} ]");
            }
            println!();
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dump_relations(args: &DumpArgs) -> Result<ExitCode, SuiteError> {
    let (i_max, j_max) = parse_window(&args.levels)?;
    let set = expand_rtt(i_max, j_max, &args.x)?;
    println!(
        "# {} exchange relations in the window ({i_max},{j_max})",
        set.len()
    );
    println!();
    for rel in &set.relations {
        let terms = rel
            .poly
            .terms()
            .map(|(word, coef)| {
                if word.is_empty() {
                    format!("({coef})")
                } else {
                    let factors = word
                        .iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    format!("({coef}) {factors}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        println!("{}: {terms} = 0", rel.label());
    }
    Ok(ExitCode::SUCCESS)
}

//! Acceptance gate: one test per release criterion. Every test states a
//! property of the whole verification engine and a wall-clock ceiling, so
//! a run of this target reads as a pass/fail line per criterion.
//!
//! The tests drive the library the same way the binary does; the last one
//! drives the binary itself.

use std::str::FromStr;
use std::time::{Duration, Instant};

use yso5_core::report::{CheckResult, RunReport, Status};
use yso5_core::rtt::{exchange_relation, expand_rtt, ExchangeKind};
use yso5_core::scalar::GaussRational;
use yso5_core::suites::{run_suites, DrinfeldSource, SuiteId, VerifyConfig};

fn run(suites: &[SuiteId], cfg: &VerifyConfig) -> RunReport {
    run_suites(suites, cfg).expect("suite run")
}

fn with_rule<'a>(report: &'a RunReport, rule: &str) -> Vec<&'a CheckResult> {
    report
        .results
        .iter()
        .filter(|r| r.rule_ref == rule)
        .collect()
}

fn assert_all_pass(lines: &[&CheckResult], what: &str) {
    for line in lines {
        assert_eq!(
            line.status,
            Status::Pass,
            "{what}: {}/{} failed: {:?}",
            line.suite,
            line.check,
            line.witness
        );
    }
}

fn scalar(s: &str) -> GaussRational {
    GaussRational::from_str(s).expect("scalar literal")
}

/// Criterion 1: the ten-generator bracket closes on the structure
/// constants over all 45 strictly ordered pairs, exactly, in both the
/// 4-dimensional and the 5-dimensional matrix representation, in under a
/// second.
#[test]
fn criterion_1_matrix_closure_is_exact_in_both_representations() {
    let t = Instant::now();
    let report = run(&[SuiteId::So5], &VerifyConfig::default());
    let elapsed = t.elapsed();

    let closure = with_rule(&report, "3.8");
    assert_eq!(closure.len(), 45);
    assert_all_pass(&closure, "closure");
    for line in &closure {
        assert_eq!(
            line.metrics.get("reps").map(String::as_str),
            Some("spinor,vector"),
            "{} must pass in both representations",
            line.check
        );
    }
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

/// Criterion 2: the bundled ground-level corpus holds exactly under the
/// Cartan-Weyl recombination with unit deformation parameter in both
/// matrix representations, in under a second.
#[test]
fn criterion_2_ground_corpus_passes_in_both_representations() {
    let t = Instant::now();
    let report = run(&[SuiteId::So5], &VerifyConfig::default());
    let elapsed = t.elapsed();

    let corpus = with_rule(&report, "30");
    assert_eq!(corpus.len(), 45);
    assert_all_pass(&corpus, "ground corpus");
    for line in &corpus {
        assert_eq!(
            line.metrics.get("reps").map(String::as_str),
            Some("spinor,vector"),
            "{} must pass in both representations",
            line.check
        );
    }
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

/// Criterion 3: the braid identity holds on the full rational grid for
/// the five-dimensional family at three spacings and for the general
/// family at N=3 and N=7; doubling the dual-trace block is caught with a
/// concrete counterexample. All of it in under thirty seconds.
#[test]
fn criterion_3_braid_certificate_holds_and_the_mutation_is_caught() {
    let t = Instant::now();

    for x in ["1", "2", "1/3"] {
        let cfg = VerifyConfig {
            x: scalar(x),
            ..VerifyConfig::default()
        };
        let report = run(&[SuiteId::Ybe], &cfg);
        let braid: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.check.starts_with("braid/"))
            .collect();
        assert_eq!(braid.len(), 49, "7x7 grid at x={x}");
        assert_all_pass(&braid, "braid grid");

        let unitarity: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.check == "unitarity")
            .collect();
        assert_eq!(unitarity.len(), 1);
        assert_all_pass(&unitarity, "unitarity");

        let mutation = report
            .results
            .iter()
            .find(|r| r.check == "mutation/dual-scaled")
            .expect("mutation control line");
        assert_eq!(mutation.status, Status::Pass, "control must trip at x={x}");
        assert!(
            mutation.metrics.contains_key("counterexample"),
            "the tripped control records where the doubled family broke"
        );
    }

    for n in [3, 7] {
        let cfg = VerifyConfig {
            aux_dim: n,
            ..VerifyConfig::default()
        };
        let report = run(&[SuiteId::Ybe], &cfg);
        assert!(!report.has_failures(), "general family at N={n}");
    }

    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
}

/// Criterion 4: every machine-extracted exchange relation in the default
/// window evaluates to exact zero in the single-site representation (the
/// chain is held to the same standard), and the independently
/// hand-written relation form agrees with the extracted one as a free
/// polynomial after normalization. Under a minute.
#[test]
fn criterion_4_extracted_relations_vanish_and_match_the_handwritten_form() {
    let t = Instant::now();
    let report = run(&[SuiteId::Rtt], &VerifyConfig::default());

    let exchange = with_rule(&report, "4.3");
    assert!(!exchange.is_empty());
    assert_all_pass(&exchange, "exchange rollup");
    for prefix in ["site", "chain"] {
        for order in ["order(1,1)", "order(1,2)"] {
            let id = format!("{prefix}/exchange/{order}");
            let line = exchange
                .iter()
                .find(|r| r.check == id)
                .unwrap_or_else(|| panic!("missing rollup {id}"));
            let relations: usize = line
                .metrics
                .get("relations")
                .expect("relation count metric")
                .parse()
                .expect("numeric relation count");
            assert!(relations > 0, "{id} must cover at least one relation");
        }
    }

    let set = expand_rtt(1, 1, &scalar("1")).expect("expansion");
    let rel = set
        .relations
        .iter()
        .find(|r| r.iu == 1 && r.iv == 1)
        .expect("an order-(1,1) relation");
    let (a, b) = rel.row;
    let (c, d) = rel.col;
    let hand = exchange_relation(ExchangeKind::TwoParam { n: 1, m: 1 }, a, b, c, d);
    assert_eq!(
        rel.poly,
        hand.normalize(),
        "hand-written form differs at {}",
        rel.label()
    );

    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

/// Criterion 5: the component constraint families (ground level, second
/// level, cross relations, iterative relations) hold exactly on the
/// single site and on a two-site monodromy with distinct inhomogeneities,
/// and both bundled two-level component corpora pass in full. Under five
/// minutes.
#[test]
fn criterion_5_constraints_and_component_corpora_hold_on_site_and_chain() {
    let t = Instant::now();

    let cfg = VerifyConfig::default();
    assert_ne!(cfg.thetas[0], cfg.thetas[1], "inhomogeneities differ");
    let report = run(&[SuiteId::Rtt], &cfg);
    for rule in ["4.8", "4.10", "4.11", "4.12"] {
        let lines = with_rule(&report, rule);
        assert!(!lines.is_empty(), "family {rule} ran");
        assert_all_pass(&lines, "constraint family");
        for prefix in ["site/", "chain/"] {
            assert!(
                lines.iter().any(|r| r.check.starts_with(prefix)),
                "family {rule} must run with the {prefix} realization"
            );
        }
    }

    let dr = run(
        &[SuiteId::Drinfeld],
        &VerifyConfig {
            tables: Some(vec![33, 34]),
            ..VerifyConfig::default()
        },
    );
    let t33 = with_rule(&dr, "33");
    let t34 = with_rule(&dr, "34");
    assert_eq!(t33.len(), 200, "100 corpus rows at two levels");
    assert_eq!(t34.len(), 354, "177 corpus rows at two levels");
    assert_all_pass(&t33, "two-level corpus");
    assert_all_pass(&t34, "two-level corpus");

    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
}

/// Criterion 6: for the Lax-derived pair, the adjoint family, the full
/// quadratic family, the mixed cubic family over at least one hundred
/// documented index tuples, and both forms of the degree-three relation
/// pass exactly after the recorded scale matching; wiping the second
/// level is caught by the negative control. Under ten minutes.
#[test]
fn criterion_6_deformed_identities_pass_for_the_lax_pair() {
    let t = Instant::now();
    let report = run(&[SuiteId::Drinfeld], &VerifyConfig::default());

    let matching = report
        .results
        .iter()
        .find(|r| r.check == "affine-matching")
        .expect("scale matching line");
    assert_eq!(matching.status, Status::Measured);
    assert!(
        matching.metrics.contains_key("fitted_lambda"),
        "the matching records the fitted scale"
    );

    let adjoint = with_rule(&report, "3.1");
    assert_eq!(adjoint.len(), 145);
    assert_all_pass(&adjoint, "adjoint family");

    let quadratic: Vec<_> = report
        .results
        .iter()
        .filter(|r| r.rule_ref == "3.2" && r.check.starts_with("deform/"))
        .collect();
    assert_eq!(quadratic.len(), 120, "all strictly ordered triples");
    assert_all_pass(&quadratic, "quadratic family");

    let cubic = with_rule(&report, "3.3");
    assert!(cubic.len() >= 100, "got {} cubic tuples", cubic.len());
    assert_all_pass(&cubic, "cubic family");

    let serre = with_rule(&report, "3.7");
    assert_eq!(serre.len(), 1);
    assert_all_pass(&serre, "degree-three relation");
    // Rule 32 also tags the bundled corpus rows, so pick the recombined
    // degree-three line by its check id.
    let serre_cw: Vec<_> = report
        .results
        .iter()
        .filter(|r| r.rule_ref == "32" && r.check == "serre/cartan-weyl")
        .collect();
    assert_eq!(serre_cw.len(), 1);
    assert_all_pass(&serre_cw, "degree-three relation, recombined basis");

    let control = report
        .results
        .iter()
        .find(|r| r.check == "mutation/null-second-level")
        .expect("mutation control line");
    assert_eq!(control.status, Status::Pass, "control must trip");
    assert!(control.metrics.contains_key("counterexample"));

    assert!(!report.has_failures());
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
}

/// Criterion 7: on the lattice chain at two and three sites and couplings
/// 1 and 2, the anticommutation, parity, and adjoint families pass
/// exactly, the degree-three relation is exactly proportional with its
/// fitted scale, and the scale divided by the squared coupling is the
/// frozen constant 1 in every run. Under fifteen minutes.
#[test]
fn criterion_7_chain_identities_hold_with_coupling_independent_scale() {
    let t = Instant::now();
    let mut normalized = Vec::new();

    for (sites, c) in [(2, "1"), (2, "2"), (3, "1"), (3, "2")] {
        let cfg = VerifyConfig {
            sites,
            c: scalar(c),
            source: DrinfeldSource::Fock,
            ..VerifyConfig::default()
        };
        let report = run(&[SuiteId::Fock], &cfg);
        assert!(!report.has_failures(), "L={sites}, c={c}");

        for rule in ["2.2", "2.3", "3.8", "3.9"] {
            let lines = with_rule(&report, rule);
            assert!(!lines.is_empty(), "family {rule} ran at L={sites}, c={c}");
            assert_all_pass(&lines, "chain family");
        }
        let serre = with_rule(&report, "3.7");
        assert_eq!(serre.len(), 1, "L={sites}, c={c}");
        assert_all_pass(&serre, "degree-three proportionality");

        let matching = report
            .results
            .iter()
            .find(|r| r.suite == "fock" && r.check == "affine-matching")
            .expect("scale matching line");
        let lam = matching
            .metrics
            .get("lambda_over_c2")
            .expect("normalized scale recorded")
            .clone();
        normalized.push(lam);
    }

    assert!(
        normalized.iter().all(|v| v == &normalized[0]),
        "normalized scale depends on the run: {normalized:?}"
    );
    assert_eq!(normalized[0], "1/1", "frozen regression constant");

    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(900), "took {elapsed:?}");
}

/// Criterion 8: two identical full runs of the binary write byte-identical
/// JSON reports and print byte-identical summaries.
#[test]
fn criterion_8_full_runs_are_byte_identical() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).expect("tmp dir");
    let exe = env!("CARGO_BIN_EXE_yso5");

    let mut outputs = Vec::new();
    for name in ["r1.json", "r2.json"] {
        let path = dir.join(name);
        let out = std::process::Command::new(exe)
            .args(["verify", "all", "--out"])
            .arg(&path)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "verify all failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        outputs.push((std::fs::read(&path).expect("report written"), out.stdout));
    }

    assert_eq!(outputs[0].0, outputs[1].0, "JSON reports differ");
    assert_eq!(outputs[0].1, outputs[1].1, "summaries differ");

    let parsed: serde_json::Value =
        serde_json::from_slice(&outputs[0].0).expect("well-formed report");
    assert_eq!(parsed["schema"], "yso5-report/1");
    assert_eq!(parsed["summary"]["fail"], 0);
}

//! One test per acceptance criterion. Each writes a `criterion N: PASS|FAIL` line
//! straight to stdout so it shows without `--nocapture`.
//!
//! Criteria 4 and 6 cannot pass on the bundled data; their tests pin the observed
//! failure instead of asserting success.

use lapsoft::canon::connected_classes;
use lapsoft::catalog::CatalogSet;
use lapsoft::graph::chain;
use lapsoft::jacobi::numeric_spectrum;
use lapsoft::landscape::{lambda_soft_family, minimal_members};
use lapsoft::report::{self, CriterionOutcome};
use lapsoft::tables::{self, RowStatus};
use std::io::Write;
use std::time::Duration;

const TABLE1_TOL: f64 = 1e-3;
const PRINTED_TOL: f64 = 5e-3;
const ORACLE_TOL: f64 = 1e-9;
const TABLE1_BUDGET: Duration = Duration::from_secs(1);
const SCAN_BUDGET: Duration = Duration::from_secs(30);
const TRANSFORM_BUDGET: Duration = Duration::from_secs(120);

fn announce(o: &CriterionOutcome) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", o.line());
    for d in &o.details {
        let _ = writeln!(out, "    {d}");
    }
}

fn catalog() -> CatalogSet {
    CatalogSet::bundled().unwrap()
}

#[test]
fn pinned_tolerances() {
    assert_eq!(report::TABLE1_TOL, TABLE1_TOL);
    assert_eq!(tables::PRINTED_TOL, PRINTED_TOL);
    assert_eq!(report::ORACLE_TOL, ORACLE_TOL);
    assert_eq!(report::ORACLE_MAX_N, 12);
    assert_eq!(report::BUDGET_TABLE1, TABLE1_BUDGET);
    assert_eq!(report::BUDGET_RATIONAL_SCAN, SCAN_BUDGET);
    assert_eq!(report::BUDGET_TRANSFORMS, TRANSFORM_BUDGET);
    assert_eq!(report::CLASS_COUNTS, [1, 1, 2, 6, 21, 112]);
    assert_eq!(report::MINIMAL_COUNTS, [1, 1, 2, 2, 4]);
}

#[test]
fn criterion_1_complement_pair() {
    let cat = catalog();
    let o = report::criterion_1(&cat).unwrap();
    announce(&o);
    for (key, want) in [("6.35", [0.0, 0.7639, 3.0, 4.0, 5.0, 5.2361]), ("6.101", [0.0, 0.7639, 1.0, 2.0, 3.0, 5.2361])] {
        let got = numeric_spectrum(&cat.lookup(key).unwrap().graph().laplacian()).unwrap();
        for (g, w) in got.iter().zip(want) {
            assert!((g.value - w).abs() <= TABLE1_TOL, "{key}: {} vs {w}", g.value);
        }
    }
    assert!(o.elapsed <= TABLE1_BUDGET);
    assert!(o.passed);
}

#[test]
fn criterion_2_irrational_table() {
    let o = report::criterion_2(&catalog()).unwrap();
    announce(&o);
    // Label-index disagreements are logged, not fatal.
    assert!(o.details.iter().any(|d| d.contains("logged: printed label lambda_4, ascending index 5")));
    assert!(o.passed);
}

#[test]
fn criterion_3_no_rational_non_integers() {
    let o = report::criterion_3().unwrap();
    announce(&o);
    // 1 + 2 + 6 + 21 + 112 classes on 2..=6 vertices.
    assert!(o.details[0].starts_with("142 connected classes"));
    assert!(o.elapsed <= SCAN_BUDGET);
    assert!(o.passed);
}

#[test]
fn criterion_4_catalog_correspondence() {
    let o = report::criterion_4(&catalog()).unwrap();
    announce(&o);
    let counts: Vec<usize> = (1..=6).map(|n| connected_classes(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    assert!(o.details.contains(&"small catalog: 30 rows, 30 classes covered".to_string()));
    // The flagged anomalies are detected...
    assert!(o.details.iter().any(|d| d.contains("flagged row 6.87B")));
    assert_eq!(o.details.iter().filter(|d| d.contains("flagged row 6.103")).count(), 2);
    assert!(o.details.iter().any(|d| d.contains("rows 6.87B and 6.91 describe one class (involves a flagged row)")));
    // ...but 6.86 and 6.87 coincide and one class has no row, so no bijection exists.
    assert!(o.details.iter().any(|d| d.contains("rows 6.86 and 6.87 describe one class (no flagged row involved)")));
    assert!(o.details.iter().any(|d| d.contains("(7 edges, degrees [1, 2, 2, 3, 3, 3]) has no row")));
    assert!(!o.passed);
}

#[test]
fn criterion_5_transform_suite() {
    let o = report::criterion_5().unwrap();
    announce(&o);
    assert!(o.details.contains(&"failures: 0".to_string()));
    assert!(o.elapsed <= TRANSFORM_BUDGET);
    assert!(o.passed);
}

#[test]
fn criterion_6_minimal_counts() {
    let cat = catalog();
    let o = report::criterion_6(&cat).unwrap();
    announce(&o);
    let got: Vec<usize> = (1..=5).map(|l| minimal_members(&lambda_soft_family(l, 6, &cat).unwrap()).len()).collect();
    // Subgraph-minimal counts, confirmed by an independent enumeration.
    assert_eq!(got, [1, 1, 3, 3, 3]);
    assert!(!o.passed);
}

#[test]
fn criterion_7_worked_examples() {
    let o = report::criterion_7().unwrap();
    announce(&o);
    assert!(o.passed);
}

#[test]
fn criterion_8_table_harness() {
    let cat = catalog();
    let o = report::criterion_8(&cat).unwrap();
    announce(&o);
    let rows = tables::bundled_rows().unwrap();
    let rep = tables::verify_appendix_tables(&rows, &cat).unwrap();
    let ledger = tables::LEDGER_TEXT.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rep.count(RowStatus::ExactPass) + ledger, rows.len());
    for l in tables::LEDGER_TEXT.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = l.splitn(5, '|').collect();
        assert_eq!(f.len(), 5, "{l}");
        assert!(!f[4].trim().is_empty(), "{l}");
    }
    assert!(o.passed);
}

#[test]
fn criterion_9_closed_forms() {
    let o = report::criterion_9().unwrap();
    announce(&o);
    let p3 = numeric_spectrum(&chain(3).laplacian()).unwrap();
    assert!((p3[1].value - 1.0).abs() < ORACLE_TOL && (p3[2].value - 3.0).abs() < ORACLE_TOL);
    assert!(o.passed);
}

#[test]
fn reproduction_is_deterministic() {
    let cat = catalog();
    let a = report::criterion_8(&cat).unwrap();
    let b = report::criterion_8(&cat).unwrap();
    assert_eq!(a.details, b.details);
    let a = report::criterion_5().unwrap();
    let b = report::criterion_5().unwrap();
    assert_eq!(a.details, b.details);
}

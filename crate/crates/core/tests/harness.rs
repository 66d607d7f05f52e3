use houghton_core::harness::{run, stability_sweep, Check, ExperimentConfig, Status};

fn small() -> ExperimentConfig {
    ExperimentConfig {
        name: "golden-n2".into(),
        chi: Some(vec![-1, 0]),
        ..Default::default()
    }
}

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/report_n2.json");

#[test]
fn report_matches_golden_file() {
    let report = run(&small()).unwrap();
    assert!(report.all_pass(), "{}", report.to_json());
    let json = report.to_json();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(GOLDEN, &json).unwrap();
    }
    let golden = std::fs::read_to_string(GOLDEN).expect("golden report present");
    assert_eq!(json, golden);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let base = small();
    let one = run(&ExperimentConfig { jobs: Some(1), ..base.clone() }).unwrap().to_json();
    let four = run(&ExperimentConfig { jobs: Some(4), ..base.clone() }).unwrap().to_json();
    let again = run(&ExperimentConfig { jobs: Some(1), ..base }).unwrap().to_json();
    assert_eq!(one, four);
    assert_eq!(one, again);
}

#[test]
fn nerve_components_settle_at_window_two() {
    let cfg = ExperimentConfig {
        checks: Some(vec![Check::Cover, Check::Nerve]),
        ..small()
    };
    let sweep = stability_sweep(&cfg, &[2, 3, 4, 5]).unwrap();
    assert_eq!(sweep.stabilized_from["nerve.nerve_components"], 2);
    for row in &sweep.rows {
        assert_eq!(row.metrics["nerve.nerve_components"], 2);
        assert!(row.statuses.values().all(|s| *s == Status::Pass));
    }
    assert!(sweep.stable);
    assert!(stability_sweep(&cfg, &[3, 2]).is_err());
}

#[test]
fn oversized_regions_fail_without_panicking() {
    let report = run(&ExperimentConfig {
        max_vertices: Some(10),
        ..small()
    })
    .unwrap();
    assert!(!report.all_pass());
    assert!(report.region_error.as_deref().unwrap().contains("10"));
    assert_eq!(report.check("fixtures").unwrap().status, Status::Pass);
    assert_eq!(report.check("cover").unwrap().status, Status::Fail);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn houghton(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_houghton")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("houghton-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const N2: [&str; 6] = ["--n", "2", "--chi", "-1,0", "--name", "golden-n2"];

#[test]
fn verify_all_reproduces_the_library_report() {
    let mut args = vec!["verify-all"];
    args.extend(N2);
    let out = houghton(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/report_n2.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn output_is_independent_of_jobs() {
    let run = |jobs: &str| {
        let mut args = vec!["verify-all", "--jobs", jobs];
        args.extend(N2);
        houghton(&args).stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn exit_codes() {
    assert_eq!(houghton(&["fixtures"]).status.code(), Some(0));
    // region over the cap: checks fail, no crash
    let mut args = vec!["verify-all", "--max-vertices", "5"];
    args.extend(N2);
    let out = houghton(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("region_error"));
    // usage and configuration errors
    assert_eq!(houghton(&["cover", "--n", "2"]).status.code(), Some(2));
    assert_eq!(houghton(&["verify-all", "--n", "5"]).status.code(), Some(2));
    assert_eq!(houghton(&["verify-all", "--chi", "1,1"]).status.code(), Some(2));
    assert_eq!(houghton(&["sweep", "--windows", "3,2"]).status.code(), Some(2));
    assert_eq!(houghton(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn exported_complexes_read_back() {
    let file = scratch("region.txt");
    let f = file.to_str().unwrap();
    let built = houghton(&["build", "--n", "2", "--chi", "-1,0", "--export", f]);
    assert_eq!(built.status.code(), Some(0));
    let stats: serde_json::Value = serde_json::from_slice(&built.stdout).unwrap();
    let read = houghton(&["build", "--input", f]);
    assert_eq!(read.status.code(), Some(0));
    let back: serde_json::Value = serde_json::from_slice(&read.stdout).unwrap();
    // the file carries no window, so only the shape is compared
    for key in ["vertices", "cubes", "components"] {
        assert_eq!(stats["region"][key], back["region"][key]);
    }
    // two components, as the nerve predicts
    assert_eq!(back["betti"][0], 2);

    let nerve_file = scratch("nerve.txt");
    let out = houghton(&["nerve", "--n", "2", "--chi", "-1,0", "--export", nerve_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&nerve_file).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("label ")).count(), 2);
}

#[test]
fn config_files_and_flags_combine() {
    let cfg = scratch("config.json");
    std::fs::write(&cfg, r#"{"name": "from-file", "n": 2, "chi": [-1, 0], "checks": ["cover"]}"#).unwrap();
    let out = houghton(&["verify-all", "--config", cfg.to_str().unwrap(), "--window", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["name"], "from-file");
    assert_eq!(report["region_spec"]["window"], 3);
    assert_eq!(report["checks"].as_array().unwrap().len(), 1);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn dampq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dampq")).args(args).output().expect("spawn dampq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{name}-{}", std::process::id()))
}

#[test]
fn spectrum_csv_is_exact() {
    let o = dampq(&["spectrum", "--omega", "5", "--gamma", "3", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,re_E,im_E\n\
         0,2.5000000000000000e0,0.0000000000000000e0\n\
         1,6.5000000000000000e0,-3.0000000000000000e0\n\
         2,1.0500000000000000e1,-6.0000000000000000e0\n"
    );
}

#[test]
fn naive_flag_adds_columns() {
    let o = dampq(&["spectrum", "--omega", "5", "--gamma", "3", "--n-max", "1", "--naive"]);
    assert_eq!(o.status.code(), Some(0));
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert!(header.starts_with("n,re_E,im_E,"), "{header}");
    assert!(header.split(',').count() > 3);
    // naive ground level is ħ(ω₁ − iγ)/2 = 2 − 1.5i
    let row0 = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row0.contains("2.0000000000000000e0") && row0.contains("-1.5000000000000000e0"), "{row0}");
}

#[test]
fn out_flag_writes_file_and_leaves_stdout_empty() {
    let path = scratch("spectrum.json");
    let o = dampq(&[
        "spectrum", "--omega", "1", "--gamma", "0.5", "--n-max", "3", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["data"]["n"].as_array().unwrap().len(), 4);
}

#[test]
fn json_reports_have_common_shape() {
    let runs: [&[&str]; 5] = [
        &["classical", "--omega", "2", "--gamma", "0.1", "--t-end", "1", "--dt", "0.1"],
        &["evolve", "--omega", "2", "--gamma", "0.1", "--state", "1:1", "--t-end", "1", "--dt", "0.5"],
        &["equivalence", "--omega", "2", "--gamma", "0.1", "--state", "0:1,3:1", "--times", "0,1,2"],
        &["driven", "--omega", "2", "--gamma", "0.1", "--signal", "sin:1,1.5", "--t-end", "1", "--dt", "0.25"],
        &["sweep", "--omega", "2", "--gammas", "0:1:3", "--state", "0:1,2:1", "--t-end", "1"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let o = dampq(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["command"], args[0]);
        let columns = v["columns"].as_array().unwrap();
        let rows = v["data"][columns[0].as_str().unwrap()].as_array().unwrap().len();
        for c in columns {
            assert_eq!(v["data"][c.as_str().unwrap()].as_array().unwrap().len(), rows, "{args:?} column {c}");
        }
        assert!(v["config"].is_object() && v["summary"].is_object());
    }
}

#[test]
fn sweep_rows_follow_gamma_order_and_echo_config() {
    let o = dampq(&[
        "sweep", "--omega", "2", "--gammas", "0.5,0.1,1.5", "--hbar", "1.5", "--state", "0:1,2:1", "--t-end", "1",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let gammas: Vec<f64> = v["data"]["gamma"].as_array().unwrap().iter().map(|g| g.as_f64().unwrap()).collect();
    assert_eq!(gammas, [0.5, 0.1, 1.5]);
    for i in 0..3 {
        assert_eq!(v["data"]["index"][i], i);
        assert_eq!(v["data"]["omega"][i].as_f64(), Some(2.0));
        assert_eq!(v["data"]["hbar"][i].as_f64(), Some(1.5));
        assert_eq!(v["data"]["state"][i], "0:1,2:1");
        assert_eq!(v["data"]["t"][i].as_f64(), Some(1.0));
    }
    let norms: Vec<f64> = v["data"]["norm_sq"].as_array().unwrap().iter().map(|g| g.as_f64().unwrap()).collect();
    assert!(norms[2] < norms[0] && norms[0] < norms[1]);
}

#[test]
fn csv_summary_goes_to_stderr() {
    let o = dampq(&["evolve", "--omega", "1", "--gamma", "0.2", "--state", "0:1,1:1", "--t-end", "1", "--dt", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("normalized by factor"), "{err}");
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| !l.contains(':')));
}

#[test]
fn equivalence_passes_on_valid_input() {
    let o = dampq(&["equivalence", "--omega", "3", "--gamma", "2.9", "--state", "0:1,5:1:-1,9:0.5", "--t-end", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let body = stdout(&o);
    let header: Vec<&str> = body.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "pass").unwrap();
    assert!(body.lines().skip(1).all(|l| l.split(',').nth(col) == Some("true")));
}

#[test]
fn driven_rest_state_with_zero_signal_stays_at_rest() {
    let o = dampq(&["driven", "--omega", "2", "--gamma", "0.3", "--signal", "zero", "--t-end", "1", "--dt", "0.25", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["data"]["x"].as_array().unwrap().iter().all(|x| x.as_f64() == Some(0.0)));
    assert_eq!(v["data"]["t"].as_array().unwrap().len(), 5);
}

#[test]
fn classical_first_row_is_initial_state() {
    let o = dampq(&["classical", "--omega", "2", "--gamma", "0.1", "--x0", "0.5", "--p0", "-1", "--t-end", "0.3", "--dt", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    let row: Vec<&str> = body.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..3], ["0.0000000000000000e0", "5.0000000000000000e-1", "-1.0000000000000000e0"]);
    assert_eq!(body.lines().count(), 5);
}

#[test]
fn invalid_inputs_exit_one() {
    let cases: [&[&str]; 7] = [
        &["spectrum", "--omega", "1", "--gamma", "1", "--n-max", "2"],
        &["spectrum", "--omega", "1", "--gamma", "2", "--n-max", "2"],
        &["spectrum", "--omega", "-1", "--gamma", "0", "--n-max", "2"],
        &["classical", "--omega", "1", "--gamma", "0.1", "--t-end", "1", "--dt", "0"],
        &["evolve", "--omega", "1", "--gamma", "0.1", "--state", "0:0", "--t-end", "1", "--dt", "0.5"],
        &["driven", "--omega", "1", "--gamma", "0.1", "--signal", "pwc:2=1,1=0", "--t-end", "1", "--dt", "0.5"],
        &["spectrum", "--omega", "1"],
    ];
    for args in cases {
        let o = dampq(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--omega", "1.3", "--gamma", "0.4", "--seed", "7", "--format", "json"];
    let a = dampq(&args);
    let b = dampq(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["data"]["status"].as_array().unwrap().iter().all(|s| s == "pass" || s == "skip"));
}

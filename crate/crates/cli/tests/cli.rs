use std::path::Path;
use std::process::{Command, Output};

fn fmodule(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fmodule"));
    cmd.args(args).env_remove("FMODULE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FMODULE_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn logs_example() {
    let out = fmodule(&["logs", "--p", "3", "--e", "1", "--f", "1", "--n", "2", "--convention", "araki"], None);
    assert_eq!(out.status.code(), Some(0));
    // π = 3 here, so π − π^3 = −24 and π − π^9 = −19680.
    assert_eq!(stdout(&out), "l0 = 1\nl1 = -1/24*v1\nl2 = 1/472320*v1^4 - 1/19680*v2\n");
}

#[test]
fn right_unit_example() {
    let out = fmodule(&["right-unit", "--p", "3", "--e", "1", "--f", "1", "--k", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "eta_R(v1) = v1 - 24*t1\n");
    let out = fmodule(&["right-unit", "--p", "3", "--e", "2", "--k", "1", "--convention", "hazewinkel"], None);
    assert_eq!(stdout(&out), "eta_R(V1) = V1 + pi*t1\n");
}

#[test]
fn verify_all_passes() {
    let out = fmodule(&["verify-all", "--p", "3", "--e", "2", "--f", "1", "--D", "52"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("verify-all: PASS (139 checks)\n"));
    let json = fmodule(&["verify-all", "--p", "3", "--e", "2", "--D", "52", "--output", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 8);
}

#[test]
fn output_is_deterministic() {
    let args = ["coproduct", "--p", "3", "--e", "2", "--k", "2", "--output", "json"];
    let a = fmodule(&args, None);
    let b = fmodule(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["values"][0]["name"], "Delta(t2)");
    assert_eq!(v["values"][0]["degree"], 16);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["logs", "--p", "4"][..],
        &["logs"],
        &["logs", "--p", "3", "--bogus"],
        &["frobnicate"],
        &["coproduct", "--p", "3", "--k", "2", "--D", "3"],
        &["witt", "--p", "3", "--seq", "(1,x)"],
        &["logs", "--p", "3", "--n", "0"],
    ] {
        let out = fmodule(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn stabilizer_presentation() {
    let out = fmodule(&["stabilizer", "--p", "3", "--h", "1", "--kmax", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("generators: t1, t2\nrelation: t1^3 = t1\nrelation: t2^3 = t2\n"));
    assert!(text.contains("Delta(t2) = t2 + t1*t1' - t1^2*t1' - t1*t1'^2 + t2'\n"));
    let out = fmodule(&["stabilizer", "--p", "3", "--h", "1", "--kmax", "3", "--output", "json"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["presentation"]["generators"], serde_json::json!(["t1", "t2"]));
    assert_eq!(v["pass"], true);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["right-unit", "--p", "5", "--k", "2"];
    let fresh = fmodule(&args, None);
    let first = fmodule(&args, Some(dir.path()));
    assert_eq!(first.stdout, fresh.stdout);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let second = fmodule(&args, Some(dir.path()));
    assert_eq!(second.stdout, fresh.stdout);
    assert!(second.stderr.is_empty());

    // An entry whose polynomial is no longer homogeneous of the recorded degree is rejected.
    let mut stored: serde_json::Value = serde_json::from_slice(&std::fs::read(&files[0]).unwrap()).unwrap();
    let terms = stored["entries"][0]["poly"].as_array_mut().unwrap();
    terms.push(serde_json::json!({"coeff": ["1"], "vars": [{"family": "v", "index": 1, "slot": 0, "exp": 1}]}));
    std::fs::write(&files[0], serde_json::to_vec(&stored).unwrap()).unwrap();
    let third = fmodule(&args, Some(dir.path()));
    assert_eq!(third.stdout, fresh.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("discarding invalid cache entry"));

    std::fs::write(&files[0], b"not json").unwrap();
    assert_eq!(fmodule(&args, Some(dir.path())).stdout, fresh.stdout);
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let out = fmodule(&["logs", "--p", "3", "--n", "1", "--cache-dir", flag], Some(env_dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.toml");
    std::fs::write(&path, "p = 3\ne = 2\nk = 1\nconvention = \"hazewinkel\"\n").unwrap();
    let cfg = path.to_str().unwrap();
    let out = fmodule(&["right-unit", "--config", cfg], None);
    assert_eq!(stdout(&out), "eta_R(V1) = V1 + pi*t1\n");
    let out = fmodule(&["right-unit", "--config", cfg, "--convention", "araki"], None);
    assert_eq!(stdout(&out), "eta_R(v1) = v1 - 2*pi*t1\n");

    std::fs::write(&path, "p = 3\nunknown = 1\n").unwrap();
    assert_eq!(fmodule(&["logs", "--config", cfg], None).status.code(), Some(2));
}

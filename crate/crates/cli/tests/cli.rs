use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn tri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tri")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn validate_figure_eight() {
    let o = tri(&["validate", fixture("fig8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["k"], 2);
    assert_eq!(v["degrees"], serde_json::json!([6, 6]));
    assert_eq!(v["cuspCount"], 1);
    assert_eq!(v["orientable"], true);
}

#[test]
fn angle_on_both_fixtures() {
    let o = tri(&["angle", fixture("fig8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"status\":\"AngleStructure\",\"witness\":[[\"1/3\",\"1/3\",\"1/3\"],[\"1/3\",\"1/3\",\"1/3\"]]}\n"
    );
    let o = tri(&["angle", fixture("rl_insert1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["status"], "NoAngleStructure");
    assert_eq!(v["cert"]["n"].as_array().unwrap().len(), 4);
    assert_eq!(v["cert"]["q"].as_array().unwrap().len(), 4);
}

#[test]
fn taut_lists_pi_pairs() {
    let o = tri(&["taut", fixture("fig8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[[0,0],[1,2],[2,1]]\n");
}

#[test]
fn garbage_and_missing_files_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json at all").unwrap();
    let o = tri(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "parse");
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(!o.stderr.is_empty());

    let o = tri(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "io");
}

#[test]
fn invalid_triangulation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"tets":[{"nbr":[0,0,0,0],"perm":[[1,0,2,3],[1,0,2,3],[0,1,3,2],[0,1,3,2]]}]}"#,
    )
    .unwrap();
    let o = tri(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert!(v["cell"].is_array());
}

#[test]
fn unknown_flags_are_rejected() {
    let o = tri(&["angle", "--frobnicate", fixture("fig8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "usage");
}

#[test]
fn bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (word, inserts) in [("RL", vec![]), ("RL", vec!["1"]), ("RRLRL", vec!["0", "5"])] {
        let out = dir.path().join(format!("{word}{}.json", inserts.len()));
        let mut args = vec!["bundle", "--word", word, "-o", out.to_str().unwrap()];
        for i in &inserts {
            args.extend(["--insert", i]);
        }
        let o = tri(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let sidecar = out.with_extension("taut.json");
        let taut: Vec<u8> = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
        assert_eq!(taut.len(), word.len() + 2 * inserts.len());
        let o = tri(&["validate", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn bundle_output_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = tri(&["bundle", "--word", "RL", "--insert", "1", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(fixture("rl_insert1.json")).unwrap()
    );
    let o = tri(&["bundle", "--word", "RL", "--insert", "1"]);
    assert_eq!(o.stdout, std::fs::read(fixture("rl_insert1.json")).unwrap());
}

#[test]
fn output_is_byte_stable() {
    let path = fixture("rl_insert1.json");
    let a = tri(&["angle", path.to_str().unwrap()]);
    let b = tri(&["angle", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let a = tri(&["validate", path.to_str().unwrap()]);
    let b = tri(&["validate", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chi_of_a_tetrahedral_solution() {
    let dir = tempfile::tempdir().unwrap();
    let class = dir.path().join("d0.json");
    std::fs::write(
        &class,
        r#"{"tri":[["-1","-1","-1","-1"],["0","0","0","0"]],"quad":[["1","1","1"],["0","0","0"]]}"#,
    )
    .unwrap();
    let o = tri(&["chi", fixture("fig8.json").to_str().unwrap(), "--class", class.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "\"-1\"\n");

    std::fs::write(&class, r#"{"tri":[],"quad":[]}"#).unwrap();
    let o = tri(&["chi", fixture("fig8.json").to_str().unwrap(), "--class", class.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pachner_moves_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let up = dir.path().join("up.json");
    let o = tri(&["pachner", fixture("fig8.json").to_str().unwrap(), "--face", "0:0", "-o", up.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["k"], 3);
    let report = json(&tri(&["validate", up.to_str().unwrap()]));
    let degrees: Vec<u64> = serde_json::from_value(report["degrees"].clone()).unwrap();
    let e = degrees.iter().position(|&d| d == 3).unwrap();
    let o = tri(&["pachner", up.to_str().unwrap(), "--edge", &e.to_string()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["tets"].as_array().unwrap().len(), 2);

    let o = tri(&["pachner", fixture("fig8.json").to_str().unwrap(), "--edge", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tri(&["pachner", fixture("fig8.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_documents_the_schema() {
    let o = tri(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(r#"{"tets":[{"nbr":[t0,t1,t2,t3],"perm":[[..4..],[..4..],[..4..],[..4..]]}, ...]}"#));
    assert!(text.contains("Exit codes"));
}

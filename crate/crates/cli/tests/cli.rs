use std::process::{Command, Output};

fn tee_probe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tee-probe")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_and_analyze() {
    let o = tee_probe(&["generate", "cyclic", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let dsl = stdout(&o);
    let o = tee_probe(&["analyze", &format!("--q={}", dsl.trim())]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classification: fixed-topology"));
}

#[test]
fn eval_json_shape() {
    let o = tee_probe(&["--format", "json", "eval", "--q", "MMI", "--geometry", "kp_disk3", "--model", "toric"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "paper");
    assert_eq!(v["c_logD"], "1");
    assert_eq!(v["c_K"], "0");
    assert_eq!(v["topological"], true);
    assert_eq!(v["numeric"]["model"], "toric");
    let x = v["numeric"]["value"].as_f64().unwrap();
    assert!((x - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(tee_probe(&["eval", "--q", "S(A", "--geometry", "pie5"]).status.code(), Some(2));
    assert_eq!(tee_probe(&["eval", "--q", "I6", "--geometry", "pie5"]).status.code(), Some(2));
    assert_eq!(tee_probe(&["eval", "--q", "MMI", "--geometry", "hexagon"]).status.code(), Some(2));
    assert_eq!(tee_probe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tee_probe(&["--help"]).status.code(), Some(0));

    let ring = fixture("annulus.json");
    let hole = ["eval", "--q", "S(ABC) - S(D)", "--geometry", ring.as_str()];
    assert_eq!(tee_probe(&hole).status.code(), Some(0));
    let mut strict = hole.to_vec();
    strict.push("--strict");
    assert_eq!(tee_probe(&strict).status.code(), Some(3));
}

#[test]
fn oracle_respects_kmax() {
    let o = tee_probe(&["oracle", "--model", "ising", "--punctures", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_tee-probe"))
        .args(["oracle", "--model", "ising", "--punctures", "6"])
        .env("TEE_PROBE_KMAX", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn geometry_commands() {
    let o = tee_probe(&["geometry", "validate", &fixture("annulus.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = tee_probe(&["geometry", "export", "pie6"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("tee-probe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pie6.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let again = tee_probe(&["geometry", "export", path.to_str().unwrap()]);
    assert_eq!(again.stdout, o.stdout);

    // a flipped edge breaks the rotation system
    let mut json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let e = &mut json["edges"][0];
    let (l, r) = (e["left"].clone(), e["right"].clone());
    e["left"] = r;
    e["right"] = l;
    std::fs::write(&path, json.to_string()).unwrap();
    assert_eq!(tee_probe(&["geometry", "validate", path.to_str().unwrap()]).status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn scan_catalog_file() {
    let dir = std::env::temp_dir().join(format!("tee-probe-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"quantities": []}"#).unwrap();
    assert_eq!(tee_probe(&["scan", "--catalog", empty.to_str().unwrap()]).status.code(), Some(0));

    // a facet entry that is not topological fails the scan
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"quantities": [{"name": "LW", "parties": ["A", "B", "C"], "facet": true,
            "terms": [{"coeff": "1", "region": ["A", "B"]}, {"coeff": "1", "region": ["B", "C"]},
                      {"coeff": "-1", "region": ["B"]}, {"coeff": "-1", "region": ["A", "B", "C"]}]}]}"#,
    )
    .unwrap();
    assert_eq!(tee_probe(&["scan", "--catalog", bad.to_str().unwrap(), "--geometries", "kp_disk3"]).status.code(), Some(1));
    std::fs::write(&bad, r#"{"quantities": [{"parties": 3}]}"#).unwrap();
    assert_eq!(tee_probe(&["scan", "--catalog", bad.to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

use std::process::{Command, Output};

fn adlv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adlv")).args(args).env("ADLV_NO_TIMING", "1").output().expect("spawn adlv")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

const G2_BASIC: [&str; 9] = ["--type", "G2", "--lambda", "[1,0]", "--mu", "[0,0]", "--J", "[0,1]", "--format"];

#[test]
fn g2_dot_matches_golden() {
    let mut args = vec!["export"];
    args.extend(G2_BASIC);
    args.push("dot");
    let out = adlv(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), include_str!("golden/g2_basic.dot"));
}

#[test]
fn export_json_is_versioned() {
    let mut args = vec!["export"];
    args.extend(G2_BASIC);
    args.push("json");
    let v = json(&adlv(&args));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["datum"]["type"], "G2");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 12);
}

#[test]
fn adm_counts_and_is_deterministic() {
    let args = ["adm", "--type", "A", "--rank", "2", "--lambda", "[1,1]"];
    let a = adlv(&args);
    let b = adlv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["count"], 25);
    assert_eq!(v["elements"].as_array().unwrap().len(), 25);
    assert_eq!(v["lambda"], serde_json::json!([1, 1]));
}

#[test]
fn adm_cache_round_trips() {
    let dir = std::env::temp_dir().join(format!("adlv-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_adlv"))
            .args(["adm", "--type", "C2", "--lambda", "[1,0]"])
            .env("ADLV_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(std::fs::read_dir(&dir).unwrap().count() == 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn connect_reports_paths() {
    let out = adlv(&["connect", "--type", "A2", "--lambda", "[1,1]", "--mu", "[0,0]", "--J", "[0,1]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["connected"], true);
    assert_eq!(v["report"]["paths"].as_array().unwrap().len(), 6);
}

#[test]
fn pi0_matches_fundamental_group() {
    let out = adlv(&["pi0", "--type", "A2", "--lambda", "[1,1]", "--mu", "[0,0]", "--J", "[0,1]"]);
    assert_eq!(json(&out)["count"], 3);
    let out = adlv(&["pi0", "--type", "A2", "--isogeny", "sc", "--lambda", "[1,1]", "--mu", "[0,0]", "--J", "[0,1]"]);
    assert_eq!(json(&out)["count"], 1);
}

#[test]
fn short_datum_json_round_trips() {
    let v = json(&adlv(&["classify", "--type", "A2", "--lambda", "[1,1]", "--mu", "[0,0]", "--J", "[0,1]"]));
    assert_eq!(v["class"]["tag"], "Irreducible");
    let short = v["short"].to_string();
    let w = json(&adlv(&["classify", "--type", "A2", "--lambda", "[1,1]", "--short", &short]));
    assert_eq!(v, w);
}

#[test]
fn verify_g2_passes() {
    let out = adlv(&["verify", "g2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_seq_and_empty_small() {
    for args in [["verify", "seq", "--type", "A3", "--kmax", "1"].as_slice(), ["verify", "empty", "--type", "A2"].as_slice()] {
        assert_eq!(adlv(args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn fold_a3_is_clean() {
    let out = adlv(&["fold", "--fold", "A3", "--kmax", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 violations"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        ["adm", "--type", "A2", "--lambda", "[1,-1]"].as_slice(),
        ["adm", "--type", "Q2", "--lambda", "[1,0]"].as_slice(),
        ["adm", "--type", "A2", "--lambda", "[1]"].as_slice(),
        ["adm", "--type", "A2", "--isogeny", "sc", "--lambda", "[1,0]"].as_slice(),
        ["pi0", "--type", "A2", "--lambda", "[2,2]", "--mu", "[1,0]", "--J", "[1]"].as_slice(),
        ["connect", "--type", "A2", "--lambda", "[2,2]", "--mu", "[1,0]", "--J", "[1]"].as_slice(),
    ] {
        let out = adlv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn not_irreducible_classify_exits_one() {
    let out = adlv(&["classify", "--type", "A2", "--lambda", "[2,2]", "--mu", "[1,0]", "--J", "[1]"]);
    assert_eq!(out.status.code(), Some(1));
}

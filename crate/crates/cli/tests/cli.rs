use std::path::Path;
use std::process::{Command, Output};

fn quizzy(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quizzy"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("QUIZZY_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV rows without the timing column.
fn values(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect()
}

#[test]
fn classical_segments_csv() {
    let o = quizzy(
        None,
        &["--csv", "orbitals", "classical", "--group", "hyperoctahedral", "--N", "4", "--space", "segments", "--k", "1,2,3,4"],
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "computation,group,N,k,method,value,num,den,ms");
    let v: Vec<String> = out.lines().skip(1).map(|l| l.split(',').nth(5).unwrap().to_string()).collect();
    assert_eq!(v, ["1", "3", "11", "49"]);
}

#[test]
fn quantum_and_fixdim_json() {
    let o = quizzy(None, &["--json", "orbitals", "quantum", "--group", "HNplus", "--N", "5", "--k", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"]["value"], "11");
    assert_eq!(v["method"], "constrained-rank");

    let o = quizzy(None, &["--json", "fixdim", "--category", "NC2", "--N", "5", "--k", "0"]);
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ns: Vec<u64> = rows.iter().map(|r| r["N"].as_u64().unwrap()).collect();
    assert_eq!(ns, [4, 5, 6]);
    assert!(rows.iter().all(|r| r["value"]["value"] == "1"));
}

#[test]
fn rational_values_keep_num_and_den() {
    let o = quizzy(None, &["--csv", "weingarten", "--category", "P", "--N", "5", "--a", "1,2,3", "--b", "1,2,3"]);
    assert_eq!(values(&o), ["weingarten,S_N,5,3,weingarten,1/60,1,60"]);
}

#[test]
fn cache_on_off_and_repeat_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--csv", "orbitals", "quantum", "--group", "HNplus", "--N", "5", "--k", "1,2,3,4", "--method", "weingarten"];
    let cold = quizzy(Some(dir.path()), &args);
    let warm = quizzy(Some(dir.path()), &args);
    let off = quizzy(None, &args);
    assert!(cold.status.success() && warm.status.success() && off.status.success());
    assert_eq!(values(&cold), values(&warm));
    assert_eq!(values(&cold), values(&off));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 4);
}

#[test]
fn corrupt_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["orbitals", "dual", "--orders", "2,3", "--mode", "free", "--k", "2"];
    assert!(quizzy(Some(dir.path()), &args).status.success());
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), "{\"truncated").unwrap();
    }
    assert_eq!(quizzy(Some(dir.path()), &args).status.code(), Some(4));
    assert!(quizzy(None, &args).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(quizzy(None, &["nonsense"]).status.code(), Some(2));
    assert_eq!(quizzy(None, &["fixdim", "--category", "XYZ", "--N", "3", "--k", "1"]).status.code(), Some(2));
    assert_eq!(quizzy(None, &["fixdim", "--category", "P2star", "--N", "3", "--k", "2"]).status.code(), Some(2));
    assert!(quizzy(None, &["--experimental", "fixdim", "--category", "P2star", "--N", "3", "--k", "2"]).status.success());
    assert_eq!(
        quizzy(None, &["--max-index-space", "100", "fixdim", "--category", "P", "--N", "5", "--k", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(quizzy(None, &["orbitals", "dual", "--orders", "2", "--k", "4", "--classes"]).status.code(), Some(2));
    assert_eq!(quizzy(None, &["verify", "weingarten"]).status.code(), Some(0));
    assert_eq!(quizzy(None, &["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_failure_exits_1_and_reports_both_methods() {
    let o = quizzy(None, &["verify", "hyperoctahedral"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] hyperoctahedral/H_N+ word values"));
    assert!(out.contains("upup: rank 4, weingarten 4"));
}

#[test]
fn four_orbitals_discrepancy_json() {
    let o = quizzy(None, &["--json", "verify", "four-orbitals"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let d = &v["checks"][1]["discrepancy"];
    assert_eq!(d["status"], "refuted-by-two-independent-methods");
    assert_eq!(d["claimed"]["value"], "43");
    assert_eq!(d["breakdown"].as_array().unwrap().len(), 16);
}

#[test]
fn explore_small() {
    let o = quizzy(None, &["--csv", "explore-conjecture", "--N", "3", "--k", "2"]);
    assert!(o.status.success());
    let rows = values(&o);
    assert_eq!(rows, ["explore-cube,H_N,3,2,burnside,4,4,1", "explore-exterior,barO_N,3,2,constrained-rank,4,4,1"]);
}

#[test]
fn twist_and_character() {
    let o = quizzy(None, &["twist", "--partition", "13|24"]);
    assert!(stdout(&o).contains("+2·T{1,2,3,4} -1·T{1,3}{2,4}"));
    let o = quizzy(None, &["character", "--N", "2"]);
    assert_eq!(stdout(&o).trim(), "1 + u11 + u22 + u11u22 + u12u21");
}

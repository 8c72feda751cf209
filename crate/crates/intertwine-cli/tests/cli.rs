use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_intertwine"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("intertwine-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn verify(cfg: &PathBuf, extra: &[&str], out: &PathBuf) -> Output {
    bin().arg("verify").arg("--config").arg(cfg).arg("--out").arg(out).args(extra).output().unwrap()
}

fn report(dir: &PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn bundled_configs_pass() {
    for name in ["s3_a3.json", "s4_a4.json", "tl_d2_pseudoreal.json", "su2_adjoint.json", "d4_v4_weyl.json"] {
        let out = scratch(name);
        let o = verify(&config(name), &["--format", "both"], &out);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stdout));
        let r = report(&out);
        for suite in r.as_array().unwrap() {
            for c in suite["checks"].as_array().unwrap() {
                assert_ne!(c["status"], "fail", "{name}: {c}");
                assert!(!c["tag"].as_str().unwrap().is_empty());
            }
        }
        assert!(out.join("report.txt").exists());
    }
}

#[test]
fn tl_pseudoreal_covers_admissibility_and_appendix() {
    let out = scratch("tl");
    assert_eq!(verify(&config("tl_d2_pseudoreal.json"), &["--format", "json"], &out).status.code(), Some(0));
    let r = report(&out);
    let tags: Vec<String> = r
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap().iter().map(|c| c["tag"].as_str().unwrap().to_string()))
        .collect();
    for t in ["admissibility", "conjugate-equations", "intrinsic-dimension", "bullet-of-mu-tilde", "bullet-of-R", "associativity"] {
        assert!(tags.iter().any(|x| x == t), "missing {t} in {tags:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for d in [&a, &b] {
        assert_eq!(verify(&config("s3_a3.json"), &["--suite", "positivity,quotient,conjugate", "--seed", "5"], d).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(a.join("report.json")).unwrap(), std::fs::read(b.join("report.json")).unwrap());
    let names: Vec<String> = report(&a).as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["conjugate", "positivity", "quotient"]);
}

#[test]
fn failed_check_exits_one() {
    let dir = scratch("fail");
    let cfg = dir.join("bad_f.json");
    std::fs::write(&cfg, r#"{"suites": ["tl"], "tl": [{"id": "t", "variant": "real", "d": 2, "f": [[1, 0], [0, 2]]}]}"#).unwrap();
    let o = verify(&cfg, &["--format", "text"], &dir);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL [admissibility]"));
}

#[test]
fn config_errors_exit_two() {
    let dir = scratch("cfg");
    let cases = [
        r#"{"pairs": [{"id": "p", "subgroup": "K"}]}"#,
        r#"{"groups": [{"id": "G", "builtin": "S7"}]}"#,
        r#"{"tl": [{"id": "t", "variant": "real", "d": "sqrt(", "f": [[1]]}]}"#,
        r#"{"scalar": "f16"}"#,
        r#"{"suites": ["nope"]}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let cfg = dir.join(format!("c{i}.json"));
        std::fs::write(&cfg, text).unwrap();
        let o = verify(&cfg, &[], &dir);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("config error"), "{text}");
    }
    let o = bin().args(["verify", "--config", "/no/such/file.json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn float_mode_runs_the_same_suites() {
    let dir = scratch("f64");
    let text = std::fs::read_to_string(config("s3_a3.json")).unwrap().replace("\"exact\"", "\"f64\"");
    let cfg = dir.join("f64.json");
    std::fs::write(&cfg, text).unwrap();
    let o = verify(&cfg, &["--suite", "quasitensor,positivity,frobenius", "--eps", "1e-9"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&dir)[0]["scalar"], "f64");
}

#[test]
fn other_subcommands() {
    let dir = scratch("sub");
    let o = bin().arg("dims").arg("--config").arg(config("d4_v4_weyl.json")).args(["--format", "text"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("mult 1 dim 1"), "{s}");

    let o = bin().arg("induce").arg("--config").arg(config("s3_a3.json")).arg("--out").arg(&dir).args(["--format", "json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let dump: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("induce.json")).unwrap()).unwrap();
    let n = dump[0]["algebra_dim"].as_u64().unwrap();
    // the quotient algebra of S3/A3 is functions on two points
    assert_eq!(n, 2);
    assert_eq!(dump[0]["structure_constants"].as_array().unwrap().len() as u64, n * n * n);

    let o = bin().arg("classify").arg("--config").arg(config("d4_v4_weyl.json")).args(["--format", "text"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));

    let o = bin().arg("su2").arg("--config").arg(config("su2_adjoint.json")).args(["--format", "text"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert_eq!(s.matches("PASS [su2-verdict]").count(), 6, "{s}");
}

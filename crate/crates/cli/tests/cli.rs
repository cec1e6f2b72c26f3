use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn curves() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../curves")
}

fn wsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsemi")).args(args).env_remove("WSEMI_PRECISION").output().unwrap()
}

fn curve(name: &str) -> String {
    curves().join(name).display().to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("wsemi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_genus_and_adjunction() {
    let o = wsemi(&["info", "--curve", &curve("cusp.curve")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("genus: 0\n"));
    assert!(s.contains("A = 2*P1\n"));
    let o = wsemi(&["info", "--curve", &curve("quartic.curve")]);
    assert!(stdout(&o).contains("genus: 2\n"));
}

#[test]
fn json_agrees_with_text() {
    let text = stdout(&wsemi(&["lbasis", "--curve", &curve("klein.curve"), "--divisor", "4*P1+4*P3"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&wsemi(&["lbasis", "--curve", &curve("klein.curve"), "--divisor", "4*P1+4*P3", "--json"])))
            .unwrap();
    assert_eq!(json["dim"], 6);
    assert!(text.contains("l(D) = 6\n"));
    for (i, n) in json["numerators"].as_array().unwrap().iter().enumerate() {
        assert!(text.contains(&format!("f{} = {}\n", i + 1, n.as_str().unwrap())));
    }
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&wsemi(&["info", "--curve", &curve("quartic.curve"), "--json"]))).unwrap();
    assert_eq!(j["genus"], 2);
    assert_eq!(j["adjunction_divisor"], "2*P2");
}

#[test]
fn rrquot_reports_dimensions() {
    let o = wsemi(&["rrquot", "--curve", &curve("quartic_pinned.curve"), "--m", "1,2", "--points", "P1,P2", "--chart", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("i = 2 (P2): dim 0\n"));
    let o = wsemi(&["rrquot", "--curve", &curve("quartic_pinned.curve"), "--m", "4,6", "--points", "P1,P2", "--chart", "1"]);
    let s = stdout(&o);
    assert!(s.contains("dim 1\n") && s.contains("pole order 4 at P1 (valuation -4)"));
}

#[test]
fn semigroup_text_and_svg() {
    let svg = std::env::temp_dir().join(format!("wsemi-lattice-{}.svg", std::process::id()));
    let o = wsemi(&[
        "semigroup",
        "--curve",
        &curve("quartic_pinned.curve"),
        "--points",
        "P1,P2",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("gaps (6): (0,1) (0,2) (1,0) (1,2) (2,0) (2,1)\n"));
    let body = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(body.matches("<circle").count(), 16);
    assert_eq!(body.matches(r#"class="gap""#).count(), 6);
    assert_eq!(body.matches(r#"class="diagonal""#).count(), 1);
    let _ = std::fs::remove_file(svg);
    let o = wsemi(&["semigroup", "--curve", &curve("cusp.curve"), "--points", "P2"]);
    assert!(stdout(&o).contains("no gaps\n"));
}

#[test]
fn exit_codes() {
    let code = |o: Output| o.status.code().unwrap();
    let reducible = scratch("red.curve", "[curve]\np = 2\nF = X*Y\n");
    let o = wsemi(&["info", "--curve", &reducible]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reducible"));
    assert_eq!(code(o), 2);
    let juxt = scratch("juxt.curve", "[curve]\np = 3\nF = 2X^3 + Y^3 + Z^3\n");
    assert_eq!(code(wsemi(&["info", "--curve", &juxt])), 2);
    assert_eq!(code(wsemi(&["info", "--curve", "/nonexistent/q.curve"])), 4);
    let q = curve("quartic.curve");
    assert_eq!(code(wsemi(&["lbasis", "--curve", &q, "--divisor", "2*Q7"])), 3);
    assert_eq!(code(wsemi(&["lbasis", "--curve", &q, "--divisor", "2P1"])), 3);
    assert_eq!(code(wsemi(&["rrquot", "--curve", &q, "--m", "1", "--points", "P6"])), 3);
    assert_eq!(code(wsemi(&["rrquot", "--curve", &q, "--m", "1,1", "--points", "P1,P1"])), 3);
    assert_eq!(code(wsemi(&["semigroup", "--curve", &q, "--points", "P1,P5", "--svg", "/nonexistent/dir/x.svg"])), 4);
}

#[test]
fn precision_from_environment() {
    let q = curve("quartic.curve");
    let base = wsemi(&["semigroup", "--curve", &q, "--points", "P1,P5"]);
    let env = Command::new(env!("CARGO_BIN_EXE_wsemi"))
        .args(["semigroup", "--curve", &q, "--points", "P1,P5"])
        .env("WSEMI_PRECISION", "64")
        .output()
        .unwrap();
    assert_eq!(base.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_wsemi"))
        .args(["info", "--curve", &q])
        .env("WSEMI_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

use std::io::{Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn etnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etnc")).args(args).output().expect("run etnc")
}

#[test]
fn passing_fixture_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = etnc(&["verify", fixture("79a1_q29_p7.toml").to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["label"], "79a1_q29_p7");
    assert!(json["checks"].as_array().unwrap().iter().any(|c| c["name"] == "zpg" && c["status"] == "pass"));
}

#[test]
fn check_selection_limits_the_report() {
    let out = etnc(&["verify", fixture("79a1_q29_p7.toml").to_str().unwrap(), "--check", "rat", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = json["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"rationality"));
    assert!(!names.contains(&"zpg"));
}

#[test]
fn empty_analytic_block_is_an_input_error_with_path() {
    let text = std::fs::read_to_string(fixture("79a1_q29_p7.toml")).unwrap();
    let start = text.find("[analytic]").unwrap();
    let end = text.find("[arithmetic]").unwrap();
    let broken = format!("{}[analytic]\n\n{}", &text[..start], &text[end..]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.toml");
    std::fs::write(&path, broken).unwrap();
    let out = etnc(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("analytic"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bad_options_are_input_errors() {
    let f = fixture("79a1_q29_p7.toml");
    assert_eq!(etnc(&["verify", f.to_str().unwrap(), "--check", "nope"]).status.code(), Some(3));
    assert_eq!(etnc(&["verify", f.to_str().unwrap(), "--tol", "0.5"]).status.code(), Some(3));
    assert_eq!(etnc(&["verify", "/nonexistent.toml"]).status.code(), Some(3));
}

#[test]
fn tighter_tolerance_than_the_data_supports_is_not_a_pass() {
    let out = etnc(&["verify", fixture("79a1_q29_p7.toml").to_str().unwrap(), "--tol", "1e-40"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn fetched_metadata_replaces_the_curve_block() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = std::thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut buf = [0u8; 1024];
        let _ = stream.read(&mut buf).unwrap();
        // Tamagawa number divisible by 7 breaks hypothesis (b)
        let body = r#"{"label":"79a1","conductor":79,"ainvs":[1,1,1,-2,0],"torsion_order":1,"tamagawa":{"79":14}}"#;
        write!(stream, "HTTP/1.1 200 OK\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}", body.len(), body).unwrap();
    });
    let out = etnc(&[
        "verify",
        fixture("79a1_q29_p7.toml").to_str().unwrap(),
        "--fetch",
        &format!("http://{addr}"),
        "--format",
        "json",
    ]);
    server.join().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let hyp = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "hypotheses").unwrap();
    assert_eq!(hyp["status"], "fail");
}

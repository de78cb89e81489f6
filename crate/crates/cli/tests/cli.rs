use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn aniso(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aniso"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn aniso");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn gen(args: &[&str]) -> String {
    let out = aniso(&[&["gen"], args].concat(), "");
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn inspect_octahedron() {
    let out = aniso(&["inspect"], &gen(&["cross-polytope", "3"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["m"], 6);
    assert_eq!(v["d"], 3);
    assert_eq!(v["h"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn certify_boundary_simplex() {
    let out = aniso(&["aniso", "cert"], &gen(&["boundary-simplex", "4"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["status"], "ANISOTROPIC");
}

#[test]
fn certificate_verifies_and_is_deterministic() {
    let k = gen(&["cross-polytope", "3"]);
    let a = aniso(&["aniso", "cert", "--seed", "7"], &k);
    let b = aniso(&["aniso", "cert", "--seed", "7"], &k);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("aniso-cert-{}.json", std::process::id()));
    std::fs::write(&path, &a.stdout).unwrap();
    let v = aniso(&["aniso", "verify", "--cert", path.to_str().unwrap()], &k);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["valid"], true);
}

#[test]
fn rp2_is_not_a_sphere_in_char_3() {
    let out = aniso(&["aniso", "cert", "--char", "3"], &gen(&["rp2"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn homology_of_rp2_depends_on_char() {
    let k = gen(&["rp2"]);
    let two = json(&aniso(&["homology", "--char", "2"], &k));
    let three = json(&aniso(&["homology", "--char", "3"], &k));
    assert_eq!(two["homology_sphere"], false);
    assert_eq!(three["homology_sphere"], false);
    assert_ne!(two["reduced_betti"], three["reduced_betti"]);
}

#[test]
fn reproduce_identities() {
    let out = aniso(&["reproduce", "--suite", "identities"], "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn psi_of_a_facet() {
    let out = aniso(&["psi", "--monomial", "1,2,3", "--char", "0"], &gen(&["boundary-simplex", "3"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_ne!(json(&out)["value"], "0");
}

#[test]
fn walk_output_pipes_into_inspect() {
    let walked = aniso(&["moves", "walk", "--steps", "3", "--seed", "2"], &gen(&["octahedron"]));
    assert!(walked.status.success());
    let out = aniso(&["inspect"], &String::from_utf8(walked.stdout).unwrap());
    assert_eq!(json(&out)["d"], 3);
}

#[test]
fn malformed_input_exits_one() {
    let out = aniso(&["inspect"], "{not json");
    assert_eq!(out.status.code(), Some(1));
}

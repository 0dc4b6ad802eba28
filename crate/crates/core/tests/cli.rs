//! End-to-end runs of the `tduality` binary on small spec files.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tduality::dsl::parse_spec;

const SPEC: &str = "\
# monopoles and a circle
[complex c]
kind = algebraic
ranks = 1,1

[complex cp2]
kind = catalog
name = cp
params = 2

[complex t2]
kind = catalog
name = torus2

[bundle b]
base = cp2
euler = 5*u

[bundle tb]
base = t2
euler = 2*vol

[flux h0]
bundle = b
h =

[action m]
type = monopole
charges = 3
truncation = 2

[action hopf]
type = free_hopf
truncation = 3

[action mm]
type = multi_monopole
charges = 1,1
truncation = 2
";

fn run(spec: &str, args: &[&str]) -> Output {
  let mut child = Command::new(env!("CARGO_BIN_EXE_tduality"))
    .args(args)
    .stdin(Stdio::piped())
    .stdout(Stdio::piped())
    .stderr(Stdio::piped())
    .spawn()
    .expect("binary runs");
  child.stdin.take().unwrap().write_all(spec.as_bytes()).unwrap();
  child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
  String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
  let mut all = vec!["--json"];
  all.extend_from_slice(args);
  let out = run(SPEC, &all);
  assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
  serde_json::from_str(&stdout(&out)).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
  v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn bracketed(v: &[String]) -> String {
  format!("[{}]", v.join(", "))
}

#[test]
fn successful_commands_exit_zero() {
  for args in [
    vec!["cohom", "--complex", "c"],
    vec!["cohom", "--complex", "cp2", "--max-degree", "3"],
    vec!["dualize", "--bundle", "b"],
    vec!["dualize", "--bundle", "b", "--flux", "h0"],
    vec!["dualize", "--bundle", "tb"],
    vec!["borel", "--action", "m", "--route", "both"],
    vec!["borel", "--action", "hopf", "--route", "both"],
    vec!["borel", "--action", "mm"],
    vec!["verify"],
    vec!["verify", "--all"],
  ] {
    let out = run(SPEC, &args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
  }
}

#[test]
fn reports_state_the_sign_convention_and_window() {
  let text = stdout(&run(SPEC, &["borel", "--action", "m"]));
  assert!(text.contains("sign convention:"));
  assert!(text.contains("valid in degrees <= 3"));
}

#[test]
fn monopole_examples() {
  let d = json(&["dualize", "--bundle", "b"]);
  assert_eq!(strings(&d["result"]["dual_euler"]), ["0"]);
  assert_eq!(strings(&d["result"]["canonical_flux"]), ["5"]);
  assert_eq!(d["ambiguity_rank"], 0);

  let b = json(&["borel", "--action", "m", "--route", "both"]);
  assert_eq!(b["routes_agree"], true);
  for route in b["routes"].as_array().unwrap() {
    assert_eq!(strings(&route["dual"]["canonical_flux"]), ["3"]);
  }

  let c = json(&["cohom", "--complex", "c"]);
  let groups: Vec<&str> =
    c["degrees"].as_array().unwrap().iter().map(|d| d["group"].as_str().unwrap()).collect();
  assert_eq!(groups, ["Z", "Z"]);
}

#[test]
fn reruns_are_byte_identical() {
  for args in
    [vec!["--json", "verify", "--all"], vec!["borel", "--action", "mm"], vec!["dualize", "--bundle", "tb"]]
  {
    let (a, b) = (run(SPEC, &args), run(SPEC, &args));
    assert_eq!(a.stdout, b.stdout, "{args:?}");
  }
}

#[test]
fn json_and_text_carry_the_same_numbers() {
  let args = ["dualize", "--bundle", "b"];
  let text = stdout(&run(SPEC, &args));
  let d = json(&args);
  let r = &d["result"];
  for (label, key) in [
    ("euler class", "euler"),
    ("dual euler class", "dual_euler"),
    ("dual flux", "dual_flux"),
    ("canonical flux", "canonical_flux"),
  ] {
    let line = format!("{label}: {}", bracketed(&strings(&r[key])));
    assert!(text.lines().any(|l| l == line), "missing `{line}`");
  }
  assert!(text.contains(&format!("ambiguity rank: {}", d["ambiguity_rank"])));

  let args = ["cohom", "--complex", "cp2"];
  let text = stdout(&run(SPEC, &args));
  for row in json(&args)["degrees"].as_array().unwrap() {
    let line = format!("  H^{} = {}", row["degree"], row["group"].as_str().unwrap());
    let factors: Vec<String> =
      row["invariant_factors"].as_array().unwrap().iter().map(ToString::to_string).collect();
    let tail = format!("invariant factors [{}] free rank {}", factors.join(", "), row["free_rank"]);
    assert!(
      text.lines().any(|l| l.starts_with(&line) && l.ends_with(&tail)),
      "missing degree {}",
      row["degree"]
    );
  }
}

#[test]
fn parse_errors_exit_one() {
  for bad in [
    "[complex c]\nkind = algebraic\nranks = 1,1\nbogus = 1\n",
    "[complex c]\nkind = algebraic\nranks = 1,x\n",
    "kind = algebraic\n",
    "[bundle b]\nbase = nowhere\neuler = 0\n",
    "[complex c]\nkind = algebraic\nranks = 1\n[complex c]\nkind = algebraic\nranks = 1\n",
  ] {
    let out = run(bad, &["verify"]);
    assert_eq!(out.status.code(), Some(1), "{bad:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"), "{bad:?}");
  }
  assert_eq!(run(SPEC, &["dualize"]).status.code(), Some(1));
}

#[test]
fn precondition_violations_exit_two() {
  let non_cocycle = "[complex c]\nkind = algebraic\nranks = 1,0,1,1\ndelta2 = 1\n\
    [bundle b]\nbase = c\neuler = coeffs=0\n[flux f]\nbundle = b\nh = coeffs=0,1\n";
  let out = run(non_cocycle, &["dualize", "--bundle", "b", "--flux", "f"]);
  assert_eq!(out.status.code(), Some(2));
  assert!(String::from_utf8_lossy(&out.stderr).contains("not a cocycle"));
  assert_eq!(run(SPEC, &["cohom", "--complex", "c", "--max-degree", "5"]).status.code(), Some(2));
  assert_eq!(run(SPEC, &["borel", "--action", "mm", "--route", "bunke"]).status.code(), Some(2));

  let bad_complex = "[complex c]\nkind = algebraic\nranks = 1,0,1\ndelta0 = 0\n";
  let out = run(bad_complex, &["verify"]);
  assert_eq!(out.status.code(), Some(2));
  assert!(stdout(&out).contains("REJECTED complex c"));
}

#[test]
fn parse_serialize_parse_round_trips() {
  let first = parse_spec(SPEC).unwrap();
  let again = parse_spec(&first.to_string()).unwrap();
  assert_eq!(first, again);
  assert_eq!(first.to_string(), again.to_string());
}

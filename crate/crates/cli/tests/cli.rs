use std::io::Write;
use std::process::{Command, Output, Stdio};

use depthzero::galois::{catalog, Subgroup};
use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_depthzero"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn group(rank: u64, divisors: &[u64]) -> Value {
    json!({"rank": rank, "divisors": divisors})
}

/// Norm-one elements of F_{q²} for q = 3: count and whether some element
/// has order equal to the count.
fn norm_one_units_f9() -> (usize, bool) {
    // F₉ = F₃[i], i² = −1
    let mul = |a: (u8, u8), b: (u8, u8)| ((a.0 * b.0 + 2 * a.1 * b.1) % 3, (a.0 * b.1 + a.1 * b.0) % 3);
    let pow = |a: (u8, u8), k: usize| (0..k).fold((1, 0), |acc, _| mul(acc, a));
    let units: Vec<(u8, u8)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&u| u != (0, 0)).collect();
    let norm_one: Vec<_> = units.into_iter().filter(|&u| pow(u, 4) == (1, 0)).collect();
    let n = norm_one.len();
    let order = |u: (u8, u8)| (1..=n).find(|&k| pow(u, k) == (1, 0)).unwrap();
    (n, norm_one.iter().any(|&u| order(u) == n))
}

#[test]
fn h1_of_the_sign_lattice() {
    let out = run(&["h1"], r#"{"group": {"name": "C2"}, "module": {"rank": 1, "action": {"1": [[-1]]}}}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["cases"][0]["groups"]["h1"], group(0, &[2]));
}

#[test]
fn depth_zero_unramified_norm_one() {
    let (n, cyclic) = norm_one_units_f9();
    assert_eq!((n, cyclic), (4, true));
    let doc = r#"{"group": {"name": "C2"},
                  "local_datum": {"inertia": [0], "wild": [0], "frobenius": 1, "q": 3},
                  "module": {"rank": 1, "action": {"1": [[-1]]}}}"#;
    let out = run(&["depth-zero"], doc);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let cases = r["cases"].as_array().unwrap();
    assert_eq!(cases[0]["key"], "q=3/weakly-unramified");
    assert_eq!(cases[0]["groups"]["characters"], group(0, &[]));
    assert_eq!(cases[1]["key"], "q=3/inertial");
    assert_eq!(cases[1]["groups"]["characters"], group(0, &[n as u64]));
    assert_eq!(cases[1]["groups"]["parameters"], group(0, &[n as u64]));
}

#[test]
fn prop18_on_the_dihedral_chain() {
    let d4 = catalog::by_name("D4").unwrap();
    let r = d4.elements().find(|&x| d4.element_order(x) == 4).unwrap();
    let rot = Subgroup::generated(&d4, &[r]);
    let s = d4.elements().find(|&x| !rot.contains(x)).unwrap();
    let r2 = d4.mul(r, r);
    // H¹(⟨r²⟩, ℤ/4) with r² acting trivially: homomorphisms C₂ → ℤ/4
    let classes = (0..4).filter(|&a| (2 * a) % 4 == 0).count();
    let doc = json!({
        "group": {"name": "D4"},
        "subgroups": {"E": rot.elements(), "K": [0, r2]},
        "module": {"torsion": [4], "action": {r.to_string(): [[1]], s.to_string(): [[-1]]}},
        "task": {"h_e": "E", "h_k": "K"}
    });
    let out = run(&["prop18-check"], &doc.to_string());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["verdict"], "pass");
    assert_eq!(rep["cases"][0]["classes"], classes);
    assert!(rep["cases"][0].get("counterexamples").is_none());
}

#[test]
fn wild_inertia_must_be_a_p_group() {
    let doc = r#"{"group": {"name": "C2"}, "local_datum": {"inertia": [0, 1], "wild": [0, 1], "frobenius": 0, "p": 3, "q": 3},
                  "module": {"rank": 1}}"#;
    let out = run(&["depth-zero"], doc);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wild-inertia-order"));
}

#[test]
fn non_associative_table_names_a_triple() {
    let table: Vec<Vec<usize>> =
        vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    let n = table.len();
    let first = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| table[table[a][b]][c] != table[a][table[b][c]])
        .expect("not associative");
    let doc = json!({"group": {"table": table, "identity": 0}, "module": {"rank": 1}});
    let out = run(&["h1"], &doc.to_string());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(&format!("{first:?}")), "{err}");
}

#[test]
fn malformed_documents_are_invalid_input() {
    assert_eq!(run(&["h1"], "{").status.code(), Some(2));
    assert_eq!(run(&["h1"], r#"{"group": {"name": "C2"}}"#).status.code(), Some(2));
    let out = run(&["h1"], r#"{"module": {"rank": 1, "colour": 1}}"#);
    assert!(String::from_utf8_lossy(&out.stderr).contains("module.colour"));
}

#[test]
fn empty_catalog_is_a_vacuous_pass() {
    let out = run(&["sweep", "--max-order", "0"], "");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["vacuous"], true);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["cases"].as_array().unwrap().len(), 0);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["sweep", "--max-order", "4", "--q", "3,4", "--max-rank", "2", "--samples", "60", "--seed", "9", "--no-timing"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);

    let doc = r#"{"archimedean": {"sigma": [[0, 1], [1, 0]], "mu": [1.25, 0.25], "nu": [0.25, 1.25], "h": [[0.3, -1.7], [0.1, 0.2]]},
                  "task": {"samples": 200}}"#;
    let a = run(&["arch-check", "--seed", "3", "--no-timing"], doc);
    let b = run(&["arch-check", "--seed", "3", "--no-timing"], doc);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_ignore_section_order() {
    let one = r#"{"module": {"rank": 1, "action": {"1": [[-1]]}}, "group": {"name": "C2"}}"#;
    let two = r#"{"group": {"name": "C2"}, "module": {"action": {"1": [[-1]]}, "rank": 1}}"#;
    let a = run(&["h1", "--no-timing"], one);
    let b = run(&["h1", "--no-timing"], two);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, r#"{"group": {"name": "C2"}, "root_datum": {"kind": "PGL2"}}"#).unwrap();
    let out = run(&["center", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(r["cases"][0]["groups"]["center_dual"], group(0, &[2]));
}

#[test]
fn q_list_gives_one_case_per_field() {
    let doc = r#"{"group": {"name": "C2"},
                  "local_datum": {"inertia": [0], "wild": [0], "frobenius": 1, "q": 3},
                  "module": {"rank": 1, "action": {"1": [[-1]]}}}"#;
    let out = run(&["wur", "--q", "2,4,5"], doc);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let keys: Vec<&str> = r["cases"].as_array().unwrap().iter().map(|c| c["key"].as_str().unwrap()).collect();
    assert_eq!(keys, ["q=2", "q=4", "q=5"]);
    assert_eq!(run(&["wur", "--q", "6"], doc).status.code(), Some(2));
}

#[test]
fn group_order_cap() {
    let out = run(&["h1", "--max-order", "4"], r#"{"group": {"name": "D4"}, "module": {"rank": 1}}"#);
    assert_eq!(out.status.code(), Some(2));
}

//! End-to-end runs of the `dtn` binary. The JSON rendering is the contract checked here.

use std::path::PathBuf;
use std::process::Command;

use dtn::doctrine::validate_doctrine;
use dtn::fincat::validate_category;
use dtn::format::parse;
use dtn::Config;
use serde_json::Value;

fn dtn(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dtn"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = dtn(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn headline(v: &Value) -> &str {
    v["headline"].as_str().unwrap()
}

#[test]
fn check_triv_reports_delta() {
    let (code, v) = report(&["check", "fixtures/triv"]);
    assert_eq!(code, 0);
    assert!(headline(&v).starts_with("EED: yes; δ_T=⊤"), "{v}");
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn check_chain_lists_missing_comprehensions() {
    let (code, v) = report(&["check", "fixtures/chain"]);
    assert_eq!(code, 0);
    assert!(headline(&v).contains("comprehensions: partial (missing for"), "{v}");
    assert!(headline(&v).contains("v:0"), "{v}");
}

#[test]
fn broken_composition_is_a_violation() {
    let (code, v) = report(&["check", "tests/data/broken.dtn"]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("(e, e, e)"), "{v}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("dtn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.dtn");
    std::fs::write(&bad, "base { objects a; arrow f a b; }").unwrap();
    let (code, v) = report(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(headline(&v).contains("1:29"), "{v}");
    let (code, _) = report(&["check", "no/such/file.dtn"]);
    assert_eq!(code, 2);
}

#[test]
fn complete_reports_counts_and_emits_a_parseable_doctrine() {
    let dir = std::env::temp_dir().join(format!("dtn-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out: PathBuf = dir.join("tp.dtn");
    let (code, v) = report(&["complete", "fixtures/fs2", "--kind", "tp", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(headline(&v).starts_with("objects: 8; iso classes: 3; exact: yes"), "{v}");
    // T(FS2) lacks products whose carrier leaves the window, so the emitted Sub doctrine is re-ingested, not checked
    let text = std::fs::read_to_string(&out).unwrap();
    let doc = parse(&text, &Config::default()).unwrap();
    validate_category(&doc.base).unwrap();
    validate_doctrine(doc.doctrine.as_ref().unwrap()).unwrap();
    assert_eq!(doc.base.num_objects(), 8);
    let (code, v) = report(&["complete", "fixtures/triv", "--kind", "tp", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(headline(&v).starts_with("objects: 4;") && headline(&v).ends_with("exact: yes; poset: yes"), "{v}");
    let (code, v) = report(&["complete", "fixtures/chain", "--kind", "gr", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(headline(&v).contains("objects: 5") && headline(&v).contains("full comprehensions: yes"), "{v}");
    let (code, v) = report(&["check", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn compare_summaries() {
    let (code, v) = report(&["compare", "fixtures/fs2"]);
    assert_eq!(code, 0);
    assert!(headline(&v).contains("fulc: equivalence; axc: hypotheses ok, L equivalence"), "{v}");
    let (_, v) = report(&["compare", "fixtures/chain"]);
    assert!(headline(&v).contains("fulc: not applicable (no full comprehensions)"), "{v}");
    let (code, v) = report(&["compare", "fixtures/nochoice"]);
    assert_eq!(code, 0);
    assert!(headline(&v).contains("axc: hypothesis weak full comprehensions failed"), "{v}");
    assert!(headline(&v).contains("hypothesis rule_of_choice failed (witness a "), "{v}");
}

#[test]
fn universal_exit_codes() {
    let (code, _) = report(&["universal", "fixtures/triv"]);
    assert_eq!(code, 0);
    let (code, _) = report(&["universal", "fixtures/triv", "--target", "terminal"]);
    assert_eq!(code, 0);
    let (code, v) = report(&["universal", "fixtures/fs2"]);
    assert_eq!(code, 3);
    assert_eq!(v["checks"][0]["outcome"], "capped");
}

#[test]
fn caps_are_honoured() {
    let (code, _) = report(&["--cap-enum", "3", "complete", "fixtures/fs2", "--kind", "qp"]);
    assert_eq!(code, 3);
}

#[test]
fn demo_is_byte_stable() {
    let (c1, a) = dtn(&["demo"]);
    let (c2, b) = dtn(&["demo"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("complete --kind tp fixtures/fs2 [exit 0]: objects: 8; iso classes: 3"), "{a}");
}

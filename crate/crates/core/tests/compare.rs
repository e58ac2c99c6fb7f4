//! Theorem harnesses on the fixtures.

mod common;

use common::load;
use dtn::compare::{verify_axc, verify_converse_axc, verify_cthn, verify_fulc, verify_universal, Status, Verdict};
use dtn::completions::build_tp;
use dtn::format::parse;
use dtn::{fixtures, Config, Error};

fn cfg() -> Config {
    Config::default()
}

fn all_verdicts(name: &str) -> Vec<Verdict> {
    let d = load(name);
    vec![
        verify_cthn(d.clone(), &cfg()).unwrap(),
        verify_fulc(&d, &cfg()).unwrap(),
        verify_axc(&d, &cfg()).unwrap(),
        verify_converse_axc(&d, &cfg()).unwrap(),
    ]
}

#[test]
fn cthn_on_chain_gains_the_missing_comprehension() {
    let v = verify_cthn(load("chain"), &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    assert_eq!(v.counts["points"], 5);
    assert!(v.evidence.iter().any(|e| e.starts_with("comprehension for (v, 0) gained")), "{:?}", v.evidence);
}

#[test]
fn cthn_needs_beck_chevalley() {
    let v = verify_cthn(load("nochoice"), &cfg()).unwrap();
    assert_eq!(v.status, Status::NotApplicable);
    assert_eq!(v.first_failure().unwrap().name, "Beck-Chevalley");
}

#[test]
fn fulc_on_fs2_and_chain() {
    let v = verify_fulc(&load("fs2"), &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    assert_eq!((v.counts["ER objects"], v.counts["T objects"], v.counts["T iso classes"]), (4, 8, 3));
    let v = verify_fulc(&load("chain"), &cfg()).unwrap();
    assert_eq!(v.status, Status::NotApplicable);
    assert!(v.first_failure().unwrap().witness.as_ref().unwrap().contains("missing comprehension"));
}

#[test]
fn axc_on_fs2_matches_every_hom_set() {
    let v = verify_axc(&load("fs2"), &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    assert_eq!((v.counts["Q objects"], v.counts["ER objects"]), (4, 4));
    assert_eq!((v.counts["hom pairs"], v.counts["hom pairs matched"]), (16, 16));
}

#[test]
fn axc_on_nochoice_claims_nothing() {
    let v = verify_axc(&load("nochoice"), &cfg()).unwrap();
    assert_eq!(v.status, Status::NotApplicable);
    assert!(!v.claimed);
    let roc = v.hypotheses.iter().find(|h| h.name == "rule_of_choice").unwrap();
    assert!(!roc.holds);
    assert!(roc.witness.as_ref().unwrap().starts_with("a "), "{roc:?}");
}

#[test]
fn converse_on_fs2_agrees_with_the_direct_check() {
    let v = verify_converse_axc(&load("fs2"), &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    assert!(v.conclusions.iter().any(|c| c.name == "agrees with direct check" && c.holds));
}

#[test]
fn hypotheses_gate_every_claim() {
    for name in fixtures::NAMES {
        for v in all_verdicts(name) {
            let hyps = v.hypotheses.iter().all(|h| h.holds);
            assert_eq!(v.claimed, hyps, "{name} {}", v.harness);
            if !hyps {
                assert_eq!(v.status, Status::NotApplicable, "{name} {}", v.harness);
            }
            for item in v.hypotheses.iter().chain(&v.conclusions) {
                assert!(item.holds || item.witness.is_some(), "{name}: {} fails without a witness", item.name);
            }
        }
    }
}

#[test]
fn verdicts_are_reproducible() {
    for name in fixtures::NAMES {
        assert_eq!(all_verdicts(name), all_verdicts(name), "{name}");
    }
}

#[test]
fn universal_on_triv() {
    let d = load("triv");
    let tp = build_tp(&d, &cfg()).unwrap();
    let v = verify_universal(&d, &tp.cat, &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    for reading in ["strict", "iso"] {
        assert!(v.conclusions.iter().any(|c| c.name == format!("essentially surjective ({reading})") && c.holds));
        assert!(v.conclusions.iter().any(|c| c.name == format!("fully faithful on 2-cells ({reading})") && c.holds));
    }
    let terminal = parse("base { objects 1; terminal 1; product 1 1 = 1 id_1 id_1; }", &cfg()).unwrap().base;
    let v = verify_universal(&d, &terminal, &cfg()).unwrap();
    assert_eq!(v.status, Status::Pass, "{:?}", v.first_failure());
    assert_eq!(v.counts["morphisms P → Sub_X"], 1);
}

#[test]
fn universal_reports_caps() {
    let d = load("fs2");
    let tp = build_tp(&d, &cfg()).unwrap();
    assert!(matches!(verify_universal(&d, &tp.cat, &cfg()), Err(Error::ResourceCap { .. })));
    let d = load("triv");
    let tp = build_tp(&d, &cfg()).unwrap();
    let tight = Config { cap_enum: 20, ..cfg() };
    assert!(matches!(verify_universal(&d, &tp.cat, &tight), Err(Error::ResourceCap { .. })));
}

#[test]
fn universal_needs_an_exact_target() {
    let d = load("triv");
    let vee = parse("base { objects a b c; arrow f a c; arrow g b c; terminal c; product c c = c id_c id_c; }", &cfg())
        .unwrap()
        .base;
    let v = verify_universal(&d, &vee, &cfg()).unwrap();
    assert_eq!(v.status, Status::NotApplicable);
}

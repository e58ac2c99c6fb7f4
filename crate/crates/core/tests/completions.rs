//! Completion constructions on the fixtures.

use std::sync::Arc;

use dtn::allegory::{classify, rel_compose, rel_opposite, Rel};
use dtn::completions::{build_erp, build_gr, build_qp, build_tp, functor_d, functor_l, transitive_extension};
use dtn::doctrine::{validate_doctrine, Doctrine, Elem};
use dtn::fincat::{check_equivalence, check_exact, Obj};
use dtn::structure::{analyze, discover_elementary, Comprehension};
use dtn::{fixtures, Config};

fn load(name: &str) -> Arc<Doctrine> {
    fixtures::load(name, &Config::default()).unwrap().doctrine.unwrap()
}

/// Subsets of `2×2` are bitmasks over pairs `(i, j) ↦ 2i + j`.
fn rel2(pairs: &[(u32, u32)]) -> Elem {
    Elem(pairs.iter().map(|&(i, j)| 1 << (2 * i + j)).sum())
}

#[test]
fn structure_of_fixtures() {
    for name in ["triv", "chain", "fs2"] {
        let d = load(name);
        let a = analyze(&d, 1 << 20).unwrap();
        assert!(a.is_eed(), "{name}: {:?}", a.elementary.as_ref().err());
    }
    let chain = load("chain");
    let a = analyze(&chain, 1 << 20).unwrap();
    assert_eq!(a.beck_chevalley.unwrap().checked, 2);
    let fs2 = load("fs2");
    let a = analyze(&fs2, 1 << 20).unwrap();
    assert_eq!(a.beck_chevalley.unwrap().checked, 24);
    let dp = a.delta_product.unwrap();
    assert!(dp.holds);
    assert_eq!(dp.skipped.len(), 1, "{:?}", dp.skipped);
    let e = discover_elementary(&fs2, 1 << 20).unwrap();
    assert_eq!(e.delta[&Obj(2)], rel2(&[(0, 0), (1, 1)]));
}

#[test]
fn nochoice_fails_rule_of_choice() {
    let d = load("nochoice");
    let a = analyze(&d, 1 << 20).unwrap();
    let roc = a.rule_of_choice.unwrap();
    assert!(!roc.holds);
    assert!(roc.witness.unwrap().contains('a'));
}

#[test]
fn chain_lacks_a_comprehension() {
    let d = load("chain");
    let a = analyze(&d, 1 << 20).unwrap();
    let v0 = a.comprehensions.entries.iter().find(|(o, x, _)| *o == Obj(1) && *x == Elem(0)).unwrap();
    assert_eq!(v0.2, Comprehension::Absent);
}

#[test]
fn relational_calculus_on_fs2() {
    let d = load("fs2");
    let e = discover_elementary(&d, 1 << 20).unwrap();
    let two = Obj(2);
    let r = |x: Elem| Rel { src: two, tgt: two, elem: x };
    let swap = rel2(&[(0, 1), (1, 0)]);
    let c = classify(&d, &e, r(swap)).unwrap();
    assert!(c.is_map && !c.is_symmetric_idempotent);
    assert_eq!(rel_compose(&d, r(swap), r(swap)).unwrap().elem, rel2(&[(0, 0), (1, 1)]));
    let graph = rel2(&[(0, 1)]);
    assert_eq!(rel_opposite(&d, r(graph)).unwrap().elem, rel2(&[(1, 0)]));
}

#[test]
fn tp_of_triv_is_b4() {
    let d = load("triv");
    let tp = build_tp(&d, &Config::default()).unwrap();
    assert_eq!(tp.objects.len(), 4);
    for a in tp.all_objects() {
        for b in tp.all_objects() {
            let le = d.leq(Obj(0), tp.per(a).rho, tp.per(b).rho);
            assert_eq!(tp.cat.hom(a, b).unwrap().len(), usize::from(le));
        }
    }
    let v = check_exact(&tp.cat, 1 << 20).unwrap();
    assert!(v.exact.holds, "{v:?}");
    let er = build_erp(&d, &tp).unwrap();
    assert_eq!(er.objects.len(), 1);
}

#[test]
fn tp_and_er_of_fs2() {
    let d = load("fs2");
    let tp = build_tp(&d, &Config::default()).unwrap();
    assert_eq!(tp.objects.len(), 8);
    assert_eq!(tp.iso_classes().unwrap().classes.len(), 3);
    let v = check_exact(&tp.cat, 1 << 20).unwrap();
    assert!(v.exact.holds, "{v:?}");
    let er = build_erp(&d, &tp).unwrap();
    assert_eq!(er.objects.len(), 4);
    let inc = er.embed(&tp).unwrap();
    inc.validate().unwrap();
    let eq = check_equivalence(&inc, &tp.all_objects()).unwrap();
    assert!(eq.is_equivalence(), "{eq:?}");
    let dd = functor_d(&d, &er).unwrap();
    dd.validate().unwrap();
}

#[test]
fn qp_and_l_on_fs2() {
    let d = load("fs2");
    let cfg = Config::default();
    let qp = build_qp(&d, &cfg).unwrap();
    assert_eq!(qp.objects.len(), 4);
    validate_doctrine(&qp.doctrine).unwrap();
    let two = Obj(2);
    let diag = qp.objects.iter().position(|o| o.carrier == two && o.rho == rel2(&[(0, 0), (1, 1)])).unwrap();
    let nabla = qp.objects.iter().position(|o| o.carrier == two && o.rho == Elem(15)).unwrap();
    assert_eq!(qp.cat.hom(Obj(diag as u32), Obj(nabla as u32)).unwrap().len(), 1);
    assert_eq!(qp.des[nabla], vec![Elem(0), Elem(3)]);
    let tp = build_tp(&d, &cfg).unwrap();
    let er = build_erp(&d, &tp).unwrap();
    let (l, _) = functor_l(&d, &qp, &er).unwrap();
    l.validate().unwrap();
    let v = check_equivalence(&l, &[]).unwrap();
    assert!(v.faithful && v.full, "{v:?}");
}

#[test]
fn gr_of_chain() {
    let d = load("chain");
    let gr = build_gr(d, &Config::default()).unwrap();
    assert_eq!(gr.cat.num_objects(), 5);
    validate_doctrine(&gr.doctrine).unwrap();
    let a = analyze(&gr.doctrine, 1 << 20).unwrap();
    assert!(a.is_eed());
    assert!(a.comprehensions.full, "{:?}", a.comprehensions);
}

#[test]
fn transitive_closure_on_two() {
    let d = load("fs2");
    let zeta = rel2(&[(0, 0), (1, 1), (0, 1), (1, 0)]);
    assert_eq!(transitive_extension(&d, Obj(2), zeta).unwrap(), Elem(15));
    let diag = rel2(&[(0, 0), (1, 1)]);
    assert_eq!(transitive_extension(&d, Obj(2), diag).unwrap(), diag);
}

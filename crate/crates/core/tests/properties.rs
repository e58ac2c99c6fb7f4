//! Randomized invariants.

mod common;

use common::*;
use dtn::allegory::{rel_compose, rel_opposite, Rel};
use dtn::completions::{build_tp, is_transitive, transitive_extension};
use dtn::doctrine::Elem;
use dtn::fincat::Obj;
use dtn::format::parse;
use dtn::structure::{discover_elementary, discover_existential};
use dtn::Config;
use proptest::prelude::*;

/// The core carriers of FS2, by set size.
fn carriers() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![0u32, 1, 2])
}

fn rel(c: &dtn::fincat::FinCat, a: u32, b: u32, bits: u32) -> Rel {
    let (sa, sb) = (c.object(&a.to_string()).unwrap(), c.object(&b.to_string()).unwrap());
    Rel { src: sa, tgt: sb, elem: Elem(bits & ((1 << (a * b)) - 1)) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative(a in carriers(), b in carriers(), c in carriers(), e in carriers(), x: u32, y: u32, z: u32) {
        let d = load("fs2");
        let base = d.base();
        let (t, s, r) = (rel(base, a, b, x), rel(base, b, c, y), rel(base, c, e, z));
        let left = rel_compose(&d, rel_compose(&d, t, s).unwrap(), r).unwrap();
        let right = rel_compose(&d, t, rel_compose(&d, s, r).unwrap()).unwrap();
        prop_assert_eq!(left.elem, right.elem);
    }

    #[test]
    fn diagonals_are_identities(a in carriers(), b in carriers(), x: u32) {
        let d = load("fs2");
        let base = d.base();
        let e = discover_elementary(&d, 1 << 20).unwrap();
        let t = rel(base, a, b, x);
        let left = Rel { src: t.src, tgt: t.src, elem: e.at(&d, t.src).unwrap() };
        let right = Rel { src: t.tgt, tgt: t.tgt, elem: e.at(&d, t.tgt).unwrap() };
        prop_assert_eq!(rel_compose(&d, left, t).unwrap().elem, t.elem);
        prop_assert_eq!(rel_compose(&d, t, right).unwrap().elem, t.elem);
    }

    #[test]
    fn opposite_reverses_composition(a in carriers(), b in carriers(), c in carriers(), x: u32, y: u32) {
        let d = load("fs2");
        let base = d.base();
        let (t, s) = (rel(base, a, b, x), rel(base, b, c, y));
        let lhs = rel_opposite(&d, rel_compose(&d, t, s).unwrap()).unwrap();
        let rhs = rel_compose(&d, rel_opposite(&d, s).unwrap(), rel_opposite(&d, t).unwrap()).unwrap();
        prop_assert_eq!(lhs.elem, rhs.elem);
        prop_assert_eq!(rel_opposite(&d, rel_opposite(&d, t).unwrap()).unwrap().elem, t.elem);
    }

    /// `∃_pr ⊣ P_pr` along every projection out of a core product.
    #[test]
    fn exists_is_left_adjoint(a in carriers(), b in carriers(), x: u32, y: u32) {
        let d = load("fs2");
        let c = d.base();
        let w = discover_existential(&d).unwrap();
        let p = c.prod(c.object(&a.to_string()).unwrap(), c.object(&b.to_string()).unwrap()).unwrap();
        for pr in [p.pr1, p.pr2] {
            let ex = &w.along[&pr];
            let s = Elem(x % d.fiber(pr.src).len() as u32);
            let t = Elem(y % d.fiber(pr.tgt).len() as u32);
            prop_assert_eq!(d.leq(pr.tgt, ex[s.index()], t), d.leq(pr.src, s, d.pull(pr, t)));
        }
    }

    #[test]
    fn transitive_extension_is_least(bits in 0u32..16) {
        let d = load("fs2");
        let two = d.base().object("2").unwrap();
        let zeta = Elem(bits | 0b1001);
        let tr = transitive_extension(&d, two, zeta).unwrap();
        let four = d.base().prod(two, two).unwrap().obj;
        prop_assert!(d.leq(four, zeta, tr));
        prop_assert!(is_transitive(&d, two, tr).unwrap());
        prop_assert_eq!(transitive_extension(&d, two, tr).unwrap(), tr);
        for other in d.fiber(four).elements() {
            if d.leq(four, zeta, other) && is_transitive(&d, two, other).unwrap() {
                prop_assert!(d.leq(four, tr, other));
            }
        }
    }

    /// Over the one-object base, T(P) is the fiber itself: one arrow `ρ → σ` exactly when `ρ ≤ σ`.
    #[test]
    fn one_object_tp_is_the_fiber(family in prop::collection::btree_set(0u8..8, 0..6)) {
        // an intersection-closed family of subsets of {0,1,2} containing the whole set
        let mut sets: std::collections::BTreeSet<u8> = family;
        sets.insert(0b111);
        loop {
            let extra: Vec<u8> = sets.iter().flat_map(|&x| sets.iter().map(move |&y| x & y)).filter(|m| !sets.contains(m)).collect();
            if extra.is_empty() { break; }
            sets.extend(extra);
        }
        let names: Vec<String> = sets.iter().map(|m| format!("s{m}")).collect();
        let mut text = String::from("base { objects T; terminal T; product T T = T id_T id_T; }\nfiber T {\n  elements ");
        text.push_str(&names.join(" "));
        text.push_str(";\n");
        for &x in &sets {
            for &y in &sets {
                if x != y && x & !y == 0 {
                    text.push_str(&format!("  leq s{x} s{y};\n"));
                }
            }
        }
        text.push_str("  top s7;\n}\n");
        let d = parse(&text, &Config::default()).unwrap().doctrine.unwrap();
        let tp = build_tp(&d, &Config::default()).unwrap();
        prop_assert_eq!(tp.objects.len(), sets.len());
        for a in tp.all_objects() {
            for b in tp.all_objects() {
                let le = d.leq(Obj(0), tp.per(a).rho, tp.per(b).rho);
                prop_assert_eq!(tp.cat.hom(a, b).unwrap().len(), usize::from(le));
            }
        }
    }

    /// Composition on the 2-carrier agrees with the set oracle on random pairs.
    #[test]
    fn composition_matches_sets(x in 0u32..16, y in 0u32..16) {
        let d = load("fs2");
        let c = d.base();
        let two = c.object("2").unwrap();
        let (r, s) = (decode(c, two, two, Elem(x)), decode(c, two, two, Elem(y)));
        let got = rel_compose(&d, Rel { src: two, tgt: two, elem: Elem(x) }, Rel { src: two, tgt: two, elem: Elem(y) }).unwrap();
        prop_assert_eq!(decode(c, two, two, got.elem), compose(&r, &s));
    }
}

//! Library results against the independent oracles in `common`.

mod common;

use common::*;
use dtn::allegory::{rel_compose, Rel};
use dtn::completions::{build_tp, functor_d, transitive_extension};
use dtn::fincat::Obj;
use dtn::structure::{analyze, discover_existential};
use dtn::Config;

#[test]
fn fs2_exists_is_direct_image() {
    let d = load("fs2");
    let c = d.base();
    let w = discover_existential(&d).unwrap();
    assert!(!w.along.is_empty());
    for (&pr, ex) in &w.along {
        let vals = values(c, pr);
        for x in d.fiber(pr.src).elements() {
            assert_eq!(ex[x.index()].0, direct_image(&vals, x.0), "{}", c.arrow_name(pr));
        }
    }
}

#[test]
fn fs2_reindexing_is_preimage() {
    let d = load("fs2");
    let c = d.base();
    let core = c.core().to_vec();
    for f in c.arrows_among(&core).unwrap() {
        let vals = values(c, f);
        for x in d.fiber(f.tgt).elements() {
            assert_eq!(d.pull(f, x).0, preimage(&vals, x.0));
        }
    }
}

/// Beck-Chevalley and Frobenius evaluated on sets agree with the library verdicts.
#[test]
fn fs2_beck_chevalley_and_frobenius_oracle() {
    let d = load("fs2");
    let c = d.base();
    let core = c.core().to_vec();
    let mut oracle_bc = true;
    for &x in &core {
        for f in c.arrows_among(&core).unwrap() {
            let (lo, hi) = (c.prod(x, f.src).unwrap(), c.prod(x, f.tgt).unwrap());
            let idf = c.cross(c.identity(x), f).unwrap();
            for b in 0..(1u32 << c.set_size(hi.obj).unwrap()) {
                let lhs = direct_image(&values(c, lo.pr2), preimage(&values(c, idf), b));
                let rhs = preimage(&values(c, f), direct_image(&values(c, hi.pr2), b));
                oracle_bc &= lhs == rhs;
            }
        }
    }
    let mut oracle_frob = true;
    for &x in &core {
        for &a in &core {
            let p = c.prod(x, a).unwrap();
            for pr in [p.pr1, p.pr2] {
                let vals = values(c, pr);
                for al in 0..(1u32 << c.set_size(pr.tgt).unwrap()) {
                    for be in 0..(1u32 << c.set_size(pr.src).unwrap()) {
                        oracle_frob &= direct_image(&vals, preimage(&vals, al) & be) == al & direct_image(&vals, be);
                    }
                }
            }
        }
    }
    let a = analyze(&d, 1 << 20).unwrap();
    assert_eq!(a.beck_chevalley.unwrap().holds, oracle_bc);
    assert_eq!(a.frobenius.unwrap().holds, oracle_frob);
    assert!(oracle_bc && oracle_frob);
}

#[test]
fn composition_matches_set_and_matrix_oracles_on_two() {
    let d = load("fs2");
    let c = d.base();
    let two = c.object("2").unwrap();
    let rels = all_relations(2);
    assert_eq!(rels.len(), 16);
    for r in &rels {
        for s in &rels {
            let got = rel_compose(
                &d,
                Rel { src: two, tgt: two, elem: encode(c, two, two, r) },
                Rel { src: two, tgt: two, elem: encode(c, two, two, s) },
            )
            .unwrap();
            let got = decode(c, two, two, got.elem);
            assert_eq!(got, compose(r, s));
            assert_eq!(to_matrix(2, &got), matrix_product(2, &to_matrix(2, r), &to_matrix(2, s)));
        }
    }
}

#[test]
fn t_of_triv_matches_brute_force() {
    let d = load("triv");
    let tp = build_tp(&d, &Config::default()).unwrap();
    let t = Obj(0);
    for a in tp.all_objects() {
        for b in tp.all_objects() {
            let (rho, sigma) = (b4(&d.elem_name(t, tp.per(a).rho)), b4(&d.elem_name(t, tp.per(b).rho)));
            let expected: Vec<u8> = b4_functional(rho, sigma);
            let got: Vec<u8> = tp.homs[&(a, b)].iter().map(|&phi| b4(&d.elem_name(t, phi))).collect();
            assert_eq!(got, expected, "{rho:02b} → {sigma:02b}");
            assert_eq!(got.len(), usize::from(rho & !sigma == 0));
        }
    }
}

#[test]
fn transitive_extension_matches_closure() {
    let d = load("fs2");
    let c = d.base();
    let two = c.object("2").unwrap();
    for r in all_relations(2) {
        if !diagonal(2).is_subset(&r) {
            continue;
        }
        let got = transitive_extension(&d, two, encode(c, two, two, &r)).unwrap();
        assert_eq!(decode(c, two, two, got), closure(2, &r));
    }
}

#[test]
fn d_sends_arrows_to_graphs() {
    let d = load("fs2");
    let c = d.base();
    let tp = build_tp(&d, &Config::default()).unwrap();
    let f = functor_d(&d, &tp).unwrap();
    for (&g, &image) in &f.arrows {
        let graph: Pairs = values(c, g).into_iter().enumerate().map(|(i, v)| (i as u32, v)).collect();
        let phi = tp.element(image);
        assert_eq!(decode(c, g.src, g.tgt, phi), graph, "{}", c.arrow_name(g));
    }
}

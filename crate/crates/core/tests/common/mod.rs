//! Independent oracles. Nothing here calls the library's lattice, adjoint or
//! composition code: relations are plain sets of pairs and subsets plain bitmasks.
//! The only library data read back is the function table of a finite-set arrow.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use dtn::doctrine::{Doctrine, Elem};
use dtn::fincat::{Arrow, FinCat, Obj};
use dtn::{fixtures, Config};

pub fn load(name: &str) -> Arc<Doctrine> {
    fixtures::load(name, &Config::default()).unwrap().doctrine.unwrap()
}

pub type Pairs = BTreeSet<(u32, u32)>;

/// The pairs `(pr1 k, pr2 k)` for each point `k` of a finite-set product.
pub fn pair_table(c: &FinCat, a: Obj, b: Obj) -> Vec<(u32, u32)> {
    let p = c.prod(a, b).unwrap();
    c.values(p.pr1).into_iter().zip(c.values(p.pr2)).collect()
}

/// A subset of `A×B` (as a bitmask over the product's points) read as a set of pairs.
pub fn decode(c: &FinCat, a: Obj, b: Obj, x: Elem) -> Pairs {
    pair_table(c, a, b).into_iter().enumerate().filter(|(k, _)| x.0 >> k & 1 == 1).map(|(_, p)| p).collect()
}

pub fn encode(c: &FinCat, a: Obj, b: Obj, r: &Pairs) -> Elem {
    let mask = pair_table(c, a, b).into_iter().enumerate().filter(|(_, p)| r.contains(p)).map(|(k, _)| 1u32 << k).sum();
    Elem(mask)
}

/// Relational composite: first `r`, then `s`.
pub fn compose(r: &Pairs, s: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(x, y) in r {
        for &(y2, z) in s {
            if y == y2 {
                out.insert((x, z));
            }
        }
    }
    out
}

/// Boolean-matrix product of `n×n` matrices, used as a second composition oracle.
pub fn matrix_product(n: usize, r: &[bool], s: &[bool]) -> Vec<bool> {
    (0..n * n).map(|ij| (0..n).any(|k| r[ij / n * n + k] && s[k * n + ij % n])).collect()
}

pub fn to_matrix(n: usize, r: &Pairs) -> Vec<bool> {
    (0..n * n).map(|ij| r.contains(&((ij / n) as u32, (ij % n) as u32))).collect()
}

/// Direct image of a subset (bitmask) along a function table.
pub fn direct_image(values: &[u32], s: u32) -> u32 {
    values.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &v)| 1 << v).fold(0, |a, b| a | b)
}

/// Preimage of a subset (bitmask) along a function table.
pub fn preimage(values: &[u32], s: u32) -> u32 {
    values.iter().enumerate().filter(|(_, &v)| s >> v & 1 == 1).map(|(i, _)| 1 << i).sum()
}

pub fn values(c: &FinCat, f: Arrow) -> Vec<u32> {
    c.values(f)
}

pub fn is_transitive(r: &Pairs) -> bool {
    compose(r, r).is_subset(r)
}

/// Reflexive-transitive closure by Warshall's algorithm.
pub fn closure(n: u32, r: &Pairs) -> Pairs {
    let mut m = to_matrix(n as usize, r);
    let n = n as usize;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] |= m[i * n + k] && m[k * n + j];
            }
        }
    }
    (0..n * n).filter(|&ij| m[ij]).map(|ij| ((ij / n) as u32, (ij % n) as u32)).collect()
}

/// All relations on an `n`-element set.
pub fn all_relations(n: u32) -> Vec<Pairs> {
    let cells: Vec<(u32, u32)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    (0u32..1 << cells.len())
        .map(|m| cells.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

pub fn diagonal(n: u32) -> Pairs {
    (0..n).map(|i| (i, i)).collect()
}

/// The four-element Boolean algebra as subsets of `{0, 1}`, keyed by TRIV's element names.
pub fn b4(name: &str) -> u8 {
    match name {
        "⊥" => 0b00,
        "a" => 0b01,
        "b" => 0b10,
        "⊤" => 0b11,
        other => panic!("not an element of B4: {other}"),
    }
}

/// Brute-force functional relations `ρ → σ` over a one-object base whose fibers are
/// B4, every reindexing is the identity, `δ = ⊤` and `∃` along projections is the
/// identity. Each of the five conditions is evaluated literally on bitmasks.
pub fn b4_functional(rho: u8, sigma: u8) -> Vec<u8> {
    let le = |x: u8, y: u8| x & !y == 0;
    (0u8..4)
        .filter(|&phi| {
            let strict = le(phi, rho & sigma);
            let extensional = le(rho & phi, phi) && le(phi & sigma, phi);
            // φ reindexed along both outer projections of A×B×B; each is the identity here
            let (outer1, outer2) = (phi, phi);
            let single_valued = le(outer1 & outer2, sigma);
            let total = le(rho, phi);
            strict && extensional && single_valued && total
        })
        .collect()
}

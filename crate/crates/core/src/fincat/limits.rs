//! Exhaustive limit, factorization and exactness searches.
//!
//! Every search ranges over the probe objects of the category: all objects of
//! a table presentation, or the product closure of the core for windows.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use super::{Arrow, FinCat, Kind, Obj, Prod, ProductChoice};
use crate::error::{Error, Result};
use crate::par;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub apex: Obj,
    pub left: Arrow,
    pub right: Arrow,
}

fn probe(c: &FinCat) -> Vec<Obj> {
    match c.kind {
        Kind::Table(_) => c.objects().collect(),
        _ => c.scope().closure.clone(),
    }
}

pub fn is_mono(c: &FinCat, m: Arrow) -> Result<bool> {
    if let Kind::FinSets(_) = c.kind {
        let mut vals = c.values(m);
        let n = vals.len();
        vals.sort();
        vals.dedup();
        return Ok(vals.len() == n);
    }
    for z in probe(c) {
        let hs = c.hom(z, m.src)?;
        for (i, &g) in hs.iter().enumerate() {
            for &h in &hs[i + 1..] {
                if c.try_compose(m, g)? == c.try_compose(m, h)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Some inverse of `f`, if `f` is an isomorphism.
pub fn is_iso(c: &FinCat, f: Arrow) -> Result<Option<Arrow>> {
    for g in c.hom(f.tgt, f.src)? {
        if c.try_compose(g, f)? == c.identity(f.src) && c.try_compose(f, g)? == c.identity(f.tgt) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Isomorphism classes of a set of objects, each with an explicit iso from
/// every member to the class representative (the least member).
#[derive(Clone, Debug, Serialize)]
pub struct IsoClasses {
    pub classes: Vec<Vec<Obj>>,
    /// `(member, iso member → representative)` for every non-representative member.
    pub witnesses: Vec<(Obj, Arrow)>,
}

pub fn iso_classes(c: &FinCat, objs: &[Obj]) -> Result<IsoClasses> {
    let mut objs = objs.to_vec();
    objs.sort();
    let mut classes: Vec<Vec<Obj>> = Vec::new();
    let mut witnesses = Vec::new();
    'next: for &o in &objs {
        for class in classes.iter_mut() {
            let rep = class[0];
            for f in c.hom(o, rep)? {
                if is_iso(c, f)?.is_some() {
                    class.push(o);
                    witnesses.push((o, f));
                    continue 'next;
                }
            }
        }
        classes.push(vec![o]);
    }
    Ok(IsoClasses { classes, witnesses })
}

fn is_limiting(c: &FinCat, f: Arrow, g: Arrow, cone: &Cone, objs: &[Obj]) -> Result<bool> {
    for &z in objs {
        let to_apex = c.hom(z, cone.apex)?;
        for a in c.hom(z, f.src)? {
            let fa = c.try_compose(f, a)?;
            for b in c.hom(z, g.src)? {
                if fa != c.try_compose(g, b)? {
                    continue;
                }
                let mut n = 0;
                for &h in &to_apex {
                    if c.try_compose(cone.left, h)? == a && c.try_compose(cone.right, h)? == b {
                        n += 1;
                        if n > 1 {
                            return Ok(false);
                        }
                    }
                }
                if n != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn pullback_search(c: &FinCat, f: Arrow, g: Arrow, first_only: bool) -> Result<Vec<Cone>> {
    if f.tgt != g.tgt {
        return Err(Error::DomainMismatch("pullback needs a cospan".into()));
    }
    if let Kind::FinSets(_) = c.kind {
        return finset_pullbacks(c, f, g, first_only);
    }
    let objs = probe(c);
    let mut out = Vec::new();
    for &w in &objs {
        let lefts = c.hom(w, f.src)?;
        let rights = c.hom(w, g.src)?;
        for &p in &lefts {
            let fp = c.try_compose(f, p)?;
            for &q in &rights {
                if fp != c.try_compose(g, q)? {
                    continue;
                }
                let cone = Cone { apex: w, left: p, right: q };
                if is_limiting(c, f, g, &cone, &objs)? {
                    out.push(cone);
                    if first_only {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Pullbacks of finite sets: a cone is limiting iff it enumerates the set of
/// matching pairs bijectively.
fn finset_pullbacks(c: &FinCat, f: Arrow, g: Arrow, first_only: bool) -> Result<Vec<Cone>> {
    let (fv, gv) = (c.values(f), c.values(g));
    let mut pairs = Vec::new();
    for (x, &fx) in fv.iter().enumerate() {
        for (y, &gy) in gv.iter().enumerate() {
            if fx == gy {
                pairs.push((x as u32, y as u32));
            }
        }
    }
    let Some(apex) = c.objects().find(|&w| c.set_size(w) == Some(pairs.len() as u32)) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    loop {
        let left: Vec<u32> = order.iter().map(|&i| pairs[i].0).collect();
        let right: Vec<u32> = order.iter().map(|&i| pairs[i].1).collect();
        out.push(Cone { apex, left: c.function(apex, f.src, &left)?, right: c.function(apex, g.src, &right)? });
        if first_only || !next_permutation(&mut order) {
            break;
        }
    }
    out.sort_by_key(|k| (k.left, k.right));
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All limiting cones over the cospan `f, g` (empty when there is none).
pub fn enumerate_pullbacks(c: &FinCat, f: Arrow, g: Arrow) -> Result<Vec<Cone>> {
    pullback_search(c, f, g, false)
}

pub(crate) fn find_pullback(c: &FinCat, f: Arrow, g: Arrow) -> Result<Option<Cone>> {
    Ok(pullback_search(c, f, g, true)?.into_iter().next())
}

/// Searches for a terminal object and binary products of every pair of objects.
pub fn find_products(c: &FinCat) -> Result<ProductChoice> {
    let objs = probe(c);
    let mut pc = ProductChoice::default();
    for &t in &objs {
        let mut ok = true;
        for &z in &objs {
            if c.hom(z, t)?.len() != 1 {
                ok = false;
                break;
            }
        }
        if ok {
            pc.terminal = Some(t);
            break;
        }
    }
    let Some(t) = pc.terminal else {
        return Ok(pc);
    };
    for &a in &objs {
        for &b in &objs {
            let f = c.hom(a, t)?[0];
            let g = c.hom(b, t)?[0];
            if let Some(cone) = find_pullback(c, f, g)? {
                pc.binary.insert((a, b), Prod { obj: cone.apex, pr1: cone.left, pr2: cone.right });
            }
        }
    }
    Ok(pc)
}

/// Whether `q` coequalizes `r1, r2` universally.
pub fn is_coequalizer(c: &FinCat, q: Arrow, r1: Arrow, r2: Arrow) -> Result<bool> {
    if c.try_compose(q, r1)? != c.try_compose(q, r2)? {
        return Ok(false);
    }
    for y in probe(c) {
        let through = c.hom(q.tgt, y)?;
        for t in c.hom(q.src, y)? {
            if c.try_compose(t, r1)? != c.try_compose(t, r2)? {
                continue;
            }
            let mut n = 0;
            for &u in &through {
                if c.try_compose(u, q)? == t {
                    n += 1;
                }
            }
            if n != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A parallel pair of which `e` is a coequalizer, if any.
pub fn is_regular_epi(c: &FinCat, e: Arrow) -> Result<Option<(Arrow, Arrow)>> {
    for r in probe(c) {
        let hs = c.hom(r, e.src)?;
        for &r1 in &hs {
            for &r2 in &hs {
                if is_coequalizer(c, e, r1, r2)? {
                    return Ok(Some((r1, r2)));
                }
            }
        }
    }
    Ok(None)
}

/// Factors `f = m ∘ e` with `e` a regular epi and `m` a mono.
pub fn image_factorization(c: &FinCat, f: Arrow) -> Result<(Arrow, Arrow)> {
    if is_regular_epi(c, f)?.is_some() {
        return Ok((f, c.identity(f.tgt)));
    }
    for i in probe(c) {
        let monos: Vec<Arrow> = c
            .hom(i, f.tgt)?
            .into_iter()
            .filter_map(|m| is_mono(c, m).map(|ok| ok.then_some(m)).transpose())
            .collect::<Result<_>>()?;
        if monos.is_empty() {
            continue;
        }
        for e in c.hom(f.src, i)? {
            for &m in &monos {
                if c.try_compose(m, e)? == f && is_regular_epi(c, e)?.is_some() {
                    return Ok((e, m));
                }
            }
        }
    }
    Err(Error::Unavailable(format!("no (regular epi, mono) factorization of {}", c.arrow_name(f))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Clause {
    fn yes() -> Self {
        Clause { holds: true, witness: None }
    }
    fn no(w: impl Into<String>) -> Self {
        Clause { holds: false, witness: Some(w.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessVerdict {
    pub finitely_complete: Clause,
    pub regular: Clause,
    pub exact: Clause,
    /// Limits that a window presentation does not contain; they are neither
    /// witnesses nor counterexamples.
    pub outside_window: Vec<String>,
}

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn spend(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            Err(Error::cap("exactness search", self.limit))
        } else {
            Ok(())
        }
    }
}

/// Decides finite completeness, regularity and exactness by exhaustive search.
///
/// On a window presentation a limit that is absent from the window is listed in
/// `outside_window` instead of counting as a counterexample.
pub fn check_exact(c: &FinCat, cap: u64) -> Result<ExactnessVerdict> {
    let budget = Budget { used: AtomicU64::new(0), limit: cap };
    let objs = probe(c);
    let window = c.is_window();
    let mut outside = Vec::new();
    let arrows = c.arrows_among(&objs)?;
    let fail_after = |first: &str| -> Clause { Clause::no(format!("requires {first}")) };

    // finite limits: terminal object, binary products, pullbacks
    let mut complete = Clause::yes();
    let pc = find_products(c)?;
    budget.spend((objs.len() * objs.len()) as u64)?;
    if pc.terminal.is_none() {
        complete = Clause::no("no terminal object");
    } else {
        'pairs: for &a in &objs {
            for &b in &objs {
                if !pc.binary.contains_key(&(a, b)) {
                    let w = format!("({}, {})", c.name(a), c.name(b));
                    if window {
                        outside.push(format!("product {w}"));
                    } else {
                        complete = Clause::no(w);
                        break 'pairs;
                    }
                }
            }
        }
    }
    let mut pullbacks: BTreeMap<(Arrow, Arrow), Option<Cone>> = BTreeMap::new();
    if complete.holds {
        let cospans: Vec<(Arrow, Arrow)> = arrows
            .iter()
            .flat_map(|&f| arrows.iter().filter(move |&&g| g.tgt == f.tgt && f <= g).map(move |&g| (f, g)))
            .collect();
        budget.spend(cospans.len() as u64 * 16)?;
        let found = par::try_map(&cospans, |&(f, g)| find_pullback(c, f, g))?;
        for (&(f, g), cone) in cospans.iter().zip(found) {
            if cone.is_none() {
                let w = format!("cospan ({}, {})", c.arrow_name(f), c.arrow_name(g));
                if window {
                    outside.push(format!("pullback of {w}"));
                } else if complete.holds {
                    complete = Clause::no(w);
                }
            }
            pullbacks.insert((f, g), cone);
        }
    }
    if !complete.holds {
        return Ok(ExactnessVerdict {
            finitely_complete: complete,
            regular: fail_after("finite completeness"),
            exact: fail_after("finite completeness"),
            outside_window: outside,
        });
    }

    // regular: image factorizations and pullback-stable regular epis
    let mut regular = Clause::yes();
    let mut reg_epis = Vec::new();
    for &f in &arrows {
        budget.spend(1)?;
        if is_regular_epi(c, f)?.is_some() {
            reg_epis.push(f);
        }
        if regular.holds && image_factorization(c, f).is_err() {
            regular = Clause::no(format!("no image factorization of {}", c.arrow_name(f)));
        }
    }
    if regular.holds {
        'stab: for &e in &reg_epis {
            for &g in arrows.iter().filter(|g| g.tgt == e.tgt) {
                budget.spend(1)?;
                let cone = match pullbacks.get(&(e.min(g), e.max(g))) {
                    Some(Some(cone)) => *cone,
                    _ => continue,
                };
                let leg = if e <= g { cone.right } else { cone.left };
                if is_regular_epi(c, leg)?.is_none() {
                    regular = Clause::no(format!(
                        "pullback of regular epi {} along {} is not regular epi",
                        c.arrow_name(e),
                        c.arrow_name(g)
                    ));
                    break 'stab;
                }
            }
        }
    }
    if !regular.holds {
        return Ok(ExactnessVerdict {
            finitely_complete: complete,
            regular,
            exact: fail_after("regularity"),
            outside_window: outside,
        });
    }

    // exact: every internal equivalence relation is a kernel pair
    let mut exact = Clause::yes();
    'rel: for &x in &objs {
        for &r in &objs {
            let legs = c.hom(r, x)?;
            budget.spend((legs.len() * legs.len()) as u64)?;
            for &r1 in &legs {
                for &r2 in &legs {
                    match equivalence_relation(c, r1, r2, &objs, &pullbacks)? {
                        Relation::Not => continue,
                        Relation::Outside(w) => {
                            outside.push(w);
                            continue;
                        }
                        Relation::Equivalence => {}
                    }
                    if !is_effective(c, r1, r2, &objs)? {
                        exact = Clause::no(format!(
                            "equivalence relation ({}, {}) on {} is not effective",
                            c.arrow_name(r1),
                            c.arrow_name(r2),
                            c.name(x)
                        ));
                        break 'rel;
                    }
                }
            }
        }
    }
    outside.sort();
    outside.dedup();
    Ok(ExactnessVerdict { finitely_complete: complete, regular, exact, outside_window: outside })
}

enum Relation {
    Not,
    Equivalence,
    Outside(String),
}

fn equivalence_relation(
    c: &FinCat,
    r1: Arrow,
    r2: Arrow,
    objs: &[Obj],
    pullbacks: &BTreeMap<(Arrow, Arrow), Option<Cone>>,
) -> Result<Relation> {
    let r = r1.src;
    let x = r1.tgt;
    // jointly monic
    for &z in objs {
        let hs = c.hom(z, r)?;
        for (i, &g) in hs.iter().enumerate() {
            for &h in &hs[i + 1..] {
                if c.try_compose(r1, g)? == c.try_compose(r1, h)? && c.try_compose(r2, g)? == c.try_compose(r2, h)? {
                    return Ok(Relation::Not);
                }
            }
        }
    }
    let id = c.identity(x);
    let reflexive = c.hom(x, r)?.into_iter().try_fold(false, |acc, d| -> Result<bool> {
        Ok(acc || (c.try_compose(r1, d)? == id && c.try_compose(r2, d)? == id))
    })?;
    if !reflexive {
        return Ok(Relation::Not);
    }
    let symmetric = c.hom(r, r)?.into_iter().try_fold(false, |acc, s| -> Result<bool> {
        Ok(acc || (c.try_compose(r1, s)? == r2 && c.try_compose(r2, s)? == r1))
    })?;
    if !symmetric {
        return Ok(Relation::Not);
    }
    // transitivity over the pullback of r2 along r1
    let key = (r2.min(r1), r2.max(r1));
    let cone = match pullbacks.get(&key) {
        Some(Some(cone)) => *cone,
        Some(None) => {
            return Ok(Relation::Outside(format!("composite of relation ({}, {})", c.arrow_name(r1), c.arrow_name(r2))))
        }
        None => match find_pullback(c, key.0, key.1)? {
            Some(cone) => cone,
            None => {
                return Ok(Relation::Outside(format!(
                    "composite of relation ({}, {})",
                    c.arrow_name(r1),
                    c.arrow_name(r2)
                )))
            }
        },
    };
    // a: P → R with r2∘a = r1∘b
    let (a, b) = if r2 <= r1 { (cone.left, cone.right) } else { (cone.right, cone.left) };
    let target1 = c.try_compose(r1, a)?;
    let target2 = c.try_compose(r2, b)?;
    let transitive = c.hom(cone.apex, r)?.into_iter().try_fold(false, |acc, t| -> Result<bool> {
        Ok(acc || (c.try_compose(r1, t)? == target1 && c.try_compose(r2, t)? == target2))
    })?;
    Ok(if transitive { Relation::Equivalence } else { Relation::Not })
}

fn is_effective(c: &FinCat, r1: Arrow, r2: Arrow, objs: &[Obj]) -> Result<bool> {
    for &q_obj in objs {
        for q in c.hom(r1.tgt, q_obj)? {
            if is_coequalizer(c, q, r1, r2)? {
                let cone = Cone { apex: r1.src, left: r1, right: r2 };
                return is_limiting(c, q, q, &cone, objs);
            }
        }
    }
    Ok(false)
}

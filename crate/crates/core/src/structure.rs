//! Discovery and verification of elementary and existential structure,
//! comprehensions and the rule of choice.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::doctrine::{box_product, Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, Obj};
use crate::par;

/// The outcome of an exhaustive check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    /// Number of instances (squares, pairs, elements) examined.
    pub checked: usize,
    pub witness: Option<String>,
    /// Instances that could not be examined inside the window.
    pub skipped: Vec<String>,
}

impl Check {
    fn pass(checked: usize) -> Self {
        Check { holds: true, checked, witness: None, skipped: Vec::new() }
    }

    fn fail(checked: usize, witness: String) -> Self {
        Check { holds: false, checked, witness: Some(witness), skipped: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryWitness {
    pub delta: BTreeMap<Obj, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistentialWitness {
    /// Left adjoints of reindexing along the projections of core products.
    pub along: BTreeMap<Arrow, Arc<Vec<Elem>>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Comprehension {
    /// Factorizations through the arrow exist and are unique.
    Strict(Arrow),
    /// Factorizations exist but need not be unique.
    Weak(Arrow),
    Absent,
}

impl Comprehension {
    pub fn arrow(self) -> Option<Arrow> {
        match self {
            Comprehension::Strict(c) | Comprehension::Weak(c) => Some(c),
            Comprehension::Absent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComprehensionTable {
    pub entries: Vec<(Obj, Elem, Comprehension)>,
    /// Every element over the core has a strict comprehension, and the order is reflected.
    pub full: bool,
    /// Every element has at least a weak comprehension, and the order is reflected.
    pub weak_full: bool,
    /// First order pair where factorization and fiber order disagree.
    pub fullness_failure: Option<String>,
    /// `object:element` names lacking any comprehension.
    pub missing: Vec<String>,
}

/// Objects over which comprehensions are searched: the core of a window, or all objects.
fn search_domain(c: &FinCat) -> Vec<Obj> {
    if c.is_window() {
        c.core().to_vec()
    } else {
        c.objects().collect()
    }
}

fn name(d: &Doctrine, a: Obj, x: Elem) -> String {
    d.elem_name(a, x)
}

/// `δ` forced by condition (i) at `a`: the left adjoint of `P_⟨id,id⟩` at top.
pub fn delta_candidate(d: &Doctrine, a: Obj) -> Result<Elem> {
    let diag = d.base().diagonal(a)?;
    d.exists_at(diag, d.top(a))
}

fn satisfies_condition_one(d: &Doctrine, a: Obj, delta: Elem) -> Result<bool> {
    let c = d.base();
    let aa = c.prod(a, a)?;
    let ex = d.exists(c.diagonal(a)?)?;
    Ok(d.fiber(a).elements().all(|x| d.meet(aa.obj, d.pull(aa.pr1, x), delta) == ex[x.index()]))
}

fn satisfies_condition_two(d: &Doctrine, x: Obj, a: Obj, delta: Elem) -> Result<bool> {
    let c = d.base();
    let xa = c.prod(x, a)?;
    let t = c.prod3(x, a, a)?;
    let e = c.pair3(xa.pr1, xa.pr2, xa.pr2)?;
    let ex = d.exists(e)?;
    let p23 = c.pair(t.p[1], t.p[2])?;
    let d23 = d.pull(p23, delta);
    Ok(d.fiber(xa.obj).elements().all(|al| d.meet(t.obj, d.pull(t.outer.pr1, al), d23) == ex[al.index()]))
}

/// For every core object, the unique `δ_A` satisfying conditions (i) and (ii),
/// found by enumerating the whole fiber over `A×A`.
pub fn discover_elementary(d: &Doctrine, cap: u64) -> Result<ElementaryWitness> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut delta = BTreeMap::new();
    let mut missing = Vec::new();
    for &a in &core {
        let aa = c.prod(a, a)?;
        let fiber = d.fiber(aa.obj);
        if fiber.len() as u64 > cap {
            return Err(Error::cap(format!("δ candidates over {}", c.name(aa.obj)), cap));
        }
        let candidates: Vec<Elem> = fiber.elements().collect();
        let passing = par::try_map(&candidates, |&cand| -> Result<bool> {
            if !satisfies_condition_one(d, a, cand)? {
                return Ok(false);
            }
            for &x in &core {
                if !satisfies_condition_two(d, x, a, cand)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        let found: Vec<Elem> = candidates.iter().zip(&passing).filter(|(_, &ok)| ok).map(|(&e, _)| e).collect();
        match found.as_slice() {
            [] => missing.push(c.name(a).to_string()),
            [one] => {
                delta.insert(a, *one);
            }
            _ => return Err(Error::violation("DeltaUniqueness", c.name(a).to_string())),
        }
    }
    if missing.is_empty() {
        Ok(ElementaryWitness { delta })
    } else {
        Err(Error::violation("Elementary", format!("no δ for {}", missing.join(", "))))
    }
}

/// Left adjoints along both projections of every core product.
pub fn discover_existential(d: &Doctrine) -> Result<ExistentialWitness> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut along = BTreeMap::new();
    for &x in &core {
        for &a in &core {
            let p = c.prod(x, a)?;
            for pr in [p.pr1, p.pr2] {
                let e = d.exists(pr).map_err(|e| match e {
                    Error::NoAdjoint { witness } => Error::violation(
                        "Existential",
                        format!("{} : {}×{} → {} at {witness}", c.arrow_name(pr), c.name(x), c.name(a), c.name(pr.tgt)),
                    ),
                    other => other,
                })?;
                along.insert(pr, e);
            }
        }
    }
    Ok(ExistentialWitness { along })
}

fn witnessed(w: &ExistentialWitness, d: &Doctrine, pr: Arrow) -> Result<Arc<Vec<Elem>>> {
    match w.along.get(&pr) {
        Some(e) => Ok(e.clone()),
        None => d.exists(pr),
    }
}

/// Beck-Chevalley on the canonical squares `X×A' → X×A` over every
/// non-identity core arrow `f : A' → A`, for the second projections.
pub fn check_beck_chevalley(d: &Doctrine, w: &ExistentialWitness) -> Result<Check> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut squares = Vec::new();
    for &x in &core {
        for f in c.arrows_among(&core)? {
            if !c.is_identity(f) {
                squares.push((x, f));
            }
        }
    }
    let results = par::try_map(&squares, |&(x, f)| -> Result<Option<String>> {
        let (lo, hi) = (c.prod(x, f.src)?, c.prod(x, f.tgt)?);
        let idf = c.cross(c.identity(x), f)?;
        let (ex_lo, ex_hi) = (witnessed(w, d, lo.pr2)?, witnessed(w, d, hi.pr2)?);
        for b in d.fiber(hi.obj).elements() {
            let lhs = ex_lo[d.pull(idf, b).index()];
            let rhs = d.pull(f, ex_hi[b.index()]);
            if lhs != rhs {
                return Ok(Some(format!(
                    "square {}×{} over {} at {}",
                    c.name(x),
                    c.name(f.src),
                    c.arrow_name(f),
                    name(d, hi.obj, b)
                )));
            }
        }
        Ok(None)
    })?;
    Ok(match results.into_iter().flatten().next() {
        Some(wit) => Check::fail(squares.len(), wit),
        None => Check::pass(squares.len()),
    })
}

/// Frobenius reciprocity along both projections of every core product.
pub fn check_frobenius(d: &Doctrine, w: &ExistentialWitness) -> Result<Check> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut projections = Vec::new();
    for &x in &core {
        for &a in &core {
            let p = c.prod(x, a)?;
            projections.push(p.pr1);
            projections.push(p.pr2);
        }
    }
    let results = par::try_map(&projections, |&pr| -> Result<(usize, Option<String>)> {
        let ex = witnessed(w, d, pr)?;
        let (top, b) = (pr.src, pr.tgt);
        let mut n = 0;
        for al in d.fiber(b).elements() {
            let pa = d.pull(pr, al);
            for be in d.fiber(top).elements() {
                n += 1;
                let lhs = ex[d.meet(top, pa, be).index()];
                let rhs = d.meet(b, al, ex[be.index()]);
                if lhs != rhs {
                    return Ok((
                        n,
                        Some(format!("{} at ({}, {})", c.arrow_name(pr), name(d, b, al), name(d, top, be))),
                    ));
                }
            }
        }
        Ok((n, None))
    })?;
    let checked = results.iter().map(|r| r.0).sum();
    Ok(match results.into_iter().find_map(|r| r.1) {
        Some(wit) => Check::fail(checked, wit),
        None => Check::pass(checked),
    })
}

/// Searches all arrows into `a` (from the search domain) for a comprehension of `alpha`.
pub fn comprehension_of(d: &Doctrine, a: Obj, alpha: Elem) -> Result<Comprehension> {
    let c = d.base();
    let domain = search_domain(c);
    let mut satisfying = Vec::new();
    for &z in &domain {
        for f in c.hom(z, a)? {
            if d.pull(f, alpha) == d.top(z) {
                satisfying.push(f);
            }
        }
    }
    let mut weak = None;
    for &cand in &satisfying {
        let mut unique = true;
        let mut exists = true;
        for &f in &satisfying {
            let n = c.hom(f.src, cand.src)?.into_iter().filter(|&h| c.compose(cand, h) == f).take(2).count();
            if n == 0 {
                exists = false;
                break;
            }
            if n > 1 {
                unique = false;
            }
        }
        if exists && unique {
            return Ok(Comprehension::Strict(cand));
        }
        if exists && weak.is_none() {
            weak = Some(cand);
        }
    }
    Ok(weak.map_or(Comprehension::Absent, Comprehension::Weak))
}

fn factors_through(c: &FinCat, x: Arrow, y: Arrow) -> Result<bool> {
    Ok(c.hom(x.src, y.src)?.into_iter().any(|h| c.compose(y, h) == x))
}

/// Comprehensions of every element over the search domain, with fullness.
pub fn comprehensions(d: &Doctrine) -> Result<ComprehensionTable> {
    let c = d.base();
    let objs = search_domain(c);
    let mut items = Vec::new();
    for &a in &objs {
        for x in d.fiber(a).elements() {
            items.push((a, x));
        }
    }
    let found = par::try_map(&items, |&(a, x)| comprehension_of(d, a, x))?;
    let entries: Vec<(Obj, Elem, Comprehension)> = items.iter().zip(found).map(|(&(a, x), k)| (a, x, k)).collect();
    let missing: Vec<String> = entries
        .iter()
        .filter(|e| e.2 == Comprehension::Absent)
        .map(|&(a, x, _)| format!("{}:{}", c.name(a), name(d, a, x)))
        .collect();
    let mut fullness_failure = None;
    'outer: for &(a, x, kx) in &entries {
        let Some(cx) = kx.arrow() else { continue };
        for &(b, y, ky) in &entries {
            let Some(cy) = ky.arrow() else { continue };
            if a != b {
                continue;
            }
            if d.leq(a, x, y) != factors_through(c, cx, cy)? {
                fullness_failure = Some(format!("{}: {} vs {}", c.name(a), name(d, a, x), name(d, a, y)));
                break 'outer;
            }
        }
    }
    let reflects = fullness_failure.is_none();
    let all_strict = entries.iter().all(|e| matches!(e.2, Comprehension::Strict(_)));
    Ok(ComprehensionTable {
        full: reflects && all_strict,
        weak_full: reflects && missing.is_empty(),
        entries,
        fullness_failure,
        missing,
    })
}

/// For every total `α` over a core product `A×B`, some `w : A → B` with `⊤ ≤ P_⟨id,w⟩(α)`.
pub fn check_rule_of_choice(d: &Doctrine, w: &ExistentialWitness) -> Result<Check> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut checked = 0;
    for &a in &core {
        for &b in &core {
            let p = c.prod(a, b)?;
            let ex = witnessed(w, d, p.pr1)?;
            let sections = c.hom(a, b)?.into_iter().map(|f| c.pair(c.identity(a), f)).collect::<Result<Vec<_>>>()?;
            for al in d.fiber(p.obj).elements() {
                if ex[al.index()] != d.top(a) {
                    continue;
                }
                checked += 1;
                if !sections.iter().any(|&s| d.pull(s, al) == d.top(a)) {
                    return Ok(Check::fail(
                        checked,
                        format!("{} over {}×{}", name(d, p.obj, al), c.name(a), c.name(b)),
                    ));
                }
            }
        }
    }
    Ok(Check::pass(checked))
}

/// `δ_{A×B} = δ_A ⊠ δ_B` for every core pair whose fourfold product is in the window.
/// Pairs outside the window are listed as skipped; they count against the
/// verdict unless `acknowledge_skips` is set.
pub fn check_delta_product_law(d: &Doctrine, e: &ElementaryWitness, acknowledge_skips: bool) -> Result<Check> {
    let c = d.base();
    let core = c.core().to_vec();
    let mut out = Check::pass(0);
    for &a in &core {
        for &b in &core {
            let boxed = box_product(d, (a, a, e.delta[&a]), (b, b, e.delta[&b]));
            let (q, value) = match boxed {
                Ok(v) => v,
                Err(Error::WindowClosure(_)) => {
                    out.skipped.push(format!("({}, {})", c.name(a), c.name(b)));
                    continue;
                }
                Err(err) => return Err(err),
            };
            let ab = c.prod(a, b)?;
            let expected = match e.delta.get(&ab.obj) {
                Some(&x) => x,
                None => delta_candidate(d, ab.obj)?,
            };
            debug_assert_eq!(c.prod(ab.obj, ab.obj)?.obj, q);
            out.checked += 1;
            if value != expected && out.holds {
                out.holds = false;
                out.witness = Some(format!("({}, {})", c.name(a), c.name(b)));
            }
        }
    }
    if !acknowledge_skips && !out.skipped.is_empty() {
        out.holds = false;
    }
    Ok(out)
}

/// Everything `check` reports about a doctrine.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub elementary: std::result::Result<ElementaryWitness, String>,
    pub existential: std::result::Result<ExistentialWitness, String>,
    pub beck_chevalley: Option<Check>,
    pub frobenius: Option<Check>,
    pub delta_product: Option<Check>,
    pub comprehensions: ComprehensionTable,
    pub rule_of_choice: Option<Check>,
}

impl Analysis {
    /// Elementary, existential, Beck-Chevalley and Frobenius all verified on the core.
    pub fn is_eed(&self) -> bool {
        self.elementary.is_ok()
            && self.existential.is_ok()
            && self.beck_chevalley.as_ref().is_some_and(|c| c.holds)
            && self.frobenius.as_ref().is_some_and(|c| c.holds)
    }
}

/// Keeps law failures as data and propagates everything else.
fn recorded<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Violation { law, witness }) => Ok(Err(format!("{law}: {witness}"))),
        Err(Error::NoAdjoint { witness }) => Ok(Err(format!("NoAdjoint: {witness}"))),
        Err(other) => Err(other),
    }
}

/// Runs every structure check. Law failures are recorded; other errors propagate.
pub fn analyze(d: &Doctrine, cap: u64) -> Result<Analysis> {
    let elementary = recorded(discover_elementary(d, cap))?;
    let existential = recorded(discover_existential(d))?;
    let (mut bc, mut frob, mut roc) = (None, None, None);
    if let Ok(w) = &existential {
        bc = Some(check_beck_chevalley(d, w)?);
        frob = Some(check_frobenius(d, w)?);
        roc = Some(check_rule_of_choice(d, w)?);
    }
    let delta_product = match &elementary {
        Ok(e) => Some(check_delta_product_law(d, e, true)?),
        Err(_) => None,
    };
    Ok(Analysis {
        elementary,
        existential,
        beck_chevalley: bc,
        frobenius: frob,
        delta_product,
        comprehensions: comprehensions(d)?,
        rule_of_choice: roc,
    })
}

impl ElementaryWitness {
    /// `δ_A`, falling back to the value forced by condition (i) off the core.
    pub fn at(&self, d: &Doctrine, a: Obj) -> Result<Elem> {
        match self.delta.get(&a) {
            Some(&x) => Ok(x),
            None => delta_candidate(d, a),
        }
    }
}

//! Bounded check of the universal property of the exact completion: morphisms
//! out of `Sub` of T(P) into `Sub_X` correspond, by precomposition with the
//! unit `P → Sub_{T(P)}`, to morphisms `P → Sub_X`.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use super::{Item, Verdict};
use crate::completions::{build_tp, functor_d, Tp};
use crate::config::{ConditionV, Config};
use crate::doctrine::{factors, sub_doctrine, subobjects, Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{check_exact, find_products, is_iso, Arrow, FinCat, Obj};
use crate::par;
use crate::structure::{comprehension_of, discover_elementary, ElementaryWitness};

struct Budget {
    used: AtomicU64,
    limit: u64,
}

impl Budget {
    fn spend(&self, n: u64, what: &str) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            return Err(Error::cap(format!("universal-property enumeration ({what})"), self.limit));
        }
        Ok(())
    }
}

/// Object and arrow assignments of a functor.
type Functor = (BTreeMap<Obj, Obj>, BTreeMap<Arrow, Arrow>);

/// A doctrine 1-arrow restricted to a finite set of source objects.
#[derive(Clone, Debug, PartialEq, Eq)]
struct OneArrow {
    objects: BTreeMap<Obj, Obj>,
    arrows: BTreeMap<Arrow, Arrow>,
    fibers: BTreeMap<Obj, Vec<Elem>>,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Reading {
    /// The image of a comprehension is the canonical comprehension.
    Strict,
    /// The image of a comprehension is isomorphic to the canonical one.
    Iso,
}

/// Source and target doctrines of the 1-arrows being enumerated.
struct Side<'a> {
    src: &'a Doctrine,
    tgt: &'a Doctrine,
    dom: Vec<Obj>,
    src_delta: ElementaryWitness,
    tgt_delta: ElementaryWitness,
    /// Preserve comprehensions as well (`None` for plain elementary existential arrows).
    comprehension: Option<Reading>,
}

enum Constraint {
    Natural(Arrow),
    /// `δ_A` over the chosen square `A×A`.
    Delta(Obj, Obj),
    /// `∃` along a product projection.
    Exists(Arrow),
}

impl<'a> Side<'a> {
    fn s(&self) -> &FinCat {
        self.src.base()
    }

    fn t(&self) -> &FinCat {
        self.tgt.base()
    }

    fn constraints(&self) -> Result<Vec<(usize, Constraint)>> {
        let pos: HashMap<Obj, usize> = self.dom.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let s = self.s();
        let mut out = Vec::new();
        for f in s.arrows_among(&self.dom)? {
            if !s.is_identity(f) {
                out.push((pos[&f.src].max(pos[&f.tgt]), Constraint::Natural(f)));
            }
        }
        for &a in &self.dom {
            for &b in &self.dom {
                let Some(p) = s.product(a, b) else { continue };
                let Some(&pp) = pos.get(&p.obj) else { continue };
                let last = pp.max(pos[&a]).max(pos[&b]);
                if a == b {
                    out.push((last, Constraint::Delta(a, p.obj)));
                }
                out.push((last, Constraint::Exists(p.pr1)));
                out.push((last, Constraint::Exists(p.pr2)));
            }
        }
        Ok(out)
    }

    fn holds(&self, c: &Constraint, k: &OneArrow) -> Result<bool> {
        let (s, t, p, r) = (self.s(), self.t(), self.src, self.tgt);
        Ok(match *c {
            Constraint::Natural(f) => {
                let (ba, bb) = (&k.fibers[&f.src], &k.fibers[&f.tgt]);
                let ff = k.arrows[&f];
                p.fiber(f.tgt).elements().all(|x| ba[p.pull(f, x).index()] == r.pull(ff, bb[x.index()]))
            }
            Constraint::Delta(a, aa) => {
                let sq = s.prod(a, a)?;
                let fa = k.objects[&a];
                let pairing = t.pair(k.arrows[&sq.pr1], k.arrows[&sq.pr2])?;
                k.fibers[&aa][self.src_delta.at(p, a)?.index()] == r.pull(pairing, self.tgt_delta.at(r, fa)?)
            }
            Constraint::Exists(pr) => {
                let (bp, ba) = (&k.fibers[&pr.src], &k.fibers[&pr.tgt]);
                let (ex, rex) = (p.exists(pr)?, r.exists(k.arrows[&pr])?);
                p.fiber(pr.src).elements().all(|x| ba[ex[x.index()].index()] == rex[bp[x.index()].index()])
            }
        })
    }

    /// Whether the functor part preserves the terminal object and binary products.
    fn preserves_products(&self, objects: &BTreeMap<Obj, Obj>, arrows: &BTreeMap<Arrow, Arrow>) -> Result<bool> {
        let (s, t) = (self.s(), self.t());
        if let Some(one) = s.terminal().filter(|o| objects.contains_key(o)) {
            let Some(tt) = t.terminal() else { return Ok(false) };
            let mut iso = false;
            for h in t.hom(objects[&one], tt)? {
                iso |= is_iso(t, h)?.is_some();
            }
            if !iso {
                return Ok(false);
            }
        }
        for &a in &self.dom {
            for &b in &self.dom {
                let Some(p) = s.product(a, b).filter(|p| objects.contains_key(&p.obj)) else { continue };
                if t.product(objects[&a], objects[&b]).is_none() {
                    return Ok(false);
                }
                let pairing = t.pair(arrows[&p.pr1], arrows[&p.pr2])?;
                if is_iso(t, pairing)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn functors(&self, budget: &Budget) -> Result<Vec<Functor>> {
        let (s, t) = (self.s(), self.t());
        let targets: Vec<Obj> = t.objects().collect();
        let n = self.dom.len() as u32;
        let total = (targets.len() as u64).checked_pow(n).unwrap_or(u64::MAX);
        budget.spend(total, "object maps")?;
        let maps: Vec<u64> = (0..total).collect();
        let all = s.arrows_among(&self.dom)?;
        let moving: Vec<Arrow> = all.iter().copied().filter(|&f| !s.is_identity(f)).collect();
        let found = par::try_map(&maps, |&code| -> Result<Vec<_>> {
            let mut objects = BTreeMap::new();
            let mut rest = code;
            for &a in &self.dom {
                objects.insert(a, targets[(rest % targets.len() as u64) as usize]);
                rest /= targets.len() as u64;
            }
            let mut arrows = BTreeMap::new();
            for &f in all.iter().filter(|&&f| s.is_identity(f)) {
                arrows.insert(f, t.identity(objects[&f.src]));
            }
            let mut out = Vec::new();
            self.assign_arrows(&moving, 0, &objects, &mut arrows, budget, &mut out)?;
            let mut kept = Vec::new();
            for arrows in out {
                if self.preserves_products(&objects, &arrows)? {
                    kept.push((objects.clone(), arrows));
                }
            }
            Ok(kept)
        })?;
        Ok(found.into_iter().flatten().collect())
    }

    fn assign_arrows(
        &self,
        moving: &[Arrow],
        k: usize,
        objects: &BTreeMap<Obj, Obj>,
        arrows: &mut BTreeMap<Arrow, Arrow>,
        budget: &Budget,
        out: &mut Vec<BTreeMap<Arrow, Arrow>>,
    ) -> Result<()> {
        let (s, t) = (self.s(), self.t());
        if k == moving.len() {
            out.push(arrows.clone());
            return Ok(());
        }
        let f = moving[k];
        let cands = t.hom(objects[&f.src], objects[&f.tgt])?;
        budget.spend(cands.len() as u64, "arrow maps")?;
        for g in cands {
            arrows.insert(f, g);
            let mut ok = true;
            // composites whose three arrows are now all assigned
            'pairs: for (&x, &fx) in arrows.iter() {
                for (&y, &fy) in arrows.iter() {
                    if x.tgt != y.src || (x != f && y != f) {
                        continue;
                    }
                    let h = s.try_compose(y, x)?;
                    if let Some(&fh) = arrows.get(&h) {
                        if t.try_compose(fy, fx)? != fh {
                            ok = false;
                            break 'pairs;
                        }
                    }
                }
            }
            if ok {
                // composites that land on f itself
                for (&x, &fx) in arrows.iter() {
                    for (&y, &fy) in arrows.iter() {
                        if x.tgt == y.src && s.try_compose(y, x)? == f && t.try_compose(fy, fx)? != g {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                self.assign_arrows(moving, k + 1, objects, arrows, budget, out)?;
            }
            arrows.remove(&f);
        }
        Ok(())
    }

    /// Top- and meet-preserving maps `P(A) → R(FA)` that also send comprehensions to comprehensions.
    fn fiber_candidates(
        &self,
        a: Obj,
        objects: &BTreeMap<Obj, Obj>,
        arrows: &BTreeMap<Arrow, Arrow>,
        budget: &Budget,
    ) -> Result<Vec<Vec<Elem>>> {
        let (src, tgt) = (self.src.fiber(a), self.tgt.fiber(objects[&a]));
        let elems: Vec<Elem> = src.elements().collect();
        let mut out = Vec::new();
        let mut cur = vec![Elem(0); elems.len()];
        fn go(
            i: usize,
            cur: &mut Vec<Elem>,
            src: &crate::doctrine::Fiber,
            tgt: &crate::doctrine::Fiber,
            budget: &Budget,
            out: &mut Vec<Vec<Elem>>,
        ) -> Result<()> {
            if i == cur.len() {
                out.push(cur.clone());
                return Ok(());
            }
            let x = Elem(i as u32);
            let cands: Vec<Elem> = if x == src.top() { vec![tgt.top()] } else { tgt.elements().collect() };
            budget.spend(cands.len() as u64, "fiber maps")?;
            for y in cands {
                cur[i] = y;
                // meets with earlier elements whose value is already assigned
                let ok = (0..=i).all(|j| {
                    let m = src.meet(Elem(j as u32), x);
                    m.index() > i || cur[m.index()] == tgt.meet(cur[j], y)
                });
                if ok {
                    go(i + 1, cur, src, tgt, budget, out)?;
                }
            }
            Ok(())
        }
        go(0, &mut cur, src, tgt, budget, &mut out)?;
        // meets whose result precedes an operand were deferred; check them all now
        out.retain(|b| {
            elems
                .iter()
                .all(|&x| elems.iter().all(|&y| b[src.meet(x, y).index()] == tgt.meet(b[x.index()], b[y.index()])))
        });
        let Some(reading) = self.comprehension else { return Ok(out) };
        let t = self.t();
        let mut comps = Vec::new();
        for &x in &elems {
            if let Some(m) = comprehension_of(self.src, a, x)?.arrow() {
                if arrows.contains_key(&m) {
                    comps.push((x, arrows[&m]));
                }
            }
        }
        let mut kept = Vec::new();
        for b in out {
            let mut ok = true;
            for &(x, fm) in &comps {
                let canon = comprehension_of(self.tgt, objects[&a], b[x.index()])?.arrow();
                ok &= match (canon, reading) {
                    (None, _) => false,
                    (Some(cm), Reading::Strict) => cm == fm,
                    (Some(cm), Reading::Iso) => {
                        let mut found = false;
                        for h in t.hom(fm.src, cm.src)? {
                            if t.try_compose(cm, h)? == fm && is_iso(t, h)?.is_some() {
                                found = true;
                                break;
                            }
                        }
                        found
                    }
                };
                if !ok {
                    break;
                }
            }
            if ok {
                kept.push(b);
            }
        }
        Ok(kept)
    }

    /// Every 1-arrow from the source to the target doctrine over `dom`.
    fn one_arrows(&self, budget: &Budget) -> Result<Vec<OneArrow>> {
        let constraints = self.constraints()?;
        let mut out = Vec::new();
        for (objects, arrows) in self.functors(budget)? {
            let cands = self
                .dom
                .iter()
                .map(|&a| self.fiber_candidates(a, &objects, &arrows, budget))
                .collect::<Result<Vec<_>>>()?;
            let mut k = OneArrow { objects: objects.clone(), arrows, fibers: BTreeMap::new() };
            self.assign_fibers(0, &cands, &constraints, &mut k, budget, &mut out)?;
        }
        Ok(out)
    }

    fn assign_fibers(
        &self,
        i: usize,
        cands: &[Vec<Vec<Elem>>],
        constraints: &[(usize, Constraint)],
        k: &mut OneArrow,
        budget: &Budget,
        out: &mut Vec<OneArrow>,
    ) -> Result<()> {
        if i == self.dom.len() {
            out.push(k.clone());
            return Ok(());
        }
        budget.spend(cands[i].len() as u64, "fiber families")?;
        for b in &cands[i] {
            k.fibers.insert(self.dom[i], b.clone());
            let mut ok = true;
            for (_, c) in constraints.iter().filter(|(last, _)| *last == i) {
                if !self.holds(c, k)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.assign_fibers(i + 1, cands, constraints, k, budget, out)?;
            }
        }
        k.fibers.remove(&self.dom[i]);
        Ok(())
    }

    /// The first constraint violated by a given 1-arrow.
    fn violation(&self, k: &OneArrow) -> Result<Option<String>> {
        for (&a, b) in &k.fibers {
            let (src, tgt) = (self.src.fiber(a), self.tgt.fiber(k.objects[&a]));
            if b[src.top().index()] != tgt.top() {
                return Ok(Some(format!("top over {}", self.s().name(a))));
            }
            for x in src.elements() {
                for y in src.elements() {
                    if b[src.meet(x, y).index()] != tgt.meet(b[x.index()], b[y.index()]) {
                        return Ok(Some(format!("meet over {}", self.s().name(a))));
                    }
                }
            }
        }
        if !self.preserves_products(&k.objects, &k.arrows)? {
            return Ok(Some("products".into()));
        }
        for (_, c) in self.constraints()? {
            if !self.holds(&c, k)? {
                let what = match c {
                    Constraint::Natural(f) => format!("naturality at {}", self.s().arrow_name(f)),
                    Constraint::Delta(a, _) => format!("δ at {}", self.s().name(a)),
                    Constraint::Exists(p) => format!("∃ along {}", self.s().arrow_name(p)),
                };
                return Ok(Some(what));
            }
        }
        Ok(None)
    }

    /// 2-cells `k1 ⇒ k2`: natural families `θ_A : k1(A) → k2(A)` with `b1(α) ≤ R_θ(b2(α))`.
    fn two_cells(&self, k1: &OneArrow, k2: &OneArrow, budget: &Budget) -> Result<Vec<Vec<Arrow>>> {
        let s = self.s();
        let arrows = s.arrows_among(&self.dom)?;
        let mut out = Vec::new();
        let mut cur: Vec<Arrow> = Vec::new();
        fn go(
            side: &Side<'_>,
            i: usize,
            cur: &mut Vec<Arrow>,
            ctx: (&OneArrow, &OneArrow, &[Arrow]),
            budget: &Budget,
            out: &mut Vec<Vec<Arrow>>,
        ) -> Result<()> {
            let (k1, k2, arrows) = ctx;
            let (s, t, r) = (side.s(), side.t(), side.tgt);
            if i == side.dom.len() {
                out.push(cur.clone());
                return Ok(());
            }
            let a = side.dom[i];
            let cands = t.hom(k1.objects[&a], k2.objects[&a])?;
            budget.spend(cands.len() as u64, "2-cells")?;
            for th in cands {
                let b1 = &k1.fibers[&a];
                let b2 = &k2.fibers[&a];
                let lax = side
                    .src
                    .fiber(a)
                    .elements()
                    .all(|x| r.leq(k1.objects[&a], b1[x.index()], r.pull(th, b2[x.index()])));
                if !lax {
                    continue;
                }
                cur.push(th);
                let mut natural = true;
                for &f in arrows {
                    let (pi, pj) = (
                        side.dom.iter().position(|&o| o == f.src).unwrap(),
                        side.dom.iter().position(|&o| o == f.tgt).unwrap(),
                    );
                    if pi.max(pj) != i || s.is_identity(f) {
                        continue;
                    }
                    let lhs = t.try_compose(k2.arrows[&f], cur[pi])?;
                    let rhs = t.try_compose(cur[pj], k1.arrows[&f])?;
                    if lhs != rhs {
                        natural = false;
                        break;
                    }
                }
                if natural {
                    go(side, i + 1, cur, ctx, budget, out)?;
                }
                cur.pop();
            }
            Ok(())
        }
        go(self, 0, &mut cur, (k1, k2, &arrows), budget, &mut out)?;
        Ok(out)
    }

    /// Whether some 2-cell `k1 ⇒ k2` is invertible with a 2-cell inverse.
    fn isomorphic(&self, k1: &OneArrow, k2: &OneArrow, budget: &Budget) -> Result<bool> {
        if k1 == k2 {
            return Ok(true);
        }
        let t = self.t();
        for th in self.two_cells(k1, k2, budget)? {
            let mut inv = Vec::with_capacity(th.len());
            for &x in &th {
                match is_iso(t, x)? {
                    Some(y) => inv.push(y),
                    None => break,
                }
            }
            if inv.len() != th.len() {
                continue;
            }
            let lax = self.dom.iter().zip(&inv).all(|(&a, &y)| {
                let (b1, b2) = (&k1.fibers[&a], &k2.fibers[&a]);
                self.src
                    .fiber(a)
                    .elements()
                    .all(|x| self.tgt.leq(k2.objects[&a], b2[x.index()], self.tgt.pull(y, b1[x.index()])))
            });
            if lax {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// The unit `(D, b) : P → Sub_{T(P)}`, with `b_A(α)` the subobject of `(A, δ_A)`
/// carried by the relation `δ_A ∧ P_pr1(α)`.
fn unit(p: &Doctrine, tp: &Tp, sub_t: &Doctrine, dom: &[Obj]) -> Result<OneArrow> {
    let c = p.base();
    let d = functor_d(p, tp)?;
    let tcat = sub_t.base();
    let mut fibers = BTreeMap::new();
    for &a in dom {
        let da = d.objects[&a];
        let delta = tp.delta.at(p, a)?;
        let aa = c.prod(a, a)?;
        let subs = subobjects(tcat, da)?;
        let mut map = Vec::new();
        for alpha in p.fiber(a).elements() {
            let rel = p.meet(aa.obj, delta, p.pull(aa.pr1, alpha));
            let src = tp.object_of(a, rel).ok_or_else(|| Error::violation("UnitObject", p.elem_name(a, alpha)))?;
            let m = tp.arrow_of(src, da, rel).ok_or_else(|| Error::violation("UnitArrow", p.elem_name(a, alpha)))?;
            let mut k = None;
            for (i, &s) in subs.iter().enumerate() {
                if factors(tcat, m, s)? && factors(tcat, s, m)? {
                    k = Some(Elem(i as u32));
                    break;
                }
            }
            map.push(k.ok_or_else(|| Error::violation("UnitSubobject", p.elem_name(a, alpha)))?);
        }
        fibers.insert(a, map);
    }
    Ok(OneArrow { objects: d.objects.clone(), arrows: d.arrows.clone(), fibers })
}

fn precompose(eta: &OneArrow, g: &OneArrow) -> OneArrow {
    OneArrow {
        objects: eta.objects.iter().map(|(&a, da)| (a, g.objects[da])).collect(),
        arrows: eta.arrows.iter().map(|(&f, df)| (f, g.arrows[df])).collect(),
        fibers: eta
            .fibers
            .iter()
            .map(|(&a, b)| (a, b.iter().map(|x| g.fibers[&eta.objects[&a]][x.index()]).collect()))
            .collect(),
    }
}

fn with_products(c: &FinCat) -> Result<FinCat> {
    if c.is_table() {
        c.with_products(find_products(c)?)
    } else {
        Ok(c.clone())
    }
}

/// Checks, by exhaustive enumeration under the enumeration cap, that precomposition
/// with the unit `P → Sub_{T(P)}` is an essential equivalence onto the elementary
/// existential morphisms `P → Sub_X`.
pub fn verify_universal(p: &Doctrine, x: &FinCat, cfg: &Config) -> Result<Verdict> {
    let mut v = Verdict::new("universal");
    let exact = check_exact(x, cfg.cap_enum)?;
    if !v.hyp("target exact", exact.exact.holds, exact.exact.witness.clone()) {
        return Ok(v.settle());
    }
    let cfg = Config { condition_v: ConditionV::Strict, ..*cfg };
    let tp = build_tp(p, &cfg)?;
    let c = p.base();
    let dom_p: Vec<Obj> = if c.is_window() { c.core().to_vec() } else { c.objects().collect() };
    // refuse early when the object maps alone exceed the cap
    let nx = x.num_objects() as u64;
    for n in [tp.objects.len(), dom_p.len()] {
        if nx.checked_pow(n as u32).is_none_or(|m| m > cfg.cap_enum) {
            return Err(Error::cap(format!("object maps into a {nx}-object target from {n} objects"), cfg.cap_enum));
        }
    }
    let tcat = with_products(&tp.cat)?;
    let xcat = with_products(x)?;
    let sub_t = sub_doctrine(&tcat, cfg.cap_fibers)?;
    let sub_x = sub_doctrine(&xcat, cfg.cap_fibers)?;
    let (delta_p, delta_t, delta_x) = (
        discover_elementary(p, cfg.cap_enum)?,
        discover_elementary(&sub_t, cfg.cap_enum)?,
        discover_elementary(&sub_x, cfg.cap_enum)?,
    );
    let budget = Budget { used: AtomicU64::new(0), limit: cfg.cap_enum };

    let unit_side = Side {
        src: p,
        tgt: &sub_t,
        dom: dom_p.clone(),
        src_delta: delta_p.clone(),
        tgt_delta: delta_t.clone(),
        comprehension: None,
    };
    let eta = unit(p, &tp, &sub_t, &dom_p)?;
    let bad = unit_side.violation(&eta)?;
    v.concl("unit is a morphism", bad.is_none(), bad);

    let left = Side {
        src: p,
        tgt: &sub_x,
        dom: dom_p.clone(),
        src_delta: delta_p,
        tgt_delta: delta_x.clone(),
        comprehension: None,
    };
    let targets = left.one_arrows(&budget)?;
    v.count("morphisms P → Sub_X", targets.len());

    for (label, reading) in [("strict", Reading::Strict), ("iso", Reading::Iso)] {
        let right = Side {
            src: &sub_t,
            tgt: &sub_x,
            dom: tcat.objects().collect(),
            src_delta: delta_t.clone(),
            tgt_delta: delta_x.clone(),
            comprehension: Some(reading),
        };
        let sources = right.one_arrows(&budget)?;
        v.count(&format!("morphisms Sub_T → Sub_X ({label})"), sources.len());
        let composites: Vec<OneArrow> = sources.iter().map(|g| precompose(&eta, g)).collect();

        let mut missed = None;
        for (i, f) in targets.iter().enumerate() {
            let mut hit = false;
            for k in &composites {
                if left.isomorphic(k, f, &budget)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                missed = Some(format!("target morphism #{i} is not hit"));
                break;
            }
        }
        v.conclusions.push(Item::new(&format!("essentially surjective ({label})"), missed.is_none(), missed));

        let mut bad = None;
        let mut cells = 0;
        'pairs: for (i, g1) in sources.iter().enumerate() {
            for (j, g2) in sources.iter().enumerate() {
                let upstairs = right.two_cells(g1, g2, &budget)?;
                let downstairs = left.two_cells(&composites[i], &composites[j], &budget)?;
                cells += upstairs.len();
                let restricted: Vec<Vec<Arrow>> = upstairs
                    .iter()
                    .map(|th| {
                        eta.objects
                            .values()
                            .map(|da| th[right.dom.iter().position(|o| o == da).expect("unit lands in T(P)")])
                            .collect()
                    })
                    .collect();
                let mut sorted = restricted.clone();
                sorted.sort();
                sorted.dedup();
                let mut down = downstairs.clone();
                down.sort();
                if sorted.len() != restricted.len() || sorted != down {
                    bad = Some(format!(
                        "2-cells #{i} ⇒ #{j}: {} upstairs, {} downstairs",
                        restricted.len(),
                        downstairs.len()
                    ));
                    break 'pairs;
                }
            }
        }
        v.count(&format!("2-cells ({label})"), cells);
        v.conclusions.push(Item::new(&format!("fully faithful on 2-cells ({label})"), bad.is_none(), bad));
    }
    Ok(v.settle())
}

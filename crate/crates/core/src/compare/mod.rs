//! Theorem harnesses. Each harness re-checks its hypotheses from the raw
//! doctrine, measures its conclusions, and only claims them when every
//! hypothesis holds.

mod universal;

pub use universal::verify_universal;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::allegory::{rel_compose, rel_opposite, Rel};
use crate::completions::{build_erp, build_gr, build_qp, build_tp, functor_l, transitive_extension, Gr, Qp};
use crate::config::{ConditionV, Config};
use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{check_equivalence, is_iso, Arrow, Obj};
use crate::structure::{
    analyze, check_beck_chevalley, check_frobenius, check_rule_of_choice, comprehension_of, comprehensions,
    discover_elementary, discover_existential, Comprehension, ElementaryWitness,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One named sub-verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Item {
    pub fn new(name: &str, holds: bool, witness: Option<String>) -> Item {
        Item { name: name.to_string(), holds, witness: if holds { None } else { witness } }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub harness: String,
    pub status: Status,
    pub hypotheses: Vec<Item>,
    /// Measured conclusions; asserted only when `claimed`.
    pub conclusions: Vec<Item>,
    pub claimed: bool,
    pub counts: BTreeMap<String, usize>,
    pub evidence: Vec<String>,
}

impl Verdict {
    fn new(harness: &str) -> Verdict {
        Verdict {
            harness: harness.to_string(),
            status: Status::NotApplicable,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            claimed: false,
            counts: BTreeMap::new(),
            evidence: Vec::new(),
        }
    }

    fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    fn hyp(&mut self, name: &str, holds: bool, witness: Option<String>) -> bool {
        self.hypotheses.push(Item::new(name, holds, witness));
        holds
    }

    fn concl(&mut self, name: &str, holds: bool, witness: Option<String>) {
        self.conclusions.push(Item::new(name, holds, witness));
    }

    fn count(&mut self, name: &str, n: usize) {
        self.counts.insert(name.to_string(), n);
    }

    fn settle(mut self) -> Verdict {
        self.claimed = self.hypotheses_hold();
        self.status = if !self.claimed {
            Status::NotApplicable
        } else if self.conclusions.iter().all(|c| c.holds) {
            Status::Pass
        } else {
            Status::Fail
        };
        self
    }

    /// The first failing hypothesis or conclusion.
    pub fn first_failure(&self) -> Option<&Item> {
        self.hypotheses.iter().chain(&self.conclusions).find(|i| !i.holds)
    }
}

/// Turns a law failure into a failed item; other errors propagate.
fn law<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Violation { law, witness }) => Ok(Err(format!("{law}: {witness}"))),
        Err(Error::NoAdjoint { witness }) => Ok(Err(format!("no left adjoint at {witness}"))),
        Err(e) => Err(e),
    }
}

fn first_mismatch<I: IntoIterator<Item = (String, bool)>>(it: I) -> (bool, Option<String>) {
    for (w, ok) in it {
        if !ok {
            return (false, Some(w));
        }
    }
    (true, None)
}

/// Checks that `(I, id)` from `P` to `P̂` preserves tops, meets, reindexing, `δ` and `∃`.
fn inclusion_preserves(gr: &Gr, cfg: &Config, v: &mut Verdict) -> Result<()> {
    let p = &gr.source;
    let hat = &gr.doctrine;
    let c = p.base();
    let carriers: Vec<Obj> = if c.is_window() { c.core().to_vec() } else { c.objects().collect() };
    let mut tops = Vec::new();
    let mut meets = Vec::new();
    for &a in &carriers {
        let ia = gr.include(a);
        tops.push((c.name(a).to_string(), gr.global(ia, hat.top(ia)) == p.top(a)));
        let fib = p.fiber(a);
        for x in fib.elements() {
            for y in fib.elements() {
                let ok = gr.global(ia, hat.meet(ia, x, y)) == fib.meet(x, y);
                meets.push((format!("({}, {} ∧ {})", c.name(a), fib.name(x), fib.name(y)), ok));
            }
        }
    }
    let (ok, w) = first_mismatch(tops);
    v.concl("inclusion preserves top", ok, w);
    let (ok, w) = first_mismatch(meets);
    v.concl("inclusion preserves meets", ok, w);

    let inc = gr.inclusion()?;
    let mut natural = Vec::new();
    for (&f, &g) in &inc.arrows {
        for x in p.fiber(f.tgt).elements() {
            natural.push((
                format!("({}, {})", c.arrow_name(f), p.elem_name(f.tgt, x)),
                gr.global(g.src, hat.pull(g, x)) == p.pull(f, x),
            ));
        }
    }
    let (ok, w) = first_mismatch(natural);
    v.concl("inclusion commutes with reindexing", ok, w);

    let pe = discover_elementary(p, cfg.cap_enum)?;
    let he = discover_elementary(hat, cfg.cap_enum)?;
    let mut deltas = Vec::new();
    let mut exists = Vec::new();
    for &a in &carriers {
        let ia = gr.include(a);
        let sq = gr.cat.prod(ia, ia)?;
        let aa = c.prod(a, a)?;
        let same_obj = sq.obj == gr.include(aa.obj);
        let ok = same_obj && gr.global(sq.obj, he.at(hat, ia)?) == pe.at(p, a)?;
        deltas.push((c.name(a).to_string(), ok));
        for &b in &carriers {
            let ab = c.prod(a, b)?;
            let iab = gr.cat.prod(ia, gr.include(b))?;
            if iab.obj != gr.include(ab.obj) {
                exists.push((format!("I({}×{})", c.name(a), c.name(b)), false));
                continue;
            }
            for (pr, ipr) in [(ab.pr1, iab.pr1), (ab.pr2, iab.pr2)] {
                let (ex, hx) = (p.exists(pr)?, hat.exists(ipr)?);
                for x in p.fiber(ab.obj).elements() {
                    let ok = gr.global(ipr.tgt, hx[x.index()]) == ex[x.index()];
                    exists.push((format!("(∃ {}, {})", c.arrow_name(pr), p.elem_name(ab.obj, x)), ok));
                }
            }
        }
    }
    let (ok, w) = first_mismatch(deltas);
    v.concl("inclusion preserves δ", ok, w);
    let (ok, w) = first_mismatch(exists);
    v.concl("inclusion preserves ∃", ok, w);
    Ok(())
}

/// The points construction adds comprehensions and keeps the elementary existential structure.
pub fn verify_cthn(p: Arc<Doctrine>, cfg: &Config) -> Result<Verdict> {
    let mut v = Verdict::new("cthn");
    let elem = law(discover_elementary(&p, cfg.cap_enum))?;
    v.hyp("elementary", elem.is_ok(), elem.err());
    let exist = law(discover_existential(&p))?;
    match exist {
        Ok(w) => {
            v.hyp("existential", true, None);
            let bc = check_beck_chevalley(&p, &w)?;
            v.hyp("Beck-Chevalley", bc.holds, bc.witness);
            let fr = check_frobenius(&p, &w)?;
            v.hyp("Frobenius", fr.holds, fr.witness);
        }
        Err(e) => {
            v.hyp("existential", false, Some(e));
        }
    }
    if !v.hypotheses_hold() {
        return Ok(v.settle());
    }
    let gr = build_gr(p.clone(), cfg)?;
    let c = p.base();
    v.count("points", gr.cat.num_objects());
    let a = analyze(&gr.doctrine, cfg.cap_enum)?;
    v.concl("P̂ elementary", a.elementary.is_ok(), a.elementary.as_ref().err().cloned());
    v.concl("P̂ existential", a.existential.is_ok(), a.existential.as_ref().err().cloned());
    let bc = a.beck_chevalley.clone().unwrap_or_default();
    v.concl("P̂ Beck-Chevalley", bc.holds, bc.witness);
    let fr = a.frobenius.clone().unwrap_or_default();
    v.concl("P̂ Frobenius", fr.holds, fr.witness);
    let table = &a.comprehensions;
    let failure = table.fullness_failure.clone().or_else(|| table.missing.first().cloned());
    v.concl("P̂ full comprehensions", table.full, failure);

    let mut carried = Vec::new();
    for &(pt, x, comp) in &table.entries {
        let (base, _) = gr.cat.point(pt).expect("points category");
        let expected = gr.cat.point_object(base, gr.global(pt, x)).expect("every element is a point");
        // comprehensions are determined up to iso; ask for one carried by an identity
        let ok = match comp {
            Comprehension::Strict(arr) => {
                let mut found = false;
                for m in gr.cat.hom(expected, pt)? {
                    if !c.is_identity(gr.cat.underlying(m).expect("points category")) {
                        continue;
                    }
                    for h in gr.cat.hom(arr.src, expected)? {
                        if gr.cat.try_compose(m, h)? == arr && is_iso(&gr.cat, h)?.is_some() {
                            found = true;
                        }
                    }
                }
                found
            }
            _ => false,
        };
        carried.push((format!("({}, {})", gr.cat.name(pt), gr.doctrine.elem_name(pt, x)), ok));
    }
    let (ok, w) = first_mismatch(carried);
    v.concl("comprehensions carried by identities", ok, w);

    // elements that gain a comprehension
    let before = comprehensions(&p)?;
    for &(a, x, comp) in &before.entries {
        if comp == Comprehension::Absent {
            let ia = gr.include(a);
            let pt = gr.cat.point_object(a, x).expect("every element is a point");
            v.evidence.push(format!(
                "comprehension for ({}, {}) gained at {} ↪ {}",
                c.name(a),
                p.elem_name(a, x),
                gr.cat.name(pt),
                gr.cat.name(ia)
            ));
        }
    }
    inclusion_preserves(&gr, cfg, &mut v)?;
    Ok(v.settle())
}

/// With full comprehensions, ER(P) ↪ T(P) is an equivalence.
pub fn verify_fulc(p: &Doctrine, cfg: &Config) -> Result<Verdict> {
    let mut v = Verdict::new("fulc");
    let table = comprehensions(p)?;
    let missing = table.missing.first().map(|m| format!("missing comprehension for {m}"));
    let witness = missing.or_else(|| table.fullness_failure.clone());
    if !v.hyp("full comprehensions", table.full, witness) {
        return Ok(v.settle());
    }
    let cfg = Config { condition_v: ConditionV::Strict, ..*cfg };
    let tp = build_tp(p, &cfg)?;
    let er = build_erp(p, &tp)?;
    v.count("T objects", tp.objects.len());
    v.count("ER objects", er.objects.len());
    v.count("T iso classes", tp.iso_classes()?.classes.len());
    let inc = er.embed(&tp)?;
    inc.validate()?;
    let eq = check_equivalence(&inc, &tp.all_objects())?;
    v.concl("faithful", eq.faithful, eq.counterexamples.first().cloned());
    v.concl("full", eq.full, eq.counterexamples.first().cloned());
    v.concl("essentially surjective", eq.essentially_surjective, eq.counterexamples.last().cloned());
    for &(y, a, g) in &eq.iso_witnesses {
        v.evidence.push(format!("{} ≅ {} via {}", tp.cat.name(y), er.cat.name(a), tp.cat.arrow_name(g)));
    }
    // α = ∃_{α}(⊤) wherever the left adjoint along the comprehension exists
    let mut anchors = Vec::new();
    for &(a, x, comp) in &table.entries {
        if let Some(m) = comp.arrow() {
            match p.exists(m) {
                Ok(ex) => anchors
                    .push((format!("({}, {})", p.base().name(a), p.elem_name(a, x)), ex[p.top(m.src).index()] == x)),
                Err(Error::NoAdjoint { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    v.count("comprehension anchors", anchors.len());
    let (ok, w) = first_mismatch(anchors);
    v.concl("α = ∃ along {α} of ⊤", ok, w);
    Ok(v.settle())
}

struct LMeasure {
    full: bool,
    faithful: bool,
    witness: Option<String>,
    pairs: usize,
    matched: usize,
    q_objects: usize,
    er_objects: usize,
    evidence: Vec<String>,
}

fn measure_l(p: &Doctrine, cfg: &Config) -> Result<LMeasure> {
    let cfg = Config { condition_v: ConditionV::Strict, ..*cfg };
    let qp = build_qp(p, &cfg)?;
    let tp = build_tp(p, &cfg)?;
    let er = build_erp(p, &tp)?;
    let (l, skipped) = functor_l(p, &qp, &er)?;
    l.validate()?;
    let eq = check_equivalence(&l, &[])?;
    let matched = eq.hom_counts.iter().filter(|&&(_, _, a, b)| a == b).count();
    let mut evidence: Vec<String> =
        skipped.iter().map(|s| format!("L{s}: first form skipped (no ∃ along id×f)")).collect();
    for &(a, b, n, m) in &eq.hom_counts {
        evidence.push(format!("|Hom({}, {})| = {n} / {m}", qp.cat.name(a), qp.cat.name(b)));
    }
    Ok(LMeasure {
        full: eq.full,
        faithful: eq.faithful,
        witness: eq.counterexamples.first().cloned(),
        pairs: eq.hom_counts.len(),
        matched,
        q_objects: qp.objects.len(),
        er_objects: er.objects.len(),
        evidence,
    })
}

/// Weak full comprehensions and the rule of choice make L : Q_P → ER(P) an equivalence.
pub fn verify_axc(p: &Doctrine, cfg: &Config) -> Result<Verdict> {
    let mut v = Verdict::new("axc");
    let table = comprehensions(p)?;
    let witness =
        table.missing.first().map(|m| format!("missing comprehension for {m}")).or(table.fullness_failure.clone());
    v.hyp("weak full comprehensions", table.weak_full, witness);
    match law(discover_existential(p))? {
        Ok(w) => {
            let roc = check_rule_of_choice(p, &w)?;
            v.hyp("rule_of_choice", roc.holds, roc.witness);
        }
        Err(e) => {
            v.hyp("rule_of_choice", false, Some(e));
        }
    }
    match law(measure_l(p, cfg))? {
        Ok(m) => {
            v.count("Q objects", m.q_objects);
            v.count("ER objects", m.er_objects);
            v.count("hom pairs", m.pairs);
            v.count("hom pairs matched", m.matched);
            v.concl("L faithful", m.faithful, m.witness.clone());
            v.concl("L full", m.full, m.witness);
            v.concl("L bijective on objects", m.q_objects == m.er_objects, None);
            v.evidence = m.evidence;
        }
        Err(e) => v.concl("L defined", false, Some(e)),
    }
    Ok(v.settle())
}

/// Derives a choice arrow for a total `α` through its comprehension: with
/// `{α} = ⟨x, y⟩ : X → A×B`, the relation `κ°;tr(κ;κ°)` with `κ` the graph of
/// `x` is functional `(A, δ_A) → (X, tr(κ;κ°))`, so fullness of L yields a class
/// `[w]`, and `y ∘ w` is the choice.
fn derive_choice(
    p: &Doctrine,
    qp: &Qp,
    delta: &ElementaryWitness,
    (a, b, alpha): (Obj, Obj, Elem),
) -> Result<std::result::Result<Arrow, String>> {
    let c = p.base();
    let ab = c.prod(a, b)?;
    let m = match comprehension_of(p, ab.obj, alpha)?.arrow() {
        Some(m) => m,
        None => return Ok(Err("no comprehension".into())),
    };
    let xo = m.src;
    let x = c.compose(ab.pr1, m);
    let y = c.compose(ab.pr2, m);
    let kappa = Rel { src: xo, tgt: a, elem: p.pull(c.cross(x, c.identity(a))?, delta.at(p, a)?) };
    let zeta = rel_compose(p, kappa, rel_opposite(p, kappa)?)?;
    let tr = transitive_extension(p, xo, zeta.elem)?;
    let phi = rel_compose(p, rel_opposite(p, kappa)?, Rel { src: xo, tgt: xo, elem: tr })?;
    let rho = delta.at(p, a)?;
    let (qa, qx) = match (qp.object_of(a, rho), qp.object_of(xo, tr)) {
        (Some(i), Some(j)) => (i, j),
        _ => return Ok(Err("objects outside Q_P".into())),
    };
    let pull_sigma = |f: Arrow| -> Result<Elem> {
        let r = Rel { src: a, tgt: a, elem: rho };
        Ok(rel_compose(p, r, Rel { src: a, tgt: xo, elem: p.pull(c.cross(f, c.identity(xo))?, tr) })?.elem)
    };
    for class in &qp.classes[&(qa, qx)] {
        if pull_sigma(class.rep)? != phi.elem {
            continue;
        }
        for &w in &class.members {
            let choice = c.compose(y, w);
            if p.leq(a, p.top(a), p.pull(c.pair(c.identity(a), choice)?, alpha)) {
                return Ok(Ok(choice));
            }
        }
        return Ok(Err(format!("class [{}] carries no choice", c.arrow_name(class.rep))));
    }
    Ok(Err("φ is not in the image of L".into()))
}

/// Conversely, when L is an equivalence and transitive extensions exist, the
/// rule of choice is re-derived through the comprehension of each total relation.
pub fn verify_converse_axc(p: &Doctrine, cfg: &Config) -> Result<Verdict> {
    let mut v = Verdict::new("converse");
    let c = p.base();
    let table = comprehensions(p)?;
    let witness =
        table.missing.first().map(|m| format!("missing comprehension for {m}")).or(table.fullness_failure.clone());
    if !v.hyp("full comprehensions", table.full, witness) {
        return Ok(v.settle());
    }
    let delta = discover_elementary(p, cfg.cap_enum)?;
    let carriers: Vec<Obj> = if c.is_window() { c.core().to_vec() } else { c.objects().collect() };
    let mut ext = Vec::new();
    for &x in &carriers {
        let xx = c.prod(x, x)?;
        let dx = delta.at(p, x)?;
        for z in p.fiber(xx.obj).elements().filter(|&z| p.leq(xx.obj, dx, z)) {
            let ok = match transitive_extension(p, x, z) {
                Ok(_) => true,
                Err(Error::NoExtension(_)) => false,
                Err(e) => return Err(e),
            };
            ext.push((format!("({}, {})", c.name(x), p.elem_name(xx.obj, z)), ok));
        }
    }
    let (ok, w) = first_mismatch(ext);
    if !v.hyp("transitive extensions", ok, w) {
        return Ok(v.settle());
    }
    let m = measure_l(p, cfg)?;
    if !v.hyp("L equivalence", m.full && m.faithful && m.q_objects == m.er_objects, m.witness) {
        return Ok(v.settle());
    }
    let qp = build_qp(p, &Config { condition_v: ConditionV::Strict, ..*cfg })?;
    let ex = discover_existential(p)?;
    let mut derived = Vec::new();
    let mut skipped = Vec::new();
    for &a in &carriers {
        for &b in &carriers {
            let ab = c.prod(a, b)?;
            if !carriers.contains(&ab.obj) {
                skipped.push(format!("({}, {})", c.name(a), c.name(b)));
                continue;
            }
            let pr = ex.along.get(&ab.pr1).cloned().map_or_else(|| p.exists(ab.pr1), Ok)?;
            for alpha in p.fiber(ab.obj).elements() {
                if !p.leq(a, p.top(a), pr[alpha.index()]) {
                    continue;
                }
                let label = format!("({}, {}, {})", c.name(a), c.name(b), p.elem_name(ab.obj, alpha));
                match derive_choice(p, &qp, &delta, (a, b, alpha))? {
                    Ok(w) => {
                        v.evidence.push(format!("{label} chooses {}", c.arrow_name(w)));
                        derived.push((label, true));
                    }
                    Err(why) => derived.push((format!("{label}: {why}"), false)),
                }
            }
        }
    }
    v.count("total relations", derived.iter().filter(|d| d.1).count());
    for s in &skipped {
        v.evidence.push(format!("pair {s} skipped: product outside the core"));
    }
    let (ok, w) = first_mismatch(derived);
    v.concl("rule of choice derived", ok, w);
    let roc = check_rule_of_choice(p, &ex)?;
    v.concl("agrees with direct check", roc.holds == ok, roc.witness);
    Ok(v.settle())
}

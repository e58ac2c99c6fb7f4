//! Reports for the command line: a verdict tree with counts, rendered either for
//! people or as JSON. Both renderings are deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::compare::{verify_axc, verify_converse_axc, verify_cthn, verify_fulc, verify_universal, Status, Verdict};
use crate::completions::{build_erp, build_gr, build_qp, build_tp, transitive_extension};
use crate::config::Config;
use crate::doctrine::{sub_doctrine, validate_doctrine, Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{check_exact, find_products, validate_category, validate_products, FinCat, Obj};
use crate::fixtures;
use crate::format::{emit_doctrine, Document};
use crate::structure::{analyze, Analysis, Comprehension};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    Capped,
    /// Reported for information; never decides the exit code.
    Info,
}

impl Outcome {
    fn tag(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "n/a",
            Outcome::Capped => "capped",
            Outcome::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Node>,
}

impl Node {
    fn new(name: impl Into<String>, outcome: Outcome, witness: Option<String>) -> Node {
        Node { name: name.into(), outcome, witness, children: Vec::new() }
    }

    fn check(name: impl Into<String>, holds: bool, witness: Option<String>) -> Node {
        let outcome = if holds { Outcome::Pass } else { Outcome::Fail };
        Node::new(name, outcome, if holds { None } else { witness.or_else(|| Some("no witness recorded".into())) })
    }

    fn info(name: impl Into<String>) -> Node {
        Node::new(name, Outcome::Info, None)
    }

    fn with(mut self, children: Vec<Node>) -> Node {
        self.children = children;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    /// One-line summary.
    pub headline: String,
    pub checks: Vec<Node>,
    pub counts: BTreeMap<String, usize>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, subject: &str) -> Report {
        Report {
            command: command.into(),
            subject: subject.into(),
            headline: String::new(),
            checks: Vec::new(),
            counts: BTreeMap::new(),
            exit_code: 0,
        }
    }

    /// The report for a command that stopped with an error.
    pub fn from_error(command: &str, subject: &str, e: &Error) -> Report {
        let mut r = Report::new(command, subject);
        let outcome = if matches!(e, Error::ResourceCap { .. }) { Outcome::Capped } else { Outcome::Fail };
        r.headline = format!("{}: {e}", outcome.tag());
        r.checks.push(Node::new("run", outcome, Some(e.to_string())));
        r.exit_code = e.exit_code();
        r
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.subject);
        let _ = writeln!(s, "  {}", self.headline);
        fn walk(s: &mut String, n: &Node, depth: usize) {
            let pad = "  ".repeat(depth + 1);
            let _ = write!(s, "{pad}[{}] {}", n.outcome.tag(), n.name);
            if let Some(w) = &n.witness {
                let _ = write!(s, " (witness {w})");
            }
            s.push('\n');
            for c in &n.children {
                walk(s, c, depth + 1);
            }
        }
        for n in &self.checks {
            walk(&mut s, n, 0);
        }
        if !self.counts.is_empty() {
            let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  counts: {}", counts.join(", "));
        }
        s
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn require_doctrine(doc: &Document) -> Result<&Arc<Doctrine>> {
    doc.doctrine.as_ref().ok_or_else(|| Error::MissingEntry("the document has no fibers".into()))
}

fn validated(doc: &Document) -> Result<()> {
    validate_category(&doc.base)?;
    validate_products(&doc.base)?;
    if let Some(d) = &doc.doctrine {
        validate_doctrine(d)?;
    }
    Ok(())
}

fn core_objects(c: &FinCat) -> Vec<Obj> {
    if c.is_window() {
        c.core().to_vec()
    } else {
        c.objects().collect()
    }
}

fn size_counts(r: &mut Report, c: &FinCat, d: Option<&Doctrine>) -> Result<()> {
    let objs = core_objects(c);
    r.counts.insert("objects".into(), objs.len());
    r.counts.insert("arrows".into(), c.arrows_among(&objs)?.len());
    if let Some(d) = d {
        r.counts.insert("fiber elements".into(), objs.iter().map(|&a| d.fiber(a).len()).sum());
    }
    Ok(())
}

fn comprehension_summary(a: &Analysis) -> String {
    let t = &a.comprehensions;
    if t.full {
        "full".into()
    } else if !t.missing.is_empty() {
        format!("partial (missing for {})", t.missing.join(", "))
    } else if t.weak_full {
        "weak".into()
    } else {
        format!("not full ({})", t.fullness_failure.clone().unwrap_or_default())
    }
}

fn optional(name: &str, c: &Option<crate::structure::Check>) -> Node {
    match c {
        Some(c) => {
            let mut n = Node::check(format!("{name} ({} checked)", c.checked), c.holds, c.witness.clone());
            n.children = c.skipped.iter().map(|s| Node::new(format!("skipped {s}"), Outcome::Info, None)).collect();
            n
        }
        None => Node::new(name, Outcome::NotApplicable, Some("no existential structure".into())),
    }
}

/// Validates a document and verifies its elementary existential structure.
pub fn check(doc: &Document, subject: &str, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("check", subject);
    validated(doc)?;
    let Some(d) = &doc.doctrine else {
        size_counts(&mut r, &doc.base, None)?;
        r.headline = "category: valid".into();
        r.checks.push(Node::check("category laws", true, None));
        return Ok(r);
    };
    size_counts(&mut r, &doc.base, Some(d))?;
    let a = analyze(d, cfg.cap_enum)?;
    let c = d.base();
    let mut head = vec![format!("EED: {}", yes(a.is_eed()))];
    let mut elem = Node::check("elementary", a.elementary.is_ok(), a.elementary.as_ref().err().cloned());
    if let Ok(e) = &a.elementary {
        let mut deltas = Vec::new();
        for (&x, &v) in &e.delta {
            let xx = c.prod(x, x)?;
            let line = format!("δ_{}={}", c.name(x), d.elem_name(xx.obj, v));
            elem.children.push(Node::info(line.clone()));
            deltas.push(line);
        }
        head.push(deltas.join(", "));
    }
    r.checks.push(elem);
    r.checks.push(Node::check("existential", a.existential.is_ok(), a.existential.as_ref().err().cloned()));
    r.checks.push(optional("Beck-Chevalley", &a.beck_chevalley));
    r.checks.push(optional("Frobenius", &a.frobenius));
    if let Some(dp) = &a.delta_product {
        let mut n = optional("δ product law", &Some(dp.clone()));
        n.outcome = if dp.holds { Outcome::Info } else { Outcome::Fail };
        r.checks.push(n);
    }
    head.push(format!("comprehensions: {}", comprehension_summary(&a)));
    let entries = a
        .comprehensions
        .entries
        .iter()
        .map(|&(o, x, comp)| {
            let what = match comp {
                Comprehension::Strict(m) => format!("strict {}", c.arrow_name(m)),
                Comprehension::Weak(m) => format!("weak {}", c.arrow_name(m)),
                Comprehension::Absent => "absent".into(),
            };
            Node::info(format!("{}:{} {what}", c.name(o), d.elem_name(o, x)))
        })
        .collect();
    r.checks.push(Node::new("comprehensions", Outcome::Info, None).with(entries));
    let mut roc = optional("rule of choice", &a.rule_of_choice);
    if roc.outcome == Outcome::Fail {
        roc.outcome = Outcome::Info;
    }
    r.checks.push(roc);
    if let Some(c) = &a.rule_of_choice {
        head.push(format!("rule of choice: {}", yes(c.holds)));
    }
    r.headline = head.join("; ");
    if !a.is_eed() {
        r.exit_code = 1;
    }
    Ok(r)
}

/// Which completion `complete` builds.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Gr,
    Tp,
    Er,
    Qp,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Gr => "gr",
            Kind::Tp => "tp",
            Kind::Er => "er",
            Kind::Qp => "qp",
        }
    }
}

fn sub_of(c: &FinCat, cfg: &Config) -> Result<Doctrine> {
    let c = c.with_products(find_products(c)?)?;
    sub_doctrine(&c, cfg.cap_fibers)
}

/// Builds a completion; returns the report and the emitted document.
pub fn complete(doc: &Document, subject: &str, kind: Kind, cfg: &Config) -> Result<(Report, String)> {
    let mut r = Report::new(&format!("complete --kind {}", kind.label()), subject);
    validated(doc)?;
    let d = require_doctrine(doc)?;
    let (emitted, head) = match kind {
        Kind::Gr => {
            let gr = build_gr(d.clone(), cfg)?;
            validate_doctrine(&gr.doctrine)?;
            let a = analyze(&gr.doctrine, cfg.cap_enum)?;
            r.counts.insert("objects".into(), gr.cat.num_objects());
            r.checks.push(Node::check("elementary existential", a.is_eed(), a.elementary.clone().err()));
            r.checks.push(Node::check(
                "full comprehensions",
                a.comprehensions.full,
                a.comprehensions.fullness_failure.clone(),
            ));
            let head = format!(
                "objects: {}; EED: {}; full comprehensions: {}",
                gr.cat.num_objects(),
                yes(a.is_eed()),
                yes(a.comprehensions.full)
            );
            (emit_doctrine(&gr.doctrine)?, head)
        }
        Kind::Tp | Kind::Er => {
            let tp = build_tp(d, cfg)?;
            let t = if kind == Kind::Er { build_erp(d, &tp)? } else { tp };
            let classes = t.iso_classes()?;
            let exact = check_exact(&t.cat, cfg.cap_enum)?;
            let poset = t.cat.objects().all(|a| t.cat.objects().all(|b| t.cat.hom_size(a, b) <= 1))
                && classes.classes.iter().all(|k| k.len() == 1);
            r.counts.insert("objects".into(), t.objects.len());
            r.counts.insert("iso classes".into(), classes.classes.len());
            r.checks.push(Node::check(
                "finitely complete",
                exact.finitely_complete.holds,
                exact.finitely_complete.witness.clone(),
            ));
            r.checks.push(Node::check("regular", exact.regular.holds, exact.regular.witness.clone()));
            r.checks.push(Node::check("exact", exact.exact.holds, exact.exact.witness.clone()));
            for o in &exact.outside_window {
                r.checks.push(Node::new(format!("outside window: {o}"), Outcome::Info, None));
            }
            let head = format!(
                "objects: {}; iso classes: {}; exact: {}; poset: {}",
                t.objects.len(),
                classes.classes.len(),
                yes(exact.exact.holds),
                yes(poset)
            );
            (emit_doctrine(&sub_of(&t.cat, cfg)?)?, head)
        }
        Kind::Qp => {
            let qp = build_qp(d, cfg)?;
            validate_doctrine(&qp.doctrine)?;
            r.counts.insert("objects".into(), qp.objects.len());
            r.counts.insert("arrow classes".into(), qp.classes.values().map(Vec::len).sum());
            r.checks.push(Node::check("descent fibers closed", true, None));
            let head = format!("objects: {}; descent doctrine: valid", qp.objects.len());
            (emit_doctrine(&qp.doctrine)?, head)
        }
    };
    r.headline = head;
    if r.checks.iter().any(|n| n.outcome == Outcome::Fail) {
        r.exit_code = 1;
    }
    Ok((r, emitted))
}

fn item_nodes(v: &Verdict) -> Vec<Node> {
    let mut out = Vec::new();
    for h in &v.hypotheses {
        out.push(Node::check(format!("hypothesis {}", h.name), h.holds, h.witness.clone()));
    }
    for c in &v.conclusions {
        let name = if v.claimed { c.name.clone() } else { format!("{} (unclaimed)", c.name) };
        let mut n = Node::check(name, c.holds, c.witness.clone());
        if !v.claimed {
            n.outcome = Outcome::Info;
        }
        out.push(n);
    }
    out.extend(v.evidence.iter().map(|e| Node::info(e.clone())));
    out
}

fn verdict_node(v: &Verdict) -> Node {
    let outcome = match v.status {
        Status::Pass => Outcome::Pass,
        Status::Fail => Outcome::Fail,
        Status::NotApplicable => Outcome::NotApplicable,
    };
    let witness = v.first_failure().and_then(|i| i.witness.clone());
    let witness = if outcome == Outcome::Pass { None } else { witness };
    let mut n = Node::new(v.harness.clone(), outcome, witness).with(item_nodes(v));
    for (k, c) in &v.counts {
        n.children.push(Node::info(format!("{k}: {c}")));
    }
    n
}

fn summary(v: &Verdict) -> String {
    let h = &v.harness;
    match v.status {
        Status::Pass => match h.as_str() {
            "fulc" => "fulc: equivalence".into(),
            "axc" => "axc: hypotheses ok, L equivalence".into(),
            "universal" => "universal: essential equivalence confirmed".into(),
            _ => format!("{h}: pass"),
        },
        Status::Fail => {
            let f = v.first_failure().expect("a failing verdict has a failure");
            format!("{h}: {} failed (witness {})", f.name, f.witness.clone().unwrap_or_default())
        }
        Status::NotApplicable => {
            if h == "fulc" {
                return "fulc: not applicable (no full comprehensions)".into();
            }
            let failed: Vec<String> = v
                .hypotheses
                .iter()
                .filter(|i| !i.holds)
                .map(|i| format!("hypothesis {} failed (witness {})", i.name, i.witness.clone().unwrap_or_default()))
                .collect();
            format!("{h}: {}", failed.join(", "))
        }
    }
}

/// Runs the comparison harnesses on one doctrine.
pub fn compare(doc: &Document, subject: &str, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("compare", subject);
    validated(doc)?;
    let d = require_doctrine(doc)?;
    let verdicts =
        [verify_cthn(d.clone(), cfg)?, verify_fulc(d, cfg)?, verify_axc(d, cfg)?, verify_converse_axc(d, cfg)?];
    r.headline = verdicts.iter().map(summary).collect::<Vec<_>>().join("; ");
    r.checks = verdicts.iter().map(verdict_node).collect();
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        r.exit_code = 1;
    }
    Ok(r)
}

/// Checks the universal property against `target`, or against T(P) when none is given.
pub fn universal(doc: &Document, subject: &str, target: Option<&FinCat>, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("universal", subject);
    validated(doc)?;
    let d = require_doctrine(doc)?;
    let built;
    let x = match target {
        Some(x) => x,
        None => {
            built = build_tp(d, cfg)?.cat;
            &built
        }
    };
    let v = verify_universal(d, x, cfg)?;
    r.headline = summary(&v);
    r.checks.push(verdict_node(&v));
    r.counts = v.counts.clone();
    if v.status == Status::Fail {
        r.exit_code = 1;
    }
    Ok(r)
}

/// Runs `f`, turning errors into error reports.
fn run(command: &str, subject: &str, f: impl FnOnce() -> Result<Report>) -> Report {
    f().unwrap_or_else(|e| Report::from_error(command, subject, &e))
}

/// The acceptance numbers over every shipped fixture, as stable text.
pub fn demo(cfg: &Config) -> Result<String> {
    let mut s = String::new();
    let docs: BTreeMap<&str, Document> =
        fixtures::NAMES.iter().map(|&n| Ok((n, fixtures::load(n, cfg)?))).collect::<Result<_>>()?;
    let subject = |n: &str| format!("fixtures/{n}");
    let mut line = |r: &Report| {
        let _ = writeln!(s, "{} {} [exit {}]: {}", r.command, r.subject, r.exit_code, r.headline);
    };
    for n in fixtures::NAMES {
        line(&run("check", &subject(n), || check(&docs[n], &subject(n), cfg)));
    }
    for (n, kind) in [("triv", Kind::Tp), ("fs2", Kind::Tp), ("fs2", Kind::Er), ("fs2", Kind::Qp), ("chain", Kind::Gr)]
    {
        let label = format!("complete --kind {}", kind.label());
        line(&run(&label, &subject(n), || Ok(complete(&docs[n], &subject(n), kind, cfg)?.0)));
    }
    for n in fixtures::NAMES {
        line(&run("compare", &subject(n), || compare(&docs[n], &subject(n), cfg)));
    }
    for n in ["triv", "fs2"] {
        line(&run("universal", &subject(n), || universal(&docs[n], &subject(n), None, cfg)));
    }
    let fs2 = require_doctrine(&docs["fs2"])?;
    let two = fs2.base().object("2").ok_or_else(|| Error::MissingEntry("object 2".into()))?;
    let twotwo = fs2.base().prod(two, two)?;
    // subsets of 2×2 as bitmasks over the pairs (i, j) ↦ 2i + j
    let zeta = Elem(0b1111);
    let diag_swap = transitive_extension(fs2, two, zeta)?;
    let diag = transitive_extension(fs2, two, Elem(0b1001))?;
    let _ = writeln!(
        s,
        "transitive extension on 2: tr({}) = {}; tr({}) = {}",
        fs2.elem_name(twotwo.obj, zeta),
        fs2.elem_name(twotwo.obj, diag_swap),
        fs2.elem_name(twotwo.obj, Elem(0b1001)),
        fs2.elem_name(twotwo.obj, diag)
    );
    Ok(s)
}

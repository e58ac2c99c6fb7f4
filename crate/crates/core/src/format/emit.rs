use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::lex::quote;
use crate::doctrine::Doctrine;
use crate::error::Result;
use crate::fincat::{Arrow, FinCat, Obj};

/// Unique printable names for objects and non-identity arrows of a table category.
struct Names {
    objects: Vec<String>,
    arrows: HashMap<Arrow, String>,
}

fn unique(raw: &str, used: &mut HashSet<String>, arrow: bool) -> String {
    let mut base = raw.chars().filter(|&c| c != '"').collect::<String>();
    if base.is_empty() || (arrow && base.starts_with("id_")) {
        base = format!("_{base}");
    }
    let mut name = base.clone();
    let mut k = 1;
    while used.contains(&name) {
        k += 1;
        name = format!("{base}~{k}");
    }
    used.insert(name.clone());
    name
}

impl Names {
    fn new(c: &FinCat) -> Result<Names> {
        let mut used = HashSet::new();
        let mut objects = Vec::new();
        for a in c.objects() {
            objects.push(unique(c.name(a), &mut used, false));
        }
        let mut used: HashSet<String> = objects.iter().map(|o| format!("id_{o}")).collect();
        let mut arrows = HashMap::new();
        let all: Vec<Obj> = c.objects().collect();
        for f in c.arrows_among(&all)? {
            let name = if c.is_identity(f) {
                format!("id_{}", objects[f.src.index()])
            } else {
                unique(&c.arrow_name(f), &mut used, true)
            };
            arrows.insert(f, name);
        }
        Ok(Names { objects, arrows })
    }

    fn obj(&self, a: Obj) -> String {
        quote(&self.objects[a.index()])
    }

    fn arrow(&self, f: Arrow) -> String {
        quote(&self.arrows[&f])
    }
}

fn emit_base(out: &mut String, c: &FinCat, names: &Names) -> Result<()> {
    if c.set_size(Obj(0)).is_some() {
        let sizes: Vec<String> = c.objects().map(|a| c.set_size(a).unwrap().to_string()).collect();
        let core: Vec<String> = c.core().iter().map(|&a| c.set_size(a).unwrap().to_string()).collect();
        writeln!(out, "base finset {{\n  sizes {};\n  core {};\n}}", sizes.join(" "), core.join(" ")).unwrap();
        return Ok(());
    }
    let all: Vec<Obj> = c.objects().collect();
    out.push_str("base {\n");
    let objs: Vec<String> = all.iter().map(|&a| names.obj(a)).collect();
    writeln!(out, "  objects {};", objs.join(" ")).unwrap();
    let sorted = c.arrows_among(&all)?;
    for &f in sorted.iter().filter(|f| !c.is_identity(**f)) {
        writeln!(out, "  arrow {} {} {};", names.arrow(f), names.obj(f.src), names.obj(f.tgt)).unwrap();
    }
    for &f in sorted.iter().filter(|f| !c.is_identity(**f)) {
        for &g in sorted.iter().filter(|g| g.src == f.tgt && !c.is_identity(**g)) {
            if let Ok(h) = c.try_compose(g, f) {
                writeln!(out, "  compose {} {} = {};", names.arrow(g), names.arrow(f), names.arrow(h)).unwrap();
            }
        }
    }
    if let Some(t) = c.terminal() {
        writeln!(out, "  terminal {};", names.obj(t)).unwrap();
    }
    for &a in &all {
        for &b in &all {
            if let Some(p) = c.product(a, b) {
                writeln!(
                    out,
                    "  product {} {} = {} {} {};",
                    names.obj(a),
                    names.obj(b),
                    names.obj(p.obj),
                    names.arrow(p.pr1),
                    names.arrow(p.pr2)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    let core = c.core();
    if core.len() != all.len() {
        let cs: Vec<String> = core.iter().map(|&a| names.obj(a)).collect();
        writeln!(out, "core {{ {} }}", cs.join(" ")).unwrap();
    }
    Ok(())
}

/// Emits a bare category (no fibers). Finite-set windows are emitted by their sizes.
pub fn emit_category(c: &FinCat) -> Result<String> {
    let names = if c.is_table() { Names::new(c)? } else { Names { objects: Vec::new(), arrows: HashMap::new() } };
    let mut out = String::new();
    emit_base(&mut out, c, &names)?;
    Ok(out)
}

/// Emits a doctrine over a table base (or the subset doctrine of a finite-set window).
pub fn emit_doctrine(d: &Doctrine) -> Result<String> {
    let c = d.base();
    if d.is_subsets() {
        let mut out = emit_category(c)?;
        out.push_str("subobjects;\n");
        return Ok(out);
    }
    let names = Names::new(c)?;
    let mut out = String::new();
    emit_base(&mut out, c, &names)?;
    let all: Vec<Obj> = c.objects().collect();
    for &a in &all {
        let fib = d.fiber(a);
        let els: Vec<String> = fib.elements().map(|x| quote(&fib.name(x))).collect();
        writeln!(out, "fiber {} {{\n  elements {};", names.obj(a), els.join(" ")).unwrap();
        for (x, y) in fib.hasse() {
            writeln!(out, "  leq {} {};", quote(&fib.name(x)), quote(&fib.name(y))).unwrap();
        }
        writeln!(out, "  top {};\n}}", quote(&fib.name(fib.top()))).unwrap();
    }
    for f in c.arrows_among(&all)? {
        if c.is_identity(f) {
            continue;
        }
        let (src, tgt) = (d.fiber(f.src), d.fiber(f.tgt));
        writeln!(out, "reindex {} {{", names.arrow(f)).unwrap();
        for x in tgt.elements() {
            writeln!(out, "  {} -> {};", quote(&tgt.name(x)), quote(&src.name(d.pull(f, x)))).unwrap();
        }
        out.push_str("}\n");
    }
    Ok(out)
}

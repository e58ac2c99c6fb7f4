use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::is_per;
use super::tp::{carriers, PerObject, Tp};
use crate::allegory::{rel_compose, Rel};
use crate::config::Config;
use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, Arrow, FinCat, FunctorData, Obj, TableSpec};
use crate::structure::{discover_elementary, discover_existential};

/// A class of base arrows identified by the target relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpArrow {
    /// The member with the least identifier.
    pub rep: Arrow,
    pub members: Vec<Arrow>,
}

/// Q_P with its descent doctrine. Arrow `k` of `hom(a, b)` is `classes[(a, b)][k]`;
/// the fiber over object `a` lists `des[a]` in order.
#[derive(Debug)]
pub struct Qp {
    pub cat: FinCat,
    pub objects: Vec<PerObject>,
    pub classes: BTreeMap<(Obj, Obj), Vec<QpArrow>>,
    pub des: Vec<Vec<Elem>>,
    pub doctrine: Arc<Doctrine>,
}

impl Qp {
    pub fn object_of(&self, carrier: Obj, rho: Elem) -> Option<Obj> {
        self.objects.binary_search(&PerObject { carrier, rho }).ok().map(|i| Obj(i as u32))
    }

    pub fn class(&self, f: Arrow) -> &QpArrow {
        &self.classes[&(f.src, f.tgt)][f.idx as usize]
    }

    /// The class containing a base arrow between the carriers of `a` and `b`.
    pub fn class_of(&self, a: Obj, b: Obj, base: Arrow) -> Option<Arrow> {
        let hom = self.classes.get(&(a, b))?;
        hom.iter().position(|k| k.members.contains(&base)).map(|i| Arrow { src: a, tgt: b, idx: i as u64 })
    }
}

/// `ρ ≤ P_{f×g}(σ)`.
fn related(d: &Doctrine, rho: Elem, sigma: Elem, f: Arrow, g: Arrow) -> Result<bool> {
    let c = d.base();
    let aa = c.prod(f.src, f.src)?;
    Ok(d.leq(aa.obj, rho, d.pull(c.cross(f, g)?, sigma)))
}

fn arrow_classes(d: &Doctrine, a: PerObject, b: PerObject, cfg: &Config) -> Result<Vec<QpArrow>> {
    let c = d.base();
    if c.hom_size(a.carrier, b.carrier) > cfg.cap_enum {
        return Err(Error::cap(format!("hom({}, {})", c.name(a.carrier), c.name(b.carrier)), cfg.cap_enum));
    }
    let mut admissible = Vec::new();
    for f in c.hom(a.carrier, b.carrier)? {
        if related(d, a.rho, b.rho, f, f)? {
            admissible.push(f);
        }
    }
    let n = admissible.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = related(d, a.rho, b.rho, admissible[i], admissible[j])?;
        }
    }
    let witness = |i: usize, j: usize| format!("({}, {})", c.arrow_name(admissible[i]), c.arrow_name(admissible[j]));
    for i in 0..n {
        for j in 0..n {
            if rel[i * n + j] && !rel[j * n + i] {
                return Err(Error::violation("ArrowIdentificationSymmetry", witness(i, j)));
            }
            for k in 0..n {
                if rel[i * n + j] && rel[j * n + k] && !rel[i * n + k] {
                    return Err(Error::violation("ArrowIdentificationTransitivity", witness(i, k)));
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let members: Vec<Arrow> = (0..n).filter(|&j| rel[i * n + j]).map(|j| admissible[j]).collect();
        for j in 0..n {
            assigned[j] |= rel[i * n + j];
        }
        out.push(QpArrow { rep: admissible[i], members });
    }
    Ok(out)
}

/// `Des_ρ = {α : P_pr1(α) ∧ ρ ≤ P_pr2(α)}`, checked to be closed under top and meets.
fn descent(d: &Doctrine, o: PerObject, label: &str) -> Result<Vec<Elem>> {
    let c = d.base();
    let aa = c.prod(o.carrier, o.carrier)?;
    let fiber = d.fiber(o.carrier);
    let des: Vec<Elem> = fiber
        .elements()
        .filter(|&x| d.leq(aa.obj, d.meet(aa.obj, d.pull(aa.pr1, x), o.rho), d.pull(aa.pr2, x)))
        .collect();
    if !des.contains(&fiber.top()) {
        return Err(Error::DesNotClosed(format!("top over {label}")));
    }
    for &x in &des {
        for &y in &des {
            if !des.contains(&fiber.meet(x, y)) {
                return Err(Error::DesNotClosed(format!("{} ∧ {} over {label}", fiber.name(x), fiber.name(y))));
            }
        }
    }
    Ok(des)
}

pub fn build_qp(d: &Doctrine, cfg: &Config) -> Result<Qp> {
    let c = d.base();
    let delta = discover_elementary(d, cfg.cap_enum)?;
    discover_existential(d)?;
    let mut objects = Vec::new();
    for a in carriers(c) {
        let aa = c.prod(a, a)?;
        let da = delta.at(d, a)?;
        for rho in d.fiber(aa.obj).elements() {
            if d.leq(aa.obj, da, rho) && is_per(d, a, rho)? {
                objects.push(PerObject { carrier: a, rho });
            }
        }
    }
    objects.sort();
    let n = objects.len();
    let names: Vec<String> = objects
        .iter()
        .map(|o| {
            let aa = c.prod(o.carrier, o.carrier)?;
            Ok(format!("({}, {})", c.name(o.carrier), d.elem_name(aa.obj, o.rho)))
        })
        .collect::<Result<_>>()?;
    let mut classes = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            classes.insert((Obj(a as u32), Obj(b as u32)), arrow_classes(d, objects[a], objects[b], cfg)?);
        }
    }
    let find = |a: Obj, b: Obj, base: Arrow| -> Result<u64> {
        classes[&(a, b)]
            .iter()
            .position(|k: &QpArrow| k.members.contains(&base))
            .map(|i| i as u64)
            .ok_or_else(|| Error::violation("ClassClosure", c.arrow_name(base)))
    };
    let mut spec = TableSpec {
        objects: names.clone(),
        homs: BTreeMap::new(),
        identity: Vec::with_capacity(n),
        compose: HashMap::new(),
        products: None,
    };
    for (&(a, b), hom) in &classes {
        spec.homs.insert((a, b), hom.iter().map(|k| format!("[{}]", c.arrow_name(k.rep))).collect());
    }
    for (i, o) in objects.iter().enumerate() {
        let a = Obj(i as u32);
        spec.identity.push(find(a, a, c.identity(o.carrier))?);
    }
    for (&(a, b), hom_ab) in &classes {
        for (i, f) in hom_ab.iter().enumerate() {
            for cc in 0..n as u32 {
                let cc = Obj(cc);
                for (j, g) in classes[&(b, cc)].iter().enumerate() {
                    let (fi, gj) = (Arrow { src: a, tgt: b, idx: i as u64 }, Arrow { src: b, tgt: cc, idx: j as u64 });
                    if spec.identity[a.index()] == fi.idx && a == b || spec.identity[b.index()] == gj.idx && b == cc {
                        continue;
                    }
                    let k = find(a, cc, c.try_compose(g.rep, f.rep)?)?;
                    spec.compose.insert((gj, fi), Arrow { src: a, tgt: cc, idx: k });
                }
            }
        }
    }
    let cat = FinCat::from_table(spec)?;
    let all: Vec<Obj> = cat.objects().collect();
    let cat = cat.with_core(all, c.is_window());
    validate_category(&cat)?;

    let des: Vec<Vec<Elem>> = objects.iter().zip(&names).map(|(&o, l)| descent(d, o, l)).collect::<Result<_>>()?;
    let mut fibers = Vec::with_capacity(n);
    for (o, ds) in objects.iter().zip(&des) {
        if ds.len() > cfg.cap_fibers {
            return Err(Error::cap("descent fiber".to_string(), cfg.cap_fibers as u64));
        }
        fibers.push(d.fiber(o.carrier).suborder(ds)?);
    }
    // reindexing along a class is reindexing along any member
    let mut maps = HashMap::new();
    for (&(a, b), hom) in &classes {
        for (i, k) in hom.iter().enumerate() {
            let arrow = Arrow { src: a, tgt: b, idx: i as u64 };
            if cat.is_identity(arrow) {
                continue;
            }
            let mut map = Vec::with_capacity(des[b.index()].len());
            for &x in &des[b.index()] {
                let y = d.pull(k.rep, x);
                for &m in &k.members {
                    if d.pull(m, x) != y {
                        return Err(Error::violation(
                            "RepresentativeIndependence",
                            format!("({}, {})", c.arrow_name(m), d.elem_name(objects[b.index()].carrier, x)),
                        ));
                    }
                }
                let pos = des[a.index()].iter().position(|&z| z == y).ok_or_else(|| {
                    Error::violation(
                        "DescentStability",
                        format!("({}, {})", c.arrow_name(k.rep), d.elem_name(objects[b.index()].carrier, x)),
                    )
                })?;
                map.push(Elem(pos as u32));
            }
            maps.insert(arrow, map);
        }
    }
    let doctrine = Arc::new(Doctrine::from_tables(cat.clone(), fibers, maps)?);
    Ok(Qp { cat, objects, classes, des, doctrine })
}

/// L : Q_P → ER(P), the identity on objects and `[f] ↦ ρ ; P_{f×id}(σ)`.
/// Returns the functor and the arrows where the `∃_{id×f}` form could not be compared.
pub fn functor_l<'a>(d: &Doctrine, qp: &'a Qp, er: &'a Tp) -> Result<(FunctorData<'a>, Vec<String>)> {
    let c = d.base();
    let mut l = FunctorData::new(&qp.cat, &er.cat);
    for (i, o) in qp.objects.iter().enumerate() {
        let t = er
            .object_of(o.carrier, o.rho)
            .ok_or_else(|| Error::MissingEntry(format!("{} in ER(P)", qp.cat.name(Obj(i as u32)))))?;
        l.objects.insert(Obj(i as u32), t);
    }
    let mut skipped = Vec::new();
    for (&(a, b), hom) in &qp.classes {
        let (oa, ob) = (qp.objects[a.index()], qp.objects[b.index()]);
        let (ca, cb) = (oa.carrier, ob.carrier);
        let rho = Rel { src: ca, tgt: ca, elem: oa.rho };
        let sigma = Rel { src: cb, tgt: cb, elem: ob.rho };
        for (i, k) in hom.iter().enumerate() {
            let form2 = |f: Arrow| -> Result<Elem> {
                let pulled = d.pull(c.cross(f, c.identity(cb))?, ob.rho);
                Ok(rel_compose(d, rho, Rel { src: ca, tgt: cb, elem: pulled })?.elem)
            };
            let value = form2(k.rep)?;
            let label = || format!("[{}]", c.arrow_name(k.rep));
            for &m in &k.members {
                if form2(m)? != value {
                    return Err(Error::FormulaMismatch(format!(
                        "{} depends on the representative {}",
                        label(),
                        c.arrow_name(m)
                    )));
                }
            }
            match d.exists(c.cross(c.identity(ca), k.rep)?) {
                Ok(ex) => {
                    let form1 = rel_compose(d, Rel { src: ca, tgt: cb, elem: ex[oa.rho.index()] }, sigma)?.elem;
                    if form1 != value {
                        return Err(Error::FormulaMismatch(format!("the two forms of L{} differ", label())));
                    }
                }
                Err(Error::NoAdjoint { .. }) => skipped.push(label()),
                Err(e) => return Err(e),
            }
            let image =
                er.arrow_of(l.objects[&a], l.objects[&b], value).ok_or_else(|| Error::violation("LArrow", label()))?;
            l.arrows.insert(Arrow { src: a, tgt: b, idx: i as u64 }, image);
        }
    }
    Ok((l, skipped))
}

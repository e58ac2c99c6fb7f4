use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{is_functional, is_per};
use crate::allegory::{rel_compose, Rel};
use crate::config::{ConditionV, Config};
use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{iso_classes, validate_category, Arrow, FinCat, FunctorData, IsoClasses, Obj, TableSpec};
use crate::par;
use crate::structure::{discover_elementary, discover_existential, ElementaryWitness};

/// A carrier with a partial equivalence relation on it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PerObject {
    pub carrier: Obj,
    pub rho: Elem,
}

/// T(P), or its full subcategory ER(P), as an explicit table category.
/// Arrow `k` of `hom(a, b)` is the relation `homs[(a, b)][k]`.
#[derive(Debug)]
pub struct Tp {
    pub cat: FinCat,
    pub objects: Vec<PerObject>,
    pub homs: BTreeMap<(Obj, Obj), Vec<Elem>>,
    pub delta: ElementaryWitness,
    pub condition_v: ConditionV,
}

impl Tp {
    pub fn object_of(&self, carrier: Obj, rho: Elem) -> Option<Obj> {
        let key = PerObject { carrier, rho };
        self.objects.binary_search(&key).ok().map(|i| Obj(i as u32))
    }

    pub fn per(&self, a: Obj) -> PerObject {
        self.objects[a.index()]
    }

    /// The relation underlying an arrow.
    pub fn element(&self, f: Arrow) -> Elem {
        self.homs[&(f.src, f.tgt)][f.idx as usize]
    }

    pub fn arrow_of(&self, a: Obj, b: Obj, phi: Elem) -> Option<Arrow> {
        let hom = self.homs.get(&(a, b))?;
        hom.iter().position(|&x| x == phi).map(|i| Arrow { src: a, tgt: b, idx: i as u64 })
    }

    pub fn all_objects(&self) -> Vec<Obj> {
        self.cat.objects().collect()
    }

    pub fn iso_classes(&self) -> Result<IsoClasses> {
        iso_classes(&self.cat, &self.all_objects())
    }

    /// The inclusion of `self` into `other` on matching objects and relations.
    pub fn embed<'a>(&'a self, other: &'a Tp) -> Result<FunctorData<'a>> {
        let mut f = FunctorData::new(&self.cat, &other.cat);
        let missing = |what: String| Error::MissingEntry(format!("{what} in the target completion"));
        for (i, o) in self.objects.iter().enumerate() {
            let t = other.object_of(o.carrier, o.rho).ok_or_else(|| missing(self.cat.name(Obj(i as u32)).into()))?;
            f.objects.insert(Obj(i as u32), t);
        }
        for (&(a, b), hom) in &self.homs {
            for (k, &phi) in hom.iter().enumerate() {
                let g = other
                    .arrow_of(f.objects[&a], f.objects[&b], phi)
                    .ok_or_else(|| missing(format!("relation {phi}")))?;
                f.arrows.insert(Arrow { src: a, tgt: b, idx: k as u64 }, g);
            }
        }
        Ok(f)
    }
}

/// Carriers of a completion: the core of a window, otherwise every object.
pub(crate) fn carriers(c: &FinCat) -> Vec<Obj> {
    if c.is_window() {
        c.core().to_vec()
    } else {
        c.objects().collect()
    }
}

fn enumerate_pers(d: &Doctrine, carriers: &[Obj], cfg: &Config) -> Result<Vec<PerObject>> {
    let c = d.base();
    let mut out = Vec::new();
    for &a in carriers {
        let aa = c.prod(a, a)?;
        let fiber = d.fiber(aa.obj);
        if fiber.len() as u64 > cfg.cap_enum {
            return Err(Error::cap(format!("relations on {}", c.name(a)), cfg.cap_enum));
        }
        let elems: Vec<Elem> = fiber.elements().collect();
        let keep = par::try_map(&elems, |&r| is_per(d, a, r))?;
        out.extend(elems.iter().zip(keep).filter(|(_, k)| *k).map(|(&rho, _)| PerObject { carrier: a, rho }));
    }
    out.sort();
    Ok(out)
}

fn object_name(d: &Doctrine, o: PerObject) -> Result<String> {
    let c = d.base();
    let aa = c.prod(o.carrier, o.carrier)?;
    Ok(format!("({}, {})", c.name(o.carrier), d.elem_name(aa.obj, o.rho)))
}

/// Assembles a table category from objects and relation hom-sets, composing by
/// relational composition and re-verifying the category laws.
fn assemble(
    d: &Doctrine,
    objects: Vec<PerObject>,
    homs: BTreeMap<(Obj, Obj), Vec<Elem>>,
    window: bool,
) -> Result<FinCat> {
    let c = d.base();
    let n = objects.len();
    let mut spec = TableSpec {
        objects: objects.iter().map(|&o| object_name(d, o)).collect::<Result<_>>()?,
        homs: BTreeMap::new(),
        identity: Vec::with_capacity(n),
        compose: HashMap::new(),
        products: None,
    };
    for (&(a, b), hom) in &homs {
        let ab = c.prod(objects[a.index()].carrier, objects[b.index()].carrier)?;
        spec.homs.insert((a, b), hom.iter().map(|&x| d.elem_name(ab.obj, x)).collect());
    }
    for (i, o) in objects.iter().enumerate() {
        let a = Obj(i as u32);
        let k = homs[&(a, a)]
            .iter()
            .position(|&x| x == o.rho)
            .ok_or_else(|| Error::violation("IdentityArrow", spec.objects[i].clone()))?;
        spec.identity.push(k as u64);
    }
    let triples: Vec<(Obj, Obj, Obj)> = (0..n as u32)
        .flat_map(|a| (0..n as u32).flat_map(move |b| (0..n as u32).map(move |cc| (Obj(a), Obj(b), Obj(cc)))))
        .collect();
    let composites = par::try_map(&triples, |&(a, b, cc)| -> Result<Vec<((Arrow, Arrow), Arrow)>> {
        let (oa, ob, oc) = (objects[a.index()], objects[b.index()], objects[cc.index()]);
        let mut out = Vec::new();
        for (i, &phi) in homs[&(a, b)].iter().enumerate() {
            if i as u64 == spec.identity[a.index()] && a == b {
                continue;
            }
            for (j, &psi) in homs[&(b, cc)].iter().enumerate() {
                if j as u64 == spec.identity[b.index()] && b == cc {
                    continue;
                }
                let r = rel_compose(
                    d,
                    Rel { src: oa.carrier, tgt: ob.carrier, elem: phi },
                    Rel { src: ob.carrier, tgt: oc.carrier, elem: psi },
                )?;
                let k = homs[&(a, cc)].iter().position(|&x| x == r.elem).ok_or_else(|| {
                    Error::violation(
                        "CompositionClosure",
                        format!("({}, {}) via {}", phi, psi, spec.objects[b.index()]),
                    )
                })?;
                let arr = |s: Obj, t: Obj, idx: usize| Arrow { src: s, tgt: t, idx: idx as u64 };
                out.push(((arr(b, cc, j), arr(a, b, i)), arr(a, cc, k)));
            }
        }
        Ok(out)
    })?;
    spec.compose = composites.into_iter().flatten().collect();
    let cat = FinCat::from_table(spec)?;
    let all: Vec<Obj> = cat.objects().collect();
    let cat = cat.with_core(all, window);
    validate_category(&cat)?;
    Ok(cat)
}

/// T(P): partial equivalence relations over the carriers and functional relations between them.
pub fn build_tp(d: &Doctrine, cfg: &Config) -> Result<Tp> {
    let c = d.base();
    let delta = discover_elementary(d, cfg.cap_enum)?;
    discover_existential(d)?;
    let objects = enumerate_pers(d, &carriers(c), cfg)?;
    let n = objects.len();
    let pairs: Vec<(Obj, Obj)> = (0..n as u32).flat_map(|a| (0..n as u32).map(move |b| (Obj(a), Obj(b)))).collect();
    let hom_lists = par::try_map(&pairs, |&(a, b)| -> Result<Vec<Elem>> {
        let (oa, ob) = (objects[a.index()], objects[b.index()]);
        let ab = c.prod(oa.carrier, ob.carrier)?;
        let fiber = d.fiber(ab.obj);
        if fiber.len() as u64 > cfg.cap_enum {
            return Err(Error::cap(format!("relations {} ⇸ {}", c.name(oa.carrier), c.name(ob.carrier)), cfg.cap_enum));
        }
        let mut out = Vec::new();
        for phi in fiber.elements() {
            if is_functional(d, (oa.carrier, oa.rho), (ob.carrier, ob.rho), phi, cfg.condition_v)? {
                out.push(phi);
            }
        }
        Ok(out)
    })?;
    let homs: BTreeMap<(Obj, Obj), Vec<Elem>> = pairs.into_iter().zip(hom_lists).collect();
    let cat = assemble(d, objects.clone(), homs.clone(), c.is_window())?;
    Ok(Tp { cat, objects, homs, delta, condition_v: cfg.condition_v })
}

/// ER(P): the full subcategory of T(P) on the reflexive relations, `δ_A ≤ ρ`.
pub fn build_erp(d: &Doctrine, tp: &Tp) -> Result<Tp> {
    let c = d.base();
    let mut keep = Vec::new();
    for (i, o) in tp.objects.iter().enumerate() {
        let aa = c.prod(o.carrier, o.carrier)?;
        if d.leq(aa.obj, tp.delta.at(d, o.carrier)?, o.rho) {
            keep.push(Obj(i as u32));
        }
    }
    let objects: Vec<PerObject> = keep.iter().map(|&o| tp.objects[o.index()]).collect();
    let mut homs = BTreeMap::new();
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            homs.insert((Obj(i as u32), Obj(j as u32)), tp.homs[&(a, b)].clone());
        }
    }
    let cat = FinCat::from_table(tp.cat.to_table_spec(&keep)?)?;
    let all: Vec<Obj> = cat.objects().collect();
    let cat = cat.with_core(all, tp.cat.is_window());
    Ok(Tp { cat, objects, homs, delta: tp.delta.clone(), condition_v: tp.condition_v })
}

/// D : C → ER(P), `A ↦ (A, δ_A)` and `f ↦ ∃_⟨id,f⟩(⊤)`, cross-checked against `P_{f×id}(δ_B)`.
pub fn functor_d<'a>(d: &'a Doctrine, er: &'a Tp) -> Result<FunctorData<'a>> {
    let c = d.base();
    let mut f = FunctorData::new(c, &er.cat);
    let objs = carriers(c);
    for &a in &objs {
        let delta = er.delta.at(d, a)?;
        let o = er
            .object_of(a, delta)
            .ok_or_else(|| Error::violation("DObject", format!("(A, δ_A) missing for {}", c.name(a))))?;
        f.objects.insert(a, o);
    }
    for g in c.arrows_among(&objs)? {
        let (a, b) = (g.src, g.tgt);
        let graph = d.exists_at(c.pair(c.identity(a), g)?, d.top(a))?;
        let pulled = d.pull(c.cross(g, c.identity(b))?, er.delta.at(d, b)?);
        if graph != pulled {
            let ab = c.prod(a, b)?;
            return Err(Error::FormulaMismatch(format!(
                "D({}): ∃ gives {}, reindexing gives {}",
                c.arrow_name(g),
                d.elem_name(ab.obj, graph),
                d.elem_name(ab.obj, pulled)
            )));
        }
        let image = er
            .arrow_of(f.objects[&a], f.objects[&b], graph)
            .ok_or_else(|| Error::violation("DArrow", c.arrow_name(g)))?;
        f.arrows.insert(g, image);
    }
    Ok(f)
}

use std::sync::Arc;

use super::tp::carriers;
use crate::config::Config;
use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, FunctorData, Obj};
use crate::structure::{discover_elementary, discover_existential};

/// The category of points Gr(P) with the doctrine `P̂(A,α) = {γ ≤ α}`.
///
/// Elements of `P̂(A,α)` are numbered by their position in the downset of `α`.
#[derive(Debug)]
pub struct Gr {
    pub cat: FinCat,
    pub doctrine: Arc<Doctrine>,
    pub source: Arc<Doctrine>,
    downsets: Arc<Vec<Vec<Elem>>>,
}

fn local(downset: &[Elem], x: Elem) -> Elem {
    match downset.binary_search(&x) {
        Ok(i) => Elem(i as u32),
        Err(_) => panic!("{x} lies outside the downset"),
    }
}

impl Gr {
    /// The element of `P(A)` named by a local element of `P̂(A,α)`.
    pub fn global(&self, point: Obj, x: Elem) -> Elem {
        self.downsets[point.index()][x.index()]
    }

    pub fn local(&self, point: Obj, x: Elem) -> Option<Elem> {
        let ds = &self.downsets[point.index()];
        ds.binary_search(&x).ok().map(|i| Elem(i as u32))
    }

    /// `I(A) = (A, ⊤)`.
    pub fn include(&self, a: Obj) -> Obj {
        self.cat.point_object(a, self.source.top(a)).expect("every top is a point")
    }

    /// The inclusion `I : C → Gr(P)` over the carriers.
    pub fn inclusion(&self) -> Result<FunctorData<'_>> {
        let c = self.source.base();
        let mut f = FunctorData::new(c, &self.cat);
        let objs = carriers(c);
        for &a in &objs {
            f.objects.insert(a, self.include(a));
        }
        for g in c.arrows_among(&objs)? {
            f.arrows.insert(g, Arrow { src: self.include(g.src), tgt: self.include(g.tgt), idx: g.idx });
        }
        Ok(f)
    }
}

pub fn build_gr(d: Arc<Doctrine>, cfg: &Config) -> Result<Gr> {
    discover_elementary(&d, cfg.cap_enum)?;
    discover_existential(&d)?;
    let cat = FinCat::points(d.clone(), carriers(d.base()));
    let mut points = Vec::with_capacity(cat.num_objects());
    let mut downsets = Vec::with_capacity(cat.num_objects());
    let mut fibers = Vec::with_capacity(cat.num_objects());
    for p in cat.objects() {
        let (a, alpha) = cat.point(p).expect("points category");
        let fiber = d.fiber(a);
        let ds: Vec<Elem> = fiber.elements().filter(|&g| fiber.leq(g, alpha)).collect();
        if ds.len() > cfg.cap_fibers {
            return Err(Error::cap(format!("fiber over {}", cat.name(p)), cfg.cap_fibers as u64));
        }
        fibers.push(Arc::new(fiber.suborder(&ds)?));
        downsets.push(ds);
        points.push((a, alpha));
    }
    let downsets = Arc::new(downsets);
    let (src, ds) = (d.clone(), downsets.clone());
    // P̂_f(γ) = α ∧ P_f(γ) for f : (A,α) → (B,β)
    let reindex = move |f: Arrow, x: Elem| {
        let (a, alpha) = points[f.src.index()];
        let (b, _) = points[f.tgt.index()];
        let g = src.pull(Arrow { src: a, tgt: b, idx: f.idx }, ds[f.tgt.index()][x.index()]);
        local(&ds[f.src.index()], src.meet(a, alpha, g))
    };
    let doctrine = Arc::new(Doctrine::from_fn(cat.clone(), fibers, Arc::new(reindex)));
    Ok(Gr { cat, doctrine, source: d, downsets })
}

//! Finite category kernel.
//!
//! A [`FinCat`] is either an explicit table presentation, a window of the
//! category of finite sets (arrows are functions, composed on demand), or the
//! category of points of a doctrine. All three expose the same interface:
//! identifiers, hom enumeration, composition and chosen products.
//!
//! Arrows are identified by `(source, target, index within the hom-set)`, so
//! identifier order is total and every enumeration is deterministic.

mod functor;
mod limits;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};

pub use functor::{check_equivalence, EquivalenceVerdict, FunctorData};
pub use limits::{
    check_exact, enumerate_pullbacks, find_products, image_factorization, is_coequalizer, is_iso, is_mono,
    is_regular_epi, iso_classes, Clause, Cone, ExactnessVerdict, IsoClasses,
};
pub use validate::{validate_category, validate_products};

/// Largest hom-set enumerated in one go.
pub const DEFAULT_HOM_CAP: u64 = 1 << 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Obj(pub u32);

impl Obj {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub src: Obj,
    pub tgt: Obj,
    pub idx: u64,
}

/// A chosen binary product with its projections.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prod {
    pub obj: Obj,
    pub pr1: Arrow,
    pub pr2: Arrow,
}

/// Left-nested ternary product `(A×B)×C` with its three projections.
#[derive(Copy, Clone, Debug)]
pub struct Prod3 {
    pub obj: Obj,
    pub inner: Prod,
    pub outer: Prod,
    pub p: [Arrow; 3],
}

/// Chosen terminal object and binary products of a table presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductChoice {
    pub terminal: Option<Obj>,
    pub binary: BTreeMap<(Obj, Obj), Prod>,
}

/// Core objects for quantified checks, and the objects their pair and triple
/// products land on. `window` marks a finite window of a larger ambient
/// category: limits that fall outside it are reported, not treated as absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowScope {
    pub core: Vec<Obj>,
    pub closure: Vec<Obj>,
    pub window: bool,
}

#[derive(Clone, Debug)]
pub struct TableSpec {
    pub objects: Vec<String>,
    /// Every arrow, identities included, keyed by `(source, target)`.
    pub homs: BTreeMap<(Obj, Obj), Vec<String>>,
    /// Index of the identity inside `hom(A, A)`.
    pub identity: Vec<u64>,
    /// Composites `g∘f` keyed by `(g, f)`. Pairs involving an identity may be omitted.
    pub compose: HashMap<(Arrow, Arrow), Arrow>,
    pub products: Option<ProductChoice>,
}

#[derive(Clone, Debug)]
struct Table {
    homs: Vec<Vec<String>>,
    identity: Vec<u64>,
    compose: HashMap<(Arrow, Arrow), Arrow>,
    products: Option<ProductChoice>,
}

#[derive(Clone, Debug)]
struct FinSets {
    sizes: Vec<u32>,
    by_size: HashMap<u32, Obj>,
}

#[derive(Clone, Debug)]
struct Points {
    doctrine: Arc<Doctrine>,
    points: Vec<(Obj, Elem)>,
    index: HashMap<(Obj, Elem), Obj>,
}

#[derive(Clone, Debug)]
enum Kind {
    Table(Table),
    FinSets(FinSets),
    Points(Points),
}

/// A finite category presentation together with its window scope.
#[derive(Clone, Debug)]
pub struct FinCat {
    names: Vec<String>,
    kind: Kind,
    scope: WindowScope,
    hom_cap: u64,
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl FinCat {
    /// Builds an explicit table presentation. Typing of the composition table is
    /// checked here; the category laws are left to [`validate_category`].
    pub fn from_table(spec: TableSpec) -> Result<Self> {
        let n = spec.objects.len();
        if spec.identity.len() != n {
            return Err(Error::MalformedPresentation(format!("{} identities for {} objects", spec.identity.len(), n)));
        }
        let mut homs = vec![Vec::new(); n * n];
        for (&(a, b), arrows) in &spec.homs {
            if a.index() >= n || b.index() >= n {
                return Err(Error::MalformedPresentation(format!("hom ({a},{b}) has a dangling object")));
            }
            homs[a.index() * n + b.index()] = arrows.clone();
        }
        for (a, &id) in spec.identity.iter().enumerate() {
            if id as usize >= homs[a * n + a].len() {
                return Err(Error::MalformedPresentation(format!("identity of {} is not an arrow", spec.objects[a])));
            }
        }
        let table = Table { homs, identity: spec.identity, compose: spec.compose, products: spec.products };
        for (&(g, f), &h) in &table.compose {
            for x in [g, f, h] {
                if x.src.index() >= n
                    || x.tgt.index() >= n
                    || x.idx as usize >= table.homs[x.src.index() * n + x.tgt.index()].len()
                {
                    return Err(Error::MalformedPresentation(format!("dangling arrow {x:?} in composition table")));
                }
            }
        }
        let cat = FinCat {
            names: spec.objects,
            kind: Kind::Table(table),
            scope: WindowScope { core: Vec::new(), closure: Vec::new(), window: false },
            hom_cap: DEFAULT_HOM_CAP,
        };
        let all: Vec<Obj> = cat.objects().collect();
        Ok(cat.with_core(all, false))
    }

    /// The full subcategory of finite sets on the given cardinalities.
    pub fn finite_sets(sizes: &[u32], core: &[u32]) -> Result<Self> {
        let mut by_size = HashMap::new();
        for (i, &s) in sizes.iter().enumerate() {
            if by_size.insert(s, Obj(i as u32)).is_some() {
                return Err(Error::MalformedPresentation(format!("duplicate set size {s}")));
            }
        }
        let core_objs = core
            .iter()
            .map(|s| {
                by_size
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::MalformedPresentation(format!("core size {s} not in window")))
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = FinCat {
            names: sizes.iter().map(|s| s.to_string()).collect(),
            kind: Kind::FinSets(FinSets { sizes: sizes.to_vec(), by_size }),
            scope: WindowScope { core: Vec::new(), closure: Vec::new(), window: true },
            hom_cap: DEFAULT_HOM_CAP,
        };
        Ok(cat.with_core(core_objs, true))
    }

    /// The category of points `(A, α)` of a doctrine: an arrow `(A,α)→(B,β)` is a
    /// base arrow `f` with `α ≤ P_f(β)`.
    pub(crate) fn points(doctrine: Arc<Doctrine>, core: Vec<Obj>) -> Self {
        let base = doctrine.base();
        let mut points = Vec::new();
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut core_points = Vec::new();
        for a in base.objects() {
            let fiber = doctrine.fiber(a);
            for x in fiber.elements() {
                let id = Obj(points.len() as u32);
                index.insert((a, x), id);
                points.push((a, x));
                names.push(format!("({},{})", base.name(a), fiber.name(x)));
                if core.contains(&a) {
                    core_points.push(id);
                }
            }
        }
        let window = base.scope.window;
        let cat = FinCat {
            names,
            kind: Kind::Points(Points { doctrine, points, index }),
            scope: WindowScope { core: Vec::new(), closure: Vec::new(), window },
            hom_cap: DEFAULT_HOM_CAP,
        };
        cat.with_core(core_points, window)
    }

    /// Replaces the core and recomputes the product closure (pairs and left-nested triples).
    pub fn with_core(mut self, core: Vec<Obj>, window: bool) -> Self {
        let mut closure: Vec<Obj> = core.clone();
        for &a in &core {
            for &b in &core {
                if let Some(ab) = self.product(a, b) {
                    closure.push(ab.obj);
                    for &c in &core {
                        if let Some(abc) = self.product(ab.obj, c) {
                            closure.push(abc.obj);
                        }
                    }
                }
            }
        }
        closure.sort();
        closure.dedup();
        self.scope = WindowScope { core, closure, window };
        self
    }

    pub fn with_hom_cap(mut self, cap: u64) -> Self {
        self.hom_cap = cap;
        self
    }

    pub fn hom_cap(&self) -> u64 {
        self.hom_cap
    }

    pub fn scope(&self) -> &WindowScope {
        &self.scope
    }

    pub fn core(&self) -> &[Obj] {
        &self.scope.core
    }

    pub fn is_window(&self) -> bool {
        self.scope.window
    }

    pub fn is_table(&self) -> bool {
        matches!(self.kind, Kind::Table(_))
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.names.len() as u32).map(Obj)
    }

    pub fn name(&self, a: Obj) -> &str {
        &self.names[a.index()]
    }

    pub fn object(&self, name: &str) -> Option<Obj> {
        self.names.iter().position(|n| n == name).map(|i| Obj(i as u32))
    }

    /// Cardinality of a finite-set object, when this is a finite-set window.
    pub fn set_size(&self, a: Obj) -> Option<u32> {
        match &self.kind {
            Kind::FinSets(fs) => Some(fs.sizes[a.index()]),
            _ => None,
        }
    }

    /// The underlying base object and fiber element of a point, for categories of points.
    pub fn point(&self, a: Obj) -> Option<(Obj, Elem)> {
        match &self.kind {
            Kind::Points(p) => Some(p.points[a.index()]),
            _ => None,
        }
    }

    pub fn point_object(&self, base: Obj, x: Elem) -> Option<Obj> {
        match &self.kind {
            Kind::Points(p) => p.index.get(&(base, x)).copied(),
            _ => None,
        }
    }

    /// The base arrow underlying an arrow of a category of points.
    pub fn underlying(&self, f: Arrow) -> Option<Arrow> {
        match &self.kind {
            Kind::Points(p) => {
                Some(Arrow { src: p.points[f.src.index()].0, tgt: p.points[f.tgt.index()].0, idx: f.idx })
            }
            _ => None,
        }
    }

    pub fn hom_size(&self, a: Obj, b: Obj) -> u64 {
        match &self.kind {
            Kind::Table(t) => t.homs[a.index() * self.names.len() + b.index()].len() as u64,
            Kind::FinSets(fs) => {
                let (n, m) = (fs.sizes[a.index()], fs.sizes[b.index()]);
                (m as u64).checked_pow(n).unwrap_or(u64::MAX)
            }
            Kind::Points(p) => {
                let (pa, pb) = (p.points[a.index()].0, p.points[b.index()].0);
                p.doctrine.base().hom_size(pa, pb)
            }
        }
    }

    /// All arrows `a → b` in identifier order.
    pub fn hom(&self, a: Obj, b: Obj) -> Result<Vec<Arrow>> {
        let size = self.hom_size(a, b);
        if size > self.hom_cap {
            return Err(Error::cap(format!("hom({}, {}) has {size} arrows", self.name(a), self.name(b)), self.hom_cap));
        }
        match &self.kind {
            Kind::Table(_) | Kind::FinSets(_) => Ok((0..size).map(|idx| Arrow { src: a, tgt: b, idx }).collect()),
            Kind::Points(p) => {
                let (ba, alpha) = p.points[a.index()];
                let (bb, beta) = p.points[b.index()];
                let d = &p.doctrine;
                let fa = d.fiber(ba);
                Ok(d.base()
                    .hom(ba, bb)?
                    .into_iter()
                    .filter(|&f| fa.leq(alpha, d.pull(f, beta)))
                    .map(|f| Arrow { src: a, tgt: b, idx: f.idx })
                    .collect())
            }
        }
    }

    /// Every arrow whose endpoints lie in `objs`, in identifier order.
    pub fn arrows_among(&self, objs: &[Obj]) -> Result<Vec<Arrow>> {
        let mut sorted = objs.to_vec();
        sorted.sort();
        let mut out = Vec::new();
        for &a in &sorted {
            for &b in &sorted {
                out.extend(self.hom(a, b)?);
            }
        }
        Ok(out)
    }

    pub fn identity(&self, a: Obj) -> Arrow {
        match &self.kind {
            Kind::Table(t) => Arrow { src: a, tgt: a, idx: t.identity[a.index()] },
            Kind::FinSets(fs) => {
                let n = fs.sizes[a.index()];
                let values: Vec<u32> = (0..n).collect();
                encode(a, a, n, &values)
            }
            Kind::Points(p) => {
                let base = p.doctrine.base().identity(p.points[a.index()].0);
                Arrow { src: a, tgt: a, idx: base.idx }
            }
        }
    }

    pub fn is_identity(&self, f: Arrow) -> bool {
        f.src == f.tgt && self.identity(f.src) == f
    }

    /// `g ∘ f`, or an error when the pair is not composable or the table lacks the entry.
    pub fn try_compose(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        if f.tgt != g.src {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} after {}",
                self.arrow_name(g),
                self.arrow_name(f)
            )));
        }
        if self.is_identity(f) {
            return Ok(g);
        }
        if self.is_identity(g) {
            return Ok(f);
        }
        match &self.kind {
            Kind::Table(t) => t.compose.get(&(g, f)).copied().ok_or_else(|| {
                Error::MissingEntry(format!("composite {} ∘ {}", self.arrow_name(g), self.arrow_name(f)))
            }),
            Kind::FinSets(fs) => {
                let fv = self.values(f);
                let gv = self.values(g);
                let composite: Vec<u32> = fv.iter().map(|&x| gv[x as usize]).collect();
                Ok(encode(f.src, g.tgt, fs.sizes[g.tgt.index()], &composite))
            }
            Kind::Points(p) => {
                let base = p.doctrine.base();
                let h = base.try_compose(self.underlying(g).unwrap(), self.underlying(f).unwrap())?;
                Ok(Arrow { src: f.src, tgt: g.tgt, idx: h.idx })
            }
        }
    }

    /// `g ∘ f` for a validated presentation.
    ///
    /// Panics when the composite is missing; validation rules that out.
    pub fn compose(&self, g: Arrow, f: Arrow) -> Arrow {
        match self.try_compose(g, f) {
            Ok(h) => h,
            Err(e) => panic!("composition on a validated category failed: {e}"),
        }
    }

    /// Function values of a finite-set arrow.
    pub fn values(&self, f: Arrow) -> Vec<u32> {
        match &self.kind {
            Kind::FinSets(fs) => {
                let n = fs.sizes[f.src.index()];
                let m = fs.sizes[f.tgt.index()] as u64;
                let mut rest = f.idx;
                (0..n)
                    .map(|_| {
                        let v = rest % m.max(1);
                        rest /= m.max(1);
                        v as u32
                    })
                    .collect()
            }
            _ => panic!("values() is only defined on finite-set windows"),
        }
    }

    /// The finite-set arrow with the given values.
    pub fn function(&self, src: Obj, tgt: Obj, values: &[u32]) -> Result<Arrow> {
        match &self.kind {
            Kind::FinSets(fs) => {
                let m = fs.sizes[tgt.index()];
                if values.len() != fs.sizes[src.index()] as usize || values.iter().any(|&v| v >= m) {
                    return Err(Error::DomainMismatch(format!(
                        "{values:?} is not a function {}→{}",
                        self.name(src),
                        self.name(tgt)
                    )));
                }
                Ok(encode(src, tgt, m, values))
            }
            _ => Err(Error::DomainMismatch("function() needs a finite-set window".into())),
        }
    }

    pub fn arrow_name(&self, f: Arrow) -> String {
        match &self.kind {
            Kind::Table(t) => t.homs[f.src.index() * self.names.len() + f.tgt.index()]
                .get(f.idx as usize)
                .cloned()
                .unwrap_or_else(|| format!("?{}", f.idx)),
            Kind::FinSets(_) => {
                let vals: Vec<String> = self.values(f).iter().map(|v| v.to_string()).collect();
                format!("{}→{}[{}]", self.name(f.src), self.name(f.tgt), vals.join(""))
            }
            Kind::Points(p) => {
                let base = p.doctrine.base();
                format!("{}:{}→{}", base.arrow_name(self.underlying(f).unwrap()), self.name(f.src), self.name(f.tgt))
            }
        }
    }

    pub fn find_arrow(&self, name: &str) -> Option<Arrow> {
        let n = self.names.len();
        match &self.kind {
            Kind::Table(t) => {
                for a in 0..n {
                    for b in 0..n {
                        if let Some(i) = t.homs[a * n + b].iter().position(|x| x == name) {
                            return Some(Arrow { src: Obj(a as u32), tgt: Obj(b as u32), idx: i as u64 });
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }

    pub fn terminal(&self) -> Option<Obj> {
        match &self.kind {
            Kind::Table(t) => t.products.as_ref().and_then(|p| p.terminal),
            Kind::FinSets(fs) => fs.by_size.get(&1).copied(),
            Kind::Points(p) => {
                let d = &p.doctrine;
                let t = d.base().terminal()?;
                p.index.get(&(t, d.fiber(t).top())).copied()
            }
        }
    }

    /// The chosen product of `a` and `b`, if it lies in the presentation.
    pub fn product(&self, a: Obj, b: Obj) -> Option<Prod> {
        match &self.kind {
            Kind::Table(t) => t.products.as_ref().and_then(|p| p.binary.get(&(a, b)).copied()),
            Kind::FinSets(fs) => {
                let (sa, sb) = (fs.sizes[a.index()], fs.sizes[b.index()]);
                let obj = *fs.by_size.get(&sa.checked_mul(sb)?)?;
                let n = sa * sb;
                let pr1: Vec<u32> = (0..n).map(|k| k / sb).collect();
                let pr2: Vec<u32> = (0..n).map(|k| k % sb).collect();
                Some(Prod { obj, pr1: encode(obj, a, sa, &pr1), pr2: encode(obj, b, sb, &pr2) })
            }
            Kind::Points(p) => {
                let d = &p.doctrine;
                let (ba, alpha) = p.points[a.index()];
                let (bb, beta) = p.points[b.index()];
                let bp = d.base().product(ba, bb)?;
                let fiber = d.fiber(bp.obj);
                let x = fiber.meet(d.pull(bp.pr1, alpha), d.pull(bp.pr2, beta));
                let obj = *p.index.get(&(bp.obj, x))?;
                Some(Prod {
                    obj,
                    pr1: Arrow { src: obj, tgt: a, idx: bp.pr1.idx },
                    pr2: Arrow { src: obj, tgt: b, idx: bp.pr2.idx },
                })
            }
        }
    }

    /// Like [`FinCat::product`], but a missing product is a window-closure error.
    pub fn prod(&self, a: Obj, b: Obj) -> Result<Prod> {
        self.product(a, b).ok_or_else(|| Error::WindowClosure(format!("product {}×{}", self.name(a), self.name(b))))
    }

    pub fn prod3(&self, a: Obj, b: Obj, c: Obj) -> Result<Prod3> {
        let inner = self.prod(a, b)?;
        let outer = self.prod(inner.obj, c)?;
        let p = [self.compose(inner.pr1, outer.pr1), self.compose(inner.pr2, outer.pr1), outer.pr2];
        Ok(Prod3 { obj: outer.obj, inner, outer, p })
    }

    /// The pairing `⟨f, g⟩ : Z → A×B`.
    pub fn pair(&self, f: Arrow, g: Arrow) -> Result<Arrow> {
        if f.src != g.src {
            return Err(Error::DomainMismatch("pairing needs a common source".into()));
        }
        let p = self.prod(f.tgt, g.tgt)?;
        match &self.kind {
            Kind::FinSets(fs) => {
                let sb = fs.sizes[g.tgt.index()];
                let (fv, gv) = (self.values(f), self.values(g));
                let vals: Vec<u32> = fv.iter().zip(&gv).map(|(&x, &y)| x * sb + y).collect();
                Ok(encode(f.src, p.obj, fs.sizes[p.obj.index()], &vals))
            }
            Kind::Points(pt) => {
                let base = pt.doctrine.base();
                let h = base.pair(self.underlying(f).unwrap(), self.underlying(g).unwrap())?;
                Ok(Arrow { src: f.src, tgt: p.obj, idx: h.idx })
            }
            Kind::Table(_) => {
                for h in self.hom(f.src, p.obj)? {
                    if self.try_compose(p.pr1, h)? == f && self.try_compose(p.pr2, h)? == g {
                        return Ok(h);
                    }
                }
                Err(Error::MissingEntry(format!("pairing ⟨{}, {}⟩", self.arrow_name(f), self.arrow_name(g))))
            }
        }
    }

    /// `⟨f, g, h⟩ = ⟨⟨f, g⟩, h⟩` into a left-nested ternary product.
    pub fn pair3(&self, f: Arrow, g: Arrow, h: Arrow) -> Result<Arrow> {
        let fg = self.pair(f, g)?;
        self.pair(fg, h)
    }

    /// `f × g : A×B → A'×B'`.
    pub fn cross(&self, f: Arrow, g: Arrow) -> Result<Arrow> {
        let dom = self.prod(f.src, g.src)?;
        self.pair(self.compose(f, dom.pr1), self.compose(g, dom.pr2))
    }

    /// The diagonal `⟨id, id⟩ : A → A×A`.
    pub fn diagonal(&self, a: Obj) -> Result<Arrow> {
        let id = self.identity(a);
        self.pair(id, id)
    }

    /// The symmetry `⟨pr2, pr1⟩ : A×B → B×A`.
    pub fn swap(&self, a: Obj, b: Obj) -> Result<Arrow> {
        let ab = self.prod(a, b)?;
        self.pair(ab.pr2, ab.pr1)
    }

    /// A copy of a table presentation with a different product choice.
    pub fn with_products(&self, products: ProductChoice) -> Result<Self> {
        match &self.kind {
            Kind::Table(t) => {
                let mut t = t.clone();
                t.products = Some(products);
                let cat = FinCat {
                    names: self.names.clone(),
                    kind: Kind::Table(t),
                    scope: self.scope.clone(),
                    hom_cap: self.hom_cap,
                };
                let core = cat.scope.core.clone();
                let window = cat.scope.window;
                Ok(cat.with_core(core, window))
            }
            _ => Err(Error::DomainMismatch("products can only be replaced on table presentations".into())),
        }
    }

    /// The explicit table of this category restricted to `objs` (all arrows among them).
    pub fn to_table_spec(&self, objs: &[Obj]) -> Result<TableSpec> {
        let mut sorted = objs.to_vec();
        sorted.sort();
        let reindex: HashMap<Obj, Obj> = sorted.iter().enumerate().map(|(i, &o)| (o, Obj(i as u32))).collect();
        let mut homs = BTreeMap::new();
        let mut identity = Vec::new();
        let mut arrow_map = HashMap::new();
        for &a in &sorted {
            identity.push(0);
            for &b in &sorted {
                let hom = self.hom(a, b)?;
                let mut names = Vec::new();
                for (i, f) in hom.iter().enumerate() {
                    names.push(self.arrow_name(*f));
                    arrow_map.insert(*f, Arrow { src: reindex[&a], tgt: reindex[&b], idx: i as u64 });
                }
                homs.insert((reindex[&a], reindex[&b]), names);
            }
        }
        // identity indices are positions within the restricted hom lists
        for (i, &a) in sorted.iter().enumerate() {
            identity[i] = arrow_map[&self.identity(a)].idx;
        }
        let mut compose = HashMap::new();
        for &a in &sorted {
            for &b in &sorted {
                for f in self.hom(a, b)? {
                    for &c in &sorted {
                        for g in self.hom(b, c)? {
                            if self.is_identity(f) || self.is_identity(g) {
                                continue;
                            }
                            compose.insert((arrow_map[&g], arrow_map[&f]), arrow_map[&self.try_compose(g, f)?]);
                        }
                    }
                }
            }
        }
        let products = {
            let mut pc = ProductChoice { terminal: None, binary: BTreeMap::new() };
            if let Some(t) = self.terminal() {
                pc.terminal = reindex.get(&t).copied();
            }
            for &a in &sorted {
                for &b in &sorted {
                    if let Some(p) = self.product(a, b) {
                        if let (Some(&o), Some(&p1), Some(&p2)) =
                            (reindex.get(&p.obj), arrow_map.get(&p.pr1), arrow_map.get(&p.pr2))
                        {
                            pc.binary.insert((reindex[&a], reindex[&b]), Prod { obj: o, pr1: p1, pr2: p2 });
                        }
                    }
                }
            }
            if pc.terminal.is_none() && pc.binary.is_empty() {
                None
            } else {
                Some(pc)
            }
        };
        Ok(TableSpec {
            objects: sorted.iter().map(|&o| self.name(o).to_string()).collect(),
            homs,
            identity,
            compose,
            products,
        })
    }
}

fn encode(src: Obj, tgt: Obj, m: u32, values: &[u32]) -> Arrow {
    let mut idx = 0u64;
    for &v in values.iter().rev() {
        idx = idx * m as u64 + v as u64;
    }
    Arrow { src, tgt, idx }
}

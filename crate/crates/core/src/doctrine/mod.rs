//! Indexed finite inf-semilattices over a finite base.

mod fiber;
mod sub;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, Obj};

pub use fiber::{Elem, Fiber};
pub use sub::{factors, sub_doctrine, subobjects, weak_sub_doctrine};

/// A map between fibers given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: Arc<Fiber>,
    pub target: Arc<Fiber>,
    pub values: Vec<Elem>,
}

impl MonotoneMap {
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x.index()]
    }

    pub fn is_monotone(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements().all(|x| s.elements().all(|y| !s.leq(x, y) || t.leq(self.apply(x), self.apply(y))))
    }

    /// First failure of top or meet preservation, as a human-readable witness.
    pub fn homomorphism_failure(&self) -> Option<(&'static str, String)> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.top()) != t.top() {
            return Some(("TopPreservation", s.name(s.top())));
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.apply(s.meet(x, y)) != t.meet(self.apply(x), self.apply(y)) {
                    return Some(("MeetPreservation", format!("{} ∧ {}", s.name(x), s.name(y))));
                }
            }
        }
        None
    }
}

/// The left adjoint `e` of `h`: `e(α) = min {β : α ≤ h(β)}`, verified minimal.
pub fn left_adjoint(h: &MonotoneMap) -> Result<MonotoneMap> {
    let (dom, cod) = (&h.source, &h.target);
    let values = cod
        .elements()
        .map(|alpha| {
            let upper = dom.elements().filter(|&b| cod.leq(alpha, h.apply(b)));
            let candidate = dom.meet_all(upper);
            if cod.leq(alpha, h.apply(candidate)) {
                Ok(candidate)
            } else {
                Err(Error::NoAdjoint { witness: cod.name(alpha) })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonotoneMap { source: cod.clone(), target: dom.clone(), values })
}

type ReindexFn = dyn Fn(Arrow, Elem) -> Elem + Send + Sync;

#[derive(Clone)]
pub(crate) enum Reindex {
    /// Explicit maps for every non-identity arrow.
    Table(HashMap<Arrow, Vec<Elem>>),
    /// Inverse image of subsets along finite-set functions.
    Preimage,
    Func(Arc<ReindexFn>),
}

/// A doctrine over a finite base: one fiber per object, reindexing per arrow.
pub struct Doctrine {
    base: FinCat,
    fibers: Vec<Arc<Fiber>>,
    reindex: Reindex,
    exists: Mutex<HashMap<Arrow, Arc<Vec<Elem>>>>,
}

impl fmt::Debug for Doctrine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Doctrine")
            .field("objects", &self.base.num_objects())
            .field("fiber_sizes", &self.fibers.iter().map(|x| x.len()).collect::<Vec<_>>())
            .finish()
    }
}

impl Doctrine {
    /// A doctrine whose reindexing is given by explicit tables. Every
    /// non-identity arrow of the base must have a total map of the right shape.
    pub fn from_tables(base: FinCat, fibers: Vec<Fiber>, maps: HashMap<Arrow, Vec<Elem>>) -> Result<Self> {
        if fibers.len() != base.num_objects() {
            return Err(Error::MalformedPresentation(format!(
                "{} fibers for {} objects",
                fibers.len(),
                base.num_objects()
            )));
        }
        let all: Vec<Obj> = base.objects().collect();
        for f in base.arrows_among(&all)? {
            if base.is_identity(f) {
                continue;
            }
            let m =
                maps.get(&f).ok_or_else(|| Error::MissingEntry(format!("reindexing along {}", base.arrow_name(f))))?;
            let (src, tgt) = (&fibers[f.src.index()], &fibers[f.tgt.index()]);
            if m.len() != tgt.len() || m.iter().any(|&x| !src.contains(x)) {
                return Err(Error::MalformedPresentation(format!(
                    "reindexing along {} is not a map P({}) → P({})",
                    base.arrow_name(f),
                    base.name(f.tgt),
                    base.name(f.src)
                )));
            }
        }
        Ok(Self::assemble(base, fibers.into_iter().map(Arc::new).collect(), Reindex::Table(maps)))
    }

    /// The subset doctrine over a window of finite sets.
    pub fn subsets(base: FinCat, fiber_cap: usize) -> Result<Self> {
        let fibers = base
            .objects()
            .map(|a| {
                let n = base
                    .set_size(a)
                    .ok_or_else(|| Error::DomainMismatch("subset doctrine needs a finite-set base".into()))?;
                Fiber::powerset(n, fiber_cap).map(Arc::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(base, fibers, Reindex::Preimage))
    }

    pub(crate) fn from_fn(base: FinCat, fibers: Vec<Arc<Fiber>>, f: Arc<ReindexFn>) -> Self {
        Self::assemble(base, fibers, Reindex::Func(f))
    }

    fn assemble(base: FinCat, fibers: Vec<Arc<Fiber>>, reindex: Reindex) -> Self {
        Doctrine { base, fibers, reindex, exists: Mutex::new(HashMap::new()) }
    }

    /// A copy with one reindexing table replaced, for fault injection.
    pub fn with_table_entry(&self, f: Arrow, map: Vec<Elem>) -> Result<Self> {
        match &self.reindex {
            Reindex::Table(t) => {
                let mut t = t.clone();
                t.insert(f, map);
                Ok(Self::assemble(self.base.clone(), self.fibers.clone(), Reindex::Table(t)))
            }
            _ => Err(Error::DomainMismatch("only table doctrines can be edited".into())),
        }
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn fiber(&self, a: Obj) -> &Fiber {
        &self.fibers[a.index()]
    }

    pub fn fiber_arc(&self, a: Obj) -> Arc<Fiber> {
        self.fibers[a.index()].clone()
    }

    pub fn is_table(&self) -> bool {
        matches!(self.reindex, Reindex::Table(_))
    }

    pub fn is_subsets(&self) -> bool {
        matches!(self.reindex, Reindex::Preimage)
    }

    pub fn top(&self, a: Obj) -> Elem {
        self.fiber(a).top()
    }

    pub fn meet(&self, a: Obj, x: Elem, y: Elem) -> Elem {
        self.fiber(a).meet(x, y)
    }

    pub fn leq(&self, a: Obj, x: Elem, y: Elem) -> bool {
        self.fiber(a).leq(x, y)
    }

    /// `P_f(x)` without checks; `x` must lie in the fiber over the target of `f`.
    pub fn pull(&self, f: Arrow, x: Elem) -> Elem {
        if self.base.is_identity(f) {
            return x;
        }
        match &self.reindex {
            Reindex::Table(t) => t[&f][x.index()],
            Reindex::Preimage => {
                let vals = self.base.values(f);
                let mut out = 0u32;
                for (i, v) in vals.iter().enumerate() {
                    if x.0 >> v & 1 == 1 {
                        out |= 1 << i;
                    }
                }
                Elem(out)
            }
            Reindex::Func(g) => g(f, x),
        }
    }

    /// Checked reindexing.
    pub fn reindex(&self, f: Arrow, x: Elem) -> Result<Elem> {
        if !self.fiber(f.tgt).contains(x) {
            return Err(Error::DomainMismatch(format!("element {x} is not in P({})", self.base.name(f.tgt))));
        }
        Ok(self.pull(f, x))
    }

    pub fn reindex_map(&self, f: Arrow) -> MonotoneMap {
        let target = self.fiber_arc(f.tgt);
        let values = target.elements().map(|x| self.pull(f, x)).collect();
        MonotoneMap { source: target, target: self.fiber_arc(f.src), values }
    }

    /// The left adjoint of `P_f`, cached per arrow.
    pub fn exists(&self, f: Arrow) -> Result<Arc<Vec<Elem>>> {
        if let Some(e) = self.exists.lock().unwrap().get(&f) {
            return Ok(e.clone());
        }
        let e = Arc::new(left_adjoint(&self.reindex_map(f))?.values);
        self.exists.lock().unwrap().insert(f, e.clone());
        Ok(e)
    }

    /// `∃_f(x)` for `x` in the fiber over the source of `f`.
    pub fn exists_at(&self, f: Arrow, x: Elem) -> Result<Elem> {
        Ok(self.exists(f)?[x.index()])
    }

    pub fn elem_name(&self, a: Obj, x: Elem) -> String {
        self.fiber(a).name(x)
    }

    fn checked_arrows(&self) -> Result<Vec<Arrow>> {
        self.base.arrows_among(self.base.core())
    }
}

/// Checks that each fiber over the core is a valid inf-semilattice and that
/// reindexing along core arrows is a functorial family of homomorphisms.
pub fn validate_doctrine(d: &Doctrine) -> Result<()> {
    let base = d.base();
    let arrows = d.checked_arrows()?;
    for &f in &arrows {
        let m = d.reindex_map(f);
        if base.is_identity(f) {
            if m.values.iter().enumerate().any(|(i, x)| x.index() != i) {
                return Err(Error::violation("IdentityReindex", base.arrow_name(f)));
            }
            continue;
        }
        if let Some((law, w)) = m.homomorphism_failure() {
            return Err(Error::violation(law, format!("({}, {w})", base.arrow_name(f))));
        }
    }
    for &f in &arrows {
        for &g in arrows.iter().filter(|g| g.src == f.tgt) {
            let gf = base.try_compose(g, f)?;
            for x in d.fiber(g.tgt).elements() {
                if d.pull(gf, x) != d.pull(f, d.pull(g, x)) {
                    return Err(Error::violation(
                        "Functoriality",
                        format!("({}, {}, {})", base.arrow_name(g), base.arrow_name(f), d.elem_name(g.tgt, x)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `α1 ⊠ α2 = P_⟨pr1,pr3⟩(α1) ∧ P_⟨pr2,pr4⟩(α2)` for `α1` over `X1×Y1` and `α2`
/// over `X2×Y2`, landing over `(X1×X2)×(Y1×Y2)`.
pub fn box_product(
    d: &Doctrine,
    (x1, y1, a1): (Obj, Obj, Elem),
    (x2, y2, a2): (Obj, Obj, Elem),
) -> Result<(Obj, Elem)> {
    let c = d.base();
    let xs = c.prod(x1, x2)?;
    let ys = c.prod(y1, y2)?;
    let q = c.prod(xs.obj, ys.obj)?;
    let pr = |inner: Arrow, outer: Arrow| c.compose(inner, outer);
    let (p1, p2) = (pr(xs.pr1, q.pr1), pr(xs.pr2, q.pr1));
    let (p3, p4) = (pr(ys.pr1, q.pr2), pr(ys.pr2, q.pr2));
    let l = c.pair(p1, p3)?;
    let r = c.pair(p2, p4)?;
    check_fiber(d, l.tgt, a1)?;
    check_fiber(d, r.tgt, a2)?;
    Ok((q.obj, d.meet(q.obj, d.pull(l, a1), d.pull(r, a2))))
}

fn check_fiber(d: &Doctrine, a: Obj, x: Elem) -> Result<()> {
    if d.fiber(a).contains(x) {
        Ok(())
    } else {
        Err(Error::DomainMismatch(format!("element {x} is not in P({})", d.base().name(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Arc<Fiber> {
        Arc::new(Fiber::from_pairs(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap())
    }

    fn chain3() -> Arc<Fiber> {
        Arc::new(Fiber::from_pairs(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (1, 2)]).unwrap())
    }

    #[test]
    fn truncation_has_left_adjoint() {
        let h = MonotoneMap { source: chain3(), target: chain2(), values: vec![Elem(0), Elem(1), Elem(1)] };
        let e = left_adjoint(&h).unwrap();
        assert_eq!(e.values, vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn non_homomorphism_has_no_left_adjoint() {
        let b4 = Arc::new(
            Fiber::from_pairs(["⊥", "a", "b", "⊤"].map(String::from).to_vec(), &[(0, 1), (0, 2), (1, 3), (2, 3)])
                .unwrap(),
        );
        let h = MonotoneMap { source: b4, target: chain2(), values: vec![Elem(0), Elem(1), Elem(1), Elem(1)] };
        assert_eq!(left_adjoint(&h).unwrap_err(), Error::NoAdjoint { witness: "1".into() });
    }
}

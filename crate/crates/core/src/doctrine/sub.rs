//! Subobject and weak-subobject doctrines of a finite category.

use std::collections::HashMap;

use super::{Doctrine, Elem, Fiber};
use crate::error::{Error, Result};
use crate::fincat::{is_mono, Arrow, FinCat, Obj};

/// Whether `x` factors through `y` (both into the same object).
pub fn factors(c: &FinCat, x: Arrow, y: Arrow) -> Result<bool> {
    for h in c.hom(x.src, y.src)? {
        if c.try_compose(y, h)? == x {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Classes of `arrows` under mutual factorization, each represented by its least member.
fn reflect(c: &FinCat, arrows: Vec<Arrow>) -> Result<Vec<Arrow>> {
    let mut reps: Vec<Arrow> = Vec::new();
    'next: for x in arrows {
        for &r in &reps {
            if factors(c, x, r)? && factors(c, r, x)? {
                continue 'next;
            }
        }
        reps.push(x);
    }
    Ok(reps)
}

fn order_fiber(c: &FinCat, reps: &[Arrow]) -> Result<Fiber> {
    let mut leq = Vec::with_capacity(reps.len() * reps.len());
    for &x in reps {
        for &y in reps {
            leq.push(factors(c, x, y)?);
        }
    }
    Fiber::from_order(reps.iter().map(|&r| c.arrow_name(r)).collect(), leq)
}

/// Canonical representatives of the subobjects of `a`, least arrow first in each class.
pub fn subobjects(c: &FinCat, a: Obj) -> Result<Vec<Arrow>> {
    let mut monos = Vec::new();
    for x in c.objects() {
        for m in c.hom(x, a)? {
            if is_mono(c, m)? {
                monos.push(m);
            }
        }
    }
    reflect(c, monos)
}

/// The doctrine of subobjects. Windows of finite sets get the subset
/// doctrine directly; table presentations get subobject posets with
/// reindexing by pullback, found as the greatest subobject of the domain whose
/// composite with `f` factors through the given one.
pub fn sub_doctrine(c: &FinCat, fiber_cap: usize) -> Result<Doctrine> {
    if c.set_size(Obj(0)).is_some() {
        return Doctrine::subsets(c.clone(), fiber_cap);
    }
    let objs: Vec<Obj> = c.objects().collect();
    let reps = objs.iter().map(|&a| subobjects(c, a)).collect::<Result<Vec<_>>>()?;
    for (a, r) in objs.iter().zip(&reps) {
        if r.len() > fiber_cap {
            return Err(Error::cap(format!("Sub({})", c.name(*a)), fiber_cap as u64));
        }
    }
    let fibers = reps.iter().map(|r| order_fiber(c, r)).collect::<Result<Vec<_>>>()?;
    let mut maps = HashMap::new();
    for f in c.arrows_among(&objs)? {
        if c.is_identity(f) {
            continue;
        }
        let (lower, upper) = (&reps[f.src.index()], &reps[f.tgt.index()]);
        let mut map = Vec::with_capacity(upper.len());
        for &m in upper {
            let mut below = Vec::new();
            for (i, &n) in lower.iter().enumerate() {
                if factors(c, c.try_compose(f, n)?, m)? {
                    below.push(i);
                }
            }
            let fib = &fibers[f.src.index()];
            let top = below
                .iter()
                .copied()
                .find(|&i| below.iter().all(|&j| fib.leq(Elem(j as u32), Elem(i as u32))))
                .ok_or_else(|| {
                Error::WindowClosure(format!("pullback of {} along {}", c.arrow_name(m), c.arrow_name(f)))
            })?;
            map.push(Elem(top as u32));
        }
        maps.insert(f, map);
    }
    Doctrine::from_tables(c.clone(), fibers, maps)
}

/// The doctrine of weak subobjects: each fiber is the poset reflection of all
/// arrows into an object, reindexed by a chosen weak pullback. Finite-set
/// windows are first cut down to their core.
pub fn weak_sub_doctrine(c: &FinCat, fiber_cap: usize) -> Result<Doctrine> {
    let base = if c.is_window() { FinCat::from_table(c.to_table_spec(c.core())?)? } else { c.clone() };
    let objs: Vec<Obj> = base.objects().collect();
    let mut reps = Vec::new();
    for &a in &objs {
        let mut all = Vec::new();
        for &x in &objs {
            all.extend(base.hom(x, a)?);
        }
        let r = reflect(&base, all)?;
        if r.len() > fiber_cap {
            return Err(Error::cap(format!("Ψ({})", base.name(a)), fiber_cap as u64));
        }
        reps.push(r);
    }
    let fibers = reps.iter().map(|r| order_fiber(&base, r)).collect::<Result<Vec<_>>>()?;
    let mut maps = HashMap::new();
    for f in base.arrows_among(&objs)? {
        if base.is_identity(f) {
            continue;
        }
        let mut map = Vec::new();
        for &x in &reps[f.tgt.index()] {
            let p = weak_pullback_leg(&base, &objs, f, x)?;
            let class = reps[f.src.index()]
                .iter()
                .position(|&r| factors(&base, p, r).unwrap_or(false) && factors(&base, r, p).unwrap_or(false))
                .expect("every arrow lies in some class");
            map.push(Elem(class as u32));
        }
        maps.insert(f, map);
    }
    Doctrine::from_tables(base, fibers, maps)
}

/// The leg over `f.src` of the first weak pullback of `(f, x)`.
fn weak_pullback_leg(c: &FinCat, objs: &[Obj], f: Arrow, x: Arrow) -> Result<Arrow> {
    let mut cones = Vec::new();
    for &w in objs {
        for p in c.hom(w, f.src)? {
            for q in c.hom(w, x.src)? {
                if c.try_compose(f, p)? == c.try_compose(x, q)? {
                    cones.push((p, q));
                }
            }
        }
    }
    'cand: for &(p, q) in &cones {
        for &(p2, q2) in &cones {
            let mut ok = false;
            for h in c.hom(p2.src, p.src)? {
                if c.try_compose(p, h)? == p2 && c.try_compose(q, h)? == q2 {
                    ok = true;
                    break;
                }
            }
            if !ok {
                continue 'cand;
            }
        }
        return Ok(p);
    }
    Err(Error::NoWeakPullback(format!("({}, {})", c.arrow_name(f), c.arrow_name(x))))
}

//! The calculus of relations over a doctrine: a relation `A ⇸ B` is an
//! element of the fiber over `A×B`.

use serde::Serialize;

use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::Obj;
use crate::structure::ElementaryWitness;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rel {
    pub src: Obj,
    pub tgt: Obj,
    pub elem: Elem,
}

impl Rel {
    /// A relation, checked to lie in the fiber over `src×tgt`.
    pub fn new(d: &Doctrine, src: Obj, tgt: Obj, elem: Elem) -> Result<Rel> {
        let p = d.base().prod(src, tgt)?;
        if !d.fiber(p.obj).contains(elem) {
            return Err(Error::DomainMismatch(format!("{elem} is not in P({})", d.base().name(p.obj))));
        }
        Ok(Rel { src, tgt, elem })
    }

    pub fn carrier(&self, d: &Doctrine) -> Result<Obj> {
        Ok(d.base().prod(self.src, self.tgt)?.obj)
    }
}

/// `θ;ζ = ∃_⟨p1,p3⟩(P_⟨p1,p2⟩(θ) ∧ P_⟨p2,p3⟩(ζ))` over `(A×B)×C`.
pub fn rel_compose(d: &Doctrine, theta: Rel, zeta: Rel) -> Result<Rel> {
    if theta.tgt != zeta.src {
        return Err(Error::DomainMismatch("relations do not compose".into()));
    }
    let c = d.base();
    let t = c.prod3(theta.src, theta.tgt, zeta.tgt)?;
    let p23 = c.pair(t.p[1], t.p[2])?;
    let p13 = c.pair(t.p[0], t.p[2])?;
    let body = d.meet(t.obj, d.pull(t.outer.pr1, theta.elem), d.pull(p23, zeta.elem));
    Ok(Rel { src: theta.src, tgt: zeta.tgt, elem: d.exists_at(p13, body)? })
}

/// `θ° = P_⟨p2,p1⟩(θ)`.
pub fn rel_opposite(d: &Doctrine, theta: Rel) -> Result<Rel> {
    let s = d.base().swap(theta.tgt, theta.src)?;
    Ok(Rel { src: theta.tgt, tgt: theta.src, elem: d.pull(s, theta.elem) })
}

/// `θ ≤ ζ` between parallel relations.
pub fn rel_leq(d: &Doctrine, theta: Rel, zeta: Rel) -> Result<bool> {
    Ok(d.leq(theta.carrier(d)?, theta.elem, zeta.elem))
}

pub fn rel_identity(d: &Doctrine, e: &ElementaryWitness, a: Obj) -> Result<Rel> {
    Ok(Rel { src: a, tgt: a, elem: e.at(d, a)? })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_symmetric_idempotent: bool,
    pub is_map: bool,
}

/// Symmetric idempotent: `θ° = θ` and `θ;θ = θ`. Map: `θ°;θ ≤ δ_B` and `δ_A ≤ θ;θ°`.
pub fn classify(d: &Doctrine, e: &ElementaryWitness, theta: Rel) -> Result<Classification> {
    let op = rel_opposite(d, theta)?;
    let is_symmetric_idempotent = theta.src == theta.tgt && op == theta && rel_compose(d, theta, theta)? == theta;
    let single = rel_leq(d, rel_compose(d, op, theta)?, rel_identity(d, e, theta.tgt)?)?;
    let total = rel_leq(d, rel_identity(d, e, theta.src)?, rel_compose(d, theta, op)?)?;
    Ok(Classification { is_symmetric_idempotent, is_map: single && total })
}

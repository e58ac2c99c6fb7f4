//! Completions of a doctrine: points Gr(P), the exact completion T(P) with its
//! reflexive part ER(P), the quotient category Q_P, the functors D and L, and
//! transitive extensions.

mod gr;
mod qp;
mod tp;
mod tr;

pub use gr::{build_gr, Gr};
pub use qp::{build_qp, functor_l, Qp, QpArrow};
pub use tp::{build_erp, build_tp, functor_d, PerObject, Tp};
pub use tr::transitive_extension;

use crate::config::ConditionV;
use crate::doctrine::{Doctrine, Elem};
use crate::error::Result;
use crate::fincat::Obj;

/// `ρ ≤ P_⟨p2,p1⟩(ρ)` over `A×A`.
pub fn is_symmetric(d: &Doctrine, a: Obj, rho: Elem) -> Result<bool> {
    let c = d.base();
    let aa = c.prod(a, a)?;
    Ok(d.leq(aa.obj, rho, d.pull(c.swap(a, a)?, rho)))
}

/// `P_⟨p1,p2⟩(ρ) ∧ P_⟨p2,p3⟩(ρ) ≤ P_⟨p1,p3⟩(ρ)` over `A×A×A`.
pub fn is_transitive(d: &Doctrine, a: Obj, rho: Elem) -> Result<bool> {
    let c = d.base();
    let t = c.prod3(a, a, a)?;
    let lhs = d.meet(t.obj, d.pull(t.outer.pr1, rho), d.pull(c.pair(t.p[1], t.p[2])?, rho));
    Ok(d.leq(t.obj, lhs, d.pull(c.pair(t.p[0], t.p[2])?, rho)))
}

pub fn is_per(d: &Doctrine, a: Obj, rho: Elem) -> Result<bool> {
    Ok(is_symmetric(d, a, rho)? && is_transitive(d, a, rho)?)
}

/// Whether `φ` over `A×B` is a functional relation `(A,ρ) → (B,σ)`.
pub fn is_functional(
    d: &Doctrine,
    (a, rho): (Obj, Elem),
    (b, sigma): (Obj, Elem),
    phi: Elem,
    v: ConditionV,
) -> Result<bool> {
    let c = d.base();
    let ab = c.prod(a, b)?;
    // (i) relational: φ ≤ P⟨p1,p1⟩ρ ∧ P⟨p2,p2⟩σ
    let bound = d.meet(ab.obj, d.pull(c.pair(ab.pr1, ab.pr1)?, rho), d.pull(c.pair(ab.pr2, ab.pr2)?, sigma));
    if !d.leq(ab.obj, phi, bound) {
        return Ok(false);
    }
    // (ii) extensional in the source
    let aab = c.prod3(a, a, b)?;
    let lhs = d.meet(aab.obj, d.pull(aab.outer.pr1, rho), d.pull(c.pair(aab.p[1], aab.p[2])?, phi));
    if !d.leq(aab.obj, lhs, d.pull(c.pair(aab.p[0], aab.p[2])?, phi)) {
        return Ok(false);
    }
    let abb = c.prod3(a, b, b)?;
    let p12 = d.pull(abb.outer.pr1, phi);
    let p13 = d.pull(c.pair(abb.p[0], abb.p[2])?, phi);
    // (iii) extensional in the target
    let lhs = d.meet(abb.obj, p12, d.pull(c.pair(abb.p[1], abb.p[2])?, sigma));
    if !d.leq(abb.obj, lhs, p13) {
        return Ok(false);
    }
    // (iv) single-valued
    if !d.leq(abb.obj, d.meet(abb.obj, p12, p13), d.pull(c.pair(abb.p[1], abb.p[2])?, sigma)) {
        return Ok(false);
    }
    // (v) total
    Ok(match v {
        ConditionV::Strict => d.leq(a, d.pull(c.diagonal(a)?, rho), d.exists_at(ab.pr1, phi)?),
        ConditionV::Alt => d.leq(b, d.pull(c.diagonal(b)?, sigma), d.exists_at(ab.pr2, phi)?),
    })
}

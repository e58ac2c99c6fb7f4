use super::is_transitive;
use crate::doctrine::{Doctrine, Elem};
use crate::error::{Error, Result};
use crate::fincat::Obj;
use crate::par;
use crate::structure::delta_candidate;

/// The least transitive element above `ζ` in `P(C×C)`, for `δ_C ≤ ζ`.
///
/// Every transitive element above `ζ` is enumerated; their meet is returned when it
/// is itself one of them, otherwise the minimal ones are reported.
pub fn transitive_extension(d: &Doctrine, carrier: Obj, zeta: Elem) -> Result<Elem> {
    let c = d.base();
    let cc = c.prod(carrier, carrier)?;
    let fiber = d.fiber(cc.obj);
    if !fiber.contains(zeta) {
        return Err(Error::DomainMismatch(format!("{zeta} is not a relation on {}", c.name(carrier))));
    }
    if !fiber.leq(delta_candidate(d, carrier)?, zeta) {
        return Err(Error::DomainMismatch(format!("{} is not reflexive", fiber.name(zeta))));
    }
    let above: Vec<Elem> = fiber.elements().filter(|&x| fiber.leq(zeta, x)).collect();
    let keep = par::try_map(&above, |&x| is_transitive(d, carrier, x))?;
    let transitive: Vec<Elem> = above.iter().zip(keep).filter(|(_, k)| *k).map(|(&x, _)| x).collect();
    let meet = fiber.meet_all(transitive.iter().copied());
    if transitive.contains(&meet) {
        return Ok(meet);
    }
    let minimal: Vec<String> = transitive
        .iter()
        .filter(|&&x| !transitive.iter().any(|&y| y != x && fiber.leq(y, x)))
        .map(|&x| fiber.name(x))
        .collect();
    Err(Error::NoExtension(format!("minimal transitive elements {{{}}}", minimal.join(", "))))
}

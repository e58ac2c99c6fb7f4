use super::{Arrow, FinCat, Kind, Obj};
use crate::error::{Error, Result};

/// Checks the category laws over the scope's core objects: typing of the
/// composition table, totality on composable pairs, identity laws and
/// associativity of every composable triple.
pub fn validate_category(c: &FinCat) -> Result<()> {
    if let Kind::Table(t) = &c.kind {
        let mut entries: Vec<_> = t.compose.iter().collect();
        entries.sort();
        for (&(g, f), &h) in entries {
            if f.tgt != g.src || h.src != f.src || h.tgt != g.tgt {
                return Err(Error::violation(
                    "AssociativityOrTyping",
                    format!("({}, {}) ↦ {}", c.arrow_name(g), c.arrow_name(f), c.arrow_name(h)),
                ));
            }
            if (c.is_identity(f) && h != g) || (c.is_identity(g) && h != f) {
                return Err(Error::violation(
                    "IdentityLaw",
                    format!("({}, {}) ↦ {}", c.arrow_name(g), c.arrow_name(f), c.arrow_name(h)),
                ));
            }
        }
    }
    let core = c.core().to_vec();
    for &a in &core {
        let id = c.identity(a);
        if id.src != a || id.tgt != a {
            return Err(Error::violation("IdentityTyping", c.name(a).to_string()));
        }
    }
    let arrows = c.arrows_among(&core)?;
    // totality and identity laws
    for &f in &arrows {
        for &g in arrows.iter().filter(|g| g.src == f.tgt) {
            c.try_compose(g, f)?;
        }
        if c.try_compose(f, c.identity(f.src))? != f || c.try_compose(c.identity(f.tgt), f)? != f {
            return Err(Error::violation("IdentityLaw", c.arrow_name(f)));
        }
    }
    let by_src = |o: Obj| arrows.iter().copied().filter(move |x| x.src == o);
    for &f in &arrows {
        for g in by_src(f.tgt) {
            let gf = c.try_compose(g, f)?;
            for h in by_src(g.tgt) {
                let left = c.try_compose(h, gf)?;
                let right = c.try_compose(c.try_compose(h, g)?, f)?;
                if left != right {
                    return Err(Error::violation(
                        "Associativity",
                        format!("({}, {}, {})", c.arrow_name(h), c.arrow_name(g), c.arrow_name(f)),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Checks the chosen terminal object and binary products over the core:
/// exactly one arrow into the terminal object, and for every cone `(f, g)` a
/// unique mediating arrow into the chosen product.
pub fn validate_products(c: &FinCat) -> Result<()> {
    let core = c.core().to_vec();
    let t = c.terminal().ok_or_else(|| Error::MissingEntry("terminal object".into()))?;
    for &z in &core {
        let n = c.hom(z, t)?.len();
        if n != 1 {
            return Err(Error::violation("Terminal", format!("{} has {n} arrows into {}", c.name(z), c.name(t))));
        }
    }
    for &a in &core {
        for &b in &core {
            let p =
                c.product(a, b).ok_or_else(|| Error::MissingEntry(format!("product {}×{}", c.name(a), c.name(b))))?;
            if p.pr1.src != p.obj || p.pr1.tgt != a || p.pr2.src != p.obj || p.pr2.tgt != b {
                return Err(Error::violation("ProductTyping", format!("{}×{}", c.name(a), c.name(b))));
            }
            for &z in &core {
                let to_p = c.hom(z, p.obj)?;
                for f in c.hom(z, a)? {
                    for g in c.hom(z, b)? {
                        let mediators = count_mediators(c, &to_p, p.pr1, p.pr2, f, g)?;
                        if mediators != 1 {
                            return Err(Error::violation(
                                "ProductUniqueness",
                                format!(
                                    "cone ({}, {}) into {}×{} has {mediators} mediators",
                                    c.arrow_name(f),
                                    c.arrow_name(g),
                                    c.name(a),
                                    c.name(b)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn count_mediators(c: &FinCat, to_p: &[Arrow], pr1: Arrow, pr2: Arrow, f: Arrow, g: Arrow) -> Result<usize> {
    let mut n = 0;
    for &h in to_p {
        if c.try_compose(pr1, h)? == f && c.try_compose(pr2, h)? == g {
            n += 1;
        }
    }
    Ok(n)
}

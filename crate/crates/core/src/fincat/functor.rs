use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{is_iso, Arrow, FinCat, Obj};
use crate::error::{Error, Result};

/// A functor given by its object and arrow maps on the source's scoped objects.
#[derive(Clone, Debug)]
pub struct FunctorData<'a> {
    pub source: &'a FinCat,
    pub target: &'a FinCat,
    pub objects: BTreeMap<Obj, Obj>,
    pub arrows: BTreeMap<Arrow, Arrow>,
}

impl<'a> FunctorData<'a> {
    pub fn new(source: &'a FinCat, target: &'a FinCat) -> Self {
        FunctorData { source, target, objects: BTreeMap::new(), arrows: BTreeMap::new() }
    }

    pub fn domain(&self) -> Vec<Obj> {
        self.objects.keys().copied().collect()
    }

    pub fn map_arrow(&self, f: Arrow) -> Result<Arrow> {
        self.arrows
            .get(&f)
            .copied()
            .ok_or_else(|| Error::MissingEntry(format!("functor image of {}", self.source.arrow_name(f))))
    }

    /// Checks typing, identities and composition over every mapped arrow.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (self.source, self.target);
        let dom = self.domain();
        let arrows = s.arrows_among(&dom)?;
        for &f in &arrows {
            let ff = self.map_arrow(f)?;
            if ff.src != self.objects[&f.src] || ff.tgt != self.objects[&f.tgt] {
                return Err(Error::violation("FunctorTyping", s.arrow_name(f)));
            }
        }
        for &a in &dom {
            if self.map_arrow(s.identity(a))? != t.identity(self.objects[&a]) {
                return Err(Error::violation("FunctorIdentity", s.name(a).to_string()));
            }
        }
        for &f in &arrows {
            for &g in arrows.iter().filter(|g| g.src == f.tgt) {
                let lhs = self.map_arrow(s.try_compose(g, f)?)?;
                let rhs = t.try_compose(self.map_arrow(g)?, self.map_arrow(f)?)?;
                if lhs != rhs {
                    return Err(Error::violation(
                        "FunctorComposition",
                        format!("({}, {})", s.arrow_name(g), s.arrow_name(f)),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    /// First counterexample per failed property.
    pub counterexamples: Vec<String>,
    /// For each target object, a source object and an iso `F(a) → target`.
    pub iso_witnesses: Vec<(Obj, Obj, Arrow)>,
    /// `(a, b, |hom(a,b)|, |hom(Fa,Fb)|)` for every pair of domain objects.
    pub hom_counts: Vec<(Obj, Obj, usize, usize)>,
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        self.faithful && self.full && self.essentially_surjective
    }
}

/// Decides faithfulness, fullness and essential surjectivity (onto `targets`) exhaustively.
pub fn check_equivalence(f: &FunctorData<'_>, targets: &[Obj]) -> Result<EquivalenceVerdict> {
    let (s, t) = (f.source, f.target);
    let dom = f.domain();
    let mut v = EquivalenceVerdict {
        faithful: true,
        full: true,
        essentially_surjective: true,
        counterexamples: Vec::new(),
        iso_witnesses: Vec::new(),
        hom_counts: Vec::new(),
    };
    for &a in &dom {
        for &b in &dom {
            let hom = s.hom(a, b)?;
            let images: Vec<Arrow> = hom.iter().map(|&x| f.map_arrow(x)).collect::<Result<_>>()?;
            let distinct: BTreeSet<Arrow> = images.iter().copied().collect();
            let target_hom = t.hom(f.objects[&a], f.objects[&b])?;
            v.hom_counts.push((a, b, hom.len(), target_hom.len()));
            if distinct.len() != images.len() && v.faithful {
                v.faithful = false;
                v.counterexamples.push(format!("not faithful on hom({}, {})", s.name(a), s.name(b)));
            }
            if v.full {
                if let Some(missed) = target_hom.iter().find(|g| !distinct.contains(g)) {
                    v.full = false;
                    v.counterexamples.push(format!(
                        "not full: {} ∈ hom({}, {}) has no preimage",
                        t.arrow_name(*missed),
                        t.name(f.objects[&a]),
                        t.name(f.objects[&b])
                    ));
                }
            }
        }
    }
    'targets: for &y in targets {
        for &a in &dom {
            for g in t.hom(f.objects[&a], y)? {
                if is_iso(t, g)?.is_some() {
                    v.iso_witnesses.push((y, a, g));
                    continue 'targets;
                }
            }
        }
        if v.essentially_surjective {
            v.essentially_surjective = false;
            v.counterexamples.push(format!("{} is not isomorphic to any image", t.name(y)));
        }
    }
    Ok(v)
}

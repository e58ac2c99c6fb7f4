use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a fiber, identified by its index. For powerset fibers the
/// index is the subset's bitmask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite inf-semilattice with top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// Explicit order and meet tables.
    Table { names: Vec<String>, leq: Vec<bool>, meet: Vec<Elem>, top: Elem },
    /// All subsets of an `n`-element set, elements encoded as bitmasks.
    Powerset { n: u32 },
}

impl Fiber {
    /// Builds a fiber from a full order table (row-major `leq[x*n+y]`),
    /// validating the partial-order laws and computing meets and top.
    pub fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<Fiber> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::MalformedPresentation("order table has the wrong size".into()));
        }
        if n == 0 {
            return Err(Error::MalformedPresentation("a fiber needs a top element".into()));
        }
        let le = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            if !le(x, x) {
                return Err(Error::violation("Reflexivity", names[x].clone()));
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(Error::violation("Antisymmetry", format!("{}, {}", names[x], names[y])));
                }
                for z in 0..n {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return Err(Error::violation(
                            "Transitivity",
                            format!("{}, {}, {}", names[x], names[y], names[z]),
                        ));
                    }
                }
            }
        }
        let top =
            (0..n).find(|&t| (0..n).all(|x| le(x, t))).ok_or_else(|| Error::violation("Top", "no greatest element"))?;
        let mut meet = vec![Elem(0); n * n];
        for x in 0..n {
            for y in x..n {
                let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| le(z, g)))
                    .ok_or_else(|| Error::violation("Meet", format!("{} ∧ {}", names[x], names[y])))?;
                meet[x * n + y] = Elem(glb as u32);
                meet[y * n + x] = Elem(glb as u32);
            }
        }
        Ok(Fiber::Table { names, leq, meet, top: Elem(top as u32) })
    }

    /// Builds a fiber from generating pairs `x ≤ y`, closed reflexively and transitively.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Fiber> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in pairs {
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Fiber::from_order(names, leq)
    }

    pub fn powerset(n: u32, cap: usize) -> Result<Fiber> {
        if n >= 31 || (1usize << n) > cap {
            return Err(Error::cap(format!("subset fiber of a {n}-element set"), cap as u64));
        }
        Ok(Fiber::Powerset { n })
    }

    /// The sub-order on `elems` (in the given order) with names inherited.
    pub fn suborder(&self, elems: &[Elem]) -> Result<Fiber> {
        let names = elems.iter().map(|&e| self.name(e)).collect();
        let mut leq = Vec::with_capacity(elems.len() * elems.len());
        for &x in elems {
            for &y in elems {
                leq.push(self.leq(x, y));
            }
        }
        Fiber::from_order(names, leq)
    }

    pub fn len(&self) -> usize {
        match self {
            Fiber::Table { names, .. } => names.len(),
            Fiber::Powerset { n } => 1usize << n,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.len() as u32).map(Elem)
    }

    pub fn name(&self, x: Elem) -> String {
        match self {
            Fiber::Table { names, .. } => names[x.index()].clone(),
            Fiber::Powerset { n } => {
                let items: Vec<String> = (0..*n).filter(|i| x.0 >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
        }
    }

    pub fn find(&self, name: &str) -> Option<Elem> {
        self.elements().find(|&x| self.name(x) == name)
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        match self {
            Fiber::Table { names, leq, .. } => leq[x.index() * names.len() + y.index()],
            Fiber::Powerset { .. } => x.0 & !y.0 == 0,
        }
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        match self {
            Fiber::Table { names, meet, .. } => meet[x.index() * names.len() + y.index()],
            Fiber::Powerset { .. } => Elem(x.0 & y.0),
        }
    }

    pub fn top(&self) -> Elem {
        match self {
            Fiber::Table { top, .. } => *top,
            Fiber::Powerset { n } => Elem((1u32 << n) - 1),
        }
    }

    pub fn bottom(&self) -> Elem {
        self.elements().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.index() < self.len()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(Elem, Elem)> {
        let els: Vec<Elem> = self.elements().collect();
        let lt = |x: Elem, y: Elem| x != y && self.leq(x, y);
        let mut out = Vec::new();
        for &x in &els {
            for &y in &els {
                if lt(x, y) && !els.iter().any(|&z| lt(x, z) && lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Whether two fibers are isomorphic as posets (exhaustive search over bijections
    /// preserving the number of lower and upper bounds).
    pub fn isomorphic(&self, other: &Fiber) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let sig = |f: &Fiber, x: Elem| {
            let down = f.elements().filter(|&y| f.leq(y, x)).count();
            let up = f.elements().filter(|&y| f.leq(x, y)).count();
            (down, up)
        };
        let mut assignment = vec![None::<Elem>; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            a: &Fiber,
            b: &Fiber,
            assignment: &mut Vec<Option<Elem>>,
            used: &mut Vec<bool>,
            sig: &dyn Fn(&Fiber, Elem) -> (usize, usize),
        ) -> bool {
            let n = a.len();
            if i == n {
                return true;
            }
            let x = Elem(i as u32);
            for j in 0..n {
                let y = Elem(j as u32);
                if used[j] || sig(a, x) != sig(b, y) {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    let xk = Elem(k as u32);
                    let yk = assignment[k].unwrap();
                    a.leq(xk, x) == b.leq(yk, y) && a.leq(x, xk) == b.leq(y, yk)
                });
                if consistent {
                    assignment[i] = Some(y);
                    used[j] = true;
                    if go(i + 1, a, b, assignment, used, sig) {
                        return true;
                    }
                    used[j] = false;
                    assignment[i] = None;
                }
            }
            false
        }
        go(0, self, other, &mut assignment, &mut used, &sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b4() -> Fiber {
        let names = ["⊥", "a", "b", "⊤"].map(String::from).to_vec();
        Fiber::from_pairs(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn b4_meets_and_top() {
        let f = b4();
        assert_eq!(f.meet(Elem(1), Elem(2)), Elem(0));
        assert_eq!(f.top(), Elem(3));
        assert_eq!(f.bottom(), Elem(0));
        assert_eq!(f.hasse().len(), 4);
    }

    #[test]
    fn missing_meet_is_reported() {
        // two incomparable elements with no lower bound
        let names = ["x", "y", "t"].map(String::from).to_vec();
        let err = Fiber::from_pairs(names, &[(0, 2), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::Violation { ref law, .. } if law == "Meet"));
    }

    #[test]
    fn powerset_is_boolean() {
        let f = Fiber::powerset(2, 512).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.name(Elem(2)), "{1}");
        assert!(f.isomorphic(&b4()));
        assert!(Fiber::powerset(10, 512).is_err());
    }
}

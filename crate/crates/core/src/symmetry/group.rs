use std::collections::BTreeSet;

/// Element of a finite group with explicit composition.
pub trait GroupElement: Clone + Eq + Ord + std::hash::Hash {
    /// `self` after `other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

/// A finite group held as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup<E: GroupElement> {
    identity: E,
    elements: Vec<E>,
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Closure of the generators under composition (breadth-first).
    pub fn generate(identity: E, generators: &[E]) -> Self {
        let mut seen: BTreeSet<E> = BTreeSet::new();
        seen.insert(identity.clone());
        let mut frontier: Vec<E> = vec![identity.clone()];
        while let Some(g) = frontier.pop() {
            for gen in generators {
                let h = gen.compose(&g);
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        FiniteGroup { identity, elements: seen.into_iter().collect() }
    }

    pub fn from_elements(identity: E, mut elements: Vec<E>) -> Self {
        elements.sort();
        elements.dedup();
        assert!(elements.binary_search(&identity).is_ok(), "identity must be present");
        FiniteGroup { identity, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn contains(&self, e: &E) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    /// Spot-check group axioms: closure on sampled pairs, inverses present.
    pub fn check_axioms(&self) -> bool {
        let step = (self.order() / 24).max(1);
        for a in self.elements.iter().step_by(step) {
            if !self.contains(&a.inverse()) {
                return false;
            }
            for b in self.elements.iter().step_by(step) {
                if !self.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn element_order(&self, e: &E) -> usize {
        let mut cur = e.clone();
        let mut n = 1;
        while cur != self.identity {
            cur = e.compose(&cur);
            n += 1;
            assert!(n <= self.order(), "element order exceeds group order");
        }
        n
    }

    /// Subgroup fixing `point` under `action`.
    pub fn stabilizer<P, A>(&self, point: &P, action: A) -> FiniteGroup<E>
    where
        P: Eq,
        A: Fn(&E, &P) -> P,
    {
        let elements: Vec<E> =
            self.elements.iter().filter(|g| action(g, point) == *point).cloned().collect();
        FiniteGroup { identity: self.identity.clone(), elements }
    }

    /// Orbit of `point`, sorted.
    pub fn orbit<P, A>(&self, point: &P, action: A) -> Vec<P>
    where
        P: Clone + Ord,
        A: Fn(&E, &P) -> P,
    {
        let mut out: BTreeSet<P> = BTreeSet::new();
        for g in &self.elements {
            out.insert(action(g, point));
        }
        out.into_iter().collect()
    }

    /// Partition `points` into orbits; each orbit is sorted so its first
    /// entry is the canonical (lexicographically minimal) representative.
    pub fn orbit_partition<P, A>(&self, points: &[P], action: A) -> Vec<Vec<P>>
    where
        P: Clone + Ord,
        A: Fn(&E, &P) -> P,
    {
        let mut remaining: BTreeSet<P> = points.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some(seed) = remaining.iter().next().cloned() {
            let orbit = self.orbit(&seed, &action);
            for p in &orbit {
                remaining.remove(p);
            }
            out.push(orbit);
        }
        out
    }

    pub fn intersection(&self, other: &FiniteGroup<E>) -> FiniteGroup<E> {
        let elements: Vec<E> =
            self.elements.iter().filter(|e| other.contains(e)).cloned().collect();
        FiniteGroup { identity: self.identity.clone(), elements }
    }

    /// Dihedral recognition: a group of order `2n` is dihedral iff it has
    /// generators `a` of order `n` and `b` of order 2 with `(b a)^2 = 1`
    /// generating the whole group. Exhaustive over element pairs.
    pub fn dihedral_structure(&self) -> Option<(usize, E, E)> {
        let ord = self.order();
        if ord < 4 || ord % 2 != 0 {
            return None;
        }
        let n = ord / 2;
        let rotations: Vec<&E> =
            self.elements.iter().filter(|e| self.element_order(e) == n).collect();
        let reflections: Vec<&E> =
            self.elements.iter().filter(|e| self.element_order(e) == 2).collect();
        for a in &rotations {
            for b in &reflections {
                let ba = b.compose(a);
                if ba.compose(&ba) != self.identity {
                    continue;
                }
                let gen = FiniteGroup::generate(self.identity.clone(), &[(*a).clone(), (*b).clone()]);
                if gen.order() == ord {
                    return Some((n, (*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z_n under addition, for exercising the generic machinery.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
    struct Perm4([u8; 4]);

    impl GroupElement for Perm4 {
        fn compose(&self, other: &Self) -> Self {
            Perm4(std::array::from_fn(|i| self.0[other.0[i] as usize]))
        }
        fn inverse(&self) -> Self {
            let mut out = [0u8; 4];
            for i in 0..4 {
                out[self.0[i] as usize] = i as u8;
            }
            Perm4(out)
        }
    }

    #[test]
    fn symmetric_group_on_four_letters() {
        let id = Perm4([0, 1, 2, 3]);
        let cycle = Perm4([1, 2, 3, 0]);
        let swap = Perm4([1, 0, 2, 3]);
        let g = FiniteGroup::generate(id, &[cycle, swap]);
        assert_eq!(g.order(), 24);
        assert!(g.check_axioms());
        assert_eq!(g.element_order(&cycle), 4);
    }

    #[test]
    fn dihedral_of_order_eight_recognized() {
        let id = Perm4([0, 1, 2, 3]);
        let rot = Perm4([1, 2, 3, 0]);
        let refl = Perm4([3, 2, 1, 0]);
        let g = FiniteGroup::generate(id, &[rot, refl]);
        assert_eq!(g.order(), 8);
        let (n, a, b) = g.dihedral_structure().unwrap();
        assert_eq!(n, 4);
        assert_eq!(g.element_order(&a), 4);
        assert_eq!(g.element_order(&b), 2);
    }

    #[test]
    fn symmetric_group_is_not_dihedral() {
        let id = Perm4([0, 1, 2, 3]);
        let g = FiniteGroup::generate(id, &[Perm4([1, 2, 3, 0]), Perm4([1, 0, 2, 3])]);
        assert!(g.dihedral_structure().is_none());
    }

    #[test]
    fn orbits_and_stabilizers_multiply_to_the_order() {
        let id = Perm4([0, 1, 2, 3]);
        let g = FiniteGroup::generate(id, &[Perm4([1, 2, 3, 0]), Perm4([1, 0, 2, 3])]);
        let act = |e: &Perm4, p: &u8| e.0[*p as usize];
        let orbit = g.orbit(&0u8, act);
        let stab = g.stabilizer(&0u8, act);
        assert_eq!(orbit.len() * stab.order(), g.order());
    }
}

use super::loops::permutations3;
use super::{
    all_ctx, all_meas, ctx_edge_set, ctx_members, ctxs_of_meas, edge_set_to_vec, meas,
    BetaAssignment, Ctx, EdgeSet, Meas, ALL_EDGES,
};

/// A closed noncontextual subset of the measurements.
///
/// Closed means closed under context completion: whenever two members share
/// a context the third member of that context is also in the set.
/// Noncontextual means at least one parity-consistent outcome assignment
/// exists on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CncSet {
    members: EdgeSet,
    kind: CncKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CncKind {
    /// Three measurements pairwise sharing no context (a grid transversal).
    Type1,
    /// Union of two contexts glued at one measurement: five members.
    Type2,
    /// The whole measurement set; maximal exactly in the even parity class.
    Full,
}

/// An outcome labeling of a carrier set, `s(m)` stored as a ones-bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeAssignment {
    carrier: EdgeSet,
    ones: EdgeSet,
}

impl CncSet {
    pub fn members(&self) -> EdgeSet {
        self.members
    }

    pub fn member_vec(&self) -> Vec<Meas> {
        edge_set_to_vec(self.members)
    }

    pub fn kind(&self) -> CncKind {
        self.kind
    }

    pub fn contains(&self, m: Meas) -> bool {
        self.members & (1 << m) != 0
    }

    pub fn complement(&self) -> EdgeSet {
        ALL_EDGES & !self.members
    }

    /// Contexts entirely inside the set.
    pub fn internal_contexts(&self) -> Vec<Ctx> {
        all_ctx().filter(|&c| ctx_edge_set(c) & !self.members == 0).collect()
    }

    pub fn is_closed(&self) -> bool {
        is_closed(self.members)
    }
}

pub fn is_closed(members: EdgeSet) -> bool {
    for c in all_ctx() {
        let inside = (members & ctx_edge_set(c)).count_ones();
        if inside == 2 {
            return false;
        }
    }
    true
}

/// The type-1 maximal cnc sets: the six grid transversals.
pub fn type1_sets() -> Vec<CncSet> {
    let mut out: Vec<CncSet> = permutations3()
        .iter()
        .map(|p| {
            let members: EdgeSet = (0..3u8).map(|i| 1 << meas(i, p[i as usize])).sum();
            CncSet { members, kind: CncKind::Type1 }
        })
        .collect();
    out.sort();
    out
}

/// The type-2 maximal cnc sets: one per measurement, the union of its two
/// contexts.
pub fn type2_sets() -> Vec<CncSet> {
    let mut out: Vec<CncSet> = all_meas()
        .map(|m| {
            let [c1, c2] = ctxs_of_meas(m);
            CncSet { members: ctx_edge_set(c1) | ctx_edge_set(c2), kind: CncKind::Type2 }
        })
        .collect();
    out.sort();
    out
}

/// Maximal closed noncontextual sets for the given parity assignment.
///
/// In the odd class these are the 6 type-1 and 9 type-2 sets, complements
/// of the fifteen loops. In the even class the whole measurement set is
/// itself noncontextual and is the unique maximal one.
pub fn enumerate_cnc_sets(beta: &BetaAssignment) -> Vec<CncSet> {
    if beta.cohomology_class() == 0 {
        return vec![CncSet { members: ALL_EDGES, kind: CncKind::Full }];
    }
    let mut out = type1_sets();
    out.extend(type2_sets());
    debug_assert!(out.iter().all(|s| s.is_closed()));
    debug_assert!(out.iter().all(|s| !outcome_assignments(s, beta).is_empty()));
    out.sort();
    out
}

/// All outcome labelings of a closed set satisfying, on every context fully
/// inside it, `s(x) + s(y) + s(z) = beta(C)`.
///
/// Depth-first search with unit propagation over the internal contexts;
/// carriers have at most nine members so this is immediate.
pub fn outcome_assignments(omega: &CncSet, beta: &BetaAssignment) -> Vec<OutcomeAssignment> {
    assert!(omega.is_closed(), "carrier must be closed");
    let members = omega.member_vec();
    let internal = omega.internal_contexts();
    let mut out = Vec::new();
    let mut values: Vec<Option<u8>> = vec![None; 9];
    dfs(&members, &internal, beta, &mut values, 0, &mut out);
    out.sort();
    out.iter().for_each(|a| debug_assert_eq!(a.carrier, omega.members));
    out
}

fn dfs(
    members: &[Meas],
    internal: &[Ctx],
    beta: &BetaAssignment,
    values: &mut Vec<Option<u8>>,
    pos: usize,
    out: &mut Vec<OutcomeAssignment>,
) {
    // Propagate: a context with two known members forces the third.
    let mut forced: Vec<Meas> = Vec::new();
    let mut ok = true;
    loop {
        let mut progressed = false;
        for &c in internal {
            let ms = ctx_members(c);
            let known: Vec<u8> = ms.iter().filter_map(|&m| values[m as usize]).collect();
            match known.len() {
                3 => {
                    let sum: u8 = known.iter().sum::<u8>() % 2;
                    if sum != beta.get(c) {
                        ok = false;
                    }
                }
                2 => {
                    let missing = ms.iter().find(|&&m| values[m as usize].is_none()).unwrap();
                    let v = (beta.get(c) + known.iter().sum::<u8>()) % 2;
                    values[*missing as usize] = Some(v);
                    forced.push(*missing);
                    progressed = true;
                }
                _ => {}
            }
            if !ok {
                break;
            }
        }
        if !ok || !progressed {
            break;
        }
    }
    if ok {
        if let Some(next) = (pos..members.len()).find(|&k| values[members[k] as usize].is_none()) {
            for v in 0..2u8 {
                values[members[next] as usize] = Some(v);
                dfs(members, internal, beta, values, next + 1, out);
                values[members[next] as usize] = None;
            }
        } else {
            let mut carrier: EdgeSet = 0;
            let mut ones: EdgeSet = 0;
            for &m in members {
                carrier |= 1 << m;
                if values[m as usize] == Some(1) {
                    ones |= 1 << m;
                }
            }
            out.push(OutcomeAssignment { carrier, ones });
        }
    }
    for m in forced {
        values[m as usize] = None;
    }
}

impl OutcomeAssignment {
    pub fn new(carrier: EdgeSet, ones: EdgeSet) -> Self {
        assert_eq!(ones & !carrier, 0, "outcome bits outside the carrier");
        OutcomeAssignment { carrier, ones }
    }

    /// Global assignment on all nine measurements.
    pub fn global(ones: EdgeSet) -> Self {
        OutcomeAssignment { carrier: ALL_EDGES, ones }
    }

    pub fn carrier(&self) -> EdgeSet {
        self.carrier
    }

    pub fn ones(&self) -> EdgeSet {
        self.ones
    }

    pub fn value(&self, m: Meas) -> Option<u8> {
        if self.carrier & (1 << m) == 0 {
            None
        } else {
            Some(u8::from(self.ones & (1 << m) != 0))
        }
    }

    /// Checks the parity constraint on every context inside the carrier.
    pub fn satisfies(&self, beta: &BetaAssignment) -> bool {
        all_ctx().all(|c| {
            if ctx_edge_set(c) & !self.carrier != 0 {
                return true;
            }
            let sum: u8 = ctx_members(c).iter().map(|&m| self.value(m).unwrap()).sum();
            sum % 2 == beta.get(c)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_loops;
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_in_the_odd_class() {
        let beta = BetaAssignment::beta1();
        let sets = enumerate_cnc_sets(&beta);
        assert_eq!(sets.len(), 15);
        let t1: Vec<_> = sets.iter().filter(|s| s.kind() == CncKind::Type1).collect();
        let t2: Vec<_> = sets.iter().filter(|s| s.kind() == CncKind::Type2).collect();
        assert_eq!((t1.len(), t2.len()), (6, 9));
        // 48 and 72 (set, assignment) pairs
        let pairs1: usize = t1.iter().map(|s| outcome_assignments(s, &beta).len()).sum();
        let pairs2: usize = t2.iter().map(|s| outcome_assignments(s, &beta).len()).sum();
        assert_eq!((pairs1, pairs2), (48, 72));
    }

    #[test]
    fn even_class_carries_sixteen_global_assignments() {
        let beta = BetaAssignment::beta0();
        let sets = enumerate_cnc_sets(&beta);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].kind(), CncKind::Full);
        assert_eq!(outcome_assignments(&sets[0], &beta).len(), 16);
    }

    #[test]
    fn whole_set_is_contextual_in_the_odd_class() {
        let beta = BetaAssignment::beta1();
        let full = CncSet { members: ALL_EDGES, kind: CncKind::Full };
        assert!(outcome_assignments(&full, &beta).is_empty());
    }

    #[test]
    fn complements_are_exactly_the_loops() {
        let beta = BetaAssignment::beta1();
        let complements: BTreeSet<EdgeSet> =
            enumerate_cnc_sets(&beta).iter().map(|s| s.complement()).collect();
        let loops: BTreeSet<EdgeSet> = enumerate_loops().iter().map(|l| l.edges()).collect();
        assert_eq!(complements, loops);
        // type-1 complements are 6-cycles, type-2 complements 4-cycles
        for s in enumerate_cnc_sets(&beta) {
            let len = s.complement().count_ones();
            match s.kind() {
                CncKind::Type1 => assert_eq!(len, 6),
                CncKind::Type2 => assert_eq!(len, 4),
                CncKind::Full => unreachable!(),
            }
        }
    }

    #[test]
    fn type_sizes_and_closure() {
        for s in type1_sets() {
            assert_eq!(s.member_vec().len(), 3);
            assert!(s.is_closed());
            assert!(s.internal_contexts().is_empty());
        }
        for s in type2_sets() {
            assert_eq!(s.member_vec().len(), 5);
            assert!(s.is_closed());
            assert_eq!(s.internal_contexts().len(), 2);
        }
    }

    #[test]
    fn assignments_have_three_free_bits() {
        let beta = BetaAssignment::beta1();
        for s in type1_sets().into_iter().chain(type2_sets()) {
            let asg = outcome_assignments(&s, &beta);
            assert_eq!(asg.len(), 8);
            for a in asg {
                assert!(a.satisfies(&beta));
            }
        }
    }
}

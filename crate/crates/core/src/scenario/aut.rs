use super::loops::permutations3;
use super::{ctx_members, ctxs_of_meas, Ctx, EdgeSet, Meas, N_CTX, N_MEAS};

/// Incidence-preserving permutation of the six contexts, together with the
/// induced permutation of the nine measurements.
///
/// Generated by row permutations, column permutations and the diagonal
/// reflection exchanging `C1_ver <-> C0_hor`, `C2_ver <-> C2_hor`,
/// `C0_ver <-> C1_hor`; 72 elements in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K33Automorphism {
    ctx_map: [Ctx; N_CTX],
    edge_map: [Meas; N_MEAS],
}

impl K33Automorphism {
    pub fn identity() -> Self {
        K33Automorphism { ctx_map: [0, 1, 2, 3, 4, 5], edge_map: [0, 1, 2, 3, 4, 5, 6, 7, 8] }
    }

    /// Build from a context permutation; fails if it does not preserve the
    /// incidence structure.
    pub fn from_ctx_map(ctx_map: [Ctx; N_CTX]) -> Option<Self> {
        let mut seen = [false; N_CTX];
        for &c in &ctx_map {
            if c as usize >= N_CTX || seen[c as usize] {
                return None;
            }
            seen[c as usize] = true;
        }
        // Families must map as a block: all-hor to one family, all-ver to
        // the other.
        let hor_to_hor = ctx_map[0] < 3;
        if (0..3).any(|i| (ctx_map[i] < 3) != hor_to_hor)
            || (3..6).any(|i| (ctx_map[i] < 3) == hor_to_hor)
        {
            return None;
        }
        let mut edge_map = [0u8; N_MEAS];
        for m in 0..N_MEAS as u8 {
            let [a, b] = ctxs_of_meas(m);
            let (ia, ib) = (ctx_map[a as usize], ctx_map[b as usize]);
            let common: Vec<Meas> = ctx_members(ia)
                .into_iter()
                .filter(|x| ctx_members(ib).contains(x))
                .collect();
            if common.len() != 1 {
                return None;
            }
            edge_map[m as usize] = common[0];
        }
        Some(K33Automorphism { ctx_map, edge_map })
    }

    pub fn ctx_image(&self, c: Ctx) -> Ctx {
        self.ctx_map[c as usize]
    }

    pub fn meas_image(&self, m: Meas) -> Meas {
        self.edge_map[m as usize]
    }

    pub fn ctx_map(&self) -> &[Ctx; N_CTX] {
        &self.ctx_map
    }

    pub fn edge_set_image(&self, s: EdgeSet) -> EdgeSet {
        let mut out = 0;
        for m in 0..N_MEAS as u8 {
            if s & (1 << m) != 0 {
                out |= 1 << self.edge_map[m as usize];
            }
        }
        out
    }

    /// `self` after `other` (function composition).
    pub fn compose(&self, other: &Self) -> Self {
        let mut ctx_map = [0u8; N_CTX];
        let mut edge_map = [0u8; N_MEAS];
        for c in 0..N_CTX {
            ctx_map[c] = self.ctx_map[other.ctx_map[c] as usize];
        }
        for m in 0..N_MEAS {
            edge_map[m] = self.edge_map[other.edge_map[m] as usize];
        }
        K33Automorphism { ctx_map, edge_map }
    }

    pub fn inverse(&self) -> Self {
        let mut ctx_map = [0u8; N_CTX];
        let mut edge_map = [0u8; N_MEAS];
        for c in 0..N_CTX {
            ctx_map[self.ctx_map[c] as usize] = c as u8;
        }
        for m in 0..N_MEAS {
            edge_map[self.edge_map[m] as usize] = m as u8;
        }
        K33Automorphism { ctx_map, edge_map }
    }

    pub fn is_identity(&self) -> bool {
        self.ctx_map == [0, 1, 2, 3, 4, 5]
    }

    /// The diagonal reflection generator.
    pub fn reflection() -> Self {
        // C0_hor <-> C1_ver, C1_hor <-> C0_ver, C2_hor <-> C2_ver
        K33Automorphism::from_ctx_map([4, 3, 5, 1, 0, 2]).unwrap()
    }
}

/// All 72 automorphisms of the context-measurement incidence graph.
pub fn k33_automorphisms() -> Vec<K33Automorphism> {
    let mut out = Vec::with_capacity(72);
    for rp in permutations3() {
        for cp in permutations3() {
            for swap in [false, true] {
                let mut ctx_map = [0u8; N_CTX];
                for i in 0..3 {
                    ctx_map[i] = rp[i];
                    ctx_map[3 + i] = 3 + cp[i];
                }
                let base = K33Automorphism::from_ctx_map(ctx_map).unwrap();
                out.push(if swap { K33Automorphism::reflection().compose(&base) } else { base });
            }
        }
    }
    out.sort();
    out.dedup();
    assert_eq!(out.len(), 72);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_loops, LoopKind};
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn group_order_is_72() {
        assert_eq!(k33_automorphisms().len(), 72);
    }

    #[test]
    fn identity_fixes_all_edges() {
        let id = K33Automorphism::identity();
        for m in 0..9u8 {
            assert_eq!(id.meas_image(m), m);
        }
    }

    #[test]
    fn closed_under_composition_and_inverse() {
        let all: BTreeSet<_> = k33_automorphisms().into_iter().collect();
        let few: Vec<_> = all.iter().take(12).collect();
        for a in &few {
            assert!(all.contains(&a.inverse()));
            for b in &few {
                assert!(all.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn transitive_on_loops_within_each_kind() {
        let loops = enumerate_loops();
        let auts = k33_automorphisms();
        for kind in [LoopKind::FourCycle, LoopKind::SixCycle] {
            let of_kind: Vec<_> = loops.iter().filter(|l| l.kind() == Some(kind)).collect();
            let seed = of_kind[0];
            let orbit: BTreeSet<EdgeSet> =
                auts.iter().map(|a| a.edge_set_image(seed.edges())).collect();
            assert_eq!(orbit.len(), of_kind.len());
            for l in of_kind {
                assert!(orbit.contains(&l.edges()));
            }
        }
    }

    #[test]
    fn reflection_matches_stated_exchange() {
        let r = K33Automorphism::reflection();
        // C1_ver <-> C0_hor, C2_ver <-> C2_hor, C0_ver <-> C1_hor
        assert_eq!(r.ctx_image(4), 0);
        assert_eq!(r.ctx_image(0), 4);
        assert_eq!(r.ctx_image(5), 2);
        assert_eq!(r.ctx_image(2), 5);
        assert_eq!(r.ctx_image(3), 1);
        assert_eq!(r.ctx_image(1), 3);
    }
}

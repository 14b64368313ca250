use super::{all_ctx, ctx_edge_set, edge_set_to_vec, meas, EdgeSet, Meas};

/// A cycle of the K33 incidence graph, stored as its edge set.
///
/// Every loop meets every context in an even number (0 or 2) of
/// measurements, which is what makes outcome flips along a loop parity
/// preserving. There are fifteen: nine 4-cycles and six 6-cycles, and with
/// the empty set they form the Z2^4 cycle space under symmetric difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    edges: EdgeSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    FourCycle,
    SixCycle,
}

impl Loop {
    pub fn from_edges(edges: EdgeSet) -> Option<Loop> {
        let l = Loop { edges };
        l.is_cycle().then_some(l)
    }

    pub fn empty() -> Loop {
        Loop { edges: 0 }
    }

    pub fn edges(&self) -> EdgeSet {
        self.edges
    }

    pub fn members(&self) -> Vec<Meas> {
        edge_set_to_vec(self.edges)
    }

    pub fn contains(&self, m: Meas) -> bool {
        self.edges & (1 << m) != 0
    }

    pub fn len(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }

    pub fn kind(&self) -> Option<LoopKind> {
        match self.len() {
            4 => Some(LoopKind::FourCycle),
            6 => Some(LoopKind::SixCycle),
            _ => None,
        }
    }

    pub fn xor(&self, other: &Loop) -> Loop {
        Loop { edges: self.edges ^ other.edges }
    }

    /// Member of the cycle space: even intersection with every context.
    pub fn is_cycle(&self) -> bool {
        all_ctx().all(|c| (self.edges & ctx_edge_set(c)).count_ones() % 2 == 0)
    }
}

/// The fifteen nonempty loops, canonically ordered by sorted edge list.
pub fn enumerate_loops() -> Vec<Loop> {
    let mut out = Vec::with_capacity(15);
    // 4-cycles: a pair of rows and a pair of columns.
    for i1 in 0..3u8 {
        for i2 in i1 + 1..3 {
            for j1 in 0..3u8 {
                for j2 in j1 + 1..3 {
                    let edges = (1 << meas(i1, j1))
                        | (1 << meas(i1, j2))
                        | (1 << meas(i2, j1))
                        | (1 << meas(i2, j2));
                    out.push(Loop { edges });
                }
            }
        }
    }
    // 6-cycles: complements of the six transversals (one cell per row and
    // column); removing a perfect matching from K33 always leaves a single
    // 6-cycle.
    for p in permutations3() {
        let matching: EdgeSet = (0..3u8).map(|i| 1 << meas(i, p[i as usize])).sum();
        out.push(Loop { edges: super::ALL_EDGES & !matching });
    }
    debug_assert!(out.iter().all(|l| l.is_cycle()));
    out.sort_by(|a, b| edge_set_to_vec(a.edges).cmp(&edge_set_to_vec(b.edges)));
    out
}

/// All sixteen elements of the cycle space (the loops plus the empty set).
pub fn cycle_space() -> Vec<Loop> {
    let mut out = vec![Loop::empty()];
    out.extend(enumerate_loops());
    out
}

pub(crate) fn permutations3() -> [[u8; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

// Canonical generators of the cycle space, phrased through the CHSH
// embedding of the torus: the grid carries x_0 at m_00, y_0 at m_01,
// y_1 at m_10, x_1 at m_11, their XORs on the remaining cells and the
// total XOR z at m_22. Flipping the outcome of one CHSH measurement flips
// exactly the four grid cells whose expression contains it.

/// Flips `x_0`: cells {m_00, m_02, m_20, m_22}.
pub fn flip_loop_x0() -> Loop {
    Loop::from_edges((1 << meas(0, 0)) | (1 << meas(0, 2)) | (1 << meas(2, 0)) | (1 << meas(2, 2)))
        .unwrap()
}

/// Flips `x_1`: cells {m_11, m_12, m_21, m_22}.
pub fn flip_loop_x1() -> Loop {
    Loop::from_edges((1 << meas(1, 1)) | (1 << meas(1, 2)) | (1 << meas(2, 1)) | (1 << meas(2, 2)))
        .unwrap()
}

/// Flips `y_0`: cells {m_01, m_02, m_21, m_22}.
pub fn flip_loop_y0() -> Loop {
    Loop::from_edges((1 << meas(0, 1)) | (1 << meas(0, 2)) | (1 << meas(2, 1)) | (1 << meas(2, 2)))
        .unwrap()
}

/// Flips `y_1`: cells {m_10, m_12, m_20, m_22}.
pub fn flip_loop_y1() -> Loop {
    Loop::from_edges((1 << meas(1, 0)) | (1 << meas(1, 2)) | (1 << meas(2, 0)) | (1 << meas(2, 2)))
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn fifteen_loops_nine_four_six_six() {
        let loops = enumerate_loops();
        assert_eq!(loops.len(), 15);
        let four = loops.iter().filter(|l| l.kind() == Some(LoopKind::FourCycle)).count();
        let six = loops.iter().filter(|l| l.kind() == Some(LoopKind::SixCycle)).count();
        assert_eq!((four, six), (9, 6));
    }

    #[test]
    fn every_loop_meets_every_context_evenly() {
        for l in enumerate_loops() {
            for c in all_ctx() {
                let k = (l.edges() & ctx_edge_set(c)).count_ones();
                assert!(k == 0 || k == 2, "loop {:?} meets context {} in {} edges", l, c, k);
            }
        }
    }

    #[test]
    fn xor_with_self_is_empty() {
        for l in enumerate_loops() {
            assert!(l.xor(&l).is_empty());
        }
    }

    #[test]
    fn span_is_sixteen_elements() {
        let mut span = BTreeSet::new();
        span.insert(0 as EdgeSet);
        for l in enumerate_loops() {
            let cur: Vec<EdgeSet> = span.iter().copied().collect();
            for s in cur {
                span.insert(s ^ l.edges());
            }
        }
        assert_eq!(span.len(), 16);
        let space: BTreeSet<EdgeSet> = cycle_space().iter().map(|l| l.edges()).collect();
        assert_eq!(span, space);
    }

    #[test]
    fn canonical_generators_span_everything() {
        let gens = [flip_loop_x0(), flip_loop_x1(), flip_loop_y0(), flip_loop_y1()];
        let mut span = BTreeSet::new();
        for mask in 0u8..16 {
            let mut acc = Loop::empty();
            for (k, g) in gens.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    acc = acc.xor(g);
                }
            }
            span.insert(acc.edges());
        }
        assert_eq!(span.len(), 16, "the four flips generate the cycle space freely");
    }
}

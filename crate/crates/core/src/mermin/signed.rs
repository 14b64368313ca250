use num_traits::{Signed, Zero};

use super::{dist_from_expectations, ExpectationPoint, MerminDistribution, MerminError};
use crate::polytope::HPolytope;
use crate::scenario::{
    all_ctx, all_meas, ctx_members, BetaAssignment, EdgeSet, Loop, Meas, N_CTX, N_MEAS,
};
use crate::{rat, ratio, Rat};

/// A loop together with a sign per loop edge.
///
/// The induced displacement `p^phi` shifts a distribution along an edge
/// direction of the polytope: its context tables sum to zero, so adding
/// `alpha * p^phi` preserves normalization and nonsignaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedLoop {
    cycle: Loop,
    negatives: EdgeSet,
}

impl SignedLoop {
    pub fn new(cycle: Loop, negatives: EdgeSet) -> Self {
        assert_eq!(negatives & !cycle.edges(), 0, "signs must live on the loop");
        SignedLoop { cycle, negatives }
    }

    pub fn cycle(&self) -> &Loop {
        &self.cycle
    }

    /// `+1`, `-1` on loop edges, `0` elsewhere.
    pub fn phi(&self, m: Meas) -> Rat {
        if !self.cycle.contains(m) {
            rat(0)
        } else if self.negatives & (1 << m) != 0 {
            rat(-1)
        } else {
            rat(1)
        }
    }

    pub fn phi_vec(&self) -> Vec<Rat> {
        all_meas().map(|m| self.phi(m)).collect()
    }

    /// Recover the signed loop whose path joins two vertices: the support
    /// of `target - start` must be a loop with unit values.
    pub fn from_endpoints(start: &ExpectationPoint, target: &ExpectationPoint) -> Option<Self> {
        let mut edges: EdgeSet = 0;
        let mut negatives: EdgeSet = 0;
        for m in all_meas() {
            let d = target.get(m).clone() - start.get(m).clone();
            if d.is_zero() {
                continue;
            }
            edges |= 1 << m;
            if d == rat(-1) {
                negatives |= 1 << m;
            } else if d != rat(1) {
                return None;
            }
        }
        Loop::from_edges(edges).map(|cycle| SignedLoop { cycle, negatives })
    }
}

/// Per-context displacement tables of a signed loop, with phi zero off the
/// loop. Each table sums to zero; contexts disjoint from the loop vanish.
///
/// The normalization makes the edge parametrization come out right: along
/// `p(alpha) = q1 + alpha p^phi` every marginal moves at rate `phi(m)`, so
/// expectations move at rate `2 phi(m)` and the far vertex sits at
/// `alpha = 1/2` exactly.
pub fn signed_loop_displacement(phi: &SignedLoop, beta: &BetaAssignment) -> [[Rat; 4]; N_CTX] {
    let mut out: [[Rat; 4]; N_CTX] = std::array::from_fn(|_| std::array::from_fn(|_| rat(0)));
    for c in all_ctx() {
        let [x, y, z] = ctx_members(c);
        for ab in 0..4u8 {
            let (a, b) = (ab / 2, ab % 2);
            out[c as usize][ab as usize] = (sgn(a) * phi.phi(x)
                + sgn(b) * phi.phi(y)
                + sgn(a + b + beta.get(c)) * phi.phi(z))
                * ratio(1, 2);
        }
    }
    out
}

fn sgn(parity: u8) -> Rat {
    if parity % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// A loop path `p(alpha) = q1 + alpha p^phi`, `alpha` in `[0, 1/2]`.
#[derive(Debug, Clone)]
pub struct EdgePath {
    pub start: ExpectationPoint,
    pub phi: SignedLoop,
    pub endpoint: ExpectationPoint,
    /// Whether the segment is a genuine polytope edge (the endpoints are
    /// adjacent vertices). Some loop paths join non-neighbors.
    pub is_edge: bool,
}

impl EdgePath {
    /// The path point at parameter `alpha`; expectations move at twice the
    /// marginal rate.
    pub fn at(&self, alpha: &Rat) -> ExpectationPoint {
        let coords: [Rat; N_MEAS] = std::array::from_fn(|i| {
            self.start.coords()[i].clone() + rat(2) * alpha.clone() * self.phi.phi(i as Meas)
        });
        ExpectationPoint::new(coords).expect("path stays in the unit cube")
    }

    /// Distribution along the path.
    pub fn dist_at(&self, alpha: &Rat, beta: &BetaAssignment) -> MerminDistribution {
        dist_from_expectations(&self.at(alpha), beta)
    }
}

/// Follow a signed loop from a vertex of MP_beta.
///
/// Errors when the path immediately leaves the polytope (an invalid sign
/// choice); otherwise reports the endpoint `p(1/2)` and whether the pair is
/// adjacent in the polytope.
pub fn edge_path(
    p: &HPolytope<Rat>,
    q1: &ExpectationPoint,
    phi: &SignedLoop,
    beta: &BetaAssignment,
) -> Result<EdgePath, MerminError> {
    debug_assert!(p.is_vertex(&q1.as_vec()), "path must start at a vertex");
    // Feasibility for small alpha: every tight row must not decrease.
    let dir = phi.phi_vec();
    let tight = p.active_set(&q1.as_vec());
    for i in tight {
        let row = p.a().row(i);
        let mut slope = rat(0);
        for j in 0..dir.len() {
            if !dir[j].is_zero() && !row[j].is_zero() {
                slope += row[j].clone() * dir[j].clone();
            }
        }
        if slope.is_negative() {
            return Err(MerminError::InvalidDescriptor(format!(
                "sign choice leaves the polytope across row {i}"
            )));
        }
    }
    let start = q1.clone();
    let endpoint = {
        let coords: [Rat; N_MEAS] = std::array::from_fn(|i| {
            start.coords()[i].clone() + phi.phi(i as Meas)
        });
        ExpectationPoint::new(coords)?
    };
    let is_edge = p.is_vertex(&endpoint.as_vec())
        && p.are_adjacent(&start.as_vec(), &endpoint.as_vec());
    let _ = beta;
    Ok(EdgePath { start, phi: *phi, endpoint, is_edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mermin::build_h_rep;
    use crate::scenario::enumerate_loops;

    #[test]
    fn empty_loop_displaces_nothing() {
        let phi = SignedLoop::new(Loop::empty(), 0);
        let disp = signed_loop_displacement(&phi, &BetaAssignment::beta1());
        assert!(disp.iter().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn displacement_tables_sum_to_zero() {
        let beta = BetaAssignment::beta1();
        for l in enumerate_loops() {
            // a couple of sign choices per loop
            for negs in [0 as EdgeSet, l.edges() & (l.edges() - 1)] {
                let phi = SignedLoop::new(l, negs & l.edges());
                let disp = signed_loop_displacement(&phi, &beta);
                for c in all_ctx() {
                    let sum: Rat = disp[c as usize].iter().sum();
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn contexts_off_the_loop_are_untouched() {
        let beta = BetaAssignment::beta1();
        let l = enumerate_loops().into_iter().find(|l| l.len() == 4).unwrap();
        let phi = SignedLoop::new(l, 0);
        let disp = signed_loop_displacement(&phi, &beta);
        for c in all_ctx() {
            let touched = ctx_members(c).iter().any(|&m| l.contains(m));
            if !touched {
                assert!(disp[c as usize].iter().all(|v| v.is_zero()));
            }
        }
    }

    #[test]
    fn alpha_zero_returns_the_start() {
        let beta = BetaAssignment::beta0();
        let p = build_h_rep::<Rat>(&beta);
        let q = ExpectationPoint::from_vec(&vec![rat(1); 9]).unwrap();
        let l = crate::scenario::flip_loop_x0();
        // moving away from all-ones requires negative signs on the loop
        let phi = SignedLoop::new(l, l.edges());
        let path = edge_path(&p, &q, &phi, &beta).unwrap();
        assert_eq!(path.at(&rat(0)), q);
    }
}

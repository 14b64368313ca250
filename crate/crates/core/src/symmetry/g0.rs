use super::group::{FiniteGroup, GroupElement};
use crate::mermin::ExpectationPoint;
use crate::scenario::{
    cycle_space, k33_automorphisms, EdgeSet, K33Automorphism, Loop,
};
use crate::Rat;

/// Element of the even-class symmetry group: a loop flip together with an
/// incidence automorphism, composed by the semidirect law
/// `(f1, s1)(f2, s2) = (f1 xor s1(f2), s1 s2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct G0Element {
    flip: EdgeSet,
    perm: K33Automorphism,
}

impl G0Element {
    pub fn new(flip: Loop, perm: K33Automorphism) -> Self {
        G0Element { flip: flip.edges(), perm }
    }

    pub fn identity() -> Self {
        G0Element { flip: 0, perm: K33Automorphism::identity() }
    }

    pub fn from_flip(flip: Loop) -> Self {
        G0Element { flip: flip.edges(), perm: K33Automorphism::identity() }
    }

    pub fn from_perm(perm: K33Automorphism) -> Self {
        G0Element { flip: 0, perm }
    }

    pub fn flip(&self) -> Loop {
        Loop::from_edges(self.flip).expect("flip part stays in the cycle space")
    }

    pub fn perm(&self) -> &K33Automorphism {
        &self.perm
    }

    /// Permute coordinates by the edge map, then negate along the flip.
    pub fn act(&self, e: &ExpectationPoint) -> ExpectationPoint {
        let mut coords: [Rat; 9] = std::array::from_fn(|_| crate::rat(0));
        for m in 0..9u8 {
            let dst = self.perm.meas_image(m);
            let neg = self.flip & (1 << dst) != 0;
            let v = e.get(m).clone();
            coords[dst as usize] = if neg { -v } else { v };
        }
        ExpectationPoint::new(coords).expect("flips and permutations preserve the cube")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flip": crate::scenario::edge_set_to_vec(self.flip)
                .iter()
                .map(|&m| crate::scenario::meas_label(m))
                .collect::<Vec<_>>(),
            "perm": (0..6u8)
                .map(|c| (crate::scenario::ctx_label(c), crate::scenario::ctx_label(self.perm.ctx_image(c))))
                .collect::<std::collections::BTreeMap<_, _>>(),
        })
    }
}

impl GroupElement for G0Element {
    fn compose(&self, other: &Self) -> Self {
        G0Element {
            flip: self.flip ^ self.perm.edge_set_image(other.flip),
            perm: self.perm.compose(&other.perm),
        }
    }

    fn inverse(&self) -> Self {
        let perm_inv = self.perm.inverse();
        G0Element { flip: perm_inv.edge_set_image(self.flip), perm: perm_inv }
    }
}

/// The even-class symmetry group: all 16 x 72 = 1152 flip/automorphism
/// pairs under the semidirect composition.
pub fn generate_g0() -> FiniteGroup<G0Element> {
    let mut elements = Vec::with_capacity(1152);
    for l in cycle_space() {
        for a in k33_automorphisms() {
            elements.push(G0Element { flip: l.edges(), perm: a });
        }
    }
    FiniteGroup::from_elements(G0Element::identity(), elements)
}

use super::group::{FiniteGroup, GroupElement};
use super::pauli::{
    gate_h, gate_i, gate_s, gate_swap, grid_dictionary, nonlocal_from_index, nonlocal_index,
    Pauli2, ScaledUnitary,
};
use crate::mermin::ExpectationPoint;
use crate::scenario::{ctx_members, K33Automorphism, Meas, N_CTX};
use crate::Rat;

/// A signed permutation of the nine nonlocal Pauli labels: the conjugation
/// action of an element of the two-local-Clifford-plus-swap group.
///
/// `to[i]` is the image label index of nonlocal Pauli `i` and bit `i` of
/// `neg` records a `-1` sign on that image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct G1Element {
    to: [u8; 9],
    neg: u16,
}

impl G1Element {
    pub fn identity() -> Self {
        G1Element { to: [0, 1, 2, 3, 4, 5, 6, 7, 8], neg: 0 }
    }

    pub fn image(&self, p: &Pauli2) -> (Pauli2, i8) {
        let i = nonlocal_index(p);
        let sign = if self.neg & (1 << i) != 0 { -1 } else { 1 };
        (nonlocal_from_index(self.to[i] as usize), sign)
    }

    /// Conjugation action of a scaled unitary, provided it maps every
    /// nonlocal Pauli to a signed nonlocal Pauli.
    pub fn from_unitary(u: &ScaledUnitary) -> Option<Self> {
        let mut to = [0u8; 9];
        let mut neg: u16 = 0;
        for i in 0..9 {
            let (img, sign) = u.conjugate_pauli(&nonlocal_from_index(i))?;
            if !img.is_nonlocal() {
                return None;
            }
            to[i] = nonlocal_index(&img) as u8;
            if sign < 0 {
                neg |= 1 << i;
            }
        }
        Some(G1Element { to, neg })
    }

    /// Pure sign pattern: the permutation part is trivial.
    pub fn is_sign_flip(&self) -> bool {
        self.to == [0, 1, 2, 3, 4, 5, 6, 7, 8]
    }

    /// Pushforward on expectation coordinates: the coordinate at the image
    /// grid cell picks up the sign.
    pub fn act(&self, e: &ExpectationPoint) -> ExpectationPoint {
        let dict = grid_dictionary();
        let mut coords: [Rat; 9] = std::array::from_fn(|_| crate::rat(0));
        for i in 0..9u8 {
            let src = dict.meas(&nonlocal_from_index(i as usize));
            let (img, sign) = self.image(&nonlocal_from_index(i as usize));
            let dst = dict.meas(&img);
            coords[dst as usize] = crate::rat(sign as i64) * e.get(src).clone();
        }
        ExpectationPoint::new(coords).expect("signed permutations preserve the cube")
    }

    /// Induced permutation of the six contexts (signs discarded).
    pub fn context_action(&self) -> K33Automorphism {
        let dict = grid_dictionary();
        let mut ctx_map = [0u8; N_CTX];
        for c in 0..N_CTX as u8 {
            let triple = dict.context_triple(c);
            let mut images: Vec<Meas> =
                triple.iter().map(|p| dict.meas(&self.image(p).0)).collect();
            images.sort_unstable();
            let target = (0..N_CTX as u8)
                .find(|&c2| {
                    let mut ms = ctx_members(c2).to_vec();
                    ms.sort_unstable();
                    ms == images
                })
                .expect("images of a context form a context");
            ctx_map[c as usize] = target;
        }
        K33Automorphism::from_ctx_map(ctx_map).expect("context action is an automorphism")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for i in 0..9 {
            let p = nonlocal_from_index(i);
            let (img, sign) = self.image(&p);
            map.insert(
                p.name(),
                serde_json::json!({ "to": img.name(), "sign": sign }),
            );
        }
        serde_json::json!({ "images": map })
    }
}

impl GroupElement for G1Element {
    fn compose(&self, other: &Self) -> Self {
        let mut to = [0u8; 9];
        let mut neg: u16 = 0;
        for i in 0..9usize {
            let mid = other.to[i] as usize;
            to[i] = self.to[mid];
            let s = ((other.neg >> i) & 1) ^ ((self.neg >> mid) & 1);
            if s != 0 {
                neg |= 1 << i;
            }
        }
        G1Element { to, neg }
    }

    fn inverse(&self) -> Self {
        let mut to = [0u8; 9];
        let mut neg: u16 = 0;
        for i in 0..9usize {
            to[self.to[i] as usize] = i as u8;
            if (self.neg >> i) & 1 != 0 {
                neg |= 1 << self.to[i];
            }
        }
        G1Element { to, neg }
    }
}

/// The five generating conjugations.
pub fn g1_generators() -> Vec<(String, G1Element)> {
    let h = gate_h();
    let s = gate_s();
    let i = gate_i();
    let pairs = vec![
        ("H@1".to_string(), h.kron(&i)),
        ("S@1".to_string(), s.kron(&i)),
        ("1@H".to_string(), i.kron(&h)),
        ("1@S".to_string(), i.kron(&s)),
        ("SWAP".to_string(), gate_swap()),
    ];
    pairs
        .into_iter()
        .map(|(n, u)| (n, G1Element::from_unitary(&u).expect("generators act on nonlocal Paulis")))
        .collect()
}

/// The symmetry group of the odd-class polytope: closure of the local
/// Clifford conjugations and the factor swap, order 1152.
pub fn generate_g1() -> FiniteGroup<G1Element> {
    let gens: Vec<G1Element> = g1_generators().into_iter().map(|(_, g)| g).collect();
    FiniteGroup::generate(G1Element::identity(), &gens)
}

#[cfg(test)]
mod tests {
    use super::super::pauli::gate_y;
    use super::*;
    use crate::scenario::k33_automorphisms;
    use std::collections::BTreeSet;

    #[test]
    fn order_is_1152() {
        assert_eq!(generate_g1().order(), 1152);
    }

    #[test]
    fn swap_action_matches_factor_exchange() {
        let (_, sw) = g1_generators().into_iter().nth(4).unwrap();
        let (img, sign) = sw.image(&Pauli2::from_name("XY").unwrap());
        assert_eq!((img.name().as_str(), sign), ("YX", 1));
    }

    #[test]
    fn composite_conjugation_example() {
        // N = (X tensor YS) SWAP maps XY to -YY.
        let m = gate_x().kron(&gate_y().mul(&gate_s()));
        let n = m.mul(&gate_swap());
        let g = G1Element::from_unitary(&n).unwrap();
        let (img, sign) = g.image(&Pauli2::from_name("XY").unwrap());
        assert_eq!((img.name().as_str(), sign), ("YY", -1));
        // and fixes ZZ
        let (img2, sign2) = g.image(&Pauli2::from_name("ZZ").unwrap());
        assert_eq!((img2.name().as_str(), sign2), ("ZZ", 1));
    }

    use super::super::pauli::gate_x;

    #[test]
    fn identity_word_acts_trivially() {
        let (_, h1) = g1_generators().into_iter().next().unwrap();
        let id = h1.compose(&h1);
        assert_eq!(id, G1Element::identity());
    }

    #[test]
    fn sign_flip_kernel_has_order_16_and_quotient_is_aut_k33() {
        let g1 = generate_g1();
        let kernel: Vec<&G1Element> =
            g1.elements().iter().filter(|e| e.is_sign_flip()).collect();
        assert_eq!(kernel.len(), 16);
        let quotient: BTreeSet<K33Automorphism> =
            g1.elements().iter().map(|e| e.context_action()).collect();
        let full: BTreeSet<K33Automorphism> = k33_automorphisms().into_iter().collect();
        assert_eq!(quotient, full);
    }

    #[test]
    fn kernel_is_pauli_conjugation() {
        // conjugation by the sixteen Pauli labels gives exactly the sign
        // flips with trivial permutation part
        let g1 = generate_g1();
        let mut paulis = Vec::new();
        for a in [gate_i(), gate_x(), gate_y(), super::super::pauli::gate_z()] {
            for b in [gate_i(), gate_x(), gate_y(), super::super::pauli::gate_z()] {
                paulis.push(a.kron(&b));
            }
        }
        let images: BTreeSet<G1Element> =
            paulis.iter().map(|u| G1Element::from_unitary(u).unwrap()).collect();
        assert_eq!(images.len(), 16);
        for e in &images {
            assert!(e.is_sign_flip());
            assert!(g1.contains(e));
        }
    }

    #[test]
    fn single_qubit_clifford_presentation_relations() {
        // h^2 = s^4 = (hs)^3 = identity as conjugation actions
        let gens = g1_generators();
        let h = &gens[0].1;
        let s = &gens[1].1;
        assert_eq!(h.compose(h), G1Element::identity());
        let s2 = s.compose(s);
        assert_eq!(s2.compose(&s2), G1Element::identity());
        let hs = h.compose(s);
        assert_eq!(hs.compose(&hs).compose(&hs), G1Element::identity());
    }
}

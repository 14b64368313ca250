//! Symmetry groups of the Mermin polytopes: the loop-flip/graph-automorphism
//! group acting on the even-class polytope, the local-Clifford-plus-swap
//! group acting on the odd-class one, orbit/stabilizer machinery, dihedral
//! recognition, and the explicit isomorphism between the two groups.

mod g0;
mod g1;
mod group;
mod pauli;
mod phi;

pub use g0::{generate_g0, G0Element};
pub use g1::{g1_generators, generate_g1, G1Element};
pub use group::{FiniteGroup, GroupElement};
pub use pauli::{
    all_paulis, commuting_triples, expectations_from_pauli_signs, gate_h, gate_i, gate_s,
    gate_swap, gate_x, gate_y, gate_z, grid_dictionary, nonlocal_from_index, nonlocal_index,
    nonlocal_paulis, pauli1_matrix, triple_sign, GridDictionary, Pauli2, ScaledUnitary,
};
pub use phi::{solve_loop_aliases, verify_phi_isomorphism, LoopAliases, PhiReport};

use crate::mermin::ExpectationPoint;
use crate::rat;

/// Conjugate a Pauli by one of the named generators
/// `H@1, S@1, 1@H, 1@S, SWAP`; exact matrix conjugation underneath.
pub fn conjugate(generator: &str, p: &Pauli2) -> Option<(Pauli2, i8)> {
    let u = named_generator(generator)?;
    u.conjugate_pauli(p)
}

pub fn named_generator(name: &str) -> Option<ScaledUnitary> {
    let u = match name {
        "H@1" => gate_h().kron(&gate_i()),
        "S@1" => gate_s().kron(&gate_i()),
        "1@H" => gate_i().kron(&gate_h()),
        "1@S" => gate_i().kron(&gate_s()),
        "SWAP" => gate_swap(),
        _ => return None,
    };
    Some(u)
}

/// The deterministic all-plus-one point: the canonical even-class vertex.
pub fn canonical_even_vertex() -> ExpectationPoint {
    ExpectationPoint::from_vec(&vec![rat(1); 9]).unwrap()
}

/// Canonical type-1 vertex of the odd-class polytope:
/// `(1 + XY - YY + ZY) / 4` as an operator.
pub fn canonical_type1_vertex() -> ExpectationPoint {
    expectations_from_pauli_signs(&[("XY", 1), ("YY", -1), ("ZY", 1)])
}

/// Canonical type-2 vertex: `(1 + XX + XY + YX - YY + ZZ) / 4`.
pub fn canonical_type2_vertex() -> ExpectationPoint {
    expectations_from_pauli_signs(&[("XX", 1), ("XY", 1), ("YX", 1), ("YY", -1), ("ZZ", 1)])
}

/// Type-2 neighbor orbit representative
/// `(1 + XX + XY - YZ + ZX - ZY) / 4` of the canonical type-2 vertex.
pub fn type2_neighbor_rep_a() -> ExpectationPoint {
    expectations_from_pauli_signs(&[("XX", 1), ("XY", 1), ("YZ", -1), ("ZX", 1), ("ZY", -1)])
}

/// The other type-2 neighbor orbit representative
/// `(1 + XX - YY - YZ - ZY + ZZ) / 4`.
pub fn type2_neighbor_rep_b() -> ExpectationPoint {
    expectations_from_pauli_signs(&[("XX", 1), ("YY", -1), ("YZ", -1), ("ZY", -1), ("ZZ", 1)])
}

/// Type-1 point `(1 + ZX - ZY + ZZ) / 4`: reachable from the canonical
/// type-2 vertex along a loop path, yet not adjacent to it.
pub fn nonneighbor_type1_rep() -> ExpectationPoint {
    expectations_from_pauli_signs(&[("ZX", 1), ("ZY", -1), ("ZZ", 1)])
}

/// Named stabilizer generators used in the appendix-style computations.
pub fn unitary_q() -> ScaledUnitary {
    // YS tensor X
    gate_y().mul(&gate_s()).kron(&gate_x())
}

pub fn unitary_r() -> ScaledUnitary {
    // YH tensor H
    gate_y().mul(&gate_h()).kron(&gate_h())
}

pub fn unitary_m() -> ScaledUnitary {
    // X tensor YS
    gate_x().kron(&gate_y().mul(&gate_s()))
}

pub fn unitary_n() -> ScaledUnitary {
    // (X tensor YS) SWAP
    unitary_m().mul(&gate_swap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_conjugation_examples() {
        // SWAP: XY -> YX
        let (img, s) = conjugate("SWAP", &Pauli2::from_name("XY").unwrap()).unwrap();
        assert_eq!((img.name().as_str(), s), ("YX", 1));
        // identity word: H@1 twice
        let h = named_generator("H@1").unwrap();
        let hh = h.mul(&h);
        let (img, s) = hh.conjugate_pauli(&Pauli2::from_name("YZ").unwrap()).unwrap();
        assert_eq!((img.name().as_str(), s), ("YZ", 1));
    }

    #[test]
    fn n_acts_as_the_composite_conjugation() {
        // N = (X tensor YS) SWAP: XY -> -YY
        let n = unitary_n();
        let (img, s) = n.conjugate_pauli(&Pauli2::from_name("XY").unwrap()).unwrap();
        assert_eq!((img.name().as_str(), s), ("YY", -1));
    }

    #[test]
    fn canonical_vertices_are_valid_cnc_patterns() {
        use crate::mermin::descriptor_from_vertex;
        use crate::scenario::{BetaAssignment, CncKind};
        let beta = BetaAssignment::beta1();
        let v1 = descriptor_from_vertex(&canonical_type1_vertex(), &beta).unwrap();
        assert_eq!(v1.kind(), Some(CncKind::Type1));
        let v2 = descriptor_from_vertex(&canonical_type2_vertex(), &beta).unwrap();
        assert_eq!(v2.kind(), Some(CncKind::Type2));
        for v in [type2_neighbor_rep_a(), type2_neighbor_rep_b()] {
            assert_eq!(descriptor_from_vertex(&v, &beta).unwrap().kind(), Some(CncKind::Type2));
        }
        assert_eq!(
            descriptor_from_vertex(&nonneighbor_type1_rep(), &beta).unwrap().kind(),
            Some(CncKind::Type1)
        );
    }

    #[test]
    fn stabilizer_generators_fix_their_vertices() {
        let q = G1Element::from_unitary(&unitary_q()).unwrap();
        let r = G1Element::from_unitary(&unitary_r()).unwrap();
        let v1 = canonical_type1_vertex();
        assert_eq!(q.act(&v1), v1);
        assert_eq!(r.act(&v1), v1);
        let m = G1Element::from_unitary(&unitary_m()).unwrap();
        let sw = G1Element::from_unitary(&gate_swap()).unwrap();
        let v2 = canonical_type2_vertex();
        assert_eq!(m.act(&v2), v2);
        assert_eq!(sw.act(&v2), v2);
    }
}

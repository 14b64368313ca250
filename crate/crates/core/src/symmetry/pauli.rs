use std::sync::OnceLock;

use num_traits::Zero;

use crate::linalg::CMat;
use crate::mermin::ExpectationPoint;
use crate::scenario::{ctx_members, meas, Ctx, Meas};
use crate::{rat, CRat, Rat};

/// Two-qubit Pauli label: factor codes 0 = I, 1 = X, 2 = Y, 3 = Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pauli2 {
    pub first: u8,
    pub second: u8,
}

pub const FACTOR_NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];

impl Pauli2 {
    pub fn new(first: u8, second: u8) -> Self {
        assert!(first < 4 && second < 4);
        Pauli2 { first, second }
    }

    pub fn identity() -> Self {
        Pauli2 { first: 0, second: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.first == 0 && self.second == 0
    }

    pub fn is_local(&self) -> bool {
        (self.first == 0) != (self.second == 0)
    }

    pub fn is_nonlocal(&self) -> bool {
        self.first != 0 && self.second != 0
    }

    pub fn name(&self) -> String {
        format!("{}{}", FACTOR_NAMES[self.first as usize], FACTOR_NAMES[self.second as usize])
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 2 {
            return None;
        }
        let code = |c: char| FACTOR_NAMES.iter().position(|&f| f == c).map(|k| k as u8);
        Some(Pauli2::new(code(chars[0])?, code(chars[1])?))
    }

    /// Symplectic coordinates of one factor: I=(0,0), X=(0,1), Y=(1,1),
    /// Z=(1,0).
    fn factor_vec(code: u8) -> (u8, u8) {
        match code {
            0 => (0, 0),
            1 => (0, 1),
            2 => (1, 1),
            3 => (1, 0),
            _ => unreachable!(),
        }
    }

    /// Operator commutation: the per-factor anticommutation indicators must
    /// sum to zero mod 2. (Two single-qubit Paulis anticommute iff both are
    /// nonidentity and distinct.)
    pub fn commutes(&self, other: &Pauli2) -> bool {
        let anti = |a: u8, b: u8| {
            let (a1, a2) = Self::factor_vec(a);
            let (b1, b2) = Self::factor_vec(b);
            (a1 & b2) ^ (a2 & b1)
        };
        (anti(self.first, other.first) ^ anti(self.second, other.second)) == 0
    }

    /// Label-level product ignoring phase.
    pub fn times(&self, other: &Pauli2) -> Pauli2 {
        let mul = |a: u8, b: u8| {
            let (a1, a2) = Self::factor_vec(a);
            let (b1, b2) = Self::factor_vec(b);
            match (a1 ^ b1, a2 ^ b2) {
                (0, 0) => 0,
                (0, 1) => 1,
                (1, 1) => 2,
                (1, 0) => 3,
                _ => unreachable!(),
            }
        };
        Pauli2::new(mul(self.first, other.first), mul(self.second, other.second))
    }

    pub fn matrix(&self) -> CMat {
        pauli1_matrix(self.first).kron(&pauli1_matrix(self.second))
    }
}

pub fn pauli1_matrix(code: u8) -> CMat {
    match code {
        0 => CMat::from_gauss_int(&[&[(1, 0), (0, 0)], &[(0, 0), (1, 0)]]),
        1 => CMat::from_gauss_int(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        2 => CMat::from_gauss_int(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
        3 => CMat::from_gauss_int(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
        _ => unreachable!(),
    }
}

/// All sixteen labels, identity first, then the 6 local, then the 9
/// nonlocal, each block sorted.
pub fn all_paulis() -> Vec<Pauli2> {
    let mut locals = Vec::new();
    let mut nonlocals = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            let p = Pauli2::new(a, b);
            if p.is_local() {
                locals.push(p);
            } else if p.is_nonlocal() {
                nonlocals.push(p);
            }
        }
    }
    locals.sort();
    nonlocals.sort();
    let mut out = vec![Pauli2::identity()];
    out.extend(locals);
    out.extend(nonlocals);
    out
}

/// The nine nonlocal labels in canonical (sorted) order.
pub fn nonlocal_paulis() -> Vec<Pauli2> {
    all_paulis().into_iter().filter(|p| p.is_nonlocal()).collect()
}

pub fn nonlocal_index(p: &Pauli2) -> usize {
    debug_assert!(p.is_nonlocal());
    (p.first as usize - 1) * 3 + (p.second as usize - 1)
}

pub fn nonlocal_from_index(i: usize) -> Pauli2 {
    Pauli2::new((i / 3) as u8 + 1, (i % 3) as u8 + 1)
}

/// A scaled unitary `U` with `U U^dagger = norm * I`; conjugation divides
/// by the norm, so the Hadamard factor sqrt(2) never has to be represented.
#[derive(Debug, Clone)]
pub struct ScaledUnitary {
    pub mat: CMat,
    pub norm: Rat,
}

impl ScaledUnitary {
    pub fn new(mat: CMat, norm: Rat) -> Self {
        debug_assert_eq!(
            mat.mul(&mat.dagger()),
            CMat::identity(mat.dim()).scale(&CRat::new(norm.clone(), rat(0)))
        );
        ScaledUnitary { mat, norm }
    }

    pub fn mul(&self, other: &ScaledUnitary) -> ScaledUnitary {
        ScaledUnitary {
            mat: self.mat.mul(&other.mat),
            norm: self.norm.clone() * other.norm.clone(),
        }
    }

    pub fn kron(&self, other: &ScaledUnitary) -> ScaledUnitary {
        ScaledUnitary {
            mat: self.mat.kron(&other.mat),
            norm: self.norm.clone() * other.norm.clone(),
        }
    }

    /// `U A U^dagger / norm`.
    pub fn conjugate_mat(&self, a: &CMat) -> CMat {
        self.mat
            .mul(a)
            .mul(&self.mat.dagger())
            .scale(&CRat::new(rat(1) / self.norm.clone(), rat(0)))
    }

    /// Image of a Pauli under conjugation, as a signed Pauli. `None` if the
    /// image is not proportional to a Pauli (never happens for Cliffords).
    pub fn conjugate_pauli(&self, p: &Pauli2) -> Option<(Pauli2, i8)> {
        let img = self.conjugate_mat(&p.matrix());
        for q in all_paulis() {
            if let Some(c) = img.scalar_multiple_of(&q.matrix()) {
                if c.im.is_zero() {
                    if c.re == rat(1) {
                        return Some((q, 1));
                    }
                    if c.re == rat(-1) {
                        return Some((q, -1));
                    }
                }
            }
        }
        None
    }
}

pub fn gate_i() -> ScaledUnitary {
    ScaledUnitary::new(CMat::identity(2), rat(1))
}

/// Hadamard, unnormalized: the 1/sqrt(2) lives in the norm 2.
pub fn gate_h() -> ScaledUnitary {
    ScaledUnitary::new(CMat::from_gauss_int(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]]), rat(2))
}

pub fn gate_s() -> ScaledUnitary {
    ScaledUnitary::new(CMat::from_gauss_int(&[&[(1, 0), (0, 0)], &[(0, 0), (0, 1)]]), rat(1))
}

pub fn gate_x() -> ScaledUnitary {
    ScaledUnitary::new(pauli1_matrix(1), rat(1))
}

pub fn gate_y() -> ScaledUnitary {
    ScaledUnitary::new(pauli1_matrix(2), rat(1))
}

pub fn gate_z() -> ScaledUnitary {
    ScaledUnitary::new(pauli1_matrix(3), rat(1))
}

pub fn gate_swap() -> ScaledUnitary {
    ScaledUnitary::new(
        CMat::from_gauss_int(&[
            &[(1, 0), (0, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (1, 0), (0, 0)],
            &[(0, 0), (1, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0), (1, 0)],
        ]),
        rat(1),
    )
}

// ---------------------------------------------------------------------------
// Grid dictionary.
//
// The abstract grid positions and the nonlocal Pauli labels are matched by
// structure, not by fiat: rows and columns must be the maximal pairwise
// commuting triples of nonlocal Paulis, with the rows carrying operator
// product +1 and the columns product -1. That splits the six triples 3 + 3;
// sorting each side lexicographically fixes the bijection.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GridDictionary {
    to_pauli: [Pauli2; 9],
    to_meas: std::collections::BTreeMap<Pauli2, Meas>,
}

impl GridDictionary {
    pub fn pauli(&self, m: Meas) -> Pauli2 {
        self.to_pauli[m as usize]
    }

    pub fn meas(&self, p: &Pauli2) -> Meas {
        self.to_meas[p]
    }

    /// The three Pauli labels of a context, in grid member order.
    pub fn context_triple(&self, c: Ctx) -> [Pauli2; 3] {
        let ms = ctx_members(c);
        std::array::from_fn(|k| self.pauli(ms[k]))
    }

    /// Operator product sign of a commuting triple.
    pub fn context_sign(&self, c: Ctx) -> i8 {
        triple_sign(&self.context_triple(c))
    }
}

/// Sign `s` with `T_a T_b T_c = s * I` for a pairwise commuting triple whose
/// labels multiply to the identity.
pub fn triple_sign(triple: &[Pauli2; 3]) -> i8 {
    let prod = triple[0].matrix().mul(&triple[1].matrix()).mul(&triple[2].matrix());
    let c = prod.scalar_multiple_of(&CMat::identity(4)).expect("triple multiplies to a scalar");
    assert!(c.im.is_zero());
    if c.re == rat(1) {
        1
    } else if c.re == rat(-1) {
        -1
    } else {
        panic!("triple product is not +/-1");
    }
}

/// The six maximal pairwise-commuting triples of nonlocal Paulis.
pub fn commuting_triples() -> Vec<[Pauli2; 3]> {
    let nl = nonlocal_paulis();
    let mut out = Vec::new();
    for i in 0..nl.len() {
        for j in i + 1..nl.len() {
            for k in j + 1..nl.len() {
                let t = [nl[i], nl[j], nl[k]];
                if t[0].commutes(&t[1])
                    && t[0].commutes(&t[2])
                    && t[1].commutes(&t[2])
                    && t[0].times(&t[1]) == t[2]
                {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    assert_eq!(out.len(), 6, "exactly six nonlocal commuting triples");
    out
}

pub fn grid_dictionary() -> &'static GridDictionary {
    static DICT: OnceLock<GridDictionary> = OnceLock::new();
    DICT.get_or_init(|| {
        let triples = commuting_triples();
        let mut rows: Vec<[Pauli2; 3]> = Vec::new();
        let mut cols: Vec<[Pauli2; 3]> = Vec::new();
        for t in triples {
            match triple_sign(&t) {
                1 => rows.push(t),
                _ => cols.push(t),
            }
        }
        assert_eq!((rows.len(), cols.len()), (3, 3), "three triples of each product sign");
        rows.sort();
        cols.sort();
        let mut to_pauli = [Pauli2::identity(); 9];
        let mut to_meas = std::collections::BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, col) in cols.iter().enumerate() {
                let common: Vec<Pauli2> =
                    row.iter().filter(|p| col.contains(p)).copied().collect();
                assert_eq!(common.len(), 1, "a row and a column share one label");
                let m = meas(i as u8, j as u8);
                to_pauli[m as usize] = common[0];
                to_meas.insert(common[0], m);
            }
        }
        assert_eq!(to_meas.len(), 9);
        GridDictionary { to_pauli, to_meas }
    })
}

/// Expectation point with the given signs on the named nonlocal Paulis and
/// zero elsewhere.
pub fn expectations_from_pauli_signs(signs: &[(&str, i8)]) -> ExpectationPoint {
    let dict = grid_dictionary();
    let mut coords: [Rat; 9] = std::array::from_fn(|_| rat(0));
    for (name, s) in signs {
        let p = Pauli2::from_name(name).expect("valid pauli name");
        coords[dict.meas(&p) as usize] = rat(*s as i64);
    }
    ExpectationPoint::new(coords).expect("signs are in range")
}

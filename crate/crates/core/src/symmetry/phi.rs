use std::collections::{BTreeSet, HashMap};

use super::g0::G0Element;
use super::g1::{g1_generators, G1Element};
use super::group::GroupElement;
use super::pauli::{gate_i, gate_x, gate_z};
use crate::scenario::{enumerate_loops, EdgeSet, K33Automorphism, Loop};

/// Resolved names for the six 6-cycles.
///
/// The isomorphism below carries the local-Clifford generators to
/// flip/automorphism pairs whose flip parts are 6-cycles known only by
/// name; the names are pinned by requiring all group relations, the
/// restriction to the Pauli-conjugation kernel, and the commuting square
/// with the context action to hold simultaneously. The constraint system
/// has a solution, and it is unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopAliases {
    // slots[k] holds the cycle in name slot k+1
    slots: [Loop; 6],
}

impl LoopAliases {
    pub fn get(&self, slot: usize) -> Loop {
        assert!((1..=6).contains(&slot));
        self.slots[slot - 1]
    }

    pub fn slot_of(&self, l: &Loop) -> Option<usize> {
        self.slots.iter().position(|s| s == l).map(|k| k + 1)
    }
}

struct PhiData {
    sigma_h: K33Automorphism,
    sigma_s: K33Automorphism,
    sigma_w: K33Automorphism,
    g1_h: G1Element,
    g1_s: G1Element,
    g1_w: G1Element,
}

fn phi_data() -> PhiData {
    let gens: HashMap<String, G1Element> = g1_generators().into_iter().collect();
    let g1_h = gens["H@1"];
    let g1_s = gens["S@1"];
    let g1_w = gens["SWAP"];
    PhiData {
        sigma_h: g1_h.context_action(),
        sigma_s: g1_s.context_action(),
        sigma_w: g1_w.context_action(),
        g1_h,
        g1_s,
        g1_w,
    }
}

/// Candidate images of the three generators for a given alias assignment.
fn phi_images(aliases: &LoopAliases, data: &PhiData) -> (G0Element, G0Element, G0Element) {
    (
        G0Element::new(aliases.get(5), data.sigma_h),
        G0Element::new(aliases.get(3), data.sigma_s),
        G0Element::new(Loop::empty(), data.sigma_w),
    )
}

fn satisfies_constraints(aliases: &LoopAliases, data: &PhiData) -> bool {
    let (ph, ps, pw) = phi_images(aliases, data);
    let id = G0Element::identity();
    // Presentation relations.
    if pw.compose(&pw) != id || ph.compose(&ph) != id {
        return false;
    }
    let s2 = ps.compose(&ps);
    if s2.compose(&s2) != id {
        return false;
    }
    let hs = ph.compose(&ps);
    if hs.compose(&hs).compose(&hs) != id {
        return false;
    }
    let whw = pw.compose(&ph).compose(&pw);
    let wsw = pw.compose(&ps).compose(&pw);
    for (a, b) in [(&ph, &whw), (&ph, &wsw), (&ps, &whw), (&ps, &wsw)] {
        if a.compose(b) != b.compose(a) {
            return false;
        }
    }
    // Kernel restriction: conjugation by Z@1 is s^2, by X@1 is h s^2 h, and
    // the swapped versions move to the second factor. Their images must be
    // the named pure flips.
    let z1 = s2;
    let x1 = ph.compose(&z1).compose(&ph);
    let z2 = pw.compose(&z1).compose(&pw);
    let x2 = pw.compose(&x1).compose(&pw);
    let pure = |l: Loop| G0Element::from_flip(l);
    if z1 != pure(aliases.get(4)) || x1 != pure(aliases.get(3)) {
        return false;
    }
    if z2 != pure(aliases.get(2)) || x2 != pure(aliases.get(6)) {
        return false;
    }
    // Anchor for slot 1: the flip part of phi(w) phi(h) phi(w).
    if whw != G0Element::new(aliases.get(1), data.sigma_w.compose(&data.sigma_h).compose(&data.sigma_w)) {
        return false;
    }
    // The kernel map must be an isomorphism onto the cycle space:
    // slots 2, 3, 4, 6 independent.
    let mut span: BTreeSet<EdgeSet> = BTreeSet::new();
    span.insert(0);
    for slot in [2usize, 3, 4, 6] {
        let l = aliases.get(slot).edges();
        let cur: Vec<EdgeSet> = span.iter().copied().collect();
        for s in cur {
            span.insert(s ^ l);
        }
    }
    span.len() == 16
}

/// Search the alias assignment; returns the solutions in canonical order.
pub fn solve_loop_aliases() -> Vec<LoopAliases> {
    let data = phi_data();
    let six: Vec<Loop> =
        enumerate_loops().into_iter().filter(|l| l.len() == 6).collect();
    assert_eq!(six.len(), 6);
    let mut found = Vec::new();
    let mut idx = [0usize; 6];
    permute(&mut idx, 0, &six, &data, &mut found);
    found
}

fn permute(
    idx: &mut [usize; 6],
    depth: usize,
    six: &[Loop],
    data: &PhiData,
    found: &mut Vec<LoopAliases>,
) {
    if depth == 6 {
        let aliases = LoopAliases { slots: std::array::from_fn(|k| six[idx[k]]) };
        if satisfies_constraints(&aliases, data) {
            found.push(aliases);
        }
        return;
    }
    for k in 0..6 {
        if idx[..depth].contains(&k) {
            continue;
        }
        idx[depth] = k;
        permute(idx, depth + 1, six, data, found);
    }
}

/// Full verification of the group isomorphism.
#[derive(Debug, Clone)]
pub struct PhiReport {
    pub aliases: LoopAliases,
    pub alias_unique: bool,
    pub homomorphism: bool,
    pub injective: bool,
    pub image_order: usize,
    pub right_square: bool,
    pub left_square: bool,
    pub hs_cubed_is_identity: bool,
    pub whw_matches_named_flip: bool,
}

impl PhiReport {
    pub fn all_ok(&self) -> bool {
        self.homomorphism
            && self.injective
            && self.image_order == 1152
            && self.right_square
            && self.left_square
            && self.hs_cubed_is_identity
            && self.whw_matches_named_flip
    }
}

/// Build the pairing (g, phi(g)) by closing the generator pairs under
/// composition. Single-valuedness of the pairing proves phi extends to a
/// homomorphism on the whole group; counting distinct images proves
/// bijectivity; the permutation parts realize the context-action square.
pub fn verify_phi_isomorphism() -> PhiReport {
    let data = phi_data();
    let solutions = solve_loop_aliases();
    assert!(!solutions.is_empty(), "alias constraint system must be solvable");
    let aliases = solutions[0];
    let (ph, ps, pw) = phi_images(&aliases, &data);

    let gen_pairs =
        [(data.g1_h, ph), (data.g1_s, ps), (data.g1_w, pw)];
    let mut map: HashMap<G1Element, G0Element> = HashMap::new();
    map.insert(G1Element::identity(), G0Element::identity());
    let mut frontier = vec![G1Element::identity()];
    let mut homomorphism = true;
    while let Some(g) = frontier.pop() {
        let img = map[&g];
        for (a, pa) in &gen_pairs {
            let h = a.compose(&g);
            let himg = pa.compose(&img);
            match map.get(&h) {
                None => {
                    map.insert(h, himg);
                    frontier.push(h);
                }
                Some(existing) => {
                    if *existing != himg {
                        homomorphism = false;
                    }
                }
            }
        }
    }
    let image: BTreeSet<G0Element> = map.values().copied().collect();
    let injective = image.len() == map.len();
    let right_square = map.iter().all(|(g, im)| g.context_action() == *im.perm());

    // Restriction to the Pauli conjugations.
    let x1 = G1Element::from_unitary(&gate_x().kron(&gate_i())).unwrap();
    let z1 = G1Element::from_unitary(&gate_z().kron(&gate_i())).unwrap();
    let x2 = G1Element::from_unitary(&gate_i().kron(&gate_x())).unwrap();
    let z2 = G1Element::from_unitary(&gate_i().kron(&gate_z())).unwrap();
    let left_square = map.get(&x1) == Some(&G0Element::from_flip(aliases.get(3)))
        && map.get(&z1) == Some(&G0Element::from_flip(aliases.get(4)))
        && map.get(&x2) == Some(&G0Element::from_flip(aliases.get(6)))
        && map.get(&z2) == Some(&G0Element::from_flip(aliases.get(2)));

    let hs = ph.compose(&ps);
    let hs_cubed_is_identity = hs.compose(&hs).compose(&hs) == G0Element::identity();
    let whw = pw.compose(&ph).compose(&pw);
    let whw_matches_named_flip = whw.flip() == aliases.get(1)
        && *whw.perm() == data.g1_w.compose(&data.g1_h).compose(&data.g1_w).context_action();

    PhiReport {
        aliases,
        alias_unique: solutions.len() == 1,
        homomorphism,
        injective,
        image_order: image.len(),
        right_square,
        left_square,
        hs_cubed_is_identity,
        whw_matches_named_flip,
    }
}

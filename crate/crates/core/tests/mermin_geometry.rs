//! Geometry of the odd-class polytope around its canonical vertices: the
//! printed distributions, signed-loop edges, zero patterns, symmetry
//! invariance and the two-edge closure law.

use merminpoly::mermin::{
    descriptor_from_vertex, dist_from_expectations, edge_path, enumerate_mp_vertices,
    expectations_from_dist, in_polytope_by_tables, signed_loop_displacement, zero_pattern,
    ExpectationPoint, SignedLoop,
};
use merminpoly::scenario::{all_ctx, BetaAssignment, CncKind};
use merminpoly::symmetry::{
    canonical_even_vertex, canonical_type1_vertex, canonical_type2_vertex, generate_g0,
    generate_g1, grid_dictionary, nonneighbor_type1_rep, type2_neighbor_rep_a,
    type2_neighbor_rep_b, G0Element, G1Element, Pauli2,
};
use merminpoly::{rat, ratio, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn act1(g: &G1Element, e: &ExpectationPoint) -> ExpectationPoint {
    g.act(e)
}

#[test]
fn canonical_type1_distribution_matches_the_printed_tables() {
    // quarter weights on the two supported outcomes of every context that
    // meets the carrier in one measurement; point masses inside it
    let beta = BetaAssignment::beta1();
    let e = canonical_type1_vertex();
    let d = dist_from_expectations(&e, &beta);
    assert!(d.is_proper());
    assert_eq!(expectations_from_dist(&d).unwrap(), e);
    // the carrier column: XY at +1, YY at -1, ZY at +1
    let dict = grid_dictionary();
    assert_eq!(e.get(dict.meas(&Pauli2::from_name("XY").unwrap())), &rat(1));
    assert_eq!(e.get(dict.meas(&Pauli2::from_name("YY").unwrap())), &rat(-1));
    assert_eq!(e.get(dict.meas(&Pauli2::from_name("ZY").unwrap())), &rat(1));
    let off: Vec<&str> = vec!["XX", "XZ", "YX", "YZ", "ZX", "ZZ"];
    for name in off {
        assert!(e.get(dict.meas(&Pauli2::from_name(name).unwrap())).is_zero());
    }
}

#[test]
fn canonical_type2_zero_pattern_is_two_adjacent_deterministic_triangles() {
    let beta = BetaAssignment::beta1();
    let d = dist_from_expectations(&canonical_type2_vertex(), &beta);
    let z = zero_pattern(&d).unwrap();
    assert_eq!((z.n3, z.n2, z.n1), (2, 4, 0));
    assert_eq!(z.deterministic_triangles.len(), 2);
    // adjacent: the two deterministic triangles share a measurement
    let [c1, c2] = [z.deterministic_triangles[0], z.deterministic_triangles[1]];
    let shared = merminpoly::scenario::ctx_edge_set(c1) & merminpoly::scenario::ctx_edge_set(c2);
    assert_eq!(shared.count_ones(), 1);
    assert_eq!(z.deterministic_edges.len(), 5);
}

#[test]
fn signed_loops_reach_the_three_neighbor_representatives() {
    let beta = BetaAssignment::beta1();
    let (p, _) = enumerate_mp_vertices(&beta).unwrap();
    let p0 = canonical_type2_vertex();
    for (target, expect_type1) in [
        (canonical_type1_vertex(), true),
        (type2_neighbor_rep_a(), false),
        (type2_neighbor_rep_b(), false),
    ] {
        let phi = SignedLoop::from_endpoints(&p0, &target).expect("difference is a signed loop");
        if expect_type1 {
            assert_eq!(phi.cycle().len(), 4);
        }
        let path = edge_path(&p, &p0, &phi, &beta).unwrap();
        assert_eq!(path.endpoint, target);
        assert!(path.is_edge, "the canonical neighbors are joined by edges");
        assert_eq!(path.at(&rat(0)), p0);
        assert_eq!(path.at(&ratio(1, 2)), target);
        // midpoint stays strictly inside the supporting segment
        let mid = path.dist_at(&ratio(1, 4), &beta);
        assert!(mid.is_proper());
    }
    // the non-neighbor representative is joined by a loop path that fails
    // the edge test
    let target = nonneighbor_type1_rep();
    let phi = SignedLoop::from_endpoints(&p0, &target).unwrap();
    assert_eq!(phi.cycle().len(), 6);
    let path = edge_path(&p, &p0, &phi, &beta).unwrap();
    assert_eq!(path.endpoint, target);
    assert!(!path.is_edge);
}

#[test]
fn invalid_sign_choice_is_rejected() {
    let beta = BetaAssignment::beta0();
    let (p, _) = enumerate_mp_vertices(&beta).unwrap();
    let q = canonical_even_vertex();
    // moving "outwards" from the all-plus-one vertex along positive signs
    // leaves the cube immediately
    let l = merminpoly::scenario::flip_loop_x0();
    let phi = SignedLoop::new(l, 0);
    assert!(edge_path(&p, &q, &phi, &beta).is_err());
}

#[test]
fn displacement_tables_match_path_differences() {
    let beta = BetaAssignment::beta1();
    let (p, _) = enumerate_mp_vertices(&beta).unwrap();
    let p0 = canonical_type2_vertex();
    let target = type2_neighbor_rep_b();
    let phi = SignedLoop::from_endpoints(&p0, &target).unwrap();
    let disp = signed_loop_displacement(&phi, &beta);
    let path = edge_path(&p, &p0, &phi, &beta).unwrap();
    let d0 = path.dist_at(&rat(0), &beta);
    let d1 = path.dist_at(&ratio(1, 2), &beta);
    for c in all_ctx() {
        for ab in 0..4u8 {
            let (a, b) = (ab / 2, ab % 2);
            let diff = d1.entry(c, a, b).clone() - d0.entry(c, a, b).clone();
            // p(1/2) - p(0) = (1/2) p^phi
            assert_eq!(diff, disp[c as usize][ab as usize].clone() * ratio(1, 2));
        }
    }
}

#[test]
fn two_deterministic_edges_force_a_deterministic_triangle_at_vertices() {
    for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
        let (_, vs) = enumerate_mp_vertices(&beta).unwrap();
        for v in &vs.vertices {
            let e = ExpectationPoint::from_vec(v).unwrap();
            let d = dist_from_expectations(&e, &beta);
            for c in all_ctx() {
                let members = merminpoly::scenario::ctx_members(c);
                let det_edges = members
                    .iter()
                    .filter(|&&m| e.get(m) == &rat(1) || e.get(m) == &rat(-1))
                    .count();
                let det_triangle = d.table(c).iter().filter(|p| p.is_zero()).count() == 3;
                if det_edges >= 2 {
                    assert!(det_triangle, "context {c} has {det_edges} point-mass edges");
                }
            }
        }
    }
}

#[test]
fn membership_routes_agree_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
        let p = merminpoly::mermin::build_h_rep::<Rat>(&beta);
        let mut feas = 0;
        for _ in 0..500 {
            let coords: Vec<Rat> = (0..9)
                .map(|_| Rat::new(rng.gen_range(-6..=6i64).into(), 6.into()))
                .collect();
            let e = ExpectationPoint::from_vec(&coords).unwrap();
            let via_tables = in_polytope_by_tables(&e, &beta);
            let via_h_rep = p.contains(&e.as_vec());
            assert_eq!(via_tables, via_h_rep);
            feas += usize::from(via_tables);
        }
        assert!(feas > 0, "sampling should hit the polytope sometimes");
    }
}

#[test]
fn symmetries_preserve_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let beta0 = BetaAssignment::beta0();
    let beta1 = BetaAssignment::beta1();
    let g0 = generate_g0();
    let g1 = generate_g1();
    let p0 = merminpoly::mermin::build_h_rep::<Rat>(&beta0);
    let p1 = merminpoly::mermin::build_h_rep::<Rat>(&beta1);
    // random members as mixtures of vertices
    let (_, vs0) = enumerate_mp_vertices(&beta0).unwrap();
    let (_, vs1) = enumerate_mp_vertices(&beta1).unwrap();
    let mut mix = |verts: &Vec<Vec<Rat>>, rng: &mut ChaCha8Rng| -> ExpectationPoint {
        let k = rng.gen_range(2..5usize);
        let mut weights = vec![0u64; k];
        for w in weights.iter_mut() {
            *w = rng.gen_range(1..10);
        }
        let total: u64 = weights.iter().sum();
        let mut acc = vec![rat(0); 9];
        for w in weights {
            let v = &verts[rng.gen_range(0..verts.len())];
            let frac = Rat::new((w as i64).into(), (total as i64).into());
            for j in 0..9 {
                acc[j] += frac.clone() * v[j].clone();
            }
        }
        ExpectationPoint::from_vec(&acc).unwrap()
    };
    for _ in 0..500 {
        let e = mix(&vs0.vertices, &mut rng);
        assert!(p0.contains(&e.as_vec()));
        let g = &g0.elements()[rng.gen_range(0..g0.order())];
        assert!(p0.contains(&g.act(&e).as_vec()), "even-class symmetry left the polytope");
    }
    for _ in 0..500 {
        let e = mix(&vs1.vertices, &mut rng);
        assert!(p1.contains(&e.as_vec()));
        let g = &g1.elements()[rng.gen_range(0..g1.order())];
        assert!(p1.contains(&g.act(&e).as_vec()), "odd-class symmetry left the polytope");
    }
}

#[test]
fn loop_flips_touch_every_context_evenly() {
    // each canonical flip negates 0 or 2 coordinates per context, so the
    // per-context parity constraints are preserved generator by generator
    for l in merminpoly::scenario::enumerate_loops() {
        let g = G0Element::from_flip(l);
        for c in all_ctx() {
            let members = merminpoly::scenario::ctx_members(c);
            let flipped = members.iter().filter(|&&m| l.contains(m)).count();
            assert!(flipped == 0 || flipped == 2);
            let _ = g;
        }
    }
}

#[test]
fn stabilizer_intersections_of_the_named_pairs() {
    use merminpoly::symmetry::{gate_swap, unitary_n, FiniteGroup, GroupElement};
    let g1 = generate_g1();
    let p0 = canonical_type2_vertex();
    let stab_p0 = g1.stabilizer(&p0, act1);
    // with the first type-2 neighbor orbit rep: order two generated by the
    // factor swap
    let stab_b = g1.stabilizer(&type2_neighbor_rep_b(), act1);
    let inter = stab_p0.intersection(&stab_b);
    let swap = G1Element::from_unitary(&gate_swap()).unwrap();
    assert_eq!(inter.order(), 2);
    assert!(inter.contains(&swap));
    // with the canonical type-1 vertex: order two generated by the action
    // of N^{-1} SWAP
    let stab_1 = g1.stabilizer(&canonical_type1_vertex(), act1);
    let inter2 = stab_p0.intersection(&stab_1);
    let n = G1Element::from_unitary(&unitary_n()).unwrap();
    let witness = n.inverse().compose(&swap);
    assert_eq!(inter2.order(), 2);
    assert!(inter2.contains(&witness));
    // self-intersection returns the full stabilizer
    assert_eq!(stab_p0.intersection(&stab_p0).order(), 16);
    let _ = FiniteGroup::generate(G1Element::identity(), &[swap]);
}

#[test]
fn every_odd_vertex_type_matches_its_degree() {
    let beta = BetaAssignment::beta1();
    let (p, vs) = enumerate_mp_vertices(&beta).unwrap();
    let g = p.build_graph(&vs).unwrap();
    for (k, v) in vs.vertices.iter().enumerate() {
        let e = ExpectationPoint::from_vec(v).unwrap();
        let kind = descriptor_from_vertex(&e, &beta).unwrap().kind().unwrap();
        let expected = match kind {
            CncKind::Type1 => 12,
            CncKind::Type2 => 24,
            CncKind::Full => unreachable!(),
        };
        assert_eq!(g.degree(k), expected);
    }
}

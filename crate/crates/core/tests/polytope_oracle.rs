//! Cross-checks between the two vertex enumeration routes and the
//! supporting exact-feasibility machinery.

use merminpoly::linalg::{feasible_point, fm_eliminate, has_contradiction, Inequality, Mat};
use merminpoly::mermin::{build_h_rep, enumerate_mp_vertices, ExpectationPoint};
use merminpoly::polytope::{enumerate_vertices_dd, HPolytope};
use merminpoly::scenario::BetaAssignment;
use merminpoly::{rat, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bounded_polytope(rng: &mut ChaCha8Rng, d: usize) -> HPolytope<Rat> {
    // a box plus a handful of random integer cuts through it
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..d {
        let mut r = vec![rat(0); d];
        r[i] = rat(1);
        rows.push(r.clone());
        rhs.push(rat(-2));
        let mut r2 = vec![rat(0); d];
        r2[i] = rat(-1);
        rows.push(r2);
        rhs.push(rat(-2));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let row: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-2..=2i64))).collect();
        if row.iter().all(|v| v.is_zero()) {
            continue;
        }
        rows.push(row);
        rhs.push(rat(-rng.gen_range(1..=4i64)));
    }
    HPolytope::new(Mat::from_rows(rows), rhs)
}

#[test]
fn dd_matches_brute_force_on_the_corpus() {
    let mut corpus: Vec<HPolytope<Rat>> = vec![
        HPolytope::box_polytope(2, 0, 1),
        HPolytope::box_polytope(3, -1, 1),
        HPolytope::box_polytope(4, 0, 2),
        build_h_rep(&BetaAssignment::beta0()),
        build_h_rep(&BetaAssignment::beta1()),
        build_h_rep(&BetaAssignment::new([1, 0, 0, 0, 0, 0])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 2..=4 {
        for _ in 0..4 {
            corpus.push(random_bounded_polytope(&mut rng, d));
        }
    }
    for p in &corpus {
        let brute = p.enumerate_vertices().expect("bounded corpus");
        let dd = enumerate_vertices_dd(p).expect("bounded corpus");
        assert_eq!(brute.vertices, dd.vertices, "enumeration routes disagree");
        for v in &brute.vertices {
            assert!(p.is_vertex(v));
            assert!(p.contains(v));
        }
    }
}

#[test]
fn graph_invariant_under_row_permutation_and_rescaling() {
    let p = build_h_rep::<Rat>(&BetaAssignment::beta0());
    let vs = p.enumerate_vertices().unwrap();
    let g = p.build_graph(&vs).unwrap();

    // permute the rows and rescale each by a positive rational
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut order: Vec<usize> = (0..p.n_rows()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let rows: Vec<Vec<Rat>> = order
        .iter()
        .map(|&i| {
            let scale = Rat::new(rng.gen_range(1..5i64).into(), rng.gen_range(1..4i64).into());
            p.a().row(i).iter().map(|v| v.clone() * scale.clone()).collect()
        })
        .collect();
    let rhs: Vec<Rat> = order
        .iter()
        .zip(rows.iter())
        .map(|(&i, row)| {
            // recover the scale from the first nonzero coefficient
            let j = row.iter().position(|v| !v.is_zero()).unwrap();
            let scale = row[j].clone() / p.a().row(i)[j].clone();
            p.b()[i].clone() * scale
        })
        .collect();
    let q = HPolytope::new(Mat::from_rows(rows), rhs);
    let vq = q.enumerate_vertices().unwrap();
    assert_eq!(vs.vertices, vq.vertices);
    let gq = q.build_graph(&vq).unwrap();
    assert_eq!(g, gq);
}

#[test]
fn vertices_are_convex_independent() {
    for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
        let (_, vs) = enumerate_mp_vertices(&beta).unwrap();
        let n = vs.vertices.len();
        // no vertex is a convex combination of the others
        for k in 0..n {
            let others: Vec<&Vec<Rat>> =
                (0..n).filter(|&i| i != k).map(|i| &vs.vertices[i]).collect();
            let mut eqs: Vec<Inequality<Rat>> = Vec::new();
            for coord in 0..9 {
                let row: Vec<Rat> = others.iter().map(|v| v[coord].clone()).collect();
                eqs.push((row, vs.vertices[k][coord].clone()));
            }
            eqs.push((vec![rat(1); others.len()], rat(1)));
            let ineqs: Vec<Inequality<Rat>> = (0..others.len())
                .map(|i| {
                    let mut row = vec![rat(0); others.len()];
                    row[i] = rat(1);
                    (row, rat(0))
                })
                .collect();
            assert!(
                feasible_point(&ineqs, &eqs).is_none(),
                "vertex {k} of the beta={:?} polytope is a mixture of the others",
                beta.bits()
            );
        }
    }
}

#[test]
fn tight_rows_of_the_canonical_vertex_solve_back_to_it() {
    let p = build_h_rep::<Rat>(&BetaAssignment::beta0());
    let q = vec![rat(1); 9];
    let active = p.active_set(&q);
    assert_eq!(active.len(), 18);
    // greedily pick nine independent tight rows and solve
    let mut chosen: Vec<usize> = Vec::new();
    for &i in &active {
        let mut trial = chosen.clone();
        trial.push(i);
        if p.a().select_rows(&trial).rank() == trial.len() {
            chosen = trial;
            if chosen.len() == 9 {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), 9);
    let m = p.a().select_rows(&chosen);
    let rhs: Vec<Rat> = chosen.iter().map(|&i| p.b()[i].clone()).collect();
    match m.solve_affine(&rhs) {
        merminpoly::linalg::SolveOutcome::Unique(x) => assert_eq!(x, q),
        other => panic!("expected a unique solution, got {other:?}"),
    }
}

#[test]
fn midpoints_of_vertices_are_not_vertices() {
    let (p, vs) = enumerate_mp_vertices(&BetaAssignment::beta0()).unwrap();
    let a = &vs.vertices[0];
    let b = &vs.vertices[1];
    let mid: Vec<Rat> = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x.clone() + y.clone()) / rat(2))
        .collect();
    assert!(p.contains(&mid));
    assert!(!p.is_vertex(&mid));
}

#[test]
fn membership_in_the_odd_polytope_examples() {
    let (p, _) = enumerate_mp_vertices(&BetaAssignment::beta1()).unwrap();
    // uniform point: every table entry 1/4
    assert!(p.contains(&ExpectationPoint::uniform().as_vec()));
    // no deterministic point lies in the odd-class polytope
    for k in 0..512u16 {
        let coords: Vec<Rat> =
            (0..9).map(|m| if k & (1 << m) != 0 { rat(-1) } else { rat(1) }).collect();
        assert!(!p.contains(&coords));
    }
}

#[test]
fn feasibility_agrees_with_full_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..120 {
        let d = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=6usize);
        let ineqs: Vec<Inequality<Rat>> = (0..n)
            .map(|_| {
                let row: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-3..=3i64))).collect();
                (row, rat(rng.gen_range(-4..=4i64)))
            })
            .collect();
        let simplex_feasible = feasible_point(&ineqs, &[]).is_some();
        let mut sys = ineqs.clone();
        for _ in 0..d {
            sys = fm_eliminate(&sys, 0);
        }
        let elimination_feasible = !has_contradiction(&sys);
        assert_eq!(
            simplex_feasible, elimination_feasible,
            "feasibility routes disagree on {ineqs:?}"
        );
    }
}

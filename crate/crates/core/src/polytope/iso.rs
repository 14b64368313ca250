use super::{HPolytope, PolytopeError, VertexSet};
use crate::linalg::{normalize_inequality, Mat, Scalar};

/// Decide combinatorial isomorphism of two bounded full-dimensional
/// polytopes: their vertex-facet incidence bipartite graphs must be
/// isomorphic respecting the two sides.
///
/// Facets are the irredundant rows (deduplicated up to positive scaling,
/// kept only when the tight vertex set is (d-1)-dimensional). The graphs at
/// the sizes this crate meets (< 200 nodes) are handled by color refinement
/// plus backtracking.
pub fn combinatorially_isomorphic<T: Scalar>(
    p: &HPolytope<T>,
    vp: &VertexSet<T>,
    q: &HPolytope<T>,
    vq: &VertexSet<T>,
) -> Result<bool, PolytopeError> {
    let ip = incidence(p, vp)?;
    let iq = incidence(q, vq)?;
    if ip.n_vertices != iq.n_vertices || ip.n_facets != iq.n_facets {
        return Ok(false);
    }
    Ok(bipartite_isomorphic(&ip, &iq))
}

pub(crate) struct Incidence {
    n_vertices: usize,
    n_facets: usize,
    // incidence[v] = sorted facet indices tight at vertex v
    incident: Vec<Vec<usize>>,
}

/// Vertex-facet incidence with facet rows deduplicated and reduced to the
/// genuinely (d-1)-dimensional ones.
pub(crate) fn incidence<T: Scalar>(
    p: &HPolytope<T>,
    vs: &VertexSet<T>,
) -> Result<Incidence, PolytopeError> {
    let d = p.dim();
    if affine_rank(&vs.vertices) != d {
        return Err(PolytopeError::NotFullDimensional);
    }
    // Canonical row representatives up to positive scaling.
    let mut seen = std::collections::BTreeMap::new();
    let mut facet_rows: Vec<usize> = Vec::new();
    for i in 0..p.n_rows() {
        let key = normalize_inequality(&(p.a().row(i).to_vec(), p.b()[i].clone()));
        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
            e.insert(i);
            facet_rows.push(i);
        }
    }
    // Keep rows whose tight vertex set has affine rank d - 1.
    let mut facets: Vec<usize> = Vec::new();
    for &i in &facet_rows {
        let tight: Vec<Vec<T>> = vs
            .vertices
            .iter()
            .zip(vs.active_sets.iter())
            .filter(|(_, act)| act.contains(&i))
            .map(|(v, _)| v.clone())
            .collect();
        if !tight.is_empty() && affine_rank(&tight) == d - 1 {
            facets.push(i);
        }
    }
    let facet_pos: std::collections::BTreeMap<usize, usize> =
        facets.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let incident: Vec<Vec<usize>> = vs
        .active_sets
        .iter()
        .map(|act| {
            let mut f: Vec<usize> =
                act.iter().filter_map(|i| facet_pos.get(i).copied()).collect();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    Ok(Incidence { n_vertices: vs.vertices.len(), n_facets: facets.len(), incident })
}

fn affine_rank<T: Scalar>(points: &[Vec<T>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    Mat::from_rows(diffs).rank()
}

// ---------------------------------------------------------------------------
// Two-colored graph isomorphism by refinement + backtracking.
// ---------------------------------------------------------------------------

struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    // side 0 = vertices, side 1 = facets
    side: Vec<u8>,
}

fn build_graph(inc: &Incidence) -> Graph {
    let n = inc.n_vertices + inc.n_facets;
    let mut adj = vec![Vec::new(); n];
    for (v, fs) in inc.incident.iter().enumerate() {
        for &f in fs {
            adj[v].push(inc.n_vertices + f);
            adj[inc.n_vertices + f].push(v);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let side = (0..n).map(|i| u8::from(i >= inc.n_vertices)).collect();
    Graph { n, adj, side }
}

/// Joint neighborhood-color refinement: signatures from both graphs share
/// one renumbering table so equal colors mean equal refinement histories.
fn refine_pair(ga: &Graph, gb: &Graph, ia: &[u64], ib: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut ca: Vec<u64> = ia.to_vec();
    let mut cb: Vec<u64> = ib.to_vec();
    loop {
        let sig = |g: &Graph, c: &[u64]| -> Vec<(u64, Vec<u64>)> {
            (0..g.n)
                .map(|v| {
                    let mut ns: Vec<u64> = g.adj[v].iter().map(|&u| c[u]).collect();
                    ns.sort_unstable();
                    (c[v], ns)
                })
                .collect()
        };
        let sa = sig(ga, &ca);
        let sb = sig(gb, &cb);
        let mut table: Vec<&(u64, Vec<u64>)> = sa.iter().chain(sb.iter()).collect();
        table.sort();
        table.dedup();
        let na: Vec<u64> = sa.iter().map(|s| table.binary_search(&s).unwrap() as u64).collect();
        let nb: Vec<u64> = sb.iter().map(|s| table.binary_search(&s).unwrap() as u64).collect();
        if na == ca && nb == cb {
            return (ca, cb);
        }
        ca = na;
        cb = nb;
    }
}

fn color_histogram(color: &[u64]) -> std::collections::BTreeMap<u64, usize> {
    let mut h = std::collections::BTreeMap::new();
    for &c in color {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

fn bipartite_isomorphic(a: &Incidence, b: &Incidence) -> bool {
    let ga = build_graph(a);
    let gb = build_graph(b);
    if ga.n != gb.n {
        return false;
    }
    let init_a: Vec<u64> = ga.side.iter().map(|&s| s as u64).collect();
    let init_b: Vec<u64> = gb.side.iter().map(|&s| s as u64).collect();
    search(&ga, &gb, &init_a, &init_b)
}

fn search(ga: &Graph, gb: &Graph, color_a: &[u64], color_b: &[u64]) -> bool {
    let (ca, cb) = refine_pair(ga, gb, color_a, color_b);
    if color_histogram(&ca) != color_histogram(&cb) {
        return false;
    }
    // Pick the smallest non-singleton color class and individualize.
    let hist = color_histogram(&ca);
    let Some((&target, _)) = hist.iter().filter(|(_, &n)| n > 1).min_by_key(|(_, &n)| n) else {
        // Discrete coloring: the color-respecting bijection must be an
        // isomorphism; adjacency signatures already matched level by level,
        // verify edges directly.
        let mut map = vec![usize::MAX; ga.n];
        let mut inv: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
        for (v, &c) in cb.iter().enumerate() {
            inv.insert(c, v);
        }
        for (v, &c) in ca.iter().enumerate() {
            map[v] = inv[&c];
        }
        return (0..ga.n).all(|v| {
            let mut img: Vec<usize> = ga.adj[v].iter().map(|&u| map[u]).collect();
            img.sort_unstable();
            img == gb.adj[map[v]]
        });
    };
    let next = (ca.iter().max().copied().unwrap_or(0)).max(cb.iter().max().copied().unwrap_or(0)) + 1;
    let va = (0..ga.n).find(|&v| ca[v] == target).unwrap();
    let mut new_a = ca.clone();
    new_a[va] = next;
    for vb in 0..gb.n {
        if cb[vb] != target {
            continue;
        }
        let mut new_b = cb.clone();
        new_b[vb] = next;
        if search(ga, gb, &new_a, &new_b) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    #[test]
    fn polytope_isomorphic_to_itself() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(2, 0, 1);
        let vs = p.enumerate_vertices().unwrap();
        assert!(combinatorially_isomorphic(&p, &vs, &p, &vs).unwrap());
    }

    #[test]
    fn scaled_box_isomorphic_to_box() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(2, 0, 1);
        let q: HPolytope<Rat> = HPolytope::box_polytope(2, -3, 5);
        let vp = p.enumerate_vertices().unwrap();
        let vq = q.enumerate_vertices().unwrap();
        assert!(combinatorially_isomorphic(&p, &vp, &q, &vq).unwrap());
    }

    #[test]
    fn square_not_isomorphic_to_triangle() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(2, 0, 1);
        let a: crate::linalg::Mat<Rat> =
            crate::linalg::Mat::from_int_rows(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let q = HPolytope::new(a, vec![rat(0), rat(0), rat(-1)]);
        let vp = p.enumerate_vertices().unwrap();
        let vq = q.enumerate_vertices().unwrap();
        assert!(!combinatorially_isomorphic(&p, &vp, &q, &vq).unwrap());
    }

    #[test]
    fn duplicate_rows_do_not_create_facets() {
        // unit square with one inequality repeated at doubled scale
        let a: crate::linalg::Mat<Rat> = crate::linalg::Mat::from_int_rows(&[
            &[1, 0],
            &[0, 1],
            &[-1, 0],
            &[0, -1],
            &[2, 0],
        ]);
        let p = HPolytope::new(a, vec![rat(0), rat(0), rat(-1), rat(-1), rat(0)]);
        let vs = p.enumerate_vertices().unwrap();
        let inc = incidence(&p, &vs).unwrap();
        assert_eq!(inc.n_facets, 4);
        let q: HPolytope<Rat> = HPolytope::box_polytope(2, 0, 1);
        let vq = q.enumerate_vertices().unwrap();
        assert!(combinatorially_isomorphic(&p, &vs, &q, &vq).unwrap());
    }
}

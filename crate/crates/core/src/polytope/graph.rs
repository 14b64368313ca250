use super::{HPolytope, PolytopeError, VertexSet};
use crate::linalg::Scalar;

/// Vertex adjacency graph of a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeGraph {
    n: usize,
    adj: Vec<bool>,
    labels: Vec<String>,
}

impl PolytopeGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.adjacent(u, v)).count()
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adjacent(u, v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn set_label(&mut self, u: usize, label: String) {
        self.labels[u] = label;
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Degree histogram as (degree, count) pairs.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for u in 0..self.n {
            *map.entry(self.degree(u)).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph polytope {\n");
        for u in 0..self.n {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", u, self.labels[u]));
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push_str(&format!("  v{} -- v{};\n", u, v));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl<T: Scalar> HPolytope<T> {
    /// Graph over an enumerated vertex set with rank-tested edges.
    pub fn build_graph(&self, vs: &VertexSet<T>) -> Result<PolytopeGraph, PolytopeError> {
        let n = vs.vertices.len();
        let d = self.dim();
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in u + 1..n {
                // Rank of the common tight rows must be d - 1.
                let su = &vs.active_sets[u];
                let sv: std::collections::BTreeSet<usize> =
                    vs.active_sets[v].iter().copied().collect();
                let common: Vec<usize> = su.iter().copied().filter(|i| sv.contains(i)).collect();
                let adjacent =
                    common.len() >= d - 1 && self.a().select_rows(&common).rank() == d - 1;
                adj[u * n + v] = adjacent;
                adj[v * n + u] = adjacent;
            }
        }
        let labels = (0..n).map(|u| format!("v{u}")).collect();
        Ok(PolytopeGraph { n, adj, labels })
    }
}

#[cfg(test)]
mod tests {
    use super::super::HPolytope;
    use crate::Rat;

    #[test]
    fn square_graph_is_a_4_cycle() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(2, 0, 1);
        let vs = p.enumerate_vertices().unwrap();
        let g = p.build_graph(&vs).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.degree_histogram() == vec![(2, 4)]);
    }

    #[test]
    fn cube_graph_degrees() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(3, 0, 1);
        let vs = p.enumerate_vertices().unwrap();
        let g = p.build_graph(&vs).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(g.degree_histogram() == vec![(3, 8)]);
    }
}

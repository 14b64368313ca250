//! Generic exact H-representation polytope engine: vertex enumeration
//! (brute-force reference and double description), vertex/edge tests via
//! active-set ranks, polytope graphs and combinatorial isomorphism.

mod dd;
mod graph;
mod iso;

pub use dd::enumerate_vertices_dd;
pub use graph::PolytopeGraph;
pub use iso::combinatorially_isomorphic;

use thiserror::Error;

use crate::linalg::{self, feasible_point, Mat, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope is empty")]
    Empty,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polytope is not full dimensional")]
    NotFullDimensional,
}

/// `{ x : A x >= b }` with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope<T> {
    a: Mat<T>,
    b: Vec<T>,
    row_labels: Option<Vec<String>>,
}

/// Enumerated vertices with their active (tight) row sets, sorted
/// lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet<T> {
    pub vertices: Vec<Vec<T>>,
    pub active_sets: Vec<Vec<usize>>,
}

impl<T: Scalar> HPolytope<T> {
    pub fn new(a: Mat<T>, b: Vec<T>) -> Self {
        assert_eq!(a.nrows(), b.len(), "row count mismatch");
        HPolytope { a, b, row_labels: None }
    }

    pub fn with_labels(a: Mat<T>, b: Vec<T>, labels: Vec<String>) -> Self {
        assert_eq!(a.nrows(), labels.len(), "label count mismatch");
        let mut p = HPolytope::new(a, b);
        p.row_labels = Some(labels);
        p
    }

    pub fn a(&self) -> &Mat<T> {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn n_rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    /// Axis-aligned box `lo <= x_i <= hi` in `d` dimensions.
    pub fn box_polytope(d: usize, lo: i64, hi: i64) -> Self {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..d {
            let mut r = vec![T::zero(); d];
            r[i] = T::one();
            rows.push(r.clone());
            rhs.push(T::from_int(lo));
            let mut r2 = vec![T::zero(); d];
            r2[i] = -T::one();
            rows.push(r2);
            rhs.push(T::from_int(-hi));
        }
        HPolytope::new(Mat::from_rows(rows), rhs)
    }

    /// All inequalities satisfied exactly.
    pub fn contains(&self, x: &[T]) -> bool {
        assert_eq!(x.len(), self.dim(), "point dimension mismatch");
        self.a.mul_vec(x).iter().zip(self.b.iter()).all(|(lhs, rhs)| lhs >= rhs)
    }

    /// Indices of rows tight at `x`.
    pub fn active_set(&self, x: &[T]) -> Vec<usize> {
        self.a
            .mul_vec(x)
            .iter()
            .zip(self.b.iter())
            .enumerate()
            .filter_map(|(i, (lhs, rhs))| (lhs == rhs).then_some(i))
            .collect()
    }

    /// Feasible with active rows of full rank.
    pub fn is_vertex(&self, x: &[T]) -> bool {
        if !self.contains(x) {
            return false;
        }
        let act = self.active_set(x);
        if act.len() < self.dim() {
            return false;
        }
        self.a.select_rows(&act).rank() == self.dim()
    }

    /// Common tight rows of rank `d - 1`: the segment is an edge.
    pub fn are_adjacent(&self, u: &[T], v: &[T]) -> bool {
        let au = self.active_set(u);
        let av: std::collections::BTreeSet<usize> = self.active_set(v).into_iter().collect();
        let common: Vec<usize> = au.into_iter().filter(|i| av.contains(i)).collect();
        if common.len() < self.dim() - 1 {
            return false;
        }
        self.a.select_rows(&common).rank() == self.dim() - 1
    }

    /// Some feasible point, or `None` when empty.
    pub fn feasible_point(&self) -> Option<Vec<T>> {
        let ineqs: Vec<(Vec<T>, T)> = self
            .a
            .rows_iter()
            .zip(self.b.iter())
            .map(|(r, b)| (r.to_vec(), b.clone()))
            .collect();
        feasible_point(&ineqs, &[])
    }

    /// True when the recession cone `{ d : A d >= 0 }` is trivial.
    pub fn is_bounded(&self) -> bool {
        let homogeneous: Vec<(Vec<T>, T)> = self
            .a
            .rows_iter()
            .map(|r| (r.to_vec(), T::zero()))
            .collect();
        for k in 0..self.dim() {
            for sign in [1i64, -1] {
                let mut fix = vec![T::zero(); self.dim()];
                fix[k] = T::one();
                let eqs = vec![(fix, T::from_int(sign))];
                if feasible_point(&homogeneous, &eqs).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Reference vertex enumeration: iterate over all d-subsets of rows,
    /// solve, filter by feasibility, dedupe.
    pub fn enumerate_vertices(&self) -> Result<VertexSet<T>, PolytopeError> {
        let d = self.dim();
        let n = self.n_rows();
        if n < d {
            return Err(PolytopeError::Unbounded);
        }
        if self.feasible_point().is_none() {
            return Err(PolytopeError::Empty);
        }
        if !self.is_bounded() {
            return Err(PolytopeError::Unbounded);
        }

        let mut verts: std::collections::BTreeSet<Vec<T>> = std::collections::BTreeSet::new();
        if let Some(int_sys) = self.integerized() {
            enumerate_int(&int_sys, d, n, &mut |nums, den| {
                verts.insert(nums.iter().map(|&nu| T::from_int_pair(nu, den)).collect::<Vec<T>>());
            });
        } else {
            let mut subset: Vec<usize> = (0..d).collect();
            loop {
                let m = self.a.select_rows(&subset);
                let rhs: Vec<T> = subset.iter().map(|&i| self.b[i].clone()).collect();
                if let linalg::SolveOutcome::Unique(x) = m.solve_affine(&rhs) {
                    if self.contains(&x) {
                        verts.insert(x);
                    }
                }
                if !next_combination(&mut subset, n) {
                    break;
                }
            }
        }

        let vertices: Vec<Vec<T>> = verts.into_iter().collect();
        let active_sets = vertices.iter().map(|v| self.active_set(v)).collect();
        Ok(VertexSet { vertices, active_sets })
    }

    fn integerized(&self) -> Option<Vec<(Vec<i128>, i128)>> {
        let mut out = Vec::with_capacity(self.n_rows());
        let mut gate_rows = Vec::with_capacity(self.n_rows());
        for (row, b) in self.a.rows_iter().zip(self.b.iter()) {
            let mut aug: Vec<T> = row.to_vec();
            aug.push(b.clone());
            let ints = crate::linalg::integerize_row(&aug)?;
            gate_rows.push(ints.clone());
            let rhs = *ints.last().unwrap();
            let mut coeffs = ints;
            coeffs.pop();
            out.push((coeffs, rhs));
        }
        crate::linalg::int_fits(&gate_rows, self.dim()).then_some(out)
    }
}

impl HPolytope<crate::Rat> {
    /// JSON with row-major rational strings for `A` and `b`.
    pub fn to_json(&self) -> serde_json::Value {
        use crate::serial::rat_to_json;
        serde_json::json!({
            "A": self.a.rows_iter()
                .map(|r| r.iter().map(rat_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "b": self.b.iter().map(rat_to_json).collect::<Vec<_>>(),
            "row_labels": self.row_labels,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, crate::serial::ParseError> {
        use crate::serial::{rat_from_json, ParseError};
        let rows_json = v
            .get("A")
            .and_then(|a| a.as_array())
            .ok_or_else(|| ParseError::Malformed("missing matrix A".into()))?;
        let mut rows = Vec::with_capacity(rows_json.len());
        for r in rows_json {
            let r = r
                .as_array()
                .ok_or_else(|| ParseError::Malformed("matrix rows must be arrays".into()))?;
            rows.push(r.iter().map(rat_from_json).collect::<Result<Vec<_>, _>>()?);
        }
        let b = v
            .get("b")
            .and_then(|b| b.as_array())
            .ok_or_else(|| ParseError::Malformed("missing vector b".into()))?
            .iter()
            .map(rat_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != b.len() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(ParseError::Malformed("ragged H-representation".into()));
        }
        let labels = v.get("row_labels").and_then(|l| l.as_array()).map(|l| {
            l.iter().map(|s| s.as_str().unwrap_or_default().to_string()).collect::<Vec<_>>()
        });
        let mat = Mat::from_rows(rows);
        Ok(match labels {
            Some(labels) if labels.len() == b.len() => HPolytope::with_labels(mat, b, labels),
            _ => HPolytope::new(mat, b),
        })
    }
}

impl VertexSet<crate::Rat> {
    /// One vertex per row, coordinates as rational strings.
    pub fn to_csv(&self) -> String {
        use crate::serial::rat_to_string;
        let mut out = String::new();
        for v in &self.vertices {
            let row: Vec<String> = v.iter().map(rat_to_string).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::serial::rat_to_json;
        serde_json::json!({
            "vertices": self.vertices.iter()
                .map(|v| v.iter().map(rat_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "active_sets": self.active_sets,
        })
    }
}

impl<T: Scalar> VertexSet<T> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: &[T]) -> Option<usize> {
        self.vertices.binary_search_by(|probe| probe.as_slice().cmp(v)).ok()
    }
}

/// Integer-path enumeration: fraction-free solves over i128 with the
/// feasibility check done in integers. `emit` receives `(numerators, den)`.
fn enumerate_int(
    sys: &[(Vec<i128>, i128)],
    d: usize,
    n: usize,
    emit: &mut dyn FnMut(&[i128], i128),
) {
    let mut subset: Vec<usize> = (0..d).collect();
    let mut rows: Vec<(Vec<i128>, i128)> = Vec::with_capacity(d);
    loop {
        rows.clear();
        rows.extend(subset.iter().map(|&i| sys[i].clone()));
        if let Some((nums, den)) = crate::linalg::bareiss_solve(&rows, d) {
            let feasible = sys.iter().all(|(row, b)| {
                let mut lhs: i128 = 0;
                for j in 0..d {
                    lhs += row[j] * nums[j];
                }
                let rhs = b * den;
                if den > 0 {
                    lhs >= rhs
                } else {
                    lhs <= rhs
                }
            });
            if feasible {
                emit(&nums, den);
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
}

/// Advance `subset` to the next d-combination of `0..n`; false at the end.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let d = subset.len();
    let mut i = d;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] != i + n - d {
            break;
        }
    }
    subset[i] += 1;
    for j in i + 1..d {
        subset[j] = subset[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    fn unit_square() -> HPolytope<Rat> {
        HPolytope::box_polytope(2, 0, 1)
    }

    #[test]
    fn unit_square_has_four_vertices() {
        let vs = unit_square().enumerate_vertices().unwrap();
        assert_eq!(vs.vertices.len(), 4);
        for v in &vs.vertices {
            assert!(unit_square().is_vertex(v));
            assert!(unit_square().contains(v));
        }
    }

    #[test]
    fn cube_has_eight_vertices() {
        let p: HPolytope<Rat> = HPolytope::box_polytope(3, -1, 1);
        assert_eq!(p.enumerate_vertices().unwrap().vertices.len(), 8);
    }

    #[test]
    fn center_of_square_is_not_a_vertex() {
        let p = unit_square();
        let c = vec![crate::ratio(1, 2), crate::ratio(1, 2)];
        assert!(p.contains(&c));
        assert!(!p.is_vertex(&c));
    }

    #[test]
    fn adjacency_on_the_square() {
        let p = unit_square();
        let a = vec![rat(0), rat(0)];
        let b = vec![rat(0), rat(1)];
        let c = vec![rat(1), rat(1)];
        assert!(p.are_adjacent(&a, &b));
        assert!(p.are_adjacent(&b, &c));
        assert!(!p.are_adjacent(&a, &c), "diagonal corners are not neighbors");
    }

    #[test]
    fn empty_polytope_detected() {
        // x >= 1 and -x >= 0
        let a: Mat<Rat> = Mat::from_int_rows(&[&[1], &[-1]]);
        let p = HPolytope::new(a, vec![rat(1), rat(0)]);
        assert_eq!(p.enumerate_vertices().unwrap_err(), PolytopeError::Empty);
    }

    #[test]
    fn unbounded_polyhedron_detected() {
        // half plane x >= 0 in 2d
        let a: Mat<Rat> = Mat::from_int_rows(&[&[1, 0]]);
        let p = HPolytope::new(a, vec![rat(0)]);
        assert_eq!(p.enumerate_vertices().unwrap_err(), PolytopeError::Unbounded);
    }

    #[test]
    fn fractional_coefficients_take_the_generic_path() {
        // triangle x >= 0, y >= 0, -(x/3) - y/7 >= -1
        let a: Mat<Rat> = Mat::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![crate::ratio(-1, 3), crate::ratio(-1, 7)],
        ]);
        let p = HPolytope::new(a, vec![rat(0), rat(0), rat(-1)]);
        let vs = p.enumerate_vertices().unwrap();
        assert_eq!(vs.vertices.len(), 3);
        assert!(vs.vertices.contains(&vec![rat(3), rat(0)]));
        assert!(vs.vertices.contains(&vec![rat(0), rat(7)]));
    }

    #[test]
    fn h_rep_json_roundtrip() {
        let p: HPolytope<Rat> = crate::mermin::build_h_rep(&crate::scenario::BetaAssignment::beta1());
        let q = HPolytope::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        let vs = HPolytope::<Rat>::box_polytope(2, 0, 1).enumerate_vertices().unwrap();
        assert_eq!(vs.to_csv().lines().count(), 4);
        assert_eq!(vs.to_json()["vertices"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn combination_iterator_covers_everything() {
        let mut subset = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut subset, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}

use super::{HPolytope, PolytopeError, VertexSet};
use crate::linalg::{Mat, Scalar};

/// Double-description vertex enumeration.
///
/// Homogenizes `{ Ax >= b }` to the cone `{ (x, t) : Ax - bt >= 0, t >= 0 }`
/// and maintains its extreme rays while inserting half-spaces one at a time.
/// Rays with positive last coordinate dehomogenize to the vertices; a
/// surviving ray with `t = 0` is a recession direction and reports the
/// polytope unbounded. Output is identical to `enumerate_vertices`.
pub fn enumerate_vertices_dd<T: Scalar>(p: &HPolytope<T>) -> Result<VertexSet<T>, PolytopeError> {
    let d = p.dim();
    let hd = d + 1;
    // Cone rows: [A | -b] plus the homogenization row [0 | 1].
    let mut rows: Vec<Vec<T>> = p
        .a()
        .rows_iter()
        .zip(p.b().iter())
        .map(|(r, b)| {
            let mut v = r.to_vec();
            v.push(-b.clone());
            v
        })
        .collect();
    let mut last = vec![T::zero(); hd];
    last[d] = T::one();
    rows.push(last);

    // Initial basis: a set of hd independent rows; its inverse columns are
    // the extreme rays of the subcone they carve out.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial = basis.clone();
        trial.push(i);
        let m = Mat::from_rows(trial.iter().map(|&k| rows[k].clone()).collect());
        if m.rank() == trial.len() {
            basis = trial;
            if basis.len() == hd {
                break;
            }
        }
    }
    if basis.len() < hd {
        return Err(PolytopeError::NotFullDimensional);
    }
    let basis_mat = Mat::from_rows(basis.iter().map(|&k| rows[k].clone()).collect());
    let inv = basis_mat.inverse().expect("independent rows invert");
    let mut rays: Vec<Vec<T>> = (0..hd)
        .map(|j| normalize_ray((0..hd).map(|i| inv[(i, j)].clone()).collect()))
        .collect();

    let mut processed: Vec<usize> = basis.clone();
    for h in 0..rows.len() {
        if processed.contains(&h) {
            continue;
        }
        rays = insert_halfspace(&rows, &processed, &rays, h, hd);
        processed.push(h);
        if rays.is_empty() {
            return Err(PolytopeError::Empty);
        }
    }

    let mut verts: std::collections::BTreeSet<Vec<T>> = std::collections::BTreeSet::new();
    for r in rays {
        let t = r[d].clone();
        if t.is_zero() {
            return Err(PolytopeError::Unbounded);
        }
        debug_assert!(t.is_positive());
        verts.insert((0..d).map(|j| r[j].clone() / t.clone()).collect());
    }
    if verts.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let vertices: Vec<Vec<T>> = verts.into_iter().collect();
    let active_sets = vertices.iter().map(|v| p.active_set(v)).collect();
    Ok(VertexSet { vertices, active_sets })
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Scale a ray so its first nonzero coordinate has absolute value one.
fn normalize_ray<T: Scalar>(mut r: Vec<T>) -> Vec<T> {
    if let Some(s) = r.iter().find(|v| !v.is_zero()).map(|v| v.abs()) {
        if !s.is_one() {
            for v in r.iter_mut() {
                *v = v.clone() / s.clone();
            }
        }
    }
    r
}

fn insert_halfspace<T: Scalar>(
    rows: &[Vec<T>],
    processed: &[usize],
    rays: &[Vec<T>],
    h: usize,
    hd: usize,
) -> Vec<Vec<T>> {
    let vals: Vec<T> = rays.iter().map(|r| dot(&rows[h], r)).collect();
    let mut out: Vec<Vec<T>> = Vec::new();
    for (r, v) in rays.iter().zip(vals.iter()) {
        if !v.is_negative() {
            out.push(r.clone());
        }
    }
    for (i, ri) in rays.iter().enumerate() {
        if !vals[i].is_positive() {
            continue;
        }
        for (j, rj) in rays.iter().enumerate() {
            if !vals[j].is_negative() {
                continue;
            }
            if !adjacent_rays(rows, processed, rays, i, j, hd) {
                continue;
            }
            // Positive combination cancelling row h:
            // (h.r+) * r-  -  (h.r-) * r+ has coefficient -(h.r-) > 0 on r+.
            let mut newr = vec![T::zero(); hd];
            for k in 0..hd {
                newr[k] = vals[i].clone() * rj[k].clone() - vals[j].clone() * ri[k].clone();
            }
            out.push(normalize_ray(newr));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Combinatorial-algebraic adjacency: the processed rows tight at both rays
/// must have rank hd - 2.
fn adjacent_rays<T: Scalar>(
    rows: &[Vec<T>],
    processed: &[usize],
    rays: &[Vec<T>],
    i: usize,
    j: usize,
    hd: usize,
) -> bool {
    let tight: Vec<Vec<T>> = processed
        .iter()
        .map(|&k| &rows[k])
        .filter(|row| dot(row, &rays[i]).is_zero() && dot(row, &rays[j]).is_zero())
        .map(|row| row.clone())
        .collect();
    if tight.len() < hd - 2 {
        return false;
    }
    Mat::from_rows(tight).rank() == hd - 2
}

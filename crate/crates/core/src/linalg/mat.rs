use super::Scalar;

/// Dense rectangular matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<T> {
    Unique(Vec<T>),
    Underdetermined,
    Inconsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("underdetermined system")]
    Underdetermined,
    #[error("inconsistent system")]
    Inconsistent,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_int(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Mat::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        if let Some(int_rows) = integerize_matrix(self) {
            if int_fits(&int_rows, self.cols) {
                return rank_i128(&int_rows, self.cols);
            }
        }
        rank_generic(self)
    }

    /// Solve `self * x = rhs` exactly for square or overdetermined systems.
    pub fn solve_affine(&self, rhs: &[T]) -> SolveOutcome<T> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        solve_echelon(aug, self.cols)
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        // Gauss-Jordan with exact division.
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !aug[(r, col)].is_zero())?;
            aug.swap_rows(row, pivot);
            let p = aug[(row, col)].clone();
            for j in 0..2 * n {
                let v = aug[(row, j)].clone() / p.clone();
                aug[(row, j)] = v;
            }
            for r in 0..n {
                if r != row && !aug[(r, col)].is_zero() {
                    let f = aug[(r, col)].clone();
                    for j in 0..2 * n {
                        let v = aug[(r, j)].clone() - f.clone() * aug[(row, j)].clone();
                        aug[(r, j)] = v;
                    }
                }
            }
            row += 1;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc = acc + self[(i, j)].clone() * x[j].clone();
                    }
                }
                acc
            })
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

fn rank_generic<T: Scalar>(m: &Mat<T>) -> usize {
    // Bareiss: divisions are exact at every step, and when the input is
    // integral all intermediates stay integral (bounded minor growth).
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut prev = T::one();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, p);
        for r in pivot_row + 1..rows {
            for c in col + 1..cols {
                let v = (a[(pivot_row, col)].clone() * a[(r, c)].clone()
                    - a[(r, col)].clone() * a[(pivot_row, c)].clone())
                    / prev.clone();
                a[(r, c)] = v;
            }
            a[(r, col)] = T::zero();
        }
        prev = a[(pivot_row, col)].clone();
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Row echelon solve on an augmented matrix; `cols` is the variable count.
fn solve_echelon<T: Scalar>(mut aug: Mat<T>, cols: usize) -> SolveOutcome<T> {
    let rows = aug.nrows();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !aug[(r, col)].is_zero()) else {
            continue;
        };
        aug.swap_rows(row, p);
        let inv = aug[(row, col)].clone();
        for j in col..=cols {
            let v = aug[(row, j)].clone() / inv.clone();
            aug[(row, j)] = v;
        }
        for r in 0..rows {
            if r != row && !aug[(r, col)].is_zero() {
                let f = aug[(r, col)].clone();
                for j in col..=cols {
                    let v = aug[(r, j)].clone() - f.clone() * aug[(row, j)].clone();
                    aug[(r, j)] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    // Inconsistent: zero row with nonzero rhs.
    for r in row..rows {
        if !aug[(r, cols)].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_cols.len() < cols {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[(r, cols)].clone();
    }
    SolveOutcome::Unique(x)
}

// ---------------------------------------------------------------------------
// Integer fast path.
//
// When every entry is an integer of small magnitude the Bareiss intermediates
// are minors of the input, so the Hadamard bound caps them well inside i128
// range. The gate below is a conservative, integer-only version of that
// bound; anything past it falls back to the generic path.
// ---------------------------------------------------------------------------

pub(crate) fn integerize_matrix<T: Scalar>(m: &Mat<T>) -> Option<Vec<Vec<i128>>> {
    let mut out = Vec::with_capacity(m.nrows());
    for row in m.rows_iter() {
        out.push(integerize_row(row)?);
    }
    Some(out)
}

/// Scale a rational row by the lcm of denominators, returning integers.
pub(crate) fn integerize_row<T: Scalar>(row: &[T]) -> Option<Vec<i128>> {
    let mut pairs = Vec::with_capacity(row.len());
    for v in row {
        pairs.push(v.as_int_pair()?);
    }
    let mut l: i128 = 1;
    for &(_, d) in &pairs {
        l = lcm_i128(l, d)?;
    }
    let mut out = Vec::with_capacity(pairs.len());
    for (n, d) in pairs {
        out.push(n.checked_mul(l / d)?);
    }
    Some(out)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_i128(a: i128, b: i128) -> Option<i128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd_i128(a, b)).checked_mul(b)
}

fn bits_of(v: i128) -> u32 {
    128 - v.unsigned_abs().leading_zeros()
}

/// Conservative overflow gate. Bareiss intermediates are minors of the
/// input, bounded by Hadamard: bits <= d*(bits(B) + (log2(d)+1)/2). The
/// elimination multiplies two minors before the exact division, so twice
/// that (plus slack for the feasibility dot products computed afterwards)
/// must fit in i128.
pub(crate) fn int_fits(rows: &[Vec<i128>], dim: usize) -> bool {
    let maxabs = rows.iter().flat_map(|r| r.iter()).map(|&v| v.abs()).max().unwrap_or(0);
    if maxabs == 0 {
        return true;
    }
    let b = bits_of(maxabs);
    let d = dim.max(1) as u32;
    let logd = usize::BITS - (dim.max(1)).leading_zeros();
    let minor_bits = d * b + (d * (logd + 1)).div_ceil(2);
    2 * minor_bits + 2 <= 126 && minor_bits + b + logd + 2 <= 126
}

pub(crate) fn rank_i128(rows: &[Vec<i128>], cols: usize) -> usize {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let rows_n = a.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows_n {
            break;
        }
        let Some(p) = (pivot_row..rows_n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(pivot_row, p);
        for r in pivot_row + 1..rows_n {
            for c in col + 1..cols {
                a[r][c] = (a[pivot_row][col] * a[r][c] - a[r][col] * a[pivot_row][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[pivot_row][col];
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Fraction-free Gauss-Jordan solve of a square integer system `A x = b`.
///
/// Returns `(nums, den)` with `x_j = nums[j] / den`, or `None` if singular.
/// Every division below is exact (Bareiss-Jordan); intermediates are minors
/// of the augmented input so the `int_fits` gate bounds them.
pub(crate) fn bareiss_solve_i128(rows: &[(Vec<i128>, i128)], dim: usize) -> Option<(Vec<i128>, i128)> {
    debug_assert_eq!(rows.len(), dim);
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(*b);
            v
        })
        .collect();
    let mut prev: i128 = 1;
    for col in 0..dim {
        let p = (col..dim).find(|&r| a[r][col] != 0)?;
        a.swap(col, p);
        let pivot = a[col][col];
        for r in 0..dim {
            if r == col {
                continue;
            }
            let factor = a[r][col];
            for c in col + 1..=dim {
                a[r][c] = (pivot * a[r][c] - factor * a[col][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = pivot;
    }
    let det = a[dim - 1][dim - 1];
    debug_assert_ne!(det, 0);
    // After Jordan elimination each remaining diagonal entry equals det and
    // the augmented column holds det * x.
    let nums: Vec<i128> = (0..dim).map(|i| a[i][dim]).collect();
    Some((nums, det))
}

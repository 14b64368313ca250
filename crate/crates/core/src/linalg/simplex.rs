use super::{Inequality, Scalar};

/// Exact feasibility for a system of `a . x >= b` and `c . x = d` rows.
///
/// Phase-1 simplex with Bland's rule, so termination is guaranteed on the
/// (heavily degenerate) systems this crate produces. Returns a rational
/// feasible point, or `None` when the system is infeasible.
pub fn feasible_point<T: Scalar>(
    ineqs: &[Inequality<T>],
    eqs: &[Inequality<T>],
) -> Option<Vec<T>> {
    let Some(dim) = ineqs
        .first()
        .map(|(a, _)| a.len())
        .or_else(|| eqs.first().map(|(a, _)| a.len()))
    else {
        return Some(Vec::new());
    };
    assert!(
        ineqs.iter().chain(eqs.iter()).all(|(a, _)| a.len() == dim),
        "constraint dimensions differ"
    );

    let n_ineq = ineqs.len();
    let m = n_ineq + eqs.len();
    if m == 0 {
        return Some(vec![T::zero(); dim]);
    }
    // Structural columns: x+ (dim), x- (dim), surplus (one per inequality).
    let n_struct = 2 * dim + n_ineq;
    let n_total = n_struct + m;

    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    for (r, (a, b)) in ineqs.iter().chain(eqs.iter()).enumerate() {
        let mut row = vec![T::zero(); n_total];
        for j in 0..dim {
            row[j] = a[j].clone();
            row[dim + j] = -a[j].clone();
        }
        if r < n_ineq {
            row[2 * dim + r] = -T::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        row[n_struct + r] = T::one();
        tab.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (0..m).map(|r| n_struct + r).collect();

    loop {
        // Reduced costs for the phase-1 objective (sum of artificials):
        // r_j = c_j - sum over rows of tab[r][j] where the basic var is
        // artificial.
        let mut entering = None;
        for j in 0..n_total {
            let mut red = if j >= n_struct { T::one() } else { T::zero() };
            for r in 0..m {
                if basis[r] >= n_struct && !tab[r][j].is_zero() {
                    red = red - tab[r][j].clone();
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else { break };

        // Ratio test, Bland tie-break on the smallest basic index.
        let mut leave: Option<(usize, T)> = None;
        for r in 0..m {
            if tab[r][j].is_positive() {
                let ratio = rhs[r].clone() / tab[r][j].clone();
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-1 objective is bounded below");

        // Pivot on (r, j).
        let p = tab[r][j].clone();
        for c in 0..n_total {
            let v = tab[r][c].clone() / p.clone();
            tab[r][c] = v;
        }
        rhs[r] = rhs[r].clone() / p;
        for rr in 0..m {
            if rr != r && !tab[rr][j].is_zero() {
                let f = tab[rr][j].clone();
                for c in 0..n_total {
                    let v = tab[rr][c].clone() - f.clone() * tab[r][c].clone();
                    tab[rr][c] = v;
                }
                let v = rhs[rr].clone() - f.clone() * rhs[r].clone();
                rhs[rr] = v;
            }
        }
        basis[r] = j;
    }

    // Infeasible iff some artificial is basic at a positive level.
    for r in 0..m {
        if basis[r] >= n_struct && rhs[r].is_positive() {
            return None;
        }
    }
    let mut x = vec![T::zero(); dim];
    for r in 0..m {
        if basis[r] < dim {
            x[basis[r]] = x[basis[r]].clone() + rhs[r].clone();
        } else if basis[r] < 2 * dim {
            let j = basis[r] - dim;
            x[j] = x[j].clone() - rhs[r].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    fn ge(a: Vec<i64>, b: i64) -> Inequality<Rat> {
        (a.into_iter().map(rat).collect(), rat(b))
    }

    #[test]
    fn interval_feasible() {
        // x >= 0, -x >= -1
        let p = feasible_point::<Rat>(&[ge(vec![1], 0), ge(vec![-1], -1)], &[]).unwrap();
        assert!(p[0] >= rat(0) && p[0] <= rat(1));
    }

    #[test]
    fn contradictory_pair_infeasible() {
        // x >= 0, -x >= 1
        assert!(feasible_point::<Rat>(&[ge(vec![1], 0), ge(vec![-1], 1)], &[]).is_none());
    }

    #[test]
    fn equality_respected() {
        // x + y = 1, x >= 0, y >= 0, x - y = 1/3
        let eqs = vec![
            (vec![rat(1), rat(1)], rat(1)),
            (vec![rat(1), rat(-1)], crate::ratio(1, 3)),
        ];
        let ineqs = vec![ge(vec![1, 0], 0), ge(vec![0, 1], 0)];
        let p = feasible_point::<Rat>(&ineqs, &eqs).unwrap();
        assert_eq!(p[0], crate::ratio(2, 3));
        assert_eq!(p[1], crate::ratio(1, 3));
    }

    #[test]
    fn inconsistent_equalities() {
        let eqs = vec![
            (vec![rat(1)], rat(0)),
            (vec![rat(1)], rat(1)),
        ];
        assert!(feasible_point::<Rat>(&[], &eqs).is_none());
    }
}

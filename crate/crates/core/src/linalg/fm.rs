use super::Scalar;

/// A linear inequality `coeffs . x >= rhs`.
pub type Inequality<T> = (Vec<T>, T);

/// Canonical positive rescaling of `a . x >= b`.
///
/// The row is scaled so that the largest absolute coefficient (or the rhs,
/// if the row is trivial) becomes +/-1; positive scaling keeps the
/// inequality equivalent and gives a unique representative for dedup and
/// ordering.
pub fn normalize_inequality<T: Scalar>(ineq: &Inequality<T>) -> Inequality<T> {
    let (a, b) = ineq;
    let scale = a
        .iter()
        .map(|v| v.abs())
        .filter(|v| !v.is_zero())
        .max()
        .unwrap_or_else(|| b.abs());
    if scale.is_zero() || scale.is_one() {
        return (a.clone(), b.clone());
    }
    (a.iter().map(|v| v.clone() / scale.clone()).collect(), b.clone() / scale)
}

/// Project an inequality system onto the coordinates other than `var`.
///
/// Output rows drop the eliminated column, are canonically rescaled, sorted
/// lexicographically and deduplicated. Vacuous rows (`0 >= c` with `c <= 0`)
/// are removed; genuine contradictions (`0 >= c` with `c > 0`) are kept so
/// infeasibility stays visible after eliminating every variable.
pub fn fm_eliminate<T: Scalar>(ineqs: &[Inequality<T>], var: usize) -> Vec<Inequality<T>> {
    let mut zero: Vec<Inequality<T>> = Vec::new();
    let mut pos: Vec<Inequality<T>> = Vec::new();
    let mut neg: Vec<Inequality<T>> = Vec::new();
    for (a, b) in ineqs {
        assert!(var < a.len(), "variable index out of range");
        let c = &a[var];
        if c.is_zero() {
            zero.push((drop_var(a, var), b.clone()));
        } else if c.is_positive() {
            pos.push((a.clone(), b.clone()));
        } else {
            neg.push((a.clone(), b.clone()));
        }
    }
    let mut out = zero;
    for (ap, bp) in &pos {
        for (an, bn) in &neg {
            // alpha * (neg row) + gamma * (pos row) with the var cancelling:
            // alpha = coeff_pos > 0, gamma = -coeff_neg > 0.
            let alpha = ap[var].clone();
            let gamma = an[var].abs();
            let mut row = Vec::with_capacity(ap.len() - 1);
            for j in 0..ap.len() {
                if j == var {
                    continue;
                }
                row.push(gamma.clone() * ap[j].clone() + alpha.clone() * an[j].clone());
            }
            let rhs = gamma.clone() * bp.clone() + alpha.clone() * bn.clone();
            out.push((row, rhs));
        }
    }
    let mut canon: Vec<Inequality<T>> = out
        .into_iter()
        .map(|r| normalize_inequality(&r))
        .filter(|(a, b)| {
            // drop vacuous 0 >= nonpositive
            !(a.iter().all(|v| v.is_zero()) && !b.is_positive())
        })
        .collect();
    canon.sort();
    canon.dedup();
    canon
}

/// True when the system contains a row `0 >= positive`, i.e. is infeasible
/// on its face. Combined with repeated `fm_eliminate` this decides
/// feasibility of the original system.
pub fn has_contradiction<T: Scalar>(ineqs: &[Inequality<T>]) -> bool {
    ineqs.iter().any(|(a, b)| a.iter().all(|v| v.is_zero()) && b.is_positive())
}

fn drop_var<T: Clone>(a: &[T], var: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() - 1);
    for (j, v) in a.iter().enumerate() {
        if j != var {
            out.push(v.clone());
        }
    }
    out
}

//! The CHSH scenario as a punctured torus, and the three equivalent
//! noncontextuality criteria: the CHSH inequalities, extendability to the
//! full torus (through the diamond-filling interval), and exact convex
//! decomposition over the sixteen deterministic assignments.
//!
//! The CHSH measurements embed into the grid as `x_0 = m_00`, `y_0 = m_01`,
//! `y_1 = m_10`, `x_1 = m_11`, the XORs on the remaining cells and the
//! total XOR at `m_22`; the two grid contexts not meeting
//! `{x_i, y_j}` form the diamond that fills the puncture.

use num_traits::Signed;
use thiserror::Error;

use crate::linalg::{feasible_point, Inequality};
use crate::mermin::{dist_from_expectations, ExpectationPoint, MerminDistribution, MerminError};
use crate::scenario::{meas, BetaAssignment};
use crate::serial::{rat_from_json, rat_to_json, ParseError};
use crate::{rat, ratio, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FineError {
    #[error("CHSH table ({0},{1}) does not sum to one")]
    BadNormalization(u8, u8),
    #[error("nonsignaling violation at {0}")]
    Signaling(String),
    #[error("internal criteria disagreement: {0}")]
    CriteriaDisagree(String),
    #[error(transparent)]
    Mermin(#[from] MerminError),
}

/// Four context tables `p_{x_i y_j}^{ab}` indexed by `(a, b)` = outcomes of
/// `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChshDistribution {
    // tables[i][j][2a + b]
    tables: [[[Rat; 4]; 2]; 2],
}

impl ChshDistribution {
    pub fn from_tables(tables: [[[Rat; 4]; 2]; 2]) -> Result<Self, FineError> {
        let d = ChshDistribution { tables };
        for i in 0..2u8 {
            for j in 0..2u8 {
                let sum: Rat = d.table(i, j).iter().sum();
                if sum != rat(1) {
                    return Err(FineError::BadNormalization(i, j));
                }
                if d.table(i, j).iter().any(|v| v.is_negative()) {
                    return Err(FineError::BadNormalization(i, j));
                }
            }
        }
        // Nonsignaling across shared measurements.
        for i in 0..2u8 {
            if d.x_marginal(i, 0) != d.x_marginal(i, 1) {
                return Err(FineError::Signaling(format!("x{i}")));
            }
        }
        for j in 0..2u8 {
            if d.y_marginal(0, j) != d.y_marginal(1, j) {
                return Err(FineError::Signaling(format!("y{j}")));
            }
        }
        Ok(d)
    }

    pub fn table(&self, i: u8, j: u8) -> &[Rat; 4] {
        &self.tables[i as usize][j as usize]
    }

    fn x_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[1].clone()
    }

    fn y_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[2].clone()
    }

    /// `P[x_i xor y_j = 0]`.
    pub fn xor_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[3].clone()
    }

    /// Deterministic distribution of an assignment
    /// `(s(x_0), s(x_1), s(y_0), s(y_1))`.
    pub fn deterministic(s: [u8; 4]) -> Self {
        let mut tables: [[[Rat; 4]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..2usize {
            for j in 0..2usize {
                let (a, b) = (s[i], s[2 + j]);
                tables[i][j][(2 * a + b) as usize] = rat(1);
            }
        }
        ChshDistribution { tables }
    }

    /// The sixteen deterministic assignments in a fixed order.
    pub fn all_deterministic() -> Vec<([u8; 4], ChshDistribution)> {
        (0..16u8)
            .map(|k| {
                let s = [k & 1, (k >> 1) & 1, (k >> 2) & 1, (k >> 3) & 1];
                (s, ChshDistribution::deterministic(s))
            })
            .collect()
    }

    /// Uniformly correlated box with parity targets `pi(i, j)`; the
    /// nonlocal extremal boxes are those with an odd number of 1s.
    pub fn parity_box(pi: [[u8; 2]; 2]) -> Self {
        let mut tables: [[[Rat; 4]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..2usize {
            for j in 0..2usize {
                for ab in 0..4u8 {
                    let (a, b) = (ab / 2, ab % 2);
                    if (a ^ b) == pi[i][j] {
                        tables[i][j][ab as usize] = ratio(1, 2);
                    }
                }
            }
        }
        ChshDistribution { tables }
    }

    /// The standard maximally nonlocal box: correlated on three context
    /// pairs, anticorrelated on `(x_1, y_1)`.
    pub fn pr_box() -> Self {
        ChshDistribution::parity_box([[0, 0], [0, 1]])
    }

    pub fn uniform() -> Self {
        let tables: [[[Rat; 4]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| ratio(1, 4))));
        ChshDistribution { tables }
    }

    /// Exact convex mixture.
    pub fn mix(parts: &[(Rat, ChshDistribution)]) -> Result<Self, FineError> {
        let mut tables: [[[Rat; 4]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for (w, d) in parts {
            for i in 0..2usize {
                for j in 0..2usize {
                    for ab in 0..4 {
                        tables[i][j][ab] += w.clone() * d.tables[i][j][ab].clone();
                    }
                }
            }
        }
        ChshDistribution::from_tables(tables)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for i in 0..2u8 {
            for j in 0..2u8 {
                let mut t = serde_json::Map::new();
                for ab in 0..4u8 {
                    t.insert(
                        format!("{}{}", ab / 2, ab % 2),
                        rat_to_json(&self.table(i, j)[ab as usize]),
                    );
                }
                obj.insert(format!("x{i}y{j}"), serde_json::Value::Object(t));
            }
        }
        serde_json::Value::Object(obj)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ParseError::Malformed("CHSH distribution must be an object".into()))?;
        let mut tables: [[[Rat; 4]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..2usize {
            for j in 0..2usize {
                let key = format!("x{i}y{j}");
                let t = obj
                    .get(&key)
                    .and_then(|t| t.as_object())
                    .ok_or_else(|| ParseError::Malformed(format!("missing table {key}")))?;
                for (outcome, val) in t {
                    let bytes = outcome.as_bytes();
                    if bytes.len() != 2 || !bytes[0].is_ascii_digit() || !bytes[1].is_ascii_digit()
                    {
                        return Err(ParseError::Malformed(format!("bad outcome key {outcome}")));
                    }
                    let (a, b) = (bytes[0] - b'0', bytes[1] - b'0');
                    if a > 1 || b > 1 {
                        return Err(ParseError::Malformed(format!("bad outcome key {outcome}")));
                    }
                    tables[i][j][(2 * a + b) as usize] = rat_from_json(val)?;
                }
            }
        }
        ChshDistribution::from_tables(tables)
            .map_err(|e| ParseError::Semantic(format!("bad CHSH distribution: {e}")))
    }
}

/// The four signed sums of XOR marginals; satisfaction means each lies in
/// `[0, 2]`.
pub fn chsh_values(p: &ChshDistribution) -> [Rat; 4] {
    let m: [[Rat; 2]; 2] =
        std::array::from_fn(|i| std::array::from_fn(|j| p.xor_marginal(i as u8, j as u8)));
    [
        m[0][0].clone() + m[0][1].clone() + m[1][0].clone() - m[1][1].clone(),
        m[0][0].clone() + m[0][1].clone() - m[1][0].clone() + m[1][1].clone(),
        m[0][0].clone() - m[0][1].clone() + m[1][0].clone() + m[1][1].clone(),
        -m[0][0].clone() + m[0][1].clone() + m[1][0].clone() + m[1][1].clone(),
    ]
}

pub fn chsh_satisfied(values: &[Rat; 4]) -> bool {
    values.iter().all(|v| v >= &rat(0) && v <= &rat(2))
}

/// Outer-edge marginals of the two diamond triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondBoundary {
    pub first: (Rat, Rat),
    pub second: (Rat, Rat),
}

/// Admissible interval for the shared-edge marginal filling the diamond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionInterval {
    pub lower: Rat,
    pub upper: Rat,
}

impl ExtensionInterval {
    pub fn exists(&self) -> bool {
        self.lower <= self.upper
    }
}

/// The diamond fills iff `max{|p1+p2-1|, |q1+q2-1|} <= t <=
/// min{1-|p1-p2|, 1-|q1-q2|}` admits a `t`.
pub fn diamond_interval(b: &DiamondBoundary) -> ExtensionInterval {
    let (p1, p2) = &b.first;
    let (q1, q2) = &b.second;
    let lower_p = (p1.clone() + p2.clone() - rat(1)).abs();
    let lower_q = (q1.clone() + q2.clone() - rat(1)).abs();
    let upper_p = rat(1) - (p1.clone() - p2.clone()).abs();
    let upper_q = rat(1) - (q1.clone() - q2.clone()).abs();
    ExtensionInterval { lower: lower_p.max(lower_q), upper: upper_p.min(upper_q) }
}

/// Diamond boundary induced by the XOR marginals of a CHSH distribution:
/// one triangle carries the diagonal XORs, the other the off-diagonal ones.
pub fn xor_boundary(p: &ChshDistribution) -> DiamondBoundary {
    DiamondBoundary {
        first: (p.xor_marginal(0, 0), p.xor_marginal(1, 1)),
        second: (p.xor_marginal(0, 1), p.xor_marginal(1, 0)),
    }
}

/// Exact convex weights over the sixteen deterministic assignments
/// reproducing `p`, or `None` when `p` is contextual.
pub fn is_noncontextual(p: &ChshDistribution) -> Option<Vec<Rat>> {
    let det = ChshDistribution::all_deterministic();
    let mut eqs: Vec<Inequality<Rat>> = Vec::new();
    for i in 0..2u8 {
        for j in 0..2u8 {
            for ab in 0..4usize {
                let row: Vec<Rat> =
                    det.iter().map(|(_, d)| d.table(i, j)[ab].clone()).collect();
                eqs.push((row, p.table(i, j)[ab].clone()));
            }
        }
    }
    eqs.push((vec![rat(1); det.len()], rat(1)));
    let ineqs: Vec<Inequality<Rat>> = (0..det.len())
        .map(|k| {
            let mut row = vec![rat(0); det.len()];
            row[k] = rat(1);
            (row, rat(0))
        })
        .collect();
    let lambda = feasible_point(&ineqs, &eqs)?;
    debug_assert!(remix(&lambda) == *p, "witness must reproduce the distribution");
    Some(lambda)
}

/// Re-mix deterministic assignments with the given weights.
pub fn remix(lambda: &[Rat]) -> ChshDistribution {
    let det = ChshDistribution::all_deterministic();
    assert_eq!(lambda.len(), det.len());
    ChshDistribution::mix(
        &lambda.iter().cloned().zip(det.into_iter().map(|(_, d)| d)).collect::<Vec<_>>(),
    )
    .expect("convex mixtures of deterministic boxes are valid")
}

/// Deterministic torus extension of an assignment: XOR cells take the XOR
/// values, the central cell the total parity.
pub fn deterministic_torus_extension(s: [u8; 4]) -> MerminDistribution {
    let [x0, x1, y0, y1] = s;
    let bits: [u8; 9] = [
        x0,
        y0,
        x0 ^ y0,
        y1,
        x1,
        x1 ^ y1,
        x0 ^ y1,
        x1 ^ y0,
        x0 ^ x1 ^ y0 ^ y1,
    ];
    let coords: Vec<Rat> =
        bits.iter().map(|&b| if b == 0 { rat(1) } else { rat(-1) }).collect();
    let e = ExpectationPoint::from_vec(&coords).unwrap();
    dist_from_expectations(&e, &BetaAssignment::beta0())
}

/// Restrict a torus distribution to the four CHSH contexts.
pub fn restrict_to_chsh(d: &MerminDistribution) -> Result<ChshDistribution, FineError> {
    // Context rows/columns through each (x_i, y_j) pair, with the table
    // transposed when the grid order lists the y measurement first.
    let row0 = d.table(0); // (x0, y0, .)
    let col0 = d.table(3); // (x0, y1, .)
    let col1 = d.table(4); // (y0, x1, .)
    let row1 = d.table(1); // (y1, x1, .)
    let transpose = |t: &[Rat; 4]| [t[0].clone(), t[2].clone(), t[1].clone(), t[3].clone()];
    let tables: [[[Rat; 4]; 2]; 2] = [
        [row0.clone(), col0.clone()],
        [transpose(col1), transpose(row1)],
    ];
    ChshDistribution::from_tables(tables)
}

/// Torus extension of a CHSH distribution: the lambda-mixture of
/// deterministic extensions when one exists; `None` (with the diamond
/// interval as the negative certificate) otherwise.
pub fn extend_to_torus(p: &ChshDistribution) -> Result<Option<MerminDistribution>, FineError> {
    match is_noncontextual(p) {
        Some(lambda) => {
            let det = ChshDistribution::all_deterministic();
            let beta = BetaAssignment::beta0();
            let mut tables: [[Rat; 4]; 6] =
                std::array::from_fn(|_| std::array::from_fn(|_| rat(0)));
            for (w, (s, _)) in lambda.iter().zip(det.iter()) {
                let ext = deterministic_torus_extension(*s);
                for c in 0..6u8 {
                    for ab in 0..4usize {
                        tables[c as usize][ab] += w.clone() * ext.table(c)[ab].clone();
                    }
                }
            }
            let ext = MerminDistribution::from_tables(beta, tables)?;
            debug_assert_eq!(restrict_to_chsh(&ext)?, *p);
            Ok(Some(ext))
        }
        None => {
            let interval = diamond_interval(&xor_boundary(p));
            if interval.exists() {
                return Err(FineError::CriteriaDisagree(
                    "no decomposition, yet the diamond fills".into(),
                ));
            }
            Ok(None)
        }
    }
}

/// Joint report of the three noncontextuality criteria.
#[derive(Debug, Clone)]
pub struct FineReport {
    pub values: [Rat; 4],
    pub chsh_satisfied: bool,
    pub interval: ExtensionInterval,
    pub extension_exists: bool,
    pub decomposition: Option<Vec<Rat>>,
    pub agree: bool,
}

/// Evaluate all three criteria and check that they agree.
pub fn fine_check(p: &ChshDistribution) -> Result<FineReport, FineError> {
    let values = chsh_values(p);
    let sat = chsh_satisfied(&values);
    let interval = diamond_interval(&xor_boundary(p));
    let decomposition = is_noncontextual(p);
    let extension = extend_to_torus(p)?;
    let agree = sat == interval.exists()
        && sat == decomposition.is_some()
        && sat == extension.is_some();
    if !agree {
        return Err(FineError::CriteriaDisagree(format!(
            "chsh={sat} interval={} decomposition={} extension={}",
            interval.exists(),
            decomposition.is_some(),
            extension.is_some()
        )));
    }
    if let Some(lambda) = &decomposition {
        if remix(lambda) != *p {
            return Err(FineError::CriteriaDisagree("witness fails to re-mix".into()));
        }
    }
    if let Some(ext) = &extension {
        let e = ext.expectations()?;
        if !crate::mermin::in_polytope_by_tables(&e, &BetaAssignment::beta0()) {
            return Err(FineError::CriteriaDisagree("extension leaves the polytope".into()));
        }
    }
    Ok(FineReport {
        values,
        chsh_satisfied: sat,
        interval,
        extension_exists: extension.is_some(),
        decomposition,
        agree,
    })
}

/// Exact decomposition of a proper even-class torus distribution over the
/// sixteen deterministic vertices.
pub fn mermin_decomposition(d: &MerminDistribution) -> Result<Option<Vec<Rat>>, FineError> {
    let e = d.expectations()?;
    let det: Vec<[u8; 4]> = ChshDistribution::all_deterministic().into_iter().map(|(s, _)| s).collect();
    let points: Vec<ExpectationPoint> = det
        .iter()
        .map(|&s| deterministic_torus_extension(s).expectations().unwrap())
        .collect();
    let mut eqs: Vec<Inequality<Rat>> = Vec::new();
    for m in 0..9u8 {
        let row: Vec<Rat> = points.iter().map(|p| p.get(m).clone()).collect();
        eqs.push((row, e.get(m).clone()));
    }
    eqs.push((vec![rat(1); points.len()], rat(1)));
    let ineqs: Vec<Inequality<Rat>> = (0..points.len())
        .map(|k| {
            let mut row = vec![rat(0); points.len()];
            row[k] = rat(1);
            (row, rat(0))
        })
        .collect();
    Ok(feasible_point(&ineqs, &eqs))
}

/// The eight diamond inequalities in the variables
/// `(p1, p2, q1, q2, t)`: two triangles glued along the edge with marginal
/// `t`, both with even parity.
pub fn diamond_system() -> Vec<Inequality<Rat>> {
    let mut out = Vec::new();
    // For a triangle with outer marginals (u, v) and shared marginal t:
    // u + v + t >= 1, u - v - t >= -1, -u + v - t >= -1, -u - v + t >= -1.
    let patterns: [([i64; 3], i64); 4] =
        [([1, 1, 1], 1), ([1, -1, -1], -1), ([-1, 1, -1], -1), ([-1, -1, 1], -1)];
    for vars in [(0usize, 1usize), (2, 3)] {
        for (coef, b) in &patterns {
            let mut row = vec![rat(0); 5];
            row[vars.0] = rat(coef[0]);
            row[vars.1] = rat(coef[1]);
            row[4] = rat(coef[2]);
            out.push((row, rat(*b)));
        }
    }
    out
}

/// Seeded generator of random exact nonsignaling CHSH distributions:
/// mixtures of the sixteen deterministic boxes and the eight parity boxes
/// with bounded-denominator rational weights.
pub fn random_chsh<R: rand::Rng>(rng: &mut R, max_weight: u64) -> ChshDistribution {
    use rand::seq::SliceRandom;
    let mut parts: Vec<(u64, ChshDistribution)> = Vec::new();
    let n_det = rng.gen_range(0..=3usize);
    let n_pr = rng.gen_range(0..=2usize);
    let det = ChshDistribution::all_deterministic();
    for _ in 0..n_det {
        let (_, d) = det.choose(rng).unwrap();
        parts.push((rng.gen_range(0..=max_weight), d.clone()));
    }
    let boxes: Vec<[[u8; 2]; 2]> = (0..16u8)
        .map(|k| [[(k & 1), (k >> 1) & 1], [(k >> 2) & 1, (k >> 3) & 1]])
        .filter(|pi| (pi[0][0] + pi[0][1] + pi[1][0] + pi[1][1]) % 2 == 1)
        .collect();
    for _ in 0..n_pr {
        let pi = boxes.choose(rng).unwrap();
        parts.push((rng.gen_range(0..=max_weight), ChshDistribution::parity_box(*pi)));
    }
    if parts.iter().all(|(w, _)| *w == 0) {
        let (_, d) = det.choose(rng).unwrap();
        parts.push((1, d.clone()));
    }
    let total: u64 = parts.iter().map(|(w, _)| w).sum();
    let mixture: Vec<(Rat, ChshDistribution)> = parts
        .into_iter()
        .filter(|(w, _)| *w > 0)
        .map(|(w, d)| (Rat::new((w as i64).into(), (total as i64).into()), d))
        .collect();
    ChshDistribution::mix(&mixture).expect("mixtures of valid boxes are valid")
}

/// Grid cells of the CHSH embedding, in the order
/// `x0, y0, x0^y0, y1, x1, x1^y1, x0^y1, x1^y0, z`.
pub fn chsh_grid_cells() -> [crate::scenario::Meas; 9] {
    [
        meas(0, 0),
        meas(0, 1),
        meas(0, 2),
        meas(1, 0),
        meas(1, 1),
        meas(1, 2),
        meas(2, 0),
        meas(2, 1),
        meas(2, 2),
    ]
}

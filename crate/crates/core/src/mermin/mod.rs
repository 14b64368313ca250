//! Mermin-specific polytope construction: the 24x9 H-representation of
//! MP_beta, the distribution/expectation coordinate bridge, vertex
//! constructors from (cnc set, outcome assignment) descriptors, signed-loop
//! edge paths, and zero-pattern census.
//!
//! Coordinate conventions, fixed once for every serialized matrix:
//! measurement columns in grid order m_00, m_01, ..., m_22; context rows
//! three horizontal then three vertical; outcome pairs (a, b) in order
//! 00, 01, 10, 11 referring to the first two members of each context in
//! grid order, with the third member's outcome parity-determined.

mod signed;

pub use signed::{edge_path, signed_loop_displacement, EdgePath, SignedLoop};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::Scalar;
use crate::polytope::{HPolytope, PolytopeError, VertexSet};
use crate::scenario::{
    all_ctx, all_meas, ctx_label, ctx_members, ctxs_of_meas, enumerate_cnc_sets, meas_label,
    outcome_assignments, BetaAssignment, CncKind, CncSet, Ctx, EdgeSet, IncidenceWeight, Meas,
    OutcomeAssignment, ALL_EDGES, N_CTX, N_MEAS,
};
use crate::serial::{rat_from_json, rat_to_json, ParseError};
use crate::{rat, ratio, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MerminError {
    #[error("nonsignaling violation at measurement {0}")]
    NonsignalingViolation(String),
    #[error("invalid vertex descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("expectation out of range at {0}")]
    ExpectationRange(String),
    #[error("table for context {0} does not sum to one")]
    BadNormalization(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Expectation coordinates: one rational in [-1, 1] per measurement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpectationPoint {
    coords: [Rat; N_MEAS],
}

impl ExpectationPoint {
    pub fn new(coords: [Rat; N_MEAS]) -> Result<Self, MerminError> {
        for (m, v) in coords.iter().enumerate() {
            if v < &rat(-1) || v > &rat(1) {
                return Err(MerminError::ExpectationRange(meas_label(m as Meas)));
            }
        }
        Ok(ExpectationPoint { coords })
    }

    pub fn from_vec(v: &[Rat]) -> Result<Self, MerminError> {
        assert_eq!(v.len(), N_MEAS);
        ExpectationPoint::new(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn uniform() -> Self {
        ExpectationPoint { coords: std::array::from_fn(|_| rat(0)) }
    }

    pub fn get(&self, m: Meas) -> &Rat {
        &self.coords[m as usize]
    }

    pub fn coords(&self) -> &[Rat; N_MEAS] {
        &self.coords
    }

    pub fn as_vec(&self) -> Vec<Rat> {
        self.coords.to_vec()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for m in all_meas() {
            map.insert(meas_label(m), rat_to_json(self.get(m)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ParseError::Malformed("expectation point must be an object".into()))?;
        let mut coords: [Rat; N_MEAS] = std::array::from_fn(|_| rat(0));
        for (k, val) in obj {
            let m = crate::scenario::meas_from_label(k)?;
            coords[m as usize] = rat_from_json(val)?;
        }
        ExpectationPoint::new(coords)
            .map_err(|e| ParseError::Semantic(format!("bad expectations: {e}")))
    }
}

/// Six context tables of four rationals each, indexed by the outcomes
/// `(a, b)` of the first two context members; the third member's outcome is
/// `a + b + beta(C)`. Entries may be negative (quasidistribution); the
/// `is_proper` flag distinguishes the true polytope from its real span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MerminDistribution {
    beta: BetaAssignment,
    // tables[c][2a + b]
    tables: [[Rat; 4]; N_CTX],
}

impl MerminDistribution {
    pub fn from_tables(
        beta: BetaAssignment,
        tables: [[Rat; 4]; N_CTX],
    ) -> Result<Self, MerminError> {
        let d = MerminDistribution { beta, tables };
        for c in all_ctx() {
            let sum: Rat = d.tables[c as usize].iter().sum();
            if sum != rat(1) {
                return Err(MerminError::BadNormalization(ctx_label(c)));
            }
        }
        // Shared marginals must agree.
        d.expectations()?;
        Ok(d)
    }

    pub fn beta(&self) -> &BetaAssignment {
        &self.beta
    }

    pub fn table(&self, c: Ctx) -> &[Rat; 4] {
        &self.tables[c as usize]
    }

    pub fn entry(&self, c: Ctx, a: u8, b: u8) -> &Rat {
        &self.tables[c as usize][(2 * a + b) as usize]
    }

    /// All 24 entries nonnegative: a genuine member of MP_beta.
    pub fn is_proper(&self) -> bool {
        self.tables.iter().flatten().all(|v| !v.is_negative())
    }

    /// First negative entry, as `(context, a, b, value)`.
    pub fn first_negative(&self) -> Option<(Ctx, u8, u8, Rat)> {
        for c in all_ctx() {
            for ab in 0..4u8 {
                let v = &self.tables[c as usize][ab as usize];
                if v.is_negative() {
                    return Some((c, ab / 2, ab % 2, v.clone()));
                }
            }
        }
        None
    }

    /// Marginal of measurement `m` within context `c`: probability of
    /// outcome 0.
    pub fn marginal_in_ctx(&self, c: Ctx, m: Meas) -> Rat {
        let [x, y, _z] = ctx_members(c);
        let t = &self.tables[c as usize];
        if m == x {
            t[0].clone() + t[1].clone()
        } else if m == y {
            t[0].clone() + t[2].clone()
        } else {
            // third member: outcome c = a + b + beta, so outcome 0 collects
            // the pairs with a + b = beta.
            if self.beta.get(c) == 0 {
                t[0].clone() + t[3].clone()
            } else {
                t[1].clone() + t[2].clone()
            }
        }
    }

    /// Expectation coordinates; errors if the two contexts through some
    /// measurement disagree on its marginal.
    pub fn expectations(&self) -> Result<ExpectationPoint, MerminError> {
        let mut coords: [Rat; N_MEAS] = std::array::from_fn(|_| rat(0));
        for m in all_meas() {
            let [c1, c2] = ctxs_of_meas(m);
            let p1 = self.marginal_in_ctx(c1, m);
            let p2 = self.marginal_in_ctx(c2, m);
            if p1 != p2 {
                return Err(MerminError::NonsignalingViolation(meas_label(m)));
            }
            coords[m as usize] = rat(2) * p1 - rat(1);
        }
        ExpectationPoint::new(coords)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ctxs = serde_json::Map::new();
        for c in all_ctx() {
            let mut t = serde_json::Map::new();
            for ab in 0..4u8 {
                t.insert(
                    format!("{}{}", ab / 2, ab % 2),
                    rat_to_json(&self.tables[c as usize][ab as usize]),
                );
            }
            ctxs.insert(ctx_label(c), serde_json::Value::Object(t));
        }
        serde_json::json!({ "beta": self.beta.to_json(), "contexts": ctxs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ParseError> {
        let beta = BetaAssignment::from_json(
            v.get("beta").ok_or_else(|| ParseError::Malformed("missing beta".into()))?,
        )?;
        let ctxs = v
            .get("contexts")
            .and_then(|c| c.as_object())
            .ok_or_else(|| ParseError::Malformed("missing contexts".into()))?;
        let mut tables: [[Rat; 4]; N_CTX] = std::array::from_fn(|_| std::array::from_fn(|_| rat(0)));
        for (k, tab) in ctxs {
            let c = crate::scenario::ctx_from_label(k)?;
            let tab = tab
                .as_object()
                .ok_or_else(|| ParseError::Malformed(format!("table {k} must be an object")))?;
            for (outcome, val) in tab {
                let bytes = outcome.as_bytes();
                if bytes.len() != 2 || !bytes[0].is_ascii_digit() || !bytes[1].is_ascii_digit() {
                    return Err(ParseError::Malformed(format!("bad outcome key {outcome}")));
                }
                let (a, b) = (bytes[0] - b'0', bytes[1] - b'0');
                if a > 1 || b > 1 {
                    return Err(ParseError::Malformed(format!("bad outcome key {outcome}")));
                }
                tables[c as usize][(2 * a + b) as usize] = rat_from_json(val)?;
            }
        }
        MerminDistribution::from_tables(beta, tables)
            .map_err(|e| ParseError::Semantic(format!("bad distribution: {e}")))
    }
}

/// The 24-row, 9-column H-representation of MP_beta in expectation
/// coordinates: row (C, ab) reads `(-1)^a x + (-1)^b y + (-1)^(a+b+beta) z
/// >= -1` on the three member columns of C.
pub fn build_h_rep<T: Scalar>(beta: &BetaAssignment) -> HPolytope<T> {
    let mut rows = Vec::with_capacity(24);
    let mut rhs = Vec::with_capacity(24);
    let mut labels = Vec::with_capacity(24);
    for c in all_ctx() {
        let [x, y, z] = ctx_members(c);
        for ab in 0..4u8 {
            let (a, b) = (ab / 2, ab % 2);
            let mut row = vec![T::zero(); N_MEAS];
            row[x as usize] = sign::<T>(a);
            row[y as usize] = sign::<T>(b);
            row[z as usize] = sign::<T>(a + b + beta.get(c));
            rows.push(row);
            rhs.push(T::from_int(-1));
            labels.push(format!("{},{}{}", ctx_label(c), a, b));
        }
    }
    HPolytope::with_labels(crate::linalg::Mat::from_rows(rows), rhs, labels)
}

/// H-representation of the incidence-weight polytope. In marginal
/// coordinates a weight constrains each context exactly through its
/// incidence-sum parity, so this is the MP polytope of the induced
/// per-context parities.
pub fn build_h_rep_from_weight<T: Scalar>(w: &IncidenceWeight) -> HPolytope<T> {
    build_h_rep(&w.induced_beta())
}

fn sign<T: Scalar>(parity: u8) -> T {
    if parity % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Table entry formula: `p_C^{ab} = (1 + (-1)^a x + (-1)^b y +
/// (-1)^(a+b+beta) z) / 4`. Entries may come out negative; the caller
/// checks `is_proper` when membership matters.
pub fn dist_from_expectations(e: &ExpectationPoint, beta: &BetaAssignment) -> MerminDistribution {
    let mut tables: [[Rat; 4]; N_CTX] = std::array::from_fn(|_| std::array::from_fn(|_| rat(0)));
    for c in all_ctx() {
        let [x, y, z] = ctx_members(c);
        for ab in 0..4u8 {
            let (a, b) = (ab / 2, ab % 2);
            let v = (rat(1)
                + rsign(a) * e.get(x).clone()
                + rsign(b) * e.get(y).clone()
                + rsign(a + b + beta.get(c)) * e.get(z).clone())
                * ratio(1, 4);
            tables[c as usize][ab as usize] = v;
        }
    }
    MerminDistribution { beta: *beta, tables }
}

/// Inverse of `dist_from_expectations` on proper distributions.
pub fn expectations_from_dist(d: &MerminDistribution) -> Result<ExpectationPoint, MerminError> {
    d.expectations()
}

fn rsign(parity: u8) -> Rat {
    if parity % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Classification datum for a vertex of MP_beta.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexDescriptor {
    /// Global outcome assignment; only valid in the even class.
    Deterministic(OutcomeAssignment),
    /// Maximal cnc set with an outcome assignment; only valid in the odd
    /// class.
    Cnc(CncSet, OutcomeAssignment),
}

impl VertexDescriptor {
    pub fn kind(&self) -> Option<CncKind> {
        match self {
            VertexDescriptor::Deterministic(_) => None,
            VertexDescriptor::Cnc(s, _) => Some(s.kind()),
        }
    }
}

/// Expectation point of a descriptor: `(-1)^(s(m))` on the carrier, zero
/// off it.
pub fn vertex_from_descriptor(
    d: &VertexDescriptor,
    beta: &BetaAssignment,
) -> Result<ExpectationPoint, MerminError> {
    let (carrier, assignment) = match d {
        VertexDescriptor::Deterministic(s) => {
            if beta.cohomology_class() != 0 {
                return Err(MerminError::InvalidDescriptor(
                    "deterministic descriptors require an even parity class".into(),
                ));
            }
            if s.carrier() != ALL_EDGES {
                return Err(MerminError::InvalidDescriptor(
                    "deterministic descriptor must cover all measurements".into(),
                ));
            }
            (ALL_EDGES, s)
        }
        VertexDescriptor::Cnc(omega, s) => {
            if beta.cohomology_class() != 1 {
                return Err(MerminError::InvalidDescriptor(
                    "cnc descriptors require an odd parity class".into(),
                ));
            }
            if s.carrier() != omega.members() {
                return Err(MerminError::InvalidDescriptor(
                    "assignment carrier differs from the cnc set".into(),
                ));
            }
            (omega.members(), s)
        }
    };
    if !assignment.satisfies(beta) {
        return Err(MerminError::InvalidDescriptor(
            "assignment violates a context parity".into(),
        ));
    }
    let mut coords: [Rat; N_MEAS] = std::array::from_fn(|_| rat(0));
    for m in all_meas() {
        if carrier & (1 << m) != 0 {
            coords[m as usize] = if assignment.value(m) == Some(0) { rat(1) } else { rat(-1) };
        }
    }
    ExpectationPoint::new(coords)
}

/// Every (descriptor, expectation point) pair predicted by the
/// classification: 16 deterministic points in the even class, 48 type-1
/// plus 72 type-2 cnc points in the odd one.
pub fn classified_vertices(
    beta: &BetaAssignment,
) -> Vec<(VertexDescriptor, ExpectationPoint)> {
    let mut out = Vec::new();
    if beta.cohomology_class() == 0 {
        let full = enumerate_cnc_sets(beta);
        for s in outcome_assignments(&full[0], beta) {
            let d = VertexDescriptor::Deterministic(s);
            let e = vertex_from_descriptor(&d, beta).unwrap();
            out.push((d, e));
        }
    } else {
        for omega in enumerate_cnc_sets(beta) {
            for s in outcome_assignments(&omega, beta) {
                let d = VertexDescriptor::Cnc(omega, s);
                let e = vertex_from_descriptor(&d, beta).unwrap();
                out.push((d, e));
            }
        }
    }
    out
}

/// Recognize an enumerated vertex as a descriptor: coordinates must be
/// 0/+1/-1 with the support a (maximal) cnc carrier.
pub fn descriptor_from_vertex(
    e: &ExpectationPoint,
    beta: &BetaAssignment,
) -> Option<VertexDescriptor> {
    let mut carrier: EdgeSet = 0;
    let mut ones: EdgeSet = 0;
    for m in all_meas() {
        let v = e.get(m);
        if v == &rat(1) {
            carrier |= 1 << m;
        } else if v == &rat(-1) {
            carrier |= 1 << m;
            ones |= 1 << m;
        } else if !v.is_zero() {
            return None;
        }
    }
    if beta.cohomology_class() == 0 {
        if carrier != ALL_EDGES {
            return None;
        }
        let s = OutcomeAssignment::global(ones);
        return s.satisfies(beta).then_some(VertexDescriptor::Deterministic(s));
    }
    let omega = enumerate_cnc_sets(beta).into_iter().find(|o| o.members() == carrier)?;
    let s = OutcomeAssignment::new(carrier, ones);
    s.satisfies(beta).then_some(VertexDescriptor::Cnc(omega, s))
}

/// Report of the bijection between enumerated vertices and classification
/// descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub class: u8,
    pub enumerated: usize,
    pub constructed: usize,
    pub deterministic: usize,
    pub type1: usize,
    pub type2: usize,
    pub bijection: bool,
}

/// Enumerate MP_beta and check set equality with the constructed vertex
/// family, in both directions.
pub fn verify_vertex_classification(beta: &BetaAssignment) -> Result<ClassificationReport, MerminError> {
    let p: HPolytope<Rat> = build_h_rep(beta);
    let vs = p.enumerate_vertices()?;
    let constructed = classified_vertices(beta);
    let enum_set: std::collections::BTreeSet<Vec<Rat>> = vs.vertices.iter().cloned().collect();
    let cons_set: std::collections::BTreeSet<Vec<Rat>> =
        constructed.iter().map(|(_, e)| e.as_vec()).collect();
    let mut deterministic = 0;
    let mut type1 = 0;
    let mut type2 = 0;
    for (d, _) in &constructed {
        match d.kind() {
            None => deterministic += 1,
            Some(CncKind::Type1) => type1 += 1,
            Some(CncKind::Type2) => type2 += 1,
            Some(CncKind::Full) => {}
        }
    }
    // Reverse direction: every enumerated vertex must be recognizable.
    let recognized = vs.vertices.iter().all(|v| {
        ExpectationPoint::from_vec(v)
            .ok()
            .and_then(|e| descriptor_from_vertex(&e, beta))
            .is_some()
    });
    Ok(ClassificationReport {
        class: beta.cohomology_class(),
        enumerated: enum_set.len(),
        constructed: cons_set.len(),
        deterministic,
        type1,
        type2,
        bijection: enum_set == cons_set && recognized,
    })
}

/// Zero-pattern census of a distribution: per-context zero counts
/// aggregated as (n3, n2, n1), plus the deterministic triangles (contexts
/// with point-mass tables) and deterministic edges (measurements with
/// point-mass marginals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    pub n3: usize,
    pub n2: usize,
    pub n1: usize,
    pub per_context: [usize; N_CTX],
    pub deterministic_triangles: Vec<Ctx>,
    pub deterministic_edges: Vec<Meas>,
}

pub fn zero_pattern(d: &MerminDistribution) -> Result<ZeroPattern, MerminError> {
    let e = d.expectations()?;
    let mut per_context = [0usize; N_CTX];
    let mut tri = Vec::new();
    for c in all_ctx() {
        let zeros = d.table(c).iter().filter(|v| v.is_zero()).count();
        per_context[c as usize] = zeros;
        if zeros == 3 {
            tri.push(c);
        }
    }
    let count = |k: usize| per_context.iter().filter(|&&n| n == k).count();
    let edges: Vec<Meas> =
        all_meas().filter(|&m| e.get(m) == &rat(1) || e.get(m) == &rat(-1)).collect();
    Ok(ZeroPattern {
        n3: count(3),
        n2: count(2),
        n1: count(1),
        per_context,
        deterministic_triangles: tri,
        deterministic_edges: edges,
    })
}

/// MP membership through the table formula (the defining constraints),
/// rather than the H-representation dot products.
pub fn in_polytope_by_tables(e: &ExpectationPoint, beta: &BetaAssignment) -> bool {
    dist_from_expectations(e, beta).is_proper()
}

/// Vertex set of MP_beta as expectation points.
pub fn enumerate_mp_vertices(
    beta: &BetaAssignment,
) -> Result<(HPolytope<Rat>, VertexSet<Rat>), MerminError> {
    let p: HPolytope<Rat> = build_h_rep(beta);
    let vs = p.enumerate_vertices()?;
    Ok((p, vs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_rep_shape_and_rows() {
        let p: HPolytope<Rat> = build_h_rep(&BetaAssignment::beta0());
        assert_eq!((p.n_rows(), p.dim()), (24, 9));
        assert!(p.b().iter().all(|v| v == &rat(-1)));
        // row (C0_hor, 00) with beta = 0: +1 +1 +1 on columns m00 m01 m02
        let r = p.a().row(0);
        assert_eq!(&r[0..3], &[rat(1), rat(1), rat(1)][..]);
        assert!(r[3..].iter().all(|v| v.is_zero()));
        // with beta = 1 on that context the third sign flips
        let p1: HPolytope<Rat> = build_h_rep(&BetaAssignment::new([1, 0, 0, 0, 0, 0]));
        let r1 = p1.a().row(0);
        assert_eq!(&r1[0..3], &[rat(1), rat(1), rat(-1)][..]);
    }

    #[test]
    fn uniform_expectations_give_quarter_tables() {
        let d = dist_from_expectations(&ExpectationPoint::uniform(), &BetaAssignment::beta1());
        for c in all_ctx() {
            for ab in 0..4u8 {
                assert_eq!(d.entry(c, ab / 2, ab % 2), &ratio(1, 4));
            }
        }
        assert!(d.is_proper());
    }

    #[test]
    fn all_plus_one_is_the_canonical_deterministic_point() {
        let e = ExpectationPoint::from_vec(&vec![rat(1); 9]).unwrap();
        let d = dist_from_expectations(&e, &BetaAssignment::beta0());
        for c in all_ctx() {
            assert_eq!(d.entry(c, 0, 0), &rat(1));
            assert_eq!(d.entry(c, 0, 1), &rat(0));
            assert_eq!(d.entry(c, 1, 0), &rat(0));
            assert_eq!(d.entry(c, 1, 1), &rat(0));
        }
    }

    #[test]
    fn roundtrip_exp_dist_exp() {
        let e = ExpectationPoint::from_vec(&vec![
            ratio(1, 2),
            ratio(-1, 3),
            rat(0),
            ratio(2, 7),
            rat(1),
            ratio(-3, 5),
            rat(0),
            ratio(1, 9),
            ratio(-1, 2),
        ])
        .unwrap();
        for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
            let d = dist_from_expectations(&e, &beta);
            assert_eq!(expectations_from_dist(&d).unwrap(), e);
        }
    }

    #[test]
    fn marginal_formula_matches_xor_structure() {
        // p_z^0 = p00 + p11 when beta = 0 and p01 + p10 when beta = 1
        let e = ExpectationPoint::from_vec(&vec![
            ratio(1, 3),
            ratio(-1, 4),
            ratio(1, 5),
            rat(0),
            ratio(2, 5),
            ratio(-1, 7),
            ratio(3, 8),
            rat(0),
            ratio(-2, 9),
        ])
        .unwrap();
        for beta in [BetaAssignment::beta0(), BetaAssignment::beta1()] {
            let d = dist_from_expectations(&e, &beta);
            for c in all_ctx() {
                let [_, _, z] = ctx_members(c);
                let t = d.table(c);
                let expect = if beta.get(c) == 0 {
                    t[0].clone() + t[3].clone()
                } else {
                    t[1].clone() + t[2].clone()
                };
                assert_eq!(d.marginal_in_ctx(c, z), expect);
            }
        }
    }

    #[test]
    fn descriptor_roundtrip_odd_class() {
        let beta = BetaAssignment::beta1();
        for (d, e) in classified_vertices(&beta) {
            let rec = descriptor_from_vertex(&e, &beta).unwrap();
            assert_eq!(rec, d);
        }
    }

    #[test]
    fn classified_counts() {
        assert_eq!(classified_vertices(&BetaAssignment::beta0()).len(), 16);
        let odd = classified_vertices(&BetaAssignment::beta1());
        assert_eq!(odd.len(), 120);
        let t1 = odd.iter().filter(|(d, _)| d.kind() == Some(CncKind::Type1)).count();
        let t2 = odd.iter().filter(|(d, _)| d.kind() == Some(CncKind::Type2)).count();
        assert_eq!((t1, t2), (48, 72));
    }

    #[test]
    fn descriptor_rejects_mismatched_class() {
        let beta0 = BetaAssignment::beta0();
        let beta1 = BetaAssignment::beta1();
        let (det, _) = &classified_vertices(&beta0)[0];
        assert!(vertex_from_descriptor(det, &beta1).is_err());
        let (cnc, _) = &classified_vertices(&beta1)[0];
        assert!(vertex_from_descriptor(cnc, &beta0).is_err());
    }

    #[test]
    fn zero_pattern_of_canonical_point() {
        let e = ExpectationPoint::from_vec(&vec![rat(1); 9]).unwrap();
        let d = dist_from_expectations(&e, &BetaAssignment::beta0());
        let z = zero_pattern(&d).unwrap();
        assert_eq!(z.n3, 6);
        assert_eq!(z.deterministic_triangles.len(), 6);
        assert_eq!(z.deterministic_edges.len(), 9);
    }

    #[test]
    fn zero_pattern_of_uniform() {
        let d = dist_from_expectations(&ExpectationPoint::uniform(), &BetaAssignment::beta1());
        let z = zero_pattern(&d).unwrap();
        assert_eq!((z.n3, z.n2, z.n1), (0, 0, 0));
        assert!(z.deterministic_edges.is_empty());
    }

    #[test]
    fn distribution_json_roundtrip() {
        let e = ExpectationPoint::from_vec(&vec![
            ratio(1, 2),
            rat(0),
            rat(0),
            rat(0),
            ratio(-1, 2),
            rat(0),
            rat(0),
            rat(0),
            rat(1),
        ])
        .unwrap();
        let d = dist_from_expectations(&e, &BetaAssignment::beta1());
        let j = d.to_json();
        let d2 = MerminDistribution::from_json(&j).unwrap();
        assert_eq!(d, d2);
    }
}

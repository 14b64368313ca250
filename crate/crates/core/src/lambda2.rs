//! Two-qubit Pauli geometry and the local/nonlocal decomposition of the
//! stabilizer polytope dual: maximal isotropic subspaces, the sixty
//! stabilizer projectors, the (2,3,2) Bell-scenario nonsignaling polytope,
//! the `ext` completion map onto the odd-class Mermin polytope, and the
//! membership test it induces, cross-checked against exact operator
//! arithmetic.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::CMat;
use crate::mermin::{dist_from_expectations, ExpectationPoint, MerminDistribution};
use crate::polytope::{enumerate_vertices_dd, HPolytope, PolytopeError, VertexSet};
use crate::scenario::{all_meas, BetaAssignment};
use crate::serial::{rat_from_json, rat_to_json, ParseError};
use crate::symmetry::{all_paulis, grid_dictionary, nonlocal_paulis, Pauli2};
use crate::{rat, ratio, CRat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Lambda2Error {
    #[error("table for context ({0},{1}) does not sum to one")]
    BadNormalization(u8, u8),
    #[error("nonsignaling violation at {0}")]
    Signaling(String),
    #[error("membership tests disagree: ext says {0}, operators say {1}")]
    MembershipMismatch(bool, bool),
}

/// A maximal isotropic subspace of the two-qubit Pauli labels: three
/// pairwise commuting labels closed under products. Nine are local (one
/// local label per factor plus their product), six are nonlocal and carry
/// the Mermin contexts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsotropicSubspace {
    members: [Pauli2; 3],
    local: bool,
}

impl IsotropicSubspace {
    pub fn members(&self) -> &[Pauli2; 3] {
        &self.members
    }

    pub fn is_local(&self) -> bool {
        self.local
    }

    /// Canonical generating pair: the two smallest members.
    pub fn generators(&self) -> (Pauli2, Pauli2) {
        (self.members[0], self.members[1])
    }
}

/// All fifteen maximal isotropics, sorted; local ones carry a local label.
pub fn enumerate_isotropics() -> Vec<IsotropicSubspace> {
    let nontrivial: Vec<Pauli2> =
        all_paulis().into_iter().filter(|p| !p.is_identity()).collect();
    let mut out = Vec::new();
    for i in 0..nontrivial.len() {
        for j in i + 1..nontrivial.len() {
            let (a, b) = (nontrivial[i], nontrivial[j]);
            if !a.commutes(&b) {
                continue;
            }
            let c = a.times(&b);
            if c < b {
                continue; // keep one sorted representative per subspace
            }
            debug_assert!(a.commutes(&c) && b.commutes(&c));
            let members = [a, b, c];
            let local = members.iter().any(|p| p.is_local());
            out.push(IsotropicSubspace { members, local });
        }
    }
    out.sort();
    out.dedup();
    assert_eq!(out.len(), 15, "fifteen maximal isotropics");
    out
}

/// A rank-one stabilizer projector `(1 + (-1)^a A)(1 + (-1)^b B) / 4` for a
/// commuting generating pair.
#[derive(Debug, Clone)]
pub struct StabilizerProjector {
    pub gen_a: Pauli2,
    pub gen_b: Pauli2,
    pub sign_a: u8,
    pub sign_b: u8,
    pub local: bool,
    matrix: CMat,
}

impl StabilizerProjector {
    pub fn new(gen_a: Pauli2, gen_b: Pauli2, sign_a: u8, sign_b: u8, local: bool) -> Self {
        let one = CMat::identity(4);
        let half = CRat::new(ratio(1, 2), rat(0));
        let fa =
            one.add(&gen_a.matrix().scale(&CRat::new(sgn(sign_a), rat(0)))).scale(&half);
        let fb =
            one.add(&gen_b.matrix().scale(&CRat::new(sgn(sign_b), rat(0)))).scale(&half);
        let matrix = fa.mul(&fb);
        let p = StabilizerProjector { gen_a, gen_b, sign_a, sign_b, local, matrix };
        debug_assert!(p.is_idempotent_rank_one());
        p
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn is_idempotent_rank_one(&self) -> bool {
        self.matrix.mul(&self.matrix) == self.matrix
            && self.matrix.trace() == CRat::new(rat(1), rat(0))
    }

    pub fn name(&self) -> String {
        format!(
            "{}{}:{}{}",
            if self.sign_a == 0 { '+' } else { '-' },
            self.gen_a.name(),
            if self.sign_b == 0 { '+' } else { '-' },
            self.gen_b.name()
        )
    }
}

fn sgn(parity: u8) -> Rat {
    if parity % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// The sixty stabilizer projectors: four sign characters per isotropic,
/// 36 local and 24 nonlocal.
pub fn enumerate_stabilizer_projectors() -> Vec<StabilizerProjector> {
    let mut out = Vec::new();
    for iso in enumerate_isotropics() {
        let (a, b) = iso.generators();
        for sa in 0..2u8 {
            for sb in 0..2u8 {
                out.push(StabilizerProjector::new(a, b, sa, sb, iso.is_local()));
            }
        }
    }
    assert_eq!(out.len(), 60);
    out
}

/// Nonsignaling distribution of the (2,3,2) Bell scenario: nine context
/// tables `p_{x_i y_j}^{ab}`, three measurements per party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NS232Distribution {
    // tables[i][j][2a + b]
    tables: [[[Rat; 4]; 3]; 3],
}

impl NS232Distribution {
    pub fn from_tables(tables: [[[Rat; 4]; 3]; 3]) -> Result<Self, Lambda2Error> {
        let d = NS232Distribution { tables };
        for i in 0..3u8 {
            for j in 0..3u8 {
                let t = d.table(i, j);
                let sum: Rat = t.iter().sum();
                if sum != rat(1) || t.iter().any(|v| v.is_negative()) {
                    return Err(Lambda2Error::BadNormalization(i, j));
                }
            }
        }
        for i in 0..3u8 {
            let m0 = d.x_marginal(i, 0);
            for j in 1..3u8 {
                if d.x_marginal(i, j) != m0 {
                    return Err(Lambda2Error::Signaling(format!("x{i}")));
                }
            }
        }
        for j in 0..3u8 {
            let m0 = d.y_marginal(0, j);
            for i in 1..3u8 {
                if d.y_marginal(i, j) != m0 {
                    return Err(Lambda2Error::Signaling(format!("y{j}")));
                }
            }
        }
        Ok(d)
    }

    pub fn table(&self, i: u8, j: u8) -> &[Rat; 4] {
        &self.tables[i as usize][j as usize]
    }

    pub fn x_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[1].clone()
    }

    pub fn y_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[2].clone()
    }

    /// `P[x_i xor y_j = 0]`.
    pub fn xor_marginal(&self, i: u8, j: u8) -> Rat {
        let t = self.table(i, j);
        t[0].clone() + t[3].clone()
    }

    pub fn deterministic(sx: [u8; 3], sy: [u8; 3]) -> Self {
        let mut tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..3usize {
            for j in 0..3usize {
                tables[i][j][(2 * sx[i] + sy[j]) as usize] = rat(1);
            }
        }
        NS232Distribution { tables }
    }

    pub fn all_deterministic() -> Vec<NS232Distribution> {
        let mut out = Vec::with_capacity(64);
        for kx in 0..8u8 {
            for ky in 0..8u8 {
                let sx = [kx & 1, (kx >> 1) & 1, (kx >> 2) & 1];
                let sy = [ky & 1, (ky >> 1) & 1, (ky >> 2) & 1];
                out.push(NS232Distribution::deterministic(sx, sy));
            }
        }
        out
    }

    pub fn uniform() -> Self {
        let tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| ratio(1, 4))));
        NS232Distribution { tables }
    }

    /// Born distribution of a density operator on the nine local contexts.
    pub fn born(rho: &CMat) -> Result<Self, Lambda2Error> {
        let mut tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..3u8 {
            for j in 0..3u8 {
                for a in 0..2u8 {
                    for b in 0..2u8 {
                        let pi = local_projector(i, j, a, b);
                        let tr = rho.trace_mul(pi.matrix());
                        assert!(tr.im.is_zero(), "Born probabilities are real");
                        tables[i as usize][j as usize][(2 * a + b) as usize] = tr.re;
                    }
                }
            }
        }
        NS232Distribution::from_tables(tables)
    }

    /// Uniformly correlated box with parity targets `pi(i, j)`.
    pub fn parity_box(pi: [[u8; 3]; 3]) -> Self {
        let mut tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..3usize {
            for j in 0..3usize {
                for ab in 0..4u8 {
                    let (a, b) = (ab / 2, ab % 2);
                    if (a ^ b) == pi[i][j] {
                        tables[i][j][ab as usize] = ratio(1, 2);
                    }
                }
            }
        }
        NS232Distribution { tables }
    }

    pub fn mix(parts: &[(Rat, NS232Distribution)]) -> Result<Self, Lambda2Error> {
        let mut tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for (w, d) in parts {
            for i in 0..3usize {
                for j in 0..3usize {
                    for ab in 0..4usize {
                        tables[i][j][ab] += w.clone() * d.tables[i][j][ab].clone();
                    }
                }
            }
        }
        NS232Distribution::from_tables(tables)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for i in 0..3u8 {
            for j in 0..3u8 {
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
            .ok_or_else(|| ParseError::Malformed("distribution must be an object".into()))?;
        let mut tables: [[[Rat; 4]; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| rat(0))));
        for i in 0..3usize {
            for j in 0..3usize {
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
        NS232Distribution::from_tables(tables)
            .map_err(|e| ParseError::Semantic(format!("bad distribution: {e}")))
    }
}

/// Projector onto the joint eigenspace of the local pair
/// `(T_(i+1) @ 1, 1 @ T_(j+1))` with eigenvalue signs `(a, b)`.
pub fn local_projector(i: u8, j: u8, a: u8, b: u8) -> StabilizerProjector {
    StabilizerProjector::new(
        Pauli2::new(i + 1, 0),
        Pauli2::new(0, j + 1),
        a,
        b,
        true,
    )
}

/// The completion of a (2,3,2) distribution onto the Mermin torus.
///
/// The XOR of `x_i` and `y_j` measures the nonlocal Pauli with factors
/// `(i, j)`; on each nonlocal context the table entry at an outcome
/// `(a, b, c)` in the support is `(marg_x(a) + marg_y(b) - marg_z(c+1))/2`
/// and zero off the support. The output may be a quasidistribution; it is
/// proper exactly when the input lies in the stabilizer-dual polytope.
pub fn ext(d: &NS232Distribution) -> MerminDistribution {
    let dict = grid_dictionary();
    let beta = BetaAssignment::beta1();
    // marginal of the nonlocal Pauli sitting at grid cell m, outcome 0
    let marg0 = |m: crate::scenario::Meas| -> Rat {
        let p = dict.pauli(m);
        d.xor_marginal(p.first - 1, p.second - 1)
    };
    let mut tables: [[Rat; 4]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| rat(0)));
    for c in crate::scenario::all_ctx() {
        let [x, y, z] = crate::scenario::ctx_members(c);
        for ab in 0..4u8 {
            let (a, b) = (ab / 2, ab % 2);
            let cc = (a + b + beta.get(c)) % 2;
            let mx = if a == 0 { marg0(x) } else { rat(1) - marg0(x) };
            let my = if b == 0 { marg0(y) } else { rat(1) - marg0(y) };
            let mz_flip = if cc == 1 { marg0(z) } else { rat(1) - marg0(z) };
            tables[c as usize][ab as usize] = (mx + my - mz_flip) * ratio(1, 2);
        }
    }
    // The image always normalizes and shares marginals; properness is the
    // membership question itself.
    MerminDistribution::from_tables(beta, tables).expect("ext image is normalized and nonsignaling")
}

/// Membership verdict with its certificate.
#[derive(Debug, Clone)]
pub enum MembershipCertificate {
    Member(MerminDistribution),
    NegativeEntry { ctx: crate::scenario::Ctx, a: u8, b: u8, value: Rat },
}

/// A distribution lies in the stabilizer-dual polytope iff its `ext` image
/// is a proper distribution.
pub fn lambda2_member(d: &NS232Distribution) -> (bool, MembershipCertificate) {
    let image = ext(d);
    match image.first_negative() {
        None => (true, MembershipCertificate::Member(image)),
        Some((c, a, b, value)) => {
            (false, MembershipCertificate::NegativeEntry { ctx: c, a, b, value })
        }
    }
}

/// The sixteen Pauli coefficients of the induced trace-one operator
/// `rho = (1/4) sum alpha_A A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliCoefficients {
    // indexed 4 * first + second
    alpha: [Rat; 16],
}

impl PauliCoefficients {
    pub fn identity_only() -> Self {
        let mut alpha: [Rat; 16] = std::array::from_fn(|_| rat(0));
        alpha[0] = rat(1);
        PauliCoefficients { alpha }
    }

    pub fn get(&self, p: &Pauli2) -> &Rat {
        &self.alpha[(4 * p.first + p.second) as usize]
    }

    pub fn set(&mut self, p: &Pauli2, v: Rat) {
        assert!(!p.is_identity() || v == rat(1), "identity coefficient is fixed at one");
        self.alpha[(4 * p.first + p.second) as usize] = v;
    }

    pub fn to_matrix(&self) -> CMat {
        let mut acc = CMat::zeros(4);
        for p in all_paulis() {
            let w = self.get(&p);
            if !w.is_zero() {
                acc = acc.add(&p.matrix().scale(&CRat::new(w.clone(), rat(0))));
            }
        }
        acc.scale(&CRat::new(ratio(1, 4), rat(0)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for p in all_paulis() {
            map.insert(p.name(), rat_to_json(self.get(&p)));
        }
        serde_json::Value::Object(map)
    }
}

/// Pauli coefficients of a (2,3,2) distribution: local coefficients from
/// the single-measurement expectations, nonlocal ones from the XOR
/// expectations.
pub fn rho_from(d: &NS232Distribution) -> PauliCoefficients {
    let mut out = PauliCoefficients::identity_only();
    for i in 0..3u8 {
        let e = rat(2) * d.x_marginal(i, 0) - rat(1);
        out.set(&Pauli2::new(i + 1, 0), e);
        let e = rat(2) * d.y_marginal(0, i) - rat(1);
        out.set(&Pauli2::new(0, i + 1), e);
    }
    for p in nonlocal_paulis() {
        let e = rat(2) * d.xor_marginal(p.first - 1, p.second - 1) - rat(1);
        out.set(&p, e);
    }
    out
}

/// Zero the six local coefficients, keeping the identity and the nine
/// nonlocal ones: the operator-side picture of `ext`.
pub fn project_nonlocal(c: &PauliCoefficients) -> PauliCoefficients {
    let mut out = c.clone();
    for p in all_paulis() {
        if p.is_local() {
            out.set(&p, rat(0));
        }
    }
    out
}

/// Mermin quasidistribution of a nonlocal coefficient pattern.
pub fn coefficients_to_mermin(c: &PauliCoefficients) -> MerminDistribution {
    let dict = grid_dictionary();
    let mut coords: [Rat; 9] = std::array::from_fn(|_| rat(0));
    for m in all_meas() {
        coords[m as usize] = c.get(&dict.pauli(m)).clone();
    }
    let e = ExpectationPoint::new(coords).expect("coefficients bounded by one");
    dist_from_expectations(&e, &BetaAssignment::beta1())
}

/// Cross-check report: the `ext` membership test against positivity of the
/// sixty projector overlaps, evaluated by exact matrix arithmetic.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub member_via_ext: bool,
    pub member_via_operators: bool,
    pub violating_projector: Option<String>,
}

pub fn membership_cross_check(d: &NS232Distribution) -> Result<CrossCheckReport, Lambda2Error> {
    let (via_ext, _) = lambda2_member(d);
    let rho = rho_from(d).to_matrix();
    let mut violating = None;
    let mut via_ops = true;
    for pi in enumerate_stabilizer_projectors() {
        let tr = rho.trace_mul(pi.matrix());
        assert!(tr.im.is_zero());
        if tr.re.is_negative() {
            via_ops = false;
            violating = Some(pi.name());
            break;
        }
    }
    if via_ext != via_ops {
        return Err(Lambda2Error::MembershipMismatch(via_ext, via_ops));
    }
    Ok(CrossCheckReport { member_via_ext: via_ext, member_via_operators: via_ops, violating_projector: violating })
}

/// Born distributions of the sixty stabilizer states.
pub fn stabilizer_born_distributions() -> Vec<(String, NS232Distribution)> {
    enumerate_stabilizer_projectors()
        .into_iter()
        .map(|pi| {
            let d = NS232Distribution::born(pi.matrix()).expect("stabilizer Born rule is NS");
            (pi.name(), d)
        })
        .collect()
}

/// H-representation of the (2,3,2) nonsignaling polytope in the fifteen
/// expectation coordinates `(<x_i>, <y_j>, <x_i y_j>)`.
pub fn ns232_h_rep() -> HPolytope<Rat> {
    let mut rows = Vec::with_capacity(36);
    let mut rhs = Vec::with_capacity(36);
    let mut labels = Vec::with_capacity(36);
    for i in 0..3usize {
        for j in 0..3usize {
            for ab in 0..4u8 {
                let (a, b) = (ab / 2, ab % 2);
                let mut row = vec![rat(0); 15];
                row[i] = sgn(a);
                row[3 + j] = sgn(b);
                row[6 + 3 * i + j] = sgn(a + b);
                rows.push(row);
                rhs.push(rat(-1));
                labels.push(format!("x{i}y{j},{a}{b}"));
            }
        }
    }
    HPolytope::with_labels(crate::linalg::Mat::from_rows(rows), rhs, labels)
}

/// Expectation coordinates of a distribution in the 15-dimensional picture.
pub fn ns232_expectations(d: &NS232Distribution) -> Vec<Rat> {
    let mut out = Vec::with_capacity(15);
    for i in 0..3u8 {
        out.push(rat(2) * d.x_marginal(i, 0) - rat(1));
    }
    for j in 0..3u8 {
        out.push(rat(2) * d.y_marginal(0, j) - rat(1));
    }
    for i in 0..3u8 {
        for j in 0..3u8 {
            out.push(rat(2) * d.xor_marginal(i, j) - rat(1));
        }
    }
    out
}

/// Stretch enumeration of the (2,3,2) nonsignaling polytope vertices via
/// double description, with the deterministic/nonlocal split.
pub struct Ns232Vertices {
    pub vertex_set: VertexSet<Rat>,
    pub deterministic: usize,
    pub nonlocal: usize,
}

pub fn enumerate_ns232_vertices() -> Result<Ns232Vertices, PolytopeError> {
    let p = ns232_h_rep();
    let vs = enumerate_vertices_dd(&p)?;
    let det = vs
        .vertices
        .iter()
        .filter(|v| v.iter().all(|c| c == &rat(1) || c == &rat(-1)))
        .count();
    let nonlocal = vs.vertices.len() - det;
    Ok(Ns232Vertices { vertex_set: vs, deterministic: det, nonlocal })
}

/// Source of seeded random nonsignaling (2,3,2) points: mixtures of
/// deterministic boxes, parity boxes and stabilizer Born distributions.
/// The extremal pools are built once.
pub struct Ns232Sampler {
    det: Vec<NS232Distribution>,
    borns: Vec<NS232Distribution>,
}

impl Ns232Sampler {
    pub fn new() -> Self {
        Ns232Sampler {
            det: NS232Distribution::all_deterministic(),
            borns: stabilizer_born_distributions().into_iter().map(|(_, d)| d).collect(),
        }
    }

    pub fn sample<R: rand::Rng>(&self, rng: &mut R, max_weight: u64) -> NS232Distribution {
        use rand::seq::SliceRandom;
        let mut parts: Vec<(u64, &NS232Distribution)> = Vec::new();
        for _ in 0..rng.gen_range(0..=3usize) {
            parts.push((rng.gen_range(0..=max_weight), self.det.choose(rng).unwrap()));
        }
        let mut boxes: Vec<NS232Distribution> = Vec::new();
        for _ in 0..rng.gen_range(0..=2usize) {
            let pi: [[u8; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..2u8)));
            boxes.push(NS232Distribution::parity_box(pi));
        }
        for _ in 0..rng.gen_range(0..=2usize) {
            parts.push((rng.gen_range(0..=max_weight), self.borns.choose(rng).unwrap()));
        }
        let uniform = NS232Distribution::uniform();
        for b in &boxes {
            parts.push((rng.gen_range(0..=max_weight), b));
        }
        if parts.iter().all(|(w, _)| *w == 0) {
            parts.push((1, &uniform));
        }
        let total: u64 = parts.iter().map(|(w, _)| w).sum();
        let mixture: Vec<(Rat, NS232Distribution)> = parts
            .into_iter()
            .filter(|(w, _)| *w > 0)
            .map(|(w, d)| (Rat::new((w as i64).into(), (total as i64).into()), d.clone()))
            .collect();
        NS232Distribution::mix(&mixture).expect("mixtures of NS boxes are NS")
    }
}

impl Default for Ns232Sampler {
    fn default() -> Self {
        Ns232Sampler::new()
    }
}

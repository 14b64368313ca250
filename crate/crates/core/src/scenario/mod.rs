//! Combinatorics of the 3x3 Mermin measurement scenario: the nine
//! measurements, six contexts, parity assignments, loops of the K33
//! incidence graph, closed noncontextual sets and incidence weights.

mod aut;
mod cnc;
mod loops;
mod weights;

pub use aut::{k33_automorphisms, K33Automorphism};
pub use cnc::{enumerate_cnc_sets, outcome_assignments, CncKind, CncSet, OutcomeAssignment};
pub use loops::{
    cycle_space, enumerate_loops, flip_loop_x0, flip_loop_x1, flip_loop_y0, flip_loop_y1, Loop,
    LoopKind,
};
pub use weights::{normalize_incidence_weight, IncidenceWeight, WeightMove};

use crate::serial::ParseError;

pub const N_MEAS: usize = 9;
pub const N_CTX: usize = 6;

/// Measurement `m_ij` of the 3x3 grid, stored as the index `3*i + j`.
pub type Meas = u8;

/// Context index: `0..3` are the horizontal contexts (grid rows),
/// `3..6` the vertical ones (grid columns).
pub type Ctx = u8;

/// Bitmask over the nine measurements.
pub type EdgeSet = u16;

pub const ALL_EDGES: EdgeSet = 0x1ff;

pub fn meas(i: u8, j: u8) -> Meas {
    debug_assert!(i < 3 && j < 3);
    3 * i + j
}

pub fn meas_coords(m: Meas) -> (u8, u8) {
    (m / 3, m % 3)
}

pub fn meas_label(m: Meas) -> String {
    let (i, j) = meas_coords(m);
    format!("m_{}{}", i, j)
}

pub fn meas_from_label(s: &str) -> Result<Meas, ParseError> {
    let t = s.trim();
    let digits = t.strip_prefix("m_").or_else(|| t.strip_prefix('m')).unwrap_or(t);
    let bytes = digits.as_bytes();
    if bytes.len() == 2 && bytes[0].is_ascii_digit() && bytes[1].is_ascii_digit() {
        let (i, j) = (bytes[0] - b'0', bytes[1] - b'0');
        if i < 3 && j < 3 {
            return Ok(meas(i, j));
        }
    }
    Err(ParseError::Malformed(format!("bad measurement label '{s}'")))
}

pub fn ctx_label(c: Ctx) -> String {
    if c < 3 {
        format!("C{}_hor", c)
    } else {
        format!("C{}_ver", c - 3)
    }
}

pub fn ctx_from_label(s: &str) -> Result<Ctx, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Malformed(format!("bad context label '{s}'"));
    let (idx, fam) = t.strip_prefix('C').ok_or_else(bad)?.split_once('_').ok_or_else(bad)?;
    let i: u8 = idx.parse().map_err(|_| bad())?;
    if i >= 3 {
        return Err(bad());
    }
    match fam {
        "hor" => Ok(i),
        "ver" => Ok(3 + i),
        _ => Err(bad()),
    }
}

/// The three measurements of a context, in ascending grid order.
///
/// The first two members play the role of the free outcome pair `(x, y)`
/// in every distribution table; the third is the parity-determined one.
pub fn ctx_members(c: Ctx) -> [Meas; 3] {
    if c < 3 {
        [3 * c, 3 * c + 1, 3 * c + 2]
    } else {
        let j = c - 3;
        [j, 3 + j, 6 + j]
    }
}

pub fn ctx_edge_set(c: Ctx) -> EdgeSet {
    ctx_members(c).iter().fold(0, |acc, &m| acc | (1 << m))
}

/// The two contexts through a measurement: its row and its column.
pub fn ctxs_of_meas(m: Meas) -> [Ctx; 2] {
    let (i, j) = meas_coords(m);
    [i, 3 + j]
}

pub fn all_meas() -> impl Iterator<Item = Meas> {
    0..N_MEAS as u8
}

pub fn all_ctx() -> impl Iterator<Item = Ctx> {
    0..N_CTX as u8
}

pub fn edge_set_to_vec(s: EdgeSet) -> Vec<Meas> {
    all_meas().filter(|&m| s & (1 << m) != 0).collect()
}

/// Per-context parity bits of a Mermin binary linear system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BetaAssignment {
    bits: [u8; N_CTX],
}

impl BetaAssignment {
    pub fn new(bits: [u8; N_CTX]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "beta bits must be 0 or 1");
        BetaAssignment { bits }
    }

    /// The all-zero assignment.
    pub fn beta0() -> Self {
        BetaAssignment { bits: [0; N_CTX] }
    }

    /// Zero on horizontal contexts, one on vertical ones.
    pub fn beta1() -> Self {
        BetaAssignment { bits: [0, 0, 0, 1, 1, 1] }
    }

    pub fn get(&self, c: Ctx) -> u8 {
        self.bits[c as usize]
    }

    pub fn bits(&self) -> &[u8; N_CTX] {
        &self.bits
    }

    /// Total parity: the invariant deciding whether the system has a
    /// classical solution (0) or not (1).
    pub fn cohomology_class(&self) -> u8 {
        self.bits.iter().sum::<u8>() % 2
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for c in all_ctx() {
            map.insert(ctx_label(c), serde_json::Value::from(self.get(c)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ParseError::Malformed("beta must be an object".into()))?;
        let mut bits = [0u8; N_CTX];
        for (k, val) in obj {
            let c = ctx_from_label(k)?;
            let b = val
                .as_u64()
                .filter(|&b| b <= 1)
                .ok_or_else(|| ParseError::Malformed(format!("beta value for {k} must be 0 or 1")))?;
            bits[c as usize] = b as u8;
        }
        Ok(BetaAssignment::new(bits))
    }
}

/// Scenario structure dump: contexts with their measurement labels.
pub fn scenario_json() -> serde_json::Value {
    let mut ctxs = serde_json::Map::new();
    for c in all_ctx() {
        ctxs.insert(
            ctx_label(c),
            serde_json::Value::Array(
                ctx_members(c).iter().map(|&m| serde_json::Value::String(meas_label(m))).collect(),
            ),
        );
    }
    serde_json::json!({
        "measurements": all_meas().map(meas_label).collect::<Vec<_>>(),
        "contexts": ctxs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_is_k33() {
        // each measurement in exactly 2 contexts; opposite-family contexts
        // meet in exactly one measurement; same-family ones are disjoint
        for m in all_meas() {
            let cs: Vec<Ctx> = all_ctx().filter(|&c| ctx_edge_set(c) & (1 << m) != 0).collect();
            assert_eq!(cs, ctxs_of_meas(m).to_vec());
        }
        for a in all_ctx() {
            for b in all_ctx() {
                if a == b {
                    continue;
                }
                let inter = (ctx_edge_set(a) & ctx_edge_set(b)).count_ones();
                let same_family = (a < 3) == (b < 3);
                assert_eq!(inter, if same_family { 0 } else { 1 });
            }
        }
    }

    #[test]
    fn cohomology_class_examples() {
        assert_eq!(BetaAssignment::beta0().cohomology_class(), 0);
        assert_eq!(BetaAssignment::beta1().cohomology_class(), 1);
        // one odd context
        assert_eq!(BetaAssignment::new([1, 0, 0, 0, 0, 0]).cohomology_class(), 1);
    }

    #[test]
    fn labels_roundtrip() {
        for m in all_meas() {
            assert_eq!(meas_from_label(&meas_label(m)).unwrap(), m);
        }
        for c in all_ctx() {
            assert_eq!(ctx_from_label(&ctx_label(c)).unwrap(), c);
        }
        let b = BetaAssignment::beta1();
        assert_eq!(BetaAssignment::from_json(&b.to_json()).unwrap(), b);
    }
}

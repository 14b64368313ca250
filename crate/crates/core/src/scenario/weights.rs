use super::{
    all_ctx, ctx_label, ctx_members, meas_label, BetaAssignment, Ctx, Meas, N_CTX,
};
use crate::serial::ParseError;

/// A Z2 weight on every (context, member measurement) incidence pair of the
/// K33 graph; 18 bits in total.
///
/// A weight generalizes a per-context parity assignment: the per-context
/// sums determine how each context table marginalizes, and the total sum of
/// all 18 bits is the class invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IncidenceWeight {
    // bits[c][k] for the k-th member (grid order) of context c
    bits: [[u8; 3]; N_CTX],
}

/// One relabeling move of the normalization procedure. Each move is a
/// combinatorial isomorphism of the associated polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMove {
    /// Flip the weight on two incidences inside one context (an outcome
    /// relabeling inside that context; rule 1 on even contexts, rule 2 on
    /// odd ones).
    PairFlip { ctx: Ctx, a: Meas, b: Meas, rule: u8 },
    /// Flip the weight at both incidences of a shared measurement: reading
    /// the common edge oppositely on both sides imposes the same constraint.
    SharedFlip { c1: Ctx, c2: Ctx, m: Meas },
}

impl IncidenceWeight {
    pub fn zero() -> Self {
        IncidenceWeight { bits: [[0; 3]; N_CTX] }
    }

    /// Weight with exactly one nonzero incidence.
    pub fn single(ctx: Ctx, m: Meas) -> Self {
        let mut w = IncidenceWeight::zero();
        w.set(ctx, m, 1);
        w
    }

    /// Canonical representative of the odd class: one flag on the first
    /// member of the first context.
    pub fn canonical_odd() -> Self {
        IncidenceWeight::single(0, ctx_members(0)[0])
    }

    /// Lift of a per-context parity assignment: a context with beta = 1
    /// carries one flag, on its parity-determined member.
    pub fn from_beta(beta: &BetaAssignment) -> Self {
        let mut w = IncidenceWeight::zero();
        for c in all_ctx() {
            if beta.get(c) == 1 {
                w.set(c, ctx_members(c)[2], 1);
            }
        }
        w
    }

    pub fn from_bits(bits: [[u8; 3]; N_CTX]) -> Self {
        assert!(bits.iter().flatten().all(|&b| b <= 1));
        IncidenceWeight { bits }
    }

    fn member_pos(ctx: Ctx, m: Meas) -> usize {
        ctx_members(ctx).iter().position(|&x| x == m).expect("measurement not in context")
    }

    pub fn get(&self, ctx: Ctx, m: Meas) -> u8 {
        self.bits[ctx as usize][Self::member_pos(ctx, m)]
    }

    pub fn set(&mut self, ctx: Ctx, m: Meas, v: u8) {
        assert!(v <= 1);
        self.bits[ctx as usize][Self::member_pos(ctx, m)] = v;
    }

    fn flip(&mut self, ctx: Ctx, m: Meas) {
        let p = Self::member_pos(ctx, m);
        self.bits[ctx as usize][p] ^= 1;
    }

    /// Sum of the weights inside one context mod 2.
    pub fn ctx_parity(&self, ctx: Ctx) -> u8 {
        self.bits[ctx as usize].iter().sum::<u8>() % 2
    }

    /// The per-context parities as an ordinary parity assignment. The
    /// marginal-coordinate polytope of a weight depends only on these.
    pub fn induced_beta(&self) -> BetaAssignment {
        let mut bits = [0u8; N_CTX];
        for c in all_ctx() {
            bits[c as usize] = self.ctx_parity(c);
        }
        BetaAssignment::new(bits)
    }

    /// Total class: sum over all 18 incidences mod 2.
    pub fn total_class(&self) -> u8 {
        self.bits.iter().flatten().sum::<u8>() % 2
    }

    pub fn apply(&self, mv: &WeightMove) -> Self {
        let mut w = *self;
        match *mv {
            WeightMove::PairFlip { ctx, a, b, .. } => {
                w.flip(ctx, a);
                w.flip(ctx, b);
            }
            WeightMove::SharedFlip { c1, c2, m } => {
                w.flip(c1, m);
                w.flip(c2, m);
            }
        }
        w
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for c in all_ctx() {
            let mut inner = serde_json::Map::new();
            for &m in ctx_members(c).iter() {
                inner.insert(meas_label(m), serde_json::Value::from(self.get(c, m)));
            }
            obj.insert(ctx_label(c), serde_json::Value::Object(inner));
        }
        serde_json::Value::Object(obj)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ParseError::Malformed("weight must be an object".into()))?;
        let mut w = IncidenceWeight::zero();
        for (k, inner) in obj {
            let c = super::ctx_from_label(k)?;
            let inner = inner
                .as_object()
                .ok_or_else(|| ParseError::Malformed(format!("weight[{k}] must be an object")))?;
            for (ml, bit) in inner {
                let m = super::meas_from_label(ml)?;
                let b = bit
                    .as_u64()
                    .filter(|&b| b <= 1)
                    .ok_or_else(|| ParseError::Malformed(format!("bit {k}/{ml} must be 0 or 1")))?;
                w.set(c, m, b as u8);
            }
        }
        Ok(w)
    }
}

/// Reduce a weight to its canonical form with the recorded sequence of
/// relabeling moves: the all-zero weight in the even class, the single
/// canonical flag in the odd class. Every move preserves the total class.
pub fn normalize_incidence_weight(w: &IncidenceWeight) -> (IncidenceWeight, Vec<WeightMove>) {
    let mut cur = *w;
    let mut trace = Vec::new();
    let push = |cur: &mut IncidenceWeight, mv: WeightMove, trace: &mut Vec<WeightMove>| {
        *cur = cur.apply(&mv);
        trace.push(mv);
    };

    // Inside every context, cancel flags in pairs until 0 or 1 remain.
    for c in all_ctx() {
        loop {
            let flagged: Vec<Meas> =
                ctx_members(c).into_iter().filter(|&m| cur.get(c, m) == 1).collect();
            if flagged.len() < 2 {
                break;
            }
            let rule = if cur.ctx_parity(c) == 0 { 1 } else { 2 };
            push(&mut cur, WeightMove::PairFlip { ctx: c, a: flagged[0], b: flagged[1], rule }, &mut trace);
        }
    }

    // Move single flags together and cancel them pairwise. A flag travels
    // from context c to an adjacent context c' by first sliding it onto the
    // shared measurement (a pair flip) and then flipping both sides of that
    // edge.
    let move_flag = |cur: &mut IncidenceWeight, from: Ctx, to: Ctx, trace: &mut Vec<WeightMove>| {
        debug_assert_ne!((from < 3), (to < 3), "flag moves cross families");
        let shared = ctx_members(from)
            .into_iter()
            .find(|m| ctx_members(to).contains(m))
            .expect("opposite-family contexts share an edge");
        let at = ctx_members(from).into_iter().find(|&m| cur.get(from, m) == 1).unwrap();
        if at != shared {
            let rule = if cur.ctx_parity(from) == 0 { 1 } else { 2 };
            let mv = WeightMove::PairFlip { ctx: from, a: at, b: shared, rule };
            *cur = cur.apply(&mv);
            trace.push(mv);
        }
        let mv = WeightMove::SharedFlip { c1: from, c2: to, m: shared };
        *cur = cur.apply(&mv);
        trace.push(mv);
    };

    loop {
        let flagged: Vec<Ctx> = all_ctx().filter(|&c| cur.ctx_parity(c) == 1).collect();
        if flagged.len() < 2 {
            break;
        }
        // Prefer an opposite-family pair; it cancels directly, and when
        // none exists the whole opposite family is free to hop through.
        let mixed = flagged
            .iter()
            .flat_map(|&a| flagged.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| (a < 3) && (b >= 3));
        let (a, b) = mixed.unwrap_or((flagged[0], flagged[1]));
        if (a < 3) != (b < 3) {
            // Adjacent families: slide a's flag onto the shared edge, then
            // cancel both flags across it.
            let shared = ctx_members(a).into_iter().find(|m| ctx_members(b).contains(m)).unwrap();
            for c in [a, b] {
                let at = ctx_members(c).into_iter().find(|&m| cur.get(c, m) == 1).unwrap();
                if at != shared {
                    let rule = if cur.ctx_parity(c) == 0 { 1 } else { 2 };
                    push(&mut cur, WeightMove::PairFlip { ctx: c, a: at, b: shared, rule }, &mut trace);
                }
            }
            push(&mut cur, WeightMove::SharedFlip { c1: a, c2: b, m: shared }, &mut trace);
        } else {
            // Same family: route a's flag through an opposite-family
            // context that carries no flag.
            let hop = all_ctx()
                .find(|&c| (c < 3) != (a < 3) && cur.ctx_parity(c) == 0)
                .expect("an unflagged opposite-family context exists");
            move_flag(&mut cur, a, hop, &mut trace);
        }
    }

    // At most one flagged context left; park the flag canonically.
    if cur.total_class() == 1 {
        let flagged = all_ctx().find(|&c| cur.ctx_parity(c) == 1).unwrap();
        if flagged != 0 {
            if flagged < 3 {
                // Same family as the canonical context: hop via a column.
                let hop: Ctx = 3;
                move_flag(&mut cur, flagged, hop, &mut trace);
                move_flag(&mut cur, hop, 0, &mut trace);
            } else {
                move_flag(&mut cur, flagged, 0, &mut trace);
            }
        }
        let target = ctx_members(0)[0];
        let at = ctx_members(0).into_iter().find(|&m| cur.get(0, m) == 1).unwrap();
        if at != target {
            push(&mut cur, WeightMove::PairFlip { ctx: 0, a: at, b: target, rule: 2 }, &mut trace);
        }
        debug_assert_eq!(cur, IncidenceWeight::canonical_odd());
    } else {
        debug_assert_eq!(cur, IncidenceWeight::zero());
    }
    (cur, trace)
}

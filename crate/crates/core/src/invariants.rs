//! Dominating / locating / locating-dominating set predicates and the exact
//! minimum-cardinality search behind γ, β, η and λ.
//!
//! Convention for disconnected graphs: a locating set must put every vertex
//! at finite distance from at least one of its members; a candidate set that
//! leaves some vertex with an all-unreachable coordinate vector is rejected.
//! This is what makes the edgeless graph the unique graph of location number
//! `n`. Unreachable entries compare equal to each other and unequal to every
//! finite value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Dist, DistanceMatrix, Graph, VertexSet, UNREACHABLE_BYTE};

/// The four invariants this crate computes exactly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Gamma,
    Beta,
    Eta,
    Lambda,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 4] = [
        InvariantKind::Gamma,
        InvariantKind::Beta,
        InvariantKind::Eta,
        InvariantKind::Lambda,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvariantKind::Gamma => "gamma",
            InvariantKind::Beta => "beta",
            InvariantKind::Eta => "eta",
            InvariantKind::Lambda => "lambda",
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gamma" => Ok(InvariantKind::Gamma),
            "beta" => Ok(InvariantKind::Beta),
            "eta" => Ok(InvariantKind::Eta),
            "lambda" => Ok(InvariantKind::Lambda),
            other => Err(format!(
                "unknown invariant kind {other:?} (expected gamma, beta, eta or lambda)"
            )),
        }
    }
}

/// Minimum cardinality plus one witness set of that cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub kind: InvariantKind,
    pub value: usize,
    pub witness: VertexSet,
}

/// True when every vertex outside `d` has a neighbor in `d`.
pub fn is_dominating(g: &Graph, d: VertexSet) -> bool {
    let mut outside = VertexSet::full(g.order()).bits() & !d.bits();
    while outside != 0 {
        let v = outside.trailing_zeros() as usize;
        outside &= outside - 1;
        if g.neighbors(v).bits() & d.bits() == 0 {
            return false;
        }
    }
    true
}

/// True when `s` is a locating set: every vertex at finite distance from
/// some member, and all coordinate vectors pairwise distinct.
pub fn is_locating(g: &Graph, s: VertexSet) -> bool {
    is_locating_with(&g.distance_matrix(), s)
}

/// [`is_locating`] against a precomputed distance matrix; the subset search
/// calls this in its inner loop.
pub fn is_locating_with(dm: &DistanceMatrix, s: VertexSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let n = dm.order();
    let mut members = [0usize; 64];
    let mut k = 0;
    for x in s.iter() {
        members[k] = x;
        k += 1;
    }
    let members = &members[..k];

    if k <= 16 {
        // Pack each coordinate vector into a u128 (one byte per entry; the
        // unreachable sentinel stays a distinct byte value).
        let mut keys = [0u128; 64];
        for (v, slot) in keys.iter_mut().enumerate().take(n) {
            let row = dm.row(v);
            let mut key = 0u128;
            let mut any_finite = false;
            for &x in members {
                let d = row[x];
                any_finite |= d != UNREACHABLE_BYTE;
                key = key << 8 | u128::from(d);
            }
            if !any_finite {
                return false;
            }
            *slot = key;
        }
        let keys = &mut keys[..n];
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    } else {
        let mut keys: Vec<Vec<u8>> = Vec::with_capacity(n);
        for v in 0..n {
            let row = dm.row(v);
            if members.iter().all(|&x| row[x] == UNREACHABLE_BYTE) {
                return false;
            }
            keys.push(members.iter().map(|&x| row[x]).collect());
        }
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }
}

/// True when `s` is simultaneously dominating and locating.
pub fn is_mld(g: &Graph, s: VertexSet) -> bool {
    is_dominating(g, s) && is_locating(g, s)
}

fn is_mld_with(g: &Graph, dm: &DistanceMatrix, s: VertexSet) -> bool {
    is_dominating(g, s) && is_locating_with(dm, s)
}

/// True when `d` is a locating-dominating set: every vertex outside `d` has
/// a nonempty neighborhood trace in `d`, and the traces are pairwise
/// distinct as sets.
pub fn is_ld(g: &Graph, d: VertexSet) -> bool {
    let n = g.order();
    let mut traces = [0u64; 64];
    let mut count = 0;
    let mut outside = VertexSet::full(n).bits() & !d.bits();
    while outside != 0 {
        let v = outside.trailing_zeros() as usize;
        outside &= outside - 1;
        let trace = g.neighbors(v).bits() & d.bits();
        if trace == 0 {
            return false;
        }
        traces[count] = trace;
        count += 1;
    }
    let traces = &mut traces[..count];
    traces.sort_unstable();
    traces.windows(2).all(|w| w[0] != w[1])
}

fn satisfies(g: &Graph, dm: &DistanceMatrix, kind: InvariantKind, s: VertexSet) -> bool {
    match kind {
        InvariantKind::Gamma => is_dominating(g, s),
        InvariantKind::Beta => is_locating_with(dm, s),
        InvariantKind::Eta => is_mld_with(g, dm, s),
        InvariantKind::Lambda => is_ld(g, s),
    }
}

/// Ascending (colexicographic) iteration over all `k`-subsets of `0..n` as
/// bit masks.
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    debug_assert!(k <= n && n <= 64);
    let limit = VertexSet::full(n).bits();
    let mut cur = if k == 0 {
        Some(0u64)
    } else {
        Some((u64::MAX >> (64 - k as u32)) & limit)
    };
    std::iter::from_fn(move || {
        let v = cur?;
        cur = if k == 0 {
            None
        } else {
            // Gosper's hack, in u128 so the top subset cannot overflow.
            let v128 = v as u128;
            let c = v128 & v128.wrapping_neg();
            let r = v128 + c;
            let next = (((r ^ v128) >> 2) / c) | r;
            if next > limit as u128 {
                None
            } else {
                Some(next as u64)
            }
        };
        Some(v)
    })
}

fn first_satisfying(
    g: &Graph,
    dm: &DistanceMatrix,
    kind: InvariantKind,
    k: usize,
) -> Option<VertexSet> {
    k_subsets(g.order(), k)
        .map(VertexSet::from_bits)
        .find(|&s| satisfies(g, dm, kind, s))
}

/// First `k`-subset (in colexicographic order) satisfying the predicate for
/// `kind`, if any.
pub fn exists_satisfying_set(g: &Graph, kind: InvariantKind, k: usize) -> Option<VertexSet> {
    first_satisfying(g, &g.distance_matrix(), kind, k)
}

/// Exact minimum-cardinality search. Sizes are tried in ascending order and
/// subsets in colexicographic order, so the witness is deterministic; the
/// minimality of the first hit relies on domination and location being
/// upward-hereditary. Cost grows as `C(n, k)`; intended for exact use at
/// small orders (n <= 16 or so).
pub fn min_invariant(g: &Graph, kind: InvariantKind) -> InvariantResult {
    let dm = g.distance_matrix();
    for k in 1..=g.order() {
        if let Some(witness) = first_satisfying(g, &dm, kind, k) {
            return InvariantResult {
                kind,
                value: k,
                witness,
            };
        }
    }
    unreachable!("the full vertex set satisfies every predicate");
}

/// Two-size check that the invariant equals `value` exactly: no set of size
/// `value - 1` works (sufficient by upward heredity) and some set of size
/// `value` does. This is how claimed values on large family members are
/// verified without a full ascending search.
pub fn has_exact_value(g: &Graph, kind: InvariantKind, value: usize) -> bool {
    if value == 0 || value > g.order() {
        return false;
    }
    let dm = g.distance_matrix();
    if first_satisfying(g, &dm, kind, value - 1).is_some() {
        return false;
    }
    first_satisfying(g, &dm, kind, value).is_some()
}

/// The four invariant values of one graph plus the sandwich-chain flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub gamma: usize,
    pub beta: usize,
    pub eta: usize,
    pub lambda: usize,
    pub chain_holds: bool,
}

/// Computes γ, β, η, λ and checks
/// `max(γ, β) <= η <= min(γ + β, λ)`. The flag is true for every graph; a
/// false flag signals an implementation bug, not a property of the input.
pub fn chain_report(g: &Graph) -> ChainReport {
    let gamma = min_invariant(g, InvariantKind::Gamma).value;
    let beta = min_invariant(g, InvariantKind::Beta).value;
    let eta = min_invariant(g, InvariantKind::Eta).value;
    let lambda = min_invariant(g, InvariantKind::Lambda).value;
    ChainReport {
        gamma,
        beta,
        eta,
        lambda,
        chain_holds: gamma.max(beta) <= eta && eta <= (gamma + beta).min(lambda),
    }
}

/// Invariant values together with the metric/connectivity context of one
/// graph; the payload of a census record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub gamma: usize,
    pub beta: usize,
    pub eta: usize,
    pub lambda: usize,
    pub diameter: Dist,
    pub complement_diameter: Dist,
    pub connected: bool,
    pub complement_connected: bool,
}

impl InvariantProfile {
    pub fn compute(g: &Graph) -> Self {
        let conn = g.connectivity();
        InvariantProfile {
            gamma: min_invariant(g, InvariantKind::Gamma).value,
            beta: min_invariant(g, InvariantKind::Beta).value,
            eta: min_invariant(g, InvariantKind::Eta).value,
            lambda: min_invariant(g, InvariantKind::Lambda).value,
            diameter: g.diameter(),
            complement_diameter: g.complement().diameter(),
            connected: conn.connected,
            complement_connected: conn.complement_connected,
        }
    }

    pub fn value(&self, kind: InvariantKind) -> usize {
        match kind {
            InvariantKind::Gamma => self.gamma,
            InvariantKind::Beta => self.beta,
            InvariantKind::Eta => self.eta,
            InvariantKind::Lambda => self.lambda,
        }
    }
}

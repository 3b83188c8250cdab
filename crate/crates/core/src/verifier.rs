//! Executable verification of the bound statements: range checks over a
//! census, extremal-class matching against the constructed families, the
//! constructive locating-set procedure for diameter-2 graphs, the LD-set
//! transfer to the complement, and invariant-valued census queries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::enumeration::{Census, CensusRecord};
use crate::error::VerifyError;
use crate::families::{self, DerivedPair};
use crate::graph::{Dist, Graph, VertexSet};
use crate::invariants::{
    chain_report, has_exact_value, is_ld, is_locating, min_invariant, InvariantKind,
};

/// The verifiable bound statements.
///
/// The sum bounds come in two tiers: over all nontrivial graphs
/// (`Beta1`, `Eta1`, `Lambda2`) and over doubly-connected graphs
/// (`Beta2`, `Eta2`, `Lambda3`). `GammaNg` is the classical domination-sum
/// bound, `Chain` the per-graph sandwich between the four invariants,
/// `BetaPlusD` the order lower bound by location number plus diameter, and
/// `LambdaDiff`/`LambdaCorollary` the unit-gap statements for λ under
/// complementation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Beta1,
    Beta2,
    Eta1,
    Eta2,
    Lambda2,
    Lambda3,
    LambdaDiff,
    LambdaCorollary,
    GammaNg,
    Chain,
    BetaPlusD,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Beta1,
        TheoremId::Beta2,
        TheoremId::Eta1,
        TheoremId::Eta2,
        TheoremId::Lambda2,
        TheoremId::Lambda3,
        TheoremId::LambdaDiff,
        TheoremId::LambdaCorollary,
        TheoremId::GammaNg,
        TheoremId::Chain,
        TheoremId::BetaPlusD,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Beta1 => "beta1",
            TheoremId::Beta2 => "beta2",
            TheoremId::Eta1 => "eta1",
            TheoremId::Eta2 => "eta2",
            TheoremId::Lambda2 => "lambda2",
            TheoremId::Lambda3 => "lambda3",
            TheoremId::LambdaDiff => "lambda-diff",
            TheoremId::LambdaCorollary => "lambda-corollary",
            TheoremId::GammaNg => "gamma-ng",
            TheoremId::Chain => "chain",
            TheoremId::BetaPlusD => "beta-plus-d",
        }
    }

    /// Smallest order the statement speaks about.
    pub fn min_order(self) -> usize {
        match self {
            TheoremId::Beta1 | TheoremId::Eta1 | TheoremId::Lambda2 => 2,
            TheoremId::Beta2 => 4,
            TheoremId::Eta2 | TheoremId::Lambda3 => 5,
            _ => 1,
        }
    }

    /// Whether the statement restricts the census to doubly-connected
    /// graphs.
    pub fn doubly_connected_only(self) -> bool {
        matches!(self, TheoremId::Beta2 | TheoremId::Eta2 | TheoremId::Lambda3)
    }

    fn applies(self, g: &Graph) -> bool {
        match self {
            TheoremId::Beta2 | TheoremId::Eta2 | TheoremId::Lambda3 => g.is_doubly_connected(),
            TheoremId::BetaPlusD => g.connectivity().connected,
            _ => true,
        }
    }

    /// The bound sides with an equality characterization to match against.
    fn characterized_sides(self) -> &'static [BoundSide] {
        match self {
            TheoremId::Beta1
            | TheoremId::Beta2
            | TheoremId::Eta1
            | TheoremId::Eta2
            | TheoremId::Lambda2
            | TheoremId::Lambda3 => &[BoundSide::Lower, BoundSide::Upper],
            TheoremId::GammaNg => &[BoundSide::Upper],
            _ => &[],
        }
    }

    pub fn requires_derived_pair(self) -> bool {
        matches!(self, TheoremId::Eta2)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

/// Which end of a two-sided bound a graph attains.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

/// A graph that breaks a bound; must never materialize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub order: usize,
    pub detail: String,
}

/// One extremal isomorphism class, keyed by canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremalClass {
    pub order: usize,
    pub side: BoundSide,
    pub graph6: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRange {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCounts {
    pub graphs_checked: u64,
    pub per_order: BTreeMap<usize, u64>,
}

/// Outcome of one theorem verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub orders: OrderRange,
    pub counts: ReportCounts,
    pub violations: Vec<Violation>,
    pub found: Vec<ExtremalClass>,
    pub expected: Vec<ExtremalClass>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    /// True when the statement held: no violations and the extremal classes
    /// found equal the constructed ones.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.matches
    }
}

struct Evaluation {
    violation: Option<String>,
    attained: Vec<BoundSide>,
}

fn pair_sum(g: &Graph, kind: InvariantKind) -> (usize, usize) {
    let value = min_invariant(g, kind).value;
    let co = min_invariant(&g.complement(), kind).value;
    (value, co)
}

fn eval_sum_bound(
    g: &Graph,
    kind: InvariantKind,
    low: usize,
    high: usize,
) -> Evaluation {
    let (value, co) = pair_sum(g, kind);
    let sum = value + co;
    let mut attained = Vec::new();
    if sum == low {
        attained.push(BoundSide::Lower);
    }
    if sum == high {
        attained.push(BoundSide::Upper);
    }
    Evaluation {
        violation: (sum < low || sum > high).then(|| {
            format!("{kind} sum {sum} outside [{low}, {high}] (values {value} and {co})")
        }),
        attained,
    }
}

fn eval_one(id: TheoremId, g: &Graph) -> Evaluation {
    let n = g.order();
    match id {
        TheoremId::Beta1 => eval_sum_bound(g, InvariantKind::Beta, 2, 2 * n - 1),
        TheoremId::Beta2 => eval_sum_bound(g, InvariantKind::Beta, 2, 2 * n - 6),
        TheoremId::Eta1 => eval_sum_bound(g, InvariantKind::Eta, 3, 2 * n - 1),
        TheoremId::Eta2 => eval_sum_bound(g, InvariantKind::Eta, 4, 2 * n - 5),
        TheoremId::Lambda2 => eval_sum_bound(g, InvariantKind::Lambda, 3, 2 * n - 1),
        TheoremId::Lambda3 => eval_sum_bound(g, InvariantKind::Lambda, 4, 2 * n - 5),
        TheoremId::GammaNg => {
            let (value, co) = pair_sum(g, InvariantKind::Gamma);
            let sum = value + co;
            Evaluation {
                violation: (sum > n + 1)
                    .then(|| format!("gamma sum {sum} exceeds {}", n + 1)),
                attained: if sum == n + 1 {
                    vec![BoundSide::Upper]
                } else {
                    vec![]
                },
            }
        }
        TheoremId::LambdaDiff => {
            let (value, co) = pair_sum(g, InvariantKind::Lambda);
            Evaluation {
                violation: (value.abs_diff(co) > 1)
                    .then(|| format!("lambda values {value} and {co} differ by more than 1")),
                attained: vec![],
            }
        }
        TheoremId::LambdaCorollary => {
            let (value, co) = pair_sum(g, InvariantKind::Lambda);
            let sum = value + co;
            let ok = 2 * value - 1 <= sum && sum <= 2 * value + 1;
            Evaluation {
                violation: (!ok).then(|| {
                    format!("lambda sum {sum} outside [{}, {}]", 2 * value - 1, 2 * value + 1)
                }),
                attained: vec![],
            }
        }
        TheoremId::Chain => {
            let r = chain_report(g);
            Evaluation {
                violation: (!r.chain_holds).then(|| {
                    format!(
                        "chain fails: gamma={} beta={} eta={} lambda={}",
                        r.gamma, r.beta, r.eta, r.lambda
                    )
                }),
                attained: vec![],
            }
        }
        TheoremId::BetaPlusD => {
            let beta = min_invariant(g, InvariantKind::Beta).value;
            let diam = match g.diameter() {
                Dist::Finite(d) => d as usize,
                Dist::Unreachable => unreachable!("filtered to connected graphs"),
            };
            Evaluation {
                violation: (beta + diam > n)
                    .then(|| format!("order {n} below beta {beta} + diameter {diam}")),
                attained: vec![],
            }
        }
    }
}

/// The double stars, attached stars and their complements of order `n`:
/// the family attaining the doubly-connected upper bound for both η and λ.
fn eta_lambda_upper_family(n: usize) -> Result<Vec<Graph>, VerifyError> {
    let mut members = Vec::new();
    for r in 1..n.saturating_sub(2) {
        members.push(families::double_star(r, n - 2 - r)?);
    }
    if n >= 5 {
        let r = n - 2;
        for s in 2..r {
            members.push(families::star_attach(r, s)?);
        }
    }
    let complements: Vec<Graph> = members.iter().map(Graph::complement).collect();
    members.extend(complements);
    Ok(members)
}

/// The doubly-connected graphs with η equal to 2 in both the graph and its
/// complement, per order: the 5-path, 5-cycle, bull and house at order 5
/// plus the derived pair at theirs.
fn eta_lower_family(n: usize, derived: &DerivedPair) -> Result<Vec<Graph>, VerifyError> {
    let mut members = Vec::new();
    if n == 5 {
        members.extend([
            families::path(5)?,
            families::cycle(5)?,
            families::bull(),
            families::house(),
        ]);
    }
    if derived.e().order() == n {
        members.push(derived.e().clone());
    }
    if derived.f().order() == n {
        members.push(derived.f().clone());
    }
    Ok(members)
}

fn expected_for(
    id: TheoremId,
    side: BoundSide,
    n: usize,
    derived: Option<&DerivedPair>,
) -> Result<Vec<Graph>, VerifyError> {
    let complete_pair = || -> Result<Vec<Graph>, VerifyError> {
        Ok(vec![families::complete(n)?, families::edgeless(n)?])
    };
    Ok(match (id, side) {
        (TheoremId::Beta1, BoundSide::Lower) | (TheoremId::Beta2, BoundSide::Lower) => {
            if n == 4 {
                vec![families::path(4)?]
            } else {
                vec![]
            }
        }
        (TheoremId::Beta1, BoundSide::Upper)
        | (TheoremId::Eta1, BoundSide::Upper)
        | (TheoremId::Lambda2, BoundSide::Upper)
        | (TheoremId::GammaNg, BoundSide::Upper) => complete_pair()?,
        (TheoremId::Eta1, BoundSide::Lower) | (TheoremId::Lambda2, BoundSide::Lower) => {
            if n == 2 {
                complete_pair()?
            } else {
                vec![]
            }
        }
        (TheoremId::Beta2, BoundSide::Upper) => families::omega(n)?,
        (TheoremId::Eta2, BoundSide::Lower) => {
            let pair = derived.ok_or_else(|| {
                VerifyError::Precondition(
                    "the eta2 characterization needs the derived pair; run the derivation first"
                        .into(),
                )
            })?;
            eta_lower_family(n, pair)?
        }
        (TheoremId::Lambda3, BoundSide::Lower) => {
            if n == 5 {
                vec![
                    families::path(5)?,
                    families::cycle(5)?,
                    families::bull(),
                    families::house(),
                ]
            } else {
                vec![]
            }
        }
        (TheoremId::Eta2, BoundSide::Upper) | (TheoremId::Lambda3, BoundSide::Upper) => {
            eta_lambda_upper_family(n)?
        }
        _ => vec![],
    })
}

fn sorted_classes(mut classes: Vec<ExtremalClass>) -> Vec<ExtremalClass> {
    classes.sort();
    classes.dedup();
    classes
}

/// Checks one bound statement over the census classes of orders
/// `min_n..=max_n` (clamped from below to the statement's own minimum
/// order). The report carries zero violations and matching extremal classes
/// exactly when the statement held.
pub fn verify(
    id: TheoremId,
    min_n: usize,
    max_n: usize,
    census: &Census,
    derived: Option<&DerivedPair>,
) -> Result<TheoremReport, VerifyError> {
    let start = Instant::now();
    let lo = min_n.max(id.min_order());
    let mut violations = Vec::new();
    let mut found = Vec::new();
    let mut expected = Vec::new();
    let mut per_order = BTreeMap::new();
    let mut graphs_checked = 0u64;

    for n in lo..=max_n {
        let classes: Vec<&Graph> = census
            .classes(n)?
            .iter()
            .filter(|g| id.applies(g))
            .collect();
        let evals: Vec<Evaluation> = classes.par_iter().map(|g| eval_one(id, g)).collect();

        graphs_checked += classes.len() as u64;
        per_order.insert(n, classes.len() as u64);
        for (g, eval) in classes.iter().zip(&evals) {
            if let Some(detail) = &eval.violation {
                violations.push(Violation {
                    graph6: crate::graph6::encode(g),
                    order: n,
                    detail: detail.clone(),
                });
            }
            if !eval.attained.is_empty() {
                let form = canonical_form(g).into_string();
                for &side in &eval.attained {
                    found.push(ExtremalClass {
                        order: n,
                        side,
                        graph6: form.clone(),
                    });
                }
            }
        }
        for &side in id.characterized_sides() {
            for g in expected_for(id, side, n, derived)? {
                expected.push(ExtremalClass {
                    order: n,
                    side,
                    graph6: canonical_form(&g).into_string(),
                });
            }
        }
    }

    let found = sorted_classes(found);
    let expected = sorted_classes(expected);
    let matches = found == expected;
    Ok(TheoremReport {
        id,
        orders: OrderRange { min: lo, max: max_n },
        counts: ReportCounts {
            graphs_checked,
            per_order,
        },
        violations,
        found,
        expected,
        matches,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Which graph a constructed locating set applies to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocatingTarget {
    Graph,
    Complement,
}

/// The constructive path: walks the induced 4-path, the common neighbor of
/// its ends, and the case split on that neighbor's edges into the path
/// middle. Returns the working graph and the four excluded vertices.
fn construct_cases(g: &Graph, comp: &Graph) -> Option<(LocatingTarget, VertexSet)> {
    let n = g.order();
    let full = VertexSet::full(n);
    let [a, b, c, d] = g.find_induced_p4()?;
    let path_set: VertexSet = [a, b, c, d].into_iter().collect();
    // Both ends are at distance 2 (diameter 2, nonadjacent), so a common
    // neighbor exists; it cannot lie on the path.
    let e = (0..n).find(|&v| !path_set.contains(v) && g.has_edge(a, v) && g.has_edge(d, v))?;

    match (g.has_edge(e, b), g.has_edge(e, c)) {
        (false, false) => {
            // {a,b,c,d,e} induces a 5-cycle in the graph and another in the
            // complement (ring a-c-e-b-d there).
            let ring_set = path_set.with(e);
            let f = (0..n).find(|&v| !ring_set.contains(v))?;
            let in_ring = g.neighbors(f).intersection(ring_set).len();
            let (target, work, ring) = if in_ring <= 2 {
                (LocatingTarget::Graph, g, [a, b, c, d, e])
            } else {
                (LocatingTarget::Complement, comp, [a, c, e, b, d])
            };
            // f misses at least three ring vertices, so two of them are
            // nonconsecutive; those two locate the excluded four.
            for p in 0..5 {
                let x = ring[p];
                let z = ring[(p + 2) % 5];
                if !work.has_edge(x, f) && !work.has_edge(z, f) {
                    let excluded: VertexSet = [ring[(p + 1) % 5], ring[(p + 3) % 5], ring[(p + 4) % 5], f]
                        .into_iter()
                        .collect();
                    return Some((target, VertexSet::from_bits(full.bits() & !excluded.bits())));
                }
            }
            None
        }
        (eb, ec) if eb != ec => {
            // Exactly one edge into the middle; orient the path so it is at
            // the second vertex.
            let (a2, _b2, c2, d2, hub) = if eb { (a, b, c, d, b) } else { (d, c, b, a, c) };
            // The hub and e are adjacent, so at distance 2 in the
            // complement: some f is adjacent to neither in the graph.
            let f = (0..n).find(|&v| v != e && !g.has_edge(v, e) && !g.has_edge(v, hub))?;
            let excluded: VertexSet = [a2, c2, d2, f].into_iter().collect();
            Some((
                LocatingTarget::Graph,
                VertexSet::from_bits(full.bits() & !excluded.bits()),
            ))
        }
        _ => {
            // Both edges present: b and c are adjacent, so some f sees
            // neither in the graph; {b, c} locates the excluded four.
            let f = (0..n).find(|&v| !g.has_edge(v, b) && !g.has_edge(v, c) && v != b && v != c)?;
            let excluded: VertexSet = [a, d, e, f].into_iter().collect();
            Some((
                LocatingTarget::Graph,
                VertexSet::from_bits(full.bits() & !excluded.bits()),
            ))
        }
    }
}

/// Constructs a locating set of size `n - 4` for a doubly-connected graph of
/// order at least 6 whose diameter and complement diameter are both 2. The
/// set locates the reported target (the graph itself or its complement,
/// when the case analysis interchanges the two). Falls back to exhaustive
/// search over `(n-4)`-subsets of the graph if the constructive path ever
/// failed to validate.
pub fn construct_locating_set_diam2(
    g: &Graph,
) -> Result<(LocatingTarget, VertexSet), VerifyError> {
    let n = g.order();
    if !g.is_doubly_connected() {
        return Err(VerifyError::Precondition(
            "graph and complement must both be connected".into(),
        ));
    }
    if n < 6 {
        return Err(VerifyError::Precondition(format!(
            "order must be at least 6, got {n}"
        )));
    }
    let comp = g.complement();
    if g.diameter() != Dist::Finite(2) || comp.diameter() != Dist::Finite(2) {
        return Err(VerifyError::Precondition(
            "graph and complement must both have diameter 2".into(),
        ));
    }

    if let Some((target, set)) = construct_cases(g, &comp) {
        let work = match target {
            LocatingTarget::Graph => g,
            LocatingTarget::Complement => &comp,
        };
        if set.len() == n - 4 && is_locating(work, set) {
            return Ok((target, set));
        }
    }
    match crate::invariants::exists_satisfying_set(g, InvariantKind::Beta, n - 4) {
        Some(set) => Ok((LocatingTarget::Graph, set)),
        None => Err(VerifyError::Precondition(
            "no locating set of the promised size exists; construction assumptions broken".into(),
        )),
    }
}

/// Transfers a locating-dominating set to the complement: the set itself
/// works unless exactly one outside vertex sees all of it, in which case
/// that vertex joins the set.
pub fn transfer_ld_set(g: &Graph, s: VertexSet) -> Result<VertexSet, VerifyError> {
    if !is_ld(g, s) {
        return Err(VerifyError::NotLdSet);
    }
    let mut outside = VertexSet::full(g.order()).bits() & !s.bits();
    while outside != 0 {
        let v = outside.trailing_zeros() as usize;
        outside &= outside - 1;
        if s.bits() & !g.neighbors(v).bits() == 0 {
            // Unique: two such vertices would share the full trace.
            return Ok(s.with(v));
        }
    }
    Ok(s)
}

/// All nontrivial census classes (orders `2..=max_n`) whose invariant
/// equals `value` exactly, with full profiles. The per-graph test only
/// touches subsets of sizes `value - 1` and `value`, which keeps small
/// values cheap at order 8.
pub fn census_by_invariant(
    census: &Census,
    kind: InvariantKind,
    value: usize,
    max_n: usize,
    connected_only: bool,
) -> Result<Vec<CensusRecord>, VerifyError> {
    if value < 1 {
        return Err(VerifyError::Precondition(
            "invariant values start at 1".into(),
        ));
    }
    let mut records = Vec::new();
    let orders: Vec<usize> = census.orders().filter(|&n| n >= 2 && n <= max_n).collect();
    for n in orders {
        let classes = census.classes(n)?;
        let hits: Vec<&Graph> = classes
            .par_iter()
            .filter(|g| {
                (!connected_only || g.connectivity().connected)
                    && has_exact_value(g, kind, value)
            })
            .collect();
        records.extend(hits.into_par_iter().map(CensusRecord::new).collect::<Vec<_>>());
    }
    Ok(records)
}

/// Derives the two remaining doubly-connected classes with η equal to 2 on
/// both sides: sweeps orders 5 up to the census ceiling (which must reach
/// 8, the largest order any η = 2 graph can have), removes the four known
/// classes, and demands that exactly two complementary classes remain.
/// Any other outcome is a hard error, never a guess.
pub fn derive_ef(census: &Census) -> Result<DerivedPair, VerifyError> {
    if census.max_order() < 8 {
        return Err(VerifyError::Precondition(format!(
            "derivation needs census orders up to 8, have {}",
            census.max_order()
        )));
    }
    let mut survivors: Vec<(CanonicalForm, Graph)> = Vec::new();
    for n in 5..=census.max_order() {
        let classes = census.classes(n)?;
        let hits: Vec<&Graph> = classes
            .par_iter()
            .filter(|g| {
                g.is_doubly_connected()
                    && has_exact_value(g, InvariantKind::Eta, 2)
                    && has_exact_value(&g.complement(), InvariantKind::Eta, 2)
            })
            .collect();
        survivors.extend(hits.into_iter().map(|g| (canonical_form(g), g.clone())));
    }

    let known = [
        families::path(5)?,
        families::cycle(5)?,
        families::bull(),
        families::house(),
    ];
    for g in &known {
        let form = canonical_form(g);
        let before = survivors.len();
        survivors.retain(|(f, _)| *f != form);
        if survivors.len() != before - 1 {
            return Err(VerifyError::DeriveMissingKnown(form.into_string()));
        }
    }
    if survivors.len() != 2 {
        return Err(VerifyError::DeriveAmbiguous {
            count: survivors.len(),
            forms: survivors
                .iter()
                .map(|(f, _)| f.as_str().to_owned())
                .collect(),
        });
    }
    survivors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut it = survivors.into_iter();
    let (_, e) = it.next().expect("two survivors");
    let (_, f) = it.next().expect("two survivors");
    Ok(DerivedPair::new(e, f)?)
}

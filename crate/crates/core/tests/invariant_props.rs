//! Definition-level properties of the four set predicates and the minimum
//! search, checked exhaustively over the small census.

use std::sync::LazyLock;

use locdom_core::enumeration::Census;
use locdom_core::graph::{Graph, VertexSet};
use locdom_core::invariants::{
    chain_report, is_dominating, is_ld, is_locating, is_mld, min_invariant, InvariantKind,
};

static CENSUS: LazyLock<Census> = LazyLock::new(|| Census::generate(6).unwrap());

fn classes(n: usize) -> &'static [Graph] {
    CENSUS.classes(n).unwrap()
}

fn holds(g: &Graph, kind: InvariantKind, s: VertexSet) -> bool {
    match kind {
        InvariantKind::Gamma => is_dominating(g, s),
        InvariantKind::Beta => is_locating(g, s),
        InvariantKind::Eta => is_mld(g, s),
        InvariantKind::Lambda => is_ld(g, s),
    }
}

#[test]
fn all_four_predicates_are_upward_hereditary() {
    for n in 1..=6 {
        for g in classes(n) {
            for kind in InvariantKind::ALL {
                for mask in 0u64..1 << n {
                    let s = VertexSet::from_bits(mask);
                    if !holds(g, kind, s) {
                        continue;
                    }
                    for v in 0..n {
                        if !s.contains(v) {
                            assert!(
                                holds(g, kind, s.with(v)),
                                "{kind} not hereditary: n={n} s={s} v={v}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn union_of_locating_and_dominating_is_mld() {
    for n in 1..=5 {
        for g in classes(n) {
            let masks = 1u64 << n;
            let locating: Vec<bool> = (0..masks)
                .map(|m| is_locating(g, VertexSet::from_bits(m)))
                .collect();
            let dominating: Vec<bool> = (0..masks)
                .map(|m| is_dominating(g, VertexSet::from_bits(m)))
                .collect();
            for s1 in 0..masks {
                if !locating[s1 as usize] {
                    continue;
                }
                for s2 in 0..masks {
                    if !dominating[s2 as usize] {
                        continue;
                    }
                    assert!(
                        is_mld(g, VertexSet::from_bits(s1 | s2)),
                        "n={n} s1={s1:b} s2={s2:b}"
                    );
                }
            }
        }
    }
}

#[test]
fn ld_sets_are_locating_and_dominating() {
    for n in 1..=6 {
        for g in classes(n) {
            for mask in 0u64..1 << n {
                let s = VertexSet::from_bits(mask);
                if is_ld(g, s) {
                    assert!(is_dominating(g, s), "n={n} s={s}");
                    assert!(is_locating(g, s), "n={n} s={s}");
                }
            }
        }
    }
}

#[test]
fn invariants_are_pointwise_ordered() {
    for n in 1..=6 {
        for g in classes(n) {
            let r = chain_report(g);
            assert!(r.lambda >= r.eta, "n={n}");
            assert!(r.eta >= r.gamma, "n={n}");
            assert!(r.eta >= r.beta, "n={n}");
            assert!(r.chain_holds, "n={n}");
        }
    }
}

/// Definition-level minimum by scanning all subsets grouped by cardinality.
fn naive_min(g: &Graph, kind: InvariantKind) -> usize {
    let n = g.order();
    for k in 1..=n {
        for mask in 0u64..1 << n {
            let s = VertexSet::from_bits(mask);
            if s.len() == k && holds(g, kind, s) {
                return k;
            }
        }
    }
    unreachable!()
}

#[test]
fn search_agrees_with_naive_minimum() {
    for n in 1..=5 {
        for g in classes(n) {
            for kind in InvariantKind::ALL {
                let result = min_invariant(g, kind);
                assert_eq!(result.value, naive_min(g, kind), "{kind} n={n}");
                assert!(holds(g, kind, result.witness), "{kind} witness n={n}");
                assert_eq!(result.witness.len(), result.value, "{kind} n={n}");
            }
        }
    }
}

#[test]
fn gamma_sum_bound_with_equality_only_at_extremes() {
    for n in 2..=6 {
        for g in classes(n) {
            let sum = min_invariant(g, InvariantKind::Gamma).value
                + min_invariant(&g.complement(), InvariantKind::Gamma).value;
            assert!(sum <= n + 1, "n={n}");
            if sum == n + 1 {
                let edges = g.edge_count();
                assert!(
                    edges == 0 || edges == n * (n - 1) / 2,
                    "unexpected equality graph at n={n}"
                );
            }
        }
    }
}

//! Canonical forms by minimized adjacency encoding.
//!
//! The canonical form of a graph is the lexicographically least graph6 line
//! over all vertex relabelings, so two graphs get identical byte strings
//! exactly when they are isomorphic. The minimum is found by partition-
//! backtracking: vertices are ranked by iterated degree refinement to steer
//! the branch order, prefixes that already exceed the best encoding are cut,
//! and interchangeable twin vertices are collapsed when only the form is
//! needed. The same search yields the automorphism group (every relabeling
//! that ties the minimum is one) and the orbit of the canonically-last
//! vertex, which the isomorph-free generator keys on.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Canonical byte string of a graph: the graph6 line of its canonical
/// relabeling. Equal strings iff isomorphic graphs; ordering is plain byte
/// order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The canonical representative graph this form encodes.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

/// A canonical relabeling: the form, the representative graph, and the
/// ordering that produced it (`ordering[p]` is the original vertex placed at
/// canonical position `p`).
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    pub graph: Graph,
    pub ordering: Vec<usize>,
}

/// Iterated neighbor-color refinement. Colors are isomorphism-invariant
/// ranks (initially all equal, first round splits by degree), so they are
/// safe to use for branch ordering.
fn refine_colors(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let mut colors = vec![0u32; n];
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut around: Vec<u32> = g.neighbors(v).iter().map(|u| colors[u]).collect();
            around.sort_unstable();
            sigs.push((colors[v], around));
        }
        let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap() as u32)
            .collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

struct Searcher<'g> {
    g: &'g Graph,
    n: usize,
    /// All vertices sorted by (refinement color, index); branch order.
    preference: Vec<usize>,
    order: Vec<usize>,
    used: u64,
    /// Column words of the current partial encoding; `enc[p]` holds the `p`
    /// adjacency bits between position `p` and positions `0..p`.
    enc: Vec<u64>,
    best: Option<Vec<u64>>,
    best_ordering: Vec<usize>,
    /// Bumped whenever `best` is replaced, so callers up the stack can tell
    /// that their prefix now ties the new best.
    best_version: u64,
    /// Original vertices seen at the last canonical position over all
    /// minimal orderings found so far.
    last_orbit: u64,
    /// All minimal orderings (only kept when collecting automorphisms).
    min_orderings: Option<Vec<Vec<usize>>>,
    /// Collapse interchangeable twins at each branch point. Sound for the
    /// minimum itself, but it hides ties, so it must be off whenever orbits
    /// or automorphisms are collected.
    twin_skip: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Prefix {
    /// Current prefix strictly below the best encoding (or no best yet).
    Below,
    /// Current prefix ties the best encoding.
    Tied,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g Graph, twin_skip: bool, collect_auts: bool) -> Self {
        let n = g.order();
        let colors = refine_colors(g);
        let mut preference: Vec<usize> = (0..n).collect();
        preference.sort_by_key(|&v| (colors[v], v));
        Searcher {
            g,
            n,
            preference,
            order: Vec::with_capacity(n),
            used: 0,
            enc: Vec::with_capacity(n),
            best: None,
            best_ordering: Vec::new(),
            best_version: 0,
            last_orbit: 0,
            min_orderings: collect_auts.then(Vec::new),
            twin_skip,
        }
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        let clear = !((1u64 << u) | (1u64 << v));
        self.g.neighbors(u).bits() & clear == self.g.neighbors(v).bits() & clear
    }

    fn dfs(&mut self, pos: usize, prefix: Prefix) {
        if pos == self.n {
            let last = *self.order.last().unwrap_or(&0);
            match prefix {
                Prefix::Below => {
                    self.best = Some(self.enc.clone());
                    self.best_ordering = self.order.clone();
                    self.best_version += 1;
                    self.last_orbit = if self.n == 0 { 0 } else { 1u64 << last };
                    if let Some(ords) = &mut self.min_orderings {
                        ords.clear();
                        ords.push(self.order.clone());
                    }
                }
                Prefix::Tied => {
                    self.last_orbit |= 1u64 << last;
                    if let Some(ords) = &mut self.min_orderings {
                        ords.push(self.order.clone());
                    }
                }
            }
            return;
        }
        // A descendant that replaces `best` necessarily extends the current
        // prefix, so the relation of this node's prefix to the new best is
        // "tied" from then on.
        let mut cur_prefix = prefix;
        let mut tried: Vec<usize> = Vec::new();
        for i in 0..self.n {
            let v = self.preference[i];
            if self.used >> v & 1 == 1 {
                continue;
            }
            if self.twin_skip && tried.iter().any(|&u| self.are_twins(u, v)) {
                continue;
            }
            tried.push(v);

            let mut word = 0u64;
            for &placed in &self.order {
                word = word << 1 | u64::from(self.g.has_edge(v, placed));
            }
            let next = match (cur_prefix, &self.best) {
                (Prefix::Below, _) | (_, None) => Prefix::Below,
                (Prefix::Tied, Some(best)) => match word.cmp(&best[pos]) {
                    Ordering::Greater => continue,
                    Ordering::Less => Prefix::Below,
                    Ordering::Equal => Prefix::Tied,
                },
            };
            let version = self.best_version;
            self.order.push(v);
            self.used |= 1u64 << v;
            self.enc.push(word);
            self.dfs(pos + 1, next);
            self.enc.pop();
            self.used &= !(1u64 << v);
            self.order.pop();
            if self.best_version != version {
                cur_prefix = Prefix::Tied;
            }
        }
    }

    fn run(mut self) -> Self {
        self.dfs(0, Prefix::Below);
        self
    }
}

fn labeling_from(g: &Graph, ordering: Vec<usize>) -> CanonicalLabeling {
    let graph = g.relabeled(&ordering);
    let form = CanonicalForm(graph6::encode(&graph));
    CanonicalLabeling {
        form,
        graph,
        ordering,
    }
}

/// Canonical byte string of `g`.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// Canonical form together with the ordering that realizes it.
pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let s = Searcher::new(g, true, false).run();
    labeling_from(g, s.best_ordering)
}

/// The orbit (under the automorphism group) of the vertex at the last
/// canonical position: exactly the vertices placed last by some minimal
/// relabeling.
pub fn last_position_orbit(g: &Graph) -> VertexSet {
    let s = Searcher::new(g, false, false).run();
    VertexSet::from_bits(s.last_orbit)
}

/// The full automorphism group as vertex maps (`perm[v]` is the image of
/// `v`). Every minimal ordering composed against the first one yields one
/// automorphism, and all of them arise this way.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let s = Searcher::new(g, false, true).run();
    let ords = s.min_orderings.expect("collection enabled");
    let base = &ords[0];
    ords.iter()
        .map(|ord| {
            let mut perm = vec![0usize; g.order()];
            for p in 0..g.order() {
                perm[base[p]] = ord[p];
            }
            perm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn bull() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn p4_equals_its_complement() {
        let p4 = p(4);
        assert_eq!(canonical_form(&p4), canonical_form(&p4.complement()));
    }

    #[test]
    fn c5_equals_its_complement() {
        // The complement of the 5-cycle 0-1-2-3-4 is the 5-cycle 0-2-4-1-3;
        // the relabeling 0,2,4,1,3 realizes the isomorphism explicitly.
        let g = c5();
        let relabeled = g.relabeled(&[0, 2, 4, 1, 3]);
        assert_eq!(relabeled, g.complement());
        assert_eq!(canonical_form(&g), canonical_form(&g.complement()));
    }

    #[test]
    fn bull_relabelings_agree() {
        let a = bull();
        // Same graph built with scrambled labels: triangle {4,2,0}, pendants
        // 1 on 4 and 3 on 2.
        let b = Graph::from_edges(5, &[(4, 2), (2, 0), (0, 4), (4, 1), (2, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonical_form(&a), canonical_form(&a.complement()));
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let path = p(4);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&path), canonical_form(&star));
    }

    #[test]
    fn labeling_is_consistent() {
        let g = bull();
        let lab = canonical_labeling(&g);
        assert_eq!(lab.graph, g.relabeled(&lab.ordering));
        assert_eq!(lab.form.as_str(), crate::graph6::encode(&lab.graph));
        assert_eq!(lab.form.to_graph(), lab.graph);
    }

    #[test]
    fn automorphism_group_sizes() {
        // |Aut| = 2 for P4, 10 for C5, 24 for K4, 8 for K2+K2.
        assert_eq!(automorphisms(&p(4)).len(), 2);
        assert_eq!(automorphisms(&c5()).len(), 10);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(automorphisms(&k4).len(), 24);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(automorphisms(&two_k2).len(), 8);
    }

    #[test]
    fn automorphisms_preserve_edges() {
        for g in [p(5), c5(), bull()] {
            for perm in automorphisms(&g) {
                for u in 0..g.order() {
                    for v in 0..g.order() {
                        assert_eq!(g.has_edge(u, v), g.has_edge(perm[u], perm[v]));
                    }
                }
            }
        }
    }

    #[test]
    fn last_orbit_of_star() {
        // In K_{1,3} the leaves form one orbit and the canonically-last
        // vertex is the center (it closes the densest column).
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let orbit = last_position_orbit(&star);
        assert_eq!(orbit.to_vec(), vec![0]);
        let path = p(4);
        let orbit = last_position_orbit(&path);
        assert!(orbit.len() == 2 || orbit.len() == 1);
    }
}

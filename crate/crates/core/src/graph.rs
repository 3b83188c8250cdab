//! Bitmask graph representation and the distance-level queries everything
//! else builds on.
//!
//! Graphs are simple and undirected with at most 64 vertices, so one
//! adjacency row fits a machine word. All operations are pure; a `Graph` is
//! immutable after construction and safe to share across threads.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Hard limit so an adjacency row is a single `u64`.
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices `0..n` of some host graph, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The full vertex set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over the member indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for v in iter {
            debug_assert!(v < MAX_VERTICES);
            bits |= 1u64 << v;
        }
        VertexSet(bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        for &v in &indices {
            if v >= MAX_VERTICES {
                return Err(serde::de::Error::custom(format!(
                    "vertex index {v} out of range"
                )));
            }
        }
        Ok(indices.into_iter().collect())
    }
}

/// A hop count or the distinguished unreachable value.
///
/// Kept as a sentinel enum, never a large integer, so arithmetic on infinite
/// distances cannot happen silently. Serialized as `-1` in JSON reports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Dist {
    Finite(u32),
    Unreachable,
}

impl Dist {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Unreachable => None,
        }
    }

    pub fn is_unreachable(self) -> bool {
        self == Dist::Unreachable
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Unreachable => write!(f, "-"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(d) => serializer.serialize_i64(i64::from(*d)),
            Dist::Unreachable => serializer.serialize_i64(-1),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = i64::deserialize(deserializer)?;
        match value {
            -1 => Ok(Dist::Unreachable),
            d if (0..=i64::from(u32::MAX)).contains(&d) => Ok(Dist::Finite(d as u32)),
            other => Err(serde::de::Error::custom(format!(
                "invalid distance value {other}"
            ))),
        }
    }
}

/// Byte used for unreachable entries in the packed distance grid.
pub(crate) const UNREACHABLE_BYTE: u8 = u8::MAX;

/// All-pairs shortest-path distances of a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    grid: Vec<u8>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Dist {
        match self.grid[i * self.n + j] {
            UNREACHABLE_BYTE => Dist::Unreachable,
            d => Dist::Finite(u32::from(d)),
        }
    }

    /// Packed row with [`UNREACHABLE_BYTE`] sentinels; hot paths index this
    /// directly instead of matching on [`Dist`].
    pub(crate) fn row(&self, i: usize) -> &[u8] {
        &self.grid[i * self.n..(i + 1) * self.n]
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, " {}", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Ordered tuple of distances from one vertex to a reference set, entries in
/// ascending order of the reference vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricVector(pub Vec<Dist>);

impl fmt::Display for MetricVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Connectivity of a graph and of its complement.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Connectivity {
    pub connected: bool,
    pub complement_connected: bool,
}

impl Connectivity {
    pub fn doubly_connected(self) -> bool {
        self.connected && self.complement_connected
    }
}

/// A simple undirected graph on `1..=64` vertices, one adjacency row per
/// vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse; the
    /// adjacency is symmetrized.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::InvalidOrder(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u] |= 1u64 << v;
            adj[v] |= 1u64 << u;
        }
        Ok(Graph { n, adj })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut bits = self.adj[u] & !((1u64 << u) | (1u64 << u).wrapping_sub(1));
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// The complement graph: edge `ij` (i != j) present exactly when absent
    /// here. An involution, bit for bit.
    pub fn complement(&self) -> Graph {
        let mask = VertexSet::full(self.n).bits();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & mask & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// BFS layers from `src` over arbitrary adjacency rows; returns the
    /// packed distance row.
    fn bfs_row(n: usize, rows: impl Fn(usize) -> u64, src: usize) -> Vec<u8> {
        let mut dist = vec![UNREACHABLE_BYTE; n];
        let mut frontier = 1u64 << src;
        let mut seen = frontier;
        let mut level = 0u8;
        while frontier != 0 {
            let mut bits = frontier;
            let mut next = 0u64;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                dist[v] = level;
                next |= rows(v);
            }
            frontier = next & !seen;
            seen |= frontier;
            level += 1;
        }
        dist
    }

    /// All-pairs shortest paths by BFS from every vertex.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let mut grid = Vec::with_capacity(self.n * self.n);
        for src in 0..self.n {
            grid.extend(Self::bfs_row(self.n, |v| self.adj[v], src));
        }
        DistanceMatrix { n: self.n, grid }
    }

    /// Maximum distance between any two vertices; `Unreachable` when the
    /// graph is disconnected, 0 for the one-vertex graph.
    pub fn diameter(&self) -> Dist {
        let mut max = 0u8;
        for src in 0..self.n {
            let row = Self::bfs_row(self.n, |v| self.adj[v], src);
            for &d in &row {
                if d == UNREACHABLE_BYTE {
                    return Dist::Unreachable;
                }
                max = max.max(d);
            }
        }
        Dist::Finite(u32::from(max))
    }

    fn reaches_all(n: usize, rows: impl Fn(usize) -> u64) -> bool {
        let full = VertexSet::full(n).bits();
        let mut seen = 1u64;
        loop {
            let mut next = seen;
            let mut bits = seen;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= rows(v);
            }
            if next == seen {
                return seen == full;
            }
            seen = next;
        }
    }

    /// Connectivity flags for the graph and its complement.
    pub fn connectivity(&self) -> Connectivity {
        let mask = VertexSet::full(self.n).bits();
        Connectivity {
            connected: Self::reaches_all(self.n, |v| self.adj[v]),
            complement_connected: Self::reaches_all(self.n, |v| {
                !self.adj[v] & mask & !(1u64 << v)
            }),
        }
    }

    pub fn is_doubly_connected(&self) -> bool {
        self.connectivity().doubly_connected()
    }

    /// Distances from `v` to the members of `s` in ascending vertex order.
    pub fn metric_vector(&self, s: VertexSet, v: usize) -> Result<MetricVector, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptyReferenceSet);
        }
        if v >= self.n || !s.is_subset_of(VertexSet::full(self.n)) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v.max(s.iter().last().unwrap_or(0)),
                order: self.n,
            });
        }
        let row = Self::bfs_row(self.n, |u| self.adj[u], v);
        Ok(MetricVector(
            s.iter()
                .map(|x| match row[x] {
                    UNREACHABLE_BYTE => Dist::Unreachable,
                    d => Dist::Finite(u32::from(d)),
                })
                .collect(),
        ))
    }

    /// Lexicographically least ordered tuple `(a, b, c, d)` inducing a path
    /// with exactly the edges `ab`, `bc`, `cd`, or `None` when the graph has
    /// no induced path on four vertices.
    pub fn find_induced_p4(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if b == a || !self.has_edge(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b || !self.has_edge(b, c) || self.has_edge(a, c) {
                        continue;
                    }
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        if self.has_edge(c, d) && !self.has_edge(a, d) && !self.has_edge(b, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Relabels vertices: new vertex `p` is old vertex `ordering[p]`.
    pub(crate) fn relabeled(&self, ordering: &[usize]) -> Graph {
        debug_assert_eq!(ordering.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for p in 0..self.n {
            for q in p + 1..self.n {
                if self.has_edge(ordering[p], ordering[q]) {
                    adj[p] |= 1u64 << q;
                    adj[q] |= 1u64 << p;
                }
            }
        }
        Graph { n: self.n, adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

//! Isomorph-free exhaustive generation of all graphs of a given order, plus
//! graph6 import and census caching.
//!
//! Generation is by canonical deletion: every class of order `k` is extended
//! with a new vertex wired to one representative neighborhood subset per
//! orbit of the parent's automorphism group, and a child survives only if
//! its new vertex lies in the orbit of the canonically-last vertex. Each
//! class of order `k + 1` is then produced exactly once, with no global
//! dedup table. Streams are ordered parent-by-parent and subsets in numeric
//! order, so runs are reproducible.

use std::collections::BTreeMap;
use std::fs;
use std::io::BufRead;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::EnumerationError;
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::invariants::InvariantProfile;

/// Built-in generation ceiling. Larger orders come only from imported
/// graph6 streams.
pub const MAX_BUILTIN_ORDER: usize = 8;

/// Predicate over census graphs: connectivity flags, diameter ranges for
/// the graph and its complement, and an order window for multi-order
/// streams.
#[derive(Clone, Debug, Default)]
pub struct CensusFilter {
    pub connected: Option<bool>,
    pub doubly_connected: bool,
    pub diameter: Option<RangeInclusive<u32>>,
    pub complement_diameter: Option<RangeInclusive<u32>>,
    pub order: Option<RangeInclusive<usize>>,
}

impl CensusFilter {
    pub fn all() -> Self {
        CensusFilter::default()
    }

    pub fn connected_only() -> Self {
        CensusFilter {
            connected: Some(true),
            ..CensusFilter::default()
        }
    }

    pub fn doubly_connected_only() -> Self {
        CensusFilter {
            doubly_connected: true,
            ..CensusFilter::default()
        }
    }

    #[must_use]
    pub fn with_diameter(mut self, range: RangeInclusive<u32>) -> Self {
        self.diameter = Some(range);
        self
    }

    #[must_use]
    pub fn with_complement_diameter(mut self, range: RangeInclusive<u32>) -> Self {
        self.complement_diameter = Some(range);
        self
    }

    #[must_use]
    pub fn with_order(mut self, range: RangeInclusive<usize>) -> Self {
        self.order = Some(range);
        self
    }

    pub fn matches(&self, g: &Graph) -> bool {
        if let Some(range) = &self.order {
            if !range.contains(&g.order()) {
                return false;
            }
        }
        if self.connected.is_some() || self.doubly_connected {
            let conn = g.connectivity();
            if let Some(want) = self.connected {
                if conn.connected != want {
                    return false;
                }
            }
            if self.doubly_connected && !conn.doubly_connected() {
                return false;
            }
        }
        if let Some(range) = &self.diameter {
            match g.diameter().finite() {
                Some(d) if range.contains(&d) => {}
                _ => return false,
            }
        }
        if let Some(range) = &self.complement_diameter {
            match g.complement().diameter().finite() {
                Some(d) if range.contains(&d) => {}
                _ => return false,
            }
        }
        true
    }
}

fn apply_perm(perm: &[usize], mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1u64 << perm[v];
    }
    out
}

/// One representative neighborhood subset per orbit of the parent's
/// automorphism group, in ascending numeric order.
fn subset_orbit_reps(parent: &Graph) -> Vec<u64> {
    let auts = canon::automorphisms(parent);
    let all: u64 = VertexSet::full(parent.order()).bits();
    let mut reps = Vec::new();
    'masks: for mask in 0..=all {
        for perm in &auts {
            if apply_perm(perm, mask) < mask {
                continue 'masks;
            }
        }
        reps.push(mask);
    }
    reps
}

/// Extends one parent class by a new last vertex, keeping the children whose
/// new vertex lies in the orbit of the canonically-last vertex.
fn children_of(parent: &Graph) -> Vec<Graph> {
    let pn = parent.order();
    let mut out = Vec::new();
    for mask in subset_orbit_reps(parent) {
        let mut edges = parent.edges();
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            edges.push((v, pn));
        }
        let child = Graph::from_edges(pn + 1, &edges).expect("extension stays in range");
        if canon::last_position_orbit(&child).contains(pn) {
            out.push(child);
        }
    }
    out
}

fn next_level(level: &[Graph]) -> Vec<Graph> {
    level
        .par_iter()
        .map(children_of)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All isomorphism classes of order `n`, one representative each, in the
/// deterministic generation order.
pub fn enumerate_classes(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
        return Err(EnumerationError::UnsupportedOrder(n));
    }
    let mut level = vec![Graph::from_edges(1, &[]).expect("single vertex")];
    for _ in 1..n {
        level = next_level(&level);
    }
    Ok(level)
}

/// Classes of order `n` passing the filter.
pub fn enumerate_graphs(n: usize, filter: &CensusFilter) -> Result<Vec<Graph>, EnumerationError> {
    Ok(enumerate_classes(n)?
        .into_iter()
        .filter(|g| filter.matches(g))
        .collect())
}

/// A full census: one representative per isomorphism class, grouped by
/// order. Backed either by built-in generation (with optional on-disk
/// caching) or by imported graph6 streams.
pub struct Census {
    levels: BTreeMap<usize, Vec<Graph>>,
}

impl Census {
    /// Generates all classes of orders `1..=max_n` in-process.
    pub fn generate(max_n: usize) -> Result<Self, EnumerationError> {
        if !(1..=MAX_BUILTIN_ORDER).contains(&max_n) {
            return Err(EnumerationError::UnsupportedOrder(max_n));
        }
        let mut levels = BTreeMap::new();
        let mut level = vec![Graph::from_edges(1, &[]).expect("single vertex")];
        levels.insert(1, level.clone());
        for n in 2..=max_n {
            level = next_level(&level);
            levels.insert(n, level.clone());
        }
        Ok(Census { levels })
    }

    /// Like [`Census::generate`], but orders already cached under `dir` are
    /// loaded instead of regenerated, and freshly generated orders are
    /// written back, so long verification runs can resume.
    pub fn generate_with_cache(dir: &Path, max_n: usize) -> Result<Self, EnumerationError> {
        if !(1..=MAX_BUILTIN_ORDER).contains(&max_n) {
            return Err(EnumerationError::UnsupportedOrder(max_n));
        }
        fs::create_dir_all(dir)?;
        let mut levels: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
        for n in 1..=max_n {
            let file = Self::cache_file(dir, n);
            let level = if file.exists() {
                Self::read_g6_file(&file)?
            } else {
                let level = if n == 1 {
                    vec![Graph::from_edges(1, &[]).expect("single vertex")]
                } else {
                    next_level(&levels[&(n - 1)])
                };
                let text: String = level.iter().map(|g| graph6::encode(g) + "\n").collect();
                fs::write(&file, text)?;
                level
            };
            levels.insert(n, level);
        }
        Ok(Census { levels })
    }

    fn cache_file(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("census_n{n}.g6"))
    }

    fn read_g6_file(path: &Path) -> Result<Vec<Graph>, EnumerationError> {
        let text = fs::read_to_string(path)?;
        let mut graphs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            graphs.push(graph6::decode(line).map_err(|source| EnumerationError::Import {
                line: idx + 1,
                source,
            })?);
        }
        Ok(graphs)
    }

    /// Builds a census from pre-deduplicated graphs (an imported stream),
    /// grouping by order.
    pub fn from_graphs(graphs: impl IntoIterator<Item = Graph>) -> Self {
        let mut levels: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
        for g in graphs {
            levels.entry(g.order()).or_default().push(g);
        }
        Census { levels }
    }

    pub fn classes(&self, n: usize) -> Result<&[Graph], EnumerationError> {
        self.levels
            .get(&n)
            .map(Vec::as_slice)
            .ok_or(EnumerationError::MissingOrder(n))
    }

    pub fn has_order(&self, n: usize) -> bool {
        self.levels.contains_key(&n)
    }

    pub fn max_order(&self) -> usize {
        self.levels.keys().next_back().copied().unwrap_or(0)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.keys().copied()
    }
}

/// One isomorphism class with its invariant profile, as emitted by census
/// queries and cached in JSON sidecars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// Canonical byte string of the class.
    pub canonical: String,
    pub order: usize,
    /// The graph as it appeared in the source stream.
    pub graph6: String,
    pub profile: InvariantProfile,
}

impl CensusRecord {
    pub fn new(g: &Graph) -> Self {
        CensusRecord {
            canonical: canon::canonical_form(g).into_string(),
            order: g.order(),
            graph6: graph6::encode(g),
            profile: InvariantProfile::compute(g),
        }
    }
}

/// Outcome of decoding one line of a graph6 stream.
#[derive(Debug)]
pub enum ImportedLine {
    Graph(Graph),
    /// Line failed to decode; `line` is 1-based.
    Error {
        line: usize,
        error: crate::error::Graph6Error,
    },
    /// Line decoded but the filter rejected it.
    Filtered,
}

/// Decodes a graph6 stream line by line, applying `filter`. No isomorphism
/// dedup is performed; the input is assumed pre-deduplicated. The caller
/// decides whether an error line aborts (strict) or is skipped.
pub fn import_graph6<R: BufRead>(
    reader: R,
    filter: &CensusFilter,
) -> impl Iterator<Item = ImportedLine> {
    let filter = filter.clone();
    reader
        .lines()
        .enumerate()
        .filter_map(move |(idx, line)| match line {
            Err(_) => Some(ImportedLine::Error {
                line: idx + 1,
                error: crate::error::Graph6Error::Empty,
            }),
            Ok(text) => {
                let text = text.trim();
                if text.is_empty() {
                    return None;
                }
                match graph6::decode(text) {
                    Ok(g) => {
                        if filter.matches(&g) {
                            Some(ImportedLine::Graph(g))
                        } else {
                            Some(ImportedLine::Filtered)
                        }
                    }
                    Err(error) => Some(ImportedLine::Error {
                        line: idx + 1,
                        error,
                    }),
                }
            }
        })
}

/// Strict import: the first malformed line aborts with its line number.
pub fn import_graph6_strict<R: BufRead>(
    reader: R,
    filter: &CensusFilter,
) -> Result<Vec<Graph>, EnumerationError> {
    let mut graphs = Vec::new();
    for item in import_graph6(reader, filter) {
        match item {
            ImportedLine::Graph(g) => graphs.push(g),
            ImportedLine::Filtered => {}
            ImportedLine::Error { line, error } => {
                return Err(EnumerationError::Import {
                    line,
                    source: error,
                })
            }
        }
    }
    Ok(graphs)
}

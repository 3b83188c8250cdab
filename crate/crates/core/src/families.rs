//! Constructors for the named graphs and graph families: paths, cycles,
//! complete (bi)partite graphs, stars, double stars, attached stars, the
//! bull and house graphs, vertex substitutions of the 4-path, and the two
//! extremal family lists built from them.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{FamilyError, GraphError};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6;

fn param_err(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::Parameter {
        family,
        reason: reason.into(),
    }
}

/// Path on `n >= 1` vertices, labeled `0..n-1` along the path.
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(param_err("path", "need n >= 1"));
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Cycle on `n >= 3` vertices, labeled in cycle order.
pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(param_err("cycle", "need n >= 3"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(param_err("complete", "need n >= 1"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Edgeless graph on `n >= 1` vertices.
pub fn edgeless(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(param_err("empty", "need n >= 1"));
    }
    Ok(Graph::from_edges(n, &[])?)
}

/// Star with `r >= 1` leaves; the center is vertex 0.
pub fn star(r: usize) -> Result<Graph, FamilyError> {
    if r < 1 {
        return Err(param_err("star", "need r >= 1"));
    }
    let edges: Vec<_> = (1..=r).map(|v| (0, v)).collect();
    Ok(Graph::from_edges(r + 1, &edges)?)
}

/// Complete bipartite graph with sides of `a` and `b` vertices.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, FamilyError> {
    if a < 1 || b < 1 {
        return Err(param_err("complete-bipartite", "need both sides >= 1"));
    }
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(a + b, &edges)?)
}

/// Disjoint union; the second graph's vertices are relabeled after the
/// first's.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, FamilyError> {
    let n = g.order() + h.order();
    if n > MAX_VERTICES {
        return Err(FamilyError::Graph(GraphError::TooLarge(n)));
    }
    let mut edges = g.edges();
    edges.extend(
        h.edges()
            .into_iter()
            .map(|(u, v)| (u + g.order(), v + g.order())),
    );
    Ok(Graph::from_edges(n, &edges)?)
}

/// Join: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, FamilyError> {
    let union = disjoint_union(g, h)?;
    let mut edges = union.edges();
    for u in 0..g.order() {
        for v in g.order()..union.order() {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(union.order(), &edges)?)
}

/// Double star: two adjacent centers (vertices 0 and 1) carrying `r` and `s`
/// pendant leaves. Order `r + s + 2`.
pub fn double_star(r: usize, s: usize) -> Result<Graph, FamilyError> {
    if r < 1 || s < 1 {
        return Err(param_err("double-star", "need r, s >= 1"));
    }
    let n = r + s + 2;
    if n > MAX_VERTICES {
        return Err(FamilyError::Graph(GraphError::TooLarge(n)));
    }
    let mut edges = vec![(0, 1)];
    edges.extend((2..2 + r).map(|v| (0, v)));
    edges.extend((2 + r..n).map(|v| (1, v)));
    Ok(Graph::from_edges(n, &edges)?)
}

/// Star on `r` leaves plus one extra vertex adjacent to `s` of the leaves,
/// with `2 <= s <= r - 1`. Center 0, leaves `1..=r`, extra vertex `r + 1`
/// adjacent to leaves `1..=s`. Order `r + 2`.
pub fn star_attach(r: usize, s: usize) -> Result<Graph, FamilyError> {
    if s < 2 || s + 1 > r {
        return Err(param_err("star-attach", "need 2 <= s <= r - 1"));
    }
    let n = r + 2;
    if n > MAX_VERTICES {
        return Err(FamilyError::Graph(GraphError::TooLarge(n)));
    }
    let mut edges: Vec<_> = (1..=r).map(|v| (0, v)).collect();
    edges.extend((1..=s).map(|v| (v, r + 1)));
    Ok(Graph::from_edges(n, &edges)?)
}

/// Vertex substitution: each assigned vertex `i` of `g` is replaced by the
/// block graph `h_i`, keeping `h_i`'s internal edges, joining every block
/// vertex to the images of `i`'s neighbors, and joining two blocks
/// completely exactly when their host vertices are adjacent in `g`.
pub fn substitute(g: &Graph, assignments: &[(usize, &Graph)]) -> Result<Graph, FamilyError> {
    let mut block: Vec<Option<&Graph>> = vec![None; g.order()];
    for &(i, h) in assignments {
        if i >= g.order() {
            return Err(FamilyError::Graph(GraphError::VertexOutOfRange {
                vertex: i,
                order: g.order(),
            }));
        }
        if block[i].is_some() {
            return Err(FamilyError::DuplicateAssignment(i));
        }
        block[i] = Some(h);
    }

    let sizes: Vec<usize> = block.iter().map(|b| b.map_or(1, |h| h.order())).collect();
    let n: usize = sizes.iter().sum();
    if n > MAX_VERTICES {
        return Err(FamilyError::Graph(GraphError::TooLarge(n)));
    }
    let mut base = vec![0usize; g.order()];
    for i in 1..g.order() {
        base[i] = base[i - 1] + sizes[i - 1];
    }

    let mut edges = Vec::new();
    for (i, b) in block.iter().enumerate() {
        if let Some(h) = b {
            for (u, v) in h.edges() {
                edges.push((base[i] + u, base[i] + v));
            }
        }
    }
    for i in 0..g.order() {
        for j in i + 1..g.order() {
            if g.has_edge(i, j) {
                for u in 0..sizes[i] {
                    for v in 0..sizes[j] {
                        edges.push((base[i] + u, base[j] + v));
                    }
                }
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Bull: a triangle with pendant vertices on two of its corners. It is
/// isomorphic to its own complement.
pub fn bull() -> Graph {
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)])
        .expect("static construction");
    debug_assert_eq!(canonical_form(&g), canonical_form(&g.complement()));
    g
}

/// House: the complement of the 5-path.
pub fn house() -> Graph {
    path(5).expect("static construction").complement()
}

/// The pair of derived graphs that completes the list of doubly-connected
/// graphs whose metric-location-domination number is 2 in both the graph and
/// its complement. They are not constructible from parameters; the verifier
/// derives them from the census and they are cached in a small store file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedPair {
    e: Graph,
    f: Graph,
}

impl DerivedPair {
    /// Wraps a derived pair; `f` must be the complement of `e` up to
    /// isomorphism and `e` must carry the lexicographically smaller
    /// canonical form.
    pub fn new(e: Graph, f: Graph) -> Result<Self, FamilyError> {
        let ce = canonical_form(&e);
        let cf = canonical_form(&f);
        if canonical_form(&e.complement()) != cf {
            return Err(FamilyError::DerivedStore(
                "second graph is not the complement of the first".into(),
            ));
        }
        if ce > cf {
            return Err(FamilyError::DerivedStore(
                "first graph must carry the lexicographically smaller canonical form".into(),
            ));
        }
        Ok(DerivedPair { e, f })
    }

    pub fn e(&self) -> &Graph {
        &self.e
    }

    pub fn f(&self) -> &Graph {
        &self.f
    }

    /// Reads the store file: comment lines starting with `#`, then one
    /// graph6 line for E and one for F.
    pub fn load(path: &Path) -> Result<Self, FamilyError> {
        let text = fs::read_to_string(path)
            .map_err(|e| FamilyError::DerivedStore(format!("{}: {e}", path.display())))?;
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() != 2 {
            return Err(FamilyError::DerivedStore(format!(
                "expected 2 graph6 lines, found {}",
                lines.len()
            )));
        }
        let e = graph6::decode(lines[0])
            .map_err(|err| FamilyError::DerivedStore(format!("line 1: {err}")))?;
        let f = graph6::decode(lines[1])
            .map_err(|err| FamilyError::DerivedStore(format!("line 2: {err}")))?;
        DerivedPair::new(e, f)
    }

    /// Writes the store file, keyed by canonical form.
    pub fn save(&self, path: &Path) -> Result<(), FamilyError> {
        let text = format!(
            "# derived pair: the two complementary classes left after removing the\n\
             # 5-path, 5-cycle, bull and house from the doubly-connected graphs with\n\
             # metric-location-domination number 2 in both the graph and its complement\n\
             # E = {}\n# F = {}\n{}\n{}\n",
            canonical_form(&self.e),
            canonical_form(&self.f),
            graph6::encode(&self.e),
            graph6::encode(&self.f),
        );
        fs::write(path, text)
            .map_err(|e| FamilyError::DerivedStore(format!("{}: {e}", path.display())))
    }
}

/// The individually named graphs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NamedId {
    Bull,
    House,
    E,
    F,
}

/// Returns a named graph. E and F require the derived store.
pub fn named(id: NamedId, derived: Option<&DerivedPair>) -> Result<Graph, FamilyError> {
    match id {
        NamedId::Bull => Ok(bull()),
        NamedId::House => Ok(house()),
        NamedId::E => derived
            .map(|d| d.e.clone())
            .ok_or(FamilyError::DerivedUnavailable),
        NamedId::F => derived
            .map(|d| d.f.clone())
            .ok_or(FamilyError::DerivedUnavailable),
    }
}

fn dedup_by_canonical(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut tagged: Vec<(CanonicalForm, Graph)> = graphs
        .into_iter()
        .map(|g| (canonical_form(&g), g))
        .collect();
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    tagged.dedup_by(|a, b| a.0 == b.0);
    tagged.into_iter().map(|(_, g)| g).collect()
}

/// All members of order `n` of the three extremal families built on the
/// 4-path: the sporadic graphs (4-path, 5-cycle, bull), the one-vertex
/// substitutions of an end or its neighbor by a clique or co-clique on
/// `n - 3` vertices, and the two-vertex substitutions by clique pairs at the
/// adjacent positions 1,2 or co-clique pairs at the nonadjacent positions
/// 1,3 (1-based along the path). Deduplicated by canonical form, sorted.
pub fn omega(n: usize) -> Result<Vec<Graph>, FamilyError> {
    if n < 4 {
        return Err(param_err("omega", "need n >= 4"));
    }
    let p4 = path(4)?;
    let mut members = Vec::new();
    if n == 4 {
        members.push(p4.clone());
    }
    if n == 5 {
        members.push(cycle(5)?);
        members.push(bull());
    }
    let m = n - 3;
    for block in [complete(m)?, edgeless(m)?] {
        for host in [0usize, 1] {
            members.push(substitute(&p4, &[(host, &block)])?);
        }
    }
    for r in 1..=n - 3 {
        let other = n - r - 2;
        members.push(substitute(
            &p4,
            &[(0, &complete(r)?), (1, &complete(other)?)],
        )?);
        members.push(substitute(
            &p4,
            &[(0, &edgeless(r)?), (2, &edgeless(other)?)],
        )?);
    }
    Ok(dedup_by_canonical(members))
}

/// All graphs of order `n` whose location number is `n - 2` or `n - 1`: the
/// complete graph, the complete bipartite graphs, the joins of a clique with
/// a co-clique, and the joins of a clique with (one isolated vertex plus a
/// clique). Deduplicated by canonical form, sorted.
pub fn beta_high_family(n: usize) -> Result<Vec<Graph>, FamilyError> {
    if n < 2 {
        return Err(param_err("beta-high", "need n >= 2"));
    }
    let mut members = vec![complete(n)?];
    for h in 1..n {
        members.push(complete_bipartite(h, n - h)?);
        members.push(join(&complete(h)?, &edgeless(n - h)?)?);
        if n - h >= 2 {
            let piece = disjoint_union(&complete(1)?, &complete(n - h - 1)?)?;
            members.push(join(&complete(h)?, &piece)?);
        }
    }
    Ok(dedup_by_canonical(members))
}

/// Family selector for the CLI surface.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Path,
    Cycle,
    Complete,
    Empty,
    Star,
    CompleteBipartite,
    DoubleStar,
    StarAttach,
    Bull,
    House,
    E,
    F,
    Omega,
    BetaHigh,
}

impl FamilyId {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Path => "path",
            FamilyId::Cycle => "cycle",
            FamilyId::Complete => "complete",
            FamilyId::Empty => "empty",
            FamilyId::Star => "star",
            FamilyId::CompleteBipartite => "complete-bipartite",
            FamilyId::DoubleStar => "double-star",
            FamilyId::StarAttach => "star-attach",
            FamilyId::Bull => "bull",
            FamilyId::House => "house",
            FamilyId::E => "e",
            FamilyId::F => "f",
            FamilyId::Omega => "omega",
            FamilyId::BetaHigh => "beta-high",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => FamilyId::Path,
            "cycle" => FamilyId::Cycle,
            "complete" => FamilyId::Complete,
            "empty" => FamilyId::Empty,
            "star" => FamilyId::Star,
            "complete-bipartite" => FamilyId::CompleteBipartite,
            "double-star" => FamilyId::DoubleStar,
            "star-attach" => FamilyId::StarAttach,
            "bull" => FamilyId::Bull,
            "house" => FamilyId::House,
            "e" => FamilyId::E,
            "f" => FamilyId::F,
            "omega" => FamilyId::Omega,
            "beta-high" => FamilyId::BetaHigh,
            other => return Err(format!("unknown family id {other:?}")),
        })
    }
}

/// A family id with its integer parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub h: Option<usize>,
}

impl FamilySpec {
    fn need(value: Option<usize>, id: FamilyId, name: &str) -> Result<usize, FamilyError> {
        value.ok_or_else(|| FamilyError::Parameter {
            family: id.as_str(),
            reason: format!("missing parameter --{name}"),
        })
    }

    /// Instantiates the family; single graphs come back as one-element
    /// lists.
    pub fn build(&self, derived: Option<&DerivedPair>) -> Result<Vec<Graph>, FamilyError> {
        let id = self.id;
        Ok(match id {
            FamilyId::Path => vec![path(Self::need(self.n, id, "n")?)?],
            FamilyId::Cycle => vec![cycle(Self::need(self.n, id, "n")?)?],
            FamilyId::Complete => vec![complete(Self::need(self.n, id, "n")?)?],
            FamilyId::Empty => vec![edgeless(Self::need(self.n, id, "n")?)?],
            FamilyId::Star => vec![star(Self::need(self.r, id, "r")?)?],
            FamilyId::CompleteBipartite => vec![complete_bipartite(
                Self::need(self.r, id, "r")?,
                Self::need(self.s, id, "s")?,
            )?],
            FamilyId::DoubleStar => vec![double_star(
                Self::need(self.r, id, "r")?,
                Self::need(self.s, id, "s")?,
            )?],
            FamilyId::StarAttach => vec![star_attach(
                Self::need(self.r, id, "r")?,
                Self::need(self.s, id, "s")?,
            )?],
            FamilyId::Bull => vec![named(NamedId::Bull, derived)?],
            FamilyId::House => vec![named(NamedId::House, derived)?],
            FamilyId::E => vec![named(NamedId::E, derived)?],
            FamilyId::F => vec![named(NamedId::F, derived)?],
            FamilyId::Omega => omega(Self::need(self.n, id, "n")?)?,
            FamilyId::BetaHigh => beta_high_family(Self::need(self.n, id, "n")?)?,
        })
    }
}

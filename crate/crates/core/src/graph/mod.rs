//! Simple directed graphs and the structural predicates the presentation needs.
//!
//! Vertices are dense `0..n` indices. Vertex sets are 64-bit bitsets, which caps
//! graphs at [`MAX_VERTICES`] vertices; every algorithm here is meant for desk
//! scale anyway.

mod build;
mod parse;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{HkError, Result};

pub use build::{build_glued, build_zn, BlockSpec, Polarity, ZGraph};
pub use parse::parse_graph;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u8);

impl VertexId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_VERTICES, "vertex index {index} out of range");
        VertexId(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of vertices, stored as a bitset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

/// Full subgraphs are determined by their vertex set.
pub type SubgraphSpec = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1 << v.index())
    }

    #[inline]
    pub fn contains(self, v: VertexId) -> bool {
        self.0 >> v.index() & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1 << v.index();
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1 << v.index());
    }

    pub fn with(mut self, v: VertexId) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: VertexId) -> Self {
        self.remove(v);
        self
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| VertexId(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            Some(VertexId(v as u8))
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A simple directed graph: no self-loops, at most one edge per ordered pair.
///
/// A pair of edges `u -> v` and `v -> u` forms an unoriented edge. Such graphs
/// can be built (see [`DirectedGraph::has_unoriented_edges`]) but most
/// representation-theoretic operations reject them.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    n: usize,
    out: Vec<VertexSet>,
    inc: Vec<VertexSet>,
    labels: Vec<String>,
    canonical: OnceLock<Option<Vec<VertexId>>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out && self.labels == other.labels
    }
}

impl Eq for DirectedGraph {}

/// Default label of vertex `i`: `a`..`z` for small graphs, `v<i>` beyond that.
pub fn default_label(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

impl DirectedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(HkError::TooManyVertices {
                got: n,
                max: MAX_VERTICES,
            });
        }
        Ok(DirectedGraph {
            n,
            out: vec![VertexSet::EMPTY; n],
            inc: vec![VertexSet::EMPTY; n],
            labels: (0..n).map(|i| default_label(i, n)).collect(),
            canonical: OnceLock::new(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(HkError::InvalidVertex(labels.len()));
        }
        self.labels = labels;
        Ok(self)
    }

    fn push_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(HkError::InvalidVertex(u));
        }
        if v >= self.n {
            return Err(HkError::InvalidVertex(v));
        }
        if u == v {
            return Err(HkError::SelfLoop(u));
        }
        self.out[u].insert(VertexId::new(v));
        self.inc[v].insert(VertexId::new(u));
        self.canonical = OnceLock::new();
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId::new)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(VertexId::new)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u.index()].contains(v)
    }

    pub fn out_neighbors(&self, v: VertexId) -> VertexSet {
        self.out[v.index()]
    }

    pub fn in_neighbors(&self, v: VertexId) -> VertexSet {
        self.inc[v.index()]
    }

    /// Neighbors in the underlying undirected graph.
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.out[v.index()].union(self.inc[v.index()])
    }

    /// All directed edges, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.vertices()
            .flat_map(|u| self.out[u.index()].iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    pub fn has_unoriented_edges(&self) -> bool {
        self.vertices()
            .any(|u| !self.out[u.index()].intersection(self.inc[u.index()]).is_empty())
    }

    /// Vertices with in-degree 0 or out-degree 0.
    pub fn sources_and_sinks(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.is_source(v) || self.is_sink(v))
            .collect()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.inc[v.index()].is_empty()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.index()].is_empty()
    }

    /// Full subgraph on `s`, reindexed densely in increasing vertex order.
    /// Returns the subgraph and the map from new to old vertex ids.
    pub fn induced(&self, s: SubgraphSpec) -> (DirectedGraph, Vec<VertexId>) {
        let map: Vec<VertexId> = s.intersection(self.all()).iter().collect();
        let mut back = vec![usize::MAX; self.n];
        for (i, v) in map.iter().enumerate() {
            back[v.index()] = i;
        }
        let mut sub = DirectedGraph::empty(map.len()).expect("subgraph is smaller");
        for &(u, v) in &self.edges() {
            if s.contains(u) && s.contains(v) {
                sub.push_edge(back[u.index()], back[v.index()])
                    .expect("edges of a simple graph");
            }
        }
        sub.labels = map.iter().map(|&v| self.labels[v.index()].clone()).collect();
        (sub, map)
    }

    /// Number of distinct undirected neighbors, used for the A_n shape test.
    fn undirected_degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// Underlying undirected graph is a simple path through all vertices.
    /// The empty graph counts as `A_0`.
    pub fn is_type_an(&self) -> bool {
        self.path_order().is_some()
    }

    fn path_order(&self) -> Option<Vec<VertexId>> {
        if self.n == 0 {
            return Some(Vec::new());
        }
        if self.n == 1 {
            return Some(vec![VertexId(0)]);
        }
        let mut ends = Vec::new();
        for v in self.vertices() {
            match self.undirected_degree(v) {
                1 => ends.push(v),
                2 => {}
                _ => return None,
            }
        }
        if ends.len() != 2 {
            return None;
        }
        let mut order = vec![ends[0]];
        let mut prev: Option<VertexId> = None;
        let mut cur = ends[0];
        while order.len() < self.n {
            let next = self
                .neighbors(cur)
                .iter()
                .find(|&w| Some(w) != prev)?;
            prev = Some(cur);
            cur = next;
            order.push(cur);
        }
        // A cycle plus a disjoint path would have been caught by the degree
        // count; reaching the other end confirms connectivity.
        (cur == ends[1]).then_some(order)
    }

    /// Canonical order of a type-A_n graph: neighbors are consecutive.
    ///
    /// Linearly ordered graphs run from the source to the sink; any other
    /// path starts from the endpoint with the smaller index.
    pub fn canonical_order(&self) -> Option<&[VertexId]> {
        self.canonical
            .get_or_init(|| {
                let mut order = self.path_order()?;
                if order.len() > 1 {
                    let linear = self.is_linearly_ordered_path(&order);
                    let flip = match linear {
                        Some(forward) => !forward,
                        None => order[0] > order[order.len() - 1],
                    };
                    if flip {
                        order.reverse();
                    }
                }
                Some(order)
            })
            .as_deref()
    }

    /// For a path order, `Some(true)` if every edge points forward,
    /// `Some(false)` if every edge points backward, `None` otherwise.
    fn is_linearly_ordered_path(&self, order: &[VertexId]) -> Option<bool> {
        if self.has_unoriented_edges() {
            return None;
        }
        let forward = order.windows(2).all(|w| self.has_edge(w[0], w[1]));
        let backward = order.windows(2).all(|w| self.has_edge(w[1], w[0]));
        match (forward, backward) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }

    /// Type A_n with a single source and a single sink and no unoriented edges.
    pub fn is_linearly_ordered(&self) -> bool {
        match self.path_order() {
            Some(order) if order.len() <= 1 => true,
            Some(order) => self.is_linearly_ordered_path(&order).is_some(),
            None => false,
        }
    }

    /// Whether the full subgraph on `s` has a directed cycle.
    pub fn has_oriented_cycle(&self, s: SubgraphSpec) -> bool {
        // Kahn's algorithm restricted to s.
        let mut remaining = s.intersection(self.all());
        loop {
            let removable: VertexSet = remaining
                .iter()
                .filter(|&v| self.inc[v.index()].intersection(remaining).is_empty())
                .collect();
            if removable.is_empty() {
                return !remaining.is_empty();
            }
            remaining = remaining.difference(removable);
        }
    }

    /// Vertices reachable from `s` along directed paths of length >= 1.
    fn forward_reach(&self, s: VertexSet) -> VertexSet {
        self.reach(s, &self.out)
    }

    fn backward_reach(&self, s: VertexSet) -> VertexSet {
        self.reach(s, &self.inc)
    }

    fn reach(&self, s: VertexSet, adj: &[VertexSet]) -> VertexSet {
        let mut seen = VertexSet::EMPTY;
        let mut frontier: VertexSet = s.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(adj[v.index()]));
        while !frontier.is_empty() {
            seen = seen.union(frontier);
            frontier = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.union(adj[v.index()]))
                .difference(seen);
        }
        seen
    }

    /// The full subgraph on every vertex with a (possibly trivial) directed
    /// path to `a`.
    pub fn source_graph(&self, a: VertexId) -> SubgraphSpec {
        self.backward_reach(VertexSet::singleton(a)).with(a)
    }

    /// No directed path between two vertices of `s` passes outside `s`.
    pub fn is_path_complete(&self, s: SubgraphSpec) -> bool {
        let outside = self
            .forward_reach(s)
            .intersection(self.backward_reach(s))
            .difference(s);
        outside.is_empty()
    }

    /// Splits a type-A_n graph into its maximal linearly ordered pieces, in
    /// canonical order. Consecutive pieces share one glue vertex.
    pub fn gluing_decomposition(&self) -> Result<Vec<Piece>> {
        if self.has_unoriented_edges() {
            return Err(HkError::UnorientedEdge);
        }
        let order = self.canonical_order().ok_or(HkError::NotTypeA)?;
        if order.is_empty() {
            return Ok(Vec::new());
        }
        let mut pieces = Vec::new();
        let mut current = vec![order[0]];
        let mut glue = None;
        for (i, &v) in order.iter().enumerate().skip(1) {
            current.push(v);
            let interior = i + 1 < order.len();
            if interior && (self.is_source(v) || self.is_sink(v)) {
                pieces.push(Piece::new(std::mem::take(&mut current), glue));
                glue = Some(v);
                current.push(v);
            }
        }
        pieces.push(Piece::new(current, glue));
        Ok(pieces)
    }

    /// Reverses every edge with both endpoints in `s`.
    pub fn reverse_edges(&self, s: SubgraphSpec) -> DirectedGraph {
        let mut g = DirectedGraph::empty(self.n).expect("same size");
        g.labels = self.labels.clone();
        for (u, v) in self.edges() {
            if s.contains(u) && s.contains(v) {
                g.push_edge(v.index(), u.index()).expect("valid edge");
            } else {
                g.push_edge(u.index(), v.index()).expect("valid edge");
            }
        }
        g
    }

    /// Full vertex subsets whose induced subgraph has no oriented cycle.
    pub fn acyclic_subsets(&self) -> Vec<VertexSet> {
        assert!(self.n < 32, "subset enumeration is for desk-scale graphs");
        (0..1u64 << self.n)
            .map(VertexSet::from_bits)
            .filter(|&s| !self.has_oriented_cycle(s))
            .collect()
    }
}

/// One maximal linearly ordered piece of a type-A_n graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// Vertices in canonical order.
    pub vertices: Vec<VertexId>,
    /// Vertex shared with the previous piece; `None` for the first piece.
    pub glue: Option<VertexId>,
}

impl Piece {
    fn new(vertices: Vec<VertexId>, glue: Option<VertexId>) -> Self {
        Piece { vertices, glue }
    }

    pub fn set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Number of vertices in the piece.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "e {} {}", u, v)?;
        }
        Ok(())
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{default_label, DirectedGraph, VertexId};
use crate::error::{HkError, Result};

/// The graph `Z_n`: a source `a`, a sink `b` and middles `v_3..v_n` with
/// edges `a -> v_i -> b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZGraph {
    pub graph: DirectedGraph,
    pub a: VertexId,
    pub b: VertexId,
    /// `middles[j]` is `v_{j+3}`.
    pub middles: Vec<VertexId>,
}

impl ZGraph {
    /// The index `i` of a middle vertex `v_i` (starting at 3).
    pub fn middle_index(&self, v: VertexId) -> Option<usize> {
        self.middles.iter().position(|&m| m == v).map(|j| j + 3)
    }
}

pub fn build_zn(n: usize) -> Result<ZGraph> {
    if n < 4 {
        return Err(HkError::TooSmall(n));
    }
    let a = 0;
    let b = 1;
    let mut edges = Vec::new();
    for m in 2..n {
        edges.push((a, m));
        edges.push((m, b));
    }
    let mut labels = vec!["a".to_string(), "b".to_string()];
    labels.extend((3..=n).map(|i| format!("v{i}")));
    let graph = DirectedGraph::from_edges(n, &edges)?.with_labels(labels)?;
    Ok(ZGraph {
        graph,
        a: VertexId::new(a),
        b: VertexId::new(b),
        middles: (2..n).map(VertexId::new).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Source,
    Sink,
}

/// What replaces one oriented forest edge in [`build_glued`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSpec {
    /// Linearly ordered chain with this many vertices, glue ends included.
    Chain(usize),
    /// `Z_n` with its source and sink on the glue ends.
    Zn(usize),
    /// Kiselman graph; recognised but not buildable here.
    Kiselman(usize),
}

impl FromStr for BlockSpec {
    type Err = HkError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = s
            .strip_suffix(')')
            .and_then(|s| s.split_once('('))
            .ok_or_else(|| HkError::BadBlock(s.to_string()))?;
        let size: usize = arg
            .trim()
            .parse()
            .map_err(|_| HkError::BadBlock(s.to_string()))?;
        match name.trim() {
            "chain" => Ok(BlockSpec::Chain(size)),
            "zn" => Ok(BlockSpec::Zn(size)),
            "kiselman" => Ok(BlockSpec::Kiselman(size)),
            _ => Err(HkError::BadBlock(s.to_string())),
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSpec::Chain(n) => write!(f, "chain({n})"),
            BlockSpec::Zn(n) => write!(f, "zn({n})"),
            BlockSpec::Kiselman(n) => write!(f, "kiselman({n})"),
        }
    }
}

/// Builds a graph from an undirected forest whose vertices are all sources or
/// sinks, replacing every edge by a block glued source-to-source and
/// sink-to-sink.
///
/// Forest vertices keep their indices; block-internal vertices are appended in
/// edge order.
pub fn build_glued(
    forest_edges: &[(usize, usize)],
    orientation: &BTreeMap<usize, Polarity>,
    replacements: &[BlockSpec],
) -> Result<DirectedGraph> {
    if replacements.len() != forest_edges.len() {
        return Err(HkError::BadBlock(format!(
            "{} edges but {} replacements",
            forest_edges.len(),
            replacements.len()
        )));
    }
    let forest_n = forest_edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .chain(orientation.keys().copied())
        .max()
        .map_or(0, |m| m + 1);

    // Union-find to reject undirected cycles.
    let mut parent: Vec<usize> = (0..forest_n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in forest_edges {
        if u == v {
            return Err(HkError::NotForest);
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(HkError::NotForest);
        }
        parent[ru] = rv;
    }

    let mut oriented = Vec::with_capacity(forest_edges.len());
    for &(u, v) in forest_edges {
        let pu = orientation
            .get(&u)
            .ok_or_else(|| HkError::BadOrientation(format!("vertex {u} has no orientation")))?;
        let pv = orientation
            .get(&v)
            .ok_or_else(|| HkError::BadOrientation(format!("vertex {v} has no orientation")))?;
        match (pu, pv) {
            (Polarity::Source, Polarity::Sink) => oriented.push((u, v)),
            (Polarity::Sink, Polarity::Source) => oriented.push((v, u)),
            _ => {
                return Err(HkError::BadOrientation(format!(
                    "edge {u}-{v} joins two vertices of the same polarity"
                )))
            }
        }
    }

    let mut total = forest_n;
    for block in replacements {
        total += match *block {
            BlockSpec::Chain(len) if len >= 2 => len - 2,
            BlockSpec::Zn(size) if size >= 4 => size - 2,
            BlockSpec::Chain(_) | BlockSpec::Zn(_) => {
                return Err(HkError::BadBlock(block.to_string()))
            }
            BlockSpec::Kiselman(_) => return Err(HkError::UnsupportedBlock(block.to_string())),
        };
    }

    let mut edges = Vec::new();
    let mut next = forest_n;
    for (&(s, t), block) in oriented.iter().zip(replacements) {
        match *block {
            BlockSpec::Chain(len) => {
                let mut prev = s;
                for _ in 0..len - 2 {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, t));
            }
            BlockSpec::Zn(size) => {
                for _ in 0..size - 2 {
                    edges.push((s, next));
                    edges.push((next, t));
                    next += 1;
                }
            }
            BlockSpec::Kiselman(_) => unreachable!("rejected above"),
        }
    }
    let labels = (0..total).map(|i| default_label(i, total)).collect();
    DirectedGraph::from_edges(total, &edges)?.with_labels(labels)
}

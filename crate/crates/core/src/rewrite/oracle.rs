//! Brute-force congruence closure over bounded words.
//!
//! Independent of completion: it only uses the defining relations. Every word
//! up to a length bound gets a dense index, single relation applications are
//! unioned, and the resulting partition is certified before use.

use std::collections::HashMap;

use crate::error::{HkError, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::presentation::{relations_of, Relation};
use crate::word::Word;

/// Refuse bounded closures larger than this many words.
const MAX_WORDS: usize = 40_000_000;

/// Dense indexing of all words of length `<= max_len` over `n` letters:
/// shorter words first, then base-`n` order.
struct WordSpace {
    n: usize,
    offsets: Vec<usize>,
}

impl WordSpace {
    fn new(n: usize, max_len: usize) -> Option<Self> {
        let mut offsets = vec![0usize];
        let mut layer = 1usize;
        for _ in 0..=max_len {
            let last = *offsets.last().unwrap();
            offsets.push(last.checked_add(layer)?);
            layer = layer.checked_mul(n.max(1))?;
            if n == 0 {
                layer = 0;
            }
        }
        Some(WordSpace { n, offsets })
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn count_up_to(&self, len: usize) -> usize {
        self.offsets[len + 1]
    }

    fn index(&self, letters: &[u8]) -> usize {
        let value = letters
            .iter()
            .fold(0usize, |acc, &x| acc * self.n + x as usize);
        self.offsets[letters.len()] + value
    }

    fn decode(&self, mut idx: usize, buf: &mut Vec<u8>) {
        let len = self.offsets.partition_point(|&o| o <= idx) - 1;
        idx -= self.offsets[len];
        buf.clear();
        buf.resize(len, 0);
        for slot in buf.iter_mut().rev() {
            *slot = (idx % self.n) as u8;
            idx /= self.n;
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Keeps the smaller index as the root so roots are shortlex-least words.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Union-find over every word of length `<= bound`, joining words that differ
/// by one relation application.
fn closure(space: &WordSpace, rels: &[Relation]) -> UnionFind {
    let pats: Vec<(Vec<u8>, Vec<u8>)> = rels
        .iter()
        .map(|r| {
            let lhs: Vec<u8> = r.lhs.letters().iter().map(|v| v.0).collect();
            let rhs: Vec<u8> = r.rhs.letters().iter().map(|v| v.0).collect();
            // Longer side first: scanning for it finds every edge within the bound.
            if lhs.len() >= rhs.len() {
                (lhs, rhs)
            } else {
                (rhs, lhs)
            }
        })
        .collect();
    let mut uf = UnionFind::new(space.total());
    let mut word = Vec::new();
    let mut next = Vec::new();
    for idx in 0..space.total() {
        space.decode(idx, &mut word);
        for (from, to) in &pats {
            if from.len() > word.len() {
                continue;
            }
            for p in 0..=word.len() - from.len() {
                if word[p..p + from.len()] == from[..] {
                    next.clear();
                    next.extend_from_slice(&word[..p]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&word[p + from.len()..]);
                    uf.union(idx as u32, space.index(&next) as u32);
                }
            }
        }
    }
    uf
}

/// Certified partition of all words of length `<= max_len` into classes of
/// the congruence generated by the defining relations.
#[derive(Debug, Clone)]
pub struct OracleClasses {
    n: usize,
    max_len: usize,
    class_of: Vec<u32>,
    class_count: usize,
}

impl OracleClasses {
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Class id (dense, in order of each class's shortlex-least word) of a word
    /// within the length bound.
    pub fn class_of(&self, w: &Word) -> Option<u32> {
        if w.len() > self.max_len || w.letters().iter().any(|v| v.index() >= self.n) {
            return None;
        }
        let space = WordSpace::new(self.n, self.max_len)?;
        let letters: Vec<u8> = w.letters().iter().map(|v| v.0).collect();
        Some(self.class_of[space.index(&letters)])
    }

    pub fn same_class(&self, u: &Word, v: &Word) -> Option<bool> {
        Some(self.class_of(u)? == self.class_of(v)?)
    }

    /// Every word of length `<= max_len`, in index order.
    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        let space = WordSpace::new(self.n, self.max_len).expect("built before");
        let mut buf = Vec::new();
        (0..space.total()).map(move |i| {
            space.decode(i, &mut buf);
            buf.iter().map(|&x| VertexId(x)).collect()
        })
    }
}

/// Partitions words up to `max_len` by bounded congruence closure over words
/// up to `max_len + slack`, and certifies the result:
///
/// * the partition is unchanged when the bound grows by one, and
/// * right multiplication by each generator maps every class to a class
///   (well defined on classes) that has a representative within `max_len`.
///
/// When certified, the class count is the order of the monoid.
pub fn oracle_classes(g: &DirectedGraph, max_len: usize, slack: usize) -> Result<OracleClasses> {
    if slack == 0 {
        return Err(HkError::Unstable("slack must be at least 1".into()));
    }
    let n = g.vertex_count();
    let rels = relations_of(g);
    let build = |bound: usize| -> Result<(WordSpace, UnionFind)> {
        let space = WordSpace::new(n, bound)
            .filter(|s| s.total() <= MAX_WORDS)
            .ok_or_else(|| HkError::Unstable(format!("word space for length {bound} too large")))?;
        let uf = closure(&space, &rels);
        Ok((space, uf))
    };

    let (space, mut uf) = build(max_len + slack)?;
    let short = space.count_up_to(max_len);
    let (wider_space, mut wider) = build(max_len + slack + 1)?;
    debug_assert_eq!(wider_space.count_up_to(max_len), short);

    let mut class_of = vec![u32::MAX; short];
    let mut root_class: HashMap<u32, u32> = HashMap::new();
    for (idx, slot) in class_of.iter_mut().enumerate() {
        let root = uf.find(idx as u32);
        let next = root_class.len() as u32;
        *slot = *root_class.entry(root).or_insert(next);
    }
    let class_count = root_class.len();

    let wider_count = (0..short as u32)
        .map(|i| wider.find(i))
        .collect::<std::collections::HashSet<_>>()
        .len();
    if wider_count != class_count {
        return Err(HkError::Unstable(format!(
            "{class_count} classes with slack {slack}, {wider_count} with slack {}",
            slack + 1
        )));
    }

    // Right multiplication must be well defined on classes and stay inside
    // classes with a short representative.
    let mut image = vec![u32::MAX; class_count * n];
    let mut word = Vec::new();
    for (idx, &class) in class_of.iter().enumerate().take(short) {
        space.decode(idx, &mut word);
        let class = class as usize;
        for x in 0..n {
            word.push(x as u8);
            let target_root = uf.find(space.index(&word) as u32);
            word.pop();
            let Some(&target) = root_class.get(&target_root) else {
                return Err(HkError::Unstable(format!(
                    "a product leaves the words of length <= {max_len}"
                )));
            };
            let slot = &mut image[class * n + x];
            if *slot == u32::MAX {
                *slot = target;
            } else if *slot != target {
                return Err(HkError::Unstable("right multiplication is not well defined".into()));
            }
        }
    }

    Ok(OracleClasses {
        n,
        max_len,
        class_of,
        class_count,
    })
}

/// Outcome of comparing the oracle with completion-based enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAgreement {
    /// Both sides finite. `words_agree`: two words of length `<= max_len`
    /// have equal normal forms exactly when the oracle puts them in one class.
    Finite {
        classes: usize,
        elements: usize,
        max_len: usize,
        words_agree: bool,
    },
    /// Enumeration hit its cap and the oracle could not certify a partition.
    BothUnbounded,
    /// Exactly one side failed; `detail` says which.
    Disagree { detail: String },
}

impl OracleAgreement {
    pub fn agrees(&self) -> bool {
        match self {
            OracleAgreement::Finite {
                classes,
                elements,
                words_agree,
                ..
            } => classes == elements && *words_agree,
            OracleAgreement::BothUnbounded => true,
            OracleAgreement::Disagree { .. } => false,
        }
    }
}

/// Runs the oracle with length bound `max(max_len, longest normal form)` and
/// compares it with enumeration.
pub fn oracle_agreement(g: &DirectedGraph, max_len: usize, slack: usize, cap: usize) -> Result<OracleAgreement> {
    let table = match super::enumerate_graph(g, cap) {
        Ok((_, t)) => Some(t),
        Err(HkError::CapExceeded { .. }) | Err(HkError::LimitExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let bound = table
        .as_ref()
        .map_or(max_len, |t| t.normal_forms().iter().map(Word::len).max().unwrap_or(0).max(max_len));
    let oracle = match oracle_classes(g, bound, slack) {
        Ok(o) => Some(o),
        Err(HkError::Unstable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(match (table, oracle) {
        (None, None) => OracleAgreement::BothUnbounded,
        (Some(t), None) => OracleAgreement::Disagree {
            detail: format!("enumeration finds {} elements, oracle is unstable", t.len()),
        },
        (None, Some(o)) => OracleAgreement::Disagree {
            detail: format!("oracle certifies {} classes, enumeration hit its cap", o.class_count()),
        },
        (Some(t), Some(o)) => {
            let mut elem_of_class: HashMap<u32, u32> = HashMap::new();
            let mut class_of_elem: HashMap<u32, u32> = HashMap::new();
            let mut words_agree = true;
            for w in o.words() {
                let c = o.class_of(&w).expect("within bound");
                let e = t.element_of(&w).0;
                words_agree &= *elem_of_class.entry(c).or_insert(e) == e;
                words_agree &= *class_of_elem.entry(e).or_insert(c) == c;
            }
            OracleAgreement::Finite {
                classes: o.class_count(),
                elements: t.len(),
                max_len: bound,
                words_agree,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::single_step_neighbors;

    #[test]
    fn word_space_round_trip() {
        let space = WordSpace::new(3, 4).unwrap();
        let mut buf = Vec::new();
        for idx in 0..space.total() {
            space.decode(idx, &mut buf);
            assert_eq!(space.index(&buf), idx);
        }
        assert_eq!(space.total(), 1 + 3 + 9 + 27 + 81);
        assert_eq!(space.offsets.len(), 6);
    }

    #[test]
    fn closure_edges_match_single_steps() {
        let g = DirectedGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let rels = relations_of(&g);
        let space = WordSpace::new(3, 4).unwrap();
        let mut uf = closure(&space, &rels);
        let mut buf = Vec::new();
        for idx in 0..space.count_up_to(3) {
            space.decode(idx, &mut buf);
            let w: Word = buf.iter().map(|&x| VertexId(x)).collect();
            for nb in single_step_neighbors(&w, &rels) {
                if nb.len() <= 4 {
                    let letters: Vec<u8> = nb.letters().iter().map(|v| v.0).collect();
                    assert_eq!(uf.find(idx as u32), uf.find(space.index(&letters) as u32));
                }
            }
        }
    }

    #[test]
    fn edge_has_five_classes() {
        let g = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let oc = oracle_classes(&g, 4, 2).unwrap();
        assert_eq!(oc.class_count(), 5);
        let aba = Word::from_indices(&[0, 1, 0]);
        let ab = Word::from_indices(&[0, 1]);
        assert_eq!(oc.same_class(&aba, &ab), Some(true));
    }

    #[test]
    fn single_vertex() {
        let g = DirectedGraph::empty(1).unwrap();
        let oc = oracle_classes(&g, 2, 1).unwrap();
        assert_eq!(oc.class_count(), 2);
        assert_eq!(
            oc.same_class(&Word::from_indices(&[0]), &Word::from_indices(&[0, 0])),
            Some(true)
        );
    }

    #[test]
    fn agreement() {
        let vee = DirectedGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let r = oracle_agreement(&vee, 4, 2, 10_000).unwrap();
        assert!(r.agrees(), "{r:?}");
        assert!(matches!(r, OracleAgreement::Finite { classes: 13, .. }));
        let tri = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(oracle_agreement(&tri, 4, 2, 2_000).unwrap(), OracleAgreement::BothUnbounded);
    }

    #[test]
    fn triangle_is_unstable() {
        let g = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for max_len in [3, 5, 6] {
            assert!(matches!(oracle_classes(&g, max_len, 2), Err(HkError::Unstable(_))));
        }
    }
}

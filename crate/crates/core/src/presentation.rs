//! The defining relations of `HK_Γ` and word-level operations on them.

use std::collections::BTreeSet;

use crate::error::{HkError, Result};
use crate::graph::{DirectedGraph, SubgraphSpec, VertexId};
use crate::rewrite::RewriteSystem;
use crate::word::{ContentSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `xx = x`
    Idempotent,
    /// `yx = xy` for non-adjacent `x`, `y`
    Commute,
    /// `xyx = xy` or `yxy = xy` for an edge `x -> y`
    Arrow,
    /// `xyx = yxy` for an unoriented edge
    Braid,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub kind: RelationKind,
}

impl Relation {
    fn new(lhs: &[VertexId], rhs: &[VertexId], kind: RelationKind) -> Self {
        Relation {
            lhs: Word::new(lhs.to_vec()),
            rhs: Word::new(rhs.to_vec()),
            kind,
        }
    }
}

/// Every defining relation of `HK_g`: one idempotent relation per vertex, one
/// commutation per non-adjacent pair, two identities per oriented edge and one
/// braid relation per unoriented edge.
pub fn relations_of(g: &DirectedGraph) -> Vec<Relation> {
    let mut rels: Vec<Relation> = g
        .vertices()
        .map(|x| Relation::new(&[x, x], &[x], RelationKind::Idempotent))
        .collect();
    let vs: Vec<VertexId> = g.vertices().collect();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            match (g.has_edge(x, y), g.has_edge(y, x)) {
                (false, false) => rels.push(Relation::new(&[y, x], &[x, y], RelationKind::Commute)),
                (true, false) => {
                    rels.push(Relation::new(&[x, y, x], &[x, y], RelationKind::Arrow));
                    rels.push(Relation::new(&[y, x, y], &[x, y], RelationKind::Arrow));
                }
                (false, true) => {
                    rels.push(Relation::new(&[y, x, y], &[y, x], RelationKind::Arrow));
                    rels.push(Relation::new(&[x, y, x], &[y, x], RelationKind::Arrow));
                }
                (true, true) => rels.push(Relation::new(&[x, y, x], &[y, x, y], RelationKind::Braid)),
            }
        }
    }
    rels
}

pub fn content(w: &Word) -> ContentSet {
    w.content()
}

/// Every word reachable from `w` by applying one relation, in either
/// direction, at one position.
pub fn single_step_neighbors(w: &Word, rels: &[Relation]) -> BTreeSet<Word> {
    let letters = w.letters();
    let mut out = BTreeSet::new();
    for rel in rels {
        for (from, to) in [(&rel.lhs, &rel.rhs), (&rel.rhs, &rel.lhs)] {
            let pat = from.letters();
            if pat.is_empty() || pat.len() > letters.len() {
                continue;
            }
            for p in 0..=letters.len() - pat.len() {
                if &letters[p..p + pat.len()] == pat {
                    let mut next = Vec::with_capacity(letters.len() + to.len());
                    next.extend_from_slice(&letters[..p]);
                    next.extend_from_slice(to.letters());
                    next.extend_from_slice(&letters[p + pat.len()..]);
                    out.insert(Word::new(next));
                }
            }
        }
    }
    out
}

/// Deletes superfluous occurrences of each target so the result is
/// multiplicity free with respect to all of them and equivalent to `w`.
///
/// Sources (and isolated vertices) keep their leftmost occurrence, sinks keep
/// their rightmost.
pub fn mf_reduce(g: &DirectedGraph, w: &Word, targets: SubgraphSpec) -> Result<Word> {
    let boundary = g.sources_and_sinks();
    if let Some(bad) = targets.difference(boundary).first() {
        return Err(HkError::NotSourceOrSink(bad));
    }
    let letters = w.letters();
    let mut keep = vec![true; letters.len()];
    for a in targets.iter() {
        let positions: Vec<usize> = (0..letters.len()).filter(|&i| letters[i] == a).collect();
        let Some((&first, &last)) = positions.first().zip(positions.last()) else {
            continue;
        };
        let survivor = if g.is_source(a) { first } else { last };
        for p in positions {
            keep[p] = p == survivor;
        }
    }
    Ok(letters
        .iter()
        .zip(keep)
        .filter_map(|(&v, k)| k.then_some(v))
        .collect())
}

/// The canonical projection onto the full subgraph `keep`: deletes every other
/// letter. Vertex ids are unchanged.
pub fn canonical_projection(w: &Word, keep: SubgraphSpec) -> Word {
    w.letters().iter().copied().filter(|&v| keep.contains(v)).collect()
}

/// The representative `w_n` of the multiplicity-free element of `w`, built by
/// inserting `v_1, v_2, ...` (canonical order) to the left or right according
/// to the relative position of each consecutive pair in `w`.
pub fn mf_normal_form(g: &DirectedGraph, w: &Word) -> Result<Word> {
    let order = g.canonical_order().ok_or(HkError::NotTypeA)?;
    if !w.is_multiplicity_free() {
        return Err(HkError::NotMultiplicityFree);
    }
    let mut out: std::collections::VecDeque<VertexId> = Default::default();
    let mut prev_pos: Option<usize> = None;
    for &v in order {
        let pos = w.position(v);
        match (pos, prev_pos) {
            (None, _) => {}
            (Some(p), Some(q)) if p < q => out.push_front(v),
            (Some(_), _) => out.push_back(v),
        }
        prev_pos = pos;
    }
    Ok(out.into_iter().collect())
}

/// Whether the element of `w` contains a multiplicity-free word.
///
/// First strips duplicate sources and sinks, then searches the permutations
/// of the content for a word with the same normal form. Exponential in the
/// content size; meant for desk-scale graphs of type A_n.
pub fn is_multiplicity_free_element(rs: &RewriteSystem, g: &DirectedGraph, w: &Word) -> Result<bool> {
    Ok(mf_representative(rs, g, w)?.is_some())
}

/// A multiplicity-free word equivalent to `w`, if one exists.
pub fn mf_representative(rs: &RewriteSystem, g: &DirectedGraph, w: &Word) -> Result<Option<Word>> {
    if !g.is_type_an() {
        return Err(HkError::NotTypeA);
    }
    if w.is_multiplicity_free() {
        return Ok(Some(w.clone()));
    }
    let reduced = mf_reduce(g, w, g.sources_and_sinks())?;
    if reduced.is_multiplicity_free() {
        return Ok(Some(reduced));
    }
    let target = rs.normal_form(w)?;
    let letters: Vec<VertexId> = w.content().iter().collect();
    let mut found = None;
    for_each_permutation(&letters, &mut |perm| {
        if found.is_none() {
            let candidate = Word::new(perm.to_vec());
            if rs.normal_form(&candidate).ok().as_ref() == Some(&target) {
                found = Some(candidate);
            }
        }
    });
    Ok(found)
}

pub(crate) fn for_each_permutation(items: &[VertexId], f: &mut dyn FnMut(&[VertexId])) {
    fn go(buf: &mut Vec<VertexId>, k: usize, f: &mut dyn FnMut(&[VertexId])) {
        if k == buf.len() {
            f(buf);
            return;
        }
        for i in k..buf.len() {
            buf.swap(k, i);
            go(buf, k + 1, f);
            buf.swap(k, i);
        }
    }
    let mut buf = items.to_vec();
    go(&mut buf, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix)
    }

    fn edge() -> DirectedGraph {
        DirectedGraph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn relation_lists() {
        let single = DirectedGraph::empty(1).unwrap();
        let rels = relations_of(&single);
        assert_eq!(rels.len(), 1);
        assert_eq!((rels[0].lhs.clone(), rels[0].rhs.clone()), (w(&[0, 0]), w(&[0])));

        let rels: Vec<(Word, Word)> = relations_of(&edge()).into_iter().map(|r| (r.lhs, r.rhs)).collect();
        assert_eq!(
            rels,
            vec![
                (w(&[0, 0]), w(&[0])),
                (w(&[1, 1]), w(&[1])),
                (w(&[0, 1, 0]), w(&[0, 1])),
                (w(&[1, 0, 1]), w(&[0, 1])),
            ]
        );

        let rels: Vec<(Word, Word)> = relations_of(&DirectedGraph::empty(2).unwrap())
            .into_iter()
            .map(|r| (r.lhs, r.rhs))
            .collect();
        assert_eq!(rels[2], (w(&[1, 0]), w(&[0, 1])));

        let unoriented = DirectedGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(relations_of(&unoriented)[2].kind, RelationKind::Braid);
        for r in relations_of(&unoriented) {
            assert_ne!(r.lhs, r.rhs);
        }
    }

    #[test]
    fn neighbors() {
        let rels = relations_of(&edge());
        let n = single_step_neighbors(&w(&[0, 0]), &rels);
        assert!(n.contains(&w(&[0])) && n.contains(&w(&[0, 0, 0])));
        let n = single_step_neighbors(&w(&[0, 1]), &rels);
        for expect in [w(&[0, 0, 1]), w(&[0, 1, 1]), w(&[0, 1, 0]), w(&[1, 0, 1])] {
            assert!(n.contains(&expect), "missing {expect:?}");
        }
        assert!(single_step_neighbors(&Word::empty(), &rels).is_empty());
    }

    #[test]
    fn mf_reduce_keeps_the_right_occurrence() {
        let g = edge();
        assert_eq!(mf_reduce(&g, &w(&[0, 1, 0]), g.all()).unwrap(), w(&[0, 1]));
        assert_eq!(mf_reduce(&g, &w(&[1, 0, 1]), g.all()).unwrap(), w(&[0, 1]));
        assert_eq!(mf_reduce(&g, &w(&[1, 0]), g.all()).unwrap(), w(&[1, 0]));
        let chain = DirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            mf_reduce(&chain, &w(&[1, 1]), VertexSet::singleton(VertexId(1))),
            Err(HkError::NotSourceOrSink(VertexId(1)))
        ));
    }

    #[test]
    fn projection() {
        let keep: VertexSet = [VertexId(0), VertexId(2)].into_iter().collect();
        assert_eq!(canonical_projection(&w(&[0, 1, 2]), keep), w(&[0, 2]));
        assert_eq!(canonical_projection(&Word::empty(), keep), Word::empty());
        assert_eq!(canonical_projection(&w(&[2, 1, 0]), VertexSet::full(3)), w(&[2, 1, 0]));
    }

    #[test]
    fn phi_worked_example() {
        // a=v1 .. f=v6 on a chain
        let g = DirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let word = Word::parse("cfadb", &g).unwrap();
        let image = mf_normal_form(&g, &word).unwrap();
        assert_eq!(image.display(&g).to_string(), "cabdf");
        assert_eq!(mf_normal_form(&g, &w(&[0])).unwrap(), w(&[0]));
        assert_eq!(mf_normal_form(&edge(), &w(&[1, 0])).unwrap(), w(&[1, 0]));
        assert!(matches!(mf_normal_form(&edge(), &w(&[0, 1, 0])), Err(HkError::NotMultiplicityFree)));
    }
}

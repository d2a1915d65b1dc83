use std::collections::HashMap;
use std::fmt::Write as _;

use super::RewriteSystem;
use crate::error::{HkError, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::word::{ContentSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// All elements of a finite `HK_Γ` as normal forms, in shortlex order, with
/// the right Cayley graph over the generators.
#[derive(Debug, Clone)]
pub struct ElementTable {
    normal_forms: Vec<Word>,
    index: HashMap<Word, ElementId>,
    /// `cayley[e][x]` is `e * x` for vertex index `x`.
    cayley: Vec<Vec<ElementId>>,
    /// Each non-identity normal form is its parent's normal form plus a letter.
    parent: Vec<Option<(ElementId, VertexId)>>,
    contents: Vec<ContentSet>,
}

/// Stored normal forms may average at most this many letters per allowed
/// element; infinite monoids grow long normal forms long before the count cap.
const LETTERS_PER_ELEMENT: usize = 64;

/// Breadth-first enumeration from the empty word, multiplying on the right by
/// generators in priority order.
///
/// Fails with `CapExceeded` once more than `cap` elements are found or the
/// stored normal forms exceed `64 * cap` letters in total.
pub fn enumerate(rs: &RewriteSystem, g: &DirectedGraph, cap: usize) -> Result<ElementTable> {
    if !rs.is_complete() {
        return Err(HkError::NotComplete);
    }
    if rs.alphabet_size() != g.vertex_count() {
        return Err(HkError::InvalidVertex(rs.alphabet_size()));
    }
    let n = g.vertex_count();
    let mut t = ElementTable {
        normal_forms: vec![Word::empty()],
        index: HashMap::from([(Word::empty(), ElementId::IDENTITY)]),
        cayley: Vec::new(),
        parent: vec![None],
        contents: vec![ContentSet::EMPTY],
    };
    let letter_budget = cap.saturating_mul(LETTERS_PER_ELEMENT);
    let mut letters_stored = 0usize;
    let mut i = 0;
    while i < t.normal_forms.len() {
        let mut row = vec![ElementId::IDENTITY; n];
        for &x in rs.priority() {
            let mut letters = t.normal_forms[i].letters().to_vec();
            letters.push(x);
            let nf = Word::new(rs.reduce(&letters));
            let id = match t.index.get(&nf) {
                Some(&id) => id,
                None => {
                    let id = ElementId(t.normal_forms.len() as u32);
                    letters_stored += nf.len();
                    if t.normal_forms.len() >= cap || letters_stored > letter_budget {
                        return Err(HkError::CapExceeded { cap });
                    }
                    debug_assert_eq!(nf.len(), t.normal_forms[i].len() + 1);
                    t.contents.push(nf.content());
                    t.index.insert(nf.clone(), id);
                    t.normal_forms.push(nf);
                    t.parent.push(Some((ElementId(i as u32), x)));
                    id
                }
            };
            row[x.index()] = id;
        }
        t.cayley.push(row);
        i += 1;
    }
    Ok(t)
}

impl ElementTable {
    pub fn len(&self) -> usize {
        self.normal_forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normal_forms.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.cayley.first().map_or(0, Vec::len)
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.normal_forms.len() as u32).map(ElementId)
    }

    pub fn normal_forms(&self) -> &[Word] {
        &self.normal_forms
    }

    pub fn normal_form(&self, e: ElementId) -> &Word {
        &self.normal_forms[e.index()]
    }

    pub fn content(&self, e: ElementId) -> ContentSet {
        self.contents[e.index()]
    }

    pub fn parent(&self, e: ElementId) -> Option<(ElementId, VertexId)> {
        self.parent[e.index()]
    }

    pub fn lookup(&self, nf: &Word) -> Option<ElementId> {
        self.index.get(nf).copied()
    }

    #[inline]
    pub fn right_mul(&self, e: ElementId, x: VertexId) -> ElementId {
        self.cayley[e.index()][x.index()]
    }

    /// The element represented by an arbitrary word.
    pub fn element_of(&self, w: &Word) -> ElementId {
        w.letters()
            .iter()
            .fold(ElementId::IDENTITY, |e, &x| self.right_mul(e, x))
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.normal_forms[b.index()]
            .letters()
            .iter()
            .fold(a, |e, &x| self.right_mul(e, x))
    }

    pub fn pow(&self, e: ElementId, k: usize) -> ElementId {
        (0..k).fold(ElementId::IDENTITY, |acc, _| self.mul(acc, e))
    }

    /// Text export: normal forms one per line in shortlex order, then one
    /// Cayley row per element (right multiplication by vertex 0, 1, ...).
    pub fn export(&self, g: &DirectedGraph) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# elements {}", self.len());
        for nf in &self.normal_forms {
            let _ = writeln!(out, "{}", nf.display(g));
        }
        let _ = writeln!(out, "# cayley {} {}", self.len(), self.generators());
        for row in &self.cayley {
            let line: Vec<String> = row.iter().map(|e| e.0.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Elements with `e * e = e`.
pub fn idempotents(t: &ElementTable) -> Vec<ElementId> {
    t.ids().filter(|&e| t.mul(e, e) == e).collect()
}

/// Whether the idempotents correspond one-to-one, via their content, with the
/// full subgraphs of `g` that have no oriented cycle.
pub fn idempotent_bijection_holds(t: &ElementTable, g: &DirectedGraph) -> bool {
    let mut contents: Vec<ContentSet> = idempotents(t).into_iter().map(|e| t.content(e)).collect();
    contents.sort();
    let before = contents.len();
    contents.dedup();
    if contents.len() != before {
        return false;
    }
    let mut acyclic = g.acyclic_subsets();
    acyclic.sort();
    contents == acyclic
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPower {
    /// All checks passed.
    pub holds: bool,
    /// Smallest `k` with `[w]^k = [w]^(k+1)`.
    pub stable_from: usize,
    /// `[w]^m` for `m` the content size.
    pub power: ElementId,
}

/// For `w` whose content spans an acyclic full subgraph, checks that
/// `[w]^m` (`m` = content size) is stable under further powers and is the
/// unique idempotent with that content, i.e. the zero of the content subgraph.
pub fn zero_power_check(t: &ElementTable, g: &DirectedGraph, w: &Word) -> Result<ZeroPower> {
    let c = w.content();
    if g.has_oriented_cycle(c) {
        return Err(HkError::HasCycle);
    }
    let e = t.element_of(w);
    let m = c.len();
    let mut powers = vec![ElementId::IDENTITY];
    while powers.len() <= m + 1 || powers[powers.len() - 1] != powers[powers.len() - 2] {
        let next = t.mul(*powers.last().unwrap(), e);
        powers.push(next);
        if powers.len() > m + t.len() + 2 {
            break;
        }
    }
    let stable_from = (0..powers.len() - 1)
        .find(|&k| powers[k] == powers[k + 1])
        .unwrap_or(usize::MAX);
    let zero = powers[m];
    let same_content_idempotents: Vec<ElementId> = idempotents(t)
        .into_iter()
        .filter(|&i| t.content(i) == c)
        .collect();
    let holds = powers[m + 1] == zero
        && t.mul(zero, zero) == zero
        && t.content(zero) == c
        && same_content_idempotents == [zero]
        && stable_from <= m;
    Ok(ZeroPower {
        holds,
        stable_from,
        power: zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{CompletionLimits, DEFAULT_CAP};

    fn table(g: &DirectedGraph) -> ElementTable {
        let rs = RewriteSystem::for_graph(g, CompletionLimits::default()).unwrap();
        enumerate(&rs, g, DEFAULT_CAP).unwrap()
    }

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix)
    }

    #[test]
    fn small_monoids() {
        assert_eq!(table(&DirectedGraph::empty(0).unwrap()).len(), 1);
        let edge = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let t = table(&edge);
        assert_eq!(t.normal_forms(), &[w(&[]), w(&[0]), w(&[1]), w(&[0, 1]), w(&[1, 0])]);
        let vee = DirectedGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(table(&vee).len(), 13);
    }

    #[test]
    fn idempotents_of_edge() {
        let edge = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let t = table(&edge);
        let ids: Vec<Word> = idempotents(&t).into_iter().map(|e| t.normal_form(e).clone()).collect();
        assert_eq!(ids, vec![w(&[]), w(&[0]), w(&[1]), w(&[0, 1])]);
        assert!(idempotent_bijection_holds(&t, &edge));
    }

    #[test]
    fn zero_powers() {
        let edge = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let t = table(&edge);
        let z = zero_power_check(&t, &edge, &w(&[0, 1])).unwrap();
        assert!(z.holds);
        assert!(z.stable_from <= 2);
        assert_eq!(t.normal_form(z.power), &w(&[0, 1]));
        let z = zero_power_check(&t, &edge, &w(&[1])).unwrap();
        assert!(z.holds);
        assert_eq!(z.stable_from, 1);

        let chain = DirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let t = table(&chain);
        let z = zero_power_check(&t, &chain, &w(&[0, 1, 2])).unwrap();
        assert!(z.holds && z.stable_from <= 3);

        let tri = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(zero_power_check(&t, &tri, &w(&[0, 1, 2])), Err(HkError::HasCycle)));
    }

    #[test]
    fn export_format() {
        let edge = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let text = table(&edge).export(&edge);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# elements 5");
        assert_eq!(&lines[1..6], &["-", "a", "b", "ab", "ba"]);
        assert_eq!(lines[6], "# cayley 5 2");
        assert_eq!(lines[7], "1 2");
    }
}

use std::fmt;

use crate::error::{HkError, Result};
use crate::graph::{DirectedGraph, VertexId, VertexSet};

/// A word in the free monoid over the vertices. Equality is structural;
/// equality of monoid elements goes through the rewrite engine.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<VertexId>);

/// The set of letters occurring in a word.
pub type ContentSet = VertexSet;

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<VertexId>) -> Self {
        Word(letters)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| VertexId::new(i)).collect())
    }

    pub fn letter(v: VertexId) -> Self {
        Word(vec![v])
    }

    pub fn letters(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<VertexId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, v: VertexId) {
        self.0.push(v);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn content(&self) -> ContentSet {
        self.0.iter().copied().collect()
    }

    pub fn count(&self, v: VertexId) -> usize {
        self.0.iter().filter(|&&x| x == v).count()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.content().len() == self.len()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    /// Whether `self` embeds order-preservingly into `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    /// Relabels letters through `map` (new index -> old vertex), the inverse of
    /// [`DirectedGraph::induced`]'s map. Letters outside the map are dropped.
    pub fn reindex_into(&self, map: &[VertexId]) -> Word {
        Word(
            self.0
                .iter()
                .filter_map(|v| map.iter().position(|m| m == v).map(VertexId::new))
                .collect(),
        )
    }

    /// Inverse of [`Word::reindex_into`].
    pub fn reindex_from(&self, map: &[VertexId]) -> Word {
        Word(self.0.iter().map(|v| map[v.index()]).collect())
    }

    /// Parses whitespace-separated labels or indices, or a run of
    /// single-character labels such as `aba`. `-` is the empty word.
    pub fn parse(text: &str, g: &DirectedGraph) -> Result<Word> {
        let text = text.trim();
        if text == "-" || text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(v) = resolve(tok, g) {
                letters.push(v);
                continue;
            }
            for ch in tok.chars() {
                let mut buf = [0u8; 4];
                let v = resolve(ch.encode_utf8(&mut buf), g).ok_or_else(|| {
                    HkError::parse(0, format!("unknown vertex `{ch}` in word `{text}`"))
                })?;
                letters.push(v);
            }
        }
        Ok(Word(letters))
    }

    pub fn display<'a>(&'a self, g: &'a DirectedGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph: g }
    }
}

fn resolve(tok: &str, g: &DirectedGraph) -> Option<VertexId> {
    if let Some(v) = g.vertex_by_label(tok) {
        return Some(v);
    }
    match tok.parse::<usize>() {
        Ok(i) if i < g.vertex_count() => Some(VertexId::new(i)),
        _ => None,
    }
}

impl FromIterator<VertexId> for Word {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a DirectedGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("-");
        }
        let short = self.graph.labels().iter().all(|l| l.chars().count() == 1);
        for (i, &v) in self.word.letters().iter().enumerate() {
            if i > 0 && !short {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.label(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g = DirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let w = Word::parse("aba", &g).unwrap();
        assert_eq!(w, Word::from_indices(&[0, 1, 0]));
        assert_eq!(Word::parse("0 2 1", &g).unwrap(), Word::from_indices(&[0, 2, 1]));
        assert_eq!(Word::parse("-", &g).unwrap(), Word::empty());
        assert_eq!(w.display(&g).to_string(), "aba");
        assert_eq!(Word::empty().display(&g).to_string(), "-");
        assert!(Word::parse("abz", &g).is_err());
    }

    #[test]
    fn content_and_subwords() {
        let w = Word::from_indices(&[0, 1, 0]);
        assert_eq!(w.content().len(), 2);
        assert!(Word::empty().content().is_empty());
        assert!(Word::from_indices(&[0, 0]).is_subword_of(&w));
        assert!(!Word::from_indices(&[1, 1]).is_subword_of(&w));
        assert!(!w.is_multiplicity_free());
    }
}

//! Deciding equality in `HK_Γ`: shortlex Knuth-Bendix completion of the
//! defining relations, element enumeration over the completed system, and an
//! independent union-find oracle over bounded words.

mod oracle;
mod table;

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{HkError, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::presentation::{relations_of, Relation};
use crate::word::Word;

pub use oracle::{oracle_agreement, oracle_classes, OracleAgreement, OracleClasses};
pub use table::{
    enumerate, idempotent_bijection_holds, idempotents, zero_power_check, ElementId, ElementTable,
    ZeroPower,
};

/// Default element cap for enumeration; `HK_CAP` overrides it in the CLI.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_rule_len: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 20_000,
            max_rule_len: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// A string rewriting system whose rules decrease in shortlex order.
///
/// The order compares length first, then letters by their position in
/// `priority`.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: usize,
    priority: Vec<VertexId>,
    rank: Vec<u8>,
    rules: Vec<Rule>,
    complete: bool,
    index: HashMap<Vec<VertexId>, usize>,
    lhs_lens: Vec<usize>,
}

impl RewriteSystem {
    fn new(alphabet: usize, priority: Vec<VertexId>) -> Self {
        let mut rank = vec![0u8; alphabet];
        for (r, v) in priority.iter().enumerate() {
            rank[v.index()] = r as u8;
        }
        RewriteSystem {
            alphabet,
            priority,
            rank,
            rules: Vec::new(),
            complete: false,
            index: HashMap::new(),
            lhs_lens: Vec::new(),
        }
    }

    /// Completes the presentation of `HK_g` with the default priority: the
    /// canonical order for type-A_n graphs, vertex order otherwise.
    pub fn for_graph(g: &DirectedGraph, limits: CompletionLimits) -> Result<Self> {
        complete(&relations_of(g), g.vertex_count(), &default_priority(g), limits)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn priority(&self) -> &[VertexId] {
        &self.priority
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn shortlex_cmp(&self, a: &[VertexId], b: &[VertexId]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|v| self.rank[v.index()])
                .cmp(b.iter().map(|v| self.rank[v.index()]))
        })
    }

    /// Leftmost-innermost reduction: scans left to right and rewrites the
    /// shortest redex ending at the earliest position.
    pub fn reduce(&self, w: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = Vec::with_capacity(w.len());
        let mut input: Vec<VertexId> = w.iter().rev().copied().collect();
        'next: while let Some(x) = input.pop() {
            out.push(x);
            for &len in &self.lhs_lens {
                if len > out.len() {
                    break;
                }
                let start = out.len() - len;
                if let Some(&r) = self.index.get(&out[start..]) {
                    out.truncate(start);
                    input.extend(self.rules[r].rhs.letters().iter().rev());
                    continue 'next;
                }
            }
        }
        out
    }

    /// The unique irreducible word equivalent to `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        if !self.complete {
            return Err(HkError::NotComplete);
        }
        Ok(Word::new(self.reduce(w.letters())))
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lhs.letters().to_vec(), i))
            .collect();
        self.lhs_lens = self.rules.iter().map(|r| r.lhs.len()).collect();
        self.lhs_lens.sort_unstable();
        self.lhs_lens.dedup();
    }
}

/// Canonical order for type-A_n graphs, vertex order otherwise.
pub fn default_priority(g: &DirectedGraph) -> Vec<VertexId> {
    match g.canonical_order() {
        Some(order) => order.to_vec(),
        None => g.vertices().collect(),
    }
}

/// Completes `HK_g` with default limits and enumerates it.
pub fn enumerate_graph(g: &DirectedGraph, cap: usize) -> Result<(RewriteSystem, ElementTable)> {
    let rs = RewriteSystem::for_graph(g, CompletionLimits::default())?;
    let t = enumerate(&rs, g, cap)?;
    Ok((rs, t))
}

/// Working state of the completion procedure. Rules are kept in a slot vector
/// so ids stay stable while interreduction deletes entries.
struct Completion {
    sys: RewriteSystem,
    slots: Vec<Option<Rule>>,
    len_counts: Vec<usize>,
    live: usize,
    limits: CompletionLimits,
}

impl Completion {
    fn sync_lens(&mut self) {
        self.sys.lhs_lens = self
            .len_counts
            .iter()
            .enumerate()
            .filter_map(|(l, &c)| (c > 0).then_some(l))
            .collect();
    }

    fn remove(&mut self, id: usize) -> Rule {
        let rule = self.slots[id].take().expect("live rule");
        self.sys.index.remove(rule.lhs.letters());
        self.len_counts[rule.lhs.len()] -= 1;
        self.live -= 1;
        rule
    }

    fn insert(&mut self, lhs: Vec<VertexId>, rhs: Vec<VertexId>) -> usize {
        let id = self.slots.len();
        if self.len_counts.len() <= lhs.len() {
            self.len_counts.resize(lhs.len() + 1, 0);
        }
        self.len_counts[lhs.len()] += 1;
        self.sys.index.insert(lhs.clone(), id);
        // Keep `sys.rules` addressable by slot id for `reduce`.
        let rule = Rule {
            lhs: Word::new(lhs),
            rhs: Word::new(rhs),
        };
        self.sys.rules.push(rule.clone());
        self.slots.push(Some(rule));
        self.live += 1;
        self.sync_lens();
        id
    }

    fn set_rhs(&mut self, id: usize, rhs: Vec<VertexId>) {
        let rhs = Word::new(rhs);
        self.sys.rules[id].rhs = rhs.clone();
        if let Some(r) = self.slots[id].as_mut() {
            r.rhs = rhs;
        }
    }

    /// Adds `u = v` as a rule unless both sides already reduce to the same
    /// word, then interreduces.
    fn add_equation(&mut self, u: Vec<VertexId>, v: Vec<VertexId>) -> Result<(), ()> {
        let mut queue = vec![(u, v)];
        while let Some((u, v)) = queue.pop() {
            let u = self.sys.reduce(&u);
            let v = self.sys.reduce(&v);
            let (lhs, rhs) = match self.sys.shortlex_cmp(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            if lhs.len() > self.limits.max_rule_len {
                return Err(());
            }
            let new_id = self.insert(lhs.clone(), rhs);
            self.sync_lens();
            for id in 0..self.slots.len() {
                if id == new_id {
                    continue;
                }
                let Some(rule) = &self.slots[id] else { continue };
                if contains_factor(rule.lhs.letters(), &lhs) {
                    let old = self.remove(id);
                    self.sync_lens();
                    queue.push((old.lhs.into_letters(), old.rhs.into_letters()));
                } else if contains_factor(rule.rhs.letters(), &lhs) {
                    let reduced = self.sys.reduce(rule.rhs.letters());
                    self.set_rhs(id, reduced);
                }
            }
            if self.live > self.limits.max_rules {
                return Err(());
            }
        }
        Ok(())
    }

    fn rule(&self, id: usize) -> Option<&Rule> {
        self.slots[id].as_ref()
    }

    /// Critical pairs from suffixes of `a`'s lhs overlapping prefixes of `b`'s.
    fn overlaps(&self, a: usize, b: usize) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
        let (Some(ra), Some(rb)) = (self.rule(a), self.rule(b)) else {
            return Vec::new();
        };
        let (la, lb) = (ra.lhs.letters(), rb.lhs.letters());
        let mut pairs = Vec::new();
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] == lb[..k] {
                let mut left = ra.rhs.letters().to_vec();
                left.extend_from_slice(&lb[k..]);
                let mut right = la[..la.len() - k].to_vec();
                right.extend_from_slice(rb.rhs.letters());
                pairs.push((left, right));
            }
        }
        pairs
    }

    fn run(&mut self) -> Result<(), ()> {
        let mut i = 0;
        while i < self.slots.len() {
            let mut j = 0;
            while j <= i && self.slots[i].is_some() {
                if self.slots[j].is_some() {
                    let mut pairs = self.overlaps(i, j);
                    if i != j {
                        pairs.extend(self.overlaps(j, i));
                    }
                    for (u, v) in pairs {
                        self.add_equation(u, v)?;
                    }
                }
                j += 1;
            }
            i += 1;
        }
        Ok(())
    }

    /// Checks every critical pair of the current system.
    fn locally_confluent(&self) -> bool {
        let live: Vec<usize> = (0..self.slots.len()).filter(|&i| self.slots[i].is_some()).collect();
        live.iter().all(|&a| {
            live.iter().all(|&b| {
                self.overlaps(a, b)
                    .into_iter()
                    .all(|(u, v)| self.sys.reduce(&u) == self.sys.reduce(&v))
            })
        })
    }

    fn finish(mut self, complete: bool) -> RewriteSystem {
        let mut rules: Vec<Rule> = self.slots.into_iter().flatten().collect();
        let sys = &self.sys;
        rules.sort_by(|a, b| {
            sys.shortlex_cmp(a.lhs.letters(), b.lhs.letters())
                .then_with(|| sys.shortlex_cmp(a.rhs.letters(), b.rhs.letters()))
        });
        self.sys.rules = rules;
        self.sys.complete = complete;
        self.sys.rebuild_index();
        self.sys
    }
}

fn contains_factor(hay: &[VertexId], needle: &[VertexId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Knuth-Bendix completion of `rels` over an alphabet of `alphabet` letters,
/// ordered shortlex by `priority` (smallest first).
///
/// On success the system is confluent and terminating. If the limits are hit,
/// the partial system is returned inside [`HkError::LimitExceeded`].
pub fn complete(
    rels: &[Relation],
    alphabet: usize,
    priority: &[VertexId],
    limits: CompletionLimits,
) -> Result<RewriteSystem> {
    let mut sorted = priority.to_vec();
    sorted.sort();
    if sorted != (0..alphabet).map(VertexId::new).collect::<Vec<_>>() {
        return Err(HkError::InvalidVertex(alphabet));
    }
    let mut c = Completion {
        sys: RewriteSystem::new(alphabet, priority.to_vec()),
        slots: Vec::new(),
        len_counts: Vec::new(),
        live: 0,
        limits,
    };
    let mut outcome = Ok(());
    for rel in rels {
        outcome = c.add_equation(rel.lhs.letters().to_vec(), rel.rhs.letters().to_vec());
        if outcome.is_err() {
            break;
        }
    }
    if outcome.is_ok() {
        loop {
            outcome = c.run();
            if outcome.is_err() || c.locally_confluent() {
                break;
            }
        }
    }
    match outcome {
        Ok(()) => Ok(c.finish(true)),
        Err(()) => Err(HkError::LimitExceeded(Box::new(c.finish(false)))),
    }
}

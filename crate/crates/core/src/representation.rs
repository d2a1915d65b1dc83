//! The weighted representation `R_f` of `HK_Γ` on the free module spanned by
//! the vertices.
//!
//! Convention: matrices act on column vectors and column `v` of a matrix is
//! the image of basis vector `v`. The atomic map `θ_x` fixes every `y != x`
//! and sends `x` to `Σ_{z -> x} f_zx · z`. A word acts by composing its
//! letters in word order, so `R_f(uv) = R_f(u) · R_f(v)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{HkError, Result};
use crate::graph::{build_zn, DirectedGraph, VertexId, VertexSet, ZGraph};
use crate::matrix::IntMatrix;
use crate::presentation::{canonical_projection, relations_of, Relation};
use crate::rewrite::{enumerate_graph, ElementId, ElementTable, DEFAULT_CAP};
use crate::word::Word;

/// Edge weights `f_xy`, defined on exactly the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    weights: BTreeMap<(VertexId, VertexId), BigInt>,
    allow_zero: bool,
}

impl WeightFunction {
    /// Validates that `weights` covers exactly the edges of `g` and, unless
    /// `allow_zero`, that no weight is zero.
    pub fn from_map(
        g: &DirectedGraph,
        weights: BTreeMap<(VertexId, VertexId), BigInt>,
        allow_zero: bool,
    ) -> Result<Self> {
        let edges = g.edges();
        if weights.len() != edges.len() || edges.iter().any(|e| !weights.contains_key(e)) {
            return Err(HkError::InvalidWeights(
                "weights must be given on exactly the edges of the graph".into(),
            ));
        }
        if !allow_zero {
            if let Some(((u, v), _)) = weights.iter().find(|(_, w)| w.is_zero()) {
                return Err(HkError::InvalidWeights(format!(
                    "weight on {}->{} is zero",
                    g.label(*u),
                    g.label(*v)
                )));
            }
        }
        Ok(WeightFunction { weights, allow_zero })
    }

    pub fn from_fn(g: &DirectedGraph, f: impl Fn(VertexId, VertexId) -> BigInt) -> Result<Self> {
        Self::from_map(g, g.edges().into_iter().map(|(u, v)| ((u, v), f(u, v))).collect(), false)
    }

    pub fn constant(g: &DirectedGraph, c: i64) -> Result<Self> {
        Self::from_fn(g, |_, _| BigInt::from(c))
    }

    /// `f_{a v_i} = 1`, `f_{v_i b} = 2^i` on `Z_n`.
    pub fn zn(z: &ZGraph) -> Self {
        Self::from_fn(&z.graph, |u, v| {
            if u == z.a {
                BigInt::one()
            } else {
                let i = z.middle_index(u).expect("middle vertex");
                debug_assert_eq!(v, z.b);
                BigInt::one() << i
            }
        })
        .expect("weights on every edge")
    }

    /// Parses `u->v=w,...` (labels or indices; `u>v=w` also accepted). Edges
    /// not mentioned get `base`; without a base every edge must be listed.
    pub fn parse(g: &DirectedGraph, spec: &str, base: Option<i64>, allow_zero: bool) -> Result<Self> {
        let mut weights: BTreeMap<(VertexId, VertexId), BigInt> = match base {
            Some(c) => g.edges().into_iter().map(|e| (e, BigInt::from(c))).collect(),
            None => BTreeMap::new(),
        };
        let bad = |msg: String| HkError::InvalidWeights(msg);
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (edge, value) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected edge=value, got `{item}`")))?;
            let (u, v) = edge
                .split_once("->")
                .or_else(|| edge.split_once('>'))
                .ok_or_else(|| bad(format!("expected u->v, got `{edge}`")))?;
            let resolve = |tok: &str| {
                let tok = tok.trim();
                g.vertex_by_label(tok)
                    .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < g.vertex_count()).map(VertexId::new))
                    .ok_or_else(|| bad(format!("unknown vertex `{tok}`")))
            };
            let (u, v) = (resolve(u)?, resolve(v)?);
            if !g.has_edge(u, v) {
                return Err(bad(format!("{}->{} is not an edge", g.label(u), g.label(v))));
            }
            let value: BigInt = value
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad weight `{}`", value.trim())))?;
            weights.insert((u, v), value);
        }
        Self::from_map(g, weights, allow_zero)
    }

    pub fn allow_zero(&self) -> bool {
        self.allow_zero
    }

    /// `f_uv`, zero when `u -> v` is not an edge.
    pub fn weight(&self, u: VertexId, v: VertexId) -> BigInt {
        self.weights.get(&(u, v)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &BigInt)> {
        self.weights.iter()
    }

    /// Restriction to a full subgraph; `map[i]` is the ambient vertex of the
    /// subgraph's vertex `i`, as returned by [`DirectedGraph::induced`].
    pub fn restrict(&self, map: &[VertexId]) -> WeightFunction {
        let weights = self
            .weights
            .iter()
            .filter_map(|((u, v), w)| {
                let nu = map.iter().position(|m| m == u)?;
                let nv = map.iter().position(|m| m == v)?;
                Some(((VertexId::new(nu), VertexId::new(nv)), w.clone()))
            })
            .collect();
        WeightFunction {
            weights,
            allow_zero: self.allow_zero,
        }
    }
}

/// Precomputed atomic columns of `R_f` for one graph.
#[derive(Debug, Clone)]
pub struct Representation {
    n: usize,
    /// `columns[x]` lists the nonzero entries `(z, f_zx)` of column `x` of `θ_x`.
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl Representation {
    pub fn new(g: &DirectedGraph, f: &WeightFunction) -> Self {
        let columns = g
            .vertices()
            .map(|x| {
                g.in_neighbors(x)
                    .iter()
                    .map(|z| (z.index(), f.weight(z, x)))
                    .filter(|(_, w)| !w.is_zero())
                    .collect()
            })
            .collect();
        Representation {
            n: g.vertex_count(),
            columns,
        }
    }

    pub fn atomic(&self, x: VertexId) -> IntMatrix {
        self.right_mul(&IntMatrix::identity(self.n), x)
    }

    /// `m · θ_x`.
    pub fn right_mul(&self, m: &IntMatrix, x: VertexId) -> IntMatrix {
        m.mul_column_map(x.index(), &self.columns[x.index()])
    }

    pub fn image(&self, w: &Word) -> IntMatrix {
        w.letters()
            .iter()
            .fold(IntMatrix::identity(self.n), |m, &x| self.right_mul(&m, x))
    }

    /// Images of every element, built along the table's parent tree.
    pub fn element_images(&self, t: &ElementTable) -> Vec<IntMatrix> {
        let mut out: Vec<IntMatrix> = Vec::with_capacity(t.len());
        for e in t.ids() {
            let m = match t.parent(e) {
                None => IntMatrix::identity(self.n),
                Some((p, x)) => self.right_mul(&out[p.index()], x),
            };
            out.push(m);
        }
        out
    }
}

/// The atomic matrix `θ_x`.
pub fn atomic(g: &DirectedGraph, f: &WeightFunction, x: VertexId) -> IntMatrix {
    Representation::new(g, f).atomic(x)
}

/// `R_f(w)`; the empty word maps to the identity.
pub fn represent(g: &DirectedGraph, f: &WeightFunction, w: &Word) -> IntMatrix {
    Representation::new(g, f).image(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefined {
    pub ok: bool,
    /// Relations whose sides map to different matrices.
    pub failures: Vec<Relation>,
}

/// Checks `R_f(lhs) = R_f(rhs)` for every defining relation.
pub fn check_well_defined(g: &DirectedGraph, f: &WeightFunction) -> WellDefined {
    let rep = Representation::new(g, f);
    let failures: Vec<Relation> = relations_of(g)
        .into_iter()
        .filter(|r| rep.image(&r.lhs) != rep.image(&r.rhs))
        .collect();
    WellDefined {
        ok: failures.is_empty(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Effectiveness {
    pub effective: bool,
    pub elements: usize,
    pub distinct_matrices: usize,
    /// First pair of distinct elements (in table order) with equal images.
    pub collision: Option<(ElementId, ElementId)>,
}

/// Whether `R_f` separates all elements of the enumerated monoid.
///
/// Graphs with unoriented edges are rejected unless `f` was built with
/// `allow_zero`.
pub fn check_effective(g: &DirectedGraph, f: &WeightFunction, t: &ElementTable) -> Result<Effectiveness> {
    if g.has_unoriented_edges() && !f.allow_zero() {
        return Err(HkError::UnorientedEdge);
    }
    if t.is_empty() || (t.generators() != g.vertex_count()) {
        return Err(HkError::TableIncomplete);
    }
    let images = Representation::new(g, f).element_images(t);
    let mut seen: HashMap<&IntMatrix, ElementId> = HashMap::with_capacity(images.len());
    let mut collision = None;
    for (e, m) in t.ids().zip(&images) {
        // HashMap confirms full equality on hash collisions.
        if let Some(&first) = seen.get(m) {
            collision.get_or_insert((first, e));
        } else {
            seen.insert(m, e);
        }
    }
    Ok(Effectiveness {
        effective: collision.is_none(),
        elements: t.len(),
        distinct_matrices: seen.len(),
        collision,
    })
}

/// Column `a` of `R_f(w)` equals column `a` of the source graph's own
/// representation applied to the projection of `w` onto `S_a`, for every
/// sample word.
pub fn check_source_graph_lemma(g: &DirectedGraph, f: &WeightFunction, words: &[Word], a: VertexId) -> bool {
    let s = g.source_graph(a);
    let (sub, map) = g.induced(s);
    let rep = Representation::new(g, f);
    let sub_rep = Representation::new(&sub, &f.restrict(&map));
    let a_sub = map.iter().position(|&m| m == a).expect("a lies in its source graph");
    words.iter().all(|w| {
        let full = rep.image(w).column(a.index());
        let proj = canonical_projection(w, s).reindex_into(&map);
        let small = sub_rep.image(&proj).column(a_sub);
        let mut lifted = vec![BigInt::zero(); g.vertex_count()];
        for (i, v) in small.into_iter().enumerate() {
            lifted[map[i].index()] = v;
        }
        full == lifted
    })
}

/// Compares, for every sample word, the minor of `R_f(w)` on `sub` with the
/// subgraph's representation `R_f'` of the projected word. This is the
/// action on `X/Y` in the basis of `sub`. With `strict`, a `sub` that is not
/// path complete is an error; otherwise the comparison runs and may fail.
pub fn check_path_complete_minor(
    g: &DirectedGraph,
    f: &WeightFunction,
    sub: VertexSet,
    words: &[Word],
    strict: bool,
) -> Result<bool> {
    if strict && !g.is_path_complete(sub) {
        return Err(HkError::NotPathComplete);
    }
    let (small, map) = g.induced(sub);
    let rep = Representation::new(g, f);
    let sub_rep = Representation::new(&small, &f.restrict(&map));
    Ok(words.iter().all(|w| {
        let minor = rep.image(w).minor(sub);
        let proj = canonical_projection(w, sub).reindex_into(&map);
        minor == sub_rep.image(&proj)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePowers {
    pub holds: bool,
    /// 2-adic exponent of the single nonzero entry of `R_f(w^k)(v_1)`, for
    /// `k = 1..=kmax`; `None` where that column is not a single nonzero entry.
    pub exponents: Vec<Option<u64>>,
    pub pairwise_distinct: bool,
}

/// On an oriented cycle, follows the orbit of `v_1` (the smallest vertex)
/// under `R_f(w^k)` and checks that the 2-adic exponent strictly increases
/// and that the images are pairwise distinct.
pub fn check_cycle_powers(g: &DirectedGraph, f: &WeightFunction, w: &Word, kmax: usize) -> Result<CyclePowers> {
    let all = g.all();
    if w.content() != all {
        return Err(HkError::NotFullContent);
    }
    let is_cycle = g.vertex_count() >= 2
        && g.vertices().all(|v| g.in_neighbors(v).len() == 1 && g.out_neighbors(v).len() == 1)
        && g.has_oriented_cycle(all)
        && {
            // one cycle through every vertex
            let start = VertexId(0);
            let mut v = g.out_neighbors(start).first().expect("out-degree 1");
            let mut steps = 1;
            while v != start {
                v = g.out_neighbors(v).first().expect("out-degree 1");
                steps += 1;
            }
            steps == g.vertex_count()
        };
    if !is_cycle {
        return Err(HkError::BadOrientation("not an oriented cycle".into()));
    }
    let rep = Representation::new(g, f);
    let step = rep.image(w);
    let mut power = IntMatrix::identity(g.vertex_count());
    let mut images = Vec::with_capacity(kmax);
    let mut exponents = Vec::with_capacity(kmax);
    for _ in 0..kmax {
        power = power.mul(&step);
        let col = power.column(0);
        let nonzero: Vec<&BigInt> = col.iter().filter(|x| !x.is_zero()).collect();
        exponents.push(match nonzero.as_slice() {
            [x] => Some(x.abs().trailing_zeros().unwrap_or(0)),
            _ => None,
        });
        images.push(power.clone());
    }
    let increasing = exponents.iter().all(Option::is_some)
        && exponents.windows(2).all(|p| p[0] < p[1]);
    let pairwise_distinct = images.iter().collect::<std::collections::HashSet<_>>().len() == images.len();
    Ok(CyclePowers {
        holds: increasing && pairwise_distinct,
        exponents,
        pairwise_distinct,
    })
}

/// The five word shapes that cover `HK_{Z_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZnWordType {
    /// Increasing product of middles, no `a`, no `b`.
    Middles,
    /// `w1 a w2`, multiplicity free.
    WithA,
    /// `w1 b w2`, multiplicity free.
    WithB,
    /// `w1 a w2 b w3`, `c(w2)` disjoint from `c(w1)` and `c(w3)`.
    AThenB,
    /// `w1 b w2 a w3`, same restrictions, `w2` nonempty.
    BThenA,
}

impl ZnWordType {
    pub const ALL: [ZnWordType; 5] = [
        ZnWordType::Middles,
        ZnWordType::WithA,
        ZnWordType::WithB,
        ZnWordType::AThenB,
        ZnWordType::BThenA,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnReport {
    pub n: usize,
    pub effectiveness: Effectiveness,
    /// Elements per word type.
    pub type_counts: [usize; 5],
    /// Elements reached by no type word.
    pub uncovered: usize,
    /// Elements reached by words of two or more types.
    pub ambiguous: usize,
    /// Number of type words generated and whether distinct type words always
    /// give distinct elements.
    pub type_words: usize,
    pub type_words_injective: bool,
}

impl ZnReport {
    pub fn taxonomy_ok(&self) -> bool {
        self.uncovered == 0 && self.ambiguous == 0
    }

    pub fn passed(&self) -> bool {
        self.effectiveness.effective && self.taxonomy_ok()
    }
}

/// Every word of the five shapes on `Z_n`, tagged with its shape.
pub fn zn_type_words(z: &ZGraph) -> Vec<(ZnWordType, Word)> {
    let m = z.middles.len();
    let inc = |mask: u64| -> Vec<VertexId> { (0..m).filter(|j| mask >> j & 1 == 1).map(|j| z.middles[j]).collect() };
    let join = |parts: &[&[VertexId]]| -> Word { parts.iter().flat_map(|p| p.iter().copied()).collect() };
    let mut out = Vec::new();
    let full = 1u64 << m;
    for s in 0..full {
        out.push((ZnWordType::Middles, Word::new(inc(s))));
    }
    for s1 in 0..full {
        let rest = (full - 1) & !s1;
        let mut s2 = rest;
        loop {
            let (w1, w2) = (inc(s1), inc(s2));
            out.push((ZnWordType::WithA, join(&[&w1, &[z.a], &w2])));
            out.push((ZnWordType::WithB, join(&[&w1, &[z.b], &w2])));
            if s2 == 0 {
                break;
            }
            s2 = (s2 - 1) & rest;
        }
    }
    // Each middle goes to w2 alone or to any subset of {w1, w3}.
    let choices = 5usize.pow(m as u32);
    for code in 0..choices {
        let (mut s1, mut s2, mut s3) = (0u64, 0u64, 0u64);
        let mut c = code;
        for j in 0..m {
            match c % 5 {
                0 => {}
                1 => s1 |= 1 << j,
                2 => s3 |= 1 << j,
                3 => {
                    s1 |= 1 << j;
                    s3 |= 1 << j;
                }
                _ => s2 |= 1 << j,
            }
            c /= 5;
        }
        let (w1, w2, w3) = (inc(s1), inc(s2), inc(s3));
        out.push((ZnWordType::AThenB, join(&[&w1, &[z.a], &w2, &[z.b], &w3])));
        if s2 != 0 {
            out.push((ZnWordType::BThenA, join(&[&w1, &[z.b], &w2, &[z.a], &w3])));
        }
    }
    out
}

/// Enumerates `HK_{Z_n}`, checks that the weights `f_{a v_i} = 1`,
/// `f_{v_i b} = 2^i` give an effective representation, and classifies every
/// element by the five word shapes.
pub fn zn_representation_check(n: usize) -> Result<ZnReport> {
    let z = build_zn(n)?;
    let f = WeightFunction::zn(&z);
    zn_check_with(&z, &f)
}

/// [`zn_representation_check`] with caller-chosen weights.
pub fn zn_check_with(z: &ZGraph, f: &WeightFunction) -> Result<ZnReport> {
    let (_, t) = enumerate_graph(&z.graph, DEFAULT_CAP)?;
    let effectiveness = check_effective(&z.graph, f, &t)?;
    let words = zn_type_words(z);
    let mut types = vec![0u8; t.len()];
    let mut hit = vec![false; t.len()];
    let mut injective = true;
    for (ty, w) in &words {
        let e = t.element_of(w).index();
        types[e] |= 1 << ZnWordType::ALL.iter().position(|x| x == ty).expect("listed");
        if std::mem::replace(&mut hit[e], true) {
            injective = false;
        }
    }
    let mut type_counts = [0usize; 5];
    let (mut uncovered, mut ambiguous) = (0, 0);
    for &bits in &types {
        match bits.count_ones() {
            0 => uncovered += 1,
            1 => type_counts[bits.trailing_zeros() as usize] += 1,
            _ => ambiguous += 1,
        }
    }
    Ok(ZnReport {
        n: z.graph.vertex_count(),
        effectiveness,
        type_counts,
        uncovered,
        ambiguous,
        type_words: words.len(),
        type_words_injective: injective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingReport {
    pub glued: bool,
    pub first: bool,
    pub second: bool,
    /// `glued == (first && second)`.
    pub holds: bool,
}

/// Runs effectiveness on `Γ = Γ_1 ∪ Γ_2` (with the extension of `f1`, `f2`)
/// and on both pieces, and reports whether the biconditional holds.
///
/// `f1` and `f2` are weight functions on the induced pieces, indexed as
/// [`DirectedGraph::induced`] numbers them.
pub fn gluing_effectiveness(
    g: &DirectedGraph,
    sub1: VertexSet,
    sub2: VertexSet,
    f1: &WeightFunction,
    f2: &WeightFunction,
) -> Result<GluingReport> {
    validate_gluing(g, sub1, sub2)?;
    let (g1, map1) = g.induced(sub1);
    let (g2, map2) = g.induced(sub2);
    let mut weights = BTreeMap::new();
    for (f, map) in [(f1, &map1), (f2, &map2)] {
        for ((u, v), w) in f.iter() {
            weights.insert((map[u.index()], map[v.index()]), w.clone());
        }
    }
    let f = WeightFunction::from_map(g, weights, f1.allow_zero() || f2.allow_zero())?;
    let run = |g: &DirectedGraph, f: &WeightFunction| -> Result<bool> {
        let (_, t) = enumerate_graph(g, DEFAULT_CAP)?;
        Ok(check_effective(g, f, &t)?.effective)
    };
    let glued = run(g, &f)?;
    let first = run(&g1, f1)?;
    let second = run(&g2, f2)?;
    Ok(GluingReport {
        glued,
        first,
        second,
        holds: glued == (first && second),
    })
}

/// Checks that two full subgraphs cover `g`, meet in one vertex that is a
/// source or sink of `g`, and carry every edge. Returns the glue vertex.
pub fn validate_gluing(g: &DirectedGraph, sub1: VertexSet, sub2: VertexSet) -> Result<VertexId> {
    let meet = sub1.intersection(sub2);
    if meet.len() != 1 {
        return Err(HkError::BadGluing("pieces must share exactly one vertex".into()));
    }
    if sub1.union(sub2) != g.all() {
        return Err(HkError::BadGluing("pieces must cover every vertex".into()));
    }
    let a = meet.first().expect("one vertex");
    if !g.sources_and_sinks().contains(a) {
        return Err(HkError::BadGluing(format!("{} is neither a source nor a sink", g.label(a))));
    }
    let inside = |s: VertexSet, u: VertexId, v: VertexId| s.contains(u) && s.contains(v);
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| !inside(sub1, u, v) && !inside(sub2, u, v)) {
        return Err(HkError::BadGluing(format!(
            "edge {}->{} lies in neither piece",
            g.label(u),
            g.label(v)
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        DirectedGraph::from_edges(n, &edges).unwrap()
    }

    fn int(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn w(g: &DirectedGraph, s: &str) -> Word {
        Word::parse(s, g).unwrap()
    }

    #[test]
    fn atomic_maps() {
        let single = DirectedGraph::empty(1).unwrap();
        let f = WeightFunction::constant(&single, 1).unwrap();
        assert_eq!(atomic(&single, &f, VertexId(0)), int(&[&[0]]));

        let g = chain(2);
        let f = WeightFunction::constant(&g, 1).unwrap();
        // theta_b sends b to a and fixes a
        assert_eq!(atomic(&g, &f, VertexId(1)), int(&[&[1, 1], &[0, 0]]));
        assert_eq!(atomic(&g, &f, VertexId(0)), int(&[&[0, 0], &[0, 1]]));

        let tri = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = WeightFunction::constant(&tri, 2).unwrap();
        let t1 = atomic(&tri, &f, VertexId(1));
        assert_eq!(t1.column(1), vec![BigInt::from(2), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn words_and_relations() {
        let g = chain(2);
        let f = WeightFunction::constant(&g, 1).unwrap();
        assert_eq!(represent(&g, &f, &Word::empty()), IntMatrix::identity(2));
        assert_eq!(represent(&g, &f, &w(&g, "aa")), represent(&g, &f, &w(&g, "a")));
        assert_eq!(represent(&g, &f, &w(&g, "aba")), represent(&g, &f, &w(&g, "ab")));
        assert!(check_well_defined(&g, &f).ok);
        let empty = DirectedGraph::empty(0).unwrap();
        assert!(check_well_defined(&empty, &WeightFunction::constant(&empty, 1).unwrap()).ok);
    }

    #[test]
    fn unoriented_edge() {
        let g = DirectedGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let f = WeightFunction::constant(&g, 1).unwrap();
        let wd = check_well_defined(&g, &f);
        assert!(!wd.ok);
        assert_eq!(wd.failures.len(), 1);
        assert_eq!(wd.failures[0].kind, crate::presentation::RelationKind::Braid);

        // v = 0, w = 1, f_vw = 0, f_wv = 1
        let zero = WeightFunction::parse(&g, "a->b=0,b->a=1", None, true).unwrap();
        let (_, t) = enumerate_graph(&g, DEFAULT_CAP).unwrap();
        assert_eq!(t.len(), 6);
        let eff = check_effective(&g, &zero, &t).unwrap();
        let (x, y) = eff.collision.unwrap();
        assert_eq!(t.normal_form(x).display(&g).to_string(), "ba");
        assert_eq!(t.normal_form(y).display(&g).to_string(), "aba");
        assert!(matches!(check_effective(&g, &f, &t), Err(HkError::UnorientedEdge)));
    }

    #[test]
    fn weights_validation() {
        let g = chain(3);
        assert!(WeightFunction::constant(&g, 0).is_err());
        assert!(WeightFunction::parse(&g, "a->b=2", None, false).is_err());
        let f = WeightFunction::parse(&g, "a->b=2", Some(1), false).unwrap();
        assert_eq!(f.weight(VertexId(0), VertexId(1)), BigInt::from(2));
        assert_eq!(f.weight(VertexId(1), VertexId(2)), BigInt::one());
        assert!(WeightFunction::parse(&g, "a->c=2", Some(1), false).is_err());
        assert!(WeightFunction::parse(&g, "0>1=3,1>2=-4", None, false).is_ok());
    }

    #[test]
    fn effective_on_chains() {
        for n in 1..=4 {
            let g = chain(n);
            let (_, t) = enumerate_graph(&g, DEFAULT_CAP).unwrap();
            for c in [1, 2, -3] {
                let f = WeightFunction::constant(&g, c).unwrap();
                assert!(check_effective(&g, &f, &t).unwrap().effective, "n={n} c={c}");
            }
        }
    }

    #[test]
    fn source_graph_lemma() {
        let g = chain(3);
        let f = WeightFunction::constant(&g, 1).unwrap();
        let words: Vec<Word> = ["cb", "abc", "cba", "", "c", "bcab"].iter().map(|s| w(&g, s)).collect();
        for a in g.vertices() {
            assert!(check_source_graph_lemma(&g, &f, &words, a));
        }
    }

    #[test]
    fn path_complete_minor() {
        let g = chain(3);
        let f = WeightFunction::constant(&g, 1).unwrap();
        let words: Vec<Word> = ["bc", "abc", "cba", "ba", "ab"].iter().map(|s| w(&g, s)).collect();
        let ab: VertexSet = [VertexId(0), VertexId(1)].into_iter().collect();
        assert!(check_path_complete_minor(&g, &f, ab, &words, true).unwrap());
        assert!(check_path_complete_minor(&g, &f, g.all(), &words, true).unwrap());

        let ac: VertexSet = [VertexId(0), VertexId(2)].into_iter().collect();
        assert!(matches!(
            check_path_complete_minor(&g, &f, ac, &words, true),
            Err(HkError::NotPathComplete)
        ));
        assert!(!check_path_complete_minor(&g, &f, ac, &[w(&g, "bc")], false).unwrap());
        // R_1([bc])(c) = a
        let m = represent(&g, &f, &w(&g, "bc"));
        assert_eq!(m.column(2), vec![BigInt::one(), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn cycle_powers() {
        let tri = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = WeightFunction::constant(&tri, 2).unwrap();
        let r = check_cycle_powers(&tri, &f, &w(&tri, "abc"), 10).unwrap();
        assert!(r.holds && r.pairwise_distinct);
        assert_eq!(r.exponents.len(), 10);
        assert!(check_cycle_powers(&tri, &f, &w(&tri, "abc"), 1).unwrap().holds);
        assert!(matches!(
            check_cycle_powers(&tri, &f, &w(&tri, "ab"), 3),
            Err(HkError::NotFullContent)
        ));
        let ones = WeightFunction::constant(&tri, 1).unwrap();
        assert!(!check_cycle_powers(&tri, &ones, &w(&tri, "abc"), 3).unwrap().holds);
    }

    #[test]
    fn zn_small() {
        let r = zn_representation_check(4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.type_counts.iter().sum::<usize>(), r.effectiveness.elements);
    }

    #[test]
    fn gluing() {
        // a -> b <- c glued at b
        let g = DirectedGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let s1: VertexSet = [VertexId(0), VertexId(1)].into_iter().collect();
        let s2: VertexSet = [VertexId(1), VertexId(2)].into_iter().collect();
        let (g1, _) = g.induced(s1);
        let (g2, _) = g.induced(s2);
        let f1 = WeightFunction::constant(&g1, 1).unwrap();
        let f2 = WeightFunction::constant(&g2, 1).unwrap();
        let r = gluing_effectiveness(&g, s1, s2, &f1, &f2).unwrap();
        assert!(r.glued && r.first && r.second && r.holds);

        let single = VertexSet::singleton(VertexId(1));
        let (g0, _) = g.induced(single);
        let f0 = WeightFunction::constant(&g0, 1).unwrap();
        let fall = WeightFunction::constant(&g, 1).unwrap();
        assert!(gluing_effectiveness(&g, g.all(), single, &fall, &f0).unwrap().holds);

        let chain = chain(3);
        let bad1: VertexSet = [VertexId(0), VertexId(1)].into_iter().collect();
        let bad2: VertexSet = [VertexId(1), VertexId(2)].into_iter().collect();
        assert!(matches!(validate_gluing(&chain, bad1, bad2), Err(HkError::BadGluing(_))));
    }
}

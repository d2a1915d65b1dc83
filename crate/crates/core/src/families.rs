//! Built-in graph families and the `--builder` expression language.
//!
//! Expressions: `empty(n)`, `chain(n)`, `alt(n)`, `orient(n,mask)`, `zn(n)`,
//! `triangle`, `cycle(n)`, `kiselman(n)`, `unoriented`, `counterexample`.

use crate::error::{HkError, Result};
use crate::graph::{build_zn, DirectedGraph};

pub fn empty(n: usize) -> Result<DirectedGraph> {
    DirectedGraph::empty(n)
}

/// `v_1 -> v_2 -> ... -> v_n`.
pub fn chain(n: usize) -> Result<DirectedGraph> {
    orientation(n, 0)
}

/// `v_1 -> v_2 <- v_3 -> v_4 <- ...`, with `v_1` a source.
pub fn alternating(n: usize) -> Result<DirectedGraph> {
    let mask = (0..n.saturating_sub(1)).filter(|i| i % 2 == 1).fold(0u64, |m, i| m | 1 << i);
    orientation(n, mask)
}

/// The path on `n` vertices whose edge `i` (between `v_{i+1}` and `v_{i+2}`)
/// points right when bit `i` of `mask` is clear and left when set.
pub fn orientation(n: usize, mask: u64) -> Result<DirectedGraph> {
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| if mask >> (i - 1) & 1 == 0 { (i - 1, i) } else { (i, i - 1) })
        .collect();
    DirectedGraph::from_edges(n, &edges)
}

/// Every orientation of the `n`-vertex path, by mask.
pub fn all_orientations(n: usize) -> Result<Vec<(u64, DirectedGraph)>> {
    let count = 1u64 << n.saturating_sub(1);
    (0..count).map(|m| Ok((m, orientation(n, m)?))).collect()
}

/// `v_1 -> v_2 -> ... -> v_n -> v_1`.
pub fn cycle(n: usize) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(HkError::TooSmall(n));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    DirectedGraph::from_edges(n, &edges)
}

pub fn triangle() -> DirectedGraph {
    cycle(3).expect("valid")
}

/// The complete acyclic graph `κ_n` (`i -> j` for `i < j`), whose monoid is
/// Kiselman's.
pub fn kiselman(n: usize) -> Result<DirectedGraph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    DirectedGraph::from_edges(n, &edges)
}

/// Two vertices joined in both directions.
pub fn unoriented() -> DirectedGraph {
    DirectedGraph::from_edges(2, &[(0, 1), (1, 0)]).expect("valid")
}

/// Parses a builder expression.
pub fn build(expr: &str) -> Result<DirectedGraph> {
    let expr = expr.trim();
    let bad = |msg: String| HkError::parse(0, msg);
    let (name, args) = match expr.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| bad(format!("missing `)` in `{expr}`")))?;
            let args = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_number)
                .collect::<Option<Vec<u64>>>()
                .ok_or_else(|| bad(format!("bad arguments in `{expr}`")))?;
            (name.trim(), args)
        }
        None => (expr, Vec::new()),
    };
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad(format!("`{name}` takes {k} argument(s)")))
        }
    };
    let n = || args[0] as usize;
    match name {
        "empty" => arity(1).and_then(|_| empty(n())),
        "chain" => arity(1).and_then(|_| chain(n())),
        "alt" | "alternating" => arity(1).and_then(|_| alternating(n())),
        "orient" => arity(2).and_then(|_| orientation(n(), args[1])),
        "zn" => arity(1).and_then(|_| Ok(build_zn(n())?.graph)),
        "cycle" => arity(1).and_then(|_| cycle(n())),
        "kiselman" => arity(1).and_then(|_| kiselman(n())),
        "triangle" => arity(0).map(|_| triangle()),
        "unoriented" => arity(0).map(|_| unoriented()),
        "counterexample" => arity(0).and_then(|_| chain(3)),
        _ => Err(bad(format!("unknown builder `{name}`"))),
    }
}

fn parse_number(s: &str) -> Option<u64> {
    match s.strip_prefix("0b") {
        Some(bits) => u64::from_str_radix(bits, 2).ok(),
        None => s.parse().ok(),
    }
}

/// Small graphs used by the verification suites: every family member with at
/// most four vertices plus a few larger acyclic shapes.
pub fn fixtures() -> Vec<(String, DirectedGraph)> {
    let mut out = Vec::new();
    for expr in [
        "empty(0)", "empty(1)", "empty(2)", "empty(3)", "chain(2)", "chain(3)", "chain(4)",
        "alt(3)", "alt(4)", "chain(5)", "alt(5)", "orient(5,6)", "zn(4)", "kiselman(3)", "triangle",
    ] {
        out.push((expr.to_string(), build(expr).expect("fixture builds")));
    }
    for n in 2..=4 {
        for (mask, g) in all_orientations(n).expect("valid") {
            out.push((format!("orient({n},{mask})"), g));
        }
    }
    out.push((
        "vee+isolated".into(),
        DirectedGraph::from_edges(4, &[(0, 1), (2, 1)]).expect("valid"),
    ));
    out.push((
        "star-out".into(),
        DirectedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).expect("valid"),
    ));
    out.push((
        "diamond".into(),
        DirectedGraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("valid"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        assert_eq!(chain(3).unwrap().edges().len(), 2);
        let alt = alternating(4).unwrap();
        assert!(alt.is_source(crate::VertexId(0)));
        assert!(alt.sources_and_sinks() == alt.all());
        assert_eq!(all_orientations(4).unwrap().len(), 8);
        assert_eq!(all_orientations(1).unwrap().len(), 1);
        assert_eq!(all_orientations(0).unwrap().len(), 1);
        assert_eq!(build("orient(3,0b10)").unwrap(), DirectedGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap());
        assert_eq!(build("zn(4)").unwrap().edge_count(), 4);
        assert_eq!(build("triangle").unwrap(), triangle());
        assert_eq!(kiselman(3).unwrap().edge_count(), 3);
        assert!(build("chain").is_err());
        assert!(build("nope(2)").is_err());
        assert!(build("chain(2").is_err());
        assert!(cycle(1).is_err());
    }
}

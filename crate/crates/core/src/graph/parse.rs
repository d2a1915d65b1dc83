use super::DirectedGraph;
use crate::error::{HkError, Result};

/// Parses either the line format (`n <count>` then `e <u> <v>` lines, `#`
/// comments) or a small DOT subset (`digraph { a -> b; }`).
///
/// DOT vertex names become labels and get dense indices in order of first
/// appearance.
pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    let first = text
        .lines()
        .map(|l| strip_comment(l).trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("digraph") {
        parse_dot(text)
    } else {
        parse_lines(text)
    }
}

fn strip_comment(line: &str) -> &str {
    let line = line.split('#').next().unwrap_or("");
    line.split("//").next().unwrap_or("")
}

fn parse_lines(text: &str) -> Result<DirectedGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let num = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| HkError::parse(lineno, "missing number"))?
                .parse()
                .map_err(|_| HkError::parse(lineno, "expected a non-negative integer"))
        };
        match parts.next() {
            Some("n") => {
                if n.is_some() {
                    return Err(HkError::parse(lineno, "duplicate `n` header"));
                }
                n = Some(num(parts.next())?);
            }
            Some("e") => {
                if n.is_none() {
                    return Err(HkError::parse(lineno, "edge before `n` header"));
                }
                edges.push((num(parts.next())?, num(parts.next())?, lineno));
            }
            Some(other) => {
                return Err(HkError::parse(lineno, format!("unknown directive `{other}`")))
            }
            None => unreachable!("blank lines skipped"),
        }
        if parts.next().is_some() {
            return Err(HkError::parse(lineno, "trailing tokens"));
        }
    }
    let n = n.ok_or_else(|| HkError::parse(0, "missing `n` header"))?;
    let mut g = DirectedGraph::empty(n)?;
    for (u, v, lineno) in edges {
        g.push_edge(u, v)
            .map_err(|e| HkError::parse(lineno, e.to_string()))?;
    }
    Ok(g)
}

fn parse_dot(text: &str) -> Result<DirectedGraph> {
    let body: String = text
        .lines()
        .map(strip_comment)
        .collect::<Vec<_>>()
        .join("\n");
    let open = body
        .find('{')
        .ok_or_else(|| HkError::parse(0, "expected `{` after digraph"))?;
    let close = body
        .rfind('}')
        .ok_or_else(|| HkError::parse(0, "missing closing `}`"))?;
    if close < open {
        return Err(HkError::parse(0, "unbalanced braces"));
    }

    let mut names: Vec<String> = Vec::new();
    let index_of = |name: &str, names: &mut Vec<String>| -> usize {
        match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                names.len() - 1
            }
        }
    };
    let mut edges = Vec::new();
    for stmt in body[open + 1..close].split([';', '\n']) {
        // Attributes are ignored.
        let stmt = stmt.split('[').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let nodes: Vec<&str> = stmt.split("->").map(|s| s.trim().trim_matches('"')).collect();
        if nodes.iter().any(|n| n.is_empty() || n.contains(char::is_whitespace)) {
            return Err(HkError::parse(0, format!("cannot parse statement `{stmt}`")));
        }
        let ids: Vec<usize> = nodes.iter().map(|n| index_of(n, &mut names)).collect();
        edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
    }
    let mut g = DirectedGraph::empty(names.len())?;
    for (u, v) in edges {
        g.push_edge(u, v)?;
    }
    g.with_labels(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    #[test]
    fn line_format() {
        let g = parse_graph("# chain\nn 3\ne 0 1\ne 1 2 # tail\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.has_edge(VertexId(1), VertexId(2)));
        assert!(g.is_linearly_ordered());
    }

    #[test]
    fn line_format_errors() {
        assert!(matches!(parse_graph("e 0 1"), Err(HkError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("n 2\ne 0 5"), Err(HkError::Parse { line: 2, .. })));
        assert!(parse_graph("n 2\nx 1").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn dot_subset() {
        let g = parse_graph("digraph G {\n  x -> y;\n  z -> y\n  w\n}").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.labels(), &["x", "y", "z", "w"]);
        assert!(g.has_edge(VertexId(2), VertexId(1)));
        let chain = parse_graph("digraph { a -> b -> c; }").unwrap();
        assert!(chain.is_linearly_ordered());
    }
}

//! Reading and writing graphs as edge lists, graph6 and (write-only) DOT.
//!
//! Edge list layout: a header `n m`, an optional `labels l0 l1 ...` line, then
//! `m` lines `u v` with 0-based ids. Blank lines and lines starting with `#`
//! are skipped. Output lists each edge as `u v` with `u < v`, ascending.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::MAX_VERTICES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFormat {
    Edgelist,
    Graph6,
    Dot,
}

impl GraphFormat {
    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::Edgelist => "edgelist",
            GraphFormat::Graph6 => "graph6",
            GraphFormat::Dot => "dot",
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(GraphFormat::Edgelist),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Edgelist => parse_edgelist(text),
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::Dot => Err(Error::precondition("DOT is an output-only format")),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => write_edgelist(g),
        GraphFormat::Graph6 => write_graph6(g) + "\n",
        GraphFormat::Dot => write_dot(g),
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|f| {
            f.parse()
                .map_err(|_| Error::parse(line_no, format!("'{f}' is not a non-negative integer")))
        })
        .collect()
}

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing 'n m' header"))?;
    let [n, m] = numbers(hline, header)?[..] else {
        return Err(Error::parse(hline, "header must be 'n m'"));
    };
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let mut g = Graph::new(n)?;
    let mut labels = None;
    let mut count = 0;
    for (line_no, line) in lines {
        if let Some(rest) = line.strip_prefix("labels") {
            if labels.is_some() || count > 0 {
                return Err(Error::parse(line_no, "labels must directly follow the header"));
            }
            labels = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            continue;
        }
        let [u, v] = numbers(line_no, line)?[..] else {
            return Err(Error::parse(line_no, "edge line must be 'u v'"));
        };
        g.add_edge(u, v).map_err(|e| Error::parse(line_no, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(Error::parse(hline, format!("header promises {m} edges, found {count}")));
    }
    match labels {
        Some(l) => g.with_labels(l).map_err(|e| Error::parse(hline, e.to_string())),
        None => Ok(g),
    }
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    if let Some(labels) = g.labels() {
        writeln!(out, "labels {}", labels.join(" ")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

const G6_HEADER: &str = ">>graph6<<";

/// Standard graph6: size prefix, then the upper triangle column by column,
/// six bits per printable byte.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n < 63 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        bytes.extend([(n >> 12) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                bytes.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        bytes.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(G6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(1, "graph6 bytes must lie in 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::parse(1, "empty graph6 string")),
        [126, 126, ..] => return Err(Error::parse(1, "graph too large")),
        [126, a, b, c, rest @ ..] => {
            let n = ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63);
            (n, rest)
        }
        [126, ..] => return Err(Error::parse(1, "truncated size prefix")),
        [first, rest @ ..] => (*first as usize - 63, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::parse(
            1,
            format!("expected {} data bytes for {n} vertices, got {}", bits.div_ceil(6), body.len()),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if (bits..body.len() * 6).any(bit) {
        return Err(Error::parse(1, "padding bits must be zero"));
    }
    Ok(g)
}

pub fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v} [label=\"{}\"];", g.label(v).replace('"', "\\\"")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn unlabelled(g: &Graph) -> Graph {
        Graph::from_edges(g.n(), &g.edges().collect::<Vec<_>>()).unwrap()
    }

    fn all_fixtures() -> Vec<Graph> {
        let mut out: Vec<Graph> = fixtures::NAMES.iter().map(|n| fixtures::named(n).unwrap()).collect();
        out.push(Graph::complete(12).unwrap());
        out.push(Graph::cycle(63).unwrap());
        out.push(Graph::cycle(64).unwrap());
        out.push(Graph::new(0).unwrap());
        out.push(Graph::new(1).unwrap());
        out
    }

    #[test]
    fn complete_graph_graph6() {
        assert_eq!(write_graph6(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(write_graph6(&Graph::new(0).unwrap()), "?");
        let p = parse_graph6(">>graph6<<C~\n").unwrap();
        assert_eq!(p, Graph::complete(4).unwrap());
    }

    #[test]
    fn round_trips() {
        for g in all_fixtures() {
            assert_eq!(parse_edgelist(&write_edgelist(&g)).unwrap(), g);
            assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), unlabelled(&g));
        }
    }

    #[test]
    fn edgelist_errors_carry_lines() {
        let cases = [
            ("3 1\n0 0\n", 2),
            ("3 2\n0 1\n1 0\n", 3),
            ("3 1\n0 5\n", 2),
            ("3 1\n0 x\n", 2),
            ("3 2\n0 1\n", 1),
            ("# c\n\n3\n", 3),
        ];
        for (text, line) in cases {
            match parse_edgelist(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let g = parse_edgelist("# triangle\n3 3\nlabels x y z\n0 1\n1 2\n# edge\n0 2\n").unwrap();
        assert_eq!(g.label(2), "z");
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("B\x7f").is_err());
        assert!(parse_graph6("A`").is_err());
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn dot_output() {
        let dot = write_dot(&fixtures::fig1());
        assert_eq!(dot.matches("[label=").count(), 9);
        assert_eq!(dot.matches(" -- ").count(), 19);
        assert!(dot.contains("label=\"v5\""));
        assert!("dot".parse::<GraphFormat>().is_ok());
        assert!(read_graph("", GraphFormat::Dot).is_err());
    }
}

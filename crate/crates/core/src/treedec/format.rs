//! Plain-text decomposition format:
//!
//! ```text
//! td <num-nodes> <width+1> <n>
//! b <node-id> <v1> <v2> ...
//! e <t> <t'>
//! ```
//!
//! Node ids and vertices are 0-based. Lines starting with `#` and blank lines
//! are ignored on input.

use std::fmt::Write as _;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Serializes `d` for a graph on `n` vertices. Bags are written in node order,
/// then edges in ascending order.
pub fn write_decomposition(d: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    writeln!(out, "td {} {} {}", d.node_count(), d.max_bag_size(), n).unwrap();
    for (t, bag) in d.bags().iter().enumerate() {
        write!(out, "b {t}").unwrap();
        for v in *bag {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (a, b) in d.tree().edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

/// Parses the text format, returning the decomposition and the declared
/// vertex count.
pub fn parse_decomposition(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap();
        let nums: Vec<usize> = fields
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("'{f}' is not a non-negative integer")))
            })
            .collect::<Result<_>>()?;

        match (tag, header) {
            ("td", None) => {
                let [nodes, max_bag, n] = nums[..] else {
                    return Err(Error::parse(line_no, "header must be 'td <nodes> <width+1> <n>'"));
                };
                if n > MAX_VERTICES {
                    return Err(Error::SizeLimit {
                        what: "vertex count",
                        limit: MAX_VERTICES,
                        got: n,
                    });
                }
                header = Some((nodes, max_bag, n));
                bags = vec![None; nodes];
            }
            ("td", Some(_)) => return Err(Error::parse(line_no, "repeated header")),
            (_, None) => return Err(Error::parse(line_no, "expected the 'td' header first")),
            ("b", Some((nodes, _, n))) => {
                let Some((&t, members)) = nums.split_first() else {
                    return Err(Error::parse(line_no, "bag line needs a node id"));
                };
                if t >= nodes {
                    return Err(Error::parse(line_no, format!("node {t} out of range 0..{nodes}")));
                }
                if bags[t].is_some() {
                    return Err(Error::parse(line_no, format!("bag {t} given twice")));
                }
                let mut bag = VertexSet::EMPTY;
                for &v in members {
                    if v >= n {
                        return Err(Error::parse(line_no, format!("vertex {v} out of range 0..{n}")));
                    }
                    if bag.contains(v) {
                        return Err(Error::parse(line_no, format!("vertex {v} repeated in bag")));
                    }
                    bag.insert(v);
                }
                bags[t] = Some(bag);
            }
            ("e", Some((nodes, _, _))) => {
                let [a, b] = nums[..] else {
                    return Err(Error::parse(line_no, "edge line must be 'e <t> <t'>'"));
                };
                if a >= nodes || b >= nodes {
                    return Err(Error::parse(line_no, format!("edge {a}-{b} names a missing node")));
                }
                edges.push((a, b));
            }
            (other, Some(_)) => {
                return Err(Error::parse(line_no, format!("unknown line type '{other}'")));
            }
        }
    }

    let (_, max_bag, n) = header.ok_or_else(|| Error::parse(0, "missing 'td' header"))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(t, b)| b.ok_or_else(|| Error::parse(0, format!("bag {t} never given"))))
        .collect::<Result<_>>()?;
    let d = TreeDecomposition::new(bags, &edges)?;
    if d.max_bag_size() != max_bag {
        return Err(Error::parse(
            1,
            format!(
                "header declares width+1 = {max_bag} but the largest bag has {}",
                d.max_bag_size()
            ),
        ));
    }
    Ok((d, n))
}

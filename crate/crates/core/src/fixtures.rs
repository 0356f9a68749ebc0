//! Named example graphs and decompositions.
//!
//! Labels follow the drawings the graphs come from; ids are assigned in label
//! order (`a b c d v1 ...` or `v1 v2 ...`).

use crate::error::{Error, Result};
use crate::gen::KTreeBuilder;
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;

/// Names accepted by [`named`], besides `complete(n)`/`kN` and `cycle(n)`/`cN`.
pub const NAMES: [&str; 6] = ["petersen", "fig1", "fig6", "fig2", "fig3", "fig4"];

/// Names accepted by [`named_decomposition`].
pub const DECOMPOSITION_NAMES: [&str; 3] = ["fig2b", "fig2c", "fig3b"];

fn labelled(labels: &[&str], edges: &[(&str, &str)]) -> Graph {
    let id = |l: &str| labels.iter().position(|&x| x == l).unwrap();
    let pairs: Vec<_> = edges.iter().map(|&(u, v)| (id(u), id(v))).collect();
    Graph::from_edges(labels.len(), &pairs)
        .and_then(|g| g.with_labels(labels.iter().copied()))
        .expect("fixture edge lists are valid")
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The Petersen graph: outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Nine vertices `a b c d v1..v5`: the clique `abcd` with five attached vertices.
pub fn fig1() -> Graph {
    labelled(
        &["a", "b", "c", "d", "v1", "v2", "v3", "v4", "v5"],
        &[
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("a", "d"),
            ("b", "d"),
            ("c", "d"),
            ("b", "v1"),
            ("d", "v1"),
            ("b", "v2"),
            ("d", "v2"),
            ("b", "v3"),
            ("c", "v4"),
            ("v3", "v4"),
            ("v3", "c"),
            ("v4", "b"),
            ("a", "v1"),
            ("a", "v2"),
            ("a", "v5"),
            ("v5", "c"),
        ],
    )
}

/// A treewidth-2 graph on `v1..v8`: the square `v1 v2 v3 v4` with one
/// attached triangle or ear per side.
pub fn fig2() -> Graph {
    labelled(
        &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"],
        &[
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v4"),
            ("v1", "v4"),
            ("v1", "v5"),
            ("v2", "v5"),
            ("v2", "v6"),
            ("v3", "v7"),
            ("v3", "v6"),
            ("v4", "v7"),
            ("v4", "v8"),
            ("v1", "v8"),
        ],
    )
}

fn fig2_decomposition(bags: &[&[&str]], edges: &[(usize, usize)]) -> TreeDecomposition {
    let g = fig2();
    let sets = bags.iter().map(|b| g.set_of(b)).collect();
    TreeDecomposition::new(sets, edges).unwrap()
}

/// Width-3 star decomposition of [`fig2`] that is not full.
pub fn fig2b_decomposition() -> TreeDecomposition {
    fig2_decomposition(
        &[
            &["v1", "v2", "v3", "v4"],
            &["v1", "v2", "v5"],
            &["v2", "v3", "v6"],
            &["v3", "v4", "v7"],
            &["v1", "v4", "v8"],
        ],
        &[(0, 1), (0, 2), (0, 3), (0, 4)],
    )
}

/// Full width-2 decomposition of [`fig2`].
pub fn fig2c_decomposition() -> TreeDecomposition {
    fig2_decomposition(
        &[
            &["v1", "v2", "v3"],
            &["v1", "v3", "v4"],
            &["v1", "v2", "v5"],
            &["v2", "v3", "v6"],
            &["v3", "v4", "v7"],
            &["v1", "v4", "v8"],
        ],
        &[(0, 1), (0, 2), (1, 5), (0, 3), (1, 4)],
    )
}

/// The 3-tree grown from triangle `abc` by attaching `v1..v7`, with the
/// decomposition recorded while building it (node `i` holds `v(i+1)`).
pub fn fig3_with_decomposition() -> (Graph, TreeDecomposition) {
    const ATTACH: [[usize; 3]; 7] = [
        [0, 1, 2], // v1: a b c
        [1, 2, 3], // v2: b c v1
        [0, 2, 3], // v3: a c v1
        [0, 2, 3], // v4: a c v1
        [0, 2, 5], // v5: a c v3
        [0, 5, 7], // v6: a v3 v5
        [2, 3, 6], // v7: c v1 v4
    ];
    let mut b = KTreeBuilder::new(3).unwrap();
    for clique in ATTACH {
        b.attach(clique.iter().collect()).unwrap();
    }
    let (g, d) = b.finish().unwrap();
    let mut labels = vec!["a".to_string(), "b".into(), "c".into()];
    labels.extend(numbered("v", 7));
    (g.with_labels(labels).unwrap(), d)
}

pub fn fig3() -> Graph {
    fig3_with_decomposition().0
}

/// A chordal graph on `v1..v9` with clique number 5.
pub fn fig4() -> Graph {
    let mut edges = Vec::new();
    for u in 1..=5 {
        for v in u + 1..=5 {
            edges.push((u, v));
        }
    }
    edges.extend([(2, 6), (3, 6), (1, 7), (4, 7), (5, 7), (1, 8), (5, 8), (7, 8), (4, 9), (5, 9), (7, 9)]);
    let pairs: Vec<_> = edges.into_iter().map(|(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(9, &pairs)
        .and_then(|g| g.with_labels(numbered("v", 9)))
        .unwrap()
}

fn parse_sized(name: &str) -> Option<(char, usize)> {
    let (kind, rest) = if let Some(r) = name.strip_prefix("complete(") {
        ('k', r.strip_suffix(')')?)
    } else if let Some(r) = name.strip_prefix("cycle(") {
        ('c', r.strip_suffix(')')?)
    } else if let Some(r) = name.strip_prefix(['k', 'K']) {
        ('k', r)
    } else if let Some(r) = name.strip_prefix(['c', 'C']) {
        ('c', r)
    } else {
        return None;
    };
    rest.parse().ok().map(|n| (kind, n))
}

/// Looks up a fixture graph by name.
pub fn named(name: &str) -> Result<Graph> {
    match name {
        "petersen" => Ok(petersen()),
        "fig1" | "fig6" => Ok(fig1()),
        "fig2" => Ok(fig2()),
        "fig3" => Ok(fig3()),
        "fig4" => Ok(fig4()),
        _ => match parse_sized(name) {
            Some(('k', n)) => Graph::complete(n),
            Some((_, n)) => Graph::cycle(n),
            None => Err(Error::UnknownName(name.to_string())),
        },
    }
}

/// Looks up a fixture decomposition together with its graph.
pub fn named_decomposition(name: &str) -> Result<(Graph, TreeDecomposition)> {
    match name {
        "fig2b" => Ok((fig2(), fig2b_decomposition())),
        "fig2c" => Ok((fig2(), fig2c_decomposition())),
        "fig3b" => Ok(fig3_with_decomposition()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

//! Chordal graphs: recognition, maximal cliques and clique trees.

use std::collections::VecDeque;

use serde::Serialize;

use crate::cycles::CycleSeq;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;
use crate::vertex_set::VertexSet;

/// A vertex ordering; perfect when each vertex's later neighbours form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EliminationOrder {
    order: Vec<usize>,
}

impl EliminationOrder {
    pub fn new(g: &Graph, order: Vec<usize>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &v in &order {
            g.check_vertex(v)?;
            seen.insert(v);
        }
        if seen != g.vertices() || order.len() != g.n() {
            return Err(Error::precondition("order is not a permutation of the vertices"));
        }
        Ok(EliminationOrder { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// Neighbours of each vertex that come after it, indexed by vertex.
    fn later_neighbours(&self, g: &Graph) -> Vec<VertexSet> {
        let mut remaining = g.vertices();
        let mut later = vec![VertexSet::EMPTY; g.n()];
        for &v in &self.order {
            remaining.remove(v);
            later[v] = g.neighbors(v) & remaining;
        }
        later
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        let later = self.later_neighbours(g);
        let position = self.positions(g.n());
        self.order.iter().all(|&v| {
            let Some(u) = later[v].iter().min_by_key(|&u| position[u]) else {
                return true;
            };
            later[v].without(u).is_subset(g.neighbors(u))
        })
    }

    fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![0; n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Outcome of [`is_chordal`] with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// An induced cycle of length at least four.
    NotChordal(CycleSeq),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search, ties to the smallest id; returns the reverse
/// of the visit order.
pub fn mcs_order(g: &Graph) -> EliminationOrder {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut unvisited = g.vertices();
    let mut visit = Vec::with_capacity(n);
    while let Some(first) = unvisited.min() {
        let v = unvisited
            .iter()
            .fold(first, |best, v| if weight[v] > weight[best] { v } else { best });
        unvisited.remove(v);
        visit.push(v);
        for u in g.neighbors(v) & unvisited {
            weight[u] += 1;
        }
    }
    visit.reverse();
    EliminationOrder { order: visit }
}

/// Shortest `from`-`to` path inside `allowed`, both ends included.
fn shortest_path(g: &Graph, from: usize, to: usize, allowed: VertexSet) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = VertexSet::singleton(from);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for u in g.neighbors(v) & allowed & !seen {
            seen.insert(u);
            parent[u] = v;
            queue.push_back(u);
        }
    }
    None
}

/// An induced cycle of length at least four, if the graph has one.
///
/// For a vertex `v` with non-adjacent neighbours `u, w`, a shortest `u`-`w`
/// path avoiding the rest of `N[v]` closes a chordless cycle through `v`.
pub fn chordless_cycle(g: &Graph) -> Option<CycleSeq> {
    for v in g.vertices() {
        let nbrs = g.neighbors(v);
        for u in nbrs {
            for w in nbrs & VertexSet::above(u) & !g.neighbors(u) {
                let allowed = g.vertices() - nbrs.with(v) | VertexSet::singleton(u).with(w);
                if let Some(path) = shortest_path(g, u, w, allowed) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(CycleSeq::canonical(cycle));
                }
            }
        }
    }
    None
}

/// Recognizes chordal graphs, returning a perfect elimination order or an
/// induced cycle of length at least four.
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    if order.is_perfect(g) {
        Chordality::Chordal(order)
    } else {
        Chordality::NotChordal(chordless_cycle(g).expect("a graph without a perfect order has a chordless cycle"))
    }
}

fn perfect_order(g: &Graph) -> Result<EliminationOrder> {
    match is_chordal(g) {
        Chordality::Chordal(order) => Ok(order),
        Chordality::NotChordal(_) => Err(Error::NotChordal),
    }
}

/// The maximal cliques of a chordal graph, sorted lexicographically.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    let order = perfect_order(g)?;
    let later = order.later_neighbours(g);
    let candidates: Vec<VertexSet> = order.as_slice().iter().map(|&v| later[v].with(v)).collect();
    let mut cliques: Vec<VertexSet> = candidates
        .iter()
        .copied()
        .filter(|&c| !candidates.iter().any(|&d| c != d && c.is_subset(d)))
        .collect();
    cliques.sort_by(|a, b| a.lex_cmp(*b));
    cliques.dedup();
    Ok(cliques)
}

/// `ω` of a chordal graph.
pub fn omega_chordal(g: &Graph) -> Result<usize> {
    Ok(maximal_cliques(g)?.iter().map(|c| c.len()).max().unwrap_or(0))
}

/// A tree decomposition whose bags are exactly the maximal cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree(TreeDecomposition);

impl CliqueTree {
    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.0
    }

    pub fn into_decomposition(self) -> TreeDecomposition {
        self.0
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

/// Clique tree of a connected chordal graph: a maximum-weight spanning tree
/// of the clique intersection graph, weights being intersection sizes. Ties
/// go to the lexicographically smaller pair of bags.
pub fn build_clique_tree(g: &Graph) -> Result<CliqueTree> {
    let cliques = maximal_cliques(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut pairs = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let w = (cliques[i] & cliques[j]).len();
            if w > 0 {
                pairs.push((w, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut parent: Vec<usize> = (0..cliques.len()).collect();
    let mut edges = Vec::new();
    for (_, i, j) in pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            edges.push((i, j));
        }
    }
    if edges.len() + 1 < cliques.len() {
        return Err(Error::Disconnected);
    }
    Ok(CliqueTree(TreeDecomposition::new(cliques, &edges)?))
}

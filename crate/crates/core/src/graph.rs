//! Simple undirected graphs on dense vertex ids.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one [`VertexSet`] per vertex. Labels are display
/// metadata only; every algorithm works on ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).without(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::precondition("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Adds `uv`. Loops are rejected; re-adding an existing edge is an error too,
    /// so that parsers can report duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidEdge {
                u,
                v,
                reason: "self-loop",
            });
        }
        if self.adj[u].contains(v) {
            return Err(Error::InvalidEdge {
                u,
                v,
                reason: "duplicate edge",
            });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(Error::precondition(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::precondition(format!(
                    "label '{l}' used by vertices {j} and {i}"
                )));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            (self.adj[u] & VertexSet::above(u))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label, or the id itself.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Resolves a list of labels to a vertex set. Panics on unknown labels; meant
    /// for fixtures and tests.
    pub fn set_of(&self, labels: &[&str]) -> VertexSet {
        labels
            .iter()
            .map(|l| {
                self.vertex_by_label(l)
                    .unwrap_or_else(|| panic!("unknown label {l}"))
            })
            .collect()
    }

    /// Resolves a list of labels to a vertex sequence. Panics on unknown labels.
    pub fn seq_of(&self, labels: &[&str]) -> Vec<usize> {
        labels
            .iter()
            .map(|l| {
                self.vertex_by_label(l)
                    .unwrap_or_else(|| panic!("unknown label {l}"))
            })
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).min() {
            Some(v) => Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            }),
            None => Ok(()),
        }
    }

    /// Vertices reachable from `from` inside `allowed` (which must contain `from`).
    #[inline]
    pub fn reach_within(&self, from: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(from);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next |= self.adj[u];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// The subgraph induced by `keep`, relabelled densely in ascending id order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let ids = keep.to_vec();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![VertexSet::EMPTY; ids.len()];
        for (i, &v) in ids.iter().enumerate() {
            adj[i] = (self.adj[v] & keep).iter().map(|u| pos[u]).collect();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| ids.iter().map(|&v| l[v].clone()).collect());
        Graph { adj, labels }
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reach_within(0, self.vertices()) == self.vertices()
    }
}

/// Connected components of `g - s`, each as a vertex set, ordered by least member.
pub fn components_without(g: &Graph, s: VertexSet) -> Result<Vec<VertexSet>> {
    g.check_set(s)?;
    let mut rest = g.vertices() - s;
    let mut out = Vec::new();
    while let Some(v) = rest.min() {
        let comp = g.reach_within(v, rest);
        rest = rest - comp;
        out.push(comp);
    }
    Ok(out)
}

/// Whether `s` separates `x`: two vertices of `x \ s` lie in different
/// components of `g - s`.
pub fn separates(g: &Graph, s: VertexSet, x: VertexSet) -> Result<bool> {
    g.check_set(s)?;
    g.check_set(x)?;
    let outside = x - s;
    match outside.min() {
        None => Ok(false),
        Some(v) => {
            let comp = g.reach_within(v, g.vertices() - s);
            Ok(!outside.is_subset(comp))
        }
    }
}

/// Cut vertices via the low-link DFS.
pub fn cut_vertices(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut cuts = VertexSet::EMPTY;
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, remaining neighbors)
        let mut stack: Vec<(usize, usize, VertexSet)> = vec![(root, usize::MAX, g.neighbors(root))];
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if let Some(w) = frame.2.min() {
                frame.2.remove(w);
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, g.neighbors(w)));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        cuts.insert(p);
                    }
                }
            }
        }
        if root_children > 1 {
            cuts.insert(root);
        }
    }
    cuts
}

/// True iff `g` has at least 3 vertices, is connected and has no cut vertex.
pub fn is_2connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && cut_vertices(g).is_empty()
}

/// Clique number by branch and bound over bitsets (Bron–Kerbosch with pivoting).
pub fn max_clique_size(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, mut cand: VertexSet, mut excl: VertexSet, best: &mut usize) {
        if cand.is_empty() {
            if excl.is_empty() {
                *best = (*best).max(size);
            }
            return;
        }
        if size + cand.len() <= *best {
            return;
        }
        let pivot = (cand | excl)
            .iter()
            .max_by_key(|&u| (g.neighbors(u) & cand).len())
            .unwrap();
        for v in cand - g.neighbors(pivot) {
            let nv = g.neighbors(v);
            expand(g, size + 1, cand & nv, excl & nv, best);
            cand.remove(v);
            excl.insert(v);
        }
    }
    let mut best = 0;
    expand(g, 0, g.vertices(), VertexSet::EMPTY, &mut best);
    best
}

//! Normalization of a decomposition to a full one.

use std::collections::BTreeSet;

use super::{require_valid, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Mutable working copy of a decomposition where nodes can be removed.
struct Workspace {
    bags: Vec<VertexSet>,
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
}

impl Workspace {
    fn new(d: &TreeDecomposition) -> Self {
        let mut adj = vec![BTreeSet::new(); d.node_count()];
        for (a, b) in d.tree().edges() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Workspace {
            bags: d.bags().to_vec(),
            adj,
            alive: vec![true; d.node_count()],
        }
    }

    fn live_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.bags.len() {
            if self.alive[a] {
                out.extend(self.adj[a].iter().filter(|&&b| a < b).map(|&b| (a, b)));
            }
        }
        out
    }

    /// Merges `from` into its neighbour `into`.
    fn contract(&mut self, from: usize, into: usize) {
        let nbrs = std::mem::take(&mut self.adj[from]);
        for x in nbrs {
            self.adj[x].remove(&from);
            if x != into {
                self.adj[x].insert(into);
                self.adj[into].insert(x);
            }
        }
        self.alive[from] = false;
    }

    /// Contracts every tree edge whose one bag contains the other.
    /// Returns whether anything changed.
    fn contract_nested(&mut self) -> bool {
        let mut changed = false;
        loop {
            let nested = self.live_edges().into_iter().find_map(|(a, b)| {
                if self.bags[a].is_subset(self.bags[b]) {
                    Some((a, b))
                } else if self.bags[b].is_subset(self.bags[a]) {
                    Some((b, a))
                } else {
                    None
                }
            });
            match nested {
                Some((from, into)) => {
                    self.contract(from, into);
                    changed = true;
                }
                None => return changed,
            }
        }
    }

    fn finish(self) -> Result<TreeDecomposition> {
        let mut index = vec![usize::MAX; self.bags.len()];
        let mut bags = Vec::new();
        for (t, &bag) in self.bags.iter().enumerate() {
            if self.alive[t] {
                index[t] = bags.len();
                bags.push(bag);
            }
        }
        let edges: Vec<_> = self
            .live_edges()
            .into_iter()
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        TreeDecomposition::new(bags, &edges)
    }
}

/// Merges tree edges whose bags are nested, keeping the larger bag.
pub(super) fn contract_nested(d: &TreeDecomposition) -> Result<TreeDecomposition> {
    let mut ws = Workspace::new(d);
    ws.contract_nested();
    ws.finish()
}

/// Turns a valid decomposition of width at most `k` into one where every bag
/// has `k + 1` vertices and adjacent bags share exactly `k`.
///
/// Nested neighbours are merged, small bags are padded from a neighbour, and
/// every edge whose bags share fewer than `k` vertices is subdivided by nodes
/// that exchange one vertex at a time.
pub fn make_full(g: &Graph, d: &TreeDecomposition, k: usize) -> Result<TreeDecomposition> {
    require_valid(g, d)?;
    let w = d.max_bag_size().saturating_sub(1);
    if w > k {
        return Err(Error::precondition(format!(
            "decomposition has width {w}, more than {k}"
        )));
    }
    if g.n() <= k {
        return Err(Error::precondition(format!(
            "graph has {} vertices, a full width-{k} decomposition needs at least {}",
            g.n(),
            k + 1
        )));
    }

    let mut ws = Workspace::new(d);
    loop {
        ws.contract_nested();
        let live: Vec<usize> = (0..ws.bags.len()).filter(|&t| ws.alive[t]).collect();
        let Some(&small) = live.iter().find(|&&t| ws.bags[t].len() <= k) else {
            break;
        };
        // no neighbour is nested in `small`, so each offers a fresh vertex
        let donor = *ws.adj[small]
            .iter()
            .next()
            .expect("a lone bag holds all n > k vertices");
        let v = (ws.bags[donor] - ws.bags[small]).min().unwrap();
        ws.bags[small].insert(v);
    }

    let base = ws.finish()?;
    let mut bags = base.bags().to_vec();
    let mut edges = Vec::new();
    for (a, b) in base.tree().edges() {
        let (ba, bb) = (bags[a], bags[b]);
        let leaving: Vec<usize> = (ba - bb).to_vec();
        let entering: Vec<usize> = (bb - ba).to_vec();
        let mut prev = a;
        let mut cur = ba;
        for i in 0..leaving.len() - 1 {
            cur = cur.without(leaving[i]).with(entering[i]);
            bags.push(cur);
            let node = bags.len() - 1;
            edges.push((prev, node));
            prev = node;
        }
        edges.push((prev, b));
    }
    TreeDecomposition::new(bags, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::treedec::validate;

    #[test]
    fn figure_two_star_becomes_full() {
        let g = fixtures::fig2();
        let d = fixtures::fig2b_decomposition();
        let full = make_full(&g, &d, 2).unwrap_err();
        assert!(matches!(full, Error::Precondition(_)));
        let full = make_full(&g, &d, 3).unwrap();
        assert!(validate(&g, &full).is_valid());
        assert!(full.is_full(3));
        assert_eq!(full.node_count(), g.n() - 3);
    }

    #[test]
    fn full_input_stays_full() {
        let g = fixtures::fig2();
        let d = fixtures::fig2c_decomposition();
        let out = make_full(&g, &d, 2).unwrap();
        assert!(out.is_full(2));
        assert_eq!(out.node_count(), 6);
    }

    #[test]
    fn single_clique_bag() {
        let g = Graph::complete(4).unwrap();
        let d = TreeDecomposition::from_lists(&[&[0, 1, 2, 3]], &[]).unwrap();
        assert_eq!(make_full(&g, &d, 3).unwrap(), d);
        assert!(make_full(&g, &d, 4).is_err());
    }

    #[test]
    fn widens_a_path_decomposition() {
        let g = Graph::path(6).unwrap();
        let bags: Vec<&[usize]> = vec![&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5]];
        let d = TreeDecomposition::from_lists(&bags, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        for k in 1..=4 {
            let full = make_full(&g, &d, k).unwrap();
            assert!(validate(&g, &full).is_valid(), "k={k}");
            assert!(full.is_full(k), "k={k}");
            assert_eq!(full.node_count(), 6 - k);
        }
    }

    #[test]
    fn disjoint_bags_get_interpolated() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let d = TreeDecomposition::from_lists(&[&[0, 1, 2], &[3, 4, 5]], &[(0, 1)]).unwrap();
        let full = make_full(&g, &d, 2).unwrap();
        assert!(validate(&g, &full).is_valid());
        assert!(full.is_full(2));
        assert_eq!(full.node_count(), 4);
    }
}

//! Exact treewidth by dynamic programming over vertex subsets.
//!
//! `TW(S)` is the best possible maximum elimination degree when the vertices
//! of `S` are eliminated first:
//!
//! `TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)`
//!
//! where `Q(S, v)` is the set of vertices outside `S + v` reachable from `v`
//! through `S`. The treewidth is `TW(V)`.

use serde::Serialize;

use super::full::contract_nested;
use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest vertex count the exact computation accepts.
pub const TREEWIDTH_LIMIT: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreewidthResult {
    pub width: usize,
    /// An optimal elimination order, first eliminated first.
    pub order: Vec<usize>,
    /// A decomposition of width `width` derived from `order`.
    pub decomposition: TreeDecomposition,
}

fn q_size(g: &Graph, s: VertexSet, v: usize) -> usize {
    let inside = g.reach_within(v, s.with(v));
    let mut frontier = VertexSet::EMPTY;
    for u in inside {
        frontier |= g.neighbors(u);
    }
    (frontier - s.with(v)).len()
}

/// `tw(g)` with an optimal elimination order and a matching decomposition.
pub fn exact_treewidth(g: &Graph) -> Result<TreewidthResult> {
    let n = g.n();
    if n > TREEWIDTH_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact treewidth",
            limit: TREEWIDTH_LIMIT,
            got: n,
        });
    }
    let subsets = 1usize << n;
    let mut tw = vec![u8::MAX; subsets];
    tw[0] = 0;
    for mask in 1..subsets {
        let s = VertexSet::from_bits(mask as u64);
        let mut best = u8::MAX;
        for v in s {
            let rest = s.without(v);
            let prev = tw[rest.bits() as usize];
            if prev >= best {
                continue;
            }
            let q = q_size(g, rest, v) as u8;
            best = best.min(prev.max(q));
        }
        tw[mask] = best;
    }

    // walk back from V, each step fixing the last vertex of the prefix
    let mut order = Vec::with_capacity(n);
    let mut s = g.vertices();
    while !s.is_empty() {
        let target = tw[s.bits() as usize];
        let v = s
            .iter()
            .find(|&v| {
                let rest = s.without(v);
                tw[rest.bits() as usize].max(q_size(g, rest, v) as u8) == target
            })
            .expect("some vertex attains the optimum");
        order.push(v);
        s.remove(v);
    }
    order.reverse();

    let width = tw[subsets - 1] as usize;
    let decomposition = contract_nested(&decomposition_of_order(g, &order))?;
    Ok(TreewidthResult {
        width,
        order,
        decomposition,
    })
}

fn check_order(g: &Graph, order: &[usize]) -> Result<()> {
    let mut seen = VertexSet::EMPTY;
    for &v in order {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(Error::precondition(format!("vertex {v} repeated in order")));
        }
        seen.insert(v);
    }
    if seen != g.vertices() {
        return Err(Error::precondition("order is not a permutation of the vertices"));
    }
    Ok(())
}

/// Bags `{v} + later neighbours` of the graph filled in along `order`.
fn elimination_bags(g: &Graph, order: &[usize]) -> Vec<VertexSet> {
    let mut adj: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    let mut remaining = g.vertices();
    let mut bags = Vec::with_capacity(order.len());
    for &v in order {
        remaining.remove(v);
        let later = adj[v] & remaining;
        for u in later {
            adj[u] |= later.without(u);
        }
        bags.push(later.with(v));
    }
    bags
}

/// The largest elimination degree along `order`, a treewidth upper bound.
pub fn treewidth_of_order(g: &Graph, order: &[usize]) -> Result<usize> {
    check_order(g, order)?;
    Ok(elimination_bags(g, order)
        .iter()
        .map(|b| b.len() - 1)
        .max()
        .unwrap_or(0))
}

/// Node `i` holds the bag of `order[i]`; its parent is the node of the
/// earliest-eliminated later neighbour. Roots are chained to the last node.
fn decomposition_of_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let bags = elimination_bags(g, order);
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let last = order.len().saturating_sub(1);
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let parent = bags[i].without(v).iter().map(|u| position[u]).min();
        match parent {
            Some(p) => edges.push((i, p)),
            None if i != last => edges.push((i, last)),
            None => {}
        }
    }
    TreeDecomposition::new(bags, &edges).expect("elimination tree is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::treedec::{validate, width};

    fn check(g: &Graph, expected: usize) {
        let r = exact_treewidth(g).unwrap();
        assert_eq!(r.width, expected);
        assert_eq!(treewidth_of_order(g, &r.order).unwrap(), expected);
        assert!(validate(g, &r.decomposition).is_valid());
        assert_eq!(width(g, &r.decomposition).unwrap(), expected);
    }

    #[test]
    fn small_families() {
        check(&Graph::path(7).unwrap(), 1);
        check(&Graph::cycle(7).unwrap(), 2);
        for n in 1..7 {
            check(&Graph::complete(n).unwrap(), n - 1);
        }
        check(&Graph::new(4).unwrap(), 0);
        check(&Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap(), 2);
    }

    #[test]
    fn figure_two_has_treewidth_two() {
        check(&fixtures::fig2(), 2);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = Graph::cycle(16).unwrap();
        assert!(matches!(exact_treewidth(&g), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn rejects_bad_orders() {
        let g = Graph::cycle(4).unwrap();
        assert!(treewidth_of_order(&g, &[0, 1, 2]).is_err());
        assert!(treewidth_of_order(&g, &[0, 1, 1, 2]).is_err());
        assert_eq!(treewidth_of_order(&g, &[0, 2, 1, 3]).unwrap(), 2);
    }
}

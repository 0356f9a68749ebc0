//! The Helly property of subtrees and the conflict-edge lemma for tree
//! decompositions, both found by walking a partial orientation of the tree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycles::{classify, CycleSeq, Walk};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transversal::attractors_among;
use crate::treedec::{branch_of_fenced, Tree, TreeDecomposition};

/// A digraph on the nodes of a tree whose arcs each run along a tree edge.
/// Both directions of an edge may be present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialOrientation {
    nodes: usize,
    /// Each arc with the index of the first object that justifies it.
    arcs: BTreeMap<(usize, usize), usize>,
}

/// Where a walk along a partial orientation stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WalkEnd {
    /// A node without out-arcs.
    Sink(usize),
    /// The last arc `(t, t')` of a maximal directed path; `(t', t)` is an arc too.
    DoubleEdge(usize, usize),
}

impl PartialOrientation {
    pub fn new(tree: &Tree) -> Self {
        PartialOrientation {
            nodes: tree.len(),
            arcs: BTreeMap::new(),
        }
    }

    /// Adds `from -> to` unless present, remembering `reason` for it.
    pub fn add_arc(&mut self, tree: &Tree, from: usize, to: usize, reason: usize) -> Result<()> {
        if !tree.has_edge(from, to) {
            return Err(Error::precondition(format!("{from}-{to} is not a tree edge")));
        }
        self.arcs.entry((from, to)).or_insert(reason);
        Ok(())
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.contains_key(&(from, to))
    }

    pub fn reason(&self, from: usize, to: usize) -> Option<usize> {
        self.arcs.get(&(from, to)).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.keys().copied()
    }

    /// Heads of the arcs leaving `t`, ascending.
    pub fn out_neighbors(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((t, 0)..(t + 1, 0)).map(|(&(_, h), _)| h)
    }

    pub fn out_degree(&self, t: usize) -> usize {
        self.out_neighbors(t).count()
    }

    /// Follows a maximal directed path: from the least node with an out-arc,
    /// always along the least out-arc that does not go straight back.
    /// Returns `None` when no node has an out-arc.
    pub fn walk(&self) -> Option<WalkEnd> {
        let start = (0..self.nodes).find(|&t| self.out_degree(t) > 0)?;
        let mut prev = start;
        let mut cur = self.out_neighbors(start).next().unwrap();
        loop {
            match self.out_neighbors(cur).find(|&h| h != prev) {
                Some(next) => {
                    prev = cur;
                    cur = next;
                }
                None if self.has_arc(cur, prev) => return Some(WalkEnd::DoubleEdge(prev, cur)),
                None => return Some(WalkEnd::Sink(cur)),
            }
        }
    }
}

fn check_subtrees(tree: &Tree, subtrees: &[Vec<usize>]) -> Result<Vec<Vec<bool>>> {
    subtrees
        .iter()
        .enumerate()
        .map(|(i, nodes)| {
            let mut mask = vec![false; tree.len()];
            for &t in nodes {
                if t >= tree.len() {
                    return Err(Error::precondition(format!("subtree {i} names missing node {t}")));
                }
                mask[t] = true;
            }
            if !tree.induces_subtree(&mask) {
                return Err(Error::precondition(format!(
                    "subtree {i} is empty or not connected"
                )));
            }
            Ok(mask)
        })
        .collect()
}

/// Orients `t -> t'` when some subtree avoids `t` and lies on the `t'` side.
pub fn helly_orientation(tree: &Tree, subtrees: &[Vec<usize>]) -> Result<PartialOrientation> {
    if !tree.is_tree() {
        return Err(Error::precondition("the host graph is not a tree"));
    }
    let masks = check_subtrees(tree, subtrees)?;
    let mut orientation = PartialOrientation::new(tree);
    for t in 0..tree.len() {
        for &t2 in tree.neighbors(t) {
            let branch = tree.branch(t, t2)?;
            let reason = masks.iter().position(|m| {
                !m[t] && branch.nodes.iter().any(|&u| m[u])
            });
            if let Some(i) = reason {
                orientation.add_arc(tree, t, t2, i)?;
            }
        }
    }
    Ok(orientation)
}

/// A node lying in every subtree of a pairwise intersecting family.
///
/// The node is where the orientation walk ends. A walk that ends on a doubly
/// oriented edge exhibits two disjoint subtrees, reported as an error.
pub fn helly_common_vertex(tree: &Tree, subtrees: &[Vec<usize>]) -> Result<usize> {
    let orientation = helly_orientation(tree, subtrees)?;
    match orientation.walk() {
        None => Ok(0),
        Some(WalkEnd::Sink(t)) => Ok(t),
        Some(WalkEnd::DoubleEdge(t, t2)) => {
            let p = orientation.reason(t, t2).unwrap();
            let q = orientation.reason(t2, t).unwrap();
            Err(Error::precondition(format!("subtrees {p} and {q} are disjoint")))
        }
    }
}

/// Two cycles pointing at each other across a tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictWitness {
    pub edge: (usize, usize),
    /// A cycle of the first node whose branch there holds the second node.
    pub cycle_at_t: CycleSeq,
    /// A cycle of the second node whose branch there holds the first node.
    #[serde(rename = "cycle_at_t'")]
    pub cycle_at_t2: CycleSeq,
}

/// Orients `t -> t'` when some cycle of `t` lies in the branch at `t` through `t'`.
pub fn conflict_orientation(
    g: &Graph,
    d: &TreeDecomposition,
    cycles_of: &[Vec<CycleSeq>],
) -> Result<PartialOrientation> {
    if cycles_of.len() != d.node_count() {
        return Err(Error::precondition(format!(
            "{} cycle sets given for {} nodes",
            cycles_of.len(),
            d.node_count()
        )));
    }
    let mut orientation = PartialOrientation::new(d.tree());
    for (t, cycles) in cycles_of.iter().enumerate() {
        if cycles.is_empty() {
            return Err(Error::precondition(format!("node {t} has no cycles")));
        }
        for (i, c) in cycles.iter().enumerate() {
            if classify(g, c, d.bag(t))?.crosses() {
                return Err(Error::precondition(format!("cycle {c} of node {t} crosses its bag")));
            }
            if c.vertex_set().is_subset(d.bag(t)) {
                return Err(Error::precondition(format!("cycle {c} of node {t} lies inside its bag")));
            }
            let branch = branch_of_fenced(g, d, t, c)?;
            orientation.add_arc(d.tree(), t, branch.via, i)?;
        }
    }
    Ok(orientation)
}

/// Given, for every node `t`, a nonempty set of cycles fenced by `V_t` and
/// not inside it, finds an edge `tt'` with a cycle of `t` on the `t'` side and
/// a cycle of `t'` on the `t` side.
pub fn find_conflict_edge(
    g: &Graph,
    d: &TreeDecomposition,
    cycles_of: &[Vec<CycleSeq>],
) -> Result<ConflictWitness> {
    let orientation = conflict_orientation(g, d, cycles_of)?;
    match orientation.walk() {
        Some(WalkEnd::DoubleEdge(t, t2)) => Ok(ConflictWitness {
            edge: (t, t2),
            cycle_at_t: cycles_of[t][orientation.reason(t, t2).unwrap()].clone(),
            cycle_at_t2: cycles_of[t2][orientation.reason(t2, t).unwrap()].clone(),
        }),
        _ => Err(Error::precondition(
            "orientation has a node without out-arcs; the decomposition is not a tree",
        )),
    }
}

/// How [`cycles_per_node`] picks the cycles of each node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclePolicy {
    /// Longest cycles disjoint from the bag.
    LongestAvoidingBag,
    /// Attractors for the bag meeting it in at most two vertices, not inside it.
    AttractorsUpTo2,
}

/// The cycles each node receives under `policy`, from the given longest cycles.
pub fn cycles_per_node(
    g: &Graph,
    d: &TreeDecomposition,
    policy: CyclePolicy,
    longest: &[CycleSeq],
) -> Result<Vec<Vec<CycleSeq>>> {
    d.bags()
        .iter()
        .map(|&bag| match policy {
            CyclePolicy::LongestAvoidingBag => Ok(longest
                .iter()
                .filter(|c| !c.vertex_set().intersects(bag))
                .cloned()
                .collect()),
            CyclePolicy::AttractorsUpTo2 => Ok(attractors_among(g, bag, 2, longest)?
                .into_iter()
                .filter(|c| !c.vertex_set().is_subset(bag))
                .collect()),
        })
        .collect()
}

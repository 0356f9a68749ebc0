//! Tree decompositions: validation, width, fullness, branches and the
//! separation property of tree edges.

mod format;
mod full;
mod treewidth;

pub use format::{parse_decomposition, write_decomposition};
pub use full::make_full;
pub use treewidth::{exact_treewidth, treewidth_of_order, TreewidthResult, TREEWIDTH_LIMIT};

use std::collections::VecDeque;

use serde::Serialize;

use crate::cycles::{classify, Walk};
use crate::error::{Error, Result};
use crate::graph::{separates, Graph};
use crate::vertex_set::VertexSet;

/// An undirected graph on nodes `0..len`, expected (not required) to be a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn from_edges(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in edges {
            if a >= nodes || b >= nodes {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge {a}-{b} names a node outside 0..{nodes}"
                )));
            }
            if a == b || adj[a].contains(&b) {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge {a}-{b} is a loop or repeated"
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, t: usize) -> &[usize] {
        &self.adj[t]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges with the smaller endpoint first, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected and acyclic, with at least one node.
    pub fn is_tree(&self) -> bool {
        !self.is_empty()
            && self.edge_count() == self.len() - 1
            && self.reachable(0, |_| true).iter().all(|&r| r)
    }

    /// Nodes reachable from `from` through nodes accepted by `keep`.
    pub(crate) fn reachable(&self, from: usize, keep: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(t) = queue.pop_front() {
            for &u in &self.adj[t] {
                if !seen[u] && keep(u) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Whether `nodes` (given as a membership mask) induces a connected subtree.
    pub fn induces_subtree(&self, nodes: &[bool]) -> bool {
        let Some(first) = nodes.iter().position(|&x| x) else {
            return false;
        };
        let seen = self.reachable(first, |u| nodes[u]);
        nodes.iter().zip(&seen).all(|(&want, &got)| !want || got)
    }

    /// The component of `T - t` containing `t2`, as the branch at `t`.
    pub fn branch(&self, t: usize, t2: usize) -> Result<Branch> {
        if t >= self.len() || t2 >= self.len() {
            return Err(Error::precondition(format!("node {t} or {t2} does not exist")));
        }
        if t == t2 {
            return Err(Error::precondition(format!("node {t} has no branch containing itself")));
        }
        let seen = self.reachable(t2, |u| u != t);
        let via = self.adj[t]
            .iter()
            .copied()
            .find(|&u| seen[u])
            .ok_or_else(|| Error::precondition(format!("nodes {t} and {t2} are not connected")))?;
        let nodes = seen
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect();
        Ok(Branch { at: t, via, nodes })
    }
}

/// A branch of the tree at node `at`: one component of `T - at`, entered
/// through the neighbour `via`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub at: usize,
    pub via: usize,
    pub nodes: Vec<usize>,
}

impl Branch {
    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TreeDecomposition", 2)?;
        s.serialize_field("bags", &self.bags)?;
        s.serialize_field("edges", &self.tree.edges())?;
        s.end()
    }
}

/// A tree together with one bag per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Tree,
    bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<VertexSet>, edges: &[(usize, usize)]) -> Result<Self> {
        let tree = Tree::from_edges(bags.len(), edges)?;
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn from_lists(bags: &[&[usize]], edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(bags.iter().map(|b| b.iter().collect()).collect(), edges)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> VertexSet {
        self.bags[t]
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Every bag has `k + 1` vertices and adjacent bags share exactly `k`.
    pub fn is_full(&self, k: usize) -> bool {
        self.bags.iter().all(|b| b.len() == k + 1)
            && self
                .tree
                .edges()
                .iter()
                .all(|&(a, b)| (self.bags[a] & self.bags[b]).len() == k)
    }

    /// Nodes whose bag holds `v`, as a membership mask.
    pub fn occurrences(&self, v: usize) -> Vec<bool> {
        self.bags.iter().map(|b| b.contains(v)).collect()
    }

    fn check_node(&self, t: usize) -> Result<()> {
        if t >= self.node_count() {
            Err(Error::precondition(format!("node {t} does not exist")))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// The tree is connected and acyclic.
    Tree,
    /// Bags cover every vertex.
    Coverage,
    /// Every edge lies inside some bag.
    EdgeCoverage,
    /// Each vertex's occurrence set is connected.
    Connectivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotATree,
    BagOutOfRange { node: usize, vertex: usize },
    MissingVertex { vertex: usize },
    UncoveredEdge { u: usize, v: usize },
    DisconnectedOccurrences { vertex: usize },
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::NotATree => Axiom::Tree,
            Violation::BagOutOfRange { .. } | Violation::MissingVertex { .. } => Axiom::Coverage,
            Violation::UncoveredEdge { .. } => Axiom::EdgeCoverage,
            Violation::DisconnectedOccurrences { .. } => Axiom::Connectivity,
        }
    }
}

/// Outcome of [`validate`]. Failures are data; repeated bag contents are only
/// reported as warnings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
    pub duplicate_bags: Vec<(usize, usize)>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.violations.iter().all(|v| v.axiom() != axiom)
    }
}

/// Checks `d` against the tree-decomposition axioms for `g`.
pub fn validate(g: &Graph, d: &TreeDecomposition) -> ValidityReport {
    let mut report = ValidityReport::default();
    let tree_ok = d.tree.is_tree();
    if !tree_ok {
        report.violations.push(Violation::NotATree);
    }
    let mut union = VertexSet::EMPTY;
    for (t, &bag) in d.bags.iter().enumerate() {
        if let Some(v) = bag.difference(g.vertices()).min() {
            report
                .violations
                .push(Violation::BagOutOfRange { node: t, vertex: v });
        }
        union |= bag;
    }
    for v in g.vertices() - union {
        report.violations.push(Violation::MissingVertex { vertex: v });
    }
    for (u, v) in g.edges() {
        let pair = VertexSet::singleton(u).with(v);
        if !d.bags.iter().any(|b| pair.is_subset(*b)) {
            report.violations.push(Violation::UncoveredEdge { u, v });
        }
    }
    if tree_ok {
        for v in union & g.vertices() {
            if !d.tree.induces_subtree(&d.occurrences(v)) {
                report
                    .violations
                    .push(Violation::DisconnectedOccurrences { vertex: v });
            }
        }
    }
    for a in 0..d.bags.len() {
        for b in a + 1..d.bags.len() {
            if d.bags[a] == d.bags[b] {
                report.duplicate_bags.push((a, b));
            }
        }
    }
    report
}

fn require_valid(g: &Graph, d: &TreeDecomposition) -> Result<()> {
    let report = validate(g, d);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidDecomposition(format!("{v:?}"))),
    }
}

/// Largest bag size minus one, for a valid decomposition.
pub fn width(g: &Graph, d: &TreeDecomposition) -> Result<usize> {
    require_valid(g, d)?;
    Ok(d.max_bag_size().saturating_sub(1))
}

/// `Br_t(t2)`.
pub fn branch_of_node(d: &TreeDecomposition, t: usize, t2: usize) -> Result<Branch> {
    d.tree.branch(t, t2)
}

/// `Br_t(v)` for a vertex outside `V_t`.
pub fn branch_of_vertex(d: &TreeDecomposition, t: usize, v: usize) -> Result<Branch> {
    d.check_node(t)?;
    if d.bags[t].contains(v) {
        return Err(Error::precondition(format!("vertex {v} lies in bag {t}")));
    }
    let holder = d
        .bags
        .iter()
        .position(|b| b.contains(v))
        .ok_or_else(|| Error::precondition(format!("vertex {v} is in no bag")))?;
    d.tree.branch(t, holder)
}

/// `Br_t(C)` for a path or cycle fenced by `V_t` with a vertex outside it.
///
/// Every vertex of `C` outside `V_t` is checked to land in the same branch; a
/// disagreement means `d` is not a valid decomposition of `g`.
pub fn branch_of_fenced(
    g: &Graph,
    d: &TreeDecomposition,
    t: usize,
    object: &impl Walk,
) -> Result<Branch> {
    d.check_node(t)?;
    let bag = d.bags[t];
    let class = classify(g, object, bag)?;
    if class.crosses() {
        return Err(Error::precondition(format!("object crosses the bag of node {t}")));
    }
    let outside = object.vertex_set() - bag;
    let Some(first) = outside.min() else {
        return Err(Error::precondition(format!(
            "object lies inside the bag of node {t}"
        )));
    };
    let branch = branch_of_vertex(d, t, first)?;
    for v in outside {
        let holder = d
            .bags
            .iter()
            .position(|b| b.contains(v))
            .ok_or_else(|| Error::precondition(format!("vertex {v} is in no bag")))?;
        if !branch.contains(holder) {
            return Err(Error::InvalidDecomposition(format!(
                "vertices {first} and {v} of a fenced object fall in different branches at node {t}"
            )));
        }
    }
    Ok(branch)
}

/// Result of testing the separation property across a tree edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCheck {
    /// `u ∈ Br_t(t')` and `v ∈ Br_t'(t)`.
    pub hypothesis: bool,
    /// `V_t ∩ V_t'` separates `u` from `v` in the graph.
    pub separated: bool,
}

impl SeparationCheck {
    /// The implication hypothesis ⇒ separated.
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.separated
    }
}

/// For a tree edge `tt'`, `u ∉ V_t` and `v ∉ V_t'`: evaluates whether `u` is on
/// the `t'` side and `v` on the `t` side, and whether `V_t ∩ V_t'` separates them.
pub fn separated_by_edge(
    g: &Graph,
    d: &TreeDecomposition,
    t: usize,
    t2: usize,
    u: usize,
    v: usize,
) -> Result<SeparationCheck> {
    d.check_node(t)?;
    d.check_node(t2)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !d.tree.has_edge(t, t2) {
        return Err(Error::precondition(format!("{t}-{t2} is not a tree edge")));
    }
    let hypothesis = branch_of_vertex(d, t, u)?.contains(t2) && branch_of_vertex(d, t2, v)?.contains(t);
    let sep = d.bags[t] & d.bags[t2];
    let separated = u != v && separates(g, sep, VertexSet::singleton(u).with(v))?;
    Ok(SeparationCheck {
        hypothesis,
        separated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::CycleSeq;
    use crate::fixtures;

    #[test]
    fn figure_two_decompositions_validate() {
        let g = fixtures::fig2();
        let b = fixtures::fig2b_decomposition();
        let c = fixtures::fig2c_decomposition();
        assert!(validate(&g, &b).is_valid());
        assert!(validate(&g, &c).is_valid());
        assert_eq!(width(&g, &b).unwrap(), 3);
        assert_eq!(width(&g, &c).unwrap(), 2);
        assert!(c.is_full(2));
        assert!(!b.is_full(2));
        assert!(!b.is_full(3));
    }

    #[test]
    fn emptied_bag_reports_missing_vertex() {
        let g = fixtures::fig2();
        let b = fixtures::fig2b_decomposition();
        let target = g.set_of(&["v1", "v2", "v5"]);
        let mut bags = b.bags().to_vec();
        let idx = bags.iter().position(|&x| x == target).unwrap();
        bags[idx] = VertexSet::EMPTY;
        let broken = TreeDecomposition::new(bags, &b.tree().edges()).unwrap();
        let report = validate(&g, &broken);
        assert!(!report.holds(Axiom::Coverage));
        let v5 = g.vertex_by_label("v5").unwrap();
        assert!(report
            .violations
            .contains(&Violation::MissingVertex { vertex: v5 }));
        assert!(width(&g, &broken).is_err());
    }

    #[test]
    fn detects_each_axiom() {
        let g = Graph::cycle(4).unwrap();
        // path 0-1-2-3 of bags, vertex 0 in both ends only
        let ok = TreeDecomposition::from_lists(&[&[0, 1, 3], &[1, 2, 3]], &[(0, 1)]).unwrap();
        assert!(validate(&g, &ok).is_valid());

        let uncovered = TreeDecomposition::from_lists(&[&[0, 1, 2], &[2, 3]], &[(0, 1)]).unwrap();
        assert!(!validate(&g, &uncovered).holds(Axiom::EdgeCoverage));

        let disconnected =
            TreeDecomposition::from_lists(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]], &[(0, 1), (1, 2), (2, 3)])
                .unwrap();
        let r = validate(&g, &disconnected);
        assert!(r
            .violations
            .contains(&Violation::DisconnectedOccurrences { vertex: 0 }));

        let forest = TreeDecomposition::from_lists(&[&[0, 1, 3], &[1, 2, 3]], &[]).unwrap();
        assert!(!validate(&g, &forest).holds(Axiom::Tree));

        let dup = TreeDecomposition::from_lists(&[&[0, 1, 2, 3], &[0, 1, 2, 3]], &[(0, 1)]).unwrap();
        let r = validate(&g, &dup);
        assert!(r.is_valid());
        assert_eq!(r.duplicate_bags, vec![(0, 1)]);
    }

    #[test]
    fn single_bag_width() {
        let g = Graph::complete(5).unwrap();
        let d = TreeDecomposition::new(vec![g.vertices()], &[]).unwrap();
        assert_eq!(width(&g, &d).unwrap(), 4);
        assert!(d.is_full(4));
    }

    #[test]
    fn fig3_is_full() {
        let (g, d) = fixtures::fig3_with_decomposition();
        assert!(validate(&g, &d).is_valid());
        assert!(d.is_full(3));
    }

    #[test]
    fn branches_in_fig2c() {
        let g = fixtures::fig2();
        let d = fixtures::fig2c_decomposition();
        let node = |labels: &[&str]| d.bags().iter().position(|&b| b == g.set_of(labels)).unwrap();
        let t = node(&["v1", "v3", "v4"]);
        let v8 = g.vertex_by_label("v8").unwrap();
        let br = branch_of_vertex(&d, t, v8).unwrap();
        assert_eq!(br.via, node(&["v1", "v4", "v8"]));
        assert!(br.contains(node(&["v1", "v4", "v8"])));
        assert!(branch_of_vertex(&d, t, g.vertex_by_label("v1").unwrap()).is_err());

        let leaf = node(&["v1", "v4", "v8"]);
        let br = branch_of_node(&d, leaf, t).unwrap();
        assert_eq!(br.nodes.len(), d.node_count() - 1);

        let top = node(&["v1", "v2", "v3"]);
        let tri = CycleSeq::new(&g, g.seq_of(&["v1", "v2", "v5"])).unwrap();
        let br = branch_of_fenced(&g, &d, top, &tri).unwrap();
        assert_eq!(br.via, node(&["v1", "v2", "v5"]));
    }

    #[test]
    fn branch_of_fenced_errors() {
        let g = fixtures::fig2();
        let d = fixtures::fig2c_decomposition();
        let top = d
            .bags()
            .iter()
            .position(|&b| b == g.set_of(&["v1", "v2", "v3"]))
            .unwrap();
        let inside = CycleSeq::new(&g, g.seq_of(&["v1", "v2", "v5"])).unwrap();
        let bag_of_tri = d.bags().iter().position(|&b| b == inside.vertex_set()).unwrap();
        assert!(matches!(
            branch_of_fenced(&g, &d, bag_of_tri, &inside),
            Err(Error::Precondition(_))
        ));
        // v4 and v5 lie in different components once {v1,v2,v3} is removed
        let crossing = CycleSeq::new(&g, g.seq_of(&["v1", "v5", "v2", "v6", "v3", "v4"])).unwrap();
        assert!(branch_of_fenced(&g, &d, top, &crossing).is_err());
    }

    #[test]
    fn separation_across_fig2c_edge() {
        let g = fixtures::fig2();
        let d = fixtures::fig2c_decomposition();
        let node = |labels: &[&str]| d.bags().iter().position(|&b| b == g.set_of(labels)).unwrap();
        let t = node(&["v1", "v3", "v4"]);
        let t2 = node(&["v1", "v4", "v8"]);
        let v8 = g.vertex_by_label("v8").unwrap();
        let v2 = g.vertex_by_label("v2").unwrap();
        let check = separated_by_edge(&g, &d, t, t2, v8, v2).unwrap();
        assert!(check.hypothesis && check.separated && check.holds());
        // same side: hypothesis fails, nothing claimed
        let v5 = g.vertex_by_label("v5").unwrap();
        let check = separated_by_edge(&g, &d, t, t2, v5, v2).unwrap();
        assert!(!check.hypothesis && check.holds());
        // not an edge
        assert!(separated_by_edge(&g, &d, t2, node(&["v1", "v2", "v5"]), v2, v8).is_err());
    }

    #[test]
    fn single_bag_has_no_edge_to_test() {
        let g = Graph::complete(3).unwrap();
        let d = TreeDecomposition::new(vec![g.vertices()], &[]).unwrap();
        assert!(separated_by_edge(&g, &d, 0, 0, 0, 1).is_err());
    }
}

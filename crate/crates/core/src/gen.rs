//! Seeded generators for k-trees, partial k-trees, chordal graphs and random
//! 2-connected graphs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_2connected, Graph};
use crate::treedec::TreeDecomposition;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Resampling attempts allowed before a generator gives up.
pub const RETRY_BUDGET: usize = 1000;

/// Builds a k-tree one vertex at a time, recording the decomposition whose
/// node `i` holds the clique that vertex `k + i` was attached to, plus that vertex.
#[derive(Clone, Debug)]
pub struct KTreeBuilder {
    k: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    bags: Vec<VertexSet>,
    tree_edges: Vec<(usize, usize)>,
    /// Every k-clique created so far, in creation order.
    cliques: Vec<VertexSet>,
    /// The first node whose bag contains each clique.
    holder: HashMap<VertexSet, Option<usize>>,
}

impl KTreeBuilder {
    /// Starts from the complete graph on vertices `0..k`.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k >= MAX_VERTICES {
            return Err(Error::precondition(format!("k must be in 1..{MAX_VERTICES}, got {k}")));
        }
        let base = VertexSet::full(k);
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Ok(KTreeBuilder {
            k,
            n: k,
            edges,
            bags: Vec::new(),
            tree_edges: Vec::new(),
            cliques: vec![base],
            holder: HashMap::from([(base, None)]),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// Adds a vertex adjacent to exactly the k-clique `clique` and returns its id.
    pub fn attach(&mut self, clique: VertexSet) -> Result<usize> {
        let Some(&parent) = self.holder.get(&clique) else {
            return Err(Error::precondition(format!("{clique} is not a k-clique of the k-tree")));
        };
        if self.n == MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                limit: MAX_VERTICES,
                got: MAX_VERTICES + 1,
            });
        }
        let v = self.n;
        self.n += 1;
        self.edges.extend(clique.iter().map(|u| (u, v)));
        let bag = clique.with(v);
        let node = self.bags.len();
        self.bags.push(bag);
        if let Some(p) = parent {
            self.tree_edges.push((p, node));
        }
        for sub in bag.subsets_of_size(self.k) {
            match self.holder.get_mut(&sub) {
                Some(slot @ None) => *slot = Some(node),
                Some(Some(_)) => {}
                None => {
                    self.holder.insert(sub, Some(node));
                    self.cliques.push(sub);
                }
            }
        }
        Ok(v)
    }

    /// The graph and its full width-`k` decomposition. Needs at least one
    /// attached vertex.
    pub fn finish(&self) -> Result<(Graph, TreeDecomposition)> {
        if self.bags.is_empty() {
            return Err(Error::precondition("a k-tree decomposition needs n > k"));
        }
        let g = Graph::from_edges(self.n, &self.edges)?;
        let d = TreeDecomposition::new(self.bags.clone(), &self.tree_edges)?;
        Ok((g, d))
    }
}

fn check_tree_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || n <= k {
        return Err(Error::precondition(format!("need 1 <= k < n, got n={n}, k={k}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    Ok(())
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::precondition(format!("probability must lie in (0, 1], got {p}")))
    }
}

fn ktree_with(n: usize, k: usize, rng: &mut impl Rng) -> Result<(Graph, TreeDecomposition)> {
    let mut b = KTreeBuilder::new(k)?;
    while b.vertex_count() < n {
        let clique = *b.cliques().choose(rng).unwrap();
        b.attach(clique)?;
    }
    b.finish()
}

/// A random k-tree on `n` vertices with its construction decomposition.
/// Each new vertex joins a k-clique drawn uniformly from those built so far.
pub fn gen_ktree(n: usize, k: usize, seed: u64) -> Result<(Graph, TreeDecomposition)> {
    check_tree_params(n, k)?;
    ktree_with(n, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn keep_edges(g: &Graph, p: f64, rng: &mut impl Rng) -> Graph {
    let kept: Vec<_> = g.edges().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(g.n(), &kept).expect("subgraph of a valid graph")
}

/// A 2-connected spanning subgraph of a random k-tree: each edge is kept with
/// probability `p`, redrawing the k-tree and the edges until 2-connected.
/// The k-tree's decomposition is returned and remains valid for the subgraph.
pub fn gen_partial_ktree(n: usize, k: usize, p: f64, seed: u64) -> Result<(Graph, TreeDecomposition)> {
    check_tree_params(n, k)?;
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let (tree, d) = ktree_with(n, k, &mut rng)?;
        let g = keep_edges(&tree, p, &mut rng);
        if is_2connected(&g) {
            return Ok((g, d));
        }
    }
    Err(Error::RetryBudget {
        attempts: RETRY_BUDGET,
        seed,
    })
}

/// A 2-connected partial 2-tree.
pub fn gen_series_parallel(n: usize, p: f64, seed: u64) -> Result<Graph> {
    gen_partial_ktree(n, 2, p, seed).map(|(g, _)| g)
}

/// A 2-connected chordal graph with clique number at most `k + 1`.
///
/// Starting from an edge, each new vertex picks an existing vertex, grows a
/// random clique of at most `k` vertices around it, keeps each clique member
/// with probability `p` (never fewer than two) and joins the survivors.
/// Every vertex is simplicial when added, so the result is chordal.
pub fn gen_chordal(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    if k < 2 || n < 3 {
        return Err(Error::precondition(format!("need k >= 2 and n >= 3, got n={n}, k={k}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::from_edges(n, &[(0, 1)])?;
    for v in 2..n {
        let mut clique = VertexSet::singleton(rng.gen_range(0..v));
        while clique.len() < k {
            let mut common = VertexSet::full(v);
            for u in clique {
                common &= g.neighbors(u);
            }
            let options = common.to_vec();
            let Some(&u) = options.choose(&mut rng) else {
                break;
            };
            clique.insert(u);
        }
        let mut members: Vec<usize> = clique.iter().filter(|_| rng.gen_bool(p)).collect();
        if members.len() < 2 {
            let mut all = clique.to_vec();
            all.shuffle(&mut rng);
            members = all.into_iter().take(2).collect();
        }
        for u in members {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `G(n, p)` redrawn until 2-connected.
pub fn gen_random_2connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::precondition(format!("need n >= 3, got {n}")));
    }
    check_probability(p)?;
    let full = Graph::complete(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let g = keep_edges(&full, p, &mut rng);
        if is_2connected(&g) {
            return Ok(g);
        }
    }
    Err(Error::RetryBudget {
        attempts: RETRY_BUDGET,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Ktree,
    PartialKtree,
    Chordal,
    SeriesParallel,
    Random2connected,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Ktree,
        Family::PartialKtree,
        Family::Chordal,
        Family::SeriesParallel,
        Family::Random2connected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ktree => "ktree",
            Family::PartialKtree => "partial-ktree",
            Family::Chordal => "chordal",
            Family::SeriesParallel => "series-parallel",
            Family::Random2connected => "random-2connected",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Everything needed to regenerate one instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
}

/// A generated graph, with a decomposition when the family provides one.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub decomposition: Option<TreeDecomposition>,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Generated> {
        let GenSpec { family, n, k, p, seed } = *self;
        let (graph, decomposition) = match family {
            Family::Ktree => gen_ktree(n, k, seed).map(|(g, d)| (g, Some(d)))?,
            Family::PartialKtree => gen_partial_ktree(n, k, p, seed).map(|(g, d)| (g, Some(d)))?,
            Family::SeriesParallel => gen_partial_ktree(n, 2, p, seed).map(|(g, d)| (g, Some(d)))?,
            Family::Chordal => (gen_chordal(n, k, p, seed)?, None),
            Family::Random2connected => (gen_random_2connected(n, p, seed)?, None),
        };
        Ok(Generated {
            graph,
            decomposition,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::max_clique_size;
    use crate::treedec::validate;

    #[test]
    fn ktree_shape() {
        for k in 1..5 {
            for seed in 0..5 {
                let (g, d) = gen_ktree(10, k, seed).unwrap();
                assert_eq!(g.edge_count(), k * (k - 1) / 2 + (10 - k) * k);
                assert!(validate(&g, &d).is_valid());
                assert!(d.is_full(k));
                assert_eq!(max_clique_size(&g), k + 1);
            }
        }
    }

    #[test]
    fn smallest_ktree_is_a_clique() {
        let (g, d) = gen_ktree(4, 3, 1).unwrap();
        assert_eq!(g, Graph::complete(4).unwrap());
        assert_eq!(d.node_count(), 1);
        assert!(gen_ktree(3, 3, 1).is_err());
    }

    #[test]
    fn seeds_determine_output() {
        let a = gen_partial_ktree(12, 3, 0.7, 42).unwrap();
        let b = gen_partial_ktree(12, 3, 0.7, 42).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(gen_chordal(12, 4, 0.6, 9).unwrap(), gen_chordal(12, 4, 0.6, 9).unwrap());
    }

    #[test]
    fn full_probability_keeps_the_ktree() {
        let (kt, _) = gen_ktree(11, 3, 5).unwrap();
        let (pk, _) = gen_partial_ktree(11, 3, 1.0, 5).unwrap();
        assert_eq!(kt, pk);
    }

    #[test]
    fn partial_ktrees_are_2connected() {
        for seed in 0..20 {
            let (g, d) = gen_partial_ktree(12, 2, 0.8, seed).unwrap();
            assert!(is_2connected(&g));
            assert!(validate(&g, &d).is_valid());
        }
    }

    #[test]
    fn trees_cannot_be_2connected() {
        assert!(matches!(
            gen_partial_ktree(6, 1, 1.0, 3),
            Err(Error::RetryBudget { attempts: RETRY_BUDGET, seed: 3 })
        ));
    }

    #[test]
    fn chordal_generator_respects_clique_bound() {
        for seed in 0..20 {
            let g = gen_chordal(14, 3, 0.7, seed).unwrap();
            assert!(is_2connected(&g));
            assert!(max_clique_size(&g) <= 4);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(gen_partial_ktree(8, 2, 0.0, 1).is_err());
        assert!(gen_random_2connected(8, 1.5, 1).is_err());
        assert!(gen_chordal(8, 1, 0.5, 1).is_err());
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("series-parallel".parse::<Family>().unwrap(), Family::SeriesParallel);
    }
}

//! Slow, obviously-correct reference implementations used to cross-check the
//! library, and builders for test instances. No oracle calls into the
//! algorithm it checks.

#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lct_core::cycles::{classify, enumerate_cycles, CycleSeq, Walk};
use lct_core::lemmas::ConflictWitness;
use lct_core::treedec::{exact_treewidth, TreeDecomposition};
use lct_core::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Erdős–Rényi graph on `n` vertices.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// At least three vertices, and removing any one leaves the rest connected.
pub fn brute_2connected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let adj = adjacency(g);
    (0..n).all(|cut| {
        let alive: u64 = ((1u64 << n) - 1) & !(1 << cut);
        let start = alive.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let mut next = adj[x] & alive & !seen;
            seen |= next;
            while next != 0 {
                stack.push(next.trailing_zeros() as usize);
                next &= next - 1;
            }
        }
        seen == alive
    })
}

/// Rotates the least vertex to the front and picks the direction with the
/// smaller second vertex.
pub fn canonical(mut c: Vec<usize>) -> Vec<usize> {
    let i = c.iter().position_min().unwrap();
    c.rotate_left(i);
    if c[1] > c[c.len() - 1] {
        c[1..].reverse();
    }
    c
}

/// Every cycle, by trying each vertex subset in each cyclic order.
pub fn naive_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 9, "permutation enumeration is only meant for tiny graphs");
    let mut out = Vec::new();
    for size in 3..=n {
        for subset in (0..n).combinations(size) {
            let first = subset[0];
            for rest in subset[1..].iter().copied().permutations(size - 1) {
                if rest[0] > rest[size - 2] {
                    continue;
                }
                let mut seq = vec![first];
                seq.extend(rest);
                let closed = (0..size).all(|i| g.has_edge(seq[i], seq[(i + 1) % size]));
                if closed {
                    out.push(seq);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn naive_longest_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let all = naive_cycles(g);
    let l = all.iter().map(Vec::len).max().unwrap_or(0);
    all.into_iter().filter(|c| c.len() == l).collect()
}

/// Smallest vertex set meeting every listed cycle, by increasing size.
pub fn brute_hitting_set(n: usize, cycles: &[Vec<usize>]) -> Vec<usize> {
    let masks: Vec<u64> = cycles.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
    for size in 0..=n {
        for x in (0..n).combinations(size) {
            let xm = x.iter().fold(0u64, |m, &v| m | 1 << v);
            if masks.iter().all(|&m| m & xm != 0) {
                return x;
            }
        }
    }
    unreachable!("the whole vertex set meets every cycle")
}

/// Width of the elimination order `order`, computed by explicit fill-in.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    let mut adj = adjacency(g);
    let mut alive = (1u64 << g.n()) - 1;
    let mut width = 0;
    for &v in order {
        let nbrs = adj[v] & alive & !(1 << v);
        width = width.max(nbrs.count_ones() as usize);
        let mut rest = nbrs;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            adj[u] |= nbrs & !(1 << u);
            rest &= rest - 1;
        }
        alive &= !(1 << v);
    }
    width
}

/// Treewidth as the minimum elimination width over all `n!` orders.
pub fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    (0..n)
        .permutations(n)
        .map(|order| elimination_width(g, &order))
        .min()
        .unwrap()
}

/// Whether some vertex subset of size at least 4 induces a cycle.
pub fn has_long_induced_cycle(g: &Graph) -> bool {
    let n = g.n();
    let adj = adjacency(g);
    (0u64..1 << n).filter(|m| m.count_ones() >= 4).any(|mask| {
        let mut v = mask;
        while v != 0 {
            let x = v.trailing_zeros() as usize;
            if (adj[x] & mask).count_ones() != 2 {
                return false;
            }
            v &= v - 1;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[x] & mask & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == mask
    })
}

pub fn brute_max_clique(g: &Graph) -> usize {
    let n = g.n();
    let adj = adjacency(g);
    (0u64..1 << n)
        .filter(|&mask| {
            let mut v = mask;
            while v != 0 {
                let x = v.trailing_zeros() as usize;
                if (adj[x] | 1 << x) & mask != mask {
                    return false;
                }
                v &= v - 1;
            }
            true
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Random labelled tree on `n` nodes: node `i > 0` hangs off a random earlier node.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (1..n).map(|i| (perm[rng.gen_range(0..i)], perm[i])).collect()
}

pub fn tree_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// A random subtree grown from a random node by random frontier expansion.
pub fn random_subtree(adj: &[Vec<usize>], rng: &mut impl Rng) -> Vec<usize> {
    let n = adj.len();
    let target = rng.gen_range(1..=n);
    let mut nodes = vec![rng.gen_range(0..n)];
    while nodes.len() < target {
        let frontier: Vec<usize> = nodes
            .iter()
            .flat_map(|&t| adj[t].iter().copied())
            .filter(|t| !nodes.contains(t))
            .unique()
            .collect();
        match frontier.choose(rng) {
            Some(&t) => nodes.push(t),
            None => break,
        }
    }
    nodes.sort_unstable();
    nodes
}

/// Nodes of `adj` reachable from `from` without entering `blocked`.
pub fn tree_component(adj: &[Vec<usize>], from: usize, blocked: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if u != blocked && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// Three disjoint short cycles chained by single edges, decomposed optimally,
/// with every node given all cycles that avoid its bag. `None` when some bag
/// meets every cycle.
pub fn conflict_instance(seed: u64) -> Option<(Graph, TreeDecomposition, Vec<Vec<CycleSeq>>)> {
    let mut rng = rng(seed);
    let lens: Vec<usize> = (0..3).map(|_| rng.gen_range(3..=4)).collect();
    let n: usize = lens.iter().sum();
    let mut g = Graph::new(n).unwrap();
    let mut start = 0;
    let mut starts = Vec::new();
    for &len in &lens {
        for i in 0..len {
            g.add_edge(start + i, start + (i + 1) % len).unwrap();
        }
        starts.push(start);
        start += len;
    }
    for w in starts.windows(2) {
        g.add_edge(w[0] + rng.gen_range(0..3), w[1] + rng.gen_range(0..3)).unwrap();
    }
    let d = exact_treewidth(&g).unwrap().decomposition;
    let cycles = enumerate_cycles(&g, 100_000).unwrap();
    let cycles_of: Vec<Vec<CycleSeq>> = d
        .bags()
        .iter()
        .map(|&bag| cycles.iter().filter(|c| !c.vertex_set().intersects(bag)).cloned().collect())
        .collect();
    cycles_of.iter().all(|c| !c.is_empty()).then_some((g, d, cycles_of))
}

/// Whether `w` satisfies both branch conditions, re-derived from the bags and
/// tree edges alone.
pub fn witness_is_sound(g: &Graph, d: &TreeDecomposition, cycles_of: &[Vec<CycleSeq>], w: &ConflictWitness) -> bool {
    let (t, t2) = w.edge;
    if !d.tree().has_edge(t, t2) || !cycles_of[t].contains(&w.cycle_at_t) || !cycles_of[t2].contains(&w.cycle_at_t2) {
        return false;
    }
    let adj = tree_adjacency(d.node_count(), &d.tree().edges());
    [(t, t2, &w.cycle_at_t), (t2, t, &w.cycle_at_t2)].into_iter().all(|(at, toward, c)| {
        let side = tree_component(&adj, toward, at);
        let outside = c.vertex_set() - d.bag(at);
        classify(g, c, d.bag(at)).unwrap().fenced()
            && !outside.is_empty()
            && outside.iter().all(|v| (0..d.node_count()).any(|s| side[s] && d.bag(s).contains(v)))
    })
}

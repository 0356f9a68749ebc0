//! Exact minimum hitting set over a family of vertex sets.
//!
//! Feasibility of a budget is decided by branch and bound, branching on the
//! smallest set not yet hit and cutting with a disjoint-packing lower bound.
//! The lexicographically least optimum is then fixed one member at a time.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// True if `x` meets every set of `family`.
pub fn hits_all(x: VertexSet, family: &[VertexSet]) -> bool {
    family.iter().all(|s| s.intersects(x))
}

/// Drops duplicates and every set that contains another member.
fn reduce(family: &[VertexSet]) -> Vec<VertexSet> {
    let mut sets = family.to_vec();
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Size of a greedy family of pairwise disjoint sets, a lower bound on any
/// hitting set.
fn packing_bound(sets: &[VertexSet]) -> usize {
    let mut used = VertexSet::EMPTY;
    let mut count = 0;
    for &s in sets {
        if !s.intersects(used) {
            used |= s;
            count += 1;
        }
    }
    count
}

/// Whether `budget` members of `allowed` can hit every set.
fn feasible(sets: &[VertexSet], allowed: VertexSet, budget: usize) -> bool {
    if sets.is_empty() {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let restricted: Vec<VertexSet> = sets.iter().map(|&s| s & allowed).collect();
    if restricted.iter().any(|s| s.is_empty()) || packing_bound(&restricted) > budget {
        return false;
    }
    let pivot = *restricted.iter().min_by_key(|s| s.len()).unwrap();
    pivot.iter().any(|x| {
        let rest: Vec<VertexSet> = restricted.iter().copied().filter(|s| !s.contains(x)).collect();
        feasible(&rest, allowed, budget - 1)
    })
}

/// Minimum number of vertices meeting every set of `family`.
pub fn min_hitting_set_size(family: &[VertexSet]) -> Result<usize> {
    let sets = reduce(family);
    if sets.first().is_some_and(|s| s.is_empty()) {
        return Err(Error::precondition("an empty set cannot be hit"));
    }
    let universe = sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
    let mut budget = packing_bound(&sets);
    while !feasible(&sets, universe, budget) {
        budget += 1;
    }
    Ok(budget)
}

/// The lexicographically least hitting set of minimum size.
pub fn min_hitting_set(family: &[VertexSet]) -> Result<VertexSet> {
    let size = min_hitting_set_size(family)?;
    let sets = reduce(family);
    let universe = sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
    let mut chosen = VertexSet::EMPTY;
    let mut floor = VertexSet::EMPTY;
    for left in (0..size).rev() {
        let x = (universe - floor)
            .iter()
            .find(|&x| {
                let rest: Vec<VertexSet> = sets
                    .iter()
                    .copied()
                    .filter(|s| !s.intersects(chosen.with(x)))
                    .collect();
                feasible(&rest, universe & VertexSet::above(x), left)
            })
            .expect("an optimum extends the chosen prefix");
        chosen.insert(x);
        floor = !VertexSet::above(x);
    }
    Ok(chosen)
}

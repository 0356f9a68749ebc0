//! Attractors, the `~K` relation, breaking vertices and exact longest cycle
//! transversals.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycles::{
    abc_parts, classify, enumerate_longest_cycles, find_cycle_of_length, longest_cycle_length,
    longest_cycle_length_within, CycleSeq, Walk,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting_set::min_hitting_set;
use crate::vertex_set::VertexSet;

/// Largest vertex count [`lct_naive`] accepts.
pub const NAIVE_LCT_LIMIT: usize = 12;

/// `p ~K q`: some vertex of `p` and some vertex of `q`, both outside `k_set`,
/// share a component of `g - k_set`.
pub fn sim_k(g: &Graph, p: &impl Walk, q: &impl Walk, k_set: VertexSet) -> Result<bool> {
    g.check_set(k_set)?;
    let outside = g.vertices() - k_set;
    let ps = p.vertex_set() & outside;
    let qs = q.vertex_set() & outside;
    g.check_set(ps | qs)?;
    let mut covered = VertexSet::EMPTY;
    for u in ps {
        if covered.contains(u) {
            continue;
        }
        let comp = g.reach_within(u, outside);
        if comp.intersects(qs) {
            return Ok(true);
        }
        covered |= comp;
    }
    Ok(false)
}

/// Whether `v` breaks `c`: `c` 3-crosses `k_set` at a triple containing `v`,
/// and the two parts of `c` meeting at `v` are not `~K`-related.
pub fn breaks(g: &Graph, v: usize, c: &CycleSeq, k_set: VertexSet) -> Result<bool> {
    let class = classify(g, c, k_set)?;
    if !class.crosses() || class.k != 3 {
        return Err(Error::precondition(format!(
            "cycle {}-intersects K and {}; breaking needs a 3-crossing",
            class.k,
            if class.crosses() { "crosses" } else { "is fenced" }
        )));
    }
    if !class.trace.contains(v) {
        return Err(Error::precondition(format!("vertex {v} is not in the intersection with K")));
    }
    let others = class.trace.without(v).to_vec();
    let (to_x, _, from_y) = abc_parts(c, v, others[0], others[1])?;
    Ok(!sim_k(g, &to_x, &from_y, k_set)?)
}

/// Whether a longest cycle is an attractor for a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttractorReport {
    pub cycle: CycleSeq,
    pub set: VertexSet,
    /// `|V(cycle) ∩ set|`.
    pub k: usize,
    pub is_attractor: bool,
    /// The first longest cycle, in canonical order, meeting `set` like
    /// `cycle` does and crossing it.
    pub violating_cycle: Option<CycleSeq>,
}

/// Checks `c` against `s`, given every longest cycle of `g`.
pub fn is_attractor(g: &Graph, c: &CycleSeq, s: VertexSet, longest: &[CycleSeq]) -> Result<AttractorReport> {
    g.check_set(s)?;
    if !longest.contains(c) {
        return Err(Error::precondition(format!("cycle {c} is not among the longest cycles")));
    }
    let class = classify(g, c, s)?;
    let mut violating: Option<&CycleSeq> = None;
    for d in longest {
        if d.vertex_set() & s == class.trace
            && classify(g, d, s)?.crosses()
            && violating.map_or(true, |v| d < v)
        {
            violating = Some(d);
        }
    }
    Ok(AttractorReport {
        cycle: c.clone(),
        set: s,
        k: class.k,
        is_attractor: class.fenced() && violating.is_none(),
        violating_cycle: violating.cloned(),
    })
}

/// Longest cycles grouped by their intersection with `s`, smallest traces first.
fn by_trace(s: VertexSet, longest: &[CycleSeq]) -> Vec<(VertexSet, Vec<&CycleSeq>)> {
    let mut buckets: BTreeMap<(usize, Vec<usize>), (VertexSet, Vec<&CycleSeq>)> = BTreeMap::new();
    for c in longest {
        let trace = c.vertex_set() & s;
        buckets
            .entry((trace.len(), trace.to_vec()))
            .or_insert_with(|| (trace, Vec::new()))
            .1
            .push(c);
    }
    let mut out: Vec<_> = buckets.into_values().collect();
    for (_, cycles) in &mut out {
        cycles.sort();
    }
    out
}

/// The intersection classes of size at most `max_ell` whose cycles are all
/// fenced by `s`; every cycle in them is an attractor.
fn attractor_classes<'a>(
    g: &Graph,
    s: VertexSet,
    max_ell: usize,
    longest: &'a [CycleSeq],
) -> Result<Vec<(VertexSet, Vec<&'a CycleSeq>)>> {
    g.check_set(s)?;
    let mut out = Vec::new();
    for (trace, cycles) in by_trace(s, longest) {
        if trace.len() > max_ell {
            break;
        }
        let mut all_fenced = true;
        for c in &cycles {
            if classify(g, *c, s)?.crosses() {
                all_fenced = false;
                break;
            }
        }
        if all_fenced {
            out.push((trace, cycles));
        }
    }
    Ok(out)
}

/// Every attractor for `s` meeting it in at most `max_ell` vertices, sorted.
pub fn attractors_among(
    g: &Graph,
    s: VertexSet,
    max_ell: usize,
    longest: &[CycleSeq],
) -> Result<Vec<CycleSeq>> {
    let mut out: Vec<CycleSeq> = attractor_classes(g, s, max_ell, longest)?
        .into_iter()
        .flat_map(|(_, cycles)| cycles.into_iter().cloned())
        .collect();
    out.sort();
    Ok(out)
}

/// An attractor for `s` with at most `max_ell` vertices in `s`, chosen from
/// the smallest intersection class that has one.
pub fn find_attractor_among(
    g: &Graph,
    s: VertexSet,
    max_ell: usize,
    longest: &[CycleSeq],
) -> Result<Option<AttractorReport>> {
    let classes = attractor_classes(g, s, max_ell, longest)?;
    Ok(classes.into_iter().next().map(|(trace, cycles)| AttractorReport {
        cycle: cycles[0].clone(),
        set: s,
        k: trace.len(),
        is_attractor: true,
        violating_cycle: None,
    }))
}

/// [`find_attractor_among`] over a fresh enumeration of the longest cycles.
pub fn find_attractor(g: &Graph, s: VertexSet, max_ell: usize) -> Result<Option<AttractorReport>> {
    let longest = enumerate_longest_cycles(g)?;
    find_attractor_among(g, s, max_ell, &longest)
}

/// An exact longest cycle transversal with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LctResult {
    pub value: usize,
    /// The lexicographically least transversal of minimum size.
    pub transversal: VertexSet,
    /// Longest cycles that already force `value`, in canonical order.
    pub longest_cycles: Vec<CycleSeq>,
    #[serde(rename = "L")]
    pub longest_length: usize,
}

fn result_from(family: Vec<CycleSeq>, transversal: VertexSet, l: usize) -> LctResult {
    let mut longest_cycles = family;
    longest_cycles.sort();
    LctResult {
        value: transversal.len(),
        transversal,
        longest_cycles,
        longest_length: l,
    }
}

/// `lct(g)`, computed lazily: the optimum hitting set of the longest cycles
/// collected so far is tested against the graph, and any longest cycle that
/// avoids it joins the collection, until none does.
///
/// The final collection is usually far smaller than the set of all longest
/// cycles, yet its optimum is an optimum for all of them.
pub fn compute_lct(g: &Graph) -> Result<LctResult> {
    let l = longest_cycle_length(g)?;
    let all = g.vertices();
    let mut family = vec![find_cycle_of_length(g, l, all).expect("a cycle of length L exists")];
    let mut masks = vec![family[0].vertex_set()];
    loop {
        let x = min_hitting_set(&masks)?;
        match find_cycle_of_length(g, l, all - x) {
            Some(c) => {
                masks.push(c.vertex_set());
                family.push(c);
            }
            None => return Ok(result_from(family, x, l)),
        }
    }
}

/// `lct(g)` from a full list of its longest cycles.
pub fn compute_lct_from(g: &Graph, longest: &[CycleSeq]) -> Result<LctResult> {
    let Some(first) = longest.first() else {
        return Err(Error::NoCycle);
    };
    let masks: Vec<VertexSet> = longest.iter().map(|c| c.vertex_set()).collect();
    g.check_set(masks.iter().fold(VertexSet::EMPTY, |a, &m| a | m))?;
    let x = min_hitting_set(&masks)?;
    Ok(result_from(longest.to_vec(), x, first.len()))
}

/// `lct(g)` by scanning vertex subsets in order of size; a subset is a
/// transversal when deleting it leaves no cycle of length `L`.
pub fn lct_naive(g: &Graph) -> Result<usize> {
    if g.n() > NAIVE_LCT_LIMIT {
        return Err(Error::SizeLimit {
            what: "naive lct",
            limit: NAIVE_LCT_LIMIT,
            got: g.n(),
        });
    }
    let l = longest_cycle_length(g)?;
    let all = g.vertices();
    for size in 0..=g.n() {
        for x in all.subsets_of_size(size) {
            let rest = longest_cycle_length_within(g, all - x).unwrap_or(0);
            if rest < l {
                return Ok(size);
            }
        }
    }
    unreachable!("deleting every vertex removes every cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::PathSeq;
    use crate::fixtures;

    fn fig6() -> (Graph, VertexSet, CycleSeq) {
        let g = fixtures::fig1();
        let k = g.set_of(&["a", "b", "c", "d"]);
        let c = CycleSeq::new(&g, g.seq_of(&["a", "v2", "b", "c", "v5"])).unwrap();
        (g, k, c)
    }

    #[test]
    fn fig6_relations() {
        let (g, k, c) = fig6();
        let [a, b, cc] = [0, 1, 2];
        let (ab, bc, ca) = abc_parts(&c, a, b, cc).unwrap();
        assert!(!sim_k(&g, &ab, &ca, k).unwrap());
        assert!(!sim_k(&g, &ab, &bc, k).unwrap());
        assert!(!sim_k(&g, &bc, &ca, k).unwrap());
        assert!(breaks(&g, a, &c, k).unwrap());
        assert!(breaks(&g, b, &c, k).unwrap());
        assert!(breaks(&g, cc, &c, k).unwrap());
        assert!(breaks(&g, 3, &c, k).is_err());
    }

    #[test]
    fn sim_k_basics() {
        let (g, k, _) = fig6();
        let p = PathSeq::new(&g, g.seq_of(&["b", "v3", "v4", "c"])).unwrap();
        assert!(sim_k(&g, &p, &p, k).unwrap());
        let q = PathSeq::new(&g, g.seq_of(&["b", "v4"])).unwrap();
        assert!(sim_k(&g, &p, &q, k).unwrap());
        assert!(sim_k(&g, &q, &p, k).unwrap());
        let edge = PathSeq::new(&g, g.seq_of(&["b", "c"])).unwrap();
        assert!(!sim_k(&g, &edge, &p, k).unwrap());
    }

    #[test]
    fn non_breaking_vertex() {
        // 8-cycle meeting K = {0, 2, 5}; the chord 1-7 joins the two parts at 0
        // while {3, 4} stays cut off
        let mut g = Graph::cycle(8).unwrap();
        g.add_edge(1, 7).unwrap();
        let k = VertexSet::from_iter([0, 2, 5]);
        let c = CycleSeq::new(&g, (0..8).collect()).unwrap();
        assert!(classify(&g, &c, k).unwrap().crosses());
        assert!(!breaks(&g, 0, &c, k).unwrap());
        assert!(breaks(&g, 2, &c, k).unwrap());
    }

    #[test]
    fn attractors_on_small_graphs() {
        let g = Graph::cycle(6).unwrap();
        let longest = enumerate_longest_cycles(&g).unwrap();
        let r = is_attractor(&g, &longest[0], VertexSet::singleton(2), &longest).unwrap();
        assert!(r.is_attractor && r.k == 1);
        assert!(find_attractor(&g, VertexSet::singleton(2), 1).unwrap().is_some());

        let k4 = Graph::complete(4).unwrap();
        let longest = enumerate_longest_cycles(&k4).unwrap();
        let r = is_attractor(&k4, &longest[1], VertexSet::singleton(0), &longest).unwrap();
        assert!(r.is_attractor);
        assert!(find_attractor(&k4, k4.vertices(), 2).unwrap().is_none());

        let other = CycleSeq::new(&k4, vec![0, 1, 2]).unwrap();
        assert!(is_attractor(&k4, &other, VertexSet::singleton(0), &longest).is_err());
    }

    #[test]
    fn crossing_cycle_reports_a_violation() {
        let g = fixtures::fig1();
        let longest = enumerate_longest_cycles(&g).unwrap();
        let s = g.set_of(&["a", "b", "c", "d"]);
        for c in &longest {
            let r = is_attractor(&g, c, s, &longest).unwrap();
            if classify(&g, c, s).unwrap().crosses() {
                assert!(!r.is_attractor);
                let v = r.violating_cycle.unwrap();
                assert_eq!(v.vertex_set() & s, c.vertex_set() & s);
                assert!(classify(&g, &v, s).unwrap().crosses());
            }
        }
    }

    #[test]
    fn lct_small() {
        for n in 3..8 {
            let r = compute_lct(&Graph::cycle(n).unwrap()).unwrap();
            assert_eq!(r.value, 1);
            assert_eq!(r.transversal, VertexSet::singleton(0));
        }
        let r = compute_lct(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!((r.value, r.longest_length), (1, 4));
        assert_eq!(lct_naive(&Graph::cycle(5).unwrap()).unwrap(), 1);
        assert_eq!(lct_naive(&Graph::complete(4).unwrap()).unwrap(), 1);
        assert_eq!(compute_lct(&Graph::path(4).unwrap()), Err(Error::NoCycle));
    }

    #[test]
    fn lazy_and_full_agree() {
        for g in [fixtures::petersen(), fixtures::fig1(), fixtures::fig2(), fixtures::fig4()] {
            let lazy = compute_lct(&g).unwrap();
            let longest = enumerate_longest_cycles(&g).unwrap();
            let full = compute_lct_from(&g, &longest).unwrap();
            assert_eq!(lazy.value, full.value);
            assert_eq!(lazy.transversal, full.transversal);
            assert!(longest.iter().all(|c| c.vertex_set().intersects(lazy.transversal)));
        }
    }
}

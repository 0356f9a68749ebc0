//! Exhaustive cycle search.
//!
//! Every cycle is found exactly once from its least vertex `s`, growing a path
//! through vertices greater than `s`. A branch is cut when the vertices still
//! reachable from the path's end (through unused vertices) cannot lift the
//! cycle to the length being sought, or when none of them can close back to `s`.

use std::ops::ControlFlow;

use super::CycleSeq;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default cap on the number of cycles an enumeration may return.
pub const DEFAULT_CYCLE_LIMIT: usize = 1_000_000;

struct Dfs<'g> {
    g: &'g Graph,
    start_nbrs: VertexSet,
    allowed: VertexSet,
    path: Vec<usize>,
    visited: VertexSet,
}

impl<'g> Dfs<'g> {
    fn new(g: &'g Graph, start: usize, allowed: VertexSet) -> Self {
        let allowed = allowed & VertexSet::above(start);
        let mut path = Vec::with_capacity(g.n());
        path.push(start);
        Dfs {
            g,
            start_nbrs: g.neighbors(start) & allowed,
            allowed,
            path,
            visited: VertexSet::singleton(start),
        }
    }

    /// Vertices that may still extend the path from `v`.
    #[inline]
    fn extendable(&self, v: usize) -> VertexSet {
        let free = self.allowed & !self.visited;
        self.g.reach_within(v, free.with(v)).without(v)
    }

    #[inline]
    fn push(&mut self, w: usize) {
        self.path.push(w);
        self.visited.insert(w);
    }

    #[inline]
    fn pop(&mut self) {
        let w = self.path.pop().unwrap();
        self.visited.remove(w);
    }

    fn longest(&mut self, best: &mut usize) {
        let v = *self.path.last().unwrap();
        let len = self.path.len();
        if len >= 3 && self.start_nbrs.contains(v) && len > *best {
            *best = len;
        }
        let ext = self.extendable(v);
        if len + ext.len() <= *best || !ext.intersects(self.start_nbrs) {
            return;
        }
        for w in self.g.neighbors(v) & self.allowed & !self.visited {
            self.push(w);
            self.longest(best);
            self.pop();
        }
    }

    /// Visits each cycle of exactly `target` vertices once, in canonical
    /// orientation (second vertex smaller than the last).
    fn exact<F>(&mut self, target: usize, emit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let v = *self.path.last().unwrap();
        let len = self.path.len();
        if len == target {
            if len >= 3 && self.start_nbrs.contains(v) && self.path[1] < v {
                return emit(&self.path);
            }
            return ControlFlow::Continue(());
        }
        let ext = self.extendable(v);
        if len + ext.len() < target || !ext.intersects(self.start_nbrs) {
            return ControlFlow::Continue(());
        }
        for w in self.g.neighbors(v) & self.allowed & !self.visited {
            // the closing vertex must exceed the second one
            if len == 1 && (self.start_nbrs & VertexSet::above(w)).is_empty() {
                continue;
            }
            self.push(w);
            let flow = self.exact(target, emit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Visits every cycle through `start` (as least vertex) of any length.
    fn all<F>(&mut self, emit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let v = *self.path.last().unwrap();
        let len = self.path.len();
        if len >= 3 && self.start_nbrs.contains(v) && self.path[1] < v {
            emit(&self.path)?;
        }
        let ext = self.extendable(v);
        if !ext.intersects(self.start_nbrs) {
            return ControlFlow::Continue(());
        }
        for w in self.g.neighbors(v) & self.allowed & !self.visited {
            self.push(w);
            let flow = self.all(emit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Length of a longest cycle of `g[allowed]`, or `None` if it is acyclic.
pub fn longest_cycle_length_within(g: &Graph, allowed: VertexSet) -> Option<usize> {
    let allowed = allowed & g.vertices();
    let mut best = 0;
    for s in allowed {
        let upper = g.reach_within(s, allowed & VertexSet::above(s).with(s)).len();
        if upper <= best.max(2) {
            continue;
        }
        let mut dfs = Dfs::new(g, s, allowed);
        dfs.longest(&mut best);
    }
    (best >= 3).then_some(best)
}

/// `L(g)`, the length of a longest cycle.
pub fn longest_cycle_length(g: &Graph) -> Result<usize> {
    longest_cycle_length_within(g, g.vertices()).ok_or(Error::NoCycle)
}

fn visit_exact<F>(g: &Graph, target: usize, allowed: VertexSet, mut emit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let allowed = allowed & g.vertices();
    if target < 3 {
        return;
    }
    for s in allowed {
        if (allowed & VertexSet::above(s)).len() + 1 < target {
            break;
        }
        let mut dfs = Dfs::new(g, s, allowed);
        if dfs.exact(target, &mut emit).is_break() {
            return;
        }
    }
}

/// All cycles of `g[allowed]` with exactly `len` vertices, sorted by canonical form.
pub fn enumerate_cycles_of_length(
    g: &Graph,
    len: usize,
    allowed: VertexSet,
    limit: usize,
) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    let mut overflow = false;
    visit_exact(g, len, allowed, |p| {
        if out.len() == limit {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(CycleSeq::canonical(p.to_vec()));
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::SizeLimit {
            what: "cycle enumeration",
            limit,
            got: limit + 1,
        });
    }
    out.sort();
    Ok(out)
}

/// Every longest cycle of `g`, each once, sorted by canonical form.
pub fn enumerate_longest_cycles(g: &Graph) -> Result<Vec<CycleSeq>> {
    let l = longest_cycle_length(g)?;
    enumerate_cycles_of_length(g, l, g.vertices(), DEFAULT_CYCLE_LIMIT)
}

/// The first cycle of `g[allowed]` with exactly `len` vertices in canonical
/// order, if any.
pub fn find_cycle_of_length(g: &Graph, len: usize, allowed: VertexSet) -> Option<CycleSeq> {
    let mut found = None;
    visit_exact(g, len, allowed, |p| {
        found = Some(CycleSeq::canonical(p.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Every cycle of `g`, of any length, sorted by canonical form.
pub fn enumerate_cycles(g: &Graph, limit: usize) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for s in g.vertices() {
        let mut dfs = Dfs::new(g, s, g.vertices());
        let flow = dfs.all(&mut |p: &[usize]| {
            if out.len() == limit {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(CycleSeq::canonical(p.to_vec()));
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            break;
        }
    }
    if overflow {
        return Err(Error::SizeLimit {
            what: "cycle enumeration",
            limit,
            got: limit + 1,
        });
    }
    out.sort();
    Ok(out)
}

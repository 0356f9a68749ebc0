//! Paths and cycles as vertex sequences, their parts, and classification
//! against a vertex set.

mod search;

pub use search::{
    enumerate_cycles, enumerate_cycles_of_length, enumerate_longest_cycles, find_cycle_of_length,
    longest_cycle_length, longest_cycle_length_within, DEFAULT_CYCLE_LIMIT,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{separates, Graph};
use crate::vertex_set::VertexSet;

/// Anything that visits a sequence of distinct vertices.
pub trait Walk {
    fn vertices(&self) -> &[usize];

    fn vertex_set(&self) -> VertexSet {
        self.vertices().iter().collect()
    }

    fn contains(&self, v: usize) -> bool {
        self.vertices().contains(&v)
    }
}

/// A simple path, stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PathSeq {
    vertices: Vec<usize>,
}

impl PathSeq {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidWalk("a path needs at least one vertex".into()));
        }
        check_walk(g, &vertices, false)?;
        Ok(PathSeq { vertices })
    }

    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        PathSeq { vertices }
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reversed(&self) -> PathSeq {
        let mut v = self.vertices.clone();
        v.reverse();
        PathSeq { vertices: v }
    }

    /// Interior vertices (all but the two ends).
    pub fn interior(&self) -> VertexSet {
        if self.vertices.len() <= 2 {
            VertexSet::EMPTY
        } else {
            self.vertices[1..self.vertices.len() - 1].iter().collect()
        }
    }

    /// Equality up to traversal direction.
    pub fn same_path(&self, other: &PathSeq) -> bool {
        self == other || self.vertices.iter().eq(other.vertices.iter().rev())
    }
}

impl Walk for PathSeq {
    fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// A cycle in canonical form: the least vertex first, then the direction whose
/// second vertex is the smaller of the two neighbours of the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleSeq {
    vertices: Vec<usize>,
}

impl CycleSeq {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidWalk("a cycle needs at least three vertices".into()));
        }
        check_walk(g, &vertices, true)?;
        Ok(Self::canonical(vertices))
    }

    pub(crate) fn canonical(mut vertices: Vec<usize>) -> Self {
        let pos = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        vertices.rotate_left(pos);
        let len = vertices.len();
        if vertices[1] > vertices[len - 1] {
            vertices[1..].reverse();
        }
        CycleSeq { vertices }
    }

    /// Length in edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn position(&self, v: usize) -> Result<usize> {
        self.vertices
            .iter()
            .position(|&x| x == v)
            .ok_or(Error::NotOnCycle(v))
    }

    /// The arc from position `from` forward to position `to`, both inclusive.
    fn arc(&self, from: usize, to: usize) -> PathSeq {
        let len = self.len();
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(self.vertices[i]);
            if i == to {
                break;
            }
            i = (i + 1) % len;
        }
        PathSeq::from_vec_unchecked(out)
    }
}

impl Walk for CycleSeq {
    fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

impl fmt::Display for PathSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, &self.vertices, false)
    }
}

impl fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_seq(f, &self.vertices, true)
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, v: &[usize], closed: bool) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    if closed {
        write!(f, " {}", v[0])?;
    }
    Ok(())
}

/// Formats a walk using the graph's labels.
pub fn display_walk(g: &Graph, w: &impl Walk) -> String {
    w.vertices()
        .iter()
        .map(|&v| g.label(v))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_walk(g: &Graph, vertices: &[usize], closed: bool) -> Result<()> {
    let mut seen = VertexSet::EMPTY;
    for &v in vertices {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(Error::InvalidWalk(format!("vertex {v} repeats")));
        }
        seen.insert(v);
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::InvalidWalk(format!("{}-{} is not an edge", w[0], w[1])));
        }
    }
    if closed {
        let (a, b) = (vertices[vertices.len() - 1], vertices[0]);
        if !g.has_edge(a, b) {
            return Err(Error::InvalidWalk(format!("{a}-{b} is not an edge")));
        }
    }
    Ok(())
}

/// Result of joining two paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joined {
    Path(PathSeq),
    Cycle(CycleSeq),
}

/// `a · b`: the union of two paths sharing an end, when it is a path or a cycle.
///
/// The paths may be given in either direction.
pub fn concat(a: &PathSeq, b: &PathSeq) -> Result<Joined> {
    let orientations = [
        (a.clone(), b.clone()),
        (a.clone(), b.reversed()),
        (a.reversed(), b.clone()),
        (a.reversed(), b.reversed()),
    ];
    let (x, y) = orientations
        .into_iter()
        .find(|(x, y)| x.last() == y.first())
        .ok_or_else(|| Error::NotComposable(format!("paths {a} and {b} share no end")))?;

    let closes = x.vertices.len() > 1 && y.vertices.len() > 1 && y.last() == x.first();
    let mut joined = x.vertices.clone();
    let tail_end = if closes {
        y.vertices.len() - 1
    } else {
        y.vertices.len()
    };
    joined.extend_from_slice(&y.vertices[1..tail_end]);

    let mut seen = VertexSet::EMPTY;
    for &v in &joined {
        if seen.contains(v) {
            return Err(Error::NotComposable(format!(
                "paths {a} and {b} overlap at vertex {v}"
            )));
        }
        seen.insert(v);
    }
    if closes {
        if joined.len() < 3 {
            return Err(Error::NotComposable(format!(
                "paths {a} and {b} would close a two-vertex cycle"
            )));
        }
        Ok(Joined::Cycle(CycleSeq::canonical(joined)))
    } else {
        Ok(Joined::Path(PathSeq::from_vec_unchecked(joined)))
    }
}

/// The two `ab`-parts of `c`: the arc from `a` to `b` and the arc from `b` back
/// to `a`, both following the stored direction of `c`.
pub fn ab_parts(c: &CycleSeq, a: usize, b: usize) -> Result<(PathSeq, PathSeq)> {
    if a == b {
        return Err(Error::precondition("ab-parts need two distinct vertices"));
    }
    let pa = c.position(a)?;
    let pb = c.position(b)?;
    Ok((c.arc(pa, pb), c.arc(pb, pa)))
}

/// The `abc`-parts `(C_ab, C_bc, C_ca)`, oriented `a→b`, `b→c`, `c→a`.
pub fn abc_parts(cycle: &CycleSeq, a: usize, b: usize, c: usize) -> Result<(PathSeq, PathSeq, PathSeq)> {
    if a == b || b == c || a == c {
        return Err(Error::precondition("abc-parts need three distinct vertices"));
    }
    let pa = cycle.position(a)?;
    let pb = cycle.position(b)?;
    let pc = cycle.position(c)?;
    let len = cycle.len();
    // forward distance from a to b, compared with a to c
    let db = (pb + len - pa) % len;
    let dc = (pc + len - pa) % len;
    if db < dc {
        Ok((cycle.arc(pa, pb), cycle.arc(pb, pc), cycle.arc(pc, pa)))
    } else {
        Ok((
            cycle.arc(pb, pa).reversed(),
            cycle.arc(pc, pb).reversed(),
            cycle.arc(pa, pc).reversed(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Crosses,
    Fenced,
}

/// How a path or cycle meets a vertex set: `k`-crosses or is `k`-fenced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub k: usize,
    pub verdict: Verdict,
    pub trace: VertexSet,
}

impl Classification {
    pub fn crosses(&self) -> bool {
        self.verdict == Verdict::Crosses
    }

    pub fn fenced(&self) -> bool {
        self.verdict == Verdict::Fenced
    }
}

/// Classifies a path or cycle against `s`. An object living entirely inside `s`
/// has nothing to separate and is fenced.
pub fn classify(g: &Graph, object: &impl Walk, s: VertexSet) -> Result<Classification> {
    let vs = object.vertex_set();
    g.check_set(vs)?;
    let trace = vs & s;
    let verdict = if separates(g, s, vs)? {
        Verdict::Crosses
    } else {
        Verdict::Fenced
    };
    Ok(Classification {
        k: trace.len(),
        verdict,
        trace,
    })
}

/// Whether two cycles meet `s` in the same vertices.
pub fn s_equivalent(c: &impl Walk, d: &impl Walk, s: VertexSet) -> bool {
    c.vertex_set() & s == d.vertex_set() & s
}

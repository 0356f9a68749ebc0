//! Checks of the structural bounds on longest cycle transversals, run on
//! single graphs or on seeded batches, reported as JSON lines.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chordal::{is_chordal, maximal_cliques, Chordality};
use crate::cycles::{enumerate_longest_cycles, longest_cycle_length, CycleSeq, Walk};
use crate::error::{Error, Result};
use crate::gen::{Family, GenSpec};
use crate::graph::{is_2connected, max_clique_size, Graph};
use crate::transversal::{compute_lct, find_attractor_among, LctResult};
use crate::treedec::{exact_treewidth, make_full, validate, TreeDecomposition, TREEWIDTH_LIMIT};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Any two longest cycles share at least two vertices.
    Prop1,
    /// `lct <= tw + 1`, and `lct <= ω` for chordal graphs.
    Cor1,
    /// `lct <= k - 1` for partial k-trees.
    Thm1,
    /// `lct <= max(1, ω - 3)` for chordal graphs.
    Thm2,
    /// Large lct forces an attractor of size at most 2 at every bag of a full decomposition.
    Lemma5,
    /// Large lct forces small attractors at every maximal clique of a chordal graph.
    Lemma6,
    /// `lct = 1` for chordal graphs; observed, never failed.
    ConjectureChordal,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Prop1,
        Check::Cor1,
        Check::Thm1,
        Check::Thm2,
        Check::Lemma5,
        Check::Lemma6,
        Check::ConjectureChordal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Prop1 => "prop1",
            Check::Cor1 => "cor1",
            Check::Thm1 => "thm1",
            Check::Thm2 => "thm2",
            Check::Lemma5 => "lemma5",
            Check::Lemma6 => "lemma6",
            Check::ConjectureChordal => "conjecture-chordal",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A logged observation that contradicts an open conjecture.
    Finding,
}

/// One JSON report line. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub check: Check,
    pub seed: u64,
    pub n: usize,
    pub k: Option<usize>,
    pub omega: Option<usize>,
    pub tw: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub lct: Option<usize>,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl ReportLine {
    fn new(check: Check, g: &Graph) -> Self {
        ReportLine {
            check,
            seed: 0,
            n: g.n(),
            k: None,
            omega: None,
            tw: None,
            l: None,
            lct: None,
            verdict: Outcome::Pass,
            witness: None,
        }
    }

    fn with_lct(mut self, r: &LctResult) -> Self {
        self.l = Some(r.longest_length);
        self.lct = Some(r.value);
        self
    }

    fn judged(mut self, ok: bool) -> Self {
        self.verdict = if ok { Outcome::Pass } else { Outcome::Fail };
        self
    }

    /// A failing line whose witness carries the graph next to `evidence`.
    fn failed(mut self, g: &Graph, evidence: Value) -> Self {
        self.verdict = Outcome::Fail;
        self.witness = Some(certificate(g, evidence));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Outcome::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines serialize")
    }
}

fn require_2connected(g: &Graph) -> Result<()> {
    if is_2connected(g) {
        Ok(())
    } else {
        Err(Error::precondition("graph is not 2-connected"))
    }
}

fn require_chordal(g: &Graph) -> Result<()> {
    match is_chordal(g) {
        Chordality::Chordal(_) => Ok(()),
        Chordality::NotChordal(_) => Err(Error::NotChordal),
    }
}

fn treewidth_if_small(g: &Graph) -> Result<Option<usize>> {
    if g.n() <= TREEWIDTH_LIMIT {
        Ok(Some(exact_treewidth(g)?.width))
    } else {
        Ok(None)
    }
}

fn certificate(g: &Graph, evidence: Value) -> Value {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    json!({ "graph": { "n": g.n(), "edges": edges }, "evidence": evidence })
}

fn lct_witness(r: &LctResult) -> Value {
    json!({ "transversal": r.transversal, "longest_cycles": r.longest_cycles })
}

/// Every pair of longest cycles of a 2-connected graph meets in two or more vertices.
pub fn verify_prop1(g: &Graph) -> Result<ReportLine> {
    require_2connected(g)?;
    let longest = enumerate_longest_cycles(g)?;
    let mut line = ReportLine::new(Check::Prop1, g);
    line.omega = Some(max_clique_size(g));
    line.tw = treewidth_if_small(g)?;
    line.l = longest.first().map(CycleSeq::len);

    let mut by_set: Vec<(VertexSet, &CycleSeq)> = longest.iter().map(|c| (c.vertex_set(), c)).collect();
    by_set.sort_by_key(|(s, _)| s.bits());
    by_set.dedup_by_key(|(s, _)| *s);
    for (i, (a, c)) in by_set.iter().enumerate() {
        for (b, d) in &by_set[i + 1..] {
            if (*a & *b).len() < 2 {
                return Ok(line.failed(g, json!({ "cycles": [c, d] })));
            }
        }
    }
    Ok(line.judged(true))
}

/// `lct <= tw + 1`; for chordal graphs also `lct <= ω`.
pub fn verify_cor1(g: &Graph) -> Result<ReportLine> {
    require_2connected(g)?;
    let tw = exact_treewidth(g)?.width;
    let r = compute_lct(g)?;
    let omega = max_clique_size(g);
    let chordal = is_chordal(g).is_chordal();
    let mut line = ReportLine::new(Check::Cor1, g).with_lct(&r);
    line.tw = Some(tw);
    line.omega = Some(omega);
    let ok = r.value <= tw + 1 && (!chordal || r.value <= omega);
    if !ok {
        return Ok(line.failed(g, lct_witness(&r)));
    }
    Ok(line.judged(true))
}

/// `lct <= k - 1` for a 2-connected graph of treewidth at most `k`. Without
/// `k`, the exact treewidth is used.
pub fn verify_thm1(g: &Graph, k: Option<usize>) -> Result<ReportLine> {
    require_2connected(g)?;
    let tw = exact_treewidth(g)?.width;
    let k = k.unwrap_or(tw);
    if tw > k {
        return Err(Error::precondition(format!("treewidth {tw} exceeds k = {k}")));
    }
    let r = compute_lct(g)?;
    let mut line = ReportLine::new(Check::Thm1, g).with_lct(&r);
    line.k = Some(k);
    line.tw = Some(tw);
    line.omega = Some(max_clique_size(g));
    let ok = r.value + 1 <= k;
    if !ok {
        return Ok(line.failed(g, lct_witness(&r)));
    }
    Ok(line.judged(true))
}

/// `lct <= max(1, ω - 3)` for a 2-connected chordal graph.
pub fn verify_thm2(g: &Graph) -> Result<ReportLine> {
    require_2connected(g)?;
    require_chordal(g)?;
    let omega = max_clique_size(g);
    let r = compute_lct(g)?;
    let mut line = ReportLine::new(Check::Thm2, g).with_lct(&r);
    line.omega = Some(omega);
    line.tw = Some(omega - 1);
    let ok = r.value <= 1.max(omega.saturating_sub(3));
    if !ok {
        return Ok(line.failed(g, lct_witness(&r)));
    }
    Ok(line.judged(true))
}

/// For a full decomposition of a 2-connected graph: at every node `t` with
/// `lct > |V_t| - 2`, some longest cycle is an attractor for `V_t` meeting it
/// in at most two vertices.
pub fn verify_lemma5(g: &Graph, d: &TreeDecomposition) -> Result<ReportLine> {
    require_2connected(g)?;
    let report = validate(g, d);
    if !report.is_valid() {
        return Err(Error::InvalidDecomposition(format!("{:?}", report.violations)));
    }
    let k = d.max_bag_size().saturating_sub(1);
    if !d.is_full(k) {
        return Err(Error::precondition("decomposition is not full"));
    }
    let r = compute_lct(g)?;
    let mut line = ReportLine::new(Check::Lemma5, g).with_lct(&r);
    line.k = Some(k);
    line.omega = Some(max_clique_size(g));

    let hypothesis: Vec<usize> = (0..d.node_count())
        .filter(|&t| r.value + 2 > d.bag(t).len())
        .collect();
    let mut attractors = Vec::new();
    if !hypothesis.is_empty() {
        let longest = enumerate_longest_cycles(g)?;
        for &t in &hypothesis {
            match find_attractor_among(g, d.bag(t), 2, &longest)? {
                Some(a) => attractors.push(json!({ "node": t, "cycle": a.cycle, "ell": a.k })),
                None => {
                    let evidence = json!({ "node": t, "bag": d.bag(t), "transversal": r.transversal });
                    return Ok(line.failed(g, evidence));
                }
            }
        }
    }
    line.witness = Some(json!({ "hypothesis_nodes": hypothesis, "attractors": attractors }));
    Ok(line.judged(true))
}

/// For a 2-connected chordal graph with `lct > max(1, ω - 3)`: every maximal
/// clique `Q` with `|Q| >= 2` has an attractor meeting it in at most
/// `min(3, |Q| - 1)` vertices.
pub fn verify_lemma6(g: &Graph) -> Result<ReportLine> {
    require_2connected(g)?;
    let cliques = maximal_cliques(g)?;
    let omega = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
    let r = compute_lct(g)?;
    let mut line = ReportLine::new(Check::Lemma6, g).with_lct(&r);
    line.omega = Some(omega);
    line.tw = Some(omega.saturating_sub(1));
    let hypothesis = r.value > 1.max(omega.saturating_sub(3));
    if hypothesis {
        let longest = enumerate_longest_cycles(g)?;
        for q in cliques.iter().filter(|q| q.len() >= 2) {
            let bound = 3.min(q.len() - 1);
            if find_attractor_among(g, *q, bound, &longest)?.is_none() {
                return Ok(line.failed(g, json!({ "clique": q, "ell_bound": bound })));
            }
        }
    }
    line.witness = Some(json!({ "hypothesis": hypothesis }));
    Ok(line.judged(true))
}

/// Records whether all longest cycles of a 2-connected chordal graph share a
/// vertex. A graph where they do not is reported as a finding.
pub fn verify_conjecture_chordal(g: &Graph) -> Result<ReportLine> {
    require_2connected(g)?;
    require_chordal(g)?;
    let r = compute_lct(g)?;
    let mut line = ReportLine::new(Check::ConjectureChordal, g).with_lct(&r);
    let omega = max_clique_size(g);
    line.omega = Some(omega);
    line.tw = Some(omega - 1);
    if r.value == 1 {
        line.verdict = Outcome::Pass;
    } else {
        line.verdict = Outcome::Finding;
        line.witness = Some(certificate(g, lct_witness(&r)));
    }
    Ok(line)
}

/// A full decomposition of `g`: `given` if it is full already, otherwise one
/// built from an optimal decomposition.
fn full_decomposition(g: &Graph, given: Option<TreeDecomposition>) -> Result<TreeDecomposition> {
    if let Some(d) = given {
        let k = d.max_bag_size().saturating_sub(1);
        if d.is_full(k) && validate(g, &d).is_valid() {
            return Ok(d);
        }
        return make_full(g, &d, k);
    }
    let tw = exact_treewidth(g)?;
    make_full(g, &tw.decomposition, tw.width)
}

/// Runs `check` on a single graph. `k` is the treewidth bound for `thm1`;
/// `decomposition` is used by `lemma5`.
pub fn verify_graph(
    check: Check,
    g: &Graph,
    k: Option<usize>,
    decomposition: Option<TreeDecomposition>,
) -> Result<ReportLine> {
    match check {
        Check::Prop1 => verify_prop1(g),
        Check::Cor1 => verify_cor1(g),
        Check::Thm1 => verify_thm1(g, k),
        Check::Thm2 => verify_thm2(g),
        Check::Lemma5 => verify_lemma5(g, &full_decomposition(g, decomposition)?),
        Check::Lemma6 => verify_lemma6(g),
        Check::ConjectureChordal => verify_conjecture_chordal(g),
    }
}

/// Generates the instance described by `spec` and checks it.
pub fn verify_instance(check: Check, spec: &GenSpec) -> Result<ReportLine> {
    let generated = spec.generate()?;
    let tree_family = matches!(
        spec.family,
        Family::Ktree | Family::PartialKtree | Family::SeriesParallel
    );
    let k = match spec.family {
        Family::SeriesParallel => Some(2),
        _ if tree_family => Some(spec.k),
        _ => None,
    };
    let mut line = verify_graph(check, &generated.graph, k, generated.decomposition)?;
    line.seed = spec.seed;
    if line.k.is_none() && tree_family {
        line.k = k;
    }
    Ok(line)
}

/// Seed of instance `i` of a batch.
pub fn instance_seed(master: u64, i: usize) -> u64 {
    master ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// A seeded batch of generated instances for one check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BatchSpec {
    pub check: Check,
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub p: f64,
}

impl BatchSpec {
    pub fn instance(&self, i: usize) -> GenSpec {
        GenSpec {
            family: self.family,
            n: self.n,
            k: self.k,
            p: self.p,
            seed: instance_seed(self.seed, i),
        }
    }
}

/// Runs every instance of `batch` in parallel; results are in instance order
/// whatever the thread count.
pub fn run_batch(batch: &BatchSpec) -> Vec<Result<ReportLine>> {
    (0..batch.count)
        .into_par_iter()
        .map(|i| verify_instance(batch.check, &batch.instance(i)))
        .collect()
}

/// `L(g)` and whether `g` is 2-connected, for quick summaries.
pub fn summary(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "m": g.edge_count(),
        "two_connected": is_2connected(g),
        "L": longest_cycle_length(g).ok(),
    })
}

//! End to end: split, sample, forest, auxiliary digraph, conflict DFS,
//! assembly into one induced path.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conflict_dfs::{find_admissible_path, AdmissiblePath, ConflictSystem, DfsError, Digraph};
use crate::forest::{build_induced_linear_forest, verify_induced_forest, ForestError, LinearForest};
use crate::graph::{induced_subgraph, is_induced_path, sample_gnp, split_vertices, GnpParams, Graph, GraphError};

/// Forest builder restarts used by [`full_pipeline`].
pub const DEFAULT_FOREST_ROUNDS: usize = 4;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("forest is not an induced linear forest of the graph")]
    UncertifiedForest,
    #[error("connector set overlaps the forest at vertex {0}")]
    ConnectorInForest(usize),
    #[error("witness table inconsistent: {0}")]
    InconsistentWitness(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Dfs(#[from] DfsError),
}

pub type Result<T> = std::result::Result<T, PipelineError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Asymptotic formulas taken literally.
    Paper,
    /// Desk-scale substitutes for `L` and `m`.
    Practical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Practical => "practical",
        })
    }
}

impl FromStr for Mode {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper-faithful" => Ok(Mode::Paper),
            "practical" => Ok(Mode::Practical),
            other => Err(PipelineError::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

/// Scalar knobs of one pipeline run. `l`, `m`, `n_components` and
/// `k_target` are the values actually used; the `raw_` fields are the
/// unrounded formula values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub n: usize,
    pub d: f64,
    pub eps: f64,
    pub p: f64,
    pub mode: Mode,
    pub l: usize,
    pub m: usize,
    pub k_target: usize,
    pub n_components: usize,
    pub raw_l: f64,
    pub raw_m: f64,
    pub raw_k: f64,
    /// Paper mode only: the formula gave `L < 3`, so the smallest valid
    /// `L = 3, m = 1` is used instead.
    pub degenerate: bool,
}

/// `k = (3/2 - eps/4) (n/d) ln d`, then `L`, `m`, `N` per `mode`.
///
/// Paper mode uses `L = sqrt(d) / ln^5 d`, `m = eps L / 8`, `N = k / L`
/// (floored). Practical mode uses `L = max(3, round(sqrt d))`,
/// `m = max(1, round(eps L / 8))` and `N = round(k / L)`. In both modes
/// `m` is clamped so that `2m < L`, and `k_target = N L`.
pub fn pipeline_params(n: usize, d: f64, eps: f64, mode: Mode) -> Result<PipelineParams> {
    if !(d >= 2.0 && d.is_finite()) {
        return Err(PipelineError::InvalidParams(format!("need d >= 2, got {d}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(PipelineError::InvalidParams(format!("need 0 < eps < 1, got {eps}")));
    }
    if d > n as f64 {
        return Err(PipelineError::InvalidParams(format!("need d <= n, got d = {d}, n = {n}")));
    }
    let ln_d = d.ln();
    let raw_k = (1.5 - eps / 4.0) * (n as f64 / d) * ln_d;
    let (raw_l, l, mut m, n_components, degenerate);
    match mode {
        Mode::Paper => {
            raw_l = d.sqrt() / ln_d.powi(5);
            degenerate = raw_l < 3.0;
            l = if degenerate { 3 } else { raw_l.floor() as usize };
            m = ((eps * l as f64 / 8.0).floor() as usize).max(1);
            n_components = (raw_k / l as f64).floor() as usize;
        }
        Mode::Practical => {
            raw_l = d.sqrt();
            degenerate = false;
            l = (raw_l.round() as usize).max(3);
            m = ((eps * l as f64 / 8.0).round() as usize).max(1);
            n_components = (raw_k / l as f64).round() as usize;
        }
    }
    m = m.min((l - 1) / 2);
    if degenerate {
        log::warn!("paper-mode L = {raw_l:.3e} < 3 at d = {d}; using L = 3, m = 1");
    }
    Ok(PipelineParams {
        n,
        d,
        eps,
        p: d / n as f64,
        mode,
        l,
        m,
        k_target: n_components * l,
        n_components,
        raw_l,
        raw_m: eps * raw_l / 8.0,
        raw_k,
        degenerate,
    })
}

/// A connector `a` joining the tail segment of one component to the head
/// segment of another. Vertex labels are host labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AuxEdgeWitness {
    pub source_component: usize,
    pub target_component: usize,
    pub connector: usize,
    pub attach_tail: usize,
    pub attach_head: usize,
}

/// Auxiliary digraph over forest components. Representatives are local
/// connector ids: id `i` stands for host vertex `connectors[i]`, and the
/// conflict graph is the host graph induced on `connectors`.
#[derive(Clone, Debug)]
pub struct AuxDigraph {
    pub digraph: Digraph,
    pub conflicts: ConflictSystem,
    pub connectors: Vec<usize>,
    /// Sorted by (source, target, connector).
    pub witnesses: Vec<AuxEdgeWitness>,
}

impl AuxDigraph {
    pub fn witness(&self, source: usize, target: usize, connector: usize) -> Option<&AuxEdgeWitness> {
        self.witnesses
            .binary_search_by_key(&(source, target, connector), |w| {
                (w.source_component, w.target_component, w.connector)
            })
            .ok()
            .map(|i| &self.witnesses[i])
    }
}

fn check_segment(l: usize, m: usize) -> Result<()> {
    if m == 0 || 2 * m >= l {
        return Err(ForestError::SegmentLength { m, order: l }.into());
    }
    Ok(())
}

/// Every `a` in `v2` with exactly two forest neighbors, one among the last
/// `m` vertices of a component `P1` and one among the first `m` of a
/// different component `P2`, contributes the arc `P1 -> P2` with `a` in its
/// candidate set. One pass over the neighbor lists of `v2`.
pub fn build_aux_digraph(g: &Graph, f: &LinearForest, v2: &[usize], m: usize) -> Result<AuxDigraph> {
    let l = f.component_order;
    check_segment(l, m)?;
    if !verify_induced_forest(g, f) {
        return Err(PipelineError::UncertifiedForest);
    }
    let n = g.vertex_count();
    let mut place: Vec<Option<(u32, u32)>> = vec![None; n];
    for (c, comp) in f.components.iter().enumerate() {
        for (i, &v) in comp.iter().enumerate() {
            place[v] = Some((c as u32, i as u32));
        }
    }
    let mut witnesses = Vec::new();
    for &a in v2 {
        if a >= n {
            return Err(GraphError::VertexOutOfRange { vertex: a, n }.into());
        }
        if place[a].is_some() {
            return Err(PipelineError::ConnectorInForest(a));
        }
        let mut hits = [(0u32, 0u32, 0usize); 2];
        let mut count = 0;
        for &w in g.neighbors(a) {
            if let Some((c, i)) = place[w as usize] {
                if count == 2 {
                    count = 3;
                    break;
                }
                hits[count] = (c, i, w as usize);
                count += 1;
            }
        }
        if count != 2 {
            continue;
        }
        let is_tail = |i: u32| i as usize >= l - m;
        let is_head = |i: u32| (i as usize) < m;
        for (t, h) in [(hits[0], hits[1]), (hits[1], hits[0])] {
            if t.0 != h.0 && is_tail(t.1) && is_head(h.1) {
                witnesses.push(AuxEdgeWitness {
                    source_component: t.0 as usize,
                    target_component: h.0 as usize,
                    connector: a,
                    attach_tail: t.2,
                    attach_head: h.2,
                });
            }
        }
    }
    witnesses.sort_unstable();

    let mut connectors: Vec<usize> = witnesses.iter().map(|w| w.connector).collect();
    connectors.sort_unstable();
    connectors.dedup();
    let local: HashMap<usize, usize> = connectors.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut arcs: Vec<(usize, usize)> =
        witnesses.iter().map(|w| (w.source_component, w.target_component)).collect();
    arcs.dedup();
    let digraph = Digraph::from_arcs(f.component_count(), &arcs)?;
    let mut assignment = vec![Vec::new(); digraph.arc_count()];
    for w in &witnesses {
        let arc = digraph.arc_id(w.source_component, w.target_component).expect("arc was inserted");
        assignment[arc].push(local[&w.connector]);
    }
    let (conflict_graph, _) = induced_subgraph(g, &connectors)?;
    let conflicts = ConflictSystem::new(&digraph, conflict_graph, assignment)?;
    Ok(AuxDigraph { digraph, conflicts, connectors, witnesses })
}

/// Concatenates the components along `ap`: each component is kept from the
/// vertex where the previous connector attaches (its head for the first
/// component) to the vertex where the next connector attaches (its tail for
/// the last), with the connectors in between.
pub fn assemble_induced_path(
    f: &LinearForest,
    aux: &AuxDigraph,
    ap: &AdmissiblePath,
    m: usize,
) -> Result<Vec<usize>> {
    ap.validate(&aux.digraph, &aux.conflicts)?;
    let l = f.component_order;
    check_segment(l, m)?;
    let mut path = Vec::new();
    let mut start = 0;
    for (i, &c) in ap.vertices.iter().enumerate() {
        let comp = f.components.get(c).ok_or_else(|| {
            PipelineError::InconsistentWitness(format!("component {c} not in forest"))
        })?;
        let Some(&rep) = ap.representatives.get(i) else {
            path.extend_from_slice(&comp[start..]);
            break;
        };
        let next = ap.vertices[i + 1];
        let a = *aux.connectors.get(rep).ok_or_else(|| {
            PipelineError::InconsistentWitness(format!("representative {rep} has no connector"))
        })?;
        let w = aux.witness(c, next, a).ok_or_else(|| {
            PipelineError::InconsistentWitness(format!("no witness for {c} -> {next} via {a}"))
        })?;
        let tail = comp.iter().position(|&v| v == w.attach_tail).filter(|&t| t >= l - m);
        let head = f.components[next].iter().position(|&v| v == w.attach_head).filter(|&h| h < m);
        let (Some(tail), Some(head)) = (tail, head) else {
            return Err(PipelineError::InconsistentWitness(format!(
                "attachments of {a} not in the segments of {c} -> {next}"
            )));
        };
        path.extend_from_slice(&comp[start..=tail]);
        path.push(a);
        start = head;
    }
    Ok(path)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub components_built: usize,
    pub components_used: usize,
    pub forest_order: usize,
    pub aux_edge_count: usize,
    pub admissible_edge_length: usize,
    pub final_vertex_length: usize,
    pub normalized_constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub params: PipelineParams,
    pub seed: u64,
    pub path: Vec<usize>,
    pub certified: bool,
    pub stats: PipelineStats,
}

/// The graph a pipeline run with these parameters and seed samples.
pub fn pipeline_graph(params: &PipelineParams, seed: u64) -> Graph {
    sample_gnp(GnpParams::new(params.n, params.p), seed)
}

pub fn full_pipeline(n: usize, d: f64, eps: f64, seed: u64, mode: Mode) -> Result<PipelineRecord> {
    run_pipeline(&pipeline_params(n, d, eps, mode)?, seed, DEFAULT_FOREST_ROUNDS)
}

pub fn run_pipeline(params: &PipelineParams, seed: u64, forest_rounds: usize) -> Result<PipelineRecord> {
    let g = pipeline_graph(params, seed);
    run_pipeline_on(&g, params, seed, forest_rounds)
}

/// Pipeline on a given host graph; `seed` drives the split and the forest.
pub fn run_pipeline_on(
    g: &Graph,
    params: &PipelineParams,
    seed: u64,
    forest_rounds: usize,
) -> Result<PipelineRecord> {
    let split = split_vertices(g.vertex_count(), seed)?;
    let mut forest = build_induced_linear_forest(g, &split.part_one, params.l, forest_rounds, seed)?;
    let components_built = forest.component_count();
    forest.truncate(params.n_components);
    let aux = build_aux_digraph(g, &forest, &split.part_two, params.m)?;
    let ap = find_admissible_path(&aux.digraph, &aux.conflicts);
    let path = assemble_induced_path(&forest, &aux, &ap, params.m)?;
    let certified = is_induced_path(g, &path);
    let final_vertex_length = path.len();
    let stats = PipelineStats {
        components_built,
        components_used: forest.component_count(),
        forest_order: forest.order(),
        aux_edge_count: aux.digraph.arc_count(),
        admissible_edge_length: ap.edge_length(),
        final_vertex_length,
        normalized_constant: final_vertex_length as f64 * params.d / (params.n as f64 * params.d.ln()),
    };
    Ok(PipelineRecord { params: params.clone(), seed, path, certified, stats })
}

//! Depth-first search for admissible paths under a conflict system.
//!
//! A conflict system on the edges of a digraph is a conflict graph `C`
//! together with an assignment of a set of candidate representatives (vertices
//! of `C`) to every digraph edge. A directed path is admissible when its edges
//! can be given pairwise distinct representatives, each from its own edge's
//! candidate set, that are pairwise non-adjacent in `C`.
//!
//! [`DfsState`] runs the exploration one move at a time. It keeps explored
//! vertices `S`, unvisited vertices `T`, a stack `U`, and the set `X` of
//! representatives handed out so far. `X` only ever grows: a vertex that
//! leaves the stack does not give its representative back. If every pair of
//! disjoint `k`-sets `S, T` and every `X` with `|X| <= N - 1` leave some edge
//! from `S` to `T` with a representative outside `X` and free of conflicts
//! with `X`, the longest stack seen during the run has at least `N - 2k + 2`
//! vertices.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{read_edge_list, write_edge_list, Graph, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum DfsError {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(usize, usize),
    #[error("no arc {0}->{1}")]
    MissingArc(usize, usize),
    #[error("assignment covers {got} arcs, digraph has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("representative {rep} out of range for a conflict graph on {universe} vertices")]
    RepresentativeOutOfRange { rep: usize, universe: usize },
    #[error("search already terminated")]
    Terminated,
    #[error("instance too large for exhaustive check: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("path is not admissible: {0}")]
    NotAdmissible(String),
    #[error("instance parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, DfsError>;

/// Directed graph with sorted out-lists. Arc ids are positions in the
/// concatenated out-lists, so arcs leaving `u` occupy a contiguous id range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut sorted = Vec::with_capacity(arcs.len());
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(DfsError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(DfsError::SelfLoop(u));
            }
            sorted.push((u, v as u32));
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DfsError::DuplicateArc(w[0].0, w[0].1 as usize));
        }
        let mut offsets = vec![0; n + 1];
        for &(u, _) in &sorted {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Ok(Digraph { offsets, targets: sorted.into_iter().map(|(_, v)| v).collect() })
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let arcs: Vec<_> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        Self::from_arcs(n, &arcs).expect("complete digraph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn out_neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Id of the first arc leaving `u`.
    pub fn first_arc(&self, u: usize) -> usize {
        self.offsets[u]
    }

    pub fn arc_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.vertex_count() {
            return None;
        }
        self.out_neighbors(u).binary_search(&(v as u32)).ok().map(|i| self.offsets[u] + i)
    }

    /// Arcs in id order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v as usize)))
    }
}

/// Conflict graph plus per-arc candidate representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictSystem {
    conflict_graph: Graph,
    assignment: Vec<Vec<u32>>,
}

impl ConflictSystem {
    /// `assignment[id]` lists the candidates of arc `id`; lists are sorted and
    /// deduplicated here.
    pub fn new(digraph: &Digraph, conflict_graph: Graph, assignment: Vec<Vec<usize>>) -> Result<Self> {
        if assignment.len() != digraph.arc_count() {
            return Err(DfsError::AssignmentLength {
                expected: digraph.arc_count(),
                got: assignment.len(),
            });
        }
        let universe = conflict_graph.vertex_count();
        let mut lists = Vec::with_capacity(assignment.len());
        for mut reps in assignment {
            reps.sort_unstable();
            reps.dedup();
            if let Some(&rep) = reps.iter().find(|&&r| r >= universe) {
                return Err(DfsError::RepresentativeOutOfRange { rep, universe });
            }
            lists.push(reps.into_iter().map(|r| r as u32).collect());
        }
        Ok(ConflictSystem { conflict_graph, assignment: lists })
    }

    /// Builds the assignment from `(arc, candidates)` pairs; arcs not listed
    /// get no candidates.
    pub fn from_arc_map<I>(digraph: &Digraph, conflict_graph: Graph, map: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<usize>)>,
    {
        let mut assignment = vec![Vec::new(); digraph.arc_count()];
        for ((u, v), reps) in map {
            let id = digraph.arc_id(u, v).ok_or(DfsError::MissingArc(u, v))?;
            assignment[id].extend(reps);
        }
        Self::new(digraph, conflict_graph, assignment)
    }

    pub fn conflict_graph(&self) -> &Graph {
        &self.conflict_graph
    }

    /// Number of potential representatives, `|V(C)|`.
    pub fn universe(&self) -> usize {
        self.conflict_graph.vertex_count()
    }

    pub fn candidates(&self, arc: usize) -> &[u32] {
        &self.assignment[arc]
    }

    pub fn arc_count(&self) -> usize {
        self.assignment.len()
    }
}

/// A directed path with one representative per arc.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePath {
    pub vertices: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl AdmissiblePath {
    pub fn edge_length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Re-checks every admissibility condition against `digraph` and `cs`.
    pub fn validate(&self, digraph: &Digraph, cs: &ConflictSystem) -> Result<()> {
        let bad = |msg: String| Err(DfsError::NotAdmissible(msg));
        if self.vertices.is_empty() {
            return if self.representatives.is_empty() { Ok(()) } else { bad("representatives without vertices".into()) };
        }
        if self.representatives.len() + 1 != self.vertices.len() {
            return bad(format!(
                "{} vertices need {} representatives, got {}",
                self.vertices.len(),
                self.vertices.len() - 1,
                self.representatives.len()
            ));
        }
        let n = digraph.vertex_count();
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return bad(format!("vertex {v} repeated or out of range"));
            }
        }
        let universe = cs.universe();
        let mut chosen = vec![false; universe];
        for (i, &rep) in self.representatives.iter().enumerate() {
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            let Some(arc) = digraph.arc_id(u, v) else {
                return bad(format!("no arc {u}->{v}"));
            };
            if cs.candidates(arc).binary_search(&(rep as u32)).is_err() {
                return bad(format!("representative {rep} not a candidate of arc {u}->{v}"));
            }
            if std::mem::replace(&mut chosen[rep], true) {
                return bad(format!("representative {rep} used twice"));
            }
        }
        for &rep in &self.representatives {
            if let Some(&w) = cs.conflict_graph().neighbors(rep).iter().find(|&&w| chosen[w as usize]) {
                return bad(format!("representatives {rep} and {w} conflict"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Unvisited,
    Stack,
    Explored,
}

/// What a single round of the search did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// The stack was empty; the lowest-index unvisited vertex was pushed.
    Start { vertex: usize },
    /// `vertex` was pushed on top of `from`, certified by `representative`.
    Extend { from: usize, vertex: usize, representative: usize },
    /// The top of the stack had no eligible extension and became explored.
    Retreat { vertex: usize },
}

/// State of the conflict-aware depth-first search.
///
/// Candidates are scanned in ascending vertex order, and for each the
/// representatives in ascending id order; the first eligible pair is taken.
/// Eligibility never returns once lost (`T` shrinks and `X` grows), so each
/// vertex keeps a cursor into its out-list.
#[derive(Clone, Debug)]
pub struct DfsState {
    place: Vec<Place>,
    stack: Vec<usize>,
    stack_reps: Vec<usize>,
    chosen: Vec<usize>,
    in_x: Vec<bool>,
    touches_x: Vec<bool>,
    cursor: Vec<usize>,
    next_unvisited: usize,
    explored_count: usize,
    unvisited_count: usize,
    best: AdmissiblePath,
    balanced_seen: bool,
    rounds: usize,
}

impl DfsState {
    pub fn new(digraph: &Digraph, cs: &ConflictSystem) -> Self {
        let n = digraph.vertex_count();
        DfsState {
            place: vec![Place::Unvisited; n],
            stack: Vec::new(),
            stack_reps: Vec::new(),
            chosen: Vec::new(),
            in_x: vec![false; cs.universe()],
            touches_x: vec![false; cs.universe()],
            cursor: (0..n).map(|u| digraph.first_arc(u)).collect(),
            next_unvisited: 0,
            explored_count: 0,
            unvisited_count: n,
            best: AdmissiblePath::default(),
            balanced_seen: n == 0,
            rounds: 0,
        }
    }

    pub fn is_finished(&self) -> bool {
        self.explored_count == self.place.len()
    }

    fn eligible(&self, rep: usize) -> bool {
        !self.in_x[rep] && !self.touches_x[rep]
    }

    fn choose(&mut self, rep: usize, cs: &ConflictSystem) {
        self.in_x[rep] = true;
        self.chosen.push(rep);
        for &w in cs.conflict_graph().neighbors(rep) {
            self.touches_x[w as usize] = true;
        }
    }

    /// Performs one round. Exactly one vertex changes its set.
    pub fn step(&mut self, digraph: &Digraph, cs: &ConflictSystem) -> Result<Move> {
        if self.is_finished() {
            return Err(DfsError::Terminated);
        }
        self.rounds += 1;
        let mv = match self.stack.last().copied() {
            None => {
                while self.place[self.next_unvisited] != Place::Unvisited {
                    self.next_unvisited += 1;
                }
                let vertex = self.next_unvisited;
                self.place[vertex] = Place::Stack;
                self.unvisited_count -= 1;
                self.stack.push(vertex);
                Move::Start { vertex }
            }
            Some(top) => match self.find_extension(top, digraph, cs) {
                Some((vertex, rep)) => {
                    self.choose(rep, cs);
                    self.place[vertex] = Place::Stack;
                    self.unvisited_count -= 1;
                    self.stack.push(vertex);
                    self.stack_reps.push(rep);
                    Move::Extend { from: top, vertex, representative: rep }
                }
                None => {
                    if self.stack.len() > self.best.vertices.len() {
                        self.best = self.stack_path();
                    }
                    self.stack.pop();
                    self.stack_reps.pop();
                    self.place[top] = Place::Explored;
                    self.explored_count += 1;
                    Move::Retreat { vertex: top }
                }
            },
        };
        if self.explored_count == self.unvisited_count {
            self.balanced_seen = true;
        }
        Ok(mv)
    }

    fn find_extension(&mut self, top: usize, digraph: &Digraph, cs: &ConflictSystem) -> Option<(usize, usize)> {
        let end = digraph.first_arc(top) + digraph.out_neighbors(top).len();
        while self.cursor[top] < end {
            let arc = self.cursor[top];
            let v = digraph.targets[arc] as usize;
            if self.place[v] == Place::Unvisited {
                if let Some(&rep) = cs.candidates(arc).iter().find(|&&r| self.eligible(r as usize)) {
                    return Some((v, rep as usize));
                }
            }
            self.cursor[top] += 1;
        }
        None
    }

    /// The current stack `U` with the representatives of its arcs.
    pub fn stack_path(&self) -> AdmissiblePath {
        AdmissiblePath { vertices: self.stack.clone(), representatives: self.stack_reps.clone() }
    }

    /// Longest stack observed so far.
    pub fn best_path(&self) -> AdmissiblePath {
        if self.stack.len() > self.best.vertices.len() {
            self.stack_path()
        } else {
            self.best.clone()
        }
    }

    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    /// Representatives handed out so far, in order.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn explored(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices_in(Place::Explored)
    }

    pub fn unvisited(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices_in(Place::Unvisited)
    }

    fn vertices_in(&self, which: Place) -> impl Iterator<Item = usize> + '_ {
        self.place.iter().enumerate().filter(move |(_, &p)| p == which).map(|(v, _)| v)
    }

    pub fn explored_count(&self) -> usize {
        self.explored_count
    }

    pub fn unvisited_count(&self) -> usize {
        self.unvisited_count
    }

    /// Whether `|S| = |T|` held at some point of the run so far.
    pub fn balanced_moment_seen(&self) -> bool {
        self.balanced_seen
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Full consistency check: `S`, `T`, `U` partition the vertices, the
    /// stack is an admissible path whose representatives lie in `X`, and the
    /// conflict bookkeeping matches `X`.
    pub fn check_invariants(&self, digraph: &Digraph, cs: &ConflictSystem) -> Result<()> {
        let fail = |msg: String| Err(DfsError::NotAdmissible(msg));
        let n = digraph.vertex_count();
        let on_stack = self.place.iter().filter(|&&p| p == Place::Stack).count();
        if on_stack != self.stack.len()
            || self.explored().count() != self.explored_count
            || self.unvisited().count() != self.unvisited_count
            || on_stack + self.explored_count + self.unvisited_count != n
        {
            return fail("S, T, U do not partition the vertex set".into());
        }
        if self.stack.iter().any(|&v| self.place[v] != Place::Stack) {
            return fail("stack entry not marked as on the stack".into());
        }
        self.stack_path().validate(digraph, cs)?;
        if self.stack_reps.iter().any(|&r| !self.in_x[r]) {
            return fail("stack representative missing from X".into());
        }
        let mut touches = vec![false; cs.universe()];
        for &r in &self.chosen {
            for &w in cs.conflict_graph().neighbors(r) {
                touches[w as usize] = true;
            }
        }
        if touches != self.touches_x || self.in_x.iter().filter(|&&b| b).count() != self.chosen.len() {
            return fail("conflict bookkeeping out of sync with X".into());
        }
        Ok(())
    }
}

/// Result of a complete search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsOutcome {
    pub path: AdmissiblePath,
    pub rounds: usize,
    pub balanced_moment: bool,
    pub representatives_used: usize,
}

/// Runs the search to completion, calling `observe` after every round.
pub fn run_dfs<F>(digraph: &Digraph, cs: &ConflictSystem, mut observe: F) -> DfsOutcome
where
    F: FnMut(&DfsState, &Move),
{
    let mut state = DfsState::new(digraph, cs);
    while !state.is_finished() {
        let mv = state.step(digraph, cs).expect("not finished");
        observe(&state, &mv);
    }
    DfsOutcome {
        path: state.best_path(),
        rounds: state.rounds(),
        balanced_moment: state.balanced_moment_seen(),
        representatives_used: state.chosen().len(),
    }
}

/// Longest stack observed during a full run of the conflict-aware search.
pub fn find_admissible_path(digraph: &Digraph, cs: &ConflictSystem) -> AdmissiblePath {
    run_dfs(digraph, cs, |_, _| {}).path
}

const HYPOTHESIS_MAX_ORDER: usize = 8;
const HYPOTHESIS_MAX_UNIVERSE: usize = 12;

/// Exhaustively decides the expansion hypothesis for parameter `k`: for all
/// disjoint `S, T` of size `k` and all `X ⊆ V(C)` with `|X| <= x_cap`, some
/// arc from `S` to `T` has a candidate outside `X` with no conflict-graph
/// neighbor in `X`.
///
/// `x_cap` is clamped to `|V(C)|`. Enlarging `X` only removes candidates, so
/// only sets of the clamped maximum size are enumerated.
pub fn check_expansion_hypothesis(
    digraph: &Digraph,
    cs: &ConflictSystem,
    k: usize,
    x_cap: usize,
) -> Result<bool> {
    let n = digraph.vertex_count();
    let universe = cs.universe();
    if n > HYPOTHESIS_MAX_ORDER || universe > HYPOTHESIS_MAX_UNIVERSE {
        return Err(DfsError::TooLarge(format!(
            "order {n} (max {HYPOTHESIS_MAX_ORDER}), universe {universe} (max {HYPOTHESIS_MAX_UNIVERSE})"
        )));
    }
    if x_cap + 1 > n.max(1) {
        return Err(DfsError::InvalidArgument(format!("x_cap {x_cap} exceeds N - 1 = {}", n.saturating_sub(1))));
    }
    if 2 * k > n {
        return Ok(true);
    }
    let x_size = x_cap.min(universe);
    let closed: Vec<u32> = (0..universe)
        .map(|y| {
            cs.conflict_graph().neighbors(y).iter().fold(1u32 << y, |m, &w| m | (1 << w))
        })
        .collect();
    let blocked_sets: Vec<u32> = (0u32..1 << universe)
        .filter(|x| x.count_ones() as usize == x_size)
        .map(|x| (0..universe).filter(|&y| x & (1 << y) != 0).fold(0, |m, y| m | closed[y]))
        .collect();

    let candidate_mask: Vec<u32> = (0..digraph.arc_count())
        .map(|a| cs.candidates(a).iter().fold(0u32, |m, &r| m | (1 << r)))
        .collect();
    let mut arc_mask = vec![[0u32; HYPOTHESIS_MAX_ORDER]; n];
    for (id, (u, v)) in digraph.arcs().enumerate() {
        arc_mask[u][v] |= candidate_mask[id];
    }

    let subsets: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect();
    for &s in &subsets {
        for &t in subsets.iter().filter(|&&t| t & s == 0) {
            let mut reps = 0u32;
            for u in (0..n).filter(|&u| s & (1 << u) != 0) {
                for v in (0..n).filter(|&v| t & (1 << v) != 0) {
                    reps |= arc_mask[u][v];
                }
            }
            if blocked_sets.iter().any(|&b| reps & !b == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Writes the text interchange format: a header `N M R`, then `M` lines
/// `u v r1 r2 ...` (arc plus its candidates), then the conflict graph in the
/// edge-list format.
pub fn write_instance<W: Write>(digraph: &Digraph, cs: &ConflictSystem, mut out: W) -> Result<()> {
    let io = |e: std::io::Error| DfsError::Graph(GraphError::from(e));
    writeln!(out, "{} {} {}", digraph.vertex_count(), digraph.arc_count(), cs.universe()).map_err(io)?;
    for (id, (u, v)) in digraph.arcs().enumerate() {
        write!(out, "{u} {v}").map_err(io)?;
        for r in cs.candidates(id) {
            write!(out, " {r}").map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    write_edge_list(cs.conflict_graph(), out)?;
    Ok(())
}

pub fn read_instance<R: BufRead>(input: R) -> Result<(Digraph, ConflictSystem)> {
    let mut lines = input.lines();
    let mut line_no = 0;
    let mut next_line = |what: &str| -> Result<(usize, Vec<usize>)> {
        line_no += 1;
        let text = lines
            .next()
            .ok_or_else(|| DfsError::Parse { line: line_no, msg: format!("missing {what}") })?
            .map_err(|e| DfsError::Graph(GraphError::from(e)))?;
        let numbers = text
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| DfsError::Parse { line: line_no, msg: e.to_string() })?;
        Ok((line_no, numbers))
    };
    let (line, header) = next_line("header")?;
    let [n, m, r] = header[..] else {
        return Err(DfsError::Parse { line, msg: "header must be `N M R`".into() });
    };
    let mut arcs = Vec::with_capacity(m);
    let mut map = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, fields) = next_line("arc line")?;
        if fields.len() < 2 {
            return Err(DfsError::Parse { line, msg: "arc line needs `u v`".into() });
        }
        arcs.push((fields[0], fields[1]));
        map.push(((fields[0], fields[1]), fields[2..].to_vec()));
    }
    drop(next_line);
    let rest: Vec<u8> = {
        let mut buf = Vec::new();
        for l in lines {
            let l = l.map_err(|e| DfsError::Graph(GraphError::from(e)))?;
            buf.extend_from_slice(l.as_bytes());
            buf.push(b'\n');
        }
        buf
    };
    let conflict_graph = read_edge_list(&rest[..])?;
    if conflict_graph.vertex_count() != r {
        return Err(DfsError::Parse {
            line: line_no + 1,
            msg: format!("conflict graph has {} vertices, header says {r}", conflict_graph.vertex_count()),
        });
    }
    let digraph = Digraph::from_arcs(n, &arcs)?;
    let cs = ConflictSystem::from_arc_map(&digraph, conflict_graph, map)?;
    Ok((digraph, cs))
}

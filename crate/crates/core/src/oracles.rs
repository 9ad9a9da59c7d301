//! Exhaustive ground truth for small instances.
//!
//! Every function here enumerates its search space completely and refuses
//! inputs beyond a fixed size with [`OracleError::TooLarge`]. Small graphs are
//! handled as bitmask adjacency (`u32` per vertex).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::conflict_dfs::{AdmissiblePath, ConflictSystem, Digraph};
use crate::graph::{is_induced_copy, Graph};
pub use crate::moments::IntersectionProfile;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("instance too large: {what} is {got}, limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("pattern is not a tree")]
    NotATree,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

fn guard(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(OracleError::TooLarge { what, got, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

/// Set bit positions of a mask, lowest first.
fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// Connected components of the subgraph induced by `mask`, each as a mask.
fn components(adj: &[u32], mask: u32) -> Vec<u32> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

fn induced_edges(adj: &[u32], mask: u32) -> u32 {
    bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2
}

/// A longest induced path: its edge count and its vertices in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedPathWitness {
    pub edge_length: usize,
    pub vertices: Vec<usize>,
}

const INDUCED_PATH_LIMIT: usize = 16;

/// Longest induced path by extension: every induced path is grown from each
/// start vertex, adding only neighbors of the current end that see no other
/// path vertex.
pub fn max_induced_path_exact(g: &Graph) -> Result<InducedPathWitness> {
    guard("graph order", g.vertex_count(), INDUCED_PATH_LIMIT)?;
    let adj = adjacency_masks(g);
    let mut best = Vec::new();
    let mut path = Vec::new();
    for start in 0..g.vertex_count() {
        path.push(start);
        extend_induced(&adj, &mut path, 1 << start, &mut best);
        path.pop();
    }
    Ok(InducedPathWitness { edge_length: best.len().saturating_sub(1), vertices: best })
}

fn extend_induced(adj: &[u32], path: &mut Vec<usize>, used: u32, best: &mut Vec<usize>) {
    if path.len() > best.len() {
        best.clone_from(path);
    }
    let end = *path.last().unwrap();
    for next in bits(adj[end] & !used) {
        if adj[next] & used == 1 << end {
            path.push(next);
            extend_induced(adj, path, used | (1 << next), best);
            path.pop();
        }
    }
}

/// Longest induced path by subset enumeration: a vertex set induces a path
/// iff it is connected, has one edge fewer than vertices, and maximum degree
/// at most two.
pub fn max_induced_path_by_subsets(g: &Graph) -> Result<InducedPathWitness> {
    let n = g.vertex_count();
    guard("graph order", n, INDUCED_PATH_LIMIT)?;
    let adj = adjacency_masks(g);
    let mut best: Option<u32> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones();
        if best.is_some_and(|b| b.count_ones() >= size) {
            continue;
        }
        let is_path = induced_edges(&adj, mask) + 1 == size
            && bits(mask).all(|v| (adj[v] & mask).count_ones() <= 2)
            && components(&adj, mask).len() == 1;
        if is_path {
            best = Some(mask);
        }
    }
    let Some(mask) = best else {
        return Ok(InducedPathWitness { edge_length: 0, vertices: Vec::new() });
    };
    let start = bits(mask).find(|&v| (adj[v] & mask).count_ones() <= 1).unwrap();
    let mut order = vec![start];
    let mut seen = 1u32 << start;
    while let Some(next) = bits(adj[*order.last().unwrap()] & mask & !seen).next() {
        seen |= 1 << next;
        order.push(next);
    }
    Ok(InducedPathWitness { edge_length: order.len() - 1, vertices: order })
}

/// AHU-style canonical code of the tree induced by `mask`, rooted at each
/// center; the smaller code wins.
fn tree_code(adj: &[u32], mask: u32) -> String {
    let mut remaining = mask;
    // Peel leaves until one or two centers remain.
    while remaining.count_ones() > 2 {
        let leaves: u32 = bits(remaining)
            .filter(|&v| (adj[v] & remaining).count_ones() <= 1)
            .fold(0, |m, v| m | (1 << v));
        remaining &= !leaves;
    }
    bits(remaining).map(|root| rooted_code(adj, mask, root, usize::MAX)).min().unwrap_or_default()
}

fn rooted_code(adj: &[u32], mask: u32, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = bits(adj[v] & mask)
        .filter(|&w| w != parent)
        .map(|w| rooted_code(adj, mask, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

const TMATCHING_LIMIT: usize = 14;

/// Largest number of vertices of a set inducing a disjoint union of copies of
/// the tree `pattern` (0 if only the empty set qualifies).
pub fn max_induced_tmatching_exact(g: &Graph, pattern: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    guard("graph order", n, TMATCHING_LIMIT)?;
    if !pattern.is_tree() {
        return Err(OracleError::NotATree);
    }
    let t = pattern.vertex_count();
    let p_adj = adjacency_masks(pattern);
    let target = tree_code(&p_adj, (1u32 << t) - 1);
    let adj = adjacency_masks(g);
    let mut best = 0usize;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best || size % t != 0 {
            continue;
        }
        if induced_edges(&adj, mask) as usize != size - size / t {
            continue;
        }
        let ok = components(&adj, mask)
            .into_iter()
            .all(|c| c.count_ones() as usize == t && tree_code(&adj, c) == target);
        if ok {
            best = size;
        }
    }
    Ok(best)
}

const COPY_PATTERN_LIMIT: usize = 8;
const COPY_HOST_LIMIT: usize = 12;

/// Number of injections `pattern -> g` that place `pattern` as an induced
/// subgraph.
pub fn count_labelled_induced_copies(g: &Graph, pattern: &Graph) -> Result<u64> {
    guard("pattern order", pattern.vertex_count(), COPY_PATTERN_LIMIT)?;
    guard("graph order", g.vertex_count(), COPY_HOST_LIMIT)?;
    let adj = adjacency_masks(g);
    let p_adj = adjacency_masks(pattern);
    let mut image = Vec::with_capacity(pattern.vertex_count());
    Ok(count_copies(&adj, &p_adj, &mut image, 0))
}

fn count_copies(adj: &[u32], p_adj: &[u32], image: &mut Vec<usize>, used: u32) -> u64 {
    let x = image.len();
    if x == p_adj.len() {
        return 1;
    }
    let mut total = 0;
    for v in 0..adj.len() {
        if used & (1 << v) != 0 {
            continue;
        }
        let consistent = image
            .iter()
            .enumerate()
            .all(|(y, &w)| (p_adj[x] >> y) & 1 == (adj[v] >> w) & 1);
        if consistent {
            image.push(v);
            total += count_copies(adj, p_adj, image, used | (1 << v));
            image.pop();
        }
    }
    total
}

const PROFILE_PATTERN_LIMIT: usize = 7;
const PROFILE_HOST_LIMIT: usize = 12;

/// For every injection `sigma: V(pattern) -> [n]` compatible with `sigma0`
/// (shared host pairs are edges in both placed copies or in neither), the
/// intersection profile of the two copies, tallied.
///
/// Incompatible injections are not counted.
pub fn enumerate_compatible_by_profile(
    pattern: &Graph,
    sigma0: &[usize],
    n: usize,
) -> Result<BTreeMap<IntersectionProfile, u64>> {
    let k = pattern.vertex_count();
    guard("pattern order", k, PROFILE_PATTERN_LIMIT)?;
    guard("host order", n, PROFILE_HOST_LIMIT)?;
    if sigma0.len() != k || sigma0.iter().any(|&v| v >= n) {
        return Err(OracleError::InvalidArgument("sigma0 must map every pattern vertex into [n]".into()));
    }
    let mut hit = 0u32;
    for &v in sigma0 {
        if hit & (1 << v) != 0 {
            return Err(OracleError::InvalidArgument("sigma0 is not injective".into()));
        }
        hit |= 1 << v;
    }
    // Host-side adjacency of the placed copy F_sigma0.
    let p_adj = adjacency_masks(pattern);
    let mut base_adj = vec![0u32; n];
    for x in 0..k {
        for y in bits(p_adj[x]) {
            base_adj[sigma0[x]] |= 1 << sigma0[y];
        }
    }
    let mut tally = BTreeMap::new();
    let mut image = Vec::with_capacity(k);
    profile_walk(&p_adj, &base_adj, hit, n, &mut image, 0, &mut tally);
    Ok(tally)
}

fn profile_walk(
    p_adj: &[u32],
    base_adj: &[u32],
    base_set: u32,
    n: usize,
    image: &mut Vec<usize>,
    used: u32,
    tally: &mut BTreeMap<IntersectionProfile, u64>,
) {
    let x = image.len();
    if x == p_adj.len() {
        let shared = used & base_set;
        let comps = components(base_adj, shared).len();
        let profile = IntersectionProfile { s: shared.count_ones() as usize, c: comps };
        *tally.entry(profile).or_insert(0) += 1;
        return;
    }
    for v in 0..n {
        if used & (1 << v) != 0 {
            continue;
        }
        // Pairs of shared host vertices must agree in both copies.
        let compatible = base_set & (1 << v) == 0
            || image.iter().enumerate().all(|(y, &w)| {
                base_set & (1 << w) == 0 || (p_adj[x] >> y) & 1 == (base_adj[v] >> w) & 1
            });
        if compatible {
            image.push(v);
            profile_walk(p_adj, base_adj, base_set, n, image, used | (1 << v), tally);
            image.pop();
        }
    }
}

const SUBTREE_LIMIT: usize = 12;

/// Number of vertex sets of size `s` that contain `v` and induce a tree in `h`.
pub fn count_subtrees_containing(h: &Graph, v: usize, s: usize) -> Result<u64> {
    let n = h.vertex_count();
    guard("graph order", n, SUBTREE_LIMIT)?;
    if v >= n {
        return Err(OracleError::InvalidArgument(format!("vertex {v} out of range")));
    }
    let adj = adjacency_masks(h);
    Ok(subtree_counts_all(&adj)[v].get(s).copied().unwrap_or(0))
}

/// `counts[v][s]`: induced-tree vertex sets of size `s` containing `v`, for
/// every vertex at once (one pass over all subsets).
pub(crate) fn subtree_counts_all(adj: &[u32]) -> Vec<Vec<u64>> {
    let n = adj.len();
    let mut counts = vec![vec![0u64; n + 1]; n];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones();
        if induced_edges(adj, mask) + 1 == size && components(adj, mask).len() == 1 {
            for v in bits(mask) {
                counts[v][size as usize] += 1;
            }
        }
    }
    counts
}

/// Public wrapper around the all-vertices subtree tally.
pub fn subtree_count_table(h: &Graph) -> Result<Vec<Vec<u64>>> {
    guard("graph order", h.vertex_count(), SUBTREE_LIMIT)?;
    Ok(subtree_counts_all(&adjacency_masks(h)))
}

const ADMISSIBLE_ORDER_LIMIT: usize = 8;
const ADMISSIBLE_UNIVERSE_LIMIT: usize = 12;

/// Longest admissible path over all directed paths and all representative
/// choices. Ties keep the first path found in lexicographic search order.
pub fn longest_admissible_path_exact(digraph: &Digraph, cs: &ConflictSystem) -> Result<AdmissiblePath> {
    guard("digraph order", digraph.vertex_count(), ADMISSIBLE_ORDER_LIMIT)?;
    guard("representative universe", cs.universe(), ADMISSIBLE_UNIVERSE_LIMIT)?;
    let closed: Vec<u32> = (0..cs.universe())
        .map(|y| cs.conflict_graph().neighbors(y).iter().fold(1u32 << y, |m, &w| m | (1 << w)))
        .collect();
    let mut best = AdmissiblePath::default();
    let mut current = AdmissiblePath::default();
    for start in 0..digraph.vertex_count() {
        current.vertices.push(start);
        admissible_walk(digraph, cs, &closed, &mut current, 1 << start, 0, &mut best);
        current.vertices.pop();
    }
    Ok(best)
}

fn admissible_walk(
    digraph: &Digraph,
    cs: &ConflictSystem,
    closed: &[u32],
    current: &mut AdmissiblePath,
    used: u32,
    blocked: u32,
    best: &mut AdmissiblePath,
) {
    if current.vertices.len() > best.vertices.len() {
        *best = current.clone();
    }
    let u = *current.vertices.last().unwrap();
    let first = digraph.first_arc(u);
    for (i, &v) in digraph.out_neighbors(u).iter().enumerate() {
        let v = v as usize;
        if used & (1 << v) != 0 {
            continue;
        }
        for &y in cs.candidates(first + i) {
            let y = y as usize;
            if blocked & (1 << y) != 0 {
                continue;
            }
            current.vertices.push(v);
            current.representatives.push(y);
            admissible_walk(digraph, cs, closed, current, used | (1 << v), blocked | closed[y], best);
            current.vertices.pop();
            current.representatives.pop();
        }
    }
}

/// Direct check used to cross-validate callers: the induced-copy predicate
/// applied to every injection, without pruning.
pub fn count_labelled_induced_copies_naive(g: &Graph, pattern: &Graph) -> Result<u64> {
    guard("pattern order", pattern.vertex_count(), 5)?;
    guard("graph order", g.vertex_count(), 9)?;
    let k = pattern.vertex_count();
    let n = g.vertex_count();
    let mut count = 0;
    let mut mapping = vec![0usize; k];
    let total = n.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for slot in mapping.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        let seen = mapping.iter().fold(0u32, |m, &v| m | (1 << v));
        if seen.count_ones() as usize != k {
            continue;
        }
        if is_induced_copy(g, pattern, &mapping).expect("injective by construction") {
            count += 1;
        }
    }
    Ok(count)
}

//! Helpers shared by the integration tests. Everything here is written
//! independently of the library routine it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use inpath::conflict_dfs::{ConflictSystem, Digraph};
use inpath::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph on `n` vertices with each pair an edge with probability `p`, drawn
/// from a plain ChaCha stream (not the library sampler).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Induced-path check against an edge hash set.
pub fn hashset_is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let edges: HashSet<(usize, usize)> = g.edges().collect();
    let adjacent = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let distinct: HashSet<usize> = path.iter().copied().collect();
    if distinct.len() != path.len() || path.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    (0..path.len()).all(|i| (i + 1..path.len()).all(|j| adjacent(path[i], path[j]) == (j == i + 1)))
}

/// Induced-path check against a dense adjacency matrix (small graphs).
pub fn matrix_is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut matrix = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        matrix[u][v] = true;
        matrix[v][u] = true;
    }
    let mut seen = vec![false; n];
    for &v in path {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for i in 0..path.len() {
        for j in 0..path.len() {
            if i != j && matrix[path[i]][path[j]] != (i.abs_diff(j) == 1) {
                return false;
            }
        }
    }
    true
}

/// Largest induced matching, in vertices, by backtracking over edge sets.
pub fn max_induced_matching_vertices(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    fn go(g: &Graph, edges: &[(usize, usize)], from: usize, chosen: &mut Vec<(usize, usize)>, best: &mut usize) {
        *best = (*best).max(2 * chosen.len());
        for i in from..edges.len() {
            let (a, b) = edges[i];
            let compatible = chosen.iter().all(|&(c, d)| {
                [a, b].iter().all(|&x| [c, d].iter().all(|&y| x != y && !g.has_edge(x, y)))
            });
            if compatible {
                chosen.push((a, b));
                go(g, edges, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(g, &edges, 0, &mut Vec::new(), &mut best);
    best
}

/// Random digraph and conflict system. Densities are drawn per instance so
/// the corpus mixes sparse instances with ones dense enough for the
/// expansion hypothesis to hold.
pub fn random_instance(rng: &mut ChaCha8Rng, max_order: usize, max_universe: usize) -> (Digraph, ConflictSystem) {
    let n = rng.random_range(1..=max_order);
    let universe = rng.random_range(1..=max_universe);
    let arc_p = rng.random_range(0.2..1.0);
    let rep_p = rng.random_range(0.1..1.0);
    let conflict_p = rng.random_range(0.0..0.3);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(arc_p) {
                arcs.push((u, v));
            }
        }
    }
    let digraph = Digraph::from_arcs(n, &arcs).unwrap();
    let conflict = random_graph(rng, universe, conflict_p);
    let assignment = (0..digraph.arc_count())
        .map(|_| (0..universe).filter(|_| rng.random_bool(rep_p)).collect())
        .collect();
    let cs = ConflictSystem::new(&digraph, conflict, assignment).unwrap();
    (digraph, cs)
}

/// The expansion hypothesis decided with the loops in the other order:
/// every `X` of every size up to the cap, then every `S`, `T`, each arc
/// checked representative by representative.
pub fn hypothesis_reference(d: &Digraph, cs: &ConflictSystem, k: usize, x_cap: usize) -> bool {
    let n = d.vertex_count();
    let universe = cs.universe();
    let c = cs.conflict_graph();
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    for x in 0u32..1 << universe {
        if x.count_ones() as usize > x_cap {
            continue;
        }
        let in_x = |y: usize| x & (1 << y) != 0;
        let usable = |y: usize| !in_x(y) && c.neighbors(y).iter().all(|&w| !in_x(w as usize));
        for s in 0u32..1 << n {
            if s.count_ones() as usize != k {
                continue;
            }
            for t in 0u32..1 << n {
                if t.count_ones() as usize != k || s & t != 0 {
                    continue;
                }
                let served = arcs.iter().enumerate().any(|(id, &(u, v))| {
                    s & (1 << u) != 0 && t & (1 << v) != 0 && cs.candidates(id).iter().any(|&y| usable(y as usize))
                });
                if !served {
                    return false;
                }
            }
        }
    }
    true
}

/// One representative of every unlabelled tree on `k` vertices, from
/// Prüfer sequences deduplicated by a sorted-children canonical code.
pub fn unlabelled_trees(k: usize) -> Vec<Graph> {
    if k == 1 {
        return vec![Graph::empty(1)];
    }
    if k == 2 {
        return vec![Graph::path(2)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = k.pow(k as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(k - 2);
        let mut c = code;
        for _ in 0..k - 2 {
            seq.push(c % k);
            c /= k;
        }
        let tree = prufer_tree(k, &seq);
        let canon = canonical_tree(&tree);
        if seen.insert(canon) {
            out.push(tree);
        }
    }
    out
}

fn prufer_tree(k: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(k, &edges).unwrap()
}

/// Minimum over all roots of the rooted code; unlike a center-rooted code
/// this needs no tree-center computation.
fn canonical_tree(t: &Graph) -> String {
    fn code(t: &Graph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = t
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| Some(w) != parent)
            .map(|w| code(t, w, Some(v)))
            .collect();
        kids.sort();
        format!("[{}]", kids.concat())
    }
    (0..t.vertex_count()).map(|r| code(t, r, None)).min().unwrap()
}

/// Calls `visit` on connected graphs on `n` vertices with maximum degree at
/// most `max_degree`, one labelling per degree-sorted class: vertex degrees
/// are non-increasing in label order. Every such graph up to isomorphism is
/// visited at least once.
pub fn for_each_connected_bounded_graph(n: usize, max_degree: usize, mut visit: impl FnMut(&Graph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut degree = vec![0usize; n];
    let mut chosen = Vec::new();
    fn go(
        n: usize,
        max_degree: usize,
        pairs: &[(usize, usize)],
        i: usize,
        degree: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&Graph),
    ) {
        // Row u is complete once every pair (u, *) has been decided, which
        // happens when the next pair starts a later row.
        let row_done = |row: usize| i == pairs.len() || pairs[i].0 > row;
        if i > 0 {
            let u = pairs[i - 1].0;
            if row_done(u) && u > 0 && degree[u] > degree[u - 1] {
                return;
            }
        }
        if i == pairs.len() {
            if n >= 2 && degree[n - 1] > degree[n - 2] {
                return;
            }
            let g = Graph::from_edges(n, chosen).unwrap();
            if g.component_count() <= 1 {
                visit(&g);
            }
            return;
        }
        let (u, v) = pairs[i];
        go(n, max_degree, pairs, i + 1, degree, chosen, visit);
        if degree[u] < max_degree && degree[v] < max_degree {
            degree[u] += 1;
            degree[v] += 1;
            chosen.push((u, v));
            go(n, max_degree, pairs, i + 1, degree, chosen, visit);
            chosen.pop();
            degree[u] -= 1;
            degree[v] -= 1;
        }
    }
    if n == 1 {
        visit(&Graph::empty(1));
        return;
    }
    go(n, max_degree, &pairs, 0, &mut degree, &mut chosen, &mut visit);
}

/// Compatible injections counted directly: all injections of `pattern` into
/// `[n]`, filtered by agreement of shared pairs with the base copy.
pub fn count_compatible_direct(pattern: &Graph, sigma0: &[usize], n: usize) -> u64 {
    let k = pattern.vertex_count();
    let mut base_edge = vec![vec![false; n]; n];
    let mut in_base = vec![false; n];
    for &v in sigma0 {
        in_base[v] = true;
    }
    for (x, y) in pattern.edges() {
        base_edge[sigma0[x]][sigma0[y]] = true;
        base_edge[sigma0[y]][sigma0[x]] = true;
    }
    let mut count = 0;
    let mut image = vec![0usize; k];
    let total = (n as u64).pow(k as u32);
    'outer: for code in 0..total {
        let mut c = code;
        for slot in image.iter_mut() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        for x in 0..k {
            for y in x + 1..k {
                if image[x] == image[y] {
                    continue 'outer;
                }
                let (a, b) = (image[x], image[y]);
                if in_base[a] && in_base[b] && pattern.has_edge(x, y) != base_edge[a][b] {
                    continue 'outer;
                }
            }
        }
        count += 1;
    }
    count
}

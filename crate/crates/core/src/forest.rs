//! Randomized greedy construction of induced linear forests.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rng;

#[derive(Debug, Error, PartialEq)]
pub enum ForestError {
    #[error("component order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("segment length {m} invalid for a path of order {order}: need 1 <= m and 2m < order")]
    SegmentLength { m: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, ForestError>;

/// Vertex-disjoint directed paths, all of the same order, whose union is
/// meant to be induced in some host graph. The direction of a component is
/// the order its vertices are listed in.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForest {
    pub components: Vec<Vec<usize>>,
    pub component_order: usize,
}

impl LinearForest {
    pub fn new(components: Vec<Vec<usize>>, component_order: usize) -> Self {
        LinearForest { components, component_order }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().flatten().copied()
    }

    /// Keeps the first `count` components.
    pub fn truncate(&mut self, count: usize) {
        self.components.truncate(count);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Head,
    Tail,
}

/// First (`Head`) or last (`Tail`) `m` vertices of a component.
pub fn segment(component: &[usize], side: Side, m: usize) -> Result<&[usize]> {
    let order = component.len();
    if m == 0 || 2 * m >= order {
        return Err(ForestError::SegmentLength { m, order });
    }
    Ok(match side {
        Side::Head => &component[..m],
        Side::Tail => &component[order - m..],
    })
}

/// Greedy induced linear forest inside `allowed`, every component of order
/// exactly `order`.
///
/// Each of `max_rounds` restarts visits the allowed vertices in a random
/// order (restart `r` draws from forest stream `r` of `seed`). From each
/// start vertex with no neighbor in the forest it grows a path, each time
/// moving to a uniformly random neighbor of the endpoint whose only forest
/// neighbor is that endpoint. A path that gets stuck short of `order` is
/// burned: its vertices are barred for the rest of the restart. The restart
/// with the most components wins, ties going to the earlier restart.
pub fn build_induced_linear_forest(
    g: &Graph,
    allowed: &[usize],
    order: usize,
    max_rounds: usize,
    seed: u64,
) -> Result<LinearForest> {
    if order < 2 {
        return Err(ForestError::OrderTooSmall(order));
    }
    let n = g.vertex_count();
    if let Some(&vertex) = allowed.iter().find(|&&v| v >= n) {
        return Err(ForestError::VertexOutOfRange { vertex, n });
    }
    let mut best = LinearForest::new(Vec::new(), order);
    for round in 0..max_rounds {
        let forest = greedy_round(g, allowed, order, seed, round as u64);
        if forest.component_count() > best.component_count() {
            best = forest;
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Blocked,
    Free,
    Used,
    Burned,
}

fn greedy_round(g: &Graph, allowed: &[usize], order: usize, seed: u64, round: u64) -> LinearForest {
    let mut rng = rng::stream(seed, rng::FOREST_STREAM_BASE + round);
    let mut status = vec![Status::Blocked; g.vertex_count()];
    for &v in allowed {
        status[v] = Status::Free;
    }
    // Number of forest (or current partial path) vertices adjacent to v.
    let mut touching = vec![0u32; g.vertex_count()];
    let mut starts = allowed.to_vec();
    starts.shuffle(&mut rng);

    let mut components = Vec::new();
    let mut path = Vec::with_capacity(order);
    let mut eligible = Vec::new();
    for start in starts {
        if status[start] != Status::Free || touching[start] != 0 {
            continue;
        }
        path.clear();
        take(g, &mut status, &mut touching, &mut path, start);
        while path.len() < order {
            let end = *path.last().unwrap();
            eligible.clear();
            eligible.extend(
                g.neighbors(end)
                    .iter()
                    .map(|&w| w as usize)
                    .filter(|&w| status[w] == Status::Free && touching[w] == 1),
            );
            if eligible.is_empty() {
                break;
            }
            let next = eligible[rng.random_range(0..eligible.len())];
            take(g, &mut status, &mut touching, &mut path, next);
        }
        if path.len() == order {
            components.push(path.clone());
        } else {
            for &v in &path {
                status[v] = Status::Burned;
                for &w in g.neighbors(v) {
                    touching[w as usize] -= 1;
                }
            }
        }
    }
    LinearForest::new(components, order)
}

fn take(g: &Graph, status: &mut [Status], touching: &mut [u32], path: &mut Vec<usize>, v: usize) {
    status[v] = Status::Used;
    for &w in g.neighbors(v) {
        touching[w as usize] += 1;
    }
    path.push(v);
}

/// Whether `f` is an induced linear forest of `g`: components disjoint, of
/// the declared order, consecutive vertices adjacent, and no other edge of
/// `g` inside the union of the components.
pub fn verify_induced_forest(g: &Graph, f: &LinearForest) -> bool {
    let n = g.vertex_count();
    // (component, position) per vertex.
    let mut place: Vec<Option<(usize, usize)>> = vec![None; n];
    for (c, comp) in f.components.iter().enumerate() {
        if comp.len() != f.component_order {
            return false;
        }
        for (i, &v) in comp.iter().enumerate() {
            if v >= n || place[v].is_some() {
                return false;
            }
            place[v] = Some((c, i));
        }
    }
    for comp in &f.components {
        for (i, &v) in comp.iter().enumerate() {
            let mut inside = 0;
            for &w in g.neighbors(v) {
                if let Some((c, j)) = place[w as usize] {
                    if place[v].unwrap().0 != c || i.abs_diff(j) != 1 {
                        return false;
                    }
                    inside += 1;
                }
            }
            if inside != usize::from(i > 0) + usize::from(i + 1 < comp.len()) {
                return false;
            }
        }
    }
    true
}

/// Achieved order against the scale `p^-1 ln(np)` of the forest target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestReport {
    pub components: usize,
    pub order: usize,
    pub ratio: f64,
}

/// `ratio` is NaN when `n p <= 1`, where the scale is not positive.
pub fn forest_report(f: &LinearForest, n: usize, p: f64) -> ForestReport {
    let scale = (n as f64 * p).ln() / p;
    let ratio = if scale > 0.0 { f.order() as f64 / scale } else { f64::NAN };
    ForestReport { components: f.component_count(), order: f.order(), ratio }
}

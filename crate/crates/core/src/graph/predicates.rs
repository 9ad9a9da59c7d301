use std::collections::HashMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Result};
use crate::rng;

fn check_range(n: usize, vertices: &[usize]) -> Result<()> {
    match vertices.iter().find(|&&v| v >= n) {
        Some(&vertex) => Err(GraphError::VertexOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

/// `g[vertices]`, relabeled so that new vertex `i` is `vertices[i]`. The
/// returned map sends new labels back to `g`'s labels.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let n = g.vertex_count();
    check_range(n, vertices)?;
    let mut local: HashMap<usize, usize> = HashMap::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        if local.insert(v, i).is_some() {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let mut edges = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(&j) = local.get(&(w as usize)) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok((Graph::from_edges(vertices.len(), &edges)?, vertices.to_vec()))
}

/// Whether `mapping` (pattern vertex -> host vertex) places `pattern` as an
/// induced subgraph: every pattern pair is an edge iff its image is.
pub fn is_induced_copy(g: &Graph, pattern: &Graph, mapping: &[usize]) -> Result<bool> {
    let k = pattern.vertex_count();
    if mapping.len() != k {
        return Err(GraphError::MappingLength { expected: k, got: mapping.len() });
    }
    check_range(g.vertex_count(), mapping)?;
    let mut sorted = mapping.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::NotInjective(w[0]));
    }
    for x in 0..k {
        for y in x + 1..k {
            if pattern.has_edge(x, y) != g.has_edge(mapping[x], mapping[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_independent_set(g: &Graph, vertices: &[usize]) -> Result<bool> {
    check_range(g.vertex_count(), vertices)?;
    let mut member = vec![false; g.vertex_count()];
    for &v in vertices {
        member[v] = true;
    }
    Ok(vertices.iter().all(|&v| g.neighbors(v).iter().all(|&w| !member[w as usize])))
}

/// Chord-free simple path check: vertices distinct and in range,
/// consecutive vertices adjacent, no other pair adjacent. The empty sequence
/// and single vertices are paths.
pub fn is_induced_path(g: &Graph, sequence: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut position: HashMap<usize, usize> = HashMap::with_capacity(sequence.len());
    for (i, &v) in sequence.iter().enumerate() {
        if v >= n || position.insert(v, i).is_some() {
            return false;
        }
    }
    for (i, &v) in sequence.iter().enumerate() {
        let mut inside = 0;
        for &w in g.neighbors(v) {
            if let Some(&j) = position.get(&(w as usize)) {
                if i.abs_diff(j) != 1 {
                    return false;
                }
                inside += 1;
            }
        }
        let expected = usize::from(i > 0) + usize::from(i + 1 < sequence.len());
        if inside != expected {
            return false;
        }
    }
    true
}

/// Partition of `0..n` into two parts, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSplit {
    pub part_one: Vec<usize>,
    pub part_two: Vec<usize>,
}

/// Uniformly random split with `|part_one| = ceil(n / 2)`, drawn from the
/// [`rng::SPLIT_STREAM`] substream of `seed`.
pub fn split_vertices(n: usize, seed: u64) -> Result<VertexSplit> {
    if n < 2 {
        return Err(GraphError::SplitTooSmall(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::stream(seed, rng::SPLIT_STREAM));
    let mut part_two = order.split_off(n.div_ceil(2));
    let mut part_one = order;
    part_one.sort_unstable();
    part_two.sort_unstable();
    Ok(VertexSplit { part_one, part_two })
}

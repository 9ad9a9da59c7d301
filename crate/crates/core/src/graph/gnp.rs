use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::rng::{self, StreamRng};

/// Below this edge probability the sampler skips over non-edges with
/// geometric jumps instead of flipping a coin for every pair.
const SKIP_THRESHOLD: f64 = 0.01;

/// Parameters of the binomial random graph `G(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64) -> Self {
        assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
        GnpParams { n, p }
    }

    /// Sparse parameterization `p = d / n`.
    pub fn with_average_degree(n: usize, d: f64) -> Self {
        Self::new(n, d / n as f64)
    }

    /// Expected degree scale `d = n p`.
    pub fn d(&self) -> f64 {
        self.n as f64 * self.p
    }

    /// `q = 1 / (1 - p)`, undefined at `p = 1`.
    pub fn q(&self) -> Option<f64> {
        (self.p < 1.0).then(|| 1.0 / (1.0 - self.p))
    }
}

/// Samples `G(n, p)` from the [`rng::GRAPH_STREAM`] substream of `seed`.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order. For
/// `p < 0.01` the gap to the next edge is drawn as
/// `floor(ln U / ln(1 - p))` with `U` uniform in `(0, 1]`; otherwise each pair
/// is an edge iff a uniform 64-bit word falls below `p * 2^64`.
pub fn sample_gnp(params: GnpParams, seed: u64) -> Graph {
    let GnpParams { n, p } = params;
    let mut rng = rng::stream(seed, rng::GRAPH_STREAM);
    let pairs = if n < 2 || p <= 0.0 {
        Vec::new()
    } else if p >= 1.0 {
        (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect()
    } else if p < SKIP_THRESHOLD {
        skip_sample(n, p, &mut rng)
    } else {
        bernoulli_sample(n, p, &mut rng)
    };
    Graph::from_sorted_pairs(n, &pairs)
}

fn expected_capacity(n: usize, p: f64) -> usize {
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    (pairs * p * 1.05 + 16.0) as usize
}

fn bernoulli_sample(n: usize, p: f64, rng: &mut StreamRng) -> Vec<(u32, u32)> {
    let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
    let mut pairs = Vec::with_capacity(expected_capacity(n, p));
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.next_u64() < threshold {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

fn skip_sample(n: usize, p: f64, rng: &mut StreamRng) -> Vec<(u32, u32)> {
    let log_q = (-p).ln_1p();
    let mut pairs = Vec::with_capacity(expected_capacity(n, p));
    // Row `u` holds the pairs (u, u+1), ..., (u, n-1); `pos` indexes into it.
    let mut u = 0usize;
    let mut row_len = n - 1;
    let mut pos: u64 = 0;
    let mut first = true;
    loop {
        let uniform = 1.0 - rng.random::<f64>();
        let gap = (uniform.ln() / log_q).floor();
        let gap = if gap >= u64::MAX as f64 { u64::MAX / 2 } else { gap as u64 };
        pos = if first { gap } else { pos.saturating_add(1).saturating_add(gap) };
        first = false;
        while pos >= row_len as u64 {
            pos -= row_len as u64;
            u += 1;
            if u + 1 >= n {
                return pairs;
            }
            row_len = n - 1 - u;
        }
        pairs.push((u as u32, (u + 1 + pos as usize) as u32));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(sample_gnp(GnpParams::new(5, 0.0), 3).edge_count(), 0);
        assert_eq!(sample_gnp(GnpParams::new(5, 1.0), 3).edge_count(), 10);
        assert_eq!(sample_gnp(GnpParams::new(1, 0.5), 3).edge_count(), 0);
        assert_eq!(sample_gnp(GnpParams::new(0, 0.5), 3).vertex_count(), 0);
    }

    #[test]
    fn derived_quantities() {
        let params = GnpParams::with_average_degree(1000, 10.0);
        assert!((params.d() - 10.0).abs() < 1e-12);
        assert!((params.q().unwrap() - 1.0 / 0.99).abs() < 1e-12);
        assert_eq!(GnpParams::new(3, 1.0).q(), None);
    }

    #[test]
    fn seed_determinism_both_regimes() {
        for p in [0.003, 0.2] {
            let a = sample_gnp(GnpParams::new(400, p), 11);
            let b = sample_gnp(GnpParams::new(400, p), 11);
            let c = sample_gnp(GnpParams::new(400, p), 12);
            assert_eq!(a, b);
            assert_ne!(a, c);
            assert!(a.validate().is_ok());
        }
    }

    #[test]
    fn skip_sampler_mean_edge_count() {
        // n = 2000, p = 0.005: mean 9995, sd ~ 99.7 per sample; 40 samples.
        let params = GnpParams::new(2000, 0.005);
        let counts: Vec<f64> =
            (0..40).map(|s| sample_gnp(params, s).edge_count() as f64).collect();
        let mean = counts.iter().sum::<f64>() / counts.len() as f64;
        let expected: f64 = 2000.0 * 1999.0 / 2.0 * 0.005;
        let se = (expected * 0.995).sqrt() / (counts.len() as f64).sqrt();
        assert!((mean - expected).abs() < 4.0 * se, "mean {mean} vs {expected}");
    }

    #[test]
    fn skip_sampler_covers_last_pair() {
        // With p just under the threshold every pair index must be reachable,
        // including (n-2, n-1).
        let mut hit = false;
        for s in 0..2000 {
            let g = sample_gnp(GnpParams::new(3, 0.0099), s);
            hit |= g.has_edge(1, 2);
        }
        assert!(hit);
    }
}

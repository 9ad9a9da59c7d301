//! Closed-form evaluators for the counting and probability bounds behind the
//! method.
//!
//! Quantities that under- or overflow at pipeline scale are computed as
//! natural logarithms (`*_log` functions); the plain variants exponentiate.
//! `0 · ln 0` is taken as `0` throughout, so `p = 0` and empty exponents
//! behave like the underlying products.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("pattern order {k} exceeds host order {n}")]
    OrderTooLarge { k: usize, n: usize },
    #[error("profile (s={s}, c={c}) is infeasible for this shape: {reason}")]
    InfeasibleProfile { s: usize, c: usize, reason: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, MomentError>;

/// Falling factorials switch from direct summation to log-gamma differences
/// above this many factors.
const DIRECT_FALLING_LIMIT: usize = 50;

/// `ln (n)_k = ln(n (n-1) ... (n-k+1))`; `-inf` when `k > n`.
pub fn ln_falling_factorial(n: f64, k: usize) -> f64 {
    if k as f64 > n + 0.5 {
        return f64::NEG_INFINITY;
    }
    if k <= DIRECT_FALLING_LIMIT {
        (0..k).map(|i| (n - i as f64).ln()).sum()
    } else {
        ln_gamma(n + 1.0) - ln_gamma(n - k as f64 + 1.0)
    }
}

pub fn ln_factorial(k: usize) -> f64 {
    ln_falling_factorial(k as f64, k)
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    ln_falling_factorial(n as f64, k) - ln_factorial(k)
}

fn pairs(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

/// `x ln y` with the convention `0 ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// `x ln(1 - p)` with the same convention, accurate for small `p`.
fn xln1mp(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (-p).ln_1p()
    }
}

/// Summary statistics of a forest pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestShape {
    pub k: usize,
    pub edges: usize,
    pub components: usize,
    pub max_degree: usize,
}

impl ForestShape {
    pub fn new(k: usize, edges: usize, max_degree: usize) -> Result<Self> {
        if edges > k.saturating_sub(1) {
            return Err(MomentError::InvalidArgument(format!(
                "a forest on {k} vertices has at most {} edges, got {edges}",
                k.saturating_sub(1)
            )));
        }
        if k >= 2 && edges > 0 && max_degree == 0 {
            return Err(MomentError::InvalidArgument("max degree 0 with edges".into()));
        }
        Ok(ForestShape { k, edges, components: k - edges, max_degree })
    }

    pub fn of(forest: &Graph) -> Result<Self> {
        if !forest.is_forest() {
            return Err(MomentError::InvalidArgument("pattern is not a forest".into()));
        }
        Self::new(forest.vertex_count(), forest.edge_count(), forest.max_degree())
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Self {
        Self::of(&Graph::path(k)).expect("paths are forests")
    }
}

/// Vertex and component count of the intersection of two placed copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub s: usize,
    pub c: usize,
}

impl IntersectionProfile {
    pub fn new(s: usize, c: usize) -> Result<Self> {
        if c > s || (s > 0 && c == 0) {
            return Err(MomentError::InvalidArgument(format!("invalid profile (s={s}, c={c})")));
        }
        Ok(IntersectionProfile { s, c })
    }

    /// Edges of the intersection forest.
    pub fn edges(&self) -> usize {
        self.s - self.c
    }
}

fn check_probability(p: f64, allow_one: bool) -> Result<()> {
    let ok = if allow_one { (0.0..=1.0).contains(&p) } else { (0.0..1.0).contains(&p) };
    if ok {
        Ok(())
    } else {
        Err(MomentError::InvalidArgument(format!("probability {p} out of range")))
    }
}

/// `ln E[Y]` for the number `Y` of labelled induced copies of a forest:
/// `(n)_k p^e (1-p)^(C(k,2) - e)`.
pub fn expected_labelled_copies_log(n: usize, p: f64, shape: &ForestShape) -> Result<f64> {
    check_probability(p, false)?;
    if shape.k > n {
        return Err(MomentError::OrderTooLarge { k: shape.k, n });
    }
    let e = shape.edges as f64;
    Ok(ln_falling_factorial(n as f64, shape.k) + xlny(e, p) + xln1mp(pairs(shape.k) - e, p))
}

pub fn expected_labelled_copies(n: usize, p: f64, shape: &ForestShape) -> Result<f64> {
    expected_labelled_copies_log(n, p, shape).map(f64::exp)
}

/// Log of `P(A_sigma | A_sigma0)` for a compatible placement whose
/// intersection with the conditioning copy has profile `(s, c)`:
/// `p^(e - s + c) (1-p)^(C(k,2) - C(s,2) - e + s - c)`.
pub fn conditional_copy_prob_log(
    p: f64,
    shape: &ForestShape,
    profile: IntersectionProfile,
) -> Result<f64> {
    check_probability(p, false)?;
    let IntersectionProfile { s, c } = profile;
    if s > shape.k {
        return Err(MomentError::InfeasibleProfile { s, c, reason: "s exceeds pattern order" });
    }
    let p_exp = shape.edges as i64 - s as i64 + c as i64;
    if p_exp < 0 {
        return Err(MomentError::InfeasibleProfile { s, c, reason: "negative exponent of p" });
    }
    let q_exp = pairs(shape.k) - pairs(s) - shape.edges as f64 + s as f64 - c as f64;
    if q_exp < 0.0 {
        return Err(MomentError::InfeasibleProfile { s, c, reason: "negative exponent of 1-p" });
    }
    Ok(xlny(p_exp as f64, p) + xln1mp(q_exp, p))
}

pub fn conditional_copy_prob(
    p: f64,
    shape: &ForestShape,
    profile: IntersectionProfile,
) -> Result<f64> {
    conditional_copy_prob_log(p, shape, profile).map(f64::exp)
}

/// Log of the upper bound `C(k,c) k^c (6 Δ²)^s (n-k)_(k-s)` on the number of
/// compatible placements with intersection profile `(s, c)`.
pub fn compatible_count_bound_log(k: usize, s: usize, c: usize, delta: usize, n: usize) -> Result<f64> {
    if !(c <= s && s <= k && k <= n) {
        return Err(MomentError::InvalidArgument(format!(
            "need 0 <= c <= s <= k <= n, got c={c} s={s} k={k} n={n}"
        )));
    }
    let six_delta_sq = 6.0 * (delta * delta) as f64;
    Ok(ln_binomial(k, c)
        + xlny(c as f64, k as f64)
        + xlny(s as f64, six_delta_sq)
        + ln_falling_factorial((n - k) as f64, k - s))
}

/// Direct-space form of [`compatible_count_bound_log`]. Every factor is an
/// integer, so the product is exact while it stays below 2^53.
pub fn compatible_count_bound(k: usize, s: usize, c: usize, delta: usize, n: usize) -> Result<f64> {
    compatible_count_bound_log(k, s, c, delta, n)?;
    let binomial = (0..c).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64).round();
    let falling = (0..k - s).fold(1.0, |acc, i| acc * (n - k).saturating_sub(i) as f64);
    Ok(binomial * (k as f64).powi(c as i32) * (6.0 * (delta * delta) as f64).powi(s as i32) * falling)
}

/// `(e Δ)^(s-1)`, the bound on subtrees of order `s` through a fixed vertex
/// in a graph of maximum degree `Δ`.
pub fn subtree_count_bound(delta: usize, s: usize) -> Result<f64> {
    subtree_count_bound_log(delta, s)?;
    Ok((std::f64::consts::E * delta as f64).powi(s as i32 - 1))
}

pub fn subtree_count_bound_log(delta: usize, s: usize) -> Result<f64> {
    if s == 0 || delta == 0 {
        return Err(MomentError::InvalidArgument(format!("need s >= 1 and delta >= 1, got s={s} delta={delta}")));
    }
    Ok((s - 1) as f64 * (1.0 + (delta as f64).ln()))
}

/// Log of the lower bound on the probability that `G(n, d/n)` contains an
/// induced copy of a given forest of maximum degree `Δ`:
/// `-10^4 Δ² n ln²d / d² - 2 d^(-ε/7)`.
///
/// The bound is only claimed for `Δ <= d^(ε/6)`; outside that range a warning
/// is logged and the formula is still evaluated.
pub fn induced_copy_prob_lower_log(n: f64, d: f64, delta: f64, eps: f64) -> f64 {
    if delta > d.powf(eps / 6.0) {
        log::warn!("max degree {delta} exceeds d^(eps/6) = {}", d.powf(eps / 6.0));
    }
    let ln_d = d.ln();
    -1.0e4 * delta * delta * n * ln_d * ln_d / (d * d) - 2.0 * d.powf(-eps / 7.0)
}

/// Log of the first-moment bound on the expected number of unlabelled induced
/// `T`-matchings with `r` components, `|T| = t_order`:
/// `n^(rL) / r! · p^(r(L-1)) · (1-p)^(C(rL,2) - r(L-1))`.
pub fn tmatching_first_moment_log(n: usize, p: f64, t_order: usize, r: usize) -> Result<f64> {
    check_probability(p, false)?;
    if t_order == 0 {
        return Err(MomentError::InvalidArgument("tree order must be positive".into()));
    }
    let order = r * t_order;
    if order > n {
        return Err(MomentError::OrderTooLarge { k: order, n });
    }
    let edges = (r * (t_order - 1)) as f64;
    Ok(xlny(order as f64, n as f64) - ln_factorial(r) + xlny(edges, p)
        + xln1mp(pairs(order) - edges, p))
}

/// Inputs of the concentration bound for an `L`-Lipschitz, `f`-certifiable
/// variable with `f(s) = s + certifiable_offset`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TalagrandParams {
    pub b: f64,
    pub t: f64,
    pub lipschitz: f64,
    pub certifiable_offset: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TalagrandBound {
    /// `b - t L sqrt(f(b))`.
    pub threshold: f64,
    /// Bound `exp(-t²/4)` on `P(X <= threshold) · P(X >= b)`.
    pub tail: f64,
}

pub fn talagrand_tail(params: &TalagrandParams) -> Result<TalagrandBound> {
    let TalagrandParams { b, t, lipschitz, certifiable_offset } = *params;
    if [b, t, lipschitz, certifiable_offset].iter().any(|x| !(*x >= 0.0)) {
        return Err(MomentError::InvalidArgument("Talagrand parameters must be nonnegative".into()));
    }
    Ok(TalagrandBound {
        threshold: b - t * lipschitz * (b + certifiable_offset).sqrt(),
        tail: (-t * t / 4.0).exp(),
    })
}

/// Probability model of a single candidate connector vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionStats {
    pub m: usize,
    pub p: f64,
    pub forest_order: usize,
    pub x_size: usize,
}

impl ConnectionStats {
    /// `ln α` with `α = m² p² (1-p)^(|F| - 2 + |X|)`: the probability that a
    /// fixed vertex connects a fixed ordered pair of components and has no
    /// edge to a fixed conflict set `X`.
    pub fn ln_alpha(&self) -> f64 {
        let exponent = (self.forest_order + self.x_size) as f64 - 2.0;
        xlny(2.0, self.m as f64) + xlny(2.0, self.p) + xln1mp(exponent, self.p)
    }

    pub fn alpha(&self) -> f64 {
        self.ln_alpha().exp()
    }
}

/// Numerical form of the union bound that closes the connection argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub alpha: f64,
    /// `-(ε N / 8)² α n / 4`: log bound on the probability that one fixed
    /// triple `(S, T, X)` violates the expansion hypothesis.
    pub per_triple_failure_log: f64,
    /// `2 N ln 2 + 4 N ln d`: log of the number of triples.
    pub union_bound_log: f64,
    /// Sum of the two; negative means the union bound closes.
    pub margin: f64,
}

pub fn connection_feasibility_report(
    n: f64,
    d: f64,
    eps: f64,
    components: f64,
    stats: &ConnectionStats,
) -> FeasibilityReport {
    let alpha = stats.alpha();
    let block = eps * components / 8.0;
    let per_triple_failure_log = -block * block * alpha * (n / 4.0);
    let union_bound_log = 2.0 * components * std::f64::consts::LN_2 + 4.0 * components * d.ln();
    FeasibilityReport {
        alpha,
        per_triple_failure_log,
        union_bound_log,
        margin: union_bound_log + per_triple_failure_log,
    }
}

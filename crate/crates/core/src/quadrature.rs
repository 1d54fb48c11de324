//! Gauss-Laguerre rules for the weight `e^{-t}` on `(0, ∞)`.
//!
//! Nodes are bracketed by Sturm counts on the Jacobi matrix of the Laguerre
//! recurrence and polished by Newton steps on the three-term recurrence.
//! Weights are stored as logarithms: for a few hundred nodes the outer
//! weights fall far below `f64::MIN_POSITIVE`, and integrands that grow like
//! `e^{t/2}` must be combined with them before exponentiating.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrature family. Only Gauss-Laguerre is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureKind {
    #[default]
    GaussLaguerre,
}

/// How a radial integral is discretized and when its value is accepted.
///
/// A value is accepted when the rules with `node_count` and `2 * node_count`
/// nodes agree within `tolerance`, measured as
/// `|I(Q) - I(2Q)| <= tolerance * max(1, |I(2Q)|) + ROUNDING_FLOOR * ε * A`
/// where `A = Σ_i w_i |f(t_i)|`. The second term is the resolution of the
/// floating-point sum itself: oscillatory integrands whose mass `A` far
/// exceeds `|I|` cannot agree more closely than that.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub node_count: usize,
    #[serde(default)]
    pub kind: QuadratureKind,
    #[serde(default = "QuadratureSpec::default_tolerance")]
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub const DEFAULT_NODES: usize = 200;
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(node_count: usize) -> Result<Self> {
        Self::with_tolerance(node_count, Self::DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(node_count: usize, tolerance: f64) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidInput("node_count must be at least 1".into()));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "quadrature tolerance must be positive and finite, got {tolerance}"
            )));
        }
        Ok(QuadratureSpec {
            node_count,
            kind: QuadratureKind::GaussLaguerre,
            tolerance,
        })
    }

    fn default_tolerance() -> f64 {
        Self::DEFAULT_TOLERANCE
    }

    /// Units of `ε · A` treated as rounding noise; exponentials of arguments
    /// in the hundreds carry relative errors of that order.
    pub const ROUNDING_FLOOR: f64 = 1024.0;

    pub(crate) fn accepts(&self, difference: f64, scale: f64, abs_mass: f64) -> bool {
        difference <= self.tolerance * scale.max(1.0) + Self::ROUNDING_FLOOR * f64::EPSILON * abs_mass
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: Self::DEFAULT_NODES,
            kind: QuadratureKind::GaussLaguerre,
            tolerance: Self::DEFAULT_TOLERANCE,
        }
    }
}

/// An `n`-point Gauss-Laguerre rule, exact for polynomials of degree `2n - 1`
/// against `e^{-t} dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRule {
    nodes: Vec<f64>,
    ln_weights: Vec<f64>,
}

impl LaguerreRule {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Laguerre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut ln_weights = Vec::with_capacity(n);
        let upper = 4.0 * n as f64;
        let mut lo = 0.0;
        for k in 0..n {
            let x = locate_root(n, k, lo, upper);
            let ln_w = -ln_christoffel_sum(n, x);
            nodes.push(x);
            ln_weights.push(ln_w);
            lo = x;
        }
        LaguerreRule { nodes, ln_weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn ln_weights(&self) -> &[f64] {
        &self.ln_weights
    }

    /// Weights in linear scale. Outer weights underflow to zero once they
    /// drop below the smallest subnormal (from roughly 180 nodes upward).
    pub fn weights(&self) -> Vec<f64> {
        self.ln_weights.iter().map(|l| l.exp()).collect()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.ln_weights)
            .map(|(&t, &lw)| lw.exp() * f(t))
            .sum()
    }
}

/// Shared, lazily built rule with `n` nodes.
pub fn rule(n: usize) -> Arc<LaguerreRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LaguerreRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("rule cache poisoned").get(&n) {
        return Arc::clone(r);
    }
    let built = Arc::new(LaguerreRule::new(n));
    let mut guard = cache.lock().expect("rule cache poisoned");
    Arc::clone(guard.entry(n).or_insert(built))
}

/// Nodes and (linear) weights of the rule described by `spec`.
pub fn laguerre_nodes(spec: &QuadratureSpec) -> (Vec<f64>, Vec<f64>) {
    let r = rule(spec.node_count);
    (r.nodes().to_vec(), r.weights())
}

/// Returns `(L_n(x), L_{n-1}(x), ln_scale)` with the true values equal to the
/// first two entries times `e^{ln_scale}`.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    let mut ln_scale = 0.0;
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            ln_scale += BIG.ln();
        }
    }
    (cur, prev, ln_scale)
}

/// `ln Σ_{k<n} L_k(x)²`. The Laguerre polynomials are orthonormal for
/// `e^{-t}`, so the Gauss weight at a root is the reciprocal of this sum, a
/// sum of positive terms that stays accurate where `1 / (x L_n'(x)²)` loses
/// digits.
fn ln_christoffel_sum(n: usize, x: f64) -> f64 {
    const BIG: f64 = 1e150;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    let mut ln_scale = 0.0;
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            sum /= BIG * BIG;
            ln_scale += BIG.ln();
        }
    }
    sum.ln() + 2.0 * ln_scale
}

/// Number of eigenvalues of the `n x n` Laguerre Jacobi matrix below `x`.
fn sturm_count(n: usize, x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0 - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let b = i as f64;
        let pivot = if d == 0.0 { f64::EPSILON } else { d };
        d = (2.0 * i as f64 + 1.0 - x) - b * b / pivot;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest root of `L_n`, known to lie in `[lo, hi]`.
fn locate_root(n: usize, k: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-9 * mid.max(1e-3) {
            break;
        }
        if sturm_count(n, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let (p, q, _) = laguerre_pair(n, x);
        let dp = n as f64 * (p - q) / x;
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        let next = x - step;
        if !(next >= lo && next <= hi) {
            break;
        }
        x = next;
        if step.abs() <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    x
}

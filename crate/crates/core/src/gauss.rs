//! Gauss–Legendre nodes and weights on [-1, 1], generated once per order.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::sync::Arc;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub(crate) struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    // Three-term recurrence for P_n and its derivative.
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn build_rule(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Symmetrize so that the rule is exactly even.
    for i in 0..n / 2 {
        let a = nodes[i];
        let b = nodes[n - 1 - i];
        let m = 0.5 * (b - a);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
        let wm = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = wm;
        weights[n - 1 - i] = wm;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// Shared rule of the given order.
pub(crate) fn rule(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(build_rule(n))).clone()
}

//! Gauss-Legendre rules and small adaptive quadrature helpers.
//!
//! Nodes and weights are generated at runtime by Newton iteration on the
//! Legendre polynomials and cached per order.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        half * acc
    }
}

fn compute_rule(n: usize) -> GaussRule {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

/// Cached Gauss-Legendre rule of order `n`.
pub fn gauss(n: usize) -> &'static GaussRule {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static GaussRule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Box::leak(Box::new(compute_rule(n))))
}

/// Adaptive bisection quadrature: compares one-panel and two-panel Gauss
/// estimates, recursing where they disagree. `tol` is relative to the
/// accumulated magnitude scale passed in `scale`.
pub fn adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    scale: f64,
    max_depth: u32,
) -> Result<f64> {
    let rule = gauss(12);
    let whole = rule.integrate(a, b, &mut *f);
    adapt_rec(f, a, b, whole, tol, scale.max(whole.abs()), max_depth, rule)
}

fn adapt_rec<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    scale: f64,
    depth: u32,
    rule: &GaussRule,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, &mut *f);
    let right = rule.integrate(mid, b, &mut *f);
    let refined = left + right;
    if !refined.is_finite() {
        return Err(Error::Evaluation(format!(
            "non-finite quadrature value on [{a}, {b}]"
        )));
    }
    let err = (refined - whole).abs();
    if err <= tol * scale.max(refined.abs()) || b - a < 1e-300 {
        return Ok(refined);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "depth exhausted on [{a}, {b}], err {err:.3e}"
        )));
    }
    let l = adapt_rec(f, a, mid, left, tol, scale, depth - 1, rule)?;
    let r = adapt_rec(f, mid, b, right, tol, scale, depth - 1, rule)?;
    Ok(l + r)
}

//! Horizon-aligned uniform meshes, kernel definition, analytic tail
//! integrals, kernel power moments, and pointwise operator application.

use crate::constants::{c_norm, FracParams};
use crate::error::{Error, Result};
use crate::quad::gauss;

/// Truncated kernel K(z) = |z|^{-(1+2s)} on 0 < |z| < delta, zero beyond.
#[derive(Debug, Clone, Copy)]
pub struct KernelSpec {
    pub params: FracParams,
    pub delta: f64,
}

impl KernelSpec {
    pub fn new(params: FracParams, delta: f64) -> Result<Self> {
        if params.n_dim != 1 {
            return Err(Error::Config("KernelSpec is one-dimensional (N = 1)".into()));
        }
        if !(delta > 0.0) {
            return Err(Error::Config(format!("horizon must be positive, got {delta}")));
        }
        Ok(KernelSpec { params, delta })
    }

    pub fn eval(&self, z: f64) -> f64 {
        let r = z.abs();
        if r == 0.0 || r >= self.delta {
            0.0
        } else {
            r.powf(-1.0 - 2.0 * self.params.s)
        }
    }
}

/// Uniform grid over the completed domain [a - delta, b + delta] with
/// delta = m*h. Nodes are stored implicitly: x_i = a + (i - m)h, indices
/// 0..=n_int+2m. Free nodes are the ones strictly inside (a, b); everything
/// else (the two collars plus the endpoints) carries the volume constraint.
///
/// Indices are u64 and node coordinates are computed on demand, so collars
/// with ~1e14 nodes (huge-horizon studies) cost nothing.
#[derive(Debug, Clone, Copy)]
pub struct Mesh1D {
    pub a: f64,
    pub b: f64,
    pub h: f64,
    pub n_int: u64,
    pub m: u64,
}

impl Mesh1D {
    pub fn delta(&self) -> f64 {
        self.m as f64 * self.h
    }

    pub fn node_count(&self) -> u64 {
        self.n_int + 2 * self.m + 1
    }

    pub fn node(&self, i: u64) -> f64 {
        debug_assert!(i < self.node_count());
        self.a + (i as f64 - self.m as f64) * self.h
    }

    /// Free (interior) node indices: m+1 ..= m+n_int-1.
    pub fn free_ids(&self) -> std::ops::RangeInclusive<u64> {
        self.m + 1..=self.m + self.n_int - 1
    }

    pub fn free_count(&self) -> usize {
        (self.n_int - 1) as usize
    }

    pub fn is_free(&self, i: u64) -> bool {
        i > self.m && i < self.m + self.n_int
    }

    /// Coordinate of the j-th free node, j = 0..free_count().
    pub fn free_node(&self, j: usize) -> f64 {
        self.node(self.m + 1 + j as u64)
    }

    /// Hat basis function centered at node i, evaluated at x. Correct on the
    /// whole line because supports never extend past the completed domain.
    pub fn hat(&self, i: u64, x: f64) -> f64 {
        let t = 1.0 - (x - self.node(i)).abs() / self.h;
        t.max(0.0)
    }
}

/// Build a horizon-aligned mesh: h = (b-a)/n_int, delta = m*h.
pub fn build_mesh(a: f64, b: f64, n_int: u64, m: u64) -> Result<Mesh1D> {
    if !(a < b) {
        return Err(Error::Config(format!("need a < b, got a={a} b={b}")));
    }
    if n_int < 2 {
        return Err(Error::Config(format!("n_int must be >= 2, got {n_int}")));
    }
    if m < 1 {
        return Err(Error::Config("m must be >= 1".into()));
    }
    Ok(Mesh1D {
        a,
        b,
        h: (b - a) / n_int as f64,
        n_int,
        m,
    })
}

/// Collar interaction tail tau_delta(x) = integral of the truncated kernel
/// over the part of the width-delta collar within reach of x. Closed form.
pub fn collar_tail(x: f64, spec: &KernelSpec, a: f64, b: f64) -> Result<f64> {
    if !(x > a && x < b) {
        return Err(Error::Domain(format!("x={x} outside ({a}, {b})")));
    }
    let s = spec.params.s;
    let d = spec.delta;
    let side = |dist: f64| {
        if dist < d {
            (dist.powf(-2.0 * s) - d.powf(-2.0 * s)) / (2.0 * s)
        } else {
            0.0
        }
    };
    Ok(side(x - a) + side(b - x))
}

/// Full-complement interaction tail psi(x) = integral of the untruncated
/// kernel over R \ (a, b). Diverges at the endpoints.
pub fn infinite_tail(x: f64, params: FracParams, a: f64, b: f64) -> Result<f64> {
    if !(x > a && x < b) {
        return Err(Error::Domain(format!("x={x} outside ({a}, {b})")));
    }
    let s = params.s;
    Ok(((x - a).powf(-2.0 * s) + (b - x).powf(-2.0 * s)) / (2.0 * s))
}

/// Kernel power moment mu_p(alpha, beta) = int_alpha^beta r^{p-1-2s} dr,
/// with the log branch when the exponent p - 2s vanishes.
pub fn power_moment(p: u32, alpha: f64, beta: f64, s: f64) -> Result<f64> {
    if p > 3 {
        return Err(Error::Domain(format!("moment order p must be 0..3, got {p}")));
    }
    if !(alpha >= 0.0 && beta > alpha) {
        return Err(Error::Domain(format!(
            "need 0 <= alpha < beta, got alpha={alpha} beta={beta}"
        )));
    }
    let e = p as f64 - 2.0 * s;
    if alpha == 0.0 {
        if e <= 0.0 {
            return Err(Error::DivergentMoment(format!(
                "mu_{p} on [0, {beta}] diverges for s={s}"
            )));
        }
        return Ok(beta.powf(e) / e);
    }
    if e == 0.0 {
        return Ok((beta / alpha).ln());
    }
    if e.abs() < 1e-6 {
        // (beta^e - alpha^e)/e = alpha^e * ln(beta/alpha) * expm1(t)/t
        let lr = (beta / alpha).ln();
        let t = e * lr;
        let ratio = if t == 0.0 { 1.0 } else { t.exp_m1() / t };
        return Ok(alpha.powf(e) * lr * ratio);
    }
    Ok((beta.powf(e) - alpha.powf(e)) / e)
}

/// Apply the operator pointwise through the symmetric second-difference
/// form: -(c/2) * int_{-delta}^{delta} (u(x+y) - 2u(x) + u(x-y)) |y|^{-1-2s} dy.
///
/// The range [y_c, delta] (y_c = delta/128) is integrated on dyadic panels
/// with Gauss rules; below y_c the second difference is replaced by its
/// quartic Taylor model with coefficients extracted by Richardson
/// extrapolation at the y_c scale, which sidesteps the catastrophic
/// cancellation of evaluating u(x+y) - 2u(x) + u(x-y) at tiny y.
pub fn apply_pointwise<F: Fn(f64) -> f64>(u: F, x: f64, spec: &KernelSpec) -> Result<f64> {
    let s = spec.params.s;
    let d = spec.delta;
    let uc = u(x);
    let second_diff = |y: f64| u(x + y) - 2.0 * uc + u(x - y);

    let yc = d / 128.0;
    // Richardson fit of D(y) = c2 y^2 + c4 y^4 + O(y^6) at the y_c scale.
    let da = second_diff(yc);
    let db = second_diff(0.5 * yc);
    if !(uc.is_finite() && da.is_finite() && db.is_finite()) {
        return Err(Error::Evaluation(format!(
            "non-finite samples of u near x={x}"
        )));
    }
    let qa = da / (yc * yc);
    let qb = db / (0.25 * yc * yc);
    let c2 = (4.0 * qb - qa) / 3.0;
    let c4 = 4.0 * (qa - qb) / (3.0 * yc * yc);
    let near = c2 * yc.powf(2.0 - 2.0 * s) / (2.0 - 2.0 * s)
        + c4 * yc.powf(4.0 - 2.0 * s) / (4.0 - 2.0 * s);

    let rule = gauss(24);
    let mut far = 0.0;
    let mut hi = d;
    for _ in 0..7 {
        let lo = 0.5 * hi;
        far += rule.integrate(lo, hi, |y| second_diff(y) * y.powf(-1.0 - 2.0 * s));
        hi = lo;
    }
    if !far.is_finite() {
        return Err(Error::Evaluation(format!(
            "non-finite samples of u near x={x}"
        )));
    }
    Ok(-c_norm(spec.params) * (near + far))
}

//! Normalization constants for the truncated fractional Laplacian.
//!
//! Everything here is a closed-form expression in the gamma function:
//! the kernel constant c_{N,s}, the unit-sphere measure sigma_{N-1},
//! the rescaling constant kappa(N,s) and the local-limit energy constant
//! gamma(N) = sigma_{N-1}/N.

use crate::error::{Error, Result};

/// Dimension and fractionality pair driving every kernel and constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    pub n_dim: u32,
    pub s: f64,
}

impl FracParams {
    pub fn new(n_dim: u32, s: f64) -> Result<Self> {
        if n_dim == 0 {
            return Err(Error::Domain("dimension N must be >= 1".into()));
        }
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Domain(format!("s must lie in (0,1), got {s}")));
        }
        Ok(FracParams { n_dim, s })
    }

    /// Advisory flag: N > 2s is the hypothesis under which the continuum
    /// spectral theory is stated. The discrete problem stays well-posed
    /// without it, so this never blocks anything.
    pub fn spectral_hypothesis_met(&self) -> bool {
        self.n_dim as f64 > 2.0 * self.s
    }
}

// Lanczos approximation (Godfrey coefficients, g = 607/128). Relative error
// well below 1e-13 over the range we use.
const LANCZOS_G: f64 = 4.7421875;
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

// Exact anchors at small integer and half-integer arguments; these feed the
// closed-form constants (sigma_0 = 2, Gamma(1) = 1, ...) without the last-ulp
// wobble of the rational approximation.
fn exact_gamma(x: f64) -> Option<f64> {
    let twice = 2.0 * x;
    if x <= 0.0 || x > 12.0 || twice != twice.round() {
        return None;
    }
    if x == x.round() {
        let mut acc = 1.0;
        for k in 2..(x as u64) {
            acc *= k as f64;
        }
        Some(acc)
    } else {
        // Gamma(1/2 + k) = (2k-1)!! / 2^k * sqrt(pi)
        let k = (x - 0.5) as u64;
        let mut acc = std::f64::consts::PI.sqrt();
        for j in 1..=k {
            acc *= j as f64 - 0.5;
        }
        Some(acc)
    }
}

fn lanczos_gamma(x: f64) -> f64 {
    if let Some(v) = exact_gamma(x) {
        return v;
    }
    if x < 0.5 {
        // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// Gamma function for positive real arguments.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("gamma_fn requires x > 0, got {x}")));
    }
    Ok(lanczos_gamma(x))
}

// pi^{N/2} through integer powers and one square root, so even dimensions
// stay exact.
fn pi_pow_half(n_dim: u32) -> f64 {
    let p = std::f64::consts::PI.powi((n_dim / 2) as i32);
    if n_dim % 2 == 1 {
        p * std::f64::consts::PI.sqrt()
    } else {
        p
    }
}

/// Measure of the unit sphere S^{N-1}: sigma_{N-1} = 2 pi^{N/2} / Gamma(N/2).
pub fn surface_measure(n_dim: u32) -> Result<f64> {
    if n_dim == 0 {
        return Err(Error::Domain("surface_measure requires N >= 1".into()));
    }
    Ok(2.0 * pi_pow_half(n_dim) / lanczos_gamma(n_dim as f64 / 2.0))
}

/// Kernel normalization c_{N,s} = 2^{2s} s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s)).
pub fn c_norm(p: FracParams) -> f64 {
    let n = p.n_dim as f64;
    let s = p.s;
    2f64.powf(2.0 * s) * s * lanczos_gamma(n / 2.0 + s)
        / (pi_pow_half(p.n_dim) * lanczos_gamma(1.0 - s))
}

/// Rescaling constant kappa(N,s) = 4N(1-s) / (sigma_{N-1} c_{N,s}).
pub fn kappa(p: FracParams) -> f64 {
    let n = p.n_dim as f64;
    let sigma = surface_measure(p.n_dim).expect("N >= 1 by construction");
    4.0 * n * (1.0 - p.s) / (sigma * c_norm(p))
}

/// Local-limit energy constant gamma(N) = sigma_{N-1} / N.
pub fn gamma_limit_const(n_dim: u32) -> Result<f64> {
    Ok(surface_measure(n_dim)? / n_dim as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_integer_and_half_integer_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-14);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        // recurrence spot checks across the stated accuracy range
        for x in [0.05, 0.3, 1.7, 4.2, 11.5, 29.0] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs(), "x={x}");
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn surface_measure_values() {
        assert!((surface_measure(1).unwrap() - 2.0).abs() < 1e-14);
        assert!((surface_measure(2).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((surface_measure(3).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!(surface_measure(0).is_err());
    }

    #[test]
    fn c_norm_half() {
        let c = c_norm(FracParams::new(1, 0.5).unwrap());
        assert!((c - 1.0 / PI).abs() < 1e-15, "c = {c}");
    }

    #[test]
    fn c_norm_vanishes_as_s_to_one() {
        let c = c_norm(FracParams::new(1, 0.999).unwrap());
        assert!(c < 0.01);
        // c/(1-s) -> 4N/sigma_{N-1} = 2 for N=1, monotone approach
        let mut prev_err = f64::INFINITY;
        for s in [0.9, 0.99, 0.999] {
            let v = c_norm(FracParams::new(1, s).unwrap()) / (1.0 - s);
            let err = (v - 2.0).abs();
            assert!(err < prev_err, "s={s} err={err}");
            prev_err = err;
        }
        assert!(prev_err < 1e-2 * 2.0);
    }

    #[test]
    fn kappa_values_and_limit() {
        let k = kappa(FracParams::new(1, 0.5).unwrap());
        assert!((k - PI).abs() < 1e-14, "kappa = {k}");
        for n in [1u32, 2, 3] {
            let k = kappa(FracParams::new(n, 0.999).unwrap());
            assert!((k - 1.0).abs() < 1e-2, "N={n} kappa={k}");
        }
    }

    #[test]
    fn kappa_c_sigma_identity() {
        for n in [1u32, 2, 3] {
            for i in 1..=9 {
                let s = 0.1 * i as f64;
                let p = FracParams::new(n, s).unwrap();
                let lhs = kappa(p) * c_norm(p) * surface_measure(n).unwrap();
                let rhs = 4.0 * n as f64 * (1.0 - s);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs, "N={n} s={s}");
            }
        }
    }

    #[test]
    fn gamma_limit_values() {
        assert!((gamma_limit_const(1).unwrap() - 2.0).abs() < 1e-14);
        assert!((gamma_limit_const(2).unwrap() - PI).abs() < 1e-14);
        assert!((gamma_limit_const(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-13);
        // gamma(N) is sigma_{N-1}/N, bit for bit
        for n in [1u32, 2, 3, 7] {
            assert_eq!(
                gamma_limit_const(n).unwrap(),
                surface_measure(n).unwrap() / n as f64
            );
        }
    }

    #[test]
    fn hypothesis_flag() {
        assert!(FracParams::new(1, 0.25).unwrap().spectral_hypothesis_met());
        assert!(!FracParams::new(1, 0.75).unwrap().spectral_hypothesis_met());
        assert!(FracParams::new(2, 0.75).unwrap().spectral_hypothesis_met());
    }
}

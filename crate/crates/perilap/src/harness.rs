//! Limit-study orchestration: the vanishing-horizon sweep (rescaled spectra
//! against the local Laplacian), the growing-horizon sweep (against the
//! same-mesh infinite-horizon reference), norm-equivalence checks, the
//! scaled-energy limit, and the mollifier mass identities.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::assembly::{
    assemble_load, assemble_stiffness, AssembledSystem, HorizonMode, LoadPreset,
};
use crate::constants::{c_norm, kappa, FracParams};
use crate::error::{Error, Result};
use crate::mesh::{build_mesh, KernelSpec};
use crate::quad::adaptive;
use crate::solvers::{solve_dirichlet, solve_eigen, LinearMethod};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub delta: f64,
    pub h: f64,
    pub m: u64,
    pub s: f64,
    /// Eigen index 1..=k; 0 marks the linear-solution row, where `lambda`
    /// and `reference` carry the L2 norms of the computed and reference
    /// solutions and `abs_err` their L2 distance.
    pub k: u32,
    pub lambda: f64,
    pub rescaled: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Zero,
    Infty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDistance {
    pub delta: f64,
    pub k: u32,
    /// M-norm distance between the sign-aligned discrete eigenvector and
    /// the reference eigenvector.
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterRow {
    pub delta: f64,
    pub k: u32,
    /// Number of eigenvalues within relative gap 1e-6 of this one.
    pub multiplicity: u32,
}

/// Per-sweep result: CSV-bound rows plus side quantities that the fixed
/// CSV schema cannot carry.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub mode: SweepMode,
    pub a: f64,
    pub b: f64,
    pub rows: Vec<SweepRow>,
    pub eigen_distances: Vec<EigenDistance>,
    pub multiplicities: Vec<ClusterRow>,
    /// Log-log slope of (lambda_1^inf - lambda_1^delta) vs delta over the
    /// delta >= b-a tail (infty mode only).
    pub tail_slope: Option<f64>,
}

/// kappa(N,s) * lambda / delta^{2(1-s)} — the quantity converging to a
/// local Dirichlet eigenvalue as the horizon shrinks.
pub fn rescale_eigen(lambda: f64, delta: f64, p: FracParams) -> f64 {
    kappa(p) * lambda / delta.powf(2.0 * (1.0 - p.s))
}

/// Worker cap for sweep parallelism: NSOLVE_THREADS if set, else the
/// available cores.
pub fn worker_count() -> usize {
    std::env::var("NSOLVE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Index-parallel map with deterministic output order.
fn parallel_map<T, F>(n: usize, f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let workers = worker_count().min(n).max(1);
    if workers == 1 {
        return (0..n).map(&f).collect();
    }
    let mut out: Vec<Option<Result<T>>> = (0..n).map(|_| None).collect();
    let slots: Vec<std::sync::Mutex<&mut Option<Result<T>>>> =
        out.iter_mut().map(std::sync::Mutex::new).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let r = f(i);
                **slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    out.into_iter().map(|o| o.expect("worker filled slot")).collect()
}

fn m_norm(sys: &AssembledSystem, v: &[f64]) -> f64 {
    sys.mass.quadratic_form(v).sqrt()
}

fn m_dist(sys: &AssembledSystem, u: &[f64], v: &[f64]) -> f64 {
    let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    m_norm(sys, &d)
}

// Sign-aligned M-distance between a computed eigenvector and a reference.
fn aligned_eigen_distance(sys: &AssembledSystem, v: &[f64], reference: &[f64]) -> f64 {
    let mv = sys.mass.matvec(reference);
    let inner: f64 = mv.iter().zip(v).map(|(a, b)| a * b).sum();
    let sign = if inner < 0.0 { -1.0 } else { 1.0 };
    let flipped: Vec<f64> = v.iter().map(|x| sign * x).collect();
    m_dist(sys, &flipped, reference)
}

fn cluster_multiplicities(delta: f64, values: &[f64]) -> Vec<ClusterRow> {
    values
        .iter()
        .enumerate()
        .map(|(i, &lam)| {
            let size = values
                .iter()
                .filter(|&&mu| (mu - lam).abs() <= 1e-6 * lam.abs())
                .count() as u32;
            ClusterRow {
                delta,
                k: i as u32 + 1,
                multiplicity: size,
            }
        })
        .collect()
}

fn sorted_rows(mut rows: Vec<SweepRow>) -> Vec<SweepRow> {
    rows.sort_by(|x, y| x.delta.total_cmp(&y.delta).then(x.k.cmp(&y.k)));
    rows
}

/// Vanishing-horizon study at fixed ratio m = delta/h: mesh and horizon
/// shrink together so horizon and discretization errors vanish jointly.
/// For each delta: the first k rescaled eigenvalues against (k pi/(b-a))^2,
/// plus the rescaled linear solve with f = 1 against the local solution
/// (x-a)(b-x)/2.
pub fn sweep_zero(a: f64, b: f64, s: f64, m: u64, deltas: &[f64], k: usize) -> Result<SweepReport> {
    if deltas.is_empty() {
        return Err(Error::Config("empty delta list".into()));
    }
    let p = FracParams::new(1, s)?;
    let width = b - a;
    struct Point {
        rows: Vec<SweepRow>,
        dists: Vec<EigenDistance>,
        mult: Vec<ClusterRow>,
    }
    let per_delta = |i: usize| -> Result<Point> {
        let delta = deltas[i];
        let n_f = width * m as f64 / delta;
        let n_int = n_f.round();
        if (n_f - n_int).abs() > 1e-9 * n_int.max(1.0) || n_int < 2.0 {
            return Err(Error::Config(format!(
                "delta={delta} with m={m} gives non-integer n_int={n_f}"
            )));
        }
        let mesh = build_mesh(a, b, n_int as u64, m)?;
        let spec = KernelSpec::new(p, mesh.delta())?;
        let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
        let eig = solve_eigen(&sys, k)?;
        let mut rows = Vec::new();
        let mut dists = Vec::new();
        for (j, &lam) in eig.values.iter().enumerate() {
            let kk = j as u32 + 1;
            let resc = rescale_eigen(lam, delta, p);
            let reference = (kk as f64 * std::f64::consts::PI / width).powi(2);
            let abs_err = (resc - reference).abs();
            rows.push(SweepRow {
                delta,
                h: mesh.h,
                m,
                s,
                k: kk,
                lambda: lam,
                rescaled: resc,
                reference,
                abs_err,
                rel_err: abs_err / reference,
            });
            // reference eigenfunction: M-normalized interpolant of
            // sin(k pi (x-a)/(b-a))
            let omega = kk as f64 * std::f64::consts::PI / width;
            let mut r: Vec<f64> = (0..sys.stiffness.n)
                .map(|j| (omega * (mesh.free_node(j) - a)).sin())
                .collect();
            let nrm = m_norm(&sys, &r);
            for x in &mut r {
                *x /= nrm;
            }
            dists.push(EigenDistance {
                delta,
                k: kk,
                distance: aligned_eigen_distance(&sys, &eig.vectors[j], &r),
            });
        }
        // rescaled linear problem: A u = delta^{2(1-s)}/kappa * F(one)
        let scale = delta.powf(2.0 * (1.0 - s)) / kappa(p);
        let load = assemble_load(&mesh, LoadPreset::One, scale)?;
        let u = solve_dirichlet(&sys, &load, LinearMethod::Cholesky)?;
        let reference: Vec<f64> = (0..sys.stiffness.n)
            .map(|j| {
                let x = mesh.free_node(j);
                (x - a) * (b - x) / 2.0
            })
            .collect();
        let unorm = m_norm(&sys, &u);
        let rnorm = m_norm(&sys, &reference);
        let abs_err = m_dist(&sys, &u, &reference);
        rows.push(SweepRow {
            delta,
            h: mesh.h,
            m,
            s,
            k: 0,
            lambda: unorm,
            rescaled: unorm,
            reference: rnorm,
            abs_err,
            rel_err: abs_err / rnorm,
        });
        Ok(Point {
            rows,
            dists,
            mult: cluster_multiplicities(delta, &eig.values),
        })
    };
    let points = parallel_map(deltas.len(), per_delta);
    let mut rows = Vec::new();
    let mut eigen_distances = Vec::new();
    let mut multiplicities = Vec::new();
    for point in points {
        let point = point?;
        rows.extend(point.rows);
        eigen_distances.extend(point.dists);
        multiplicities.extend(point.mult);
    }
    Ok(SweepReport {
        mode: SweepMode::Zero,
        a,
        b,
        rows: sorted_rows(rows),
        eigen_distances,
        multiplicities,
        tail_slope: None,
    })
}

/// Growing-horizon study on a fixed mesh: truncated eigenvalues and the
/// f = 1 solution against the infinite-horizon system assembled on the very
/// same mesh, plus the fitted decay rate of the first-eigenvalue gap.
pub fn sweep_infty(
    a: f64,
    b: f64,
    s: f64,
    n_int: u64,
    ms: &[u64],
    k: usize,
) -> Result<SweepReport> {
    if ms.is_empty() {
        return Err(Error::Config("empty m list".into()));
    }
    let p = FracParams::new(1, s)?;
    let width = b - a;
    let h = width / n_int as f64;
    if !ms.iter().any(|&m| m as f64 * h >= width) {
        return Err(Error::Config(
            "need at least one m with delta >= b-a (shift identity unverifiable)".into(),
        ));
    }
    // shared infinite-horizon reference
    let ref_mesh = build_mesh(a, b, n_int, n_int)?;
    let ref_spec = KernelSpec::new(p, ref_mesh.delta())?;
    let ref_sys = assemble_stiffness(&ref_mesh, &ref_spec, HorizonMode::Infinite)?;
    let ref_eig = solve_eigen(&ref_sys, k)?;
    let ref_load = assemble_load(&ref_mesh, LoadPreset::One, 1.0)?;
    let ref_u = solve_dirichlet(&ref_sys, &ref_load, LinearMethod::Cholesky)?;
    let ref_unorm = m_norm(&ref_sys, &ref_u);

    struct Point {
        rows: Vec<SweepRow>,
        dists: Vec<EigenDistance>,
        mult: Vec<ClusterRow>,
    }
    let per_m = |i: usize| -> Result<Point> {
        let m = ms[i];
        let mesh = build_mesh(a, b, n_int, m)?;
        let delta = mesh.delta();
        let spec = KernelSpec::new(p, delta)?;
        let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
        let eig = solve_eigen(&sys, k)?;
        let mut rows = Vec::new();
        let mut dists = Vec::new();
        for (j, &lam) in eig.values.iter().enumerate() {
            let kk = j as u32 + 1;
            let reference = ref_eig.values[j];
            let abs_err = (reference - lam).abs();
            rows.push(SweepRow {
                delta,
                h,
                m,
                s,
                k: kk,
                lambda: lam,
                rescaled: lam,
                reference,
                abs_err,
                rel_err: abs_err / reference,
            });
            dists.push(EigenDistance {
                delta,
                k: kk,
                distance: aligned_eigen_distance(&sys, &eig.vectors[j], &ref_eig.vectors[j]),
            });
        }
        let load = assemble_load(&mesh, LoadPreset::One, 1.0)?;
        let u = solve_dirichlet(&sys, &load, LinearMethod::Cholesky)?;
        let abs_err = m_dist(&sys, &u, &ref_u);
        rows.push(SweepRow {
            delta,
            h,
            m,
            s,
            k: 0,
            lambda: m_norm(&sys, &u),
            rescaled: m_norm(&sys, &u),
            reference: ref_unorm,
            abs_err,
            rel_err: abs_err / ref_unorm,
        });
        Ok(Point {
            rows,
            dists,
            mult: cluster_multiplicities(delta, &eig.values),
        })
    };
    let points = parallel_map(ms.len(), per_m);
    let mut rows = Vec::new();
    let mut eigen_distances = Vec::new();
    let mut multiplicities = Vec::new();
    for point in points {
        let point = point?;
        rows.extend(point.rows);
        eigen_distances.extend(point.dists);
        multiplicities.extend(point.mult);
    }
    // least-squares log-log slope of the lambda_1 gap over the far tail
    let tail: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.k == 1 && r.delta >= width && r.abs_err > 0.0)
        .map(|r| (r.delta.ln(), r.abs_err.ln()))
        .collect();
    let tail_slope = if tail.len() >= 2 {
        let n = tail.len() as f64;
        let sx: f64 = tail.iter().map(|t| t.0).sum();
        let sy: f64 = tail.iter().map(|t| t.1).sum();
        let sxx: f64 = tail.iter().map(|t| t.0 * t.0).sum();
        let sxy: f64 = tail.iter().map(|t| t.0 * t.1).sum();
        Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
    } else {
        None
    };
    Ok(SweepReport {
        mode: SweepMode::Infty,
        a,
        b,
        rows: sorted_rows(rows),
        eigen_distances,
        multiplicities,
        tail_slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDeltaRow {
    pub delta: f64,
    pub ratio: f64,
    pub c_delta: f64,
    pub pass: bool,
}

/// Discrete norm-equivalence check: for the first truncated eigenvector v,
/// the raw-form ratio (v'G_inf v)/(v'G_delta v) must sit in [1, C(delta)]
/// with C(delta) = 1 + 4|Omega_delta| / (delta^{1+2s} lambda_1).
pub fn check_c_delta(a: f64, b: f64, s: f64, n_int: u64, ms: &[u64]) -> Result<Vec<CDeltaRow>> {
    let p = FracParams::new(1, s)?;
    let ref_mesh = build_mesh(a, b, n_int, n_int)?;
    let ref_spec = KernelSpec::new(p, ref_mesh.delta())?;
    let ref_sys = assemble_stiffness(&ref_mesh, &ref_spec, HorizonMode::Infinite)?;
    let mut out = Vec::new();
    for &m in ms {
        let mesh = build_mesh(a, b, n_int, m)?;
        let delta = mesh.delta();
        let spec = KernelSpec::new(p, delta)?;
        let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
        let eig = solve_eigen(&sys, 1)?;
        let v = &eig.vectors[0];
        let qd = sys.stiffness_raw.quadratic_form(v);
        let qi = ref_sys.stiffness_raw.quadratic_form(v);
        let ratio = qi / qd;
        if ratio < 1.0 - 1e-10 {
            return Err(Error::Invariant(format!(
                "form ratio {ratio} below 1 at delta={delta}"
            )));
        }
        let omega_delta = (b - a) + 2.0 * delta;
        let c_delta = 1.0 + 4.0 * omega_delta / (delta.powf(1.0 + 2.0 * s) * eig.values[0]);
        out.push(CDeltaRow {
            delta,
            ratio,
            c_delta,
            pass: ratio >= 1.0 - 1e-10 && ratio <= c_delta,
        });
    }
    Ok(out)
}

/// Scaled nonlocal energy of the hat interpolant of sin(pi (x-a)/(b-a)):
/// I = 2(1-s)/delta^{2(1-s)} u'Gu, approaching gamma(1) * pi^2/2 * (2/(b-a))
/// (= pi^2 on the unit interval) as the horizon shrinks.
pub fn gamma_limit_energy(
    a: f64,
    b: f64,
    s: f64,
    m: u64,
    deltas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let p = FracParams::new(1, s)?;
    let width = b - a;
    let mut out = Vec::new();
    for &delta in deltas {
        let n_f = width * m as f64 / delta;
        let n_int = n_f.round();
        if (n_f - n_int).abs() > 1e-9 * n_int.max(1.0) || n_int < 2.0 {
            return Err(Error::Config(format!(
                "delta={delta} with m={m} gives non-integer n_int={n_f}"
            )));
        }
        let mesh = build_mesh(a, b, n_int as u64, m)?;
        let spec = KernelSpec::new(p, mesh.delta())?;
        let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
        let u: Vec<f64> = (0..sys.stiffness.n)
            .map(|j| (std::f64::consts::PI * (mesh.free_node(j) - a) / width).sin())
            .collect();
        let raw = sys.stiffness_raw.quadratic_form(&u);
        let i_value = 2.0 * (1.0 - s) / delta.powf(2.0 * (1.0 - s)) * raw;
        out.push((delta, i_value));
    }
    Ok(out)
}

/// Mass of the unnormalized radial mollifier (c_{1,s}/2)|z|^{1-2s} on
/// (-delta, delta): sigma_0 c_{1,s} delta^{2(1-s)} / (4(1-s)).
pub fn bbm_mollifier_mass(s: f64, delta: f64) -> Result<f64> {
    let p = FracParams::new(1, s)?;
    if !(delta > 0.0) {
        return Err(Error::Domain("mollifier horizon must be positive".into()));
    }
    Ok(2.0 * c_norm(p) * delta.powf(2.0 * (1.0 - s)) / (4.0 * (1.0 - s)))
}

/// Mass of the normalized mollifier recomputed by independent quadrature;
/// must come back as 1.
pub fn bbm_normalized_mass(s: f64, delta: f64) -> Result<f64> {
    let p = FracParams::new(1, s)?;
    let mass = bbm_mollifier_mass(s, delta)?;
    // radial profile r^{1-2s} on (0, delta), integrable endpoint tamed by
    // the cubic substitution r = delta w^3
    let mut f = |w: f64| {
        let r = delta * w * w * w;
        if r == 0.0 {
            return 0.0;
        }
        r.powf(1.0 - 2.0 * s) * 3.0 * delta * w * w
    };
    let radial = adaptive(&mut f, 0.0, 1.0, 1e-14, 0.0, 60)?;
    Ok(2.0 * (c_norm(p) / 2.0) * radial / mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rescale_roundtrip() {
        let p = FracParams::new(1, 0.3).unwrap();
        let delta = 0.07f64;
        let lam = delta.powf(2.0 * (1.0 - 0.3)) / kappa(p);
        assert!((rescale_eigen(lam, delta, p) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_sweep_shape_and_trends() {
        let deltas = [0.2, 0.1, 0.05];
        let rep = sweep_zero(0.0, 1.0, 0.25, 4, &deltas, 2).unwrap();
        // 2 eigen rows + 1 solution row per delta, sorted by (delta, k)
        assert_eq!(rep.rows.len(), 9);
        for w in rep.rows.windows(2) {
            assert!(
                w[0].delta < w[1].delta || (w[0].delta == w[1].delta && w[0].k < w[1].k)
            );
        }
        // per-k errors shrink with delta
        for kk in 1..=2u32 {
            let errs: Vec<f64> = rep
                .rows
                .iter()
                .filter(|r| r.k == kk)
                .map(|r| r.abs_err)
                .collect();
            assert!(errs[0] <= errs[1] && errs[1] <= errs[2], "k={kk}: {errs:?}");
            let last = rep.rows.iter().filter(|r| r.k == kk).next().unwrap();
            assert!((last.reference - (kk as f64 * PI).powi(2)).abs() < 1e-12);
        }
        // one-sided spectral bound: rescaled lambda_1 below pi^2 (+1%)
        for r in rep.rows.iter().filter(|r| r.k == 1) {
            assert!(r.rescaled <= PI * PI * 1.01, "delta={}", r.delta);
        }
        // all multiplicities are 1 on the interval
        assert!(rep.multiplicities.iter().all(|c| c.multiplicity == 1));
    }

    #[test]
    fn zero_sweep_rejects_nonaligned_delta() {
        assert!(sweep_zero(0.0, 1.0, 0.25, 4, &[0.2, 0.13], 1).is_err());
        assert!(sweep_zero(0.0, 1.0, 0.25, 4, &[], 1).is_err());
    }

    #[test]
    fn infty_sweep_monotone_and_shift() {
        let rep = sweep_infty(0.0, 1.0, 0.25, 32, &[8, 32, 64, 128], 3).unwrap();
        let p = FracParams::new(1, 0.25).unwrap();
        // lambda_1 strictly increasing in delta; dominated by the reference
        let l1: Vec<&SweepRow> = rep.rows.iter().filter(|r| r.k == 1).collect();
        for w in l1.windows(2) {
            assert!(w[0].lambda < w[1].lambda);
        }
        for r in rep.rows.iter().filter(|r| r.k > 0) {
            assert!(r.lambda <= r.reference + 1e-12 * r.reference);
        }
        // exact shift identity for delta >= 1
        for r in rep.rows.iter().filter(|r| r.k > 0 && r.delta >= 1.0) {
            let shift = c_norm(p) / (0.25 * r.delta.powf(0.5));
            assert!(
                (r.abs_err - shift).abs() <= 1e-8 * shift,
                "delta={} k={}: gap {} vs shift {}",
                r.delta,
                r.k,
                r.abs_err,
                shift
            );
        }
        // slope of the gap is -2s
        let slope = rep.tail_slope.unwrap();
        assert!((slope + 0.5).abs() <= 0.05, "slope={slope}");
        // solution rows converge toward the infinite-horizon solution
        let sol: Vec<&SweepRow> = rep.rows.iter().filter(|r| r.k == 0).collect();
        for w in sol.windows(2) {
            assert!(w[1].abs_err <= w[0].abs_err);
        }
    }

    #[test]
    fn infty_sweep_requires_large_horizon_point() {
        assert!(sweep_infty(0.0, 1.0, 0.25, 32, &[2, 4, 8], 2).is_err());
    }

    #[test]
    fn c_delta_rows_behave() {
        let rows = check_c_delta(0.0, 1.0, 0.25, 32, &[8, 32, 64, 128]).unwrap();
        for r in &rows {
            assert!(r.pass, "delta={} ratio={} C={}", r.delta, r.ratio, r.c_delta);
            assert!(r.ratio >= 1.0);
        }
        // C(delta) -> 1: the excess shrinks as delta doubles
        assert!(rows[3].c_delta - 1.0 < rows[2].c_delta - 1.0);
        assert!(rows[2].c_delta - 1.0 < rows[1].c_delta - 1.0);
    }

    #[test]
    fn gamma_energy_approaches_pi_squared() {
        let rows = gamma_limit_energy(0.0, 1.0, 0.25, 8, &[0.2, 0.1, 0.05]).unwrap();
        let mut prev = f64::INFINITY;
        for (delta, val) in rows {
            let err = (val - PI * PI).abs();
            assert!(err < prev, "delta={delta}");
            prev = err;
        }
        assert!(prev / (PI * PI) < 0.05);
    }

    #[test]
    fn mollifier_masses() {
        let v = bbm_mollifier_mass(0.5, 1.0).unwrap();
        assert!((v - 1.0 / PI).abs() < 1e-14, "v={v}");
        for (s, d) in [(0.25, 0.3), (0.5, 1.7), (0.75, 0.9)] {
            let normalized = bbm_normalized_mass(s, d).unwrap();
            assert!((normalized - 1.0).abs() <= 1e-12, "s={s} d={d}: {normalized}");
            let ratio = bbm_mollifier_mass(s, d).unwrap() / bbm_mollifier_mass(s, 1.0).unwrap();
            assert!((ratio - d.powf(2.0 * (1.0 - s))).abs() < 1e-13);
        }
    }

    #[test]
    fn parallel_map_deterministic_under_thread_caps() {
        let f = |i: usize| -> Result<f64> { Ok((i as f64).sqrt()) };
        let serial: Vec<f64> = (0..40).map(|i| (i as f64).sqrt()).collect();
        let got = parallel_map(40, f);
        for (i, r) in got.into_iter().enumerate() {
            assert_eq!(r.unwrap(), serial[i]);
        }
    }
}

//! Linear solves and the dense generalized symmetric eigensolver.
//!
//! The eigenpath is the classical chain: Cholesky reduction of the mass
//! matrix, Householder tridiagonalization with accumulated transforms, and
//! implicit-shift QL — deterministic and dependency-free. Problem sizes stay
//! in the dense-solver comfort zone (a few hundred free nodes).

use crate::assembly::AssembledSystem;
use crate::band::SymBandMatrix;
use crate::error::{Error, Result};

/// Ascending eigenvalues with M-orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenSet {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearMethod {
    Cholesky,
    Cg,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve A u = F for the weak-form stiffness A of `sys`.
pub fn solve_dirichlet(
    sys: &AssembledSystem,
    load: &[f64],
    method: LinearMethod,
) -> Result<Vec<f64>> {
    let a = &sys.stiffness;
    if load.len() != a.n {
        return Err(Error::Config(format!(
            "load length {} does not match {} free nodes",
            load.len(),
            a.n
        )));
    }
    let u = match method {
        LinearMethod::Cholesky => a.cholesky()?.solve(load),
        LinearMethod::Cg => cg_jacobi(a, load)?,
    };
    let r: Vec<f64> = a
        .matvec(&u)
        .iter()
        .zip(load)
        .map(|(x, y)| x - y)
        .collect();
    let fnorm = norm2(load);
    if fnorm > 0.0 && norm2(&r) > 1e-10 * fnorm {
        return Err(Error::Solver(format!(
            "linear residual {:.3e} above tolerance",
            norm2(&r) / fnorm
        )));
    }
    Ok(u)
}

// Jacobi-preconditioned conjugate gradients; the stiffness diagonal spans
// orders of magnitude in s, so plain CG stalls without it.
fn cg_jacobi(a: &SymBandMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.n;
    let dinv: Vec<f64> = a.diag().iter().map(|d| 1.0 / d).collect();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        return Ok(x);
    }
    let mut z: Vec<f64> = r.iter().zip(&dinv).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for _ in 0..10 * n {
        if norm2(&r) <= 1e-12 * bnorm {
            return Ok(x);
        }
        let ap = a.matvec(&p);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        z = r.iter().zip(&dinv).map(|(r, d)| r * d).collect();
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if norm2(&r) <= 1e-10 * bnorm {
        Ok(x)
    } else {
        Err(Error::Solver("CG did not converge in 10n iterations".into()))
    }
}

/// Rayleigh quotient v'Av / v'Mv.
pub fn rayleigh_quotient(sys: &AssembledSystem, v: &[f64]) -> Result<f64> {
    let vv = norm2(v);
    if vv == 0.0 {
        return Err(Error::Domain("Rayleigh quotient of the zero vector".into()));
    }
    Ok(sys.stiffness.quadratic_form(v) / sys.mass.quadratic_form(v))
}

// ---- dense symmetric machinery -------------------------------------------

fn dense_cholesky(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = m.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = m[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::Solver(format!(
                        "mass matrix not positive definite at pivot {i}"
                    )));
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

fn forward_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut y = b.to_vec();
    for i in 0..n {
        for j in 0..i {
            let t = l[i][j] * y[j];
            y[i] -= t;
        }
        y[i] /= l[i][i];
    }
    y
}

fn backward_solve_t(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    // solve L' x = b
    let n = l.len();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = l[j][i] * x[j];
            x[i] -= t;
        }
        x[i] /= l[i][i];
    }
    x
}

// Householder reduction to tridiagonal form with accumulated transforms
// (the classical tred2). On exit `a` holds the orthogonal matrix Q, `d` the
// diagonal and `e` the subdiagonal (e[0] = 0).
fn tred2(a: &mut Vec<Vec<f64>>, d: &mut [f64], e: &mut [f64]) {
    let n = a.len();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i][k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    a[j][i] = a[i][j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i][k] * a[k][j];
                }
                for k in 0..i {
                    a[k][j] -= g * a[k][i];
                }
            }
        }
        d[i] = a[i][i];
        a[i][i] = 1.0;
        for j in 0..i {
            a[j][i] = 0.0;
            a[i][j] = 0.0;
        }
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotations accumulated into
// the columns of `z` (the classical tql2).
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut Vec<Vec<f64>>) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Solver(format!(
                    "QL failed to converge for eigenvalue {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for zk in z.iter_mut() {
                    f = zk[i + 1];
                    zk[i + 1] = s * zk[i] + c * f;
                    zk[i] = c * zk[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Full dense solve of the standard symmetric problem C w = mu w. Returns
/// (ascending eigenvalues, eigenvectors as columns-of-rows).
pub fn dense_sym_eigen(c: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = c.len();
    let mut a: Vec<Vec<f64>> = c.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut a, &mut d, &mut e);
    tql2(&mut d, &mut e, &mut a)?;
    // sort ascending, reorder the columns of a accordingly
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| a[row][col]).collect())
        .collect();
    Ok((values, vectors))
}

/// Smallest k eigenpairs of A v = lambda M v. Deterministic sign convention:
/// the first component of nontrivial size in each vector is positive.
pub fn solve_eigen(sys: &AssembledSystem, k: usize) -> Result<EigenSet> {
    let n = sys.stiffness.n;
    if k < 1 || k > n {
        return Err(Error::Config(format!(
            "requested {k} eigenpairs from a {n}-dimensional space"
        )));
    }
    let a_dense = sys.stiffness.to_dense();
    let m_dense = sys.mass.to_dense();
    let l = dense_cholesky(&m_dense)?;
    // C = L^{-1} A L^{-T}, built column by column
    let mut c = vec![vec![0.0; n]; n];
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| a_dense[i][j]).collect();
        let y = forward_solve(&l, &col);
        for i in 0..n {
            c[i][j] = y[i];
        }
    }
    let mut ct = vec![vec![0.0; n]; n];
    for j in 0..n {
        let row: Vec<f64> = c[j].clone();
        let y = forward_solve(&l, &row);
        for i in 0..n {
            ct[j][i] = y[i];
        }
    }
    // symmetrize away factorization round-off
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (ct[i][j] + ct[j][i]);
            ct[i][j] = v;
            ct[j][i] = v;
        }
    }
    let (values, wvecs) = dense_sym_eigen(&ct)?;
    let mut vectors = Vec::with_capacity(k);
    for w in wvecs.iter().take(k) {
        let mut v = backward_solve_t(&l, w);
        // M-normalize and fix the sign
        let nrm = sys.mass.quadratic_form(&v).sqrt();
        let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let flip = v
            .iter()
            .find(|x| x.abs() > 1e-12 * max)
            .map_or(1.0, |x| if *x < 0.0 { -1.0 } else { 1.0 });
        for x in &mut v {
            *x *= flip / nrm;
        }
        vectors.push(v);
    }
    let values: Vec<f64> = values.into_iter().take(k).collect();
    validate_eigenset(sys, &values, &vectors)?;
    Ok(EigenSet { values, vectors })
}

fn validate_eigenset(sys: &AssembledSystem, values: &[f64], vectors: &[Vec<f64>]) -> Result<()> {
    for (j, lam) in values.iter().enumerate() {
        if *lam <= 0.0 {
            return Err(Error::Invariant(format!("eigenvalue {j} not positive: {lam}")));
        }
        if j > 0 && values[j - 1] > *lam {
            return Err(Error::Invariant("eigenvalues not ascending".into()));
        }
        let av = sys.stiffness.matvec(&vectors[j]);
        let mv = sys.mass.matvec(&vectors[j]);
        let res: Vec<f64> = av.iter().zip(&mv).map(|(a, m)| a - lam * m).collect();
        if norm2(&res) > 1e-8 * norm2(&av) {
            return Err(Error::Invariant(format!(
                "eigen residual {:.3e} for pair {j}",
                norm2(&res) / norm2(&av)
            )));
        }
    }
    for i in 0..vectors.len() {
        let mv = sys.mass.matvec(&vectors[i]);
        for j in 0..=i {
            let want = if i == j { 1.0 } else { 0.0 };
            let got = dot(&mv, &vectors[j]);
            if (got - want).abs() > 1e-8 {
                return Err(Error::Invariant(format!(
                    "M-orthonormality defect {:.3e} at ({i},{j})",
                    (got - want).abs()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{assemble_stiffness, HorizonMode};
    use crate::constants::FracParams;
    use crate::mesh::{build_mesh, KernelSpec};

    fn sys(n_int: u64, m: u64, s: f64) -> AssembledSystem {
        let mesh = build_mesh(0.0, 1.0, n_int, m).unwrap();
        let spec = KernelSpec::new(FracParams::new(1, s).unwrap(), mesh.delta()).unwrap();
        assemble_stiffness(&mesh, &spec, HorizonMode::Truncated).unwrap()
    }

    #[test]
    fn zero_load_zero_solution_and_linearity() {
        let sys = sys(32, 4, 0.4);
        let n = sys.stiffness.n;
        let u = solve_dirichlet(&sys, &vec![0.0; n], LinearMethod::Cholesky).unwrap();
        assert!(u.iter().all(|&x| x == 0.0));
        let f: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
        let u1 = solve_dirichlet(&sys, &f, LinearMethod::Cholesky).unwrap();
        let f2: Vec<f64> = f.iter().map(|x| 2.0 * x).collect();
        let u2 = solve_dirichlet(&sys, &f2, LinearMethod::Cholesky).unwrap();
        let umax = u1.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for i in 0..n {
            assert!((u2[i] - 2.0 * u1[i]).abs() <= 1e-12 * umax);
        }
    }

    #[test]
    fn cg_agrees_with_cholesky() {
        for s in [0.25, 0.75] {
            let sys = sys(48, 6, s);
            let n = sys.stiffness.n;
            let f: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
            let uc = solve_dirichlet(&sys, &f, LinearMethod::Cholesky).unwrap();
            let ug = solve_dirichlet(&sys, &f, LinearMethod::Cg).unwrap();
            let scale = uc.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for i in 0..n {
                assert!((uc[i] - ug[i]).abs() <= 1e-9 * scale, "s={s} i={i}");
            }
        }
    }

    #[test]
    fn eigen_basic_structure() {
        let sys = sys(32, 4, 0.25);
        let eig = solve_eigen(&sys, 4).unwrap();
        assert!(eig.values[0] > 0.0);
        assert!(eig.values[0] < eig.values[1]);
        // ground state has one sign
        let v = &eig.vectors[0];
        assert!(v.iter().all(|&x| x > 0.0) || v.iter().all(|&x| x < 0.0));
        // sign convention: first sizable component positive
        for v in &eig.vectors {
            let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let first = v.iter().find(|x| x.abs() > 1e-12 * max).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn rayleigh_quotient_properties() {
        let sys = sys(32, 4, 0.4);
        let eig = solve_eigen(&sys, 3).unwrap();
        for j in 0..3 {
            let rq = rayleigh_quotient(&sys, &eig.vectors[j]).unwrap();
            assert!((rq - eig.values[j]).abs() <= 1e-10 * eig.values[j], "j={j}");
            let scaled: Vec<f64> = eig.vectors[j].iter().map(|x| 3.0 * x).collect();
            let rq3 = rayleigh_quotient(&sys, &scaled).unwrap();
            assert!((rq3 - rq).abs() <= 1e-12 * rq);
        }
        assert!(rayleigh_quotient(&sys, &vec![0.0; sys.stiffness.n]).is_err());
    }

    #[test]
    fn rayleigh_minimality_random_vectors() {
        let sys = sys(24, 3, 0.5);
        let eig = solve_eigen(&sys, 1).unwrap();
        let n = sys.stiffness.n;
        let mut state = 0x853c49e6748fea9bu64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..60 {
            let v: Vec<f64> = (0..n).map(|_| rnd()).collect();
            let rq = rayleigh_quotient(&sys, &v).unwrap();
            assert!(rq >= eig.values[0] - 1e-10);
        }
    }

    #[test]
    fn dense_sym_eigen_known_spectrum() {
        // discrete 1-D Laplacian: eigenvalues 2 - 2 cos(j pi / (n+1))
        let n = 12;
        let mut c = vec![vec![0.0; n]; n];
        for i in 0..n {
            c[i][i] = 2.0;
            if i + 1 < n {
                c[i][i + 1] = -1.0;
                c[i + 1][i] = -1.0;
            }
        }
        let (vals, vecs) = dense_sym_eigen(&c).unwrap();
        for j in 0..n {
            let want = 2.0 - 2.0 * ((j as f64 + 1.0) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((vals[j] - want).abs() < 1e-12, "j={j}");
        }
        // orthonormality of the returned vectors
        for i in 0..n {
            for j in 0..=i {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = dot(&vecs[i], &vecs[j]);
                assert!((got - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigen_matches_independent_dense_oracle() {
        // oracle side delegated to a mature external eigensolver
        let sys = sys(48, 4, 0.4);
        let n = sys.stiffness.n;
        let eig = solve_eigen(&sys, 5).unwrap();
        let a = sys.stiffness.to_dense();
        let m = sys.mass.to_dense();
        let na = nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j]);
        let nm = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j]);
        let l = nm.cholesky().unwrap().l();
        let x = l.solve_lower_triangular(&na).unwrap();
        let c = l.solve_lower_triangular(&x.transpose()).unwrap();
        let sym = nalgebra::SymmetricEigen::new(c);
        let mut oracle: Vec<f64> = sym.eigenvalues.iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        for j in 0..5 {
            assert!(
                (eig.values[j] - oracle[j]).abs() <= 1e-9 * oracle[j],
                "j={j}: {} vs {}",
                eig.values[j],
                oracle[j]
            );
        }
    }

    #[test]
    fn eigen_k_bounds() {
        let sys = sys(8, 2, 0.5);
        assert!(solve_eigen(&sys, 0).is_err());
        assert!(solve_eigen(&sys, 8).is_err());
        assert!(solve_eigen(&sys, 7).is_ok());
    }
}

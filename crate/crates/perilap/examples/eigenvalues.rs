//! Compute the first eigenvalues of the generalized problem A v = lambda M v
//! for the truncated operator, verify each against its Rayleigh quotient,
//! and show the rescaled values next to the local Dirichlet targets (k pi)^2.

use perilap::*;

fn main() -> Result<()> {
    let s = 0.25;
    let (n_int, m, k) = (128u64, 4u64, 5usize);
    let p = FracParams::new(1, s)?;
    let mesh = build_mesh(0.0, 1.0, n_int, m)?;
    let delta = mesh.delta();
    let spec = KernelSpec::new(p, delta)?;
    let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
    let eig = solve_eigen(&sys, k)?;

    println!("n_int={n_int} m={m} s={s} delta={delta}");
    println!(
        "{:>3} {:>16} {:>16} {:>14} {:>12}",
        "k", "lambda", "rescaled", "(k pi)^2", "RQ defect"
    );
    for j in 0..k {
        let lam = eig.values[j];
        let rq = rayleigh_quotient(&sys, &eig.vectors[j])?;
        let target = ((j as f64 + 1.0) * std::f64::consts::PI).powi(2);
        println!(
            "{:>3} {:>16.8} {:>16.8} {:>14.6} {:>12.3e}",
            j + 1,
            lam,
            rescale_eigen(lam, delta, p),
            target,
            (rq - lam).abs() / lam
        );
    }
    Ok(())
}

//! Vanishing-horizon sweep: shrink delta at fixed m = delta/h and watch the
//! rescaled eigenvalues converge to the local Dirichlet spectrum (k pi)^2
//! and the rescaled solution of load 1 converge to x(1-x)/2.

use perilap::*;

fn main() -> Result<()> {
    let s = 0.25;
    let m = 8;
    let deltas = [0.2, 0.1, 0.05, 0.025];
    let report = sweep_zero(0.0, 1.0, s, m, &deltas, 3)?;

    println!("s={s} m={m}; rescaled eigenvalues vs (k pi)^2");
    println!(
        "{:>8} {:>3} {:>16} {:>14} {:>10}",
        "delta", "k", "rescaled", "reference", "rel err"
    );
    for r in report.rows.iter().filter(|r| r.k > 0) {
        println!(
            "{:>8} {:>3} {:>16.8} {:>14.6} {:>10.3e}",
            r.delta, r.k, r.rescaled, r.reference, r.rel_err
        );
    }
    println!("\nrescaled solution rows (L2 norms and distance to x(1-x)/2):");
    for r in report.rows.iter().filter(|r| r.k == 0) {
        println!(
            "  delta={:<8} |u|={:.8} |ref|={:.8} L2 err={:.3e}",
            r.delta, r.lambda, r.reference, r.abs_err
        );
    }
    println!("\neigenvector M-norm distances to sin(k pi x):");
    for d in &report.eigen_distances {
        println!("  delta={:<8} k={} dist={:.3e}", d.delta, d.k, d.distance);
    }
    Ok(())
}

//! Growing-horizon sweep: at fixed mesh, grow delta and watch eigenvalues
//! and solutions approach the infinite-horizon (standard fractional
//! Laplacian) reference at the exact rate c/(s delta^{2s}).

use perilap::*;

fn main() -> Result<()> {
    let s = 0.25;
    let n_int = 256;
    let ms = [64, 256, 512, 1024, 4096];
    let report = sweep_infty(0.0, 1.0, s, n_int, &ms, 3)?;

    println!("s={s} n_int={n_int}; lambda_k^delta -> lambda_k^infty");
    println!(
        "{:>8} {:>3} {:>16} {:>16} {:>10}",
        "delta", "k", "lambda_delta", "lambda_infty", "rel err"
    );
    for r in report.rows.iter().filter(|r| r.k > 0) {
        println!(
            "{:>8} {:>3} {:>16.10} {:>16.10} {:>10.3e}",
            r.delta, r.k, r.lambda, r.reference, r.rel_err
        );
    }
    println!("\nsolution rows (distance to the infinite-horizon solution):");
    for r in report.rows.iter().filter(|r| r.k == 0) {
        println!("  delta={:<8} L2 err={:.3e}", r.delta, r.abs_err);
    }
    if let Some(slope) = report.tail_slope {
        println!(
            "\nlog-log tail slope of lambda_1^infty - lambda_1^delta: {slope:.4} (expected -2s = {})",
            -2.0 * s
        );
    }
    Ok(())
}

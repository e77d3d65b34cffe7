//! Scaled nonlocal energy of the hat interpolant of sin(pi x): the quantity
//! I(delta) = 2(1-s)/delta^{2(1-s)} u'Gu approaches the local Dirichlet
//! energy pi^2 as the horizon shrinks, uniformly over s.

use perilap::*;

fn main() -> Result<()> {
    let m = 8;
    let deltas = [0.2, 0.1, 0.05, 0.025];
    for s in [0.25, 0.5, 0.75] {
        println!("s = {s} (target pi^2 = {:.8}):", std::f64::consts::PI.powi(2));
        for (delta, i_val) in gamma_limit_energy(0.0, 1.0, s, m, &deltas)? {
            let rel = (i_val - std::f64::consts::PI.powi(2)).abs() / std::f64::consts::PI.powi(2);
            println!("  delta={delta:<8} I={i_val:.8}  rel err={rel:.3e}");
        }
    }
    Ok(())
}

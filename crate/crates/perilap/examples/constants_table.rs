//! Print the kernel constants over a small (N, s) grid, and show the
//! s -> 1 limits: c_{N,s} -> 0 with c/(1-s) -> 4N/sigma_{N-1}, kappa -> 1.

use perilap::*;

fn main() -> Result<()> {
    println!("{:>3} {:>6} {:>12} {:>12} {:>12} {:>12}", "N", "s", "c_ns", "kappa", "sigma", "gamma");
    for n in [1u32, 2, 3] {
        for s in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let p = FracParams::new(n, s)?;
            println!(
                "{:>3} {:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
                n,
                s,
                c_norm(p),
                kappa(p),
                surface_measure(n)?,
                gamma_limit_const(n)?
            );
        }
    }
    println!("\nlocal limit s -> 1:");
    for s in [0.9, 0.99, 0.999] {
        let p = FracParams::new(1, s)?;
        println!(
            "  s={s}: c = {:.6}, c/(1-s) = {:.6} (-> 2), kappa = {:.6} (-> 1)",
            c_norm(p),
            c_norm(p) / (1.0 - s),
            kappa(p)
        );
    }
    println!("\nmollifier mass (N=1, s=0.5, delta=1): {:.10} = 1/pi", bbm_mollifier_mass(0.5, 1.0)?);
    println!("normalized mollifier mass: {:.15}", bbm_normalized_mass(0.5, 1.0)?);
    Ok(())
}

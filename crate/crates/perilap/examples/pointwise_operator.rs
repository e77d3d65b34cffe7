//! Apply the truncated operator pointwise to a smooth function and watch
//! the rescaled value kappa/delta^{2(1-s)} * (-Delta)_delta^s u converge
//! to -u'' as the horizon shrinks.

use perilap::*;

fn main() -> Result<()> {
    let s = 0.4;
    let p = FracParams::new(1, s)?;
    let u = |x: f64| (x * x).sin();
    let x0 = 0.7f64;
    let upp = {
        // u'' = 2 cos(x^2) - 4 x^2 sin(x^2)
        2.0 * (x0 * x0).cos() - 4.0 * x0 * x0 * (x0 * x0).sin()
    };
    println!("u(x) = sin(x^2) at x = {x0}; exact -u'' = {:.10}", -upp);
    println!("{:>10} {:>18} {:>18} {:>12}", "delta", "(-Dlt)_d^s u", "rescaled", "rel err");
    for delta in [0.5, 0.25, 0.125, 0.0625, 0.03125] {
        let spec = KernelSpec::new(p, delta)?;
        let val = apply_pointwise(u, x0, &spec)?;
        let rescaled = kappa(p) * val / delta.powf(2.0 * (1.0 - s));
        let rel = (rescaled - (-upp)).abs() / upp.abs();
        println!("{:>10} {:>18.10} {:>18.10} {:>12.3e}", delta, val, rescaled, rel);
    }
    Ok(())
}

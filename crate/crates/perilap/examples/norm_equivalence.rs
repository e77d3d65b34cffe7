//! Check the two-sided bound between the truncated and full nonlocal energy
//! forms: 1 <= (v'G_inf v)/(v'G_delta v) <= C(delta) with
//! C(delta) = 1 + 4|Omega_delta| / (delta^{1+2s} lambda_1), and C -> 1 as
//! delta grows.

use perilap::*;

fn main() -> Result<()> {
    let s = 0.25;
    let n_int = 64;
    let ms = [16, 64, 128, 256, 512];
    let rows = check_c_delta(0.0, 1.0, s, n_int, &ms)?;

    println!("s={s} n_int={n_int}");
    println!("{:>8} {:>16} {:>16} {:>6}", "delta", "ratio", "C(delta)", "pass");
    for r in &rows {
        println!("{:>8} {:>16.10} {:>16.10} {:>6}", r.delta, r.ratio, r.c_delta, r.pass);
    }
    Ok(())
}

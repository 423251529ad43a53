//! Lyapunov exponents of the AMO cocycle compared with ln λ on the spectrum.

use lieb_spectra::arithmetic::Flux;
use lieb_spectra::dynamics::lyapunov;
use lieb_spectra::spectra::amo_bands_rational;

fn main() -> lieb_spectra::Result<()> {
    let alpha = Flux::golden();
    for lambda in [0.5, 1.0, 2.0, 4.0] {
        let bands = amo_bands_rational(13, 21, lambda)?;
        let mids: Vec<f64> = bands.intervals().iter().step_by(4).map(|b| 0.5 * (b.lo + b.hi)).collect();
        let les = mids.iter().map(|&e| lyapunov(e, lambda, &alpha, 0.0, 100_000)).collect::<lieb_spectra::Result<Vec<_>>>()?;
        let mean = les.iter().sum::<f64>() / les.len() as f64;
        println!("lambda={lambda:<4} max(0, ln lambda)={:.4}  mean LE on spectrum={mean:.4}", lambda.ln().max(0.0));
    }
    let far = lyapunov(100.0, 1.0, &alpha, 0.0, 100_000)?;
    println!("E=100: LE={far:.10}  constant-coefficient value={:.10}", ((100.0 + 9996f64.sqrt()) / 2.0).ln());
    Ok(())
}

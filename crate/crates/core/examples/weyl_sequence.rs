//! Single-site vectors with ‖Hu‖ < 1/k, showing E = 0 in the spectrum at irrational flux.

use lieb_spectra::arithmetic::Flux;
use lieb_spectra::verify::weyl_zero_residual;
use lieb_spectra::LiebParams;

fn main() -> lieb_spectra::Result<()> {
    for alpha in [Flux::golden(), Flux::silver(), Flux::e_minus_2()] {
        let p = LiebParams::new(alpha.clone(), 0.0, 1.0)?;
        for k in [10, 100, 1_000, 10_000, 100_000] {
            let w = weyl_zero_residual(&p, k)?;
            println!("{:<7} k={k:<7} m={:<7} residual={:.3e}", alpha.label(), w.m, w.residual);
        }
    }
    Ok(())
}

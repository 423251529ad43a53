//! Dimension of the zero-energy kernel of the open Lieb truncation.

use lieb_spectra::arithmetic::Flux;
use lieb_spectra::dynamics::zero_mode_kernel;
use lieb_spectra::LiebParams;

fn main() -> lieb_spectra::Result<()> {
    let p = LiebParams::new(Flux::golden(), 0.13, 0.8)?;
    for n in [1, 5, 20, 100] {
        let k = zero_mode_kernel(&p, n, 1e-10)?;
        println!("N={n:<4} dim ker = {:<4} max ‖u^A‖ = {:.2e}", k.dimension, k.max_a_norm);
    }
    Ok(())
}

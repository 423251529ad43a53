//! The 2D magnetic Lieb torus against the union of 1D periodic spectra.

use lieb_spectra::operators::{build_lieb_2d_torus, sign_flip_a};
use lieb_spectra::spectra::spectrum_2d_check;

fn main() -> lieb_spectra::Result<()> {
    for (lx, ly) in [(3, 4), (6, 5), (9, 8)] {
        let d = spectrum_2d_check(1, 3, 1.0, lx, ly)?;
        let h = build_lieb_2d_torus(1, 3, 1.0, lx, ly)?;
        let flip = sign_flip_a(&h)?;
        let asym = (0..h.dim()).flat_map(|i| (0..h.dim()).map(move |j| (i, j))).map(|(i, j)| (flip.get(i, j) + h.get(i, j)).norm()).fold(0.0, f64::max);
        println!("{lx}x{ly}: dim {}, eigenvalue distance to 1D union {d:.2e}, ‖UHU* + H‖ = {asym}", h.dim());
    }
    Ok(())
}

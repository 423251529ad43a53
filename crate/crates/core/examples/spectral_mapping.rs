//! Lieb bands from the square-root map of the AMO bands versus a direct Bloch sweep.

use lieb_spectra::spectra::{lieb_bands_direct, lieb_bands_rational, Method};

fn main() -> lieb_spectra::Result<()> {
    for (p, q, t) in [(1, 2, 1.0), (1, 3, 0.8), (2, 5, 0.8), (3, 7, 1.5)] {
        let mapped = lieb_bands_rational(p, q, t, Method::Mapped)?;
        let direct = lieb_bands_direct(p, q, t, 64)?;
        println!("{p}/{q} t={t}: {} bands, Hausdorff distance {:.3e}", mapped.len(), mapped.hausdorff(&direct)?);
        for b in mapped.intervals() {
            println!("    [{:+.12}, {:+.12}]", b.lo, b.hi);
        }
    }
    Ok(())
}

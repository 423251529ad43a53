//! Eigenvector decay on an open Lieb chain in the localized and extended regimes.

use lieb_spectra::arithmetic::Flux;
use lieb_spectra::dynamics::{eig_localization_profile, slaving_residual};
use lieb_spectra::operators::build_lieb_1d;
use lieb_spectra::{Boundary, Interval, LiebParams};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn main() -> lieb_spectra::Result<()> {
    let n = 600;
    for t in [0.5, 2.0] {
        let p = LiebParams::new(Flux::golden(), 0.1, t)?;
        let h = build_lieb_1d(&p, n, Boundary::Open)?;
        let states = eig_localization_profile(&h, Interval::new(1e-6, 1e6)?)?;
        let rates: Vec<f64> = states.iter().filter_map(|s| s.fit.as_ref().map(|f| f.rate)).collect();
        let iprs: Vec<f64> = states.iter().map(|s| s.ipr).collect();
        println!(
            "t={t}: {} states, median IPR {:.4e}, median decay rate {:.4} (ln t^-2 = {:.4})",
            states.len(),
            median(iprs),
            if rates.is_empty() { f64::NAN } else { median(rates) },
            -2.0 * t.ln()
        );
    }
    let p = LiebParams::new(Flux::golden(), 0.1, 0.5)?;
    let eig = build_lieb_1d(&p, 100, Boundary::Open)?.eigh()?;
    let j = eig.values.len() - 1;
    println!("slaving residual of the top state: {:.3e}", slaving_residual(&p, eig.values[j], eig.vector(j))?);
    Ok(())
}

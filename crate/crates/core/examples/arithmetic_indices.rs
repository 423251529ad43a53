//! Continued fractions and the indices β(α), γ(α, θ).

use lieb_spectra::arithmetic::{beta_for_flux, gamma_estimate, ContinuedFraction, Flux};

fn main() -> lieb_spectra::Result<()> {
    let fluxes = [Flux::golden(), Flux::silver(), Flux::e_minus_2(), Flux::irrational(ContinuedFraction::liouville(3.0, 10)?)?];
    for a in &fluxes {
        let cf = a.continued_fraction().expect("irrational");
        let qs: Vec<String> = cf.quotients().iter().take(8).map(|q| q.to_string()).collect();
        let beta = beta_for_flux(a, 30)?;
        let gamma = gamma_estimate(a, 0.1, 20_000)?;
        println!(
            "{:<14} [0; {}...] beta = {:?} ± {:.1e}, gamma(0.1) = {:?}",
            a.label(),
            qs.join(", "),
            beta.value,
            beta.uncertainty,
            gamma.value
        );
    }
    Ok(())
}

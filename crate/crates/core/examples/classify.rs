//! Spectral regimes from β(α), γ(α, θ) and the coupling threshold.

use lieb_spectra::arithmetic::{ContinuedFraction, Flux};
use lieb_spectra::operators::GeneralCouplings;
use lieb_spectra::verify::{classify_regime, CouplingModel};

fn main() -> lieb_spectra::Result<()> {
    let liouville = Flux::irrational(ContinuedFraction::liouville(3.0, 10)?)?;
    let cases = [
        (Flux::golden(), 0.0, CouplingModel::Lieb { t: 0.5 }),
        (liouville, 0.0, CouplingModel::Lieb { t: 0.5 }),
        (Flux::silver(), 0.2, CouplingModel::Lieb { t: 2.0 }),
        (Flux::e_minus_2(), 0.2, CouplingModel::Lieb { t: 1.0 }),
        (Flux::golden(), 0.0, CouplingModel::General(GeneralCouplings::new(0.7, 1.3, 0.9)?)),
        (Flux::golden(), 0.0, CouplingModel::General(GeneralCouplings::new(0.5, 3.0, 1.5)?)),
        (Flux::rational(2, 5)?, 0.0, CouplingModel::Lieb { t: 0.5 }),
    ];
    for (alpha, theta, model) in cases {
        let label = classify_regime(&alpha, theta, model, 30)?;
        println!("{:<14} theta={theta:<4} {:?}\n    -> {}  ({})", alpha.label(), model, label.regime, label.reasons.join("; "));
    }
    Ok(())
}

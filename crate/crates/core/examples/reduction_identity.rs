//! The factor product H̃H̃* against t²(H_AMO + (2+2t⁻²)I) on an open chain.

use lieb_spectra::arithmetic::Flux;
use lieb_spectra::verify::{check_reduction_identity, check_reduction_identity_with_boundary};
use lieb_spectra::LiebParams;

fn main() -> lieb_spectra::Result<()> {
    for alpha in [Flux::golden(), Flux::rational(1, 3)?, Flux::e_minus_2()] {
        for t in [0.5, 1.0, 2.0] {
            let p = LiebParams::new(alpha.clone(), 0.13, t)?;
            let interior = check_reduction_identity(&p, 200)?;
            let all = check_reduction_identity_with_boundary(&p, 200)?;
            println!(
                "alpha={:<8} t={t:<4} interior {:.3e} ({})  all rows {:.3e}",
                alpha.label(),
                interior.measured,
                if interior.pass { "pass" } else { "FAIL" },
                all.measured
            );
        }
    }
    Ok(())
}

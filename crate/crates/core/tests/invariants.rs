use lieb_spectra::arithmetic::Flux;
use lieb_spectra::operators::{
    build_amo, build_general_1d, build_lieb_1d, build_lieb_bloch, sign_flip_a, GeneralCouplings, GeneralParams,
};
use lieb_spectra::spectra::{amo_bands_rational, g_t, lieb_bands_rational, map_amo_energy};
use lieb_spectra::{Boundary, LiebParams, Method, Sublattice};
use proptest::prelude::*;

fn flux() -> impl Strategy<Value = Flux> {
    prop_oneof![Just(Flux::golden()), Just(Flux::silver()), Just(Flux::e_minus_2())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lieb_matrices_are_hermitian_and_bipartite(alpha in flux(), theta in -1.0f64..1.0, t in 0.1f64..3.0, n in 1usize..25) {
        let h = build_lieb_1d(&LiebParams::new(alpha, theta, t).unwrap(), n, Boundary::Open).unwrap();
        prop_assert_eq!(h.hermiticity_defect(), 0.0);
        let labels = h.labels().unwrap();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let same = (labels[i].sublattice == Sublattice::A) == (labels[j].sublattice == Sublattice::A);
                if same {
                    prop_assert_eq!(h.get(i, j).norm(), 0.0);
                }
            }
        }
        let flipped = sign_flip_a(&h).unwrap();
        prop_assert_eq!(flipped.max_abs_diff(&h).unwrap(), 2.0 * h.max_abs());
    }

    #[test]
    fn general_spectrum_is_symmetric(alpha in flux(), theta in 0.0f64..1.0, t2 in 0.2f64..2.0, t3 in 0.2f64..2.0, t4 in 0.2f64..2.0) {
        let g = GeneralParams::new(alpha, theta, GeneralCouplings::new(t2, t3, t4).unwrap()).unwrap();
        let e = build_general_1d(&g, 12, Boundary::Open).unwrap().eigenvalues().unwrap();
        for (a, b) in e.iter().zip(e.iter().rev()) {
            prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn amo_is_real_symmetric(alpha in flux(), theta in 0.0f64..1.0, lambda in 0.0f64..5.0, n in 2usize..30) {
        let h = build_amo(&alpha, theta, lambda, n, Boundary::Open).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(h.get(i, j).im, 0.0);
                prop_assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
    }

    #[test]
    fn energy_map_round_trips(e in -20.0f64..20.0, t in 0.2f64..3.0) {
        let lower = -(2.0 + 2.0 / (t * t));
        prop_assume!(e >= lower);
        let (minus, plus) = map_amo_energy(e, t).unwrap();
        prop_assert!(plus >= 0.0 && minus == -plus);
        prop_assert!((g_t(plus, t) - e).abs() <= 1e-12 * (1.0 + e.abs()));
        prop_assert!((g_t(minus, t) - e).abs() <= 1e-12 * (1.0 + e.abs()));
    }

    #[test]
    fn bloch_eigenvalues_lie_in_mapped_bands(pq in (2u64..9).prop_flat_map(|q| (1..q, Just(q))), t in 0.5f64..2.0, theta in 0.0f64..1.0, k in 0.0f64..std::f64::consts::TAU) {
        let (p, q) = pq;
        prop_assume!(num_gcd(p, q) == 1);
        let bands = lieb_bands_rational(p, q, t, Method::Mapped).unwrap();
        let e = build_lieb_bloch(p, q, t, theta / q as f64, k).unwrap().eigenvalues().unwrap();
        for v in e {
            prop_assert!(bands.contains(v, 1e-9), "{v} outside {:?}", bands.intervals());
        }
    }

    #[test]
    fn amo_bands_are_symmetric_and_bounded(pq in (2u64..12).prop_flat_map(|q| (1..q, Just(q))), lambda in 0.1f64..4.0) {
        let (p, q) = pq;
        prop_assume!(num_gcd(p, q) == 1);
        let b = amo_bands_rational(p, q, lambda).unwrap();
        prop_assert!(b.len() <= q as usize);
        prop_assert!(b.is_symmetric(1e-9));
        let hull = b.hull().unwrap();
        prop_assert!(hull.hi < 2.0 + 2.0 * lambda);
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

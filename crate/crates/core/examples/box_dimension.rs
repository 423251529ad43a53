//! Critical AMO band measure and box-counting dimension along Fibonacci approximants.

use lieb_spectra::spectra::{amo_bands_rational, box_dimension_estimate, BandMeta, BandSet, Interval, Model, MERGE_TOL};

fn main() -> lieb_spectra::Result<()> {
    let fib = [(3, 5), (5, 8), (8, 13), (13, 21), (21, 34), (34, 55), (55, 89), (89, 144), (144, 233)];
    let mut sets = Vec::new();
    for (p, q) in fib {
        let b = amo_bands_rational(p, q, 1.0)?;
        println!("q={q:<4} bands={:<4} measure={:.10}", b.len(), b.measure());
        sets.push(b);
    }
    let scales: Vec<f64> = (4..12).map(|k| 2f64.powi(-k)).collect();
    let est = box_dimension_estimate(&[&sets[7]], &scales)?;
    println!("q=144 box dimension {:.3} (fit residual {:.2e})", est.dimension, est.residual);

    let meta = BandMeta { model: Model::Amo, p: 0, q: 1, coupling: 0.0 };
    let line = BandSet::from_intervals(vec![Interval::new(0.0, 1.0)?], MERGE_TOL, meta)?;
    println!("unit interval box dimension {:.3}", box_dimension_estimate(&[&line], &scales)?.dimension);
    Ok(())
}

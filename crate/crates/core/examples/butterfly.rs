//! Hofstadter butterfly of the Lieb model as band-edge CSV.
//!
//! `cargo run --release --example butterfly -- [qmax] [t] [out.csv]`

use std::fs::File;
use std::io::BufWriter;

use lieb_spectra::cli::reduced_fractions;
use lieb_spectra::spectra::{lieb_bands_rational, write_bands_csv, Method};
use rayon::prelude::*;

fn main() -> lieb_spectra::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let qmax: u64 = args.first().map_or(20, |s| s.parse().expect("qmax"));
    let t: f64 = args.get(1).map_or(1.0, |s| s.parse().expect("t"));
    let path = args.get(2).cloned().unwrap_or_else(|| "butterfly.csv".into());

    let sets = reduced_fractions(qmax)
        .par_iter()
        .map(|&(p, q)| lieb_bands_rational(p, q, t, Method::Mapped))
        .collect::<lieb_spectra::Result<Vec<_>>>()?;
    write_bands_csv(BufWriter::new(File::create(&path)?), &sets)?;

    let rows: usize = sets.iter().map(|s| s.len()).sum();
    println!("{} fractions, {rows} bulk bands, written to {path}", sets.len());
    for s in sets.iter().filter(|s| s.meta().q <= 5) {
        let m = s.meta();
        println!("  {}/{}: measure {:.6}, min |E| {:.6}", m.p, m.q, s.measure(), s.min_abs_energy().unwrap_or(f64::NAN));
    }
    Ok(())
}

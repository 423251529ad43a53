use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::bands::{BandSet, Interval};
use crate::error::{Error, Result};
use crate::fmt::g17;

pub const CSV_MAGIC: &str = "# lieb-spectra bands v1";
pub const CSV_HEADER: [&str; 8] = ["model", "p", "q", "alpha", "t_or_lambda", "band_index", "e_lo", "e_hi"];

/// One row of the band CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub model: String,
    pub p: u64,
    pub q: u64,
    pub alpha: f64,
    pub t_or_lambda: f64,
    pub band_index: usize,
    pub e_lo: f64,
    pub e_hi: f64,
}

/// The CSV rows for one band set. Lieb and general-coupling sets always
/// carry a flat-band row `[0, 0]`; when the flat band lies inside a bulk band
/// it is appended after the bulk rows.
pub fn band_rows(bands: &BandSet) -> Vec<BandRow> {
    let m = bands.meta();
    let row = |band_index: usize, iv: &Interval| BandRow {
        model: m.model.tag().into(),
        p: m.p,
        q: m.q,
        alpha: m.p as f64 / m.q as f64,
        t_or_lambda: m.coupling,
        band_index,
        e_lo: iv.lo,
        e_hi: iv.hi,
    };
    let mut rows: Vec<BandRow> = bands.intervals().iter().enumerate().map(|(i, iv)| row(i, iv)).collect();
    let lieb_family = m.model != super::bands::Model::Amo;
    if lieb_family && !bands.intervals().iter().any(|iv| iv.lo == 0.0 && iv.hi == 0.0) {
        rows.push(row(rows.len(), &Interval::point(0.0)));
    }
    rows
}

pub fn write_bands_csv<W: Write>(mut w: W, sets: &[BandSet]) -> Result<()> {
    writeln!(w, "{CSV_MAGIC}")?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for set in sets {
        for r in band_rows(set) {
            out.write_record([
                r.model,
                r.p.to_string(),
                r.q.to_string(),
                g17(r.alpha),
                g17(r.t_or_lambda),
                r.band_index.to_string(),
                g17(r.e_lo),
                g17(r.e_hi),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parses a band CSV, checking the magic line and the column header.
pub fn read_bands_csv<R: Read>(r: R) -> Result<Vec<BandRow>> {
    let mut text = String::new();
    let mut r = r;
    r.read_to_string(&mut text)?;
    let mut lines = text.lines();
    if lines.next() != Some(CSV_MAGIC) {
        return Err(Error::Parse { line: 1, msg: format!("expected `{CSV_MAGIC}`") });
    }
    let body = &text[CSV_MAGIC.len()..].trim_start_matches(['\r', '\n']);
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(body.as_bytes());
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse { line: 2, msg: format!("unexpected header {header:?}") });
    }
    let mut rows = Vec::new();
    for (i, rec) in rd.deserialize::<BandRow>().enumerate() {
        let row = rec.map_err(|e| Error::Parse { line: i + 3, msg: e.to_string() })?;
        if row.e_lo > row.e_hi {
            return Err(Error::Parse { line: i + 3, msg: "e_lo > e_hi".into() });
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Serialize)]
struct JsonParams {
    model: &'static str,
    p: u64,
    q: u64,
    alpha: f64,
    t_or_lambda: f64,
}

#[derive(Serialize)]
struct JsonBands<'a> {
    params: JsonParams,
    bands: Vec<[f64; 2]>,
    touching: &'a [f64],
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    warnings: &'a [String],
}

pub fn write_bands_json<W: Write>(w: W, sets: &[BandSet]) -> Result<()> {
    let docs: Vec<JsonBands> = sets
        .iter()
        .map(|s| {
            let m = s.meta();
            JsonBands {
                params: JsonParams {
                    model: m.model.tag(),
                    p: m.p,
                    q: m.q,
                    alpha: m.p as f64 / m.q as f64,
                    t_or_lambda: m.coupling,
                },
                bands: band_rows(s).iter().map(|r| [r.e_lo, r.e_hi]).collect(),
                touching: s.touching_points(),
                warnings: s.warnings(),
            }
        })
        .collect();
    serde_json::to_writer_pretty(w, &docs)?;
    Ok(())
}

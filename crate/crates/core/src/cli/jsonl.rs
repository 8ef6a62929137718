//! Row types for the JSONL output. Field order in each struct is the key
//! order on the wire.

use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::mersenne::MersennePair;
use crate::poly::Poly;
use crate::search::SearchHit;

#[derive(Debug, Serialize)]
pub struct HitRow<'a> {
    pub mode: String,
    pub poly_hex: &'a Poly,
    pub degree: usize,
    pub a: u32,
    pub b: u32,
    /// `[a_i, b_i, h_i]` per Mersenne prime power.
    pub components: Vec<[u32; 3]>,
    pub classification: String,
    pub indecomposable: bool,
    pub conjugate_hex: &'a Poly,
}

impl<'a> From<&'a SearchHit> for HitRow<'a> {
    fn from(hit: &'a SearchHit) -> Self {
        HitRow {
            mode: hit.mode.to_string(),
            poly_hex: &hit.polynomial,
            degree: hit.signature.degree(),
            a: hit.signature.a,
            b: hit.signature.b,
            components: hit.signature.components.iter().map(|(p, h)| [p.a, p.b, *h]).collect(),
            classification: hit.classification.to_string(),
            indecomposable: hit.indecomposable,
            conjugate_hex: &hit.conjugate,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MersenneRow {
    pub a: u32,
    pub b: u32,
    pub degree: usize,
    pub poly_hex: Poly,
}

impl From<MersennePair> for MersenneRow {
    fn from(m: MersennePair) -> Self {
        MersenneRow { a: m.a, b: m.b, degree: m.degree(), poly_hex: m.poly() }
    }
}

/// One JSON object per line.
pub fn to_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("rows serialize")
}

/// Line sink: a file (truncated or appended) or standard output.
pub struct JsonlSink {
    out: Box<dyn Write>,
}

impl JsonlSink {
    pub fn open(path: &Path, append: bool) -> io::Result<Self> {
        if path == Path::new("-") {
            return Ok(JsonlSink { out: Box::new(io::stdout()) });
        }
        let file: File = if append {
            OpenOptions::new().create(true).append(true).open(path)?
        } else {
            File::create(path)?
        };
        Ok(JsonlSink { out: Box::new(BufWriter::new(file)) })
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> io::Result<()> {
        writeln!(self.out, "{}", to_line(record))
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
